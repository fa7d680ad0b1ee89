#include "npa/report.hpp"

#include <sstream>

namespace npa {

std::string grade_name(Grade g) {
    return g == Grade::Proven ? "Proven" : "ConsistentUpToBound";
}

std::string relation_kind_name(RelationStatus::Kind k) {
    switch (k) {
        case RelationStatus::Kind::ProvenEqualOnSlice: return "ProvenEqualOnSlice";
        case RelationStatus::Kind::ProvenProper: return "ProvenProper";
        case RelationStatus::Kind::Unknown: return "Unknown";
    }
    return "Unknown";
}

Json relation_json(const RelationStatus& st) {
    Json j;
    j["kind"] = relation_kind_name(st.kind);
    if (st.witness) j["witness"] = st.witness->str();
    j["bound"] = Json{{"deg", st.bound_N}, {"iters", st.bound_M}};
    return j;
}

Json verdict_json(const TypeVerdict& v) {
    Json j;
    j["label"] = omega_name(v.label);
    j["grade"] = grade_name(v.grade);
    Json ev;
    ev["kind"] = v.ev_status.nonzero_found ? "NonzeroWitness" : "OnlyZeroFound";
    if (v.ev_status.witness) {
        ev["lambda"] = rat_str(v.ev_status.witness->lambda);
        ev["witness"] = v.ev_status.witness->x.str();
    }
    if (v.ev_status.proven_only_zero) ev["proven_only_zero"] = true;
    j["ev_status"] = std::move(ev);
    j["relations"] = Json{{"C_vs_N", relation_json(v.rel_CN)},
                          {"N_vs_F", relation_json(v.rel_NF)},
                          {"D_vs_F", relation_json(v.rel_DF)},
                          {"F_vs_P", relation_json(v.rel_FP)}};
    Json proofs;
    proofs["central"] = v.central_proven;
    proofs["nil_algebra_is_everything"] = v.n_equals_p_proven;
    proofs["eigen_algebra_is_everything"] = v.d_equals_p_proven;
    proofs["torsion_algebra_is_everything"] = v.f_equals_p_proven;
    j["proof_routes"] = std::move(proofs);
    return j;
}

Json ev_report_json(const EvReport& r) {
    Json j;
    Json evs = Json::array();
    for (size_t i = 0; i < r.ev_found.size(); ++i) {
        Json e;
        e["lambda"] = rat_str(r.ev_found[i].first);
        e["multiplicity"] = r.ev_found[i].second;
        e["witness"] = r.witnesses[i].x.str();
        evs.push_back(std::move(e));
    }
    j["eigenvalues"] = std::move(evs);
    j["irrational_flag"] = r.irrational_flag;
    j["invariant_dim"] = r.invariant_dim;
    return j;
}

namespace {

Json element_list_json(const std::vector<Element>& v) {
    Json a = Json::array();
    for (const Element& e : v) a.push_back(e.str());
    return a;
}

}  // namespace

Json ad_report_json(const AdReport& r) {
    Json j;
    j["invariant_dim"] = r.invariant_dim;
    Json evs = Json::array();
    for (const auto& [l, m] : r.ev_found) evs.push_back(Json{{"lambda", rat_str(l)}, {"multiplicity", m}});
    j["ev_found"] = std::move(evs);
    j["irrational_flag"] = r.irrational_flag;
    j["centralizer_basis"] = element_list_json(r.C_basis);
    Json dj;
    for (const auto& [l, basis] : r.D_bases) dj[rat_str(l)] = element_list_json(basis);
    j["eigen_bases"] = std::move(dj);
    Json fj;
    for (const auto& [l, chain] : r.Fk_bases) {
        Json cj = Json::array();
        for (const auto& basis : chain) cj.push_back(element_list_json(basis));
        fj[rat_str(l)] = std::move(cj);
    }
    j["chain_bases"] = std::move(fj);
    Json nj = Json::array();
    for (const auto& basis : r.Nm_bases) nj.push_back(element_list_json(basis));
    j["nil_kernel_bases"] = std::move(nj);
    j["nil_stabilized"] = r.n_stabilized;
    return j;
}

Json growth_json(const GrowthProfile& p) {
    Json j;
    Json gens = Json::array();
    for (const Element& g : p.generator_set) gens.push_back(g.str());
    j["generators"] = std::move(gens);
    j["dims"] = p.dims;
    j["slopes"] = p.slope_estimates;
    j["ls_slope"] = p.ls_slope;
    return j;
}

Json independence_json(const IndependenceResult& r) {
    Json j;
    j["independent"] = r.independent;
    j["i_max"] = r.i_max;
    if (!r.independent) {
        Json cs = Json::array();
        for (const Element& a : r.dependence_coeffs) cs.push_back(a.str());
        j["dependence_coeffs"] = std::move(cs);
    }
    return j;
}

Json tensor_check_json(const TensorCheckReport& r) {
    Json j;
    j["pass"] = r.pass;
    j["lhs_dim"] = r.lhs_dim;
    j["rhs_dim"] = r.rhs_dim;
    j["detail"] = r.detail;
    return j;
}

Json torsion_json(const TorsionCheck& t) {
    Json j;
    j["member"] = t.member;
    if (t.member) j["steps"] = t.steps;
    Json prof = Json::array();
    for (const auto& [deg, k] : t.profile) {
        Json p;
        p["num_degree"] = deg == kNegInfDegree ? Json(nullptr) : Json(deg);
        p["denom_exp"] = k;
        prof.push_back(std::move(p));
    }
    j["profile"] = std::move(prof);
    j["predicted_member"] = t.predicted_member;
    j["prediction_agrees"] = t.prediction_agrees;
    return j;
}

Json gr_certificate_json(const GrCertificate& c) {
    Json j;
    j["commutative"] = c.commutative;
    j["degree_drop"] = c.degree_drop == kInfiniteDrop ? Json("infinite") : Json(c.degree_drop);
    j["checked_bound"] = c.checked_bound;
    j["exhaustive_ok"] = c.exhaustive_ok;
    return j;
}

std::string verdict_text(const TypeVerdict& v) {
    std::ostringstream os;
    os << "label " << omega_display(v.label) << "  grade " << grade_name(v.grade) << "\n";
    os << "  ev: " << (v.ev_status.nonzero_found ? "nonzero eigenvalue certified" : "only zero found");
    if (v.ev_status.witness)
        os << "  (lambda = " << rat_str(v.ev_status.witness->lambda) << ", witness "
           << v.ev_status.witness->x.str() << ")";
    if (v.ev_status.proven_only_zero) os << "  [proven]";
    os << "\n";
    auto line = [&](const char* name, const RelationStatus& st) {
        os << "  " << name << ": " << relation_kind_name(st.kind);
        if (st.witness) os << "  witness " << st.witness->str();
        os << "\n";
    };
    line("C vs N", v.rel_CN);
    line("N vs F", v.rel_NF);
    line("D vs F", v.rel_DF);
    line("F vs P", v.rel_FP);
    for (const std::string& w : v.warnings) os << "  note: " << w << "\n";
    return os.str();
}

std::string ev_report_text(const EvReport& r) {
    std::ostringstream os;
    os << "eigenvalues on the invariant slice (dim " << r.invariant_dim << "):\n";
    for (size_t i = 0; i < r.ev_found.size(); ++i)
        os << "  lambda = " << rat_str(r.ev_found[i].first) << "  mult " << r.ev_found[i].second
           << "  witness " << r.witnesses[i].x.str() << "\n";
    os << "  irrational remainder: " << (r.irrational_flag ? "yes" : "no") << "\n";
    return os.str();
}

std::string ad_report_text(const AdReport& r) {
    std::ostringstream os;
    os << "invariant slice dim " << r.invariant_dim << "\n";
    os << "centralizer basis (dim " << r.C_basis.size() << "):\n";
    for (const Element& e : r.C_basis) os << "  " << e.str() << "\n";
    if (!r.ev_found.empty()) {
        os << "eigenvalues:";
        for (const auto& [l, m] : r.ev_found) os << " " << rat_str(l) << "(x" << m << ")";
        os << (r.irrational_flag ? "  [irrational remainder]" : "") << "\n";
    }
    for (const auto& [l, basis] : r.D_bases) {
        os << "eigen space lambda = " << rat_str(l) << " (dim " << basis.size() << "):\n";
        for (const Element& e : basis) os << "  " << e.str() << "\n";
    }
    os << "nil kernel dims:";
    for (const auto& basis : r.Nm_bases) os << " " << basis.size();
    os << (r.n_stabilized ? "  (stabilized)" : "  (cap reached)") << "\n";
    return os.str();
}

}  // namespace npa
