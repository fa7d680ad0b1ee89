// Command-line front end: parses surface-syntax expressions, dispatches to
// the analysis library, and prints stable text or JSON reports.
//
// Exit codes: 0 success, 1 verification-check failure, 2 input error,
// 3 internal error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "npa/ad_analysis.hpp"
#include "npa/growth.hpp"
#include "npa/localization.hpp"
#include "npa/parser.hpp"
#include "npa/report.hpp"

namespace {

using npa::Json;

int default_deg() {
    if (const char* env = std::getenv("NPA_DEFAULT_DEG")) {
        try {
            const int v = std::stoi(env);
            if (v >= 0) return v;
        } catch (...) {
        }
    }
    return 6;
}

struct Output {
    std::string format = "text";
    Json query;
    Json bounds;
    std::string payload_key;
    Json payload;
    std::string grade = "Exact";
    std::vector<std::string> warnings;
    std::string text;

    void print(std::ostream& os) const {
        if (format == "json") {
            Json j;
            j["query"] = query;
            j["bounds"] = bounds;
            j[payload_key] = payload;
            j["evidence_grade"] = grade;
            j["warnings"] = warnings;
            os << j.dump(2) << "\n";
        } else {
            os << text;
            for (const std::string& w : warnings) os << "note: " << w << "\n";
        }
    }
};

// Splits on top-level commas (commas inside parentheses stay put).
std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

npa::Element parse_in(const npa::ParsedAlgebra& pa, const std::string& src) {
    if (pa.tensor) return npa::parse_element(src, *pa.tensor);
    return npa::parse_element(src, pa.alg);
}

int run_command(const std::vector<std::string>& args, std::ostream& os);

int run_batch(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open batch file: " << path << "\n";
        return 2;
    }
    std::vector<std::vector<std::string>> commands;
    std::string line;
    while (std::getline(in, line)) {
        // Tokenize honoring simple quoting.
        std::vector<std::string> argv;
        std::string cur;
        char quote = 0;
        bool have = false;
        for (char c : line) {
            if (quote) {
                if (c == quote)
                    quote = 0;
                else
                    cur += c;
            } else if (c == '\'' || c == '"') {
                quote = c;
                have = true;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                if (have || !cur.empty()) argv.push_back(cur);
                cur.clear();
                have = false;
            } else {
                cur += c;
            }
        }
        if (have || !cur.empty()) argv.push_back(cur);
        if (!argv.empty() && argv.front()[0] != '#') commands.push_back(std::move(argv));
    }

    // Commands are independent and side-effect free; evaluate concurrently
    // and print each report atomically in input order.
    std::vector<std::future<std::pair<int, std::string>>> futures;
    futures.reserve(commands.size());
    for (const auto& argv : commands)
        futures.push_back(std::async(std::launch::async, [argv]() {
            std::ostringstream os;
            const int code = run_command(argv, os);
            return std::make_pair(code, os.str());
        }));
    int worst = 0;
    for (auto& f : futures) {
        auto [code, text] = f.get();
        std::cout << text;
        worst = std::max(worst, code);
    }
    return worst;
}

int run_command(const std::vector<std::string>& args, std::ostream& os) {
    CLI::App app{"non-commutative Poisson algebra toolkit"};
    app.require_subcommand(1);

    std::string algebra = "weyl:1";
    std::string format = "text";
    int deg = default_deg();
    int iters = 8;

    auto add_common = [&](CLI::App* sub, bool with_algebra = true) {
        if (with_algebra) sub->add_option("--algebra,-a", algebra, "algebra spec (weyl:n, sympoly:n, tensor(..,..), ..@loc=g)");
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--deg,-N", deg, "degree bound");
        sub->add_option("--iters,-M", iters, "iteration cap");
    };

    std::string expr, probe, kind, left, right, gens_arg, w_arg, basis_arg, over_arg, z_arg,
        images_arg, csv_path;
    std::vector<std::string> lambdas;
    int nmax = 10, imax = 3;

    CLI::App* c_classify = app.add_subcommand("classify", "type of an element");
    add_common(c_classify);
    c_classify->add_option("--expr,-e", expr, "element")->required();

    CLI::App* c_centralizer = app.add_subcommand("centralizer", "slice bases of the four subalgebras");
    add_common(c_centralizer);
    c_centralizer->add_option("--expr,-e", expr)->required();

    CLI::App* c_eigen = app.add_subcommand("eigen", "eigenvalues with exact witnesses");
    add_common(c_eigen);
    c_eigen->add_option("--expr,-e", expr)->required();

    CLI::App* c_orbit = app.add_subcommand("orbit", "degree profile of iterated ad");
    add_common(c_orbit);
    c_orbit->add_option("--expr,-e", expr, "acting element")->required();
    c_orbit->add_option("--probe", probe, "probe element")->required();

    CLI::App* c_tensor = app.add_subcommand("tensor-check", "slice checks of the tensor theorems");
    add_common(c_tensor);
    c_tensor->add_option("--kind", kind, "theta_F | gamma_F | gamma_lambda")->required();
    c_tensor->add_option("--left", left)->required();
    c_tensor->add_option("--right", right)->required();
    c_tensor->add_option("--lambda", lambdas, "eigenvalue(s) for gamma_lambda");

    CLI::App* c_gk = app.add_subcommand("gk", "growth profile of a generated filtration");
    add_common(c_gk);
    c_gk->add_option("--gens", gens_arg, "comma-separated generators")->required();
    c_gk->add_option("--nmax", nmax, "profile length");
    c_gk->add_option("--csv", csv_path, "write n,dim,slope rows to a file");

    CLI::App* c_indep = app.add_subcommand("indep", "right algebraic independence probe");
    add_common(c_indep);
    c_indep->add_option("--w", w_arg, "probe element")->required();
    c_indep->add_option("--basis", basis_arg, "comma-separated coefficient basis");
    c_indep->add_option("--over", over_arg, "use the nil-algebra slice basis of this element");
    c_indep->add_option("--imax", imax, "highest power");

    CLI::App* c_locbr = app.add_subcommand("locbracket", "bracket in a localized algebra");
    add_common(c_locbr);
    c_locbr->add_option("--left", left)->required();
    c_locbr->add_option("--right", right)->required();

    CLI::App* c_loctor = app.add_subcommand("loc-torsion", "torsion membership after localization");
    add_common(c_loctor);
    c_loctor->add_option("--z", z_arg, "acting element (in the base algebra)")->required();
    c_loctor->add_option("--probe", probe, "localized probe")->required();

    CLI::App* c_gr = app.add_subcommand("gr-check", "graded-commutativity certificate");
    add_common(c_gr);

    CLI::App* c_partner = app.add_subcommand("partner", "solve {z, w} = 1 on the slice");
    add_common(c_partner);
    c_partner->add_option("--expr,-e", expr)->required();

    CLI::App* c_hom = app.add_subcommand("hom-classify", "classify an element and its image");
    add_common(c_hom);
    c_hom->add_option("--expr,-e", expr)->required();
    c_hom->add_option("--images", images_arg, "comma-separated name=expr generator images")->required();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream dummy;
        const int code = app.exit(e, dummy, dummy);
        if (code != 0) {
            std::cerr << dummy.str();
            return 2;
        }
        os << dummy.str();  // --help
        return 0;
    }

    Output out;
    out.format = format;
    out.bounds = Json{{"deg", deg}, {"iters", iters}};

    try {
        npa::ParsedAlgebra pa = npa::parse_algebra_spec(algebra);

        if (app.got_subcommand(c_classify)) {
            npa::Element z = parse_in(pa, expr);
            const int n = std::max(deg, z.degree());
            npa::TypeVerdict v = npa::classify(z, n, iters);
            out.query = Json{{"verb", "classify"}, {"algebra", pa.canonical}, {"expr", expr}};
            out.bounds = Json{{"deg", n}, {"iters", iters}};
            out.payload_key = "verdict";
            out.payload = npa::verdict_json(v);
            out.grade = npa::grade_name(v.grade);
            out.warnings = v.warnings;
            out.text = npa::verdict_text(v);
            out.print(os);
            return 0;
        }

        if (app.got_subcommand(c_centralizer)) {
            npa::Element z = parse_in(pa, expr);
            const int n = std::max(deg, z.degree());
            npa::AdReport rep = npa::subspace_bases(z, n, iters);
            out.query = Json{{"verb", "centralizer"}, {"algebra", pa.canonical}, {"expr", expr}};
            out.bounds = Json{{"deg", n}, {"iters", iters}};
            out.payload_key = "bases";
            out.payload = npa::ad_report_json(rep);
            out.grade = "ExactOnSlice";
            out.text = npa::ad_report_text(rep);
            out.print(os);
            return 0;
        }

        if (app.got_subcommand(c_eigen)) {
            npa::Element z = parse_in(pa, expr);
            const int n = std::max(deg, z.degree());
            npa::EvReport rep = npa::ev_discover(z, n);
            out.query = Json{{"verb", "eigen"}, {"algebra", pa.canonical}, {"expr", expr}};
            out.bounds = Json{{"deg", n}, {"iters", iters}};
            out.payload_key = "bases";
            out.payload = npa::ev_report_json(rep);
            out.grade = "ExactOnSlice";
            if (rep.irrational_flag) out.warnings.push_back("spectrum incomplete over the rationals");
            out.text = npa::ev_report_text(rep);
            out.print(os);
            return 0;
        }

        if (app.got_subcommand(c_orbit)) {
            npa::Element z = parse_in(pa, expr);
            npa::Element x = parse_in(pa, probe);
            std::vector<int> profile = npa::orbit_profile(z, x, iters);
            out.query = Json{{"verb", "orbit"}, {"algebra", pa.canonical}, {"expr", expr}, {"probe", probe}};
            out.payload_key = "profile";
            Json degs = Json::array();
            for (int d : profile) degs.push_back(d == npa::kNegInfDegree ? Json(nullptr) : Json(d));
            out.payload = Json{{"degrees", degs}};
            out.grade = "Exact";
            std::ostringstream t;
            t << "orbit degrees:";
            for (int d : profile) {
                if (d == npa::kNegInfDegree)
                    t << " -inf";
                else
                    t << " " << d;
            }
            t << "\n";
            out.text = t.str();
            out.print(os);
            return 0;
        }

        if (app.got_subcommand(c_tensor)) {
            if (!pa.tensor) throw std::domain_error("tensor-check needs a tensor(...) algebra");
            npa::Element z1 = npa::parse_element(left, pa.tensor->left);
            npa::Element z2 = npa::parse_element(right, pa.tensor->right);
            npa::TensorCheckKind k;
            if (kind == "theta_F")
                k = npa::TensorCheckKind::ThetaF;
            else if (kind == "gamma_F")
                k = npa::TensorCheckKind::GammaF;
            else if (kind == "gamma_lambda")
                k = npa::TensorCheckKind::GammaLambda;
            else
                throw std::invalid_argument("unknown check kind: " + kind);

            out.query = Json{{"verb", "tensor-check"}, {"algebra", pa.canonical}, {"kind", kind},
                             {"left", left},           {"right", right}};
            out.payload_key = "dims";
            out.grade = "ExactOnSlice";
            bool all_pass = true;
            std::ostringstream t;
            if (k == npa::TensorCheckKind::GammaLambda) {
                if (lambdas.empty()) throw std::invalid_argument("gamma_lambda needs --lambda");
                Json per = Json::array();
                for (const std::string& ls : lambdas) {
                    npa::Rat lambda = npa::rat_from_string(ls);
                    npa::TensorCheckReport rep =
                        npa::tensor_theorem_check(k, *pa.tensor, z1, z2, deg, lambda);
                    all_pass = all_pass && rep.pass;
                    Json jr = npa::tensor_check_json(rep);
                    jr["lambda"] = ls;
                    per.push_back(std::move(jr));
                    t << "lambda = " << ls << ": " << (rep.pass ? "pass" : "FAIL") << " (lhs "
                      << rep.lhs_dim << ", rhs " << rep.rhs_dim << ")\n";
                }
                out.payload = Json{{"checks", per}};
            } else {
                npa::TensorCheckReport rep = npa::tensor_theorem_check(k, *pa.tensor, z1, z2, deg);
                all_pass = rep.pass;
                out.payload = npa::tensor_check_json(rep);
                t << (rep.pass ? "pass" : "FAIL") << " (lhs " << rep.lhs_dim << ", rhs "
                  << rep.rhs_dim << ")\n";
            }
            out.text = t.str();
            out.print(os);
            return all_pass ? 0 : 1;
        }

        if (app.got_subcommand(c_gk)) {
            std::vector<npa::Element> gens;
            for (const std::string& g : split_list(gens_arg)) gens.push_back(parse_in(pa, g));
            npa::GrowthProfile p = npa::gk_profile(gens, nmax);
            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                if (!f) throw std::invalid_argument("cannot write csv file: " + csv_path);
                f << npa::growth_csv(p);
            }
            out.query = Json{{"verb", "gk"}, {"algebra", pa.canonical}, {"gens", gens_arg}, {"nmax", nmax}};
            out.payload_key = "profile";
            out.payload = npa::growth_json(p);
            out.grade = "Evidence";
            std::ostringstream t;
            t << "dims:";
            for (int d : p.dims) t << " " << d;
            t << "\nslope (least squares, last third): " << p.ls_slope << "\n";
            out.text = t.str();
            out.print(os);
            return 0;
        }

        if (app.got_subcommand(c_indep)) {
            npa::Element w = parse_in(pa, w_arg);
            std::vector<npa::Element> basis;
            if (!basis_arg.empty()) {
                for (const std::string& b : split_list(basis_arg)) basis.push_back(parse_in(pa, b));
            } else if (!over_arg.empty()) {
                npa::Element z = parse_in(pa, over_arg);
                npa::AdReport rep = npa::subspace_bases(z, deg, iters);
                if (rep.Nm_bases.empty()) throw std::domain_error("empty nil slice");
                basis = rep.Nm_bases.back();
            } else {
                throw std::invalid_argument("indep needs --basis or --over");
            }
            npa::IndependenceResult r = npa::independence_probe(w, basis, imax);
            out.query = Json{{"verb", "indep"}, {"algebra", pa.canonical}, {"w", w_arg},
                             {"basis_size", basis.size()}, {"imax", imax}};
            out.payload_key = "bases";
            out.payload = npa::independence_json(r);
            out.grade = "Exact";
            out.text = r.independent ? "independent up to the power bound\n"
                                     : "dependence witness found\n";
            out.print(os);
            return 0;
        }

        if (app.got_subcommand(c_locbr)) {
            if (!pa.loc) throw std::domain_error("locbracket needs an @loc= algebra");
            npa::LocElement a = npa::parse_loc_element(left, pa.loc);
            npa::LocElement b = npa::parse_loc_element(right, pa.loc);
            npa::LocElement r = npa::loc_bracket(a, b);
            out.query = Json{{"verb", "locbracket"}, {"algebra", pa.canonical}, {"left", left}, {"right", right}};
            out.payload_key = "bases";
            out.payload = Json{{"result", npa::loc_str(r)}};
            out.grade = "Exact";
            out.text = npa::loc_str(r) + "\n";
            out.print(os);
            return 0;
        }

        if (app.got_subcommand(c_loctor)) {
            if (!pa.loc) throw std::domain_error("loc-torsion needs an @loc= algebra");
            npa::Element z = npa::parse_element(z_arg, pa.alg);
            npa::LocElement pr = npa::parse_loc_element(probe, pa.loc);
            npa::TorsionCheck t = npa::loc_torsion_check(z, pr, iters);
            out.query = Json{{"verb", "loc-torsion"}, {"algebra", pa.canonical}, {"z", z_arg}, {"probe", probe}};
            out.payload_key = "verdict";
            out.payload = npa::torsion_json(t);
            out.grade = t.member ? "Proven" : "Evidence";
            std::ostringstream ts;
            ts << (t.member ? "member (zero after " + std::to_string(t.steps) + " steps)"
                            : "no termination within the cap")
               << "; prediction " << (t.prediction_agrees ? "agrees" : "DISAGREES") << "\n";
            out.text = ts.str();
            out.print(os);
            return t.prediction_agrees ? 0 : 1;
        }

        if (app.got_subcommand(c_gr)) {
            npa::GrCertificate c = npa::gr_commutative(pa.alg, deg);
            out.query = Json{{"verb", "gr-check"}, {"algebra", pa.canonical}};
            out.payload_key = "verdict";
            out.payload = npa::gr_certificate_json(c);
            out.grade = "ExactOnSlice";
            std::ostringstream t;
            t << "graded bracket commutative: " << (c.commutative ? "yes" : "no") << " (degree drop ";
            if (c.degree_drop == npa::kInfiniteDrop)
                t << "infinite";
            else
                t << c.degree_drop;
            t << ", checked to degree " << c.checked_bound << ")\n";
            out.text = t.str();
            out.print(os);
            return 0;
        }

        if (app.got_subcommand(c_partner)) {
            npa::Element z = parse_in(pa, expr);
            const int n = std::max(deg, z.degree());
            auto w = npa::partner_probe(z, n);
            out.query = Json{{"verb", "partner"}, {"algebra", pa.canonical}, {"expr", expr}};
            out.bounds = Json{{"deg", n}, {"iters", iters}};
            out.payload_key = "bases";
            out.payload = w ? Json{{"witness", w->str()}} : Json{{"witness", nullptr}};
            out.grade = w ? "Proven" : "ExactOnSlice";
            out.text = w ? ("w = " + w->str() + "\n") : "none on this slice\n";
            out.print(os);
            return 0;
        }

        if (app.got_subcommand(c_hom)) {
            npa::Element z = parse_in(pa, expr);
            std::vector<npa::Element> images(pa.alg->n_gens(), npa::Element::zero(pa.alg));
            std::vector<bool> seen(pa.alg->n_gens(), false);
            for (const std::string& part : split_list(images_arg)) {
                const size_t eq = part.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("image entries look like name=expr");
                std::string name = part.substr(0, eq);
                npa::Element img = parse_in(pa, part.substr(eq + 1));
                size_t letters = 0;
                while (letters < name.size() && std::isalpha(static_cast<unsigned char>(name[letters])))
                    ++letters;
                if (letters != 1) throw std::invalid_argument("unknown generator: " + name);
                const int idx = letters < name.size() ? std::stoi(name.substr(letters)) : 1;
                const int g = pa.alg->gen_index(name[0], idx);
                if (g < 0) throw std::invalid_argument("unknown generator: " + name);
                images[g] = std::move(img);
                seen[g] = true;
            }
            for (int g = 0; g < pa.alg->n_gens(); ++g)
                if (!seen[g]) images[g] = npa::Element::generator(pa.alg, g);

            npa::Element zimg = npa::hom_apply(images, z);
            const int n = std::max({deg, z.degree(), zimg.degree()});
            npa::TypeVerdict v1 = npa::classify(z, n, iters);
            npa::TypeVerdict v2 = npa::classify(zimg, n, iters);
            const bool agree = v1.label == v2.label;
            out.query = Json{{"verb", "hom-classify"}, {"algebra", pa.canonical}, {"expr", expr}, {"images", images_arg}};
            out.bounds = Json{{"deg", n}, {"iters", iters}};
            out.payload_key = "verdict";
            out.payload = Json{{"source", npa::verdict_json(v1)},
                               {"image", npa::verdict_json(v2)},
                               {"image_expr", zimg.str()},
                               {"labels_agree", agree}};
            out.grade = npa::grade_name(v1.grade == npa::Grade::Proven && v2.grade == npa::Grade::Proven
                                            ? npa::Grade::Proven
                                            : npa::Grade::ConsistentUpToBound);
            std::ostringstream t;
            t << "source: " << npa::omega_display(v1.label) << "  image: "
              << npa::omega_display(v2.label) << "  -> " << (agree ? "labels agree" : "LABELS DIFFER")
              << "\n";
            out.text = t.str();
            out.print(os);
            return agree ? 0 : 1;
        }

        std::cerr << "no verb dispatched\n";
        return 2;
    } catch (const npa::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.size() >= 2 && args[0] == "--batch") return run_batch(args[1]);
    return run_command(args, std::cout);
}
