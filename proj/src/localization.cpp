#include "npa/localization.hpp"

#include <sstream>
#include <stdexcept>

namespace npa {

LocalizedAlgebra::LocalizedAlgebra(AlgebraPtr alg, Element base)
    : alg_(std::move(alg)), base_(std::move(base)) {
    if (alg_->algebra_class() != AlgebraClass::Poly)
        throw std::domain_error("localization is built for Class 1 algebras only");
    if (base_.is_zero()) throw std::invalid_argument("localization base must be nonzero");
    if (!base_.algebra()->same_as(*alg_)) throw std::domain_error("base outside the algebra");
}

LocAlgebraPtr localize(AlgebraPtr alg, Element base) {
    return std::make_shared<const LocalizedAlgebra>(std::move(alg), std::move(base));
}

std::optional<Element> exact_divide(const Element& f, const Element& g) {
    if (g.is_zero()) throw std::invalid_argument("division by zero element");
    if (g.algebra()->algebra_class() != AlgebraClass::Poly)
        throw std::domain_error("exact division needs a commutative algebra");
    Element r = f;
    Element q = Element::zero(f.algebra());
    const auto& glead = *g.terms().rbegin();  // deg-lex leading term
    while (!r.is_zero()) {
        const auto& rlead = *r.terms().rbegin();
        Mono t{std::vector<uint32_t>(rlead.first.e.size(), 0)};
        for (size_t i = 0; i < t.e.size(); ++i) {
            if (rlead.first.e[i] < glead.first.e[i]) return std::nullopt;
            t.e[i] = rlead.first.e[i] - glead.first.e[i];
        }
        Element step = Element::monomial(f.algebra(), t, rlead.second / glead.second);
        q = q + step;
        r = r - mul(step, g);
    }
    return q;
}

LocElement loc_make(const LocAlgebraPtr& loc, Element numerator, int denom_exp) {
    if (denom_exp < 0) throw std::invalid_argument("negative denominator exponent");
    LocElement x;
    x.loc = loc;
    if (numerator.is_zero()) {
        x.numerator = std::move(numerator);
        x.denom_exp = 0;
        return x;
    }
    while (denom_exp > 0) {
        auto q = exact_divide(numerator, loc->base());
        if (!q) break;
        numerator = std::move(*q);
        --denom_exp;
    }
    x.numerator = std::move(numerator);
    x.denom_exp = denom_exp;
    return x;
}

LocElement loc_embed(const LocAlgebraPtr& loc, const Element& x) { return loc_make(loc, x, 0); }

namespace {

void require_same(const LocElement& a, const LocElement& b) {
    if (a.loc != b.loc && (!a.loc || !b.loc || a.loc->base() != b.loc->base() ||
                           !a.loc->algebra()->same_as(*b.loc->algebra())))
        throw std::domain_error("localized elements over different bases");
}

}  // namespace

LocElement loc_add(const LocElement& a, const LocElement& b) {
    require_same(a, b);
    const Element& g = a.loc->base();
    const int k = std::max(a.denom_exp, b.denom_exp);
    Element num = mul(a.numerator, g.pow(k - a.denom_exp)) + mul(b.numerator, g.pow(k - b.denom_exp));
    return loc_make(a.loc, std::move(num), k);
}

LocElement loc_neg(const LocElement& a) {
    LocElement out = a;
    out.numerator = -out.numerator;
    return out;
}

LocElement loc_sub(const LocElement& a, const LocElement& b) { return loc_add(a, loc_neg(b)); }

LocElement loc_mul(const LocElement& a, const LocElement& b) {
    require_same(a, b);
    return loc_make(a.loc, mul(a.numerator, b.numerator), a.denom_exp + b.denom_exp);
}

LocElement loc_scale(const LocElement& a, const Rat& c) {
    LocElement out = a;
    out.numerator = out.numerator.scaled(c);
    if (out.numerator.is_zero()) out.denom_exp = 0;
    return out;
}

bool loc_equal(const LocElement& a, const LocElement& b) {
    require_same(a, b);
    // Canonical forms are unique: cross-multiplying is only needed when the
    // exponents differ, which cannot happen for canonical equal values.
    return a.denom_exp == b.denom_exp && a.numerator == b.numerator;
}

LocElement loc_bracket(const LocElement& a, const LocElement& b) {
    require_same(a, b);
    const Element& g = a.loc->base();
    Element s = g.pow(a.denom_exp);
    Element t = g.pow(b.denom_exp);
    const Element& an = a.numerator;
    const Element& bn = b.numerator;
    Element num = -mul(an, mul(bracket(s, bn), t)) + mul(mul(an, bn), bracket(s, t)) +
                  mul(bracket(an, bn), mul(s, t)) - mul(bn, mul(bracket(an, t), s));
    return loc_make(a.loc, std::move(num), 2 * (a.denom_exp + b.denom_exp));
}

std::string loc_str(const LocElement& x) {
    if (x.denom_exp == 0) return x.numerator.str();
    std::ostringstream os;
    const bool multi = x.numerator.terms().size() > 1;
    os << (multi ? "(" : "") << x.numerator.str() << (multi ? ")" : "");
    os << "*inv(" << x.loc->base().str() << ")";
    if (x.denom_exp > 1) os << "^" << x.denom_exp;
    return os.str();
}

TorsionCheck loc_torsion_check(const Element& z, const LocElement& probe, int cap) {
    if (cap < 1) throw std::invalid_argument("iteration cap must be at least 1");
    TorsionCheck out;
    LocElement zq = loc_embed(probe.loc, z);

    LocElement cur = probe;
    for (int m = 0; m <= cap; ++m) {
        out.profile.push_back({cur.numerator.degree(), cur.denom_exp});
        if (cur.is_zero()) {
            out.member = true;
            out.steps = m;
            break;
        }
        if (m == cap) break;
        cur = loc_bracket(zq, cur);
    }

    // Prediction from the description of the localized torsion algebra as
    // P C^-1 with C the eigenvectors of ad_z.
    const Element& g = probe.loc->base();
    Element w = bracket(z, g);
    bool base_eigen = false;
    if (w.is_zero()) {
        base_eigen = true;
    } else if (!g.is_zero()) {
        const auto& glead = *g.terms().rbegin();
        auto it = w.terms().find(glead.first);
        if (it != w.terms().end()) {
            Rat lambda = it->second / glead.second;
            base_eigen = (w == g.scaled(lambda));
        }
    }
    out.predicted_member = probe.denom_exp == 0 || base_eigen;
    out.prediction_agrees = out.predicted_member == out.member;
    return out;
}

}  // namespace npa
