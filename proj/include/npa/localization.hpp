#ifndef NPA_LOCALIZATION_HPP
#define NPA_LOCALIZATION_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "npa/algebra.hpp"

namespace npa {

// Class 1 localization at the powers of one fixed nonzero element g. The
// fractions are n / g^k with k minimal (the numerator is reduced by exact
// multivariate division as long as it stays divisible by g).
class LocalizedAlgebra {
public:
    LocalizedAlgebra(AlgebraPtr alg, Element base);

    const AlgebraPtr& algebra() const { return alg_; }
    const Element& base() const { return base_; }

private:
    AlgebraPtr alg_;
    Element base_;
};

using LocAlgebraPtr = std::shared_ptr<const LocalizedAlgebra>;

LocAlgebraPtr localize(AlgebraPtr alg, Element base);

struct LocElement {
    LocAlgebraPtr loc;
    Element numerator;
    int denom_exp = 0;

    bool is_zero() const { return numerator.is_zero(); }
};

// numerator / base^k, canonicalized.
LocElement loc_make(const LocAlgebraPtr& loc, Element numerator, int denom_exp);
LocElement loc_embed(const LocAlgebraPtr& loc, const Element& x);

LocElement loc_add(const LocElement& a, const LocElement& b);
LocElement loc_sub(const LocElement& a, const LocElement& b);
LocElement loc_neg(const LocElement& a);
LocElement loc_mul(const LocElement& a, const LocElement& b);
LocElement loc_scale(const LocElement& a, const Rat& c);
bool loc_equal(const LocElement& a, const LocElement& b);

// Bracket through the localized Class 1 formula with s = g^{k_a}, t = g^{k_b}:
// {a s^-1, b t^-1} = (-a{s,b}t + ab{s,t} + {a,b}st - b{a,t}s) / (st)^2.
LocElement loc_bracket(const LocElement& a, const LocElement& b);

// Exact quotient f / g in the commutative algebra, or nullopt when g does not
// divide f.
std::optional<Element> exact_divide(const Element& f, const Element& g);

std::string loc_str(const LocElement& x);

// Iterates ad_z on the probe. A terminal zero within the cap certifies
// torsion membership. The side prediction follows the localized-torsion
// description F = P C^-1: a reduced fraction n / g^k with k > 0 is predicted
// torsion exactly when the base g is an eigenvector of ad_z.
struct TorsionCheck {
    bool member = false;
    int steps = 0;  // iterations to reach zero when member
    std::vector<std::pair<int, int>> profile;  // per step: numerator degree, denominator exponent
    bool predicted_member = false;
    bool prediction_agrees = false;
};

TorsionCheck loc_torsion_check(const Element& z, const LocElement& probe, int cap);

}  // namespace npa

#endif
