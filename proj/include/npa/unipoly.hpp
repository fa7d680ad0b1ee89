#ifndef NPA_UNIPOLY_HPP
#define NPA_UNIPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "npa/rational.hpp"

namespace npa {

// Dense univariate polynomial over the rationals, coefficients ascending by
// degree. Trailing zero coefficients are stripped; the zero polynomial has an
// empty coefficient list and degree -1.
class UniPolyQ {
public:
    UniPolyQ() = default;
    explicit UniPolyQ(std::vector<Rat> coeffs);

    static UniPolyQ zero() { return UniPolyQ(); }
    static UniPolyQ constant(const Rat& c) { return UniPolyQ({c}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& coeff(int i) const;
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat eval(const Rat& x) const;

    // Exact division by (X - r); throws if r is not a root.
    UniPolyQ deflate_root(const Rat& r) const;

    std::string str() const;

    bool operator==(const UniPolyQ& o) const { return c_ == o.c_; }

private:
    std::vector<Rat> c_;
};

struct RootReport {
    // Rational roots with multiplicities, ascending by value.
    std::vector<std::pair<Rat, int>> roots;
    // Degree of the factor left after dividing out all rational roots. A
    // nonzero value flags spectrum that is not visible over the rationals.
    int remainder_degree = 0;
};

// All rational roots of a nonzero polynomial, found through the primitive
// integer form (candidates r/s with r | a_0, s | a_n, filtered by the Cauchy
// root bound). Throws std::invalid_argument on the zero polynomial.
RootReport rational_roots(const UniPolyQ& p);

}  // namespace npa

#endif
