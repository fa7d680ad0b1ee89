#ifndef NPA_GROWTH_HPP
#define NPA_GROWTH_HPP

#include <vector>

#include "npa/algebra.hpp"

namespace npa {

// Growth data of the filtration V^1 subset V^2 subset ... spanned by products
// of a finite generating set. The dimension sequence is exact; the slopes are
// evidence for the growth exponent, never a certified value.
struct GrowthProfile {
    std::vector<Element> generator_set;
    std::vector<int> dims;                 // dim V^n, n = 1..n_max
    std::vector<double> slope_estimates;   // log(dim V^n) / log n, zero at n = 1
    double ls_slope = 0.0;                 // least-squares slope over the last third
};

// Requires 1 in the span of the generators (so the V^n chain is increasing).
GrowthProfile gk_profile(const std::vector<Element>& gens, int n_max);

// Right algebraic-independence probe: tests linear independence of
// {b * w^i : b in basis, 0 <= i <= i_max} by exact rank. A dependence comes
// back as the coefficients a_i (in the span of the basis) of a nonzero
// f(X) = a_n X^n + ... + a_0 with f(w) = 0, coefficients left of the powers.
struct IndependenceResult {
    bool independent = false;
    int i_max = 0;
    std::vector<Element> dependence_coeffs;  // a_0 .. a_{i_max} when dependent
};

IndependenceResult independence_probe(const Element& w, const std::vector<Element>& basis,
                                      int i_max);

std::string growth_csv(const GrowthProfile& p);  // columns n,dim,slope

}  // namespace npa

#endif
