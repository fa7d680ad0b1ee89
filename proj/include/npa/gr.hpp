#ifndef NPA_GR_HPP
#define NPA_GR_HPP

#include "npa/algebra.hpp"

namespace npa {

// Homogeneous-slice representative of x + P_{degree-1} in the associated
// graded algebra; the representative carries only terms of the stated degree.
struct GradedElement {
    int degree = 0;
    Element representative;
};

// Top-degree symbol of a nonzero element.
GradedElement symbol(const Element& x);

// Graded product (lands in degree i + j).
GradedElement gr_mul(const GradedElement& a, const GradedElement& b);

// Graded bracket, taken in degree i + j - 1: components of {a, b} strictly
// below that degree are quotiented away, and the component at i + j - 1 is
// zero exactly when the bracket drops degree by two or more.
GradedElement gr_bracket(const GradedElement& a, const GradedElement& b);

struct GrCertificate {
    bool commutative = false;  // degree drop >= 2 from the generator table
    int degree_drop = 0;
    int checked_bound = 0;     // exhaustive monomial-pair cross-check bound
    bool exhaustive_ok = false;
};

// Certifies that the associated graded algebra is commutative under the
// bracket, via the generator-derived drop bound cross-checked exhaustively
// on monomial pairs up to the given degree.
GrCertificate gr_commutative(const AlgebraPtr& alg, int degree_bound);

}  // namespace npa

#endif
