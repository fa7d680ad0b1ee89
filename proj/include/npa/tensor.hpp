#ifndef NPA_TENSOR_HPP
#define NPA_TENSOR_HPP

#include "npa/algebra.hpp"

namespace npa {

// P1 (x) P2 for two algebras of the same class. The combined algebra carries
// the disjoint union of the generators (A_m (x) A_n is A_{m+n}); elements of
// the tensor product live directly in the combined monomial space.
struct TensorAlgebraSpec {
    AlgebraPtr left;
    AlgebraPtr right;
    AlgebraPtr combined;
};

TensorAlgebraSpec tensor_product(const AlgebraPtr& left, const AlgebraPtr& right);

enum class Side { Left, Right };

// x |-> x (x) 1 resp. 1 (x) x, by re-indexing exponents.
Element tensor_embed(const TensorAlgebraSpec& t, Side side, const Element& x);

// a (x) b as an element of the combined algebra.
Element tensor_elem(const TensorAlgebraSpec& t, const Element& a, const Element& b);

// z1 (x) z2.
Element build_theta(const TensorAlgebraSpec& t, const Element& z1, const Element& z2);

// z1 (x) 1 + 1 (x) z2.
Element build_gamma(const TensorAlgebraSpec& t, const Element& z1, const Element& z2);

// Factor-wise filtration degree: the smallest n with x in P_{1,n} (x) P_2
// (resp. the right-hand analogue); kNegInfDegree for zero.
int factor_degree(const TensorAlgebraSpec& t, Side side, const Element& x);

}  // namespace npa

#endif
