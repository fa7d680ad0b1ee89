#include "npa/gr.hpp"

#include <stdexcept>

namespace npa {

GradedElement symbol(const Element& x) {
    if (x.is_zero()) throw std::invalid_argument("symbol of the zero element");
    const int d = x.degree();
    return GradedElement{d, x.homogeneous_part(d)};
}

GradedElement gr_mul(const GradedElement& a, const GradedElement& b) {
    const int d = a.degree + b.degree;
    Element prod = mul(a.representative, b.representative);
    return GradedElement{d, prod.homogeneous_part(d)};
}

GradedElement gr_bracket(const GradedElement& a, const GradedElement& b) {
    const int d = a.degree + b.degree - 1;
    Element br = bracket(a.representative, b.representative);
    return GradedElement{d, br.homogeneous_part(d)};
}

GrCertificate gr_commutative(const AlgebraPtr& alg, int degree_bound) {
    GrCertificate cert;
    cert.degree_drop = alg->degree_drop();
    cert.commutative = cert.degree_drop >= 2;
    cert.checked_bound = degree_bound;

    // Exhaustive cross-check: every monomial pair up to the bound must obey
    // the derived drop. This can only refute the derived bound, never extend
    // it beyond the checked degree.
    FilteredBasis b = filtered_basis(alg, degree_bound);
    cert.exhaustive_ok = true;
    for (const Mono& m1 : b.monomials) {
        Element e1 = Element::monomial(alg, m1);
        for (const Mono& m2 : b.monomials) {
            Element br = bracket(e1, Element::monomial(alg, m2));
            if (br.is_zero()) continue;
            const int drop = m1.degree() + m2.degree() - br.degree();
            if (drop < std::min(cert.degree_drop, 2)) {
                cert.exhaustive_ok = false;
                cert.commutative = false;
            }
        }
    }
    return cert;
}

}  // namespace npa
