#include "npa/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace npa {

namespace {

// Generator index of a factor mapped into the combined algebra. Blocks stay
// blocks: left p's first, then right p's, then left q's, then right q's.
int reindex(Side side, int gen, int m, int n) {
    if (side == Side::Left) return gen < m ? gen : gen + n;
    return gen < n ? gen + m : gen + 2 * m;
}

Mono reindex_mono(const Mono& src, Side side, int m, int n) {
    Mono out{std::vector<uint32_t>(2 * (m + n), 0)};
    for (size_t g = 0; g < src.e.size(); ++g)
        if (src.e[g] > 0) out.e[reindex(side, static_cast<int>(g), m, n)] = src.e[g];
    return out;
}

}  // namespace

TensorAlgebraSpec tensor_product(const AlgebraPtr& left, const AlgebraPtr& right) {
    if (left->algebra_class() != right->algebra_class())
        throw std::domain_error("tensor product requires algebras of the same class");
    TensorAlgebraSpec t;
    t.left = left;
    t.right = right;
    const int m = left->n_pairs(), n = right->n_pairs();
    if (left->algebra_class() == AlgebraClass::Weyl) {
        t.combined = AlgebraSpec::weyl(m + n);
        return t;
    }
    // Class 1: carry both tables over, cross-generator brackets vanish.
    std::vector<BracketRule> rules;
    for (const auto& [key, val] : left->table()) {
        BracketRule r;
        r.gi = reindex(Side::Left, key.first, m, n);
        r.gj = reindex(Side::Left, key.second, m, n);
        for (const auto& [mono, c] : val.terms()) r.value.push_back({reindex_mono(mono, Side::Left, m, n), c});
        rules.push_back(std::move(r));
    }
    for (const auto& [key, val] : right->table()) {
        BracketRule r;
        r.gi = reindex(Side::Right, key.first, m, n);
        r.gj = reindex(Side::Right, key.second, m, n);
        for (const auto& [mono, c] : val.terms()) r.value.push_back({reindex_mono(mono, Side::Right, m, n), c});
        rules.push_back(std::move(r));
    }
    t.combined = AlgebraSpec::poly_with_table(m + n, rules);
    return t;
}

Element tensor_embed(const TensorAlgebraSpec& t, Side side, const Element& x) {
    const AlgebraPtr& factor = side == Side::Left ? t.left : t.right;
    if (!x.algebra() || !x.algebra()->same_as(*factor))
        throw std::domain_error("embedded element does not belong to the stated factor");
    const int m = t.left->n_pairs(), n = t.right->n_pairs();
    Element out(t.combined);
    for (const auto& [mono, c] : x.terms()) out.add_term(reindex_mono(mono, side, m, n), c);
    return out;
}

Element tensor_elem(const TensorAlgebraSpec& t, const Element& a, const Element& b) {
    return mul(tensor_embed(t, Side::Left, a), tensor_embed(t, Side::Right, b));
}

Element build_theta(const TensorAlgebraSpec& t, const Element& z1, const Element& z2) {
    return tensor_elem(t, z1, z2);
}

Element build_gamma(const TensorAlgebraSpec& t, const Element& z1, const Element& z2) {
    return tensor_embed(t, Side::Left, z1) + tensor_embed(t, Side::Right, z2);
}

int factor_degree(const TensorAlgebraSpec& t, Side side, const Element& x) {
    if (x.is_zero()) return kNegInfDegree;
    if (!x.algebra() || !x.algebra()->same_as(*t.combined))
        throw std::domain_error("factor degree of an element outside the tensor algebra");
    const int m = t.left->n_pairs(), n = t.right->n_pairs();
    const int total = m + n;
    int best = 0;
    for (const auto& [mono, c] : x.terms()) {
        int d = 0;
        if (side == Side::Left) {
            for (int i = 0; i < m; ++i) d += static_cast<int>(mono.e[i]) + static_cast<int>(mono.e[total + i]);
        } else {
            for (int i = 0; i < n; ++i)
                d += static_cast<int>(mono.e[m + i]) + static_cast<int>(mono.e[total + m + i]);
        }
        best = std::max(best, d);
    }
    return best;
}

}  // namespace npa
