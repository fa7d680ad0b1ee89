#ifndef NPA_TEST_UTIL_HPP
#define NPA_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "npa/algebra.hpp"

namespace npa_test {

using namespace npa;

// Deterministic random elements for property tests.
inline Element rand_element(const AlgebraPtr& alg, std::mt19937& rng, int max_deg = 3,
                            int max_terms = 3, bool allow_zero = false) {
    std::uniform_int_distribution<int> nterms(allow_zero ? 0 : 1, max_terms);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    std::uniform_int_distribution<int> expo(0, max_deg);

    Element out = Element::zero(alg);
    const int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        Mono m{std::vector<uint32_t>(alg->n_gens(), 0)};
        int budget = max_deg;
        for (int g = 0; g < alg->n_gens(); ++g) {
            const int e = expo(rng) % (budget + 1);
            m.e[g] = static_cast<uint32_t>(e);
            budget -= e;
        }
        int c = coeff(rng);
        if (c == 0) c = 1;
        out.add_term(m, rat(c, den(rng)));
    }
    return out;
}

inline Element rand_nonzero(const AlgebraPtr& alg, std::mt19937& rng, int max_deg = 3,
                            int max_terms = 3) {
    for (int tries = 0; tries < 64; ++tries) {
        Element e = rand_element(alg, rng, max_deg, max_terms);
        if (!e.is_zero()) return e;
    }
    return Element::constant(alg, 1);
}

// Brute-force rewriting oracle for the Weyl product: a word of generator
// indices is sorted into normal order by adjacent swaps, each q_i p_i
// adjacency contributing the extra contracted word from q p = p q + 1.
// Exponential; for tiny degrees only.
inline Element normal_order_word(const AlgebraPtr& alg, const std::vector<int>& word) {
    const int n = alg->n_pairs();
    for (size_t i = 0; i + 1 < word.size(); ++i) {
        const int a = word[i], b = word[i + 1];
        if (a <= b) continue;
        std::vector<int> swapped = word;
        std::swap(swapped[i], swapped[i + 1]);
        if (a >= n && a - n == b) {
            std::vector<int> dropped;
            for (size_t j = 0; j < word.size(); ++j)
                if (j != i && j != i + 1) dropped.push_back(word[j]);
            return normal_order_word(alg, swapped) + normal_order_word(alg, dropped);
        }
        return normal_order_word(alg, swapped);
    }
    Mono m{std::vector<uint32_t>(alg->n_gens(), 0)};
    for (int g : word) m.e[g] += 1;
    return Element::monomial(alg, m);
}

inline std::vector<int> mono_word(const Mono& m) {
    std::vector<int> w;
    for (size_t g = 0; g < m.e.size(); ++g)
        for (uint32_t k = 0; k < m.e[g]; ++k) w.push_back(static_cast<int>(g));
    return w;
}

inline Element oracle_mul(const Element& a, const Element& b) {
    Element out = Element::zero(a.algebra());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<int> w = mono_word(ma);
            std::vector<int> wb = mono_word(mb);
            w.insert(w.end(), wb.begin(), wb.end());
            out = out + normal_order_word(a.algebra(), w).scaled(ca * cb);
        }
    return out;
}

}  // namespace npa_test

#endif
