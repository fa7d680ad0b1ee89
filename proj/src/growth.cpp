#include "npa/growth.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "npa/matrix.hpp"

namespace npa {

GrowthProfile gk_profile(const std::vector<Element>& gens, int n_max) {
    if (gens.empty()) throw std::invalid_argument("empty generator list");
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");
    const AlgebraPtr& alg = gens.front().algebra();
    int max_deg = 0;
    for (const Element& g : gens) {
        if (!same_algebra(g, gens.front())) throw std::domain_error("generators in different algebras");
        max_deg = std::max(max_deg, std::max(0, g.degree()));
    }

    FilteredBasis ambient = filtered_basis(alg, max_deg * n_max);
    SpanBuilder span(ambient.dim());
    {
        SpanBuilder v1(ambient.dim());
        bool has_one = false;
        for (const Element& g : gens) {
            v1.insert(coords(g, ambient));
            if (!has_one) has_one = v1.contains(coords(Element::constant(alg, 1), ambient));
        }
        if (!has_one) throw std::invalid_argument("generator span must contain 1");
    }

    GrowthProfile p;
    p.generator_set = gens;

    // V^{n+1} = V^n + V^n * gens; only directions new at step n need another
    // round of products.
    std::vector<Element> frontier;
    for (const Element& g : gens)
        if (span.insert(coords(g, ambient))) frontier.push_back(g);
    p.dims.push_back(span.dim());

    for (int n = 2; n <= n_max; ++n) {
        std::vector<Element> next;
        for (const Element& f : frontier)
            for (const Element& g : gens) {
                Element prod = mul(f, g);
                if (prod.is_zero()) continue;
                if (span.insert(coords(prod, ambient))) next.push_back(std::move(prod));
            }
        frontier = std::move(next);
        p.dims.push_back(span.dim());
    }

    for (int n = 1; n <= n_max; ++n) {
        const double dim = static_cast<double>(p.dims[n - 1]);
        p.slope_estimates.push_back(n == 1 ? 0.0 : std::log(dim) / std::log(static_cast<double>(n)));
    }

    // Least-squares slope of log dim against log n over the last third.
    const int start = std::max(1, n_max - n_max / 3);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int n = start; n <= n_max; ++n) {
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(static_cast<double>(p.dims[n - 1]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    const double denom = cnt * sxx - sx * sx;
    p.ls_slope = denom != 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;
    return p;
}

IndependenceResult independence_probe(const Element& w, const std::vector<Element>& basis,
                                      int i_max) {
    if (basis.empty()) throw std::invalid_argument("empty coefficient basis");
    if (i_max < 0) throw std::invalid_argument("negative power bound");
    for (const Element& b : basis)
        if (!same_algebra(b, w)) throw std::domain_error("probe inputs in different algebras");

    const AlgebraPtr& alg = w.algebra();
    const int wd = std::max(0, w.degree());
    int bd = 0;
    for (const Element& b : basis) bd = std::max(bd, std::max(0, b.degree()));
    FilteredBasis ambient = filtered_basis(alg, bd + wd * i_max);

    std::vector<Element> powers{Element::constant(alg, 1)};
    for (int i = 1; i <= i_max; ++i) powers.push_back(mul(powers.back(), w));

    // Columns ordered (power, basis element).
    const int ncols = static_cast<int>(basis.size()) * (i_max + 1);
    MatrixQ m(ambient.dim(), ncols);
    int col = 0;
    for (int i = 0; i <= i_max; ++i)
        for (const Element& b : basis) {
            Element prod = mul(b, powers[i]);
            for (const auto& [mono, c] : prod.terms()) m.at(ambient.index_of(mono), col) = c;
            ++col;
        }

    IndependenceResult res;
    res.i_max = i_max;
    std::vector<VecQ> ker = kernel_basis(m);
    if (ker.empty()) {
        res.independent = true;
        return res;
    }
    res.independent = false;
    const VecQ& k = ker.front();
    for (int i = 0; i <= i_max; ++i) {
        Element a = Element::zero(alg);
        for (size_t b = 0; b < basis.size(); ++b) {
            const Rat& c = k[i * basis.size() + b];
            if (!npa::is_zero(c)) a = a + basis[b].scaled(c);
        }
        res.dependence_coeffs.push_back(std::move(a));
    }
    // The witness substitutes to exactly zero.
    Element check = Element::zero(alg);
    for (int i = 0; i <= i_max; ++i) check = check + mul(res.dependence_coeffs[i], powers[i]);
    if (!check.is_zero()) throw std::logic_error("dependence witness failed to vanish");
    return res;
}

std::string growth_csv(const GrowthProfile& p) {
    std::ostringstream os;
    os << "n,dim,slope\n";
    for (size_t i = 0; i < p.dims.size(); ++i)
        os << (i + 1) << "," << p.dims[i] << "," << p.slope_estimates[i] << "\n";
    return os.str();
}

}  // namespace npa
