#include <doctest.h>

#include <random>

#include "npa/matrix.hpp"
#include "npa/unipoly.hpp"

using namespace npa;

namespace {

MatrixQ from_rows(const std::vector<std::vector<long>>& rows) {
    MatrixQ m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = rat(rows[i][j]);
    return m;
}

// Independent oracle: plain rational Gauss-Jordan, no fraction-free tricks.
struct NaiveRref {
    std::vector<VecQ> rows;
    std::vector<int> pivots;

    explicit NaiveRref(const MatrixQ& m) {
        const int nr = m.rows(), nc = m.cols();
        for (int i = 0; i < nr; ++i) {
            VecQ r(nc);
            for (int j = 0; j < nc; ++j) r[j] = m.at(i, j);
            rows.push_back(std::move(r));
        }
        int top = 0;
        for (int c = 0; c < nc && top < nr; ++c) {
            int piv = -1;
            for (int r = top; r < nr; ++r)
                if (!is_zero(rows[r][c])) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(rows[top], rows[piv]);
            Rat inv = Rat(1) / rows[top][c];
            for (int j = 0; j < nc; ++j) rows[top][j] *= inv;
            for (int r = 0; r < nr; ++r) {
                if (r == top || is_zero(rows[r][c])) continue;
                Rat f = rows[r][c];
                for (int j = 0; j < nc; ++j) rows[r][j] -= f * rows[top][j];
            }
            pivots.push_back(c);
            ++top;
        }
    }

    std::vector<VecQ> kernel(int nc) const {
        std::vector<bool> is_piv(nc, false);
        for (int c : pivots) is_piv[c] = true;
        std::vector<VecQ> out;
        for (int f = 0; f < nc; ++f) {
            if (is_piv[f]) continue;
            VecQ v(nc, Rat(0));
            v[f] = 1;
            for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
            out.push_back(std::move(v));
        }
        return out;
    }
};

// Oracle: char poly as the cofactor-expansion determinant of XI - M over
// polynomial entries. Exponential, only for tiny matrices.
UniPolyQ poly_mul(const UniPolyQ& a, const UniPolyQ& b) {
    if (a.is_zero() || b.is_zero()) return UniPolyQ::zero();
    std::vector<Rat> c(a.degree() + b.degree() + 1, Rat(0));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) c[i + j] += a.coeff(i) * b.coeff(j);
    return UniPolyQ(std::move(c));
}

UniPolyQ poly_add(const UniPolyQ& a, const UniPolyQ& b) {
    std::vector<Rat> c(static_cast<size_t>(std::max(a.degree(), b.degree()) + 1), Rat(0));
    for (int i = 0; i <= a.degree(); ++i) c[i] += a.coeff(i);
    for (int i = 0; i <= b.degree(); ++i) c[i] += b.coeff(i);
    return UniPolyQ(std::move(c));
}

UniPolyQ det_poly(std::vector<std::vector<UniPolyQ>> m) {
    const size_t n = m.size();
    if (n == 0) return UniPolyQ::constant(1);
    if (n == 1) return m[0][0];
    UniPolyQ acc;
    for (size_t k = 0; k < n; ++k) {
        std::vector<std::vector<UniPolyQ>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<UniPolyQ> row;
            for (size_t j = 0; j < n; ++j)
                if (j != k) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        UniPolyQ term = poly_mul(m[0][k], det_poly(std::move(minor)));
        if (k % 2 == 1) term = poly_mul(term, UniPolyQ::constant(-1));
        acc = poly_add(acc, term);
    }
    return acc;
}

UniPolyQ char_poly_oracle(const MatrixQ& m) {
    const int n = m.rows();
    std::vector<std::vector<UniPolyQ>> e(n, std::vector<UniPolyQ>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> c{-m.at(i, j)};
            if (i == j) c.push_back(Rat(1));
            e[i][j] = UniPolyQ(std::move(c));
        }
    return det_poly(std::move(e));
}

MatrixQ rand_matrix(std::mt19937& rng, int nr, int nc, int lo = -4, int hi = 4) {
    std::uniform_int_distribution<int> d(lo, hi);
    MatrixQ m(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) m.at(i, j) = rat(d(rng));
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("scalar-linalg");

TEST_CASE("kernel of the zero 1x1 matrix is the full line") {
    auto basis = kernel_basis(from_rows({{0}}));
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == VecQ{Rat(1)});
}

TEST_CASE("kernel of a rank-one 1x2 matrix") {
    auto basis = kernel_basis(from_rows({{1, 1}}));
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == (VecQ{Rat(1), Rat(-1)}));
}

TEST_CASE("kernel and rank of a 3x3 with dependent rows") {
    MatrixQ m = from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}});
    auto basis = kernel_basis(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == (VecQ{Rat(2), Rat(-1), Rat(0)}));
    CHECK(rank(m) == 2);

    NaiveRref oracle(m);
    CHECK(static_cast<int>(oracle.pivots.size()) == 2);
    CHECK(same_span(basis, oracle.kernel(3), 3));
}

TEST_CASE("rank examples") {
    CHECK(rank(MatrixQ::identity(4)) == 4);
    CHECK(rank(MatrixQ(3, 5)) == 0);
}

TEST_CASE("kernel vectors satisfy m v = 0 exactly and match the oracle") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        const int nr = 1 + trial % 5, nc = 1 + (trial * 7) % 6;
        MatrixQ m = rand_matrix(rng, nr, nc);
        auto basis = kernel_basis(m);
        for (const VecQ& v : basis) {
            VecQ img = m.apply(v);
            for (const Rat& x : img) CHECK(is_zero(x));
        }
        CHECK(rank(m) + static_cast<int>(basis.size()) == nc);
        NaiveRref oracle(m);
        CHECK(same_span(basis, oracle.kernel(nc), nc));
        CHECK(static_cast<int>(oracle.pivots.size()) == rank(m));
    }
}

TEST_CASE("characteristic polynomial on pinned matrices") {
    CHECK(char_poly(MatrixQ::identity(2)) == UniPolyQ({rat(1), rat(-2), rat(1)}));

    MatrixQ d(2, 2);
    d.at(0, 0) = 1;
    d.at(1, 1) = -1;
    CHECK(char_poly(d) == UniPolyQ({rat(-1), rat(0), rat(1)}));

    MatrixQ s(2, 2);
    s.at(0, 1) = 1;
    s.at(1, 0) = 1;
    CHECK(char_poly(s) == UniPolyQ({rat(-1), rat(0), rat(1)}));

    CHECK_THROWS_AS(char_poly(MatrixQ(2, 3)), std::invalid_argument);
}

TEST_CASE("characteristic polynomial matches the determinant oracle") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + trial % 5;
        MatrixQ m = rand_matrix(rng, n, n, -3, 3);
        CHECK(char_poly(m) == char_poly_oracle(m));
    }
}

TEST_CASE("rational roots on pinned polynomials") {
    RootReport r = rational_roots(UniPolyQ({rat(-1), rat(0), rat(1)}));  // X^2 - 1
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0] == std::pair<Rat, int>(rat(-1), 1));
    CHECK(r.roots[1] == std::pair<Rat, int>(rat(1), 1));
    CHECK(r.remainder_degree == 0);

    r = rational_roots(UniPolyQ({rat(-2), rat(0), rat(1)}));  // X^2 - 2
    CHECK(r.roots.empty());
    CHECK(r.remainder_degree == 2);

    r = rational_roots(UniPolyQ({rat(0), rat(0), rat(-1), rat(1)}));  // X^3 - X^2
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0] == std::pair<Rat, int>(rat(0), 2));
    CHECK(r.roots[1] == std::pair<Rat, int>(rat(1), 1));
    CHECK(r.remainder_degree == 0);

    r = rational_roots(UniPolyQ({rat(-2), rat(1), rat(6)}));  // (2X+... ) roots -2/3, 1/2
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0] == std::pair<Rat, int>(rat(-2, 3), 1));
    CHECK(r.roots[1] == std::pair<Rat, int>(rat(1, 2), 1));

    CHECK_THROWS_AS(rational_roots(UniPolyQ::zero()), std::invalid_argument);
}

TEST_CASE("roots returned by rational_roots evaluate to exactly zero") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        UniPolyQ p = UniPolyQ::constant(1);
        int planted = 0;
        for (int i = 0; i < 1 + trial % 3; ++i) {
            const int root = d(rng);
            p = poly_mul(p, UniPolyQ({rat(-root), rat(1)}));
            ++planted;
        }
        if (trial % 2 == 0) p = poly_mul(p, UniPolyQ({rat(1), rat(1), rat(1)}));  // X^2+X+1
        RootReport r = rational_roots(p);
        int total = 0;
        for (const auto& [root, mult] : r.roots) {
            CHECK(is_zero(p.eval(root)));
            total += mult;
        }
        CHECK(total == planted);
        CHECK(r.remainder_degree == (trial % 2 == 0 ? 2 : 0));
    }
}

TEST_CASE("generalized eigenspaces on pinned operators") {
    MatrixQ j(2, 2);  // Jordan block at 0
    j.at(0, 1) = 1;
    CHECK(generalized_eigenspace(j, rat(0), 1).size() == 1);
    CHECK(generalized_eigenspace(j, rat(0), 2).size() == 2);

    CHECK(generalized_eigenspace(MatrixQ::identity(3), rat(1), 1).size() == 3);

    MatrixQ t(2, 2);
    t.at(0, 0) = 1;
    t.at(0, 1) = 1;
    t.at(1, 1) = 2;
    auto e = generalized_eigenspace(t, rat(2), 1);
    REQUIRE(e.size() == 1);
    CHECK(e[0] == (VecQ{Rat(1), Rat(1)}));

    CHECK_THROWS_AS(generalized_eigenspace(MatrixQ(2, 3), rat(0), 1), std::invalid_argument);
}

TEST_CASE("generalized eigenspaces are nested and reach full multiplicity") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + trial % 3;
        MatrixQ m(n, n);  // strictly upper triangular, so nilpotent
        std::uniform_int_distribution<int> d(-2, 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) m.at(i, j) = rat(d(rng));
        size_t prev = 0;
        for (int k = 1; k <= n; ++k) {
            auto basis = generalized_eigenspace(m, rat(0), k);
            CHECK(basis.size() >= prev);
            prev = basis.size();
        }
        CHECK(static_cast<int>(prev) == n);
    }
}

TEST_CASE("solver returns a particular solution or reports inconsistency") {
    MatrixQ m = from_rows({{1, 2}, {2, 4}});
    auto x = solve(m, VecQ{rat(3), rat(6)});
    REQUIRE(x.has_value());
    VecQ img = m.apply(*x);
    CHECK(img[0] == rat(3));
    CHECK(img[1] == rat(6));
    CHECK_FALSE(solve(m, VecQ{rat(3), rat(7)}).has_value());
}

TEST_SUITE_END();
