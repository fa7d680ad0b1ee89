#include "npa/matrix.hpp"

#include <numeric>
#include <stdexcept>

namespace npa {

MatrixQ::MatrixQ(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    a_.assign(static_cast<size_t>(rows) * cols, Rat(0));
}

MatrixQ MatrixQ::identity(int n) {
    MatrixQ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatrixQ MatrixQ::operator*(const MatrixQ& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    MatrixQ out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int l = 0; l < cols_; ++l) {
            const Rat& v = at(i, l);
            if (is_zero(v)) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Rat& w = o.at(l, j);
                if (!is_zero(w)) out.at(i, j) += v * w;
            }
        }
    }
    return out;
}

MatrixQ MatrixQ::operator+(const MatrixQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    MatrixQ out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
    return out;
}

MatrixQ MatrixQ::operator-(const MatrixQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
    MatrixQ out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
}

MatrixQ MatrixQ::shifted(const Rat& lambda) const {
    if (!is_square()) throw std::invalid_argument("shift requires a square matrix");
    MatrixQ out = *this;
    for (int i = 0; i < rows_; ++i) out.at(i, i) -= lambda;
    return out;
}

MatrixQ MatrixQ::pow(int k) const {
    if (!is_square()) throw std::invalid_argument("power requires a square matrix");
    if (k < 0) throw std::invalid_argument("negative matrix power");
    MatrixQ acc = identity(rows_);
    MatrixQ base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

VecQ MatrixQ::apply(const VecQ& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    VecQ out(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const Rat& w = at(i, j);
            if (!is_zero(w) && !is_zero(v[j])) out[i] += w * v[j];
        }
    return out;
}

Rat MatrixQ::trace() const {
    if (!is_square()) throw std::invalid_argument("trace requires a square matrix");
    Rat t = 0;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

namespace {

// Integer row-echelon data produced by fraction-free elimination.
struct Echelon {
    std::vector<std::vector<Int>> rows;  // echelon rows, integer entries
    std::vector<int> pivot_cols;         // ascending
};

// Scales every row to integers (clearing denominators does not change the row
// space) and runs Bareiss elimination with first-nonzero pivoting.
Echelon echelon_form(const MatrixQ& m) {
    const int nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Int>> a(nr, std::vector<Int>(nc));
    for (int i = 0; i < nr; ++i) {
        Int l = 1;
        for (int j = 0; j < nc; ++j) l = lcm(l, m.at(i, j).get_den());
        for (int j = 0; j < nc; ++j) {
            Rat v = m.at(i, j) * Rat(l);
            a[i][j] = v.get_num();
        }
    }

    Echelon e;
    Int prev = 1;
    int top = 0;
    for (int c = 0; c < nc && top < nr; ++c) {
        int piv = -1;
        for (int r = top; r < nr; ++r)
            if (sgn(a[r][c]) != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[top], a[piv]);
        for (int r = top + 1; r < nr; ++r) {
            for (int j = c + 1; j < nc; ++j)
                a[r][j] = (a[r][j] * a[top][c] - a[r][c] * a[top][j]) / prev;
            a[r][c] = 0;
        }
        prev = a[top][c];
        e.pivot_cols.push_back(c);
        ++top;
    }
    a.resize(top);
    e.rows = std::move(a);
    return e;
}

void normalize_primitive(VecQ& v) {
    Int l = 1;
    for (const Rat& x : v) l = lcm(l, x.get_den());
    Int g = 0;
    std::vector<Int> num(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(l);
        num[i] = s.get_num();
        g = gcd(g, num[i]);
    }
    if (sgn(g) == 0) return;
    int lead_sign = 0;
    for (const Int& x : num)
        if (sgn(x) != 0) { lead_sign = sgn(x); break; }
    if (lead_sign < 0) g = -g;
    for (size_t i = 0; i < v.size(); ++i) v[i] = rat(num[i], g);
}

}  // namespace

std::vector<VecQ> kernel_basis(const MatrixQ& m) {
    const int nc = m.cols();
    Echelon e = echelon_form(m);
    std::vector<bool> is_pivot(nc, false);
    for (int c : e.pivot_cols) is_pivot[c] = true;

    std::vector<VecQ> basis;
    for (int f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        VecQ v(nc, Rat(0));
        v[f] = 1;
        for (int r = static_cast<int>(e.pivot_cols.size()) - 1; r >= 0; --r) {
            const int pc = e.pivot_cols[r];
            Rat s = 0;
            for (int j = pc + 1; j < nc; ++j)
                if (sgn(e.rows[r][j]) != 0 && !is_zero(v[j])) s += Rat(e.rows[r][j]) * v[j];
            v[pc] = -s / Rat(e.rows[r][pc]);
        }
        normalize_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank(const MatrixQ& m) { return static_cast<int>(echelon_form(m).pivot_cols.size()); }

std::optional<VecQ> solve(const MatrixQ& a, const VecQ& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve: rhs dimension mismatch");
    MatrixQ aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    Echelon e = echelon_form(aug);
    for (int c : e.pivot_cols)
        if (c == a.cols()) return std::nullopt;

    VecQ x(a.cols(), Rat(0));
    for (int r = static_cast<int>(e.pivot_cols.size()) - 1; r >= 0; --r) {
        const int pc = e.pivot_cols[r];
        Rat s = Rat(e.rows[r][a.cols()]);
        for (int j = pc + 1; j < a.cols(); ++j)
            if (sgn(e.rows[r][j]) != 0 && !is_zero(x[j])) s -= Rat(e.rows[r][j]) * x[j];
        x[pc] = s / Rat(e.rows[r][pc]);
    }
    return x;
}

UniPolyQ char_poly(const MatrixQ& m) {
    if (!m.is_square()) throw std::invalid_argument("char_poly requires a square matrix");
    const int n = m.rows();
    if (n == 0) return UniPolyQ::constant(1);

    // Column-sparse view of m for the repeated products.
    std::vector<std::vector<std::pair<int, Rat>>> col(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (!is_zero(m.at(i, j))) col[j].emplace_back(i, m.at(i, j));

    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;  // X^n
    MatrixQ mk = m;
    c[n - 1] = -mk.trace();
    for (int k = 2; k <= n; ++k) {
        MatrixQ tmp = mk;
        for (int i = 0; i < n; ++i) tmp.at(i, i) += c[n - k + 1];
        MatrixQ next(n, n);
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const Rat& w = tmp.at(l, j);
                if (is_zero(w)) continue;
                for (const auto& [i, v] : col[l]) next.at(i, j) += v * w;
            }
        mk = std::move(next);
        c[n - k] = -mk.trace() / Rat(k);
    }
    return UniPolyQ(std::move(c));
}

std::vector<VecQ> generalized_eigenspace(const MatrixQ& m, const Rat& lambda, int k) {
    if (!m.is_square()) throw std::invalid_argument("generalized eigenspace requires a square matrix");
    if (k < 1) throw std::invalid_argument("generalized eigenspace requires k >= 1");
    return kernel_basis(m.shifted(lambda).pow(k));
}

LinSolver::LinSolver(const MatrixQ& a) : rows_(a.rows()), cols_(a.cols()) {
    std::vector<VecQ> rows(rows_, VecQ(cols_, Rat(0)));
    std::vector<VecQ> ops(rows_, VecQ(rows_, Rat(0)));
    for (int i = 0; i < rows_; ++i) {
        ops[i][i] = 1;
        for (int j = 0; j < cols_; ++j) rows[i][j] = a.at(i, j);
    }
    int top = 0;
    for (int c = 0; c < cols_ && top < rows_; ++c) {
        int piv = -1;
        for (int r = top; r < rows_; ++r)
            if (!is_zero(rows[r][c])) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[top], rows[piv]);
        std::swap(ops[top], ops[piv]);
        Rat inv = Rat(1) / rows[top][c];
        for (int j = 0; j < cols_; ++j) rows[top][j] *= inv;
        for (int j = 0; j < rows_; ++j) ops[top][j] *= inv;
        for (int r = 0; r < rows_; ++r) {
            if (r == top || is_zero(rows[r][c])) continue;
            Rat f = rows[r][c];
            for (int j = 0; j < cols_; ++j) rows[r][j] -= f * rows[top][j];
            for (int j = 0; j < rows_; ++j) ops[r][j] -= f * ops[top][j];
        }
        pivot_col_.push_back(c);
        ++top;
    }
    rank_ = top;
    ops_ = std::move(ops);
}

std::optional<VecQ> LinSolver::solve(const VecQ& b) const {
    if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("LinSolver: rhs dimension mismatch");
    VecQ t(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < rows_; ++j)
            if (!is_zero(ops_[i][j]) && !is_zero(b[j])) t[i] += ops_[i][j] * b[j];
    for (int i = rank_; i < rows_; ++i)
        if (!is_zero(t[i])) return std::nullopt;
    // Rows are fully reduced, so with free variables at zero each pivot
    // variable reads off directly.
    VecQ x(cols_, Rat(0));
    for (int r = 0; r < rank_; ++r) x[pivot_col_[r]] = t[r];
    return x;
}

bool SpanBuilder::insert(const VecQ& v) {
    std::map<int, Rat> s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) s[static_cast<int>(i)] = v[i];
    return insert_sparse(std::move(s));
}

std::map<int, Rat> SpanBuilder::reduce(std::map<int, Rat> v) const {
    while (!v.empty()) {
        auto lead = v.begin();
        auto row = rows_.find(lead->first);
        if (row == rows_.end()) break;
        Rat f = lead->second;
        for (const auto& [idx, val] : row->second) {
            auto it = v.find(idx);
            if (it == v.end()) {
                v[idx] = -f * val;
            } else {
                it->second -= f * val;
                if (is_zero(it->second)) v.erase(it);
            }
        }
    }
    return v;
}

bool SpanBuilder::insert_sparse(std::map<int, Rat> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    Rat inv = Rat(1) / v.begin()->second;
    for (auto& [idx, val] : v) val *= inv;
    int lead = v.begin()->first;
    rows_.emplace(lead, std::move(v));
    return true;
}

bool SpanBuilder::contains(const VecQ& v) const {
    std::map<int, Rat> s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) s[static_cast<int>(i)] = v[i];
    return reduce(std::move(s)).empty();
}

int rank_of(const std::vector<VecQ>& vectors, int ambient_dim) {
    SpanBuilder sb(ambient_dim);
    for (const VecQ& v : vectors) sb.insert(v);
    return sb.dim();
}

bool member_of_span(const VecQ& v, const std::vector<VecQ>& basis, int ambient_dim) {
    SpanBuilder sb(ambient_dim);
    for (const VecQ& b : basis) sb.insert(b);
    return sb.contains(v);
}

bool same_span(const std::vector<VecQ>& a, const std::vector<VecQ>& b, int ambient_dim) {
    SpanBuilder sa(ambient_dim);
    for (const VecQ& v : a) sa.insert(v);
    SpanBuilder sbb(ambient_dim);
    for (const VecQ& v : b) sbb.insert(v);
    if (sa.dim() != sbb.dim()) return false;
    for (const VecQ& v : b)
        if (!sa.contains(v)) return false;
    return true;
}

}  // namespace npa
