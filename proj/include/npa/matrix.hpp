#ifndef NPA_MATRIX_HPP
#define NPA_MATRIX_HPP

#include <map>
#include <optional>
#include <vector>

#include "npa/rational.hpp"
#include "npa/unipoly.hpp"

namespace npa {

using VecQ = std::vector<Rat>;

// Dense exact-rational matrix. Assembly of operator matrices is sparse in
// practice, so the heavy routines (products, characteristic polynomial) walk
// nonzero entries only.
class MatrixQ {
public:
    MatrixQ() = default;
    MatrixQ(int rows, int cols);
    static MatrixQ identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    MatrixQ operator*(const MatrixQ& o) const;
    MatrixQ operator+(const MatrixQ& o) const;
    MatrixQ operator-(const MatrixQ& o) const;

    // this - lambda * I (square only).
    MatrixQ shifted(const Rat& lambda) const;
    MatrixQ pow(int k) const;

    VecQ apply(const VecQ& v) const;
    Rat trace() const;
    bool is_square() const { return rows_ == cols_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> a_;
};

// Basis of the null space {v : m v = 0}. Fraction-free (Bareiss) forward
// elimination with exact back-substitution; pivots are the first nonzero in
// ascending column order, so the output is deterministic. Each basis vector
// is scaled to coprime integer entries with positive leading coordinate.
std::vector<VecQ> kernel_basis(const MatrixQ& m);

int rank(const MatrixQ& m);

// One particular solution of A x = b with all free variables set to zero,
// or nullopt when the system is inconsistent.
std::optional<VecQ> solve(const MatrixQ& a, const VecQ& b);

// Characteristic polynomial (monic, degree n) via the Faddeev-LeVerrier
// recurrence: exact, and all intermediate values stay integral for integer
// input. Throws std::invalid_argument for non-square input.
UniPolyQ char_poly(const MatrixQ& m);

// Basis of ker (m - lambda I)^k, k >= 1. Square input only.
std::vector<VecQ> generalized_eigenspace(const MatrixQ& m, const Rat& lambda, int k);

// Repeated exact solves against a fixed coefficient matrix.
class LinSolver {
public:
    explicit LinSolver(const MatrixQ& a);
    std::optional<VecQ> solve(const VecQ& b) const;
    int rank() const { return rank_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    int rank_ = 0;
    std::vector<VecQ> ops_;       // row operations of the RREF applied to I
    std::vector<int> pivot_col_;  // pivot column of each reduced row
};

// Incremental echelon form over sparse coordinate vectors; used for span
// dimensions and membership at desk scale.
class SpanBuilder {
public:
    explicit SpanBuilder(int ambient_dim) : ambient_(ambient_dim) {}

    bool insert(const VecQ& v);                    // true if the span grew
    bool insert_sparse(std::map<int, Rat> v);      // same, sparse input
    bool contains(const VecQ& v) const;
    int dim() const { return static_cast<int>(rows_.size()); }
    int ambient() const { return ambient_; }

private:
    std::map<int, Rat> reduce(std::map<int, Rat> v) const;

    int ambient_ = 0;
    std::map<int, std::map<int, Rat>> rows_;  // leading index -> row, leading coeff 1
};

int rank_of(const std::vector<VecQ>& vectors, int ambient_dim);
bool member_of_span(const VecQ& v, const std::vector<VecQ>& basis, int ambient_dim);
bool same_span(const std::vector<VecQ>& a, const std::vector<VecQ>& b, int ambient_dim);

}  // namespace npa

#endif
