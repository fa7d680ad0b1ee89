#ifndef NPA_ALGEBRA_HPP
#define NPA_ALGEBRA_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "npa/matrix.hpp"
#include "npa/rational.hpp"

namespace npa {

// Class 1: commutative polynomial algebra with a separate Poisson bracket
// given on generators. Class 2: Weyl algebra, bracket is the commutator.
enum class AlgebraClass { Poly, Weyl };

constexpr int kNegInfDegree = std::numeric_limits<int>::min();
constexpr int kInfiniteDrop = std::numeric_limits<int>::max();

// Exponent vector over the 2n generators, first block (p resp. x), second
// block (q resp. y).
struct Mono {
    std::vector<uint32_t> e;

    int degree() const {
        int d = 0;
        for (uint32_t v : e) d += static_cast<int>(v);
        return d;
    }

    // Basis listing order: ascending total degree; within a degree the
    // monomial with the larger exponent on the earliest generator comes
    // first (so p-heavy monomials lead).
    bool operator<(const Mono& o) const {
        const int da = degree(), db = o.degree();
        if (da != db) return da < db;
        return e > o.e;
    }
    bool operator==(const Mono& o) const { return e == o.e; }
};

class AlgebraSpec;
using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

class Element {
public:
    Element() = default;
    explicit Element(AlgebraPtr alg) : alg_(std::move(alg)) {}

    static Element zero(AlgebraPtr alg) { return Element(std::move(alg)); }
    static Element constant(AlgebraPtr alg, const Rat& c);
    static Element generator(AlgebraPtr alg, int gen_idx);
    static Element monomial(AlgebraPtr alg, Mono m, const Rat& coeff = Rat(1));

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<Mono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Total degree of the support; kNegInfDegree for the zero element.
    int degree() const;
    bool is_constant() const { return degree() <= 0; }
    Rat constant_part() const;

    // Homogeneous component of the given total degree.
    Element homogeneous_part(int deg) const;

    Element operator-() const;
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element scaled(const Rat& c) const;
    Element pow(int k) const;

    bool operator==(const Element& o) const { return terms_ == o.terms_; }
    bool operator!=(const Element& o) const { return !(*this == o); }

    // Grammar-compatible rendering ("p^2*q + 3*q^2", "-1/2*p + 1", "0").
    std::string str() const;

    void add_term(const Mono& m, const Rat& c);  // accumulate, drop zeros

private:
    AlgebraPtr alg_;
    std::map<Mono, Rat> terms_;
};

// A generator-pair bracket value used to describe Class 1 algebras:
// {g_i, g_j} = value for i < j, as plain monomial data.
struct BracketRule {
    int gi = 0;
    int gj = 0;
    std::vector<std::pair<Mono, Rat>> value;
};

class AlgebraSpec : public std::enable_shared_from_this<AlgebraSpec> {
public:
    // Weyl algebra A_n: generators p_1..p_n, q_1..q_n with [q_i, p_i] = 1.
    static AlgebraPtr weyl(int n_pairs);
    // Polynomial algebra K[x_1..x_n, y_1..y_n] with {x_i, y_i} = 1.
    static AlgebraPtr symplectic_poly(int n_pairs);
    // Class 1 with an explicit bracket table. Antisymmetry is implied by the
    // i < j storage; the Jacobi identity is verified on all generator
    // triples, and each entry must have degree at most 2 so that the total
    // degree remains a degree map.
    static AlgebraPtr poly_with_table(int n_pairs, const std::vector<BracketRule>& rules);

    AlgebraClass algebra_class() const { return class_; }
    int n_pairs() const { return n_pairs_; }
    int n_gens() const { return 2 * n_pairs_; }

    // Bracket degree drop: deg {a,b} <= deg a + deg b - degree_drop, derived
    // from the generator table (kInfiniteDrop when all brackets vanish).
    int degree_drop() const { return degree_drop_; }

    // {g_i, g_j} for any i, j (signed lookup; zero off the table).
    Element table_bracket(int gi, int gj) const;

    // Raw Class 1 table, keyed (i, j) with i < j.
    const std::map<std::pair<int, int>, Element>& table() const { return table_; }

    std::string gen_name(int gen_idx) const;
    // Generator index from surface name, e.g. ('p', 2) -> 1 for A_n.
    // Returns -1 when the letter/index does not belong to this algebra.
    int gen_index(char letter, int one_based_index) const;

    bool same_as(const AlgebraSpec& o) const;
    std::string describe() const;

private:
    AlgebraSpec() = default;
    void finalize();  // degree drop + Jacobi validation

    AlgebraClass class_ = AlgebraClass::Weyl;
    int n_pairs_ = 1;
    int degree_drop_ = 2;
    // Sparse table for Class 1, keyed (i, j) with i < j.
    std::map<std::pair<int, int>, Element> table_;
};

bool same_algebra(const Element& a, const Element& b);

Element mul(const Element& a, const Element& b);
Element bracket(const Element& a, const Element& b);
Element ad_power(const Element& z, const Element& x, int m);

// Partial derivative with respect to one generator (commutative normal form).
Element derivative(const Element& x, int gen_idx);

struct FilteredBasis {
    AlgebraPtr algebra;
    int degree_bound = 0;
    std::vector<Mono> monomials;
    std::map<Mono, int> index;

    int dim() const { return static_cast<int>(monomials.size()); }
    int index_of(const Mono& m) const;
};

FilteredBasis filtered_basis(const AlgebraPtr& alg, int degree_bound);

// Exact coordinates of x in the basis order; throws when degree(x) exceeds
// the slice bound.
VecQ coords(const Element& x, const FilteredBasis& b);
Element from_coords(const FilteredBasis& b, const VecQ& v);

// Applies the algebra map determined by generator images; the images must
// satisfy the source algebra's generator relations exactly, otherwise a
// std::domain_error is thrown.
Element hom_apply(const std::vector<Element>& images, const Element& x);

// Generator substitution without the homomorphism check (normal-form word
// order: first block ascending, then second block ascending).
Element substitute(const std::vector<Element>& images, const Element& x);

}  // namespace npa

#endif
