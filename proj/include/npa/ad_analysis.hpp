#ifndef NPA_AD_ANALYSIS_HPP
#define NPA_AD_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "npa/algebra.hpp"
#include "npa/gr.hpp"
#include "npa/tensor.hpp"

namespace npa {

// ---------------------------------------------------------------------------
// Truncated analysis of the inner derivation ad_z: the centralizer C(z), the
// nil kernels N_m = ker ad_z^m, the eigenvalue spaces D(z,l) and the chains
// F^k(z,l) = ker (ad_z - l)^{k+1}, all on degree slices. Membership in a
// reported basis is always a global certificate: the defining equation is
// verified exactly on the element.
// ---------------------------------------------------------------------------

struct AdQuery {
    Element z;
    int degree_bound = 6;   // N
    int iteration_cap = 8;  // M
};

struct EvWitness {
    Rat lambda;
    Element x;  // nonzero, with {z, x} = lambda x exactly
};

struct EvReport {
    std::vector<std::pair<Rat, int>> ev_found;  // ascending, algebraic multiplicity on U
    std::vector<EvWitness> witnesses;           // one per eigenvalue
    bool irrational_flag = false;
    int invariant_dim = 0;
};

struct AdReport {
    int N = 0;
    int M = 0;
    int invariant_dim = 0;
    std::vector<std::pair<Rat, int>> ev_found;
    bool irrational_flag = false;
    std::vector<Element> C_basis;
    std::map<Rat, std::vector<Element>> D_bases;
    // Per eigenvalue, the chain F^0 subset F^1 subset ...; entry k holds a
    // basis of F^k(z,l) = ker (ad_z - l)^{k+1} on the invariant slice.
    std::map<Rat, std::vector<std::vector<Element>>> Fk_bases;
    // Entry m-1 holds a basis of ker ad_z^m on P_{<=N}, m = 1, 2, ...
    std::vector<std::vector<Element>> Nm_bases;
    bool n_stabilized = false;
};

// Target bound of ad_z on P_{<=N}: N plus the degree gained per bracket.
int ad_target_bound(const Element& z, int N);

// Matrix of w -> {z, w} from P_{<=N} to P_{<= ad_target_bound(z, N)} in the
// deg-lex bases; column j is coords of {z, basis_j}.
MatrixQ ad_matrix(const Element& z, int N);

// Largest ad_z-invariant subspace U of P_{<=N}: the limit of U_0 = P_{<=N},
// U_{k+1} = {x in U_k : ad_z(x) in U_k}. When degree(z) <= degree drop the
// whole slice is invariant.
std::vector<Element> invariant_slice(const Element& z, int N);

// Rational eigenvalues of ad_z on the invariant slice, each certified by an
// exact eigenvector; the irrational flag reports a nonlinear remainder in the
// characteristic polynomial. Completeness is only up to the slice.
EvReport ev_discover(const Element& z, int N);

AdReport subspace_bases(const Element& z, int N, int M);

// Degrees of ad_z^m(x) for m = 0..M; a kNegInfDegree tail proves x in N(z).
std::vector<int> orbit_profile(const Element& z, const Element& x, int M);

// ---------------------------------------------------------------------------
// Classification into the eight types.
// ---------------------------------------------------------------------------

enum class Omega {
    Omega0,   // central
    Omega0w,  // C = F proper in P
    Omega1,   // strictly nilpotent
    Omega1w,  // weakly nilpotent
    Omega2,   // strictly semisimple
    Omega2w,  // weakly semisimple
    Omega3,   // strictly Jordan
    Omega3w,  // weakly Jordan
    Undetermined,
};

std::string omega_name(Omega o);        // "Omega1", "Omega1'", ...
std::string omega_display(Omega o);     // UTF-8 rendering

enum class Grade { Proven, ConsistentUpToBound };

struct RelationStatus {
    enum class Kind { ProvenEqualOnSlice, ProvenProper, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Element> witness;  // certifies ProvenProper
    int bound_N = 0;
    int bound_M = 0;
};

struct EvStatus {
    bool nonzero_found = false;
    std::optional<EvWitness> witness;
    bool proven_only_zero = false;  // follows from a proven N(z) = P
};

struct TypeVerdict {
    EvStatus ev_status;
    RelationStatus rel_CN;  // C(z) vs N(z)
    RelationStatus rel_NF;  // N(z) vs F(z)
    RelationStatus rel_DF;  // D(z) vs F(z)
    RelationStatus rel_FP;  // F(z) vs P
    Omega label = Omega::Undetermined;
    Grade grade = Grade::ConsistentUpToBound;

    // Structural certificates behind a Proven grade.
    bool central_proven = false;
    bool n_equals_p_proven = false;  // every generator is killed by a power of ad_z
    bool d_equals_p_proven = false;  // every generator splits into exact eigenvectors
    bool f_equals_p_proven = false;  // degree(z) <= degree drop, or one of the above

    // Shape of the classified element, consumed by the composite rules.
    bool is_constant = false;
    bool is_zero_element = false;

    std::vector<std::string> warnings;
    int bound_N = 0;
    int bound_M = 0;
};

// Assembles the relation statuses at bounds (N, M) and labels z. Strictness
// F(z) = P is proven only through the structural routes; slice equalities
// elsewhere grade the verdict ConsistentUpToBound.
TypeVerdict classify(const Element& z, int N, int M);

// Queries are self-contained values; independent queries may run in
// parallel, all state is immutable.
inline AdReport subspace_bases(const AdQuery& q) {
    return subspace_bases(q.z, q.degree_bound, q.iteration_cap);
}
inline TypeVerdict classify(const AdQuery& q) {
    return classify(q.z, q.degree_bound, q.iteration_cap);
}

// Rule-table classification of z1 (x) z2 (theta) and z1 (x) 1 + 1 (x) z2
// (gamma) from proven factor verdicts. The theta rules additionally need the
// graded-commutativity certificates of both factors. Throws std::domain_error
// when a needed hypothesis is not proven.
enum class CompositeKind { Theta, Gamma };
TypeVerdict classify_composite(CompositeKind kind, const TypeVerdict& v1, const TypeVerdict& v2,
                               bool gr_comm_left, bool gr_comm_right);

// Solves {z, w} = 1 for w on the slice; a returned witness is exact.
std::optional<Element> partner_probe(const Element& z, int N);

// Slice-level verification of the tensor structure theorems.
enum class TensorCheckKind { ThetaF, GammaF, GammaLambda };

struct TensorCheckReport {
    bool pass = false;
    int lhs_dim = 0;
    int rhs_dim = 0;
    std::string detail;
};

TensorCheckReport tensor_theorem_check(TensorCheckKind kind, const TensorAlgebraSpec& t,
                                       const Element& z1, const Element& z2, int N,
                                       const std::optional<Rat>& lambda = std::nullopt);

}  // namespace npa

#endif
