#include "npa/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace npa {

Element Element::constant(AlgebraPtr alg, const Rat& c) {
    Element e(std::move(alg));
    if (!npa::is_zero(c)) e.terms_[Mono{std::vector<uint32_t>(e.alg_->n_gens(), 0)}] = c;
    return e;
}

Element Element::generator(AlgebraPtr alg, int gen_idx) {
    if (gen_idx < 0 || gen_idx >= alg->n_gens()) throw std::invalid_argument("generator index out of range");
    Mono m{std::vector<uint32_t>(alg->n_gens(), 0)};
    m.e[gen_idx] = 1;
    return monomial(std::move(alg), std::move(m));
}

Element Element::monomial(AlgebraPtr alg, Mono m, const Rat& coeff) {
    if (static_cast<int>(m.e.size()) != alg->n_gens()) throw std::invalid_argument("monomial arity mismatch");
    Element e(std::move(alg));
    if (!npa::is_zero(coeff)) e.terms_[std::move(m)] = coeff;
    return e;
}

int Element::degree() const {
    if (terms_.empty()) return kNegInfDegree;
    return terms_.rbegin()->first.degree();
}

Rat Element::constant_part() const {
    if (terms_.empty()) return Rat(0);
    const auto& [m, c] = *terms_.begin();
    return m.degree() == 0 ? c : Rat(0);
}

Element Element::homogeneous_part(int deg) const {
    Element out(alg_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == deg) out.terms_[m] = c;
    return out;
}

void Element::add_term(const Mono& m, const Rat& c) {
    if (npa::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (npa::is_zero(it->second)) terms_.erase(it);
    }
}

Element Element::operator-() const {
    Element out(alg_);
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

Element Element::operator+(const Element& o) const {
    if (!same_algebra(*this, o)) throw std::domain_error("element sum across different algebras");
    Element out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator*(const Element& o) const { return mul(*this, o); }

Element Element::scaled(const Rat& c) const {
    Element out(alg_);
    if (npa::is_zero(c)) return out;
    for (const auto& [m, v] : terms_) out.terms_[m] = v * c;
    return out;
}

Element Element::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative element power");
    Element acc = Element::constant(alg_, 1);
    for (int i = 0; i < k; ++i) acc = mul(acc, *this);
    return acc;
}

std::string Element::str() const {
    if (terms_.empty()) return "0";
    // Highest degree first; within a degree keep the basis listing order.
    std::vector<std::pair<Mono, Rat>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return b.first.degree() < a.first.degree(); });
    std::string out;
    for (auto it = ordered.begin(); it != ordered.end(); ++it) {
        const Mono& m = it->first;
        const Rat& c = it->second;
        if (out.empty()) {
            if (sgn(c) < 0) out += "-";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        Rat mag = abs(c);
        std::string monostr;
        for (size_t g = 0; g < m.e.size(); ++g) {
            if (m.e[g] == 0) continue;
            if (!monostr.empty()) monostr += "*";
            monostr += alg_->gen_name(static_cast<int>(g));
            if (m.e[g] > 1) monostr += "^" + std::to_string(m.e[g]);
        }
        if (monostr.empty()) {
            out += rat_str(mag);
        } else {
            if (mag != 1) out += rat_str(mag) + "*";
            out += monostr;
        }
    }
    return out;
}

bool same_algebra(const Element& a, const Element& b) {
    if (a.algebra() == b.algebra()) return true;
    if (!a.algebra() || !b.algebra()) return false;
    return a.algebra()->same_as(*b.algebra());
}

namespace {

// q^s p^r = sum_k k! C(s,k) C(r,k) p^{r-k} q^{s-k}, independently per pair.
void weyl_mono_mul(Element& acc, const Mono& ma, const Mono& mb, const Rat& coeff, int n_pairs) {
    std::vector<int> active;  // pairs needing reordering
    for (int i = 0; i < n_pairs; ++i) {
        const uint32_t s = ma.e[n_pairs + i], r = mb.e[i];
        if (s > 0 && r > 0) active.push_back(i);
    }
    Mono base{std::vector<uint32_t>(2 * n_pairs, 0)};
    for (int i = 0; i < 2 * n_pairs; ++i) base.e[i] = ma.e[i] + mb.e[i];
    if (active.empty()) {
        acc.add_term(base, coeff);
        return;
    }

    std::vector<uint32_t> k(active.size(), 0);
    while (true) {
        Int factor = 1;
        for (size_t t = 0; t < active.size(); ++t) {
            const int i = active[t];
            const uint32_t s = ma.e[n_pairs + i], r = mb.e[i];
            factor *= factorial(k[t]) * binomial(s, k[t]) * binomial(r, k[t]);
        }
        Mono m = base;
        for (size_t t = 0; t < active.size(); ++t) {
            const int i = active[t];
            m.e[i] -= k[t];
            m.e[n_pairs + i] -= k[t];
        }
        acc.add_term(m, coeff * Rat(factor));

        size_t pos = 0;
        while (pos < active.size()) {
            const int i = active[pos];
            const uint32_t cap = std::min(ma.e[n_pairs + i], mb.e[i]);
            if (k[pos] < cap) {
                ++k[pos];
                break;
            }
            k[pos] = 0;
            ++pos;
        }
        if (pos == active.size()) break;
    }
}

}  // namespace

Element mul(const Element& a, const Element& b) {
    if (!same_algebra(a, b)) throw std::domain_error("product across different algebras");
    const AlgebraPtr& alg = a.algebra();
    Element out(alg);
    if (a.is_zero() || b.is_zero()) return out;
    const int n = alg->n_pairs();
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (alg->algebra_class() == AlgebraClass::Poly) {
                Mono m{std::vector<uint32_t>(2 * n, 0)};
                for (int i = 0; i < 2 * n; ++i) m.e[i] = ma.e[i] + mb.e[i];
                out.add_term(m, ca * cb);
            } else {
                weyl_mono_mul(out, ma, mb, ca * cb, n);
            }
        }
    }
    return out;
}

Element derivative(const Element& x, int gen_idx) {
    Element out(x.algebra());
    for (const auto& [m, c] : x.terms()) {
        if (m.e[gen_idx] == 0) continue;
        Mono d = m;
        d.e[gen_idx] -= 1;
        out.add_term(d, c * Rat(static_cast<long>(m.e[gen_idx])));
    }
    return out;
}

Element bracket(const Element& a, const Element& b) {
    if (!same_algebra(a, b)) throw std::domain_error("bracket across different algebras");
    const AlgebraPtr& alg = a.algebra();
    if (alg->algebra_class() == AlgebraClass::Weyl) return mul(a, b) - mul(b, a);

    // Class 1 biderivation: {a,b} = sum_{i<j} (da/dg_i db/dg_j - da/dg_j db/dg_i) {g_i,g_j}.
    Element out(alg);
    for (int i = 0; i < alg->n_gens(); ++i) {
        for (int j = i + 1; j < alg->n_gens(); ++j) {
            Element t = alg->table_bracket(i, j);
            if (t.is_zero()) continue;
            Element s = mul(derivative(a, i), derivative(b, j)) - mul(derivative(a, j), derivative(b, i));
            if (!s.is_zero()) out = out + mul(s, t);
        }
    }
    return out;
}

Element ad_power(const Element& z, const Element& x, int m) {
    if (m < 0) throw std::invalid_argument("negative iteration count");
    Element cur = x;
    for (int i = 0; i < m; ++i) cur = bracket(z, cur);
    return cur;
}

AlgebraPtr AlgebraSpec::weyl(int n_pairs) {
    if (n_pairs < 1) throw std::invalid_argument("algebra needs at least one generator pair");
    auto spec = std::shared_ptr<AlgebraSpec>(new AlgebraSpec());
    spec->class_ = AlgebraClass::Weyl;
    spec->n_pairs_ = n_pairs;
    spec->finalize();
    return spec;
}

AlgebraPtr AlgebraSpec::symplectic_poly(int n_pairs) {
    std::vector<BracketRule> rules;
    for (int i = 0; i < n_pairs; ++i) {
        BracketRule r;
        r.gi = i;
        r.gj = n_pairs + i;
        r.value.push_back({Mono{std::vector<uint32_t>(2 * n_pairs, 0)}, Rat(1)});
        rules.push_back(std::move(r));
    }
    return poly_with_table(n_pairs, rules);
}

AlgebraPtr AlgebraSpec::poly_with_table(int n_pairs, const std::vector<BracketRule>& rules) {
    if (n_pairs < 1) throw std::invalid_argument("algebra needs at least one generator pair");
    auto spec = std::shared_ptr<AlgebraSpec>(new AlgebraSpec());
    spec->class_ = AlgebraClass::Poly;
    spec->n_pairs_ = n_pairs;
    for (const BracketRule& r : rules) {
        if (r.gi < 0 || r.gj < 0 || r.gi >= 2 * n_pairs || r.gj >= 2 * n_pairs || r.gi >= r.gj)
            throw std::invalid_argument("bracket table entry must have 0 <= i < j < 2n");
        Element v(spec);
        for (const auto& [m, c] : r.value) v.add_term(m, c);
        if (v.is_zero()) continue;
        if (v.degree() > 2)
            throw std::invalid_argument("bracket table entry of degree > 2 breaks the degree map");
        spec->table_[{r.gi, r.gj}] = std::move(v);
    }
    spec->finalize();
    return spec;
}

void AlgebraSpec::finalize() {
    // Degree drop from the generator table.
    if (class_ == AlgebraClass::Weyl) {
        degree_drop_ = 2;  // [q_i, p_i] = 1 drops two, other pairs commute
    } else {
        degree_drop_ = kInfiniteDrop;
        for (const auto& [key, v] : table_)
            degree_drop_ = std::min(degree_drop_, 2 - v.degree());
    }

    // Jacobi on all generator triples (Class 1 tables only; the Weyl
    // commutator satisfies it identically).
    if (class_ == AlgebraClass::Poly && !table_.empty()) {
        auto self = shared_from_this();
        const int g = n_gens();
        for (int a = 0; a < g; ++a)
            for (int b = a + 1; b < g; ++b)
                for (int c = b + 1; c < g; ++c) {
                    Element ea = Element::generator(self, a);
                    Element eb = Element::generator(self, b);
                    Element ec = Element::generator(self, c);
                    Element j = bracket(ea, bracket(eb, ec)) + bracket(eb, bracket(ec, ea)) +
                                bracket(ec, bracket(ea, eb));
                    if (!j.is_zero())
                        throw std::invalid_argument("bracket table violates the Jacobi identity on (" +
                                                    gen_name(a) + "," + gen_name(b) + "," + gen_name(c) + ")");
                }
    }
}

Element AlgebraSpec::table_bracket(int gi, int gj) const {
    auto self = shared_from_this();
    if (class_ == AlgebraClass::Weyl) {
        Element e(self);
        if (gi == gj) return e;
        // [q_i, p_i] = 1: bracket(q_i, p_i) = 1, bracket(p_i, q_i) = -1.
        if (gi >= n_pairs_ && gi - n_pairs_ == gj) return Element::constant(self, 1);
        if (gj >= n_pairs_ && gj - n_pairs_ == gi) return Element::constant(self, -1);
        return e;
    }
    if (gi == gj) return Element(self);
    const bool flip = gi > gj;
    auto it = table_.find(flip ? std::make_pair(gj, gi) : std::make_pair(gi, gj));
    if (it == table_.end()) return Element(self);
    return flip ? -it->second : it->second;
}

std::string AlgebraSpec::gen_name(int gen_idx) const {
    const bool second_block = gen_idx >= n_pairs_;
    const int pair = second_block ? gen_idx - n_pairs_ : gen_idx;
    char letter;
    if (class_ == AlgebraClass::Weyl)
        letter = second_block ? 'q' : 'p';
    else
        letter = second_block ? 'y' : 'x';
    if (n_pairs_ == 1) return std::string(1, letter);
    return std::string(1, letter) + std::to_string(pair + 1);
}

int AlgebraSpec::gen_index(char letter, int one_based_index) const {
    if (one_based_index < 1 || one_based_index > n_pairs_) return -1;
    if (class_ == AlgebraClass::Weyl) {
        if (letter == 'p') return one_based_index - 1;
        if (letter == 'q') return n_pairs_ + one_based_index - 1;
        return -1;
    }
    if (letter == 'x') return one_based_index - 1;
    if (letter == 'y') return n_pairs_ + one_based_index - 1;
    return -1;
}

bool AlgebraSpec::same_as(const AlgebraSpec& o) const {
    if (class_ != o.class_ || n_pairs_ != o.n_pairs_) return false;
    if (class_ == AlgebraClass::Weyl) return true;
    if (table_.size() != o.table_.size()) return false;
    auto it = table_.begin();
    auto jt = o.table_.begin();
    for (; it != table_.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (it->second.terms() != jt->second.terms()) return false;
    }
    return true;
}

std::string AlgebraSpec::describe() const {
    if (class_ == AlgebraClass::Weyl) return "weyl:" + std::to_string(n_pairs_);
    return "sympoly:" + std::to_string(n_pairs_);
}

int FilteredBasis::index_of(const Mono& m) const {
    auto it = index.find(m);
    if (it == index.end()) throw std::out_of_range("monomial outside the basis slice");
    return it->second;
}

namespace {

void enumerate_monos(int pos, int rest, Mono& cur, std::vector<Mono>& out) {
    if (pos == static_cast<int>(cur.e.size())) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= rest; ++v) {
        cur.e[pos] = static_cast<uint32_t>(v);
        enumerate_monos(pos + 1, rest - v, cur, out);
    }
    cur.e[pos] = 0;
}

}  // namespace

FilteredBasis filtered_basis(const AlgebraPtr& alg, int degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("negative degree bound");
    FilteredBasis b;
    b.algebra = alg;
    b.degree_bound = degree_bound;
    Mono cur{std::vector<uint32_t>(alg->n_gens(), 0)};
    enumerate_monos(0, degree_bound, cur, b.monomials);
    std::sort(b.monomials.begin(), b.monomials.end());
    for (size_t i = 0; i < b.monomials.size(); ++i) b.index[b.monomials[i]] = static_cast<int>(i);
    return b;
}

VecQ coords(const Element& x, const FilteredBasis& b) {
    if (!x.is_zero() && x.degree() > b.degree_bound)
        throw std::out_of_range("element degree exceeds the slice bound");
    VecQ v(b.dim(), Rat(0));
    for (const auto& [m, c] : x.terms()) v[b.index_of(m)] = c;
    return v;
}

Element from_coords(const FilteredBasis& b, const VecQ& v) {
    if (static_cast<int>(v.size()) != b.dim()) throw std::invalid_argument("coordinate arity mismatch");
    Element out(b.algebra);
    for (size_t i = 0; i < v.size(); ++i)
        if (!npa::is_zero(v[i])) out.add_term(b.monomials[i], v[i]);
    return out;
}

Element substitute(const std::vector<Element>& images, const Element& x) {
    const AlgebraPtr& src = x.algebra();
    if (static_cast<int>(images.size()) != src->n_gens())
        throw std::invalid_argument("one image per generator required");
    const AlgebraPtr& dst = images.front().algebra();
    for (const Element& im : images)
        if (!same_algebra(im, images.front())) throw std::domain_error("images live in different algebras");

    // Power cache per generator.
    std::vector<std::vector<Element>> powers(images.size());
    for (size_t g = 0; g < images.size(); ++g) powers[g].push_back(Element::constant(dst, 1));

    auto power_of = [&](size_t g, uint32_t e) -> const Element& {
        while (powers[g].size() <= e) powers[g].push_back(mul(powers[g].back(), images[g]));
        return powers[g][e];
    };

    Element out(dst);
    for (const auto& [m, c] : x.terms()) {
        Element term = Element::constant(dst, c);
        for (size_t g = 0; g < m.e.size(); ++g)
            if (m.e[g] > 0) term = mul(term, power_of(g, m.e[g]));
        out = out + term;
    }
    return out;
}

Element hom_apply(const std::vector<Element>& images, const Element& x) {
    const AlgebraPtr& src = x.algebra();
    if (static_cast<int>(images.size()) != src->n_gens())
        throw std::invalid_argument("one image per generator required");
    const int g = src->n_gens();
    for (int a = 0; a < g; ++a) {
        for (int b = a + 1; b < g; ++b) {
            Element want = substitute(images, src->table_bracket(a, b));
            Element got = bracket(images[a], images[b]);
            if (got != want)
                throw std::domain_error("generator images break the bracket relation {" +
                                        src->gen_name(a) + "," + src->gen_name(b) + "}");
            if (src->algebra_class() == AlgebraClass::Poly &&
                mul(images[a], images[b]) != mul(images[b], images[a]))
                throw std::domain_error("images of commuting generators fail to commute");
        }
    }
    return substitute(images, x);
}

}  // namespace npa
