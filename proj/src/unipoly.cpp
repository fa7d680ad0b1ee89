#include "npa/unipoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace npa {

UniPolyQ::UniPolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && npa::is_zero(c_.back())) c_.pop_back();
}

const Rat& UniPolyQ::coeff(int i) const {
    static const Rat zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

Rat UniPolyQ::eval(const Rat& x) const {
    Rat acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

UniPolyQ UniPolyQ::deflate_root(const Rat& r) const {
    if (is_zero() || degree() < 1) throw std::invalid_argument("deflation of a (near-)constant polynomial");
    std::vector<Rat> q(c_.size() - 1);
    Rat carry = c_.back();
    for (int i = degree() - 1; i >= 0; --i) {
        q[i] = carry;
        carry = c_[i] + carry * r;
    }
    if (!npa::is_zero(carry)) throw std::invalid_argument("deflation by a non-root");
    return UniPolyQ(std::move(q));
}

std::string UniPolyQ::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        if (npa::is_zero(c_[i])) continue;
        Rat a = c_[i];
        if (out.empty()) {
            if (sgn(a) < 0) out += "-";
        } else {
            out += sgn(a) < 0 ? " - " : " + ";
        }
        Rat mag = abs(a);
        if (i == 0 || mag != 1) out += rat_str(mag);
        if (i > 0) {
            if (mag != 1) out += "*";
            out += "X";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace {

constexpr unsigned long kTrialLimit = 100000;
constexpr size_t kCandidateCap = 200000;

void pollard_factor(const Int& n, std::map<Int, int>& out, gmp_randstate_t rng);

void record_factor(const Int& n, std::map<Int, int>& out, gmp_randstate_t rng) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out[n] += 1;
        return;
    }
    pollard_factor(n, out, rng);
}

// Pollard-Brent rho; n is composite and odd here.
void pollard_factor(const Int& n, std::map<Int, int>& out, gmp_randstate_t rng) {
    while (true) {
        Int c, x;
        mpz_urandomm(c.get_mpz_t(), rng, n.get_mpz_t());
        mpz_urandomm(x.get_mpz_t(), rng, n.get_mpz_t());
        if (c == 0) c = 1;
        Int y = x, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x - y;
            if (sgn(diff) < 0) diff = -diff;
            if (diff == 0) break;
            d = gcd(diff, n);
        }
        if (d != 1 && d != n) {
            record_factor(d, out, rng);
            record_factor(n / d, out, rng);
            return;
        }
    }
}

std::map<Int, int> factorize(Int n) {
    std::map<Int, int> out;
    if (sgn(n) < 0) n = -n;
    if (n <= 1) return out;
    for (unsigned long p = 2; p <= kTrialLimit && n > 1; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[Int(static_cast<long>(p))] += 1;
            n /= static_cast<long>(p);
        }
        Int psq = Int(static_cast<long>(p)) * static_cast<long>(p);
        if (psq > n) break;
    }
    if (n > 1) {
        gmp_randstate_t rng;
        gmp_randinit_mt(rng);
        gmp_randseed_ui(rng, 0x5eedu);
        record_factor(n, out, rng);
        gmp_randclear(rng);
    }
    return out;
}

void divisors_rec(const std::vector<std::pair<Int, int>>& f, size_t i, const Int& acc,
                  const Int& bound, std::vector<Int>& out) {
    if (out.size() > kCandidateCap) throw std::runtime_error("rational root search exceeded candidate cap");
    if (i == f.size()) {
        out.push_back(acc);
        return;
    }
    Int v = acc;
    for (int e = 0; e <= f[i].second; ++e) {
        if (v > bound) break;
        divisors_rec(f, i + 1, v, bound, out);
        v *= f[i].first;
    }
}

std::vector<Int> divisors_upto(const Int& n, const Int& bound) {
    auto fm = factorize(n);
    std::vector<std::pair<Int, int>> f(fm.begin(), fm.end());
    std::vector<Int> out;
    divisors_rec(f, 0, Int(1), bound < 1 ? Int(1) : bound, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

RootReport rational_roots(const UniPolyQ& p) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");

    RootReport rep;
    std::map<Rat, int> roots;

    // Pull out the power of X first.
    int low = 0;
    while (low <= p.degree() && npa::is_zero(p.coeff(low))) ++low;
    if (low > 0) roots[Rat(0)] = low;
    std::vector<Rat> shifted(p.coeffs().begin() + low, p.coeffs().end());
    UniPolyQ work{std::move(shifted)};

    if (work.degree() >= 1) {
        // Primitive integer form for the candidate bound.
        Int den_lcm = 1;
        for (const Rat& c : work.coeffs()) den_lcm = lcm(den_lcm, c.get_den());
        std::vector<Int> ic(work.coeffs().size());
        Int content = 0;
        for (size_t i = 0; i < ic.size(); ++i) {
            Rat s = work.coeffs()[i] * Rat(den_lcm);
            ic[i] = s.get_num();
            content = gcd(content, ic[i]);
        }
        for (Int& v : ic) v /= content;

        Int a0 = ic.front(), an = ic.back();
        if (sgn(a0) < 0) a0 = -a0;
        if (sgn(an) < 0) an = -an;

        // Cauchy bound: every root has |r| <= 1 + max |a_i| / |a_n|.
        Int max_abs = 0;
        for (const Int& v : ic) {
            Int a = v < 0 ? Int(-v) : v;
            if (a > max_abs) max_abs = a;
        }
        Int num_bound = (max_abs / an + 2) * an;  // bound on |r| for candidates r/s, s <= an

        std::vector<Int> rs = divisors_upto(a0, num_bound);
        std::vector<Int> ss = divisors_upto(an, an);
        if (rs.size() * ss.size() > kCandidateCap)
            throw std::runtime_error("rational root search exceeded candidate cap");

        std::vector<Rat> candidates;
        for (const Int& s : ss)
            for (const Int& r : rs) {
                if (gcd(r, s) != 1) continue;
                candidates.push_back(rat(r, s));
                candidates.push_back(rat(-r, s));
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        for (const Rat& cand : candidates) {
            while (work.degree() >= 1 && npa::is_zero(work.eval(cand))) {
                roots[cand] += 1;
                work = work.deflate_root(cand);
            }
        }
    }

    rep.remainder_degree = std::max(work.degree(), 0);
    rep.roots.assign(roots.begin(), roots.end());
    return rep;
}

}  // namespace npa
