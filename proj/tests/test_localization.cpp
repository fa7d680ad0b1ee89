#include <doctest.h>

#include <random>

#include "npa/localization.hpp"
#include "test_util.hpp"

using namespace npa;
using npa_test::rand_element;

namespace {

struct Plane {
    AlgebraPtr alg = AlgebraSpec::symplectic_poly(1);
    Element x = Element::generator(alg, 0);
    Element y = Element::generator(alg, 1);
    Element one = Element::constant(alg, 1);
};

LocElement rand_loc(const LocAlgebraPtr& loc, std::mt19937& rng) {
    std::uniform_int_distribution<int> kdist(0, 2);
    Element num = rand_element(loc->algebra(), rng, 2, 2);
    return loc_make(loc, num, kdist(rng));
}

}  // namespace

TEST_SUITE_BEGIN("localization");

TEST_CASE("embedded products and inverse cancellation") {
    Plane s;
    auto loc = localize(s.alg, s.y);
    CHECK(loc_equal(loc_mul(loc_embed(loc, s.x), loc_embed(loc, s.y)),
                    loc_embed(loc, mul(s.x, s.y))));

    LocElement inv_y = loc_make(loc, s.one, 1);
    CHECK(loc_equal(loc_mul(inv_y, loc_embed(loc, s.y)), loc_embed(loc, s.one)));

    LocElement frac = loc_make(loc, s.x, 1);  // x / y
    LocElement sq = loc_mul(frac, frac);
    CHECK(sq.denom_exp == 2);
    CHECK(sq.numerator == mul(s.x, s.x));
}

TEST_CASE("canonical form divides out the base and is idempotent") {
    Plane s;
    auto loc = localize(s.alg, s.y);
    // (x y^2) / y^3 reduces to x / y.
    LocElement e = loc_make(loc, mul(s.x, mul(s.y, s.y)), 3);
    CHECK(e.denom_exp == 1);
    CHECK(e.numerator == s.x);
    LocElement again = loc_make(loc, e.numerator, e.denom_exp);
    CHECK(loc_equal(e, again));

    // Zero collapses to exponent zero.
    LocElement z = loc_make(loc, Element::zero(s.alg), 2);
    CHECK(z.denom_exp == 0);
    CHECK(z.is_zero());
}

TEST_CASE("canonicalization with a non-monomial base") {
    Plane s;
    Element base = s.x + s.y;
    auto loc = localize(s.alg, base);
    LocElement e = loc_make(loc, mul(base, base), 3);
    CHECK(e.denom_exp == 1);
    CHECK(e.numerator == s.one);
    LocElement f = loc_make(loc, s.x, 1);  // x not divisible by x + y
    CHECK(f.denom_exp == 1);
    CHECK(f.numerator == s.x);
}

TEST_CASE("exact division decides divisibility") {
    Plane s;
    Element f = mul(s.x + s.y, mul(s.x, s.x) + s.one);
    auto q = exact_divide(f, s.x + s.y);
    REQUIRE(q.has_value());
    CHECK(*q == mul(s.x, s.x) + s.one);
    CHECK_FALSE(exact_divide(f + s.one, s.x + s.y).has_value());
}

TEST_CASE("bracket desk values") {
    Plane s;
    auto loc_y = localize(s.alg, s.y);
    // {x, 1/y} = -1/y^2.
    LocElement r = loc_bracket(loc_embed(loc_y, s.x), loc_make(loc_y, s.one, 1));
    CHECK(r.denom_exp == 2);
    CHECK(r.numerator == -s.one);

    // {x, 1/x} = 0.
    auto loc_x = localize(s.alg, s.x);
    LocElement r2 = loc_bracket(loc_embed(loc_x, s.x), loc_make(loc_x, s.one, 1));
    CHECK(r2.is_zero());
}

TEST_CASE("embedded bracket agrees with the plain one") {
    Plane s;
    auto loc = localize(s.alg, s.y);
    std::mt19937 rng(314);
    for (int t = 0; t < 50; ++t) {
        Element a = rand_element(s.alg, rng);
        Element b = rand_element(s.alg, rng);
        LocElement lhs = loc_bracket(loc_embed(loc, a), loc_embed(loc, b));
        CHECK(loc_equal(lhs, loc_embed(loc, bracket(a, b))));
        CHECK(loc_equal(loc_mul(loc_embed(loc, a), loc_embed(loc, b)),
                        loc_embed(loc, mul(a, b))));
    }
}

TEST_CASE("inverse identities of the bracket") {
    Plane s;
    auto loc = localize(s.alg, s.y);
    std::mt19937 rng(159);
    for (int t = 0; t < 50; ++t) {
        Element a = rand_element(s.alg, rng, 2);
        for (int k = 1; k <= 2; ++k) {
            // {a, t^-1} = -t^-1 {a, t} t^-1 for t = y^k.
            Element tk = s.y.pow(k);
            LocElement lhs = loc_bracket(loc_embed(loc, a), loc_make(loc, s.one, k));
            LocElement rhs = loc_make(loc, -bracket(a, tk), 2 * k);
            CHECK(loc_equal(lhs, rhs));
        }
    }
}

TEST_CASE("the two inverse-square expansions agree for powers of one base") {
    Plane s;
    auto loc = localize(s.alg, s.y);
    // s = y^i, t = y^j: both orderings of t^-1 s^-1 {s,t} s^-1 t^-1 coincide
    // (the bracket of two powers of y vanishes, so both sides are zero).
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            Element si = s.y.pow(i), tj = s.y.pow(j);
            Element br = bracket(si, tj);
            CHECK(br.is_zero());
            LocElement lhs = loc_make(loc, br, 2 * (i + j));
            LocElement rhs = loc_make(loc, br, 2 * (i + j));
            CHECK(loc_equal(lhs, rhs));
        }
}

TEST_CASE("localized bracket satisfies leibniz and jacobi on random triples") {
    Plane s;
    auto loc = localize(s.alg, s.y);
    std::mt19937 rng(265);
    for (int t = 0; t < 100; ++t) {
        LocElement a = rand_loc(loc, rng);
        LocElement b = rand_loc(loc, rng);
        LocElement c = rand_loc(loc, rng);

        LocElement leib_lhs = loc_bracket(a, loc_mul(b, c));
        LocElement leib_rhs =
            loc_add(loc_mul(loc_bracket(a, b), c), loc_mul(b, loc_bracket(a, c)));
        CHECK(loc_equal(leib_lhs, leib_rhs));

        LocElement jac = loc_add(
            loc_add(loc_bracket(a, loc_bracket(b, c)), loc_bracket(b, loc_bracket(c, a))),
            loc_bracket(c, loc_bracket(a, b)));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("torsion membership desk checks") {
    Plane s;
    // ad_x is strictly nilpotent on the plane: {x, y} = 1.
    auto loc_x = localize(s.alg, s.x);
    TorsionCheck in = loc_torsion_check(s.x, loc_make(loc_x, s.one, 1), 6);
    CHECK(in.member);
    CHECK(in.steps == 1);  // {x, 1/x} = 0 immediately
    CHECK(in.predicted_member);
    CHECK(in.prediction_agrees);

    auto loc_y = localize(s.alg, s.y);
    TorsionCheck outp = loc_torsion_check(s.x, loc_make(loc_y, s.one, 1), 6);
    CHECK_FALSE(outp.member);
    CHECK_FALSE(outp.predicted_member);
    CHECK(outp.prediction_agrees);
    // Denominator exponent grows one per step: the factorial tail.
    REQUIRE(outp.profile.size() == 7);
    for (size_t m = 0; m < outp.profile.size(); ++m) {
        CHECK(outp.profile[m].first == 0);
        CHECK(outp.profile[m].second == static_cast<int>(m) + 1);
    }

    // Polynomial probes terminate like ordinary nil orbits.
    TorsionCheck poly = loc_torsion_check(s.x, loc_embed(loc_y, s.y.pow(3)), 6);
    CHECK(poly.member);
    CHECK(poly.steps == 4);
    CHECK(poly.predicted_member);
}

TEST_CASE("iterates of the outside probe follow the closed form") {
    Plane s;
    auto loc = localize(s.alg, s.y);
    LocElement cur = loc_make(loc, s.one, 1);
    Rat sign(1);
    Int fact(1);
    LocElement zq = loc_embed(loc, s.x);
    for (int m = 1; m <= 5; ++m) {
        cur = loc_bracket(zq, cur);
        sign = -sign;
        fact *= m;
        LocElement expect = loc_make(loc, Element::constant(s.alg, sign * Rat(fact)), m + 1);
        CHECK(loc_equal(cur, expect));
    }
}

TEST_CASE("localization rejects unusable inputs") {
    Plane s;
    CHECK_THROWS_AS(localize(AlgebraSpec::weyl(1), Element::generator(AlgebraSpec::weyl(1), 0)),
                    std::domain_error);
    CHECK_THROWS_AS(localize(s.alg, Element::zero(s.alg)), std::invalid_argument);

    auto loc_x = localize(s.alg, s.x);
    auto loc_y = localize(s.alg, s.y);
    CHECK_THROWS_AS(loc_mul(loc_embed(loc_x, s.x), loc_embed(loc_y, s.x)), std::domain_error);
}

TEST_SUITE_END();
