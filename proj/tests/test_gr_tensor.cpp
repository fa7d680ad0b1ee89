#include <doctest.h>

#include <random>

#include "npa/gr.hpp"
#include "npa/tensor.hpp"
#include "test_util.hpp"

using namespace npa;
using npa_test::rand_element;
using npa_test::rand_nonzero;

TEST_SUITE_BEGIN("gr-tensor");

TEST_CASE("symbol takes the top homogeneous part") {
    auto a1 = AlgebraSpec::weyl(1);
    Element p = Element::generator(a1, 0);
    Element q = Element::generator(a1, 1);

    Element x = mul(mul(p, p), q) + q;
    GradedElement s = symbol(x);
    CHECK(s.degree == 3);
    CHECK(s.representative == mul(mul(p, p), q));

    GradedElement c = symbol(Element::constant(a1, 7));
    CHECK(c.degree == 0);
    CHECK(c.representative == Element::constant(a1, 7));

    // pq + qp normal-orders to 2pq + 1; the symbol drops the constant.
    GradedElement m = symbol(mul(p, q) + mul(q, p));
    CHECK(m.degree == 2);
    CHECK(m.representative == mul(p, q).scaled(rat(2)));

    CHECK_THROWS_AS(symbol(Element::zero(a1)), std::invalid_argument);
}

TEST_CASE("graded product and bracket degrees") {
    auto a1 = AlgebraSpec::weyl(1);
    Element p = Element::generator(a1, 0);
    Element q = Element::generator(a1, 1);

    GradedElement gp = symbol(p), gq = symbol(q);
    GradedElement prod = gr_mul(gp, gq);
    CHECK(prod.degree == 2);
    CHECK(prod.representative == mul(p, q));

    // {q, p} = 1 has degree 0 < 1, so the graded bracket vanishes.
    GradedElement br = gr_bracket(gq, gp);
    CHECK(br.degree == 1);
    CHECK(br.representative.is_zero());

    std::mt19937 rng(11);
    Element a = rand_nonzero(a1, rng);
    GradedElement ga = symbol(a);
    CHECK(gr_bracket(ga, ga).representative.is_zero());
}

TEST_CASE("symbol is multiplicative") {
    for (auto alg : {AlgebraSpec::weyl(1), AlgebraSpec::symplectic_poly(1)}) {
        std::mt19937 rng(22);
        for (int t = 0; t < 50; ++t) {
            Element a = rand_nonzero(alg, rng);
            Element b = rand_nonzero(alg, rng);
            GradedElement lhs = symbol(mul(a, b));
            GradedElement rhs = gr_mul(symbol(a), symbol(b));
            CHECK(lhs.degree == rhs.degree);
            CHECK(lhs.representative == rhs.representative);
        }
    }
}

TEST_CASE("graded-commutativity certificates") {
    GrCertificate weyl = gr_commutative(AlgebraSpec::weyl(1), 4);
    CHECK(weyl.commutative);
    CHECK(weyl.degree_drop == 2);
    CHECK(weyl.exhaustive_ok);

    GrCertificate sym = gr_commutative(AlgebraSpec::symplectic_poly(1), 4);
    CHECK(sym.commutative);
    CHECK(sym.degree_drop == 2);

    BracketRule r{0, 1, {{Mono{{1, 1}}, rat(1)}}};  // {x, y} = x y
    GrCertificate bad = gr_commutative(AlgebraSpec::poly_with_table(1, {r}), 4);
    CHECK_FALSE(bad.commutative);
    CHECK(bad.degree_drop == 0);
}

TEST_CASE("degree bound certificate holds on random samples when commutative") {
    auto alg = AlgebraSpec::weyl(1);
    REQUIRE(gr_commutative(alg, 3).commutative);
    std::mt19937 rng(33);
    for (int t = 0; t < 100; ++t) {
        Element a = rand_nonzero(alg, rng, 4);
        Element b = rand_nonzero(alg, rng, 4);
        Element br = bracket(a, b);
        if (!br.is_zero()) CHECK(br.degree() <= a.degree() + b.degree() - 1);
    }
}

TEST_CASE("tensor embeddings re-index generators") {
    auto a1 = AlgebraSpec::weyl(1);
    TensorAlgebraSpec t = tensor_product(a1, a1);
    REQUIRE(t.combined->n_pairs() == 2);

    Element p = Element::generator(a1, 0);
    Element q = Element::generator(a1, 1);
    CHECK(tensor_embed(t, Side::Left, p) == Element::generator(t.combined, 0));
    CHECK(tensor_embed(t, Side::Right, p) == Element::generator(t.combined, 1));
    CHECK(tensor_embed(t, Side::Right, mul(p, q)) ==
          mul(Element::generator(t.combined, 1), Element::generator(t.combined, 3)));
    CHECK(tensor_embed(t, Side::Left, Element::constant(a1, 1)) ==
          Element::constant(t.combined, 1));
}

TEST_CASE("tensor element and builders") {
    auto a1 = AlgebraSpec::weyl(1);
    TensorAlgebraSpec t = tensor_product(a1, a1);
    Element p = Element::generator(a1, 0);
    Element q = Element::generator(a1, 1);
    Element p1 = Element::generator(t.combined, 0);
    Element p2 = Element::generator(t.combined, 1);
    Element q2 = Element::generator(t.combined, 3);

    CHECK(tensor_elem(t, p, q) == mul(p1, q2));
    CHECK(tensor_elem(t, p + Element::constant(a1, 1), q) == mul(p1, q2) + q2);
    CHECK(build_theta(t, p, p) == mul(p1, p2));
    CHECK(build_gamma(t, p, p) == p1 + p2);
    CHECK(build_gamma(t, Element::zero(a1), p) == p2);
    CHECK(build_gamma(t, p, mul(p, q)) == p1 + mul(p2, q2));
}

TEST_CASE("factor-wise degree readout") {
    auto a1 = AlgebraSpec::weyl(1);
    TensorAlgebraSpec t = tensor_product(a1, a1);
    Element p = Element::generator(a1, 0);
    Element q = Element::generator(a1, 1);
    Element x = tensor_elem(t, mul(p, q), p) + tensor_elem(t, p, mul(mul(q, q), q));
    CHECK(factor_degree(t, Side::Left, x) == 2);
    CHECK(factor_degree(t, Side::Right, x) == 3);
    CHECK(factor_degree(t, Side::Left, Element::zero(t.combined)) == kNegInfDegree);
}

TEST_CASE("embeddings are bracket- and product-preserving, cross brackets vanish") {
    for (auto alg : {AlgebraSpec::weyl(1), AlgebraSpec::symplectic_poly(1)}) {
        TensorAlgebraSpec t = tensor_product(alg, alg);
        std::mt19937 rng(44);
        for (int i = 0; i < 50; ++i) {
            Element a = rand_element(alg, rng);
            Element b = rand_element(alg, rng);
            CHECK(tensor_embed(t, Side::Left, mul(a, b)) ==
                  mul(tensor_embed(t, Side::Left, a), tensor_embed(t, Side::Left, b)));
            CHECK(tensor_embed(t, Side::Right, bracket(a, b)) ==
                  bracket(tensor_embed(t, Side::Right, a), tensor_embed(t, Side::Right, b)));
            CHECK(bracket(tensor_embed(t, Side::Left, a), tensor_embed(t, Side::Right, b))
                      .is_zero());
        }
    }
}

TEST_CASE("bracket of pure tensors expands factor-wise") {
    for (auto alg : {AlgebraSpec::weyl(1), AlgebraSpec::symplectic_poly(1)}) {
        TensorAlgebraSpec t = tensor_product(alg, alg);
        std::mt19937 rng(55);
        for (int i = 0; i < 50; ++i) {
            Element a1e = rand_element(alg, rng);
            Element a2e = rand_element(alg, rng);
            Element b1e = rand_element(alg, rng);
            Element b2e = rand_element(alg, rng);
            Element lhs = bracket(tensor_elem(t, a1e, a2e), tensor_elem(t, b1e, b2e));
            Element rhs = tensor_elem(t, mul(b1e, a1e), bracket(a2e, b2e)) +
                          tensor_elem(t, bracket(a1e, b1e), mul(a2e, b2e));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("compatibility identity between the two bracket expansions") {
    // {a1,b1} (x) [a2,b2] = [a1,b1] (x) {a2,b2}: zero against zero for the
    // commutative class, the same element twice for the Weyl class.
    for (auto alg : {AlgebraSpec::weyl(1), AlgebraSpec::symplectic_poly(1)}) {
        TensorAlgebraSpec t = tensor_product(alg, alg);
        std::mt19937 rng(66);
        for (int i = 0; i < 50; ++i) {
            Element a1e = rand_element(alg, rng);
            Element a2e = rand_element(alg, rng);
            Element b1e = rand_element(alg, rng);
            Element b2e = rand_element(alg, rng);
            Element comm1 = mul(a1e, b1e) - mul(b1e, a1e);
            Element comm2 = mul(a2e, b2e) - mul(b2e, a2e);
            CHECK(tensor_elem(t, bracket(a1e, b1e), comm2) ==
                  tensor_elem(t, comm1, bracket(a2e, b2e)));
        }
    }
}

TEST_CASE("adjoint of the diagonal sum acts factor-wise") {
    auto alg = AlgebraSpec::weyl(1);
    TensorAlgebraSpec t = tensor_product(alg, alg);
    std::mt19937 rng(77);
    for (int i = 0; i < 40; ++i) {
        Element z1 = rand_element(alg, rng);
        Element z2 = rand_element(alg, rng);
        Element v = rand_element(alg, rng);
        Element w = rand_element(alg, rng);
        Element gamma = build_gamma(t, z1, z2);
        Element lhs = bracket(gamma, tensor_elem(t, v, w));
        Element rhs = tensor_elem(t, bracket(z1, v), w) + tensor_elem(t, v, bracket(z2, w));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("adjoint of a pure tensor splits into one-sided multiplications") {
    auto alg = AlgebraSpec::weyl(1);
    TensorAlgebraSpec t = tensor_product(alg, alg);
    std::mt19937 rng(88);
    for (int i = 0; i < 40; ++i) {
        Element z1 = rand_element(alg, rng);
        Element z2 = rand_element(alg, rng);
        Element v = rand_element(alg, rng);
        Element w = rand_element(alg, rng);
        Element theta = build_theta(t, z1, z2);
        Element lhs = bracket(theta, tensor_elem(t, v, w));
        Element rhs = tensor_elem(t, bracket(z1, v), mul(z2, w)) +
                      tensor_elem(t, mul(v, z1), bracket(z2, w));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("tensor product rejects mixed classes") {
    CHECK_THROWS_AS(tensor_product(AlgebraSpec::weyl(1), AlgebraSpec::symplectic_poly(1)),
                    std::domain_error);
}

TEST_CASE("class 1 tensor carries both tables with vanishing cross brackets") {
    auto s1 = AlgebraSpec::symplectic_poly(1);
    TensorAlgebraSpec t = tensor_product(s1, s1);
    Element x1 = Element::generator(t.combined, 0);
    Element x2 = Element::generator(t.combined, 1);
    Element y1 = Element::generator(t.combined, 2);
    Element y2 = Element::generator(t.combined, 3);
    CHECK(bracket(x1, y1) == Element::constant(t.combined, 1));
    CHECK(bracket(x2, y2) == Element::constant(t.combined, 1));
    CHECK(bracket(x1, y2).is_zero());
    CHECK(bracket(x1, x2).is_zero());
}

TEST_SUITE_END();
