#include <doctest.h>

#include <foldatlas/errors.hpp>
#include <foldatlas/jet.hpp>

#include "test_util.hpp"

using namespace foldatlas;
using testutil::Rng;

namespace {

// Random polynomial of individual-term degree <= max_deg, declared at a
// high enough order that all products in the property suite stay exact.
Jet random_poly(Rng& rng, int num_vars, int max_deg, int order) {
    Jet p(num_vars, order);
    int n_terms = rng.integer(1, 6);
    for (int t = 0; t < n_terms; ++t) {
        Exponent e{0, 0, 0, 0};
        int deg = rng.integer(0, max_deg);
        for (int d = 0; d < deg; ++d) e[rng.integer(0, num_vars - 1)]++;
        p.set_coefficient(e, p.coefficient(e) + rng.rat(20, 6));
    }
    return p;
}

Jet random_origin_poly(Rng& rng, int num_vars, int max_deg, int order) {
    Jet p = random_poly(rng, num_vars, max_deg, order);
    p.set_coefficient(Exponent{0, 0, 0, 0}, 0);
    return p;
}

} // namespace

TEST_CASE("jet basics") {
    Jet x = Jet::variable(2, 4, 0), y = Jet::variable(2, 4, 1);
    Jet p = x * x + y.scaled(3);
    CHECK(p.coefficient(Exponent{2, 0, 0, 0}) == 1);
    CHECK(p.coefficient(Exponent{0, 1, 0, 0}) == 3);
    CHECK(p.reliable_degree() == 4);

    // truncation above the order: terms of degree > order never exist
    Jet q = (x + y).pow(4) * (x + y); // degree 5 product at order 4
    for (const auto& [e, c] : q.terms()) CHECK(total_degree(e) <= 4);
}

TEST_CASE("derivative drops one reliable degree") {
    Jet x = Jet::variable(2, 5, 0), y = Jet::variable(2, 5, 1);
    Jet f = x.pow(3) * y + y.pow(2);
    Jet fx = f.partial_derivative(0);
    CHECK(fx.reliable_degree() == 4);
    CHECK(fx.coefficient(Exponent{2, 1, 0, 0}) == 3);
    CHECK(f.partial_derivative(1).coefficient(Exponent{0, 1, 0, 0}) == 2);
}

TEST_CASE("compose rejects nonzero constant terms") {
    Jet x = Jet::variable(1, 3, 0);
    Jet inner = x + Jet::constant(1, 3, 1);
    CHECK_THROWS_AS(x.compose({inner}), composition_domain_error);
}

TEST_CASE("odd part") {
    Jet x = Jet::variable(2, 5, 0), y = Jet::variable(2, 5, 1);
    Jet f = y.pow(3) + x * x * y + x.pow(4) + y * y;
    Jet odd = f.odd_part(1);
    CHECK(odd.coefficient(Exponent{0, 3, 0, 0}) == 1);
    CHECK(odd.coefficient(Exponent{2, 1, 0, 0}) == 1);
    CHECK(odd.coefficient(Exponent{4, 0, 0, 0}) == 0);
    CHECK(odd.coefficient(Exponent{0, 2, 0, 0}) == 0);
}

TEST_CASE("ring axioms, 1000 randomized cases") {
    Rng rng(101);
    for (int it = 0; it < 1000; ++it) {
        int nv = rng.integer(1, 3);
        Jet a = random_poly(rng, nv, 2, 6);
        Jet b = random_poly(rng, nv, 2, 6);
        Jet c = random_poly(rng, nv, 2, 6);
        REQUIRE(a + b == b + a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE(a * b == b * a);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a - a == Jet::zero(nv, 6));
        REQUIRE(a * Jet::constant(nv, 6, 1) == a);
    }
}

TEST_CASE("Leibniz rule, 1000 randomized cases") {
    Rng rng(102);
    for (int it = 0; it < 1000; ++it) {
        int nv = rng.integer(2, 3);
        int v = rng.integer(0, nv - 1);
        Jet a = random_poly(rng, nv, 3, 8);
        Jet b = random_poly(rng, nv, 3, 8);
        Jet lhs = (a * b).partial_derivative(v);
        Jet rhs = a.partial_derivative(v) * b + a * b.partial_derivative(v);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("chain rule, 1000 randomized cases") {
    Rng rng(103);
    for (int it = 0; it < 1000; ++it) {
        Jet f = random_poly(rng, 2, 2, 8);
        Jet g0 = random_origin_poly(rng, 2, 2, 8);
        Jet g1 = random_origin_poly(rng, 2, 2, 8);
        int v = rng.integer(0, 1);
        Jet lhs = f.compose({g0, g1}).partial_derivative(v).truncated(3);
        Jet rhs = (f.partial_derivative(0).compose({g0, g1}) * g0.partial_derivative(v) +
                   f.partial_derivative(1).compose({g0, g1}) * g1.partial_derivative(v))
                      .truncated(3);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("compose associativity, 1000 randomized cases") {
    Rng rng(104);
    for (int it = 0; it < 1000; ++it) {
        Jet f = random_poly(rng, 1, 2, 8);
        Jet g = random_origin_poly(rng, 1, 2, 8);
        Jet h = random_origin_poly(rng, 1, 2, 8);
        REQUIRE(f.compose({g}).compose({h}) == f.compose({g.compose({h})}));
    }
}

TEST_CASE("evaluate is a ring homomorphism, 1000 randomized cases") {
    Rng rng(105);
    for (int it = 0; it < 1000; ++it) {
        int nv = rng.integer(1, 3);
        Jet a = random_poly(rng, nv, 2, 6);
        Jet b = random_poly(rng, nv, 2, 6);
        std::vector<Rational> p;
        for (int i = 0; i < nv; ++i) p.push_back(rng.rat(5, 4));
        REQUIRE((a + b).evaluate(p) == a.evaluate(p) + b.evaluate(p));
        REQUIRE((a * b).evaluate(p) == a.evaluate(p) * b.evaluate(p));
    }
}

TEST_CASE("truncate / extend round trip") {
    Rng rng(106);
    for (int it = 0; it < 100; ++it) {
        Jet a = random_poly(rng, 2, 3, 6);
        Jet up = a.extended(9);
        CHECK(up.order() == 9);
        CHECK(up.truncated(6) == a);
    }
}

TEST_CASE("rational string parsing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(rational_to_string(Rational(-6, 8)) == "-3/4");
    CHECK_THROWS_AS(parse_rational("1.5"), input_error);
    CHECK_THROWS_AS(parse_rational("x"), input_error);
    CHECK_THROWS_AS(parse_rational("1/0"), input_error);
}
