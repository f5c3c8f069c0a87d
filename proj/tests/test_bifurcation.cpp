#include <cmath>
#include <cstdio>
#include <doctest.h>
#include <fstream>

#include <foldatlas/bifurcation.hpp>
#include <foldatlas/errors.hpp>

using namespace foldatlas;

TEST_CASE("standard families evaluate correctly") {
    auto s2 = UnfoldingFamily::s2_standard();
    auto b2 = UnfoldingFamily::b2_standard();
    // g_S2 = y^3 - x^3 y + s y + t x y
    CHECK(s2.eval(2, 1, 3, 5) == doctest::Approx(1 - 8 + 3 + 10));
    // g_B2 = y^5 - x^2 y + s y + t y^3
    CHECK(b2.eval(2, 1, 3, 5) == doctest::Approx(1 - 4 + 3 + 5));
}

TEST_CASE("singular points of S2std at (s,t) = (-2,3)") {
    // g_y(x, 0) = -x^3 + 3x - 2 = -(x-1)^2 (x+2)
    auto s2 = UnfoldingFamily::s2_standard();
    auto pts = singular_points(s2, -2.0, 3.0);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].x == doctest::Approx(-2.0));
    CHECK(pts[0].multiplicity == 1);
    CHECK(pts[1].x == doctest::Approx(1.0));
    CHECK(pts[1].multiplicity == 2);

    // exact path agrees, with gcd-certified multiplicities
    auto exact = singular_points(s2, Rational(-2), Rational(3));
    REQUIRE(exact.size() == 2);
    CHECK(exact[0].multiplicity == 1);
    CHECK(exact[1].multiplicity == 2);
}

TEST_CASE("mono-germ locus closed forms") {
    auto s2 = UnfoldingFamily::s2_standard();
    auto mono = mono_germ_locus(s2, ARange{-1, 1}, 41);
    CHECK(mono.has_closed_form);
    // (s, t) = (-2a^3, 3a^2): verify against the samples and the symbolic
    // identity g_y(x,0) = -(x - a)^2 (x + 2a) on a rational grid
    for (const auto& smp : mono.samples) {
        CHECK(smp.s == doctest::Approx(-2 * std::pow(smp.a, 3)).epsilon(1e-12));
        CHECK(smp.t == doctest::Approx(3 * smp.a * smp.a).epsilon(1e-12));
    }
    for (int num = -4; num <= 4; ++num) {
        Rational a(num, 3);
        Jet g = s2.at_parameters(-2 * a * a * a, 3 * a * a);
        Jet gy = g.partial_derivative(1);
        // gy(x, 0) as a polynomial identity: -(x - a)^2 (x + 2a)
        Jet x = Jet::variable(2, g.order(), 0);
        Jet target = ((x - Jet::constant(2, g.order(), a)).pow(2) *
                      (x + Jet::constant(2, g.order(), 2 * a)))
                         .scaled(-1);
        for (const auto& [e, c] : target.terms())
            CHECK(gy.coefficient(e) == c);
    }
    // cusp of the semicubical locus sits at the origin
    bool saw_origin = false;
    for (const auto& smp : mono.samples)
        if (std::abs(smp.s) < 1e-12 && std::abs(smp.t) < 1e-12) saw_origin = true;
    CHECK(saw_origin);
}

TEST_CASE("B2std loci: mono and bi-germ parametrizations") {
    auto b2 = UnfoldingFamily::b2_standard();
    auto mono = mono_germ_locus(b2, ARange{0, 1}, 11);
    for (const auto& smp : mono.samples) {
        CHECK(smp.s == doctest::Approx(0.0));
        CHECK(smp.t == doctest::Approx(smp.a).epsilon(1e-12));
    }
    auto bi = bi_germ_locus(b2, ARange{0, 1}, 11);
    CHECK(bi.has_closed_form);
    for (const auto& smp : bi.samples) {
        CHECK(smp.s == doctest::Approx(std::pow(smp.a, 4)).epsilon(1e-12));
        CHECK(smp.t == doctest::Approx(-2 * smp.a * smp.a).epsilon(1e-12));
        // the two source points (0, +-a)
        REQUIRE(smp.source_points.size() == 2);
        CHECK(smp.source_points[0].second == doctest::Approx(smp.a));
        CHECK(smp.source_points[1].second == doctest::Approx(-smp.a));
    }
    const auto& end = bi.samples.back();
    CHECK(end.s == doctest::Approx(1.0));
    CHECK(end.t == doctest::Approx(-2.0));
}

TEST_CASE("S2std has no bi-germ branch") {
    auto s2 = UnfoldingFamily::s2_standard();
    auto bi = bi_germ_locus(s2, ARange{-1, 1}, 21);
    CHECK(bi.samples.empty());
}

TEST_CASE("self-tangency search on the quintic family") {
    double a = 0.6;
    auto f = [a](double x, double y) {
        double a2 = a * a;
        return std::pow(y, 5) - x * x * y + a2 * a2 * y - 2 * a2 * y * y * y;
    };
    auto res = self_tangency_search(f, Region{-1, 1, -1, 1});
    REQUIRE(res.pairs.size() == 1);
    CHECK(std::abs(res.pairs[0].first.first) < 1e-8);
    CHECK(res.pairs[0].first.second == doctest::Approx(0.6).epsilon(1e-8));
    CHECK_FALSE(res.mirror_symmetric);

    // a = 0: the pair collapses onto y = 0, nothing to report
    auto f0 = [](double x, double y) { return std::pow(y, 5) - x * x * y; };
    CHECK(self_tangency_search(f0, Region{-1, 1, -1, 1}).pairs.empty());

    // y^3 has no self-tangency at all
    auto cube = [](double, double y) { return y * y * y; };
    CHECK(self_tangency_search(cube, Region{-1, 1, -1, 1}).pairs.empty());

    // even surfaces degenerate: f_o vanishes identically
    auto even = [](double x, double y) { return x * x + y * y; };
    auto rese = self_tangency_search(even, Region{-1, 1, -1, 1});
    CHECK(rese.mirror_symmetric);
}

TEST_CASE("real_roots isolates tangential roots") {
    // -(x-1)^2 (x+2) = -x^3 + 3x - 2
    auto roots = real_roots({-2, 3, 0, -1}, -5, 5);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-2.0));
    CHECK(roots[1] == doctest::Approx(1.0));
}

TEST_CASE("trace_and_render writes csv and svg") {
    auto b2 = UnfoldingFamily::b2_standard();
    std::string prefix = "bif_smoke";
    trace_and_render(b2, ARange{0, 1}, 16, prefix);
    std::ifstream csv(prefix + ".csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "branch,a,s,t,x0,y0");
    std::ifstream svg(prefix + ".svg");
    REQUIRE(svg.good());
    std::string all((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
    CHECK(all.find("<svg") != std::string::npos);
    std::remove((prefix + ".csv").c_str());
    std::remove((prefix + ".svg").c_str());

    // n = 0 still writes (empty) files
    trace_and_render(b2, ARange{0, 1}, 0, prefix);
    std::ifstream csv0(prefix + ".csv");
    REQUIRE(csv0.good());
    std::remove((prefix + ".csv").c_str());
    std::remove((prefix + ".svg").c_str());
}
