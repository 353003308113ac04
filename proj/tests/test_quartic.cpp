#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracle.hpp"
#include "p3p/quartic.hpp"

using namespace p3p;

namespace {

double eval4(const QuarticCoeffs &q, double x) {
    return (((q.c4 * x + q.c3) * x + q.c2) * x + q.c1) * x + q.c0;
}

bool roots_close(const RealRoots &a, const RealRoots &b, double tol) {
    if (a.count != b.count) {
        return false;
    }
    for (int i = 0; i < a.count; ++i) {
        if (std::abs(a.roots[i] - b.roots[i]) > tol * (1.0 + std::abs(b.roots[i]))) {
            return false;
        }
    }
    return true;
}

double min_gap(const RealRoots &a) {
    double g = std::numeric_limits<double>::infinity();
    for (int i = 1; i < a.count; ++i) {
        g = std::min(g, a.roots[i] - a.roots[i - 1]);
    }
    return g;
}

} // namespace

TEST_CASE("quadratic: frozen cases") {
    auto r = solve_quadratic_real(1, -3, 2);
    REQUIRE(r.has_value());
    REQUIRE(r->count == 2);
    CHECK(r->roots[0] == doctest::Approx(1.0));
    CHECK(r->roots[1] == doctest::Approx(2.0));

    r = solve_quadratic_real(1, 0, 1);
    REQUIRE(r.has_value());
    CHECK(r->count == 0);

    r = solve_quadratic_real(0, 2, -4);
    REQUIRE(r.has_value());
    REQUIRE(r->count == 1);
    CHECK(r->roots[0] == doctest::Approx(2.0));

    CHECK_FALSE(solve_quadratic_real(0, 0, 0).has_value());
    // constant nonzero polynomial: zero roots
    r = solve_quadratic_real(0, 0, 5);
    REQUIRE(r.has_value());
    CHECK(r->count == 0);

    // double root collapses
    r = solve_quadratic_real(1, -2, 1);
    REQUIRE(r.has_value());
    REQUIRE(r->count == 1);
    CHECK(r->roots[0] == doctest::Approx(1.0));
}

TEST_CASE("cubic: frozen cases") {
    auto r = solve_cubic_real(1, -6, 11, -6);
    REQUIRE(r.has_value());
    REQUIRE(r->count == 3);
    CHECK(r->roots[0] == doctest::Approx(1.0));
    CHECK(r->roots[1] == doctest::Approx(2.0));
    CHECK(r->roots[2] == doctest::Approx(3.0));

    r = solve_cubic_real(1, 0, 0, -8);
    REQUIRE(r.has_value());
    REQUIRE(r->count == 1);
    CHECK(r->roots[0] == doctest::Approx(2.0));

    // triple root
    r = solve_cubic_real(1, -3, 3, -1);
    REQUIRE(r.has_value());
    REQUIRE(r->count == 1);
    CHECK(r->roots[0] == doctest::Approx(1.0));

    // degrades to quadratic on vanishing leading coefficient
    r = solve_cubic_real(0, 1, -3, 2);
    REQUIRE(r.has_value());
    REQUIRE(r->count == 2);
}

TEST_CASE("cubic: residuals and count vs Sturm oracle") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    int checked = 0;
    for (int i = 0; i < 20000; ++i) {
        const double a = d(gen), b = d(gen), c = d(gen), e = d(gen);
        const auto r = solve_cubic_real(a, b, c, e);
        REQUIRE(r.has_value());
        const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(e)});
        for (int k = 0; k < r->count; ++k) {
            const double x = r->roots[k];
            const double p = ((a * x + b) * x + c) * x + e;
            const double xs = std::max(1.0, std::abs(x));
            CHECK(std::abs(p) <= 1e-10 * scale * xs * xs * xs);
        }
        const double bound = 1.0 + std::max({std::abs(b), std::abs(c), std::abs(e)}) / std::abs(a);
        const RealRoots oracle = oracle::sturm_real_roots({a, b, c, e}, -bound, bound);
        if (min_gap(oracle) > 1e-7 && min_gap(*r) > 1e-7) {
            CHECK(roots_close(*r, oracle, 1e-8));
            ++checked;
        }
    }
    CHECK(checked > 19000);
}

TEST_CASE("quartic: frozen cases") {
    auto r = solve_quartic_real({1, -10, 35, -50, 24});
    REQUIRE(r.has_value());
    REQUIRE(r->count == 4);
    CHECK(r->roots[0] == doctest::Approx(1.0));
    CHECK(r->roots[1] == doctest::Approx(2.0));
    CHECK(r->roots[2] == doctest::Approx(3.0));
    CHECK(r->roots[3] == doctest::Approx(4.0));

    r = solve_quartic_real({1, 0, 0, 0, 1});
    REQUIRE(r.has_value());
    CHECK(r->count == 0);

    // (x^2 - 1)^2: double roots collapse to one report each
    r = solve_quartic_real({1, 0, -2, 0, 1});
    REQUIRE(r.has_value());
    REQUIRE(r->count == 2);
    CHECK(r->roots[0] == doctest::Approx(-1.0));
    CHECK(r->roots[1] == doctest::Approx(1.0));

    // x^4 = 0
    r = solve_quartic_real({1, 0, 0, 0, 0});
    REQUIRE(r.has_value());
    REQUIRE(r->count == 1);
    CHECK(r->roots[0] == doctest::Approx(0.0));

    // degenerate leading coefficient: cubic chain
    r = solve_quartic_real({0, 1, -6, 11, -6});
    REQUIRE(r.has_value());
    CHECK(r->count == 3);

    CHECK_FALSE(solve_quartic_real({0, 0, 0, 0, 0}).has_value());
}

TEST_CASE("quartic: biquadratic and asymmetric shapes") {
    // x^4 - 5x^2 + 4 = (x^2-1)(x^2-4)
    auto r = solve_quartic_real({1, 0, -5, 0, 4});
    REQUIRE(r.has_value());
    REQUIRE(r->count == 4);
    CHECK(r->roots[0] == doctest::Approx(-2.0));
    CHECK(r->roots[1] == doctest::Approx(-1.0));
    CHECK(r->roots[2] == doctest::Approx(1.0));
    CHECK(r->roots[3] == doctest::Approx(2.0));

    // two real, two complex: (x^2 - 1)(x^2 + x + 1)
    r = solve_quartic_real({1, 1, 1, -1, -1});
    REQUIRE(r.has_value());
    REQUIRE(r->count == 2);
    CHECK(eval4({1, 1, 1, -1, -1}, r->roots[0]) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("quartic: residual bound and count vs Sturm oracle on random coefficients") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    int compared = 0;
    for (int i = 0; i < 20000; ++i) {
        const QuarticCoeffs q{d(gen), d(gen), d(gen), d(gen), d(gen)};
        const auto r = solve_quartic_real(q);
        REQUIRE(r.has_value());
        const double scale = std::max({std::abs(q.c4), std::abs(q.c3), std::abs(q.c2),
                                       std::abs(q.c1), std::abs(q.c0)});
        for (int k = 0; k < r->count; ++k) {
            const double x = r->roots[k];
            const double xs = std::max(1.0, std::abs(x));
            CHECK(std::abs(eval4(q, x)) <= 1e-9 * scale * xs * xs * xs * xs);
        }
        const double bound =
            1.0 + std::max({std::abs(q.c3), std::abs(q.c2), std::abs(q.c1), std::abs(q.c0)}) /
                      std::abs(q.c4);
        const RealRoots oracle =
            oracle::sturm_real_roots({q.c4, q.c3, q.c2, q.c1, q.c0}, -bound, bound);
        if (min_gap(oracle) > 1e-7 && min_gap(*r) > 1e-7) {
            CHECK(roots_close(*r, oracle, 1e-8));
            ++compared;
        }
    }
    CHECK(compared > 19000);
}
