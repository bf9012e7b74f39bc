#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "weyl/arcs.hpp"
#include "weyl/core.hpp"
#include "weyl/error.hpp"

using namespace weyl;

TEST_SUITE("arcs") {

TEST_CASE("continued fraction convergents") {
    auto h = cf_approx(0.5, 10);
    CHECK(h.a == 1);
    CHECK(h.q == 2);
    CHECK(h.xi == 0.0);
    auto p = cf_approx(0.141592653589793, 120);
    CHECK(p.a == 16);
    CHECK(p.q == 113);
    auto g = cf_approx(0.6180339887, 100);
    CHECK(g.a == 55);
    CHECK(g.q == 89);
    auto z = cf_approx(0.0, 5);
    CHECK(z.a == 0);
    CHECK(z.q == 1);
    CHECK(cf_approx(std::ldexp(1.0, -100), 1000).q == 1);
    CHECK_THROWS_AS(cf_approx(0.3, 0), ValidationError);
}

TEST_CASE("convergent properties") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double x = u(rng);
        std::int64_t qmax = 1 + static_cast<std::int64_t>(rng() % 100000);
        auto r = cf_approx(x, qmax);
        CHECK(r.q >= 1);
        CHECK(r.q <= qmax);
        CHECK(std::gcd(r.a, r.q) == 1);
        double q = static_cast<double>(r.q);
        CHECK(std::fabs(r.xi) <= 1.0 / (q * q));
        CHECK(std::fabs(x - (double(r.a) / q + r.xi)) <= 1e-15);
    }
}

TEST_CASE("oscillatory integral") {
    std::vector<double> zero{0.0};
    CHECK(oscillatory_integral(zero, 37.0).real() == doctest::Approx(37.0));
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double N = 1000.0;
    for (int i = 0; i < 100; ++i) {
        double t = u(rng);
        std::vector<double> xi{t};
        cplx want = (expi(t * N) - 1.0) / cplx(0.0, 2.0 * std::numbers::pi * t);
        CHECK(std::abs(oscillatory_integral(xi, N) - want) <= 1e-6 * N);
    }
    std::vector<double> cubic{0.0, 0.0, 0.4 / (500.0 * 500.0 * 500.0)};
    CHECK(std::abs(oscillatory_integral(cubic, 500.0)) >= 0.5 * 500.0);
    std::vector<double> steep{1e6};
    CHECK_THROWS_AS(oscillatory_integral(steep, 1e6, 1000), BudgetError);
}

TEST_CASE("Gauss sums") {
    CHECK(std::abs(gauss_sum(1, 7, 2)) == doctest::Approx(std::sqrt(7.0)));
    CHECK(std::abs(gauss_sum(3, 11, 2)) == doctest::Approx(std::sqrt(11.0)));
    CHECK(std::abs(gauss_sum(1, 1, 3)) == doctest::Approx(1.0));
    std::vector<std::int64_t> a{3, 5};
    CHECK(std::abs(complete_sum(a, 11)) == doctest::Approx(std::sqrt(11.0)));
}

TEST_CASE("rational point sum matches the direct sum") {
    double x = 2.0 / 7.0 + 1e-7;
    auto r = cf_approx(x, 50);
    CHECK(r.q == 7);
    cplx a = rational_point_sum(r.a, r.q, r.xi, 3, 2000);
    cplx b = weyl_sum(MonomialPhase{x, 3}, WeightSeq::ones(), 2000).value;
    CHECK(std::abs(a - b) <= 1e-8);
}

TEST_CASE("Vaughan main term") {
    auto r = cf_approx(1.0 / 7.0, 100);
    auto m = vaughan_approx(r, 2, 700);
    CHECK(std::abs(m.main) == doctest::Approx(100.0 * std::sqrt(7.0)).epsilon(1e-6));
    double x = 0.2 + 1e-9;
    auto r5 = cf_approx(x, 31);
    CHECK(r5.q == 5);
    auto v = vaughan_approx(r5, 3, 1000);
    cplx direct = weyl_sum(MonomialPhase{x, 3}, WeightSeq::ones(), 1000).value;
    CHECK(std::abs(direct - v.main) <= 20.0 * v.error_budget);
}

TEST_CASE("Baker main term") {
    auto p = baker_point(std::vector<std::int64_t>{3, 5}, 11, std::vector<double>{0.0, 0.0});
    CHECK(p.D == 1);
    auto m = baker_approx(p, 1100);
    CHECK(m.valid);
    CHECK(std::abs(m.main) == doctest::Approx(100.0 * std::sqrt(11.0)).epsilon(1e-6));
    auto bad = baker_point(std::vector<std::int64_t>{3, 5}, 11, std::vector<double>{std::pow(1100.0, -0.5), 0.0});
    CHECK_FALSE(baker_approx(bad, 1100).valid);
    std::vector<double> x{3.0 / 11.0 + 1e-6, 5.0 / 11.0 + 1e-9};
    auto near = baker_point(x, 11);
    CHECK(near.a == std::vector<std::int64_t>{3, 5});
    auto bm = baker_approx(near, 1100);
    CHECK(bm.valid);
    cplx direct = weyl_sum(PhaseVector(x), WeightSeq::ones(), 1100).value;
    CHECK(std::abs(direct - bm.main) <= 20.0 * std::sqrt(1100.0) * bm.error_budget);
}

TEST_CASE("major arc scan") {
    std::vector<double> grid{1.0 / 3.0, 0.6180339887498949};
    auto rows = major_arc_scan(3, 10000, grid);
    CHECK(rows[0].major);
    REQUIRE(rows[0].residual_ratio.has_value());
    CHECK(*rows[0].residual_ratio <= 20.0);
    auto rows50 = major_arc_scan(3, 10000, grid, 50);
    CHECK_FALSE(rows50[1].major);
    CHECK_FALSE(rows50[1].residual_ratio.has_value());
    CHECK(major_arc_scan(3, 100, {}).empty());
}

}
