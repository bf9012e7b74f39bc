#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "weyl/error.hpp"
#include "weyl/moment.hpp"
#include "weyl/scan.hpp"

using namespace weyl;

TEST_SUITE("scan") {

TEST_CASE("epsilon0 formula") {
    CHECK(epsilon0({0.5, std::sqrt(8.0), 1.0, 2.0}) == doctest::Approx(0.0625).epsilon(1e-12));
    double lam = 1.0, c = 0.0;
    double C = std::sqrt(4.0 / ((1 - c * c) * lam));
    CHECK(epsilon0({c, C, 1.0, 2.0}) == doctest::Approx(std::pow(lam * (1 - c * c), 2) / 8).epsilon(1e-12));
    CHECK(epsilon0({0.3, 1.0, 1.0, 2.0}) <= 0.0);
}

TEST_CASE("indicator fractions") {
    auto k3 = ScanKind::monomial(3);
    auto w = WeightSeq::ones();
    CHECK(indicator_fraction(k3, w, Interval{0.0, 1.0}, 400, 0.0, 20.0, 1000, 1) == 1.0);
    double mid = indicator_fraction(k3, w, Interval{0.0, 1.0}, 4096, 0.25, 4.0, 4096, 7);
    CHECK(mid >= 0.5);
    double thin = indicator_fraction(k3, w, Interval{0.0, 1.0}, 4096, 2.0, 2.0001, 4096, 7);
    CHECK(thin < 0.05);
    MESSAGE("fractions: mid " << mid << ", thin shell " << thin);

    double prev = 0.0;
    for (auto [c, C] : {std::pair{1.0, 1.2}, {0.8, 1.5}, {0.5, 2.0}, {0.2, 4.0}, {0.0, 8.0}}) {
        double f = indicator_fraction(k3, w, Interval{0.1, 0.5}, 1000, c, C, 2000, 3);
        CHECK(f >= prev);
        prev = f;
    }
    Box box{{{0.0, 1.0}, {0.0, 1.0}}};
    double f2 = indicator_fraction(ScanKind::full(2), w, box, 500, 0.0, std::sqrt(500.0), 1024, 2);
    CHECK(f2 == 1.0);
    CHECK_THROWS_AS(indicator_fraction(k3, w, Interval{0.0, 1.0}, 100, 0.2, 4.0, 999), ValidationError);
    CHECK_THROWS_AS(indicator_fraction(k3, w, Interval{0.0, 1.0}, 100, 0.5, 0.4, 1000), ValidationError);
}

TEST_CASE("grids") {
    auto g = scan_grid(Box{{{0.2, 0.5}}}, 1000, 9);
    REQUIRE(g.size() == 1000);
    for (const auto& p : g) {
        CHECK(p[0] >= 0.2);
        CHECK(p[0] < 0.7);
    }
    CHECK(g[1][0] - g[0][0] == doctest::Approx(0.0005));
    CHECK(scan_grid(Box{{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}}, 1000, 1).size() == 1000);
    CHECK(scan_grid(Box{{{0.0, 1.0}}}, 100, 1)[0][0] != scan_grid(Box{{{0.0, 1.0}}}, 100, 2)[0][0]);
}

TEST_CASE("ladders") {
    auto k3 = ScanKind::monomial(3);
    auto w = WeightSeq::ones();
    std::vector<std::uint64_t> one{700};
    auto single = ladder_stats(k3, w, Interval{0.0, 1.0}, one, 0.3, 4.0, 1500, 4);
    CHECK(single.union_fraction == indicator_fraction(k3, w, Interval{0.0, 1.0}, 700, 0.3, 4.0, 1500, 4));

    std::vector<std::uint64_t> Ns;
    for (int e = 8; e <= 13; ++e) Ns.push_back(std::uint64_t{1} << e);
    auto r = ladder_stats(k3, w, Interval{0.0, 1.0}, Ns, 0.3, 4.0, 2048, 5);
    CHECK(r.union_fraction >= 0.9);
    REQUIRE(r.tail_union.size() == Ns.size());
    CHECK(r.tail_union[0] == r.union_fraction);
    for (std::size_t i = 1; i < r.tail_union.size(); ++i) CHECK(r.tail_union[i] <= r.tail_union[i - 1]);
    for (double f : r.fractions) {
        CHECK(f >= 0.0);
        CHECK(f <= r.union_fraction);
    }
    MESSAGE("ladder union " << r.union_fraction << ", last tail " << r.tail_union.back());

    auto pts = scan_grid(Box{{{0.0, 1.0}}}, 2048, 5);
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(17));
    auto s = ladder_stats(k3, w, std::span<const std::vector<double>>(shuffled), Ns, 0.3, 4.0);
    CHECK(s.union_fraction == r.union_fraction);
    CHECK(s.fractions == r.fractions);
    CHECK(s.tail_union == r.tail_union);

    std::vector<std::uint64_t> bad{16, 8};
    CHECK_THROWS_AS(ladder_stats(k3, w, Interval{0.0, 1.0}, bad, 0.3, 4.0, 1000, 1), ValidationError);
}

TEST_CASE("epsilon0 lower bounds the measured fraction") {
    Interval I{0.2, 0.2};
    auto w = WeightSeq::ones();
    std::uint64_t N = 150;
    double a1 = second_moment_interval(SumFamily::monomial(3), w, I, N).ratio;
    double a2 = 2.0 * fourth_moment_interval(3, w, I, N).ratio;
    for (auto [c, C] : {std::pair{0.3, 2.0}, {0.5, 2.5}, {0.2, 3.0}}) {
        double eps = epsilon0({c, C, a1, a2});
        double f = indicator_fraction(ScanKind::monomial(3), w, I, N, c, C, 4000, 11);
        CHECK(f >= eps - 0.05);
        MESSAGE("c=" << c << " C=" << C << " eps0=" << eps << " fraction=" << f);
    }
}

TEST_CASE("counterexample set") {
    auto r = counterexample_A(1000, {0.0, 1.0});
    double lim = 2 * std::numbers::pi * std::numbers::pi / 54;
    CHECK(std::fabs(r.bound - lim) < 1e-3);
    CHECK(r.bound >= lim);
    CHECK(r.upper <= r.bound + 1e-12);
    CHECK(r.lower <= r.upper);
    CHECK(r.density_lower == r.lower);
    CHECK(r.density_upper == r.upper);
    CHECK(r.upper - r.lower <= 2.0 / 9.0 / r.generations);
    MESSAGE("measure in [" << r.lower << ", " << r.upper << "] after " << r.generations << " generations");

    double delta = std::pow(3.0, -8) * 512;
    auto p = counterexample_A(1000, {0.4, delta});
    REQUIRE(p.bracket_n.has_value());
    CHECK(*p.bracket_n == 8);
    CHECK(p.bracket_fractions >= 512 / 3);
    CHECK(p.density_lower > 0.0);
    CHECK(p.density_lower <= p.density_upper);
    MESSAGE("density " << p.density_lower << " vs (log 1/delta)^-2 = " << p.log_scale);
    CHECK_THROWS_AS(counterexample_A(1, {0.0, 1.0}), ValidationError);
}

}
