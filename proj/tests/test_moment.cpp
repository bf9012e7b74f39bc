#include <doctest.h>

#include <cmath>
#include <map>

#include "weyl/error.hpp"
#include "weyl/moment.hpp"

using namespace weyl;

namespace {

std::uint64_t brute_r0(int d, std::uint64_t N) {
    std::map<std::uint64_t, std::uint64_t> count;
    for (std::uint64_t a = 1; a <= N; ++a)
        for (std::uint64_t b = 1; b <= N; ++b) {
            std::uint64_t v = 0, pa = 1, pb = 1;
            for (int i = 0; i < d; ++i) pa *= a, pb *= b;
            v = pa + pb;
            ++count[v];
        }
    std::uint64_t r = 0;
    for (auto& [v, c] : count) r += c * c;
    return r;
}

// Composite Simpson on a fine grid, independent of the kernel.
double quadrature_moment(const SumFamily& f, const WeightSeq& w, std::uint64_t N, Interval I, int nu,
                         int panels) {
    double h = I.length / panels, acc = 0.0;
    for (int i = 0; i <= panels; ++i) {
        double x = I.start + i * h;
        double v = std::pow(std::norm(weyl_sum(f.phase(x), w, N).value), nu);
        acc += v * (i == 0 || i == panels ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    return acc * h / 3.0;
}

std::vector<double> ones_freqs(int d, std::uint64_t N, std::vector<cplx>& beta) {
    std::vector<double> y;
    family_terms(SumFamily::monomial(d), WeightSeq::ones(), N, SumRange::one_to_n, y, beta);
    return y;
}

}  // namespace

TEST_SUITE("moment") {

TEST_CASE("orthogonality over a full period") {
    std::vector<cplx> b;
    auto y = ones_freqs(2, 10, b);
    CHECK(exact_moment(y, b, {0.0, 1.0}, 1).total == doctest::Approx(10.0).epsilon(1e-12));
    y = ones_freqs(3, 12, b);
    auto r = exact_moment(y, b, {0.0, 1.0}, 2);
    CHECK(r.total == doctest::Approx(284.0).epsilon(1e-12));
    CHECK(r.diagonal == doctest::Approx(284.0).epsilon(1e-12));
    for (int d : {2, 3, 4, 5}) {
        y = ones_freqs(d, 30, b);
        CHECK(exact_moment(y, b, {0.0, 1.0}, 2).total ==
              doctest::Approx(double(brute_r0(d, 30))).epsilon(1e-12));
    }
}

TEST_CASE("single frequency on half a period") {
    std::vector<double> y{0.0};
    std::vector<cplx> b{{1.0, 0.0}};
    CHECK(exact_moment(y, b, {0.0, 0.5}, 1).total == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("exact kernel agrees with quadrature") {
    auto w = WeightSeq::random_phase(4);
    for (auto f : {SumFamily::monomial(2), SumFamily::power(2.5)}) {
        std::vector<double> y;
        std::vector<cplx> b;
        family_terms(f, w, 10, SumRange::one_to_n, y, b);
        Interval I{0.137, 0.21};
        for (int nu : {1, 2}) {
            double exact = exact_moment(y, b, I, nu).total;
            double quad = quadrature_moment(f, w, 10, I, nu, 20000);
            CHECK(exact == doctest::Approx(quad).epsilon(1e-7));
        }
    }
}

TEST_CASE("subdivision additivity") {
    auto w = WeightSeq::random_phase(21);
    std::vector<double> y;
    std::vector<cplx> b;
    family_terms(SumFamily::monomial(3), w, 200, SumRange::one_to_n, y, b);
    Interval whole{0.31, 0.12};
    for (int nu : {1, 2}) {
        std::span<const double> ys = y;
        std::span<const cplx> bs = b;
        if (nu == 2) ys = ys.first(40), bs = bs.first(40);
        double t = exact_moment(ys, bs, whole, nu).total;
        double a = exact_moment(ys, bs, {0.31, 0.05}, nu).total;
        double c = exact_moment(ys, bs, {0.36, 0.07}, nu).total;
        CHECK(std::fabs(t - a - c) <= 1e-8 * t);
    }
}

TEST_CASE("budget is enforced") {
    std::vector<cplx> b;
    auto y = ones_freqs(3, 100, b);
    Budget tiny;
    tiny.kernel_pairs = 10;
    CHECK_THROWS_AS(exact_moment(y, b, {0.0, 0.5}, 1, tiny), BudgetError);
    CHECK_THROWS_AS(exact_moment(y, b, {0.0, 0.0}, 1), ValidationError);
    CHECK_THROWS_AS(exact_moment(y, b, {0.0, 0.5}, 3), ValidationError);
}

TEST_CASE("second moment on a minor interval") {
    auto r = second_moment_interval(SumFamily::monomial(3), WeightSeq::ones(), {0.2, 0.1}, 2000);
    CHECK(r.ratio >= 0.95);
    CHECK(r.ratio <= 1.05);
    auto g = second_moment_interval(SumFamily::power(3.0), WeightSeq::random_phase(1), {0.1, 0.05},
                                    1000, SumRange::n_to_2n);
    CHECK(g.moment.n_terms == 1001);
    CHECK(std::fabs(g.moment.total - 0.05 * 1001) <= 10.0 * std::pow(1000.0, -0.9));
}

TEST_CASE("fourth moment") {
    auto r = fourth_moment_interval(5, WeightSeq::ones(), {0.3, 0.2}, 150);
    CHECK(r.ratio >= 0.8);
    CHECK(r.ratio <= 1.2);
    auto full = fourth_moment_interval(3, WeightSeq::ones(), {0.0, 1.0}, 40);
    CHECK(full.moment.total == doctest::Approx(double(brute_r0(3, 40))).epsilon(1e-12));
}

TEST_CASE("quadratic pair moment") {
    auto w = WeightSeq::ones();
    CHECK(quadratic_pair_moment({0, 1}, {0, 1}, w, 40).total == doctest::Approx(3160.0).epsilon(1e-12));
    CHECK(quadratic_pair_moment({0, 0.5}, {0, 1}, w, 40).total == doctest::Approx(1580.0).epsilon(1e-10));
    double small = quadratic_pair_moment({0.1, 0.25}, {0.1, 0.25}, w, 100).total;
    CHECK(small > 0.0);
    CHECK(small <= 2.0 * 0.25 * 0.25 * 100.0 * 100.0 * 1.5);
}

TEST_CASE("Monte Carlo moments") {
    auto full = mc_moment(SumFamily::monomial(3), WeightSeq::ones(), {0.0, 1.0}, 500, 1, 4096, 1);
    CHECK(std::fabs(full.estimate - 500.0) <= 4.0 * full.stderr_);
    auto four = mc_moment(SumFamily::monomial(5), WeightSeq::ones(), {0.3, 0.2}, 5000, 2, 8192, 2);
    double ratio = four.estimate / (2.0 * 0.2 * 5000.0 * 5000.0);
    CHECK(ratio >= 0.8);
    CHECK(ratio <= 1.2);
    auto again = mc_moment(SumFamily::monomial(3), WeightSeq::ones(), {0.0, 1.0}, 500, 1, 4096, 1);
    CHECK(again.estimate == full.estimate);
    CHECK_THROWS_AS(mc_moment(SumFamily::monomial(3), WeightSeq::ones(), {0.0, 1.0}, 10, 1, 8, 1),
                    ValidationError);
}

TEST_CASE("Monte Carlo is unbiased against the exact kernel") {
    Interval I{0.2, 0.1};
    auto w = WeightSeq::random_phase(3);
    double exact = second_moment_interval(SumFamily::monomial(3), w, I, 100).moment.total;
    double mean = 0.0, var = 0.0;
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
        auto e = mc_moment(SumFamily::monomial(3), w, I, 100, 1, 64, 1000 + seed);
        mean += e.estimate / 32.0;
        var += e.stderr_ * e.stderr_ / (32.0 * 32.0);
    }
    CHECK(std::fabs(mean - exact) <= 5.0 * std::sqrt(var));
}

TEST_CASE("box Monte Carlo for the full polynomial sum") {
    Box box{{{0.0, 1.0}, {0.0, 1.0}}};
    auto e = mc_moment(box, WeightSeq::ones(), 200, 1, 4096, 5);
    CHECK(std::fabs(e.estimate - 200.0) <= 4.0 * e.stderr_);
}

TEST_CASE("variance integral") {
    std::uint64_t N = 512;
    double Nd = double(N);
    double eps0 = std::pow(Nd, -3.0 + 0.5 + 0.1);
    auto v = variance_integral(3.0, WeightSeq::ones(), 0.2, 0.01, eps0, N, 64, 7);
    CHECK(v.value >= 0.0);
    CHECK(v.value <= 10.0 * std::pow(Nd, -6.0 + 3.0 + 0.2) * (0.01 + 1.0 / Nd));
    auto wide = variance_integral(3.0, WeightSeq::ones(), 0.2, 0.02, eps0, N, 64, 7);
    CHECK(wide.value >= v.value);
    CHECK(wide.value <= 10.0 * std::pow(Nd, -6.0 + 3.0 + 0.2) * (0.02 + 1.0 / Nd));
    CHECK_THROWS_AS(variance_integral(3.0, WeightSeq::ones(), 0.2, 0.01, 0.0, N, 64, 7), ValidationError);
    CHECK_THROWS_AS(variance_integral(2.0, WeightSeq::ones(), 0.2, 0.01, eps0, N, 64, 7), ValidationError);
    CHECK_THROWS_AS(variance_integral(3.0, WeightSeq::ones(), 0.2, 0.01, eps0, 4, 64, 7), ValidationError);
}

}
