#include <doctest.h>

#include <cmath>

#include "weyl/dims.hpp"
#include "weyl/error.hpp"

using namespace weyl;
using namespace weyl::dims;

TEST_SUITE("dims") {

TEST_CASE("theta") {
    CHECK(theta(1, 0.5) == 0.0);
    CHECK(theta(3, 0.5) == 2.0);
    CHECK(theta(1, 0.75) == 1.0);
    CHECK_THROWS_AS(theta(1, 1.0), ValidationError);
}

TEST_CASE("s_dim values") {
    CHECK(s_dim(2, 0.5) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s_dim(2, 0.6) == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(s_dim(2, 0.9) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(s_dim(2, 1.0) == 0.0);
    CHECK_THROWS_AS(s_dim(2, 0.4), ValidationError);
    CHECK_THROWS_AS(s_dim(1, 0.6), ValidationError);
}

TEST_CASE("u_dim values") {
    CHECK(u_dim(2, 0.5) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(u_dim(2, 0.6) == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(u_dim(2, 1.0) == 0.0);
    for (int d = 2; d <= 12; ++d) CHECK(u_dim(d, 0.5) == doctest::Approx(double(d)).epsilon(1e-12));
}

TEST_CASE("s_half") {
    CHECK(s_half(2) == doctest::Approx(2.0));
    CHECK(s_half(3) == doctest::Approx(7.0 / 3.0));
    double r = s_half(10000) / std::sqrt(20000.0);
    CHECK(r >= 0.98);
    CHECK(r <= 1.05);
    for (int d = 2; d <= 8; ++d) CHECK(s_half(d) == doctest::Approx(s_dim(d, 0.5)).epsilon(1e-12));
}

TEST_CASE("piecewise forms, ordering and monotonicity") {
    double prev_s = 1e9, prev_u = 1e9;
    for (int i = 50; i < 100; ++i) {
        double a = i / 100.0;
        double s = s_dim(2, a), u = u_dim(2, a);
        CHECK(std::fabs(s - s2_piecewise(a)) <= 1e-12);
        CHECK(std::fabs(u - u2_piecewise(a)) <= 1e-12);
        if (i > 50) CHECK(s < u);
        CHECK(s <= prev_s + 1e-15);
        CHECK(u <= prev_u + 1e-15);
        prev_s = s, prev_u = u;
    }
    CHECK(s2_piecewise(5.0 / 6.0) == doctest::Approx(1.0));
    CHECK(6.0 * (1.0 - 5.0 / 6.0) == doctest::Approx(1.0));
    CHECK(u2_piecewise(6.0 / 7.0) == doctest::Approx(1.0));
    CHECK(8.0 * (1.0 - 6.0 / 7.0) / (2.0 - 6.0 / 7.0) == doctest::Approx(1.0));
    for (double a : {0.5, 0.6, 5.0 / 6.0, 6.0 / 7.0}) {
        CHECK(s_dim(2, a) == doctest::Approx(s2_piecewise(a)).epsilon(1e-14));
        CHECK(u_dim(2, a) == doctest::Approx(u2_piecewise(a)).epsilon(1e-14));
    }
    for (int d : {3, 5}) {
        double ps = 1e9, pu = 1e9;
        for (int i = 50; i <= 99; ++i) {
            double a = i / 100.0;
            double total = 0.0;
            for (int k = 1; k <= d; ++k) total += theta(k, a);
            if (total < 1.0) continue;
            CHECK(s_dim(d, a) <= ps + 1e-15);
            CHECK(u_dim(d, a) <= pu + 1e-15);
            ps = s_dim(d, a), pu = u_dim(d, a);
        }
    }
}

TEST_CASE("other exponents") {
    CHECK(monomial_conj_dim(2, 0.5) == 1.0);
    CHECK(monomial_conj_dim(4, 0.75) == 0.25);
    CHECK(monomial_conj_dim(3, 1.0) == 0.0);
    CHECK(jb_dim(2.0) == 1.0);
    CHECK(jb_dim(4.0) == 0.5);
    CHECK_THROWS_AS(jb_dim(1.5), ValidationError);
    double alpha = 0.7, d = 3, eps = 1e-9;
    CHECK(jb_dim(d / (2 * (1 - alpha)) + d * eps) == doctest::Approx(monomial_conj_dim(3, alpha)).epsilon(1e-6));
    auto b3 = theorem_bounds(3.0);
    CHECK(*b3.general == doctest::Approx(5.0 / 6.0));
    CHECK(*b3.quadratic == doctest::Approx(2.0 / 3.0));
    auto b15 = theorem_bounds(1.5);
    CHECK_FALSE(b15.general.has_value());
    CHECK(*b15.quadratic == doctest::Approx(1.0 / 3.0));
    auto b2 = theorem_bounds(2.0);
    CHECK_FALSE(b2.general.has_value());
    CHECK(*b2.quadratic == doctest::Approx(0.5));
    CHECK(mean_value_exponent(2) == 3);
    CHECK(mean_value_exponent(3) == 6);
    CHECK(mean_value_exponent(10) == 55);
}

}
