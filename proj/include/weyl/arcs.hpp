#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "weyl/turn.hpp"

namespace weyl {

// x = a/q + xi with gcd(a, q) = 1.
struct RationalApprox {
    std::int64_t a = 0;
    std::int64_t q = 1;
    double xi = 0.0;
};

// Last continued-fraction convergent of x with denominator <= qmax.
RationalApprox cf_approx(double x, std::int64_t qmax);

// integral_0^N e(xi_1 t + ... + xi_d t^d) dt by composite Simpson.
cplx oscillatory_integral(std::span<const double> xi, double N,
                          std::uint64_t max_nodes = 200'000'000);

// sum_{n=1}^q e(a n^d / q).
cplx gauss_sum(std::int64_t a, std::int64_t q, int d);

// sum_{n=1}^q e((a_1 n + ... + a_d n^d) / q).
cplx complete_sum(std::span<const std::int64_t> a, std::int64_t q);

// sum_{n=1}^N e((a/q + xi) n^d), summed term by term with a n^d reduced mod q exactly.
cplx rational_point_sum(std::int64_t a, std::int64_t q, double xi, int d, std::uint64_t N);

struct ArcMain {
    cplx main{0.0, 0.0};
    double error_budget = 0.0;
    bool valid = true;
};

// (1/q) sigma_d(a/q; q) integral_0^N e(xi t^d) dt, budget q^(1/2) (1 + |xi| N^d)^(1/2).
ArcMain vaughan_approx(const RationalApprox& r, int d, std::uint64_t N);

struct BakerPoint {
    std::vector<std::int64_t> a;  // a_1..a_d
    std::int64_t q = 1;
    std::vector<double> xi;       // xi_1..xi_d
    std::int64_t D = 1;           // gcd(a_2, ..., a_d, q)
};

// Nearest multiples of 1/q for each coefficient of x.
BakerPoint baker_point(std::span<const double> x, std::int64_t q);

// Same from explicit numerators and offsets.
BakerPoint baker_point(std::vector<std::int64_t> a, std::int64_t q, std::vector<double> xi);

// (1/q) S_d(a/q; q) integral_0^N e(sum xi_i t^i) dt, budget q^(1 - 1/d) D^(1/d).
// valid iff |xi_i| <= 1 / (2 d^2 q N^(i-1)) for all i.
ArcMain baker_approx(const BakerPoint& p, std::uint64_t N);

struct ArcRow {
    double x = 0.0;
    RationalApprox approx;
    bool major = false;
    double direct_abs = 0.0;
    std::optional<double> residual_ratio;  // |direct - main| / budget on major arcs
};

// Classify each x for sigma_d(x; N); q_limit 0 means floor(sqrt(N)).
std::vector<ArcRow> major_arc_scan(int d, std::uint64_t N, std::span<const double> grid,
                                   std::int64_t q_limit = 0, unsigned threads = 0);

}  // namespace weyl
