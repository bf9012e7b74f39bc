#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "weyl/core.hpp"
#include "weyl/moment.hpp"

namespace weyl {

struct ScanThresholds {
    double c = 0.0;
    double C = 1.0;
    double alpha1 = 1.0;
    double alpha2 = 2.0;
};

// (alpha1 - c^2 - alpha2 / C^2) / C^2; may be <= 0.
double epsilon0(const ScanThresholds& t);

// monomial: sigma_d(x) = sum a_n e(x n^d) over an interval;
// full: S_d(x_1..x_d) over a box with d sides.
struct ScanKind {
    enum class Kind { monomial, full };
    Kind kind = Kind::monomial;
    int d = 2;

    static ScanKind monomial(int d);
    static ScanKind full(int d);
    std::size_t dims() const { return kind == Kind::full ? static_cast<std::size_t>(d) : 1; }
};

// Equispaced grid of about `grid` points with one seeded offset per side;
// a box side gets ceil(grid^{1/D}) points.
std::vector<std::vector<double>> scan_grid(const Box& region, std::uint64_t grid, std::uint64_t seed);

struct LadderReport {
    std::vector<std::uint64_t> Ns;
    std::vector<std::uint64_t> masks;  // bit i set when c sqrt(N_i) <= |S| <= C sqrt(N_i)
    std::vector<double> fractions;     // per N
    double union_fraction = 0.0;
    std::vector<double> tail_union;  // tail_union[M]: hit at some N_i with i >= M
};

LadderReport ladder_stats(const ScanKind& kind, const WeightSeq& w, std::span<const std::vector<double>> points,
                          std::span<const std::uint64_t> Ns, double c, double C, unsigned threads = 0);
LadderReport ladder_stats(const ScanKind& kind, const WeightSeq& w, const Box& region,
                          std::span<const std::uint64_t> Ns, double c, double C, std::uint64_t grid,
                          std::uint64_t seed, unsigned threads = 0);
LadderReport ladder_stats(const ScanKind& kind, const WeightSeq& w, const Interval& region,
                          std::span<const std::uint64_t> Ns, double c, double C, std::uint64_t grid,
                          std::uint64_t seed, unsigned threads = 0);

// Fraction of grid points with c sqrt(N) <= |sum| <= C sqrt(N); grid >= 1000.
double indicator_fraction(const ScanKind& kind, const WeightSeq& w, const Box& region, std::uint64_t N,
                          double c, double C, std::uint64_t grid, std::uint64_t seed = 0, unsigned threads = 0);
double indicator_fraction(const ScanKind& kind, const WeightSeq& w, const Interval& region, std::uint64_t N,
                          double c, double C, std::uint64_t grid, std::uint64_t seed = 0, unsigned threads = 0);

struct CounterexampleA {
    double bound = 0.0;         // (2/9)(sum_{n<=n_max} n^-2 + 1/n_max)
    double series_limit = 0.0;  // 2 pi^2 / 54
    int generations = 0;        // generations enumerated inside the probe
    double lower = 0.0;         // measure of the enumerated union inside the probe
    double upper = 0.0;         // lower plus the bound on later generations
    double density_lower = 0.0;
    double density_upper = 0.0;
    double log_scale = 0.0;  // (log 1/delta)^-2
    std::optional<int> bracket_n;  // 3^-n n^3 <= delta < 3^{-n+1} (n-1)^3
    std::uint64_t bracket_fractions = 0;  // a/3^n inside the probe for that n
};

CounterexampleA counterexample_A(int n_max, const Interval& probe);

}  // namespace weyl
