#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "weyl/budget.hpp"
#include "weyl/core.hpp"

namespace weyl {

// [start, start + length) on the torus.
struct Interval {
    double start = 0.0;
    double length = 1.0;

    static Interval make(double start, double length);
    double end() const { return start + length; }
};

struct Box {
    std::vector<Interval> sides;
    double volume() const;
};

struct MomentResult {
    double total = 0.0;
    double diagonal = 0.0;
    cplx offdiag{0.0, 0.0};
    int nu = 1;
    std::uint64_t n_terms = 0;
    std::uint64_t spectrum_size = 0;  // distinct frequencies after collapsing
};

struct MomentRatio {
    MomentResult moment;
    double ratio = 0.0;
};

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
};

struct VarianceResult {
    double value = 0.0;
    double stderr_ = 0.0;
    double eps0 = 0.0;
    double eps1 = 0.0;
    std::uint64_t samples = 0;
};

// Monomial n^d (integer d) or power n^gamma.
struct SumFamily {
    enum class Kind { monomial, power };
    Kind kind = Kind::monomial;
    double exponent = 2.0;

    static SumFamily monomial(int d);
    static SumFamily power(double gamma);
    Phase phase(double x) const;
    double frequency(std::uint64_t n) const;
};

enum class SumRange { one_to_n, n_to_2n, upper_half };

// Frequencies y_m and coefficients beta_m of sum_m beta_m e(x y_m), collapsed so
// that equal frequencies share one coefficient.
class MomentKernel {
public:
    MomentKernel(std::span<const double> y, std::span<const cplx> beta, double collapse_tol,
                 const Budget& budget);

    // integral over I of |sum_m beta_m e(x y_m)|^2.
    MomentResult integrate(const Interval& I, int nu_tag = 1) const;

    std::size_t size() const { return y_.size(); }
    const std::vector<double>& freqs() const { return y_; }
    const std::vector<cplx>& coeffs() const { return c_; }

private:
    std::vector<double> y_;
    std::vector<cplx> c_;
    std::uint64_t n_terms_ = 0;
};

// Collapse tolerance for frequencies y integrated over intervals of length delta.
double collapse_tolerance(std::span<const double> y, double delta);

// Pair spectrum {y_i + y_j, beta_i beta_j} over ordered pairs, collapsed.
void pair_spectrum(std::span<const double> y, std::span<const cplx> beta, std::vector<double>& out_y,
                   std::vector<cplx>& out_c, const Budget& budget);

// integral over I of |sum_m beta_m e(x y_m)|^(2 nu), nu in {1, 2}.
MomentResult exact_moment(std::span<const double> y, std::span<const cplx> beta, const Interval& I,
                          int nu, const Budget& budget = Budget::from_env());

// Frequencies and weights of the family over the chosen n range.
void family_terms(const SumFamily& f, const WeightSeq& w, std::uint64_t N, SumRange range,
                  std::vector<double>& y, std::vector<cplx>& beta);

// Second moment, ratio = total / (|I| * #terms).
MomentRatio second_moment_interval(const SumFamily& f, const WeightSeq& w, const Interval& I,
                                   std::uint64_t N, SumRange range = SumRange::one_to_n,
                                   const Budget& budget = Budget::from_env());

// Fourth moment of sigma_d over I, ratio = total / (2 |I| N^2).
MomentRatio fourth_moment_interval(int d, const WeightSeq& w, const Interval& I, std::uint64_t N,
                                   const Budget& budget = Budget::from_env());

// integral over I1 x I2 of |sum_n a_n e(x1 n + x2 n^2)|^4.
MomentResult quadratic_pair_moment(const Interval& I1, const Interval& I2, const WeightSeq& w,
                                   std::uint64_t N, const Budget& budget = Budget::from_env());

// Monte Carlo estimate of the 2 nu-th moment of the family sum over I.
McEstimate mc_moment(const SumFamily& f, const WeightSeq& w, const Interval& I, std::uint64_t N,
                     int nu, std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

// Same over a box for the full polynomial sum S_d, d = number of sides.
McEstimate mc_moment(const Box& box, const WeightSeq& w, std::uint64_t N, int nu,
                     std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

// integral over x0 in [x1, x1+eps1] of (integral over [x0, x0+eps0] of |S|^2 - eps0 (N-M))^2,
// S = sum_{M<n<=N} a_n e(x n^gamma), M = floor(N/2). Outer integral by Monte Carlo.
VarianceResult variance_integral(double gamma, const WeightSeq& w, double x1, double eps1,
                                 double eps0, std::uint64_t N, std::uint64_t samples,
                                 std::uint64_t seed, const Budget& budget = Budget::from_env());

// Uniform doubles in [0, 1) from a seeded 64-bit generator.
class UnitRng {
public:
    explicit UnitRng(std::uint64_t seed);
    double next();
    std::uint64_t next_u64();

private:
    std::mt19937_64 gen_;
};

}  // namespace weyl
