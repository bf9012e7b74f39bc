#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "weyl/turn.hpp"

namespace weyl {

// Coefficients x_1..x_d of x_1 n + ... + x_d n^d, each in [0, 1).
class PhaseVector {
public:
    explicit PhaseVector(std::vector<double> coeffs);
    int degree() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

private:
    std::vector<double> coeffs_;
};

// x n^d.
struct MonomialPhase {
    double x = 0.0;
    int degree = 1;
};

// x n^gamma for real gamma > 1, or xi n log n + x n.
struct GeneralPhase {
    enum class Kind { power, n_log_n };
    Kind kind = Kind::power;
    double x = 0.0;
    double param = 2.0;  // gamma, or xi for n_log_n

    static GeneralPhase power(double x, double gamma);
    static GeneralPhase n_log_n(double xi, double x);
};

using Phase = std::variant<PhaseVector, MonomialPhase, GeneralPhase>;

// Unimodular weights a_n: a base sequence times e(c_1 n + c_2 n^2 + ...).
class WeightSeq {
public:
    enum class Base { ones, random_phase };

    static WeightSeq ones();
    static WeightSeq random_phase(std::uint64_t seed);

    // b_n = a_n e(c_1 n + ... + c_k n^k), with c = twist.
    WeightSeq twisted(const std::vector<double>& twist) const;

    Base base() const { return base_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& twist() const { return twist_; }
    bool is_ones() const { return base_ == Base::ones && twist_.empty(); }

    turn_t phase(std::uint64_t n) const;
    cplx operator()(std::uint64_t n) const { return expi(phase(n)); }

private:
    Base base_ = Base::ones;
    std::uint64_t seed_ = 0;
    std::vector<double> twist_;  // twist_[i] multiplies n^(i+1)
};

struct SumValue {
    cplx value;
    std::uint64_t n_terms = 0;
};

struct PrefixMax {
    double max_abs = 0.0;
    std::uint64_t argmax = 0;
};

// frac(f(n)) as a turn; polynomial phases are exact.
turn_t phase_turn(const Phase& phase, std::uint64_t n);

// frac(f(n)) in [0, 1).
double phase_eval(const Phase& phase, std::uint64_t n);

// sum_{n=1}^N a_n e(f(n)).
SumValue weyl_sum(const Phase& phase, const WeightSeq& weights, std::uint64_t N);

// sum_{n=lo}^{hi} a_n e(f(n)).
SumValue weyl_range_sum(const Phase& phase, const WeightSeq& weights, std::uint64_t lo,
                        std::uint64_t hi);

// max over 1 <= M <= N of |sum_{n<=M}|, earliest M on ties.
PrefixMax prefix_max(const Phase& phase, const WeightSeq& weights, std::uint64_t N);

// Reseed period of the rotor recurrence for degree d.
std::uint64_t rotor_period(int d);

// S_d(x; N) for every x in the grid via the difference-table recurrence.
std::vector<SumValue> batch_eval(std::span<const PhaseVector> grid, const WeightSeq& weights,
                                 std::uint64_t N, unsigned threads = 0);

// Prefix maxima of the same sums.
std::vector<PrefixMax> batch_prefix_max(std::span<const PhaseVector> grid,
                                        const WeightSeq& weights, std::uint64_t N,
                                        unsigned threads = 0);

// |S|/sqrt(N) at each of several N, computed in one pass up to max(Ns).
// Ns ascending.
std::vector<std::vector<double>> batch_ladder(std::span<const PhaseVector> grid,
                                              const WeightSeq& weights,
                                              std::span<const std::uint64_t> Ns,
                                              unsigned threads = 0);

struct FlatDemo {
    double ratio = 0.0;   // max |S|/sqrt(N)
    double argmax_x = 0.0;
};

// max over x = j/grid of |sum_{n<=N} e(xi n log n + x n)| / sqrt(N).
FlatDemo flat_sum_demo(double xi, std::uint64_t N, std::uint64_t grid, unsigned threads = 0);

}  // namespace weyl
