#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "weyl/budget.hpp"
#include "weyl/turn.hpp"

namespace weyl {

struct RepCount {
    std::uint64_t total = 0;
    std::uint64_t diagonal = 0;
    std::uint64_t nondiagonal = 0;
};

// 2N^2 - N.
std::uint64_t diagonal_count(std::uint64_t N);

// Sorted spectrum of n1^d + n2^d over ordered pairs in [1, N]^2, with multiplicities.
class PowerSumSpectrum {
public:
    PowerSumSpectrum(int d, std::uint64_t N, const Budget& budget = Budget::from_env());

    int degree() const { return d_; }
    std::uint64_t N() const { return N_; }
    std::size_t distinct() const;

    // R_d(k, N) = #{n1^d + n2^d - n3^d - n4^d = k}.
    RepCount count(i128 k) const;

    // Attained nonzero difference s - s' closest to target (target > 0).
    i128 nearest_attained(i128 target) const;

private:
    int d_;
    std::uint64_t N_;
    std::variant<std::vector<std::uint64_t>, std::vector<u128>> values_;
    std::vector<std::uint32_t> mult_;
};

RepCount r_count(int d, i128 k, std::uint64_t N, const Budget& budget = Budget::from_env());

// #{n1 + n2 = n3 + n4 + k, n1^2 + n2^2 = n3^2 + n4^2 + m}; diagonal = multiset-equal quadruples.
RepCount q_count(std::int64_t k, std::int64_t m, std::uint64_t N,
                 const Budget& budget = Budget::from_env());

struct PowerPairs {
    std::uint64_t count = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (m, n), m^d - n^d = k
};

// Solutions of m^d - n^d = k in [1, N]^2 for k != 0.
PowerPairs power_pair_count(int d, i128 k, std::uint64_t N);

struct ProfileRow {
    i128 k = 0;
    RepCount count;
};

struct NondiagProfile {
    std::vector<ProfileRow> rows;
    std::uint64_t max_nondiag = 0;
    i128 argmax_k = 0;
    std::optional<double> exponent;  // log(max) / log(N), empty when every count is 0
};

NondiagProfile nondiag_profile(const PowerSumSpectrum& spectrum, std::span<const i128> ks);

// Stratified log-uniform sample of shifts 1 <= |k| <= 2N^d with alternating signs.
// With snap, each sample moves to the closest attained nonzero shift.
std::vector<i128> sample_shifts(const PowerSumSpectrum& spectrum, std::size_t count, std::uint64_t seed,
                                bool snap);

// #{x1^4 - x2^4 = x3^4 - x4^4 + k}, via the spectrum of differences a^4 - b^4.
std::uint64_t quartic_shift_count(i128 k, std::uint64_t N, const Budget& budget = Budget::from_env());

}  // namespace weyl
