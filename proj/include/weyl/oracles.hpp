#pragma once

// Brute-force references used by the tests and the acceptance panel. None of
// these share code with the routines they check.

#include <cstdint>
#include <vector>

#include "weyl/turn.hpp"

namespace weyl::oracle {

// #{n1^d + n2^d - n3^d - n4^d = k} by enumerating all N^4 quadruples.
std::uint64_t rep_count(int d, i128 k, std::uint64_t N);

// #{x1 + x2 - x3 - x4 = k, x1^2 + x2^2 - x3^2 - x4^2 = m} by enumeration.
std::uint64_t q_count(std::int64_t k, std::int64_t m, std::uint64_t N);

// #{x1^4 - x2^4 - x3^4 + x4^4 = k} by enumeration.
std::uint64_t quartic_shift_count(i128 k, std::uint64_t N);

// Supremum over open (a, b) in [0, 1] of |#{points in (a, b)} - (b - a) N|,
// taken over every pair of endpoints from {0, 1, points} approached from each side.
double discrepancy(const std::vector<double>& points);

}  // namespace weyl::oracle
