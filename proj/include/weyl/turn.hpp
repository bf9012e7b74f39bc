#pragma once

// Fixed-point angles: one full turn is 2^128, so wrapping u128 arithmetic is
// arithmetic modulo 1.

#include <complex>
#include <cstdint>

namespace weyl {

using u128 = unsigned __int128;
using i128 = __int128;
using turn_t = u128;
using cplx = std::complex<double>;

// frac(x * m) as a turn. Exact when x has at most 128 fractional bits,
// otherwise truncated below 2^-128.
turn_t turn_mul(double x, u128 m);

// frac(x) as a turn.
turn_t turn_of(double x);

// frac(x * y) for real y, using an error-free product.
turn_t turn_mul_real(double x, double y);

// r / q as a turn, 0 <= r < q.
turn_t turn_ratio(std::uint64_t r, std::uint64_t q);

// Value in [0, 1).
double turn_to_unit(turn_t t);

// Value in [-1/2, 1/2).
double turn_to_signed(turn_t t);

// e(t) = exp(2 pi i t).
cplx expi(turn_t t);

// e(x) for a double.
cplx expi(double x);

// n^d, or throws RangeError when n^d >= 2^127.
u128 checked_pow(std::uint64_t n, int d);

}  // namespace weyl
