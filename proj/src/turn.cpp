#include "weyl/turn.hpp"

#include <cmath>
#include <numbers>

#include "weyl/error.hpp"

namespace weyl {

namespace {

// Low 128 bits of (w2:w1:w0) >> s.
u128 shift_down_192(std::uint64_t w2, std::uint64_t w1, std::uint64_t w0, int s) {
    if (s >= 192) return 0;
    std::uint64_t limb[3] = {w0, w1, w2};
    int skip = s / 64, bits = s % 64;
    std::uint64_t out[2] = {0, 0};
    for (int i = 0; i < 2; ++i) {
        int j = i + skip;
        std::uint64_t lo = j < 3 ? limb[j] : 0;
        std::uint64_t hi = j + 1 < 3 ? limb[j + 1] : 0;
        out[i] = bits == 0 ? lo : (lo >> bits) | (hi << (64 - bits));
    }
    return (u128(out[1]) << 64) | out[0];
}

}  // namespace

turn_t turn_mul(double x, u128 m) {
    if (!std::isfinite(x)) throw ValidationError("non-finite phase coefficient");
    if (x == 0.0 || m == 0) return 0;
    int E = 0;
    double f = std::frexp(std::fabs(x), &E);
    auto M = static_cast<std::uint64_t>(std::ldexp(f, 53));
    int shift = E - 53 + 128;
    u128 r;
    if (shift >= 0) {
        r = shift >= 128 ? u128{0} : (u128(M) * m) << shift;
    } else {
        auto ml = static_cast<std::uint64_t>(m);
        auto mh = static_cast<std::uint64_t>(m >> 64);
        u128 plo = u128(M) * ml;
        u128 phi = u128(M) * mh;
        u128 mid = (plo >> 64) + static_cast<std::uint64_t>(phi);
        auto w0 = static_cast<std::uint64_t>(plo);
        auto w1 = static_cast<std::uint64_t>(mid);
        auto w2 = static_cast<std::uint64_t>(phi >> 64) + static_cast<std::uint64_t>(mid >> 64);
        r = shift_down_192(w2, w1, w0, -shift);
    }
    return x < 0 ? -r : r;
}

turn_t turn_of(double x) { return turn_mul(x, 1); }

turn_t turn_mul_real(double x, double y) {
    double p = x * y;
    if (!std::isfinite(p)) throw ValidationError("non-finite phase");
    double err = std::fma(x, y, -p);
    return turn_of(p) + turn_of(err);
}

turn_t turn_ratio(std::uint64_t r, std::uint64_t q) {
    require(q > 0 && r < q, "turn_ratio needs 0 <= r < q");
    u128 a = u128(r) << 64;
    u128 q1 = a / q;
    u128 rem = a % q;
    u128 q0 = (rem << 64) / q;
    return (q1 << 64) | q0;
}

double turn_to_unit(turn_t t) {
    double v = std::ldexp(static_cast<double>(t), -128);
    return v >= 1.0 ? 0.0 : v;
}

double turn_to_signed(turn_t t) {
    return std::ldexp(static_cast<double>(static_cast<i128>(t)), -128);
}

cplx expi(turn_t t) {
    double a = 2.0 * std::numbers::pi * turn_to_signed(t);
    return {std::cos(a), std::sin(a)};
}

cplx expi(double x) { return expi(turn_of(x)); }

u128 checked_pow(std::uint64_t n, int d) {
    require(d >= 0, "negative exponent");
    const u128 limit = (u128(1) << 127) - 1;
    u128 r = 1;
    for (int i = 0; i < d; ++i) {
        if (n != 0 && r > limit / n) throw RangeError("n^d exceeds 2^127");
        r *= n;
    }
    return r;
}

}  // namespace weyl
