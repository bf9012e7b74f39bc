#include "weyl/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace weyl::oracle {

std::uint64_t rep_count(int d, i128 k, std::uint64_t N) {
    std::vector<i128> p(N + 1);
    for (std::uint64_t n = 1; n <= N; ++n) {
        p[n] = 1;
        for (int i = 0; i < d; ++i) p[n] *= static_cast<i128>(n);
    }
    std::uint64_t c = 0;
    for (std::uint64_t a = 1; a <= N; ++a)
        for (std::uint64_t b = 1; b <= N; ++b)
            for (std::uint64_t e = 1; e <= N; ++e) {
                i128 partial = p[a] + p[b] - p[e] - k;
                for (std::uint64_t f = 1; f <= N; ++f) c += partial == p[f];
            }
    return c;
}

std::uint64_t q_count(std::int64_t k, std::int64_t m, std::uint64_t N) {
    std::uint64_t c = 0;
    auto n = static_cast<std::int64_t>(N);
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t b = 1; b <= n; ++b)
            for (std::int64_t e = 1; e <= n; ++e)
                for (std::int64_t f = 1; f <= n; ++f)
                    c += (a + b - e - f == k) && (a * a + b * b - e * e - f * f == m);
    return c;
}

std::uint64_t quartic_shift_count(i128 k, std::uint64_t N) {
    std::uint64_t c = 0;
    auto q = [](std::uint64_t x) { return static_cast<i128>(x) * x * x * x; };
    for (std::uint64_t a = 1; a <= N; ++a)
        for (std::uint64_t b = 1; b <= N; ++b)
            for (std::uint64_t e = 1; e <= N; ++e)
                for (std::uint64_t f = 1; f <= N; ++f) c += q(a) - q(b) - q(e) + q(f) == k;
    return c;
}

double discrepancy(const std::vector<double>& points) {
    const double N = static_cast<double>(points.size());
    std::vector<double> ends{0.0, 1.0};
    ends.insert(ends.end(), points.begin(), points.end());
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    // side -1: endpoint approached from below, 0: exactly, +1: from above.
    double best = 0.0;
    for (double a : ends)
        for (double b : ends) {
            if (b < a) continue;
            for (int sa = -1; sa <= 1; ++sa)
                for (int sb = -1; sb <= 1; ++sb) {
                    if (a == 0.0 && sa < 0) continue;
                    if (b == 1.0 && sb > 0) continue;
                    if (a == b && sa >= sb) continue;  // empty or degenerate
                    std::uint64_t count = 0;
                    for (double p : points) {
                        bool above = p > a || (p == a && sa < 0);
                        bool below = p < b || (p == b && sb > 0);
                        count += above && below;
                    }
                    best = std::max(best, std::fabs(static_cast<double>(count) - (b - a) * N));
                }
        }
    return best;
}

}  // namespace weyl::oracle
