#pragma once

#include <cstdint>
#include <vector>

#include "weyl/core.hpp"

namespace weyl {

struct DiscrepancyResult {
    double value = 0.0;
    // Attaining pair: the closed interval [a, b] when `closed` (approached from
    // outside), otherwise the open gap (a, b).
    double a = 0.0;
    double b = 1.0;
    bool closed = false;
};

// sup over open (a, b) in [0, 1] of |#{points in (a, b)} - (b - a) N|.
// With verify set, the O(N^2) endpoint sweep is also run and must agree.
DiscrepancyResult disc_exact(std::vector<double> points, bool verify = false);

// O(N^2) sweep over endpoint pairs.
double disc_sweep(std::vector<double> points);

// Discrepancy of frac(x_1 n + ... + x_d n^d), n = 1..N.
DiscrepancyResult disc_for_phase(const PhaseVector& x, std::uint64_t N);

struct KoksmaProbe {
    double sum_abs = 0.0;
    double discrepancy = 0.0;
    double ratio = 0.0;
};

// |S_d(x; N)| / D_d(x; N) with unit weights.
KoksmaProbe koksma_probe(const PhaseVector& x, std::uint64_t N);

}  // namespace weyl
