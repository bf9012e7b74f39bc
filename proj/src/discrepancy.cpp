#include "weyl/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weyl/error.hpp"

namespace weyl {

namespace {

void check_points(const std::vector<double>& p) {
    require(!p.empty(), "discrepancy needs at least one point");
    for (double v : p) require(std::isfinite(v) && v >= 0.0 && v < 1.0, "points must lie in [0, 1)");
}

}  // namespace

// Two one-sided statistics over the sorted distinct values v_1 < ... < v_m:
//  excess: count in [v_i, v_j] minus (v_j - v_i) N; points at 0 cannot be
//          covered by an open interval inside [0, 1], so v_i > 0;
//  deficit: (q_j - q_i) N minus count in (q_i, q_j) for q in {0, v, 1}.
DiscrepancyResult disc_exact(std::vector<double> points, bool verify) {
    check_points(points);
    const double N = static_cast<double>(points.size());
    std::sort(points.begin(), points.end());
    std::vector<double> v;
    std::vector<double> below, upto;  // #points < v_k, #points <= v_k
    for (std::size_t i = 0; i < points.size();) {
        std::size_t j = i;
        while (j < points.size() && points[j] == points[i]) ++j;
        v.push_back(points[i]);
        below.push_back(static_cast<double>(i));
        upto.push_back(static_cast<double>(j));
        i = j;
    }
    DiscrepancyResult best;
    best.value = -1.0;
    auto offer = [&](double val, double a, double b, bool closed) {
        if (val > best.value) best = {val, a, b, closed};
    };
    // excess: max over i <= j of (upto_j - N v_j) - (below_i - N v_i)
    {
        double lo = 0.0;
        std::size_t arg = 0;
        bool have = false;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0.0) continue;
            double bj = below[j] - N * v[j];
            if (!have || bj < lo) lo = bj, arg = j, have = true;
            double val = (upto[j] - N * v[j]) - lo;
            offer(val, v[arg], v[j], true);
        }
    }
    // deficit over q in {0, v..., 1}; count in (q_i, q_j) = below(q_j) - upto(q_i)
    {
        std::vector<double> q{0.0}, qb{0.0}, qu{0.0};
        std::size_t start = 0;
        if (!v.empty() && v[0] == 0.0) qu[0] = upto[0], start = 1;
        for (std::size_t k = start; k < v.size(); ++k) q.push_back(v[k]), qb.push_back(below[k]), qu.push_back(upto[k]);
        q.push_back(1.0), qb.push_back(N), qu.push_back(N);
        double lo = qu[0] - N * q[0];
        std::size_t arg = 0;
        for (std::size_t j = 1; j < q.size(); ++j) {
            double val = (N * q[j] - qb[j]) + lo;
            offer(val, q[arg], q[j], false);
            double cand = qu[j] - N * q[j];
            if (cand > lo) lo = cand, arg = j;
        }
    }
    // Recompute the reported value from its endpoints.
    if (best.closed) {
        auto cnt = std::upper_bound(points.begin(), points.end(), best.b) -
                   std::lower_bound(points.begin(), points.end(), best.a);
        best.value = static_cast<double>(cnt) - (best.b - best.a) * N;
    } else {
        auto cnt = std::lower_bound(points.begin(), points.end(), best.b) -
                   std::upper_bound(points.begin(), points.end(), best.a);
        best.value = (best.b - best.a) * N - static_cast<double>(cnt);
    }
    if (verify) {
        double sweep = disc_sweep(points);
        if (std::fabs(sweep - best.value) > 1e-9 * std::max(1.0, N))
            throw std::logic_error("discrepancy disagrees with the endpoint sweep");
    }
    return best;
}

double disc_sweep(std::vector<double> points) {
    check_points(points);
    const double N = static_cast<double>(points.size());
    std::sort(points.begin(), points.end());
    std::vector<double> ends{0.0};
    for (double p : points)
        if (p != ends.back()) ends.push_back(p);
    ends.push_back(1.0);
    double best = 0.0;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        double a = ends[i];
        // counts of points in [a, b] and (a, b) as b sweeps right
        auto lo_closed = std::lower_bound(points.begin(), points.end(), a) - points.begin();
        auto lo_open = std::upper_bound(points.begin(), points.end(), a) - points.begin();
        std::size_t p = static_cast<std::size_t>(lo_closed);
        for (std::size_t j = i; j < ends.size(); ++j) {
            double b = ends[j];
            while (p < points.size() && points[p] <= b) ++p;
            double in_closed = static_cast<double>(p) - static_cast<double>(lo_closed);
            auto strict_end = std::lower_bound(points.begin(), points.end(), b) - points.begin();
            double in_open = std::max(0.0, static_cast<double>(strict_end - lo_open));
            double len = (b - a) * N;
            if (a > 0.0) best = std::max(best, in_closed - len);
            if (j > i) best = std::max(best, len - in_open);
        }
    }
    return best;
}

DiscrepancyResult disc_for_phase(const PhaseVector& x, std::uint64_t N) {
    require(N >= 1, "N must be >= 1");
    std::vector<double> pts(N);
    for (std::uint64_t n = 1; n <= N; ++n) pts[n - 1] = phase_eval(x, n);
    return disc_exact(std::move(pts));
}

KoksmaProbe koksma_probe(const PhaseVector& x, std::uint64_t N) {
    KoksmaProbe k;
    k.sum_abs = std::abs(weyl_sum(x, WeightSeq::ones(), N).value);
    k.discrepancy = disc_for_phase(x, N).value;
    require(k.discrepancy > 0.0, "discrepancy vanished");
    k.ratio = k.sum_abs / k.discrepancy;
    return k;
}

}  // namespace weyl
