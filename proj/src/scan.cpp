#include "weyl/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weyl/error.hpp"

namespace weyl {

namespace {

double frac(double x) { return x - std::floor(x); }

Box as_box(const Interval& I) { return Box{{I}}; }

PhaseVector to_phase(const ScanKind& k, const std::vector<double>& p) {
    require(p.size() == k.dims(), "point dimension does not match the sum kind");
    if (k.kind == ScanKind::Kind::full) {
        std::vector<double> c(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) c[i] = frac(p[i]);
        return PhaseVector(std::move(c));
    }
    std::vector<double> c(static_cast<std::size_t>(k.d), 0.0);
    c.back() = frac(p[0]);
    return PhaseVector(std::move(c));
}

void check_thresholds(double c, double C) {
    require(std::isfinite(c) && std::isfinite(C), "thresholds must be finite");
    require(c >= 0.0 && C > c, "thresholds need C > c >= 0");
}

}  // namespace

double epsilon0(const ScanThresholds& t) {
    require(t.C > 0.0, "C must be positive");
    double C2 = t.C * t.C;
    return (t.alpha1 - t.c * t.c - t.alpha2 / C2) / C2;
}

ScanKind ScanKind::monomial(int d) {
    require(d >= 1, "degree must be >= 1");
    return {Kind::monomial, d};
}

ScanKind ScanKind::full(int d) {
    require(d >= 1, "degree must be >= 1");
    return {Kind::full, d};
}

std::vector<std::vector<double>> scan_grid(const Box& region, std::uint64_t grid, std::uint64_t seed) {
    require(!region.sides.empty(), "region needs at least one side");
    require(grid >= 1, "grid must be positive");
    std::size_t D = region.sides.size();
    auto m = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(grid), 1.0 / static_cast<double>(D)) - 1e-9));
    m = std::max<std::uint64_t>(m, 1);
    UnitRng rng(seed);
    std::vector<double> off(D);
    for (auto& o : off) o = rng.next();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < D; ++i) {
        require(total <= (std::uint64_t{1} << 32) / m, "grid too large");
        total *= m;
    }
    std::vector<std::vector<double>> pts(total, std::vector<double>(D));
    for (std::uint64_t j = 0; j < total; ++j) {
        std::uint64_t r = j;
        for (std::size_t i = 0; i < D; ++i) {
            const Interval& s = region.sides[i];
            pts[j][i] = s.start + (static_cast<double>(r % m) + off[i]) / static_cast<double>(m) * s.length;
            r /= m;
        }
    }
    return pts;
}

LadderReport ladder_stats(const ScanKind& kind, const WeightSeq& w, std::span<const std::vector<double>> points,
                          std::span<const std::uint64_t> Ns, double c, double C, unsigned threads) {
    check_thresholds(c, C);
    require(!points.empty(), "no sample points");
    require(!Ns.empty() && Ns.size() <= 64, "ladder needs 1 to 64 rungs");
    std::vector<PhaseVector> grid;
    grid.reserve(points.size());
    for (const auto& p : points) grid.push_back(to_phase(kind, p));
    auto ratios = batch_ladder(grid, w, Ns, threads);

    LadderReport r;
    r.Ns.assign(Ns.begin(), Ns.end());
    r.masks.assign(points.size(), 0);
    std::vector<std::uint64_t> hits(Ns.size(), 0), tails(Ns.size(), 0);
    std::uint64_t any = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::uint64_t m = 0;
        for (std::size_t k = 0; k < Ns.size(); ++k) {
            double v = ratios[i][k];
            if (v >= c * (1 - 1e-12) && v <= C * (1 + 1e-12)) m |= std::uint64_t{1} << k, ++hits[k];
        }
        r.masks[i] = m;
        any += m != 0;
        for (std::size_t k = 0; k < Ns.size(); ++k) tails[k] += (m >> k) != 0;
    }
    double n = static_cast<double>(points.size());
    for (std::size_t k = 0; k < Ns.size(); ++k) {
        r.fractions.push_back(static_cast<double>(hits[k]) / n);
        r.tail_union.push_back(static_cast<double>(tails[k]) / n);
    }
    r.union_fraction = static_cast<double>(any) / n;
    return r;
}

LadderReport ladder_stats(const ScanKind& kind, const WeightSeq& w, const Box& region,
                          std::span<const std::uint64_t> Ns, double c, double C, std::uint64_t grid,
                          std::uint64_t seed, unsigned threads) {
    require(region.sides.size() == kind.dims(), "region dimension does not match the sum kind");
    auto pts = scan_grid(region, grid, seed);
    return ladder_stats(kind, w, pts, Ns, c, C, threads);
}

LadderReport ladder_stats(const ScanKind& kind, const WeightSeq& w, const Interval& region,
                          std::span<const std::uint64_t> Ns, double c, double C, std::uint64_t grid,
                          std::uint64_t seed, unsigned threads) {
    return ladder_stats(kind, w, as_box(region), Ns, c, C, grid, seed, threads);
}

double indicator_fraction(const ScanKind& kind, const WeightSeq& w, const Box& region, std::uint64_t N,
                          double c, double C, std::uint64_t grid, std::uint64_t seed, unsigned threads) {
    require(grid >= 1000, "grid must have at least 1000 points");
    require(N >= 1, "N must be >= 1");
    std::uint64_t one[] = {N};
    return ladder_stats(kind, w, region, one, c, C, grid, seed, threads).union_fraction;
}

double indicator_fraction(const ScanKind& kind, const WeightSeq& w, const Interval& region, std::uint64_t N,
                          double c, double C, std::uint64_t grid, std::uint64_t seed, unsigned threads) {
    return indicator_fraction(kind, w, as_box(region), N, c, C, grid, seed, threads);
}

CounterexampleA counterexample_A(int n_max, const Interval& probe) {
    require(n_max >= 2, "n_max must be >= 2");
    require(probe.length > 0.0 && probe.length <= 1.0, "probe length must lie in (0, 1]");
    CounterexampleA r;
    double partial = 0.0;
    for (int n = n_max; n >= 1; --n) partial += 1.0 / (static_cast<double>(n) * n);
    r.bound = 2.0 / 9.0 * (partial + 1.0 / n_max);
    r.series_limit = 2.0 * std::numbers::pi * std::numbers::pi / 54.0;

    const double x0 = probe.start, delta = probe.length;
    auto half = [](int n) { return std::pow(3.0, -n - 2) / (static_cast<double>(n) * n); };

    // nearby generations, exactly, while the interval count stays small
    constexpr double kCap = 4.0e6;
    std::vector<std::pair<double, double>> segs;
    double used = 0.0;
    int n = 1;
    for (; n <= std::min(n_max, 60); ++n) {
        double q = std::pow(3.0, n), h = half(n);
        double a_lo = std::ceil((x0 - h) * q), a_hi = std::floor((x0 + delta + h) * q);
        double cnt = std::max(0.0, a_hi - a_lo + 1);
        if (used + cnt > kCap) break;
        used += cnt;
        for (double a = a_lo; a <= a_hi; a += 1.0) {
            double c = a / q;
            double lo = std::max(c - h, x0), hi = std::min(c + h, x0 + delta);
            if (hi > lo) segs.emplace_back(lo, hi);
        }
    }
    r.generations = n - 1;
    std::sort(segs.begin(), segs.end());
    double cur_lo = 0.0, cur_hi = -1.0;
    for (const auto& [lo, hi] : segs) {
        if (lo > cur_hi) {
            if (cur_hi > cur_lo) r.lower += cur_hi - cur_lo;
            cur_lo = lo, cur_hi = hi;
        } else {
            cur_hi = std::max(cur_hi, hi);
        }
    }
    if (cur_hi > cur_lo) r.lower += cur_hi - cur_lo;

    // a later generation m meets at most 3^m (delta + 2 h_m) + 1 intervals of length 2 h_m
    double tail = 0.0;
    int last = std::min(n_max, r.generations + 400);
    for (int m = r.generations + 1; m <= last; ++m) {
        double q = std::pow(3.0, m), h = half(m);
        tail += std::min(q, q * (delta + 2 * h) + 1) * 2 * h;
    }
    if (last < n_max) tail += (2.0 * delta / 9.0 + 1e-300) / last;
    r.upper = std::min(delta, r.lower + tail);
    r.density_lower = r.lower / delta;
    r.density_upper = r.upper / delta;
    r.log_scale = delta < 1.0 ? std::pow(std::log(1.0 / delta), -2.0) : 0.0;

    auto g = [](int m) { return std::pow(3.0, -m) * m * m * m; };
    for (int m = 3; m <= 600; ++m) {
        if (g(m) <= delta && delta < g(m - 1)) {
            r.bracket_n = m;
            double q = std::pow(3.0, m);
            if (q < 9.0e15) {
                double cnt = std::floor((x0 + delta) * q) - std::ceil(x0 * q) + 1;
                r.bracket_fractions = static_cast<std::uint64_t>(std::max(0.0, cnt));
            }
            break;
        }
    }
    return r;
}

}  // namespace weyl
