#include "weyl/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "weyl/error.hpp"
#include "weyl/parallel.hpp"

namespace weyl {

namespace {

constexpr double kTol = 1e-12;

std::string fmt(const char* what, std::size_t i) {
    std::ostringstream os;
    os << what << ' ' << i;
    return os.str();
}

bool integral_gamma(double g) { return g == std::floor(g) && g >= 1.0 && g <= 64.0; }

double frac(double x) { return x - std::floor(x); }

}  // namespace

PatternCheck pattern_validate(const Pattern& p) {
    PatternCheck c;
    auto fail = [&](std::string s) {
        c.ok = false;
        c.violations.push_back(std::move(s));
    };
    if (p.N < 2) fail("N must be at least 2");
    if (!(p.delta > 0.0)) fail("delta must be positive");
    if (p.M != p.members.size()) fail("M differs from the member count");
    if (p.members.empty()) fail("M=0: pattern has no members");
    if (p.M > p.N) fail("M exceeds N");
    if (p.N < 1 || !(p.parent.length > 0.0)) return c;

    const double w = p.parent.length / static_cast<double>(p.N);
    std::vector<std::int64_t> cells;
    for (std::size_t i = 0; i < p.members.size(); ++i) {
        const Interval& m = p.members[i];
        if (std::fabs(m.length - p.delta) > kTol) fail(fmt("length differs from delta: member", i));
        auto j = static_cast<std::int64_t>(std::floor((m.start - p.parent.start + kTol) / w));
        if (j < 0 || j >= static_cast<std::int64_t>(p.N)) {
            fail(fmt("outside the parent: member", i));
            continue;
        }
        double hi = p.parent.start + static_cast<double>(j + 1) * w;
        if (m.end() > hi + kTol) {
            fail(fmt("crosses a cell boundary: member", i));
            continue;
        }
        cells.push_back(j);
    }
    std::sort(cells.begin(), cells.end());
    for (std::size_t i = 1; i < cells.size(); ++i)
        if (cells[i] == cells[i - 1]) fail(fmt("two members share cell", static_cast<std::size_t>(cells[i])));
    return c;
}

Selection select_separated(std::span<const double> xs, std::span<const double> values,
                           const Interval& parent, double spacing, double threshold) {
    require(spacing > 0.0 && std::isfinite(spacing), "spacing must be positive");
    require(xs.size() == values.size(), "samples and values differ in length");
    Selection s;
    const double slack = 1e-9 * spacing;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double x = xs[i];
        if (!(values[i] >= threshold)) continue;
        if (x - spacing / 2 < parent.start - slack || x + spacing / 2 > parent.end() + slack) continue;
        if (!s.points.empty() && x - s.points.back() < spacing - slack) continue;
        s.points.push_back(x);
        s.values.push_back(values[i]);
        s.intervals.push_back({x - spacing / 2, spacing});
    }
    return s;
}

Selection select_separated(const std::function<double(double)>& profile, const Interval& parent,
                           double spacing, double threshold, double grid_step) {
    require(spacing > 0.0 && std::isfinite(spacing), "spacing must be positive");
    if (grid_step == 0.0) grid_step = spacing / 4;
    require(grid_step > 0.0, "grid step must be positive");
    auto count = static_cast<std::size_t>(std::floor(parent.length / grid_step)) + 1;
    std::vector<double> xs(count), vs(count);
    for (std::size_t j = 0; j < count; ++j) {
        xs[j] = parent.start + static_cast<double>(j) * grid_step;
        vs[j] = profile(xs[j]);
    }
    return select_separated(xs, vs, parent, spacing, threshold);
}

double GrowthSpec::L_at(int k) const {
    require(k >= 1, "L is indexed from 1");
    if (!L.empty()) {
        require(static_cast<std::size_t>(k) <= L.size(), "explicit L sequence is too short");
        return L[k - 1];
    }
    return std::pow(L1, std::ldexp(1.0, k - 1));
}

void GrowthSpec::validate() const {
    require(gamma > 1.0, "gamma must exceed 1");
    require(tau > 0.0, "tau must be positive");
    if (gamma > 2.0) require(tau < (gamma - 2.0) / 2.0, "tau must be below (gamma - 2) / 2");
    require(c0 >= 0.0, "c0 must be non-negative");
    require(L.empty() ? L1 >= 2.0 : true, "L1 must be at least 2");
    for (double l : L) require(l >= 2.0, "L values must be at least 2");
}

double large_value_profile(double gamma, const WeightSeq& w, double x, std::uint64_t N) {
    require(N >= 1, "N must be >= 1");
    if (integral_gamma(gamma)) {
        std::vector<double> c(static_cast<std::size_t>(gamma), 0.0);
        c.back() = frac(x);
        return prefix_max(PhaseVector(std::move(c)), w, N).max_abs;
    }
    return prefix_max(GeneralPhase::power(x, gamma), w, N).max_abs;
}

std::vector<double> large_value_profile(double gamma, const WeightSeq& w, std::span<const double> xs,
                                        std::uint64_t N, unsigned threads) {
    require(N >= 1, "N must be >= 1");
    std::vector<double> out(xs.size());
    if (integral_gamma(gamma)) {
        std::vector<PhaseVector> grid;
        grid.reserve(xs.size());
        for (double x : xs) {
            std::vector<double> c(static_cast<std::size_t>(gamma), 0.0);
            c.back() = frac(x);
            grid.emplace_back(std::move(c));
        }
        auto pm = batch_prefix_max(grid, w, N, threads);
        for (std::size_t i = 0; i < pm.size(); ++i) out[i] = pm[i].max_abs;
        return out;
    }
    parallel_for(xs.size(), threads, [&](std::size_t i) {
        out[i] = prefix_max(GeneralPhase::power(xs[i], gamma), w, N).max_abs;
    });
    return out;
}

LargeValues large_value_intervals(const GrowthSpec& g, const WeightSeq& w, const Interval& interval,
                                  std::uint64_t N, bool enforce, unsigned threads) {
    g.validate();
    require(N >= 2, "N must be >= 2");
    require(interval.length > 0.0, "interval length must be positive");
    const double lN = std::log(static_cast<double>(N));
    LargeValues r;
    r.c0 = g.c0;
    r.separation = std::exp((-g.gamma + 0.5 + g.tau) * lN);
    r.threshold = g.c0 * std::sqrt(static_cast<double>(N));
    r.target_K = std::exp((g.gamma - 0.5 - g.tau) * lN) * interval.length;
    r.hypothesis_met = interval.length >= std::exp((-g.gamma + 2.0) * lN);
    if (enforce && !r.hypothesis_met) throw ValidationError("interval is shorter than N^{-gamma+2}");

    const double delta = std::exp((-g.gamma - g.tau) * lN);
    const auto cells = static_cast<std::uint64_t>(std::ceil(r.target_K)) + 1;
    const double cell = interval.length / static_cast<double>(cells);
    require(delta <= cell, "member length exceeds the cell width");

    const double step = r.separation / 4;
    auto count = static_cast<std::size_t>(std::floor(interval.length / step)) + 1;
    std::vector<double> xs(count);
    for (std::size_t j = 0; j < count; ++j) xs[j] = interval.start + static_cast<double>(j) * step;
    r.grid_points = count;
    auto vals = large_value_profile(g.gamma, w, xs, N, threads);
    Selection sel = select_separated(xs, vals, interval, r.separation, r.threshold);

    Pattern& p = r.pattern;
    p.parent = interval;
    p.N = cells;
    p.delta = delta;
    for (std::size_t i = 0; i < sel.points.size(); ++i) {
        double x = sel.points[i];
        auto j = static_cast<std::uint64_t>(std::floor((x - interval.start) / cell));
        j = std::min(j, cells - 1);
        double lo = interval.start + static_cast<double>(j) * cell;
        double hi = interval.start + static_cast<double>(j + 1) * cell;
        double s = std::clamp(x - delta / 2, lo, hi - delta);
        p.members.push_back({s, delta});
        r.witnesses.push_back(x);
        r.witness_values.push_back(sel.values[i]);
    }
    p.M = p.members.size();
    return r;
}

CantorBuild cantor_build(const GrowthSpec& g, const WeightSeq& w, const Interval& root, int depth,
                         const Budget& budget, unsigned threads) {
    g.validate();
    require(depth >= 0 && depth <= 4, "depth must lie in [0, 4]");
    require(root.length > 0.0, "root length must be positive");
    CantorBuild b;
    b.c0 = g.c0;
    CantorLevel top;
    top.delta = root.length;
    top.intervals = {root};
    b.levels.push_back(top);
    std::uint64_t spent = 0;

    for (int k = 1; k <= depth; ++k) {
        const CantorLevel& prev = b.levels.back();
        double L = g.L_at(k);
        require(L == std::floor(L) && L < 9.0e15, "L must be an integer");
        auto N = static_cast<std::uint64_t>(L);
        double step = std::exp((-g.gamma + 0.5 + g.tau) * std::log(L)) / 4;
        double per_parent = std::floor(prev.delta / step) + 1;
        double cost = per_parent * static_cast<double>(prev.intervals.size()) * static_cast<double>(N);
        require(cost < 1.8e19, "level cost overflows");
        spent += static_cast<std::uint64_t>(cost);
        charge(spent, budget.kernel_pairs, "cantor profile evaluations");

        std::vector<LargeValues> found;
        found.reserve(prev.intervals.size());
        for (const auto& parent : prev.intervals) found.push_back(large_value_intervals(g, w, parent, N, false, threads));

        CantorLevel lv;
        lv.k = k;
        lv.L = L;
        lv.N = found.front().pattern.N;
        lv.delta = found.front().pattern.delta;
        lv.min_selected = found.front().pattern.M;
        for (const auto& f : found) {
            lv.min_selected = std::min<std::uint64_t>(lv.min_selected, f.pattern.M);
            lv.max_selected = std::max<std::uint64_t>(lv.max_selected, f.pattern.M);
            lv.hypothesis_met = lv.hypothesis_met && f.hypothesis_met;
        }
        if (lv.min_selected == 0) {
            std::size_t empty = 0;
            for (const auto& f : found) empty += f.pattern.M == 0;
            std::ostringstream os;
            os << "level " << k << ": " << empty << " of " << found.size()
               << " parent intervals have no value above " << found.front().threshold << "; build truncated";
            b.truncated = true;
            b.report = os.str();
            break;
        }
        lv.M = lv.min_selected;
        if (lv.delta > prev.delta / static_cast<double>(lv.N))
            throw std::logic_error("level length exceeds the parent cell");

        for (auto& f : found) {
            std::vector<std::size_t> idx(f.pattern.M);
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t c) { return f.witness_values[a] > f.witness_values[c]; });
            idx.resize(lv.M);
            std::sort(idx.begin(), idx.end());
            Pattern kept = f.pattern;
            kept.members.clear();
            for (std::size_t i : idx) {
                kept.members.push_back(f.pattern.members[i]);
                lv.witnesses.push_back(f.witnesses[i]);
            }
            kept.M = lv.M;
            lv.patterns_valid = lv.patterns_valid && pattern_validate(kept).ok;
            lv.intervals.insert(lv.intervals.end(), kept.members.begin(), kept.members.end());
        }
        b.levels.push_back(std::move(lv));
    }
    return b;
}

double cantor_dim_estimate(std::span<const LevelSize> levels) {
    require(!levels.empty(), "need at least one level");
    double acc = 0.0, best = 0.0, prev = 1.0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto& l = levels[k];
        require(l.delta > 0.0 && l.delta < 1.0, "delta must lie in (0, 1)");
        require(k == 0 || l.delta < prev, "delta must be strictly decreasing");
        require(l.M >= 1.0, "M must be at least 1");
        prev = l.delta;
        acc += std::log(l.M);
        double est = acc / -std::log(l.delta);
        best = k == 0 ? est : std::min(best, est);
    }
    return best;
}

double cantor_dim_estimate(std::span<const CantorLevel> levels) {
    std::vector<LevelSize> s;
    for (const auto& l : levels)
        if (l.k != 0) s.push_back({static_cast<double>(l.M), l.delta});
    return cantor_dim_estimate(s);
}

std::vector<CantorLevel> middle_thirds_levels(int k) {
    require(k >= 0 && k <= 20, "depth must lie in [0, 20]");
    std::vector<CantorLevel> out;
    CantorLevel top;
    top.intervals = {{0.0, 1.0}};
    out.push_back(top);
    for (int j = 1; j <= k; ++j) {
        CantorLevel lv;
        lv.k = j;
        lv.N = 3;
        lv.M = 2;
        lv.delta = out.back().delta / 3.0;
        for (const auto& p : out.back().intervals) {
            lv.intervals.push_back({p.start, lv.delta});
            lv.intervals.push_back({p.start + 2.0 * lv.delta, lv.delta});
        }
        out.push_back(std::move(lv));
    }
    return out;
}

std::vector<LevelSize> synthetic_schedule(const GrowthSpec& g, int levels) {
    g.validate();
    require(levels >= 1, "need at least one level");
    std::vector<LevelSize> out;
    double prev = 1.0;
    for (int k = 1; k <= levels; ++k) {
        double lL = std::log(g.L_at(k));
        double delta = std::exp(-(g.gamma + g.tau) * lL);
        double M = std::floor(prev * std::exp((g.gamma - 0.5 - g.tau) * lL) * (1.0 + 1e-12));
        out.push_back({std::max(M, 1.0), delta});
        prev = delta;
    }
    return out;
}

std::vector<MassRow> mass_check(std::span<const CantorLevel> levels, std::span<const double> radii, double t) {
    require(!levels.empty(), "need at least one level");
    require(t >= 0.0, "t must be non-negative");
    double dim = levels.size() > 1 ? cantor_dim_estimate(levels) : 1.0;
    require(t < dim, "t must be below the dimension estimate");
    std::vector<Interval> iv = levels.back().intervals;
    require(!iv.empty(), "deepest level has no intervals");
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.start < b.start; });
    const double m = 1.0 / static_cast<double>(iv.size());

    auto mass_in = [&](double a, double b) {
        auto first = std::partition_point(iv.begin(), iv.end(), [&](const Interval& x) { return x.end() <= a; });
        auto last = std::partition_point(first, iv.end(), [&](const Interval& x) { return x.start < b; });
        double total = 0.0;
        auto part = [&](const Interval& x) { return m * (std::min(b, x.end()) - std::max(a, x.start)) / x.length; };
        auto n = last - first;
        if (n <= 2) {
            for (auto it = first; it != last; ++it) total += part(*it);
        } else {
            total = part(*first) + part(*(last - 1)) + m * static_cast<double>(n - 2);
        }
        return std::clamp(total, 0.0, 1.0);
    };

    std::vector<MassRow> rows;
    for (double r : radii) {
        require(r > 0.0, "radii must be positive");
        double best = 0.0;
        for (const auto& x : iv)
            for (double c : {x.start + r, x.start - r, x.end() + r, x.end() - r})
                best = std::max(best, mass_in(c - r, c + r));
        rows.push_back({r, best, best / std::pow(r, t)});
    }
    return rows;
}

}  // namespace weyl
