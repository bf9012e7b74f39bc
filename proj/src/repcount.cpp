#include "weyl/repcount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weyl/error.hpp"
#include "weyl/moment.hpp"

namespace weyl {

namespace {

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

template <class T>
void build_spectrum(int d, std::uint64_t N, std::vector<T>& vals, std::vector<std::uint32_t>& mult) {
    std::vector<T> pw(N + 1);
    for (std::uint64_t n = 1; n <= N; ++n) pw[n] = static_cast<T>(checked_pow(n, d));
    vals.clear();
    vals.reserve(N * (N + 1) / 2);
    for (std::uint64_t i = 1; i <= N; ++i)
        for (std::uint64_t j = i; j <= N; ++j) vals.push_back(pw[i] + pw[j]);
    std::sort(vals.begin(), vals.end());
    // A run of r entries counts 2r ordered pairs, minus one when the run holds
    // the diagonal entry 2n^d.
    auto is_diag = [&](T v) {
        if (v % 2 != 0) return false;
        return std::binary_search(pw.begin() + 1, pw.end(), static_cast<T>(v / 2));
    };
    mult.clear();
    std::size_t w = 0;
    for (std::size_t i = 0; i < vals.size();) {
        std::size_t j = i;
        while (j < vals.size() && vals[j] == vals[i]) ++j;
        auto run = static_cast<std::uint32_t>(j - i);
        vals[w++] = vals[i];
        mult.push_back(2 * run - (is_diag(vals[i]) ? 1u : 0u));
        i = j;
    }
    vals.resize(w);
    vals.shrink_to_fit();
}

template <class T>
std::uint64_t shifted_overlap(const std::vector<T>& v, const std::vector<std::uint32_t>& m, u128 k) {
    std::uint64_t total = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        u128 s = v[i];
        if (s < k) continue;
        u128 target = s - k;
        while (j < v.size() && static_cast<u128>(v[j]) < target) ++j;
        if (j == v.size()) break;
        if (static_cast<u128>(v[j]) == target) total += std::uint64_t{m[i]} * m[j];
    }
    return total;
}

template <class T>
i128 nearest_in(const std::vector<T>& v, i128 target) {
    i128 best = 0;
    u128 best_gap = std::numeric_limits<u128>::max();
    for (std::size_t i = 0; i < v.size(); ++i) {
        i128 s = static_cast<i128>(v[i]);
        i128 want = s - target;
        auto it = want <= 0 ? v.begin()
                            : std::lower_bound(v.begin(), v.end(), static_cast<T>(want));
        for (auto c : {it, it == v.begin() ? v.end() : it - 1}) {
            if (c == v.end()) continue;
            i128 diff = s - static_cast<i128>(*c);
            if (diff <= 0) continue;
            u128 gap = abs128(diff - target);
            if (gap < best_gap) best_gap = gap, best = diff;
        }
    }
    return best;
}

}  // namespace

std::uint64_t diagonal_count(std::uint64_t N) { return N == 0 ? 0 : 2 * N * N - N; }

PowerSumSpectrum::PowerSumSpectrum(int d, std::uint64_t N, const Budget& budget) : d_(d), N_(N) {
    require(d >= 2, "representation counts need d >= 2");
    require(N >= 1, "N must be >= 1");
    charge(N * (N + 1) / 2, budget.spectrum_entries, "pair spectrum entries");
    u128 top = 2 * checked_pow(N, d);
    if (top < (u128(1) << 64)) {
        std::vector<std::uint64_t> v;
        build_spectrum(d, N, v, mult_);
        values_ = std::move(v);
    } else {
        std::vector<u128> v;
        build_spectrum(d, N, v, mult_);
        values_ = std::move(v);
    }
}

std::size_t PowerSumSpectrum::distinct() const { return mult_.size(); }

RepCount PowerSumSpectrum::count(i128 k) const {
    RepCount r;
    u128 kk = abs128(k);
    if (kk > 4 * checked_pow(N_, d_)) return r;
    r.total = std::visit([&](const auto& v) { return shifted_overlap(v, mult_, kk); }, values_);
    r.diagonal = k == 0 ? diagonal_count(N_) : 0;
    r.nondiagonal = r.total - r.diagonal;
    return r;
}

i128 PowerSumSpectrum::nearest_attained(i128 target) const {
    require(target > 0, "target shift must be positive");
    return std::visit([&](const auto& v) { return nearest_in(v, target); }, values_);
}

RepCount r_count(int d, i128 k, std::uint64_t N, const Budget& budget) {
    require(d >= 2, "representation counts need d >= 2");
    require(N >= 1, "N must be >= 1");
    if (abs128(k) > 4 * checked_pow(N, d)) return {};
    return PowerSumSpectrum(d, N, budget).count(k);
}

RepCount q_count(std::int64_t k, std::int64_t m, std::uint64_t N, const Budget& budget) {
    require(N >= 1, "N must be >= 1");
    require(N <= 3'000'000'000ULL, "N too large for the quadratic system");
    charge(N * (N + 1) / 2, budget.spectrum_entries, "pair spectrum entries");
    struct Cell {
        std::int64_t s, t;
        std::uint64_t c;
    };
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    raw.reserve(N * (N + 1) / 2);
    for (std::uint64_t i = 1; i <= N; ++i)
        for (std::uint64_t j = i; j <= N; ++j)
            raw.emplace_back(static_cast<std::int64_t>(i + j), static_cast<std::int64_t>(i * i + j * j));
    // Sum and sum of squares determine {n1, n2}, so no two unordered pairs collide;
    // weights are still accumulated generically.
    std::vector<std::uint64_t> weight;
    weight.reserve(raw.size());
    for (std::uint64_t i = 1; i <= N; ++i)
        for (std::uint64_t j = i; j <= N; ++j) weight.push_back(i == j ? 1 : 2);
    std::vector<std::size_t> order(raw.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
    std::vector<Cell> cells;
    for (std::size_t idx : order) {
        if (!cells.empty() && cells.back().s == raw[idx].first && cells.back().t == raw[idx].second)
            cells.back().c += weight[idx];
        else
            cells.push_back({raw[idx].first, raw[idx].second, weight[idx]});
    }
    RepCount r;
    std::size_t j = 0;
    for (const auto& a : cells) {
        std::pair<std::int64_t, std::int64_t> target{a.s - k, a.t - m};
        while (j < cells.size() && std::pair{cells[j].s, cells[j].t} < target) ++j;
        if (j == cells.size()) break;
        if (cells[j].s == target.first && cells[j].t == target.second) r.total += a.c * cells[j].c;
    }
    r.diagonal = k == 0 && m == 0 ? diagonal_count(N) : 0;
    r.nondiagonal = r.total - r.diagonal;
    return r;
}

PowerPairs power_pair_count(int d, i128 k, std::uint64_t N) {
    require(d >= 1, "degree must be >= 1");
    require(k != 0, "power pair count needs k != 0");
    require(N >= 1, "N must be >= 1");
    PowerPairs out;
    u128 kk = abs128(k);
    for (std::uint64_t e = 1; e < N; ++e) {
        if (kk % e != 0) continue;
        // (n + e)^d - n^d is increasing in n.
        auto gap = [&](std::uint64_t n) { return checked_pow(n + e, d) - checked_pow(n, d); };
        std::uint64_t lo = 1, hi = N - e;
        if (d == 1) {
            if (u128(e) == kk)
                for (std::uint64_t n = lo; n <= hi; ++n) out.pairs.emplace_back(n + e, n);
            continue;
        }
        if (gap(lo) > kk || gap(hi) < kk) continue;
        while (lo < hi) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            if (gap(mid) < kk) lo = mid + 1; else hi = mid;
        }
        if (gap(lo) == kk) out.pairs.emplace_back(lo + e, lo);
    }
    if (k < 0)
        for (auto& p : out.pairs) std::swap(p.first, p.second);
    std::sort(out.pairs.begin(), out.pairs.end());
    out.count = out.pairs.size();
    return out;
}

NondiagProfile nondiag_profile(const PowerSumSpectrum& spectrum, std::span<const i128> ks) {
    NondiagProfile p;
    for (i128 k : ks) {
        require(k != 0, "profile shifts must be nonzero");
        ProfileRow row{k, spectrum.count(k)};
        if (row.count.nondiagonal > p.max_nondiag) p.max_nondiag = row.count.nondiagonal, p.argmax_k = k;
        p.rows.push_back(row);
    }
    if (p.max_nondiag > 0 && spectrum.N() > 1)
        p.exponent = std::log(static_cast<double>(p.max_nondiag)) / std::log(static_cast<double>(spectrum.N()));
    return p;
}

std::vector<i128> sample_shifts(const PowerSumSpectrum& spectrum, std::size_t count, std::uint64_t seed,
                                bool snap) {
    require(count >= 1, "need at least one shift");
    UnitRng rng(seed);
    double top = std::log(2.0 * std::pow(static_cast<double>(spectrum.N()), spectrum.degree()));
    std::vector<i128> ks;
    for (std::size_t i = 0; i < count; ++i) {
        double u = (static_cast<double>(i) + rng.next()) / static_cast<double>(count);
        auto mag = static_cast<i128>(std::llround(std::exp(u * top)));
        mag = std::max<i128>(mag, 1);
        if (snap) mag = spectrum.nearest_attained(mag);
        ks.push_back(i % 2 ? -mag : mag);
    }
    return ks;
}

std::uint64_t quartic_shift_count(i128 k, std::uint64_t N, const Budget& budget) {
    require(N >= 1, "N must be >= 1");
    charge(N * N, budget.spectrum_entries, "difference spectrum entries");
    std::vector<i128> pw(N + 1);
    for (std::uint64_t n = 1; n <= N; ++n) pw[n] = static_cast<i128>(checked_pow(n, 4));
    std::vector<i128> diff;
    diff.reserve(N * N);
    for (std::uint64_t a = 1; a <= N; ++a)
        for (std::uint64_t b = 1; b <= N; ++b) diff.push_back(pw[a] - pw[b]);
    std::sort(diff.begin(), diff.end());
    std::vector<i128> v;
    std::vector<std::uint64_t> c;
    for (i128 x : diff) {
        if (!v.empty() && v.back() == x) ++c.back();
        else v.push_back(x), c.push_back(1);
    }
    std::uint64_t total = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        i128 target = v[i] - k;
        while (j < v.size() && v[j] < target) ++j;
        if (j == v.size()) break;
        if (v[j] == target) total += c[i] * c[j];
    }
    return total;
}

}  // namespace weyl
