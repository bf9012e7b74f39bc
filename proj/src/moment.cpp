#include "weyl/moment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "weyl/error.hpp"
#include "weyl/parallel.hpp"

namespace weyl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExact = 9007199254740992.0;  // 2^53

}  // namespace

Interval Interval::make(double start, double length) {
    require(std::isfinite(start) && std::isfinite(length), "interval bounds must be finite");
    require(length > 0.0, "interval length must be positive");
    return {start, length};
}

double Box::volume() const {
    double v = 1.0;
    for (const auto& s : sides) v *= s.length;
    return v;
}

UnitRng::UnitRng(std::uint64_t seed) : gen_(seed) {}

std::uint64_t UnitRng::next_u64() { return gen_(); }

double UnitRng::next() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

SumFamily SumFamily::monomial(int d) {
    require(d >= 1, "monomial degree must be >= 1");
    return {Kind::monomial, static_cast<double>(d)};
}

SumFamily SumFamily::power(double gamma) {
    require(std::isfinite(gamma) && gamma > 1.0, "power family needs gamma > 1");
    return {Kind::power, gamma};
}

Phase SumFamily::phase(double x) const {
    if (kind == Kind::monomial) return MonomialPhase{x, static_cast<int>(exponent)};
    return GeneralPhase::power(x, exponent);
}

double SumFamily::frequency(std::uint64_t n) const {
    double v = std::pow(static_cast<double>(n), exponent);
    if (kind == Kind::monomial || exponent == std::floor(exponent)) {
        u128 exact = checked_pow(n, static_cast<int>(exponent));
        if (exact > static_cast<u128>(kExact)) throw RangeError("integer frequency exceeds 2^53");
        return static_cast<double>(exact);
    }
    return v;
}

double collapse_tolerance(std::span<const double> y, double delta) {
    double m = 0.0;
    for (double v : y) m = std::max(m, std::fabs(v));
    return std::min(1e-9 * m, 1e-12 / delta);
}

MomentKernel::MomentKernel(std::span<const double> y, std::span<const cplx> beta,
                           double collapse_tol, const Budget& budget)
    : n_terms_(y.size()) {
    require(y.size() == beta.size(), "frequency and coefficient counts differ");
    std::vector<std::size_t> order(y.size());
    std::iota(order.begin(), order.end(), 0);
    for (double v : y) require(std::isfinite(v), "frequencies must be finite");
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
    double group_start = 0.0;
    for (std::size_t idx : order) {
        if (!y_.empty() && y[idx] - group_start <= collapse_tol) {
            c_.back() += beta[idx];
            continue;
        }
        group_start = y[idx];
        y_.push_back(y[idx]);
        c_.push_back(beta[idx]);
    }
    std::uint64_t K = y_.size();
    charge(K * (K - (K > 0)) / 2, budget.kernel_pairs, "moment kernel pairs");
}

MomentResult MomentKernel::integrate(const Interval& I, int nu_tag) const {
    const double delta = I.length;
    require(delta > 0.0, "interval length must be positive");
    const std::size_t K = y_.size();
    std::vector<double> ar(K), ai(K), br(K), bi(K);
    double mass = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        cplx b = c_[k] * expi(turn_mul_real(I.start, y_[k]));
        cplx a = b * expi(turn_mul_real(delta, y_[k]));
        br[k] = b.real(), bi[k] = b.imag();
        ar[k] = a.real(), ai[k] = a.imag();
        mass += std::norm(c_[k]);
    }
    const double near = 1e-6 / delta;
    std::vector<double> row(K, 0.0);
    // Rows are independent; each thread writes only its own row sums.
    parallel_for(K, 0, [&](std::size_t k) {
        const double yk = y_[k];
        std::size_t l = k + 1;
        double acc = 0.0;
        for (; l < K && y_[l] - yk < near; ++l) {
            // Series for (e(delta t) - 1) / (2 pi i t) when delta t is tiny.
            double t = yk - y_[l];
            double th = 2.0 * kPi * delta * t;
            cplx ker = delta * cplx(1.0 - th * th / 6.0, th / 2.0 - th * th * th / 24.0);
            cplx bb = cplx(br[k], bi[k]) * cplx(br[l], -bi[l]);
            acc += 2.0 * (bb * ker).real();
        }
        const double akr = ar[k], aki = ai[k], bkr = br[k], bki = bi[k];
        double fast = 0.0;
        for (; l < K; ++l) {
            double z = (aki * ar[l] - akr * ai[l]) - (bki * br[l] - bkr * bi[l]);
            fast += z / (yk - y_[l]);
        }
        row[k] = acc + fast / kPi;
    });
    double off = 0.0;
    for (double v : row) off += v;
    MomentResult r;
    r.diagonal = delta * mass;
    r.offdiag = {off, 0.0};
    r.total = r.diagonal + off;
    r.nu = nu_tag;
    r.n_terms = n_terms_;
    r.spectrum_size = K;
    return r;
}

void pair_spectrum(std::span<const double> y, std::span<const cplx> beta, std::vector<double>& out_y,
                   std::vector<cplx>& out_c, const Budget& budget) {
    require(y.size() == beta.size(), "frequency and coefficient counts differ");
    std::uint64_t K = y.size();
    charge(K * (K + 1) / 2, budget.spectrum_entries, "pair spectrum entries");
    out_y.clear();
    out_c.clear();
    out_y.reserve(K * (K + 1) / 2);
    out_c.reserve(K * (K + 1) / 2);
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i; j < K; ++j) {
            out_y.push_back(y[i] + y[j]);
            out_c.push_back((i == j ? 1.0 : 2.0) * beta[i] * beta[j]);
        }
}

namespace {

void check_moment_bounds(const MomentResult& r, std::span<const cplx> beta, double delta, int nu) {
    double l1 = 0.0;
    for (const auto& b : beta) l1 += std::abs(b);
    double cap = delta * std::pow(l1, 2 * nu);
    double slack = 1e-9 * cap + 1e-12;
    if (r.total < -slack || r.total > cap + slack)
        throw std::logic_error("moment outside [0, |I| K^(2 nu)]");
}

}  // namespace

MomentResult exact_moment(std::span<const double> y, std::span<const cplx> beta, const Interval& I,
                          int nu, const Budget& budget) {
    require(nu == 1 || nu == 2, "exact moment supports nu in {1, 2}");
    require(I.length > 0.0, "interval length must be positive");
    require(y.size() == beta.size(), "frequency and coefficient counts differ");
    MomentResult r;
    if (nu == 1) {
        MomentKernel k(y, beta, collapse_tolerance(y, I.length), budget);
        r = k.integrate(I, 1);
    } else {
        std::vector<double> py;
        std::vector<cplx> pc;
        pair_spectrum(y, beta, py, pc, budget);
        MomentKernel k(py, pc, collapse_tolerance(py, I.length), budget);
        r = k.integrate(I, 2);
        r.n_terms = y.size();
    }
    check_moment_bounds(r, beta, I.length, nu);
    return r;
}

void family_terms(const SumFamily& f, const WeightSeq& w, std::uint64_t N, SumRange range,
                  std::vector<double>& y, std::vector<cplx>& beta) {
    require(N >= 1, "N must be >= 1");
    std::uint64_t lo = 1, hi = N;
    if (range == SumRange::n_to_2n) lo = N, hi = 2 * N;
    if (range == SumRange::upper_half) lo = N / 2 + 1, hi = N;
    y.clear();
    beta.clear();
    for (std::uint64_t n = lo; n <= hi; ++n) {
        y.push_back(f.frequency(n));
        beta.push_back(w(n));
    }
}

MomentRatio second_moment_interval(const SumFamily& f, const WeightSeq& w, const Interval& I,
                                   std::uint64_t N, SumRange range, const Budget& budget) {
    std::vector<double> y;
    std::vector<cplx> b;
    family_terms(f, w, N, range, y, b);
    MomentRatio out;
    out.moment = exact_moment(y, b, I, 1, budget);
    out.ratio = out.moment.total / (I.length * static_cast<double>(y.size()));
    return out;
}

MomentRatio fourth_moment_interval(int d, const WeightSeq& w, const Interval& I, std::uint64_t N,
                                   const Budget& budget) {
    std::vector<double> y;
    std::vector<cplx> b;
    family_terms(SumFamily::monomial(d), w, N, SumRange::one_to_n, y, b);
    MomentRatio out;
    out.moment = exact_moment(y, b, I, 2, budget);
    auto Nd = static_cast<double>(N);
    out.ratio = out.moment.total / (2.0 * I.length * Nd * Nd);
    return out;
}

namespace {

// (e(delta u) - 1) / (2 pi i u) with e(delta u) = v; delta when u = 0.
cplx line_kernel(std::int64_t u, double delta, const cplx& v) {
    if (u == 0) return {delta, 0.0};
    double th = 2.0 * kPi * delta * static_cast<double>(u);
    if (std::fabs(th) < 2.0 * kPi * 1e-6)
        return delta * cplx(1.0 - th * th / 6.0, th / 2.0 - th * th * th / 24.0);
    return (v - 1.0) / cplx(0.0, 2.0 * kPi * static_cast<double>(u));
}

}  // namespace

MomentResult quadratic_pair_moment(const Interval& I1, const Interval& I2, const WeightSeq& w,
                                   std::uint64_t N, const Budget& budget) {
    require(N >= 1, "N must be >= 1");
    require(I1.length > 0.0 && I2.length > 0.0, "interval lengths must be positive");
    charge(N * (N + 1) / 2, budget.spectrum_entries, "pair spectrum entries");
    struct Entry {
        std::int64_t s, t;
        cplx c;
    };
    std::vector<Entry> e;
    e.reserve(N * (N + 1) / 2);
    std::vector<cplx> a(N + 1);
    for (std::uint64_t n = 1; n <= N; ++n) a[n] = w(n);
    for (std::uint64_t i = 1; i <= N; ++i)
        for (std::uint64_t j = i; j <= N; ++j)
            e.push_back({static_cast<std::int64_t>(i + j), static_cast<std::int64_t>(i * i + j * j),
                         (i == j ? 1.0 : 2.0) * a[i] * a[j]});
    std::sort(e.begin(), e.end(), [](const Entry& p, const Entry& q) {
        return p.s != q.s ? p.s < q.s : p.t < q.t;
    });
    std::vector<Entry> g;
    for (const auto& x : e) {
        if (!g.empty() && g.back().s == x.s && g.back().t == x.t)
            g.back().c += x.c;
        else
            g.push_back(x);
    }
    std::uint64_t K = g.size();
    charge(K * (K - 1) / 2, budget.kernel_pairs, "moment kernel pairs");
    std::vector<cplx> c(K), v1(K), v2(K);
    double mass = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        auto s = static_cast<u128>(g[k].s), t = static_cast<u128>(g[k].t);
        c[k] = g[k].c * expi(turn_mul(I1.start, s) + turn_mul(I2.start, t));
        v1[k] = expi(turn_mul(I1.length, s));
        v2[k] = expi(turn_mul(I2.length, t));
        mass += std::norm(g[k].c);
    }
    std::vector<double> row(K, 0.0);
    parallel_for(K, 0, [&](std::size_t k) {
        double acc = 0.0;
        for (std::size_t l = k + 1; l < K; ++l) {
            cplx k1 = line_kernel(g[k].s - g[l].s, I1.length, v1[k] * std::conj(v1[l]));
            cplx k2 = line_kernel(g[k].t - g[l].t, I2.length, v2[k] * std::conj(v2[l]));
            acc += 2.0 * (c[k] * std::conj(c[l]) * k1 * k2).real();
        }
        row[k] = acc;
    });
    double off = 0.0;
    for (double v : row) off += v;
    MomentResult r;
    r.diagonal = I1.length * I2.length * mass;
    r.offdiag = {off, 0.0};
    r.total = r.diagonal + off;
    r.nu = 2;
    r.n_terms = N;
    r.spectrum_size = K;
    double cap = I1.length * I2.length * std::pow(static_cast<double>(N), 4);
    if (r.total < -1e-9 * cap || r.total > cap * (1 + 1e-9))
        throw std::logic_error("pair moment outside [0, |I1||I2| N^4]");
    return r;
}

namespace {

McEstimate summarize(const std::vector<double>& v, double volume) {
    double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    double sd = std::sqrt(ss / (n - 1.0));
    return {volume * mean, volume * sd / std::sqrt(n), v.size()};
}

double wrap_unit(double x) {
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
}

}  // namespace

McEstimate mc_moment(const SumFamily& f, const WeightSeq& w, const Interval& I, std::uint64_t N,
                     int nu, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    require(samples >= 16, "mc_moment needs at least 16 samples");
    require(nu >= 1, "nu must be >= 1");
    require(N >= 1, "N must be >= 1");
    UnitRng rng(seed);
    std::vector<double> xs(samples);
    for (auto& x : xs) x = I.start + I.length * rng.next();
    std::vector<double> vals(samples);
    if (f.kind == SumFamily::Kind::monomial) {
        int d = static_cast<int>(f.exponent);
        std::vector<PhaseVector> grid;
        grid.reserve(samples);
        for (double x : xs) {
            std::vector<double> c(d, 0.0);
            c[d - 1] = wrap_unit(x);
            grid.emplace_back(std::move(c));
        }
        auto s = batch_eval(grid, w, N, threads);
        for (std::size_t i = 0; i < samples; ++i) vals[i] = std::pow(std::norm(s[i].value), nu);
    } else {
        parallel_for(samples, threads, [&](std::size_t i) {
            vals[i] = std::pow(std::norm(weyl_sum(f.phase(xs[i]), w, N).value), nu);
        });
    }
    return summarize(vals, I.length);
}

McEstimate mc_moment(const Box& box, const WeightSeq& w, std::uint64_t N, int nu,
                     std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    require(samples >= 16, "mc_moment needs at least 16 samples");
    require(!box.sides.empty(), "box needs at least one side");
    require(nu >= 1, "nu must be >= 1");
    UnitRng rng(seed);
    std::vector<PhaseVector> grid;
    grid.reserve(samples);
    for (std::uint64_t i = 0; i < samples; ++i) {
        std::vector<double> c;
        for (const auto& s : box.sides) c.push_back(wrap_unit(s.start + s.length * rng.next()));
        grid.emplace_back(std::move(c));
    }
    auto s = batch_eval(grid, w, N, threads);
    std::vector<double> vals(samples);
    for (std::size_t i = 0; i < samples; ++i) vals[i] = std::pow(std::norm(s[i].value), nu);
    return summarize(vals, box.volume());
}

VarianceResult variance_integral(double gamma, const WeightSeq& w, double x1, double eps1,
                                 double eps0, std::uint64_t N, std::uint64_t samples,
                                 std::uint64_t seed, const Budget& budget) {
    require(gamma > 2.0, "variance integral needs gamma > 2");
    require(eps0 > 0.0 && eps0 < 1.0, "eps0 must lie in (0, 1)");
    require(eps1 > 0.0 && eps1 < 1.0, "eps1 must lie in (0, 1)");
    require(N >= 8, "variance integral needs N >= 8");
    require(samples >= 2, "variance integral needs at least 2 samples");
    std::vector<double> y;
    std::vector<cplx> b;
    family_terms(SumFamily::power(gamma), w, N, SumRange::upper_half, y, b);
    MomentKernel k(y, b, collapse_tolerance(y, eps0), budget);
    double expected = eps0 * static_cast<double>(y.size());
    UnitRng rng(seed);
    std::vector<double> vals(samples);
    for (auto& v : vals) {
        double x0 = x1 + eps1 * rng.next();
        double g = k.integrate({x0, eps0}).total - expected;
        v = g * g;
    }
    McEstimate m = summarize(vals, eps1);
    return {m.estimate, m.stderr_, eps0, eps1, samples};
}

}  // namespace weyl
