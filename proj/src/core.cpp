#include "weyl/core.hpp"

#include <cmath>

#include "weyl/error.hpp"
#include "weyl/parallel.hpp"

namespace weyl {

PhaseVector::PhaseVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    require(!coeffs_.empty(), "phase vector needs degree >= 1");
    for (double c : coeffs_)
        require(std::isfinite(c) && c >= 0.0 && c < 1.0, "phase coefficients must lie in [0, 1)");
}

GeneralPhase GeneralPhase::power(double x, double gamma) {
    require(std::isfinite(x), "phase coefficient must be finite");
    require(std::isfinite(gamma) && gamma > 1.0, "power phase needs gamma > 1");
    return {Kind::power, x, gamma};
}

GeneralPhase GeneralPhase::n_log_n(double xi, double x) {
    require(std::isfinite(xi) && std::isfinite(x), "phase coefficients must be finite");
    return {Kind::n_log_n, x, xi};
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool integral_exponent(double g, int& d) {
    if (g != std::floor(g) || g > 127) return false;
    d = static_cast<int>(g);
    return true;
}

}  // namespace

WeightSeq WeightSeq::ones() { return {}; }

WeightSeq WeightSeq::random_phase(std::uint64_t seed) {
    WeightSeq w;
    w.base_ = Base::random_phase;
    w.seed_ = seed;
    return w;
}

WeightSeq WeightSeq::twisted(const std::vector<double>& twist) const {
    WeightSeq w = *this;
    if (w.twist_.size() < twist.size()) w.twist_.resize(twist.size(), 0.0);
    for (std::size_t i = 0; i < twist.size(); ++i) {
        require(std::isfinite(twist[i]), "twist coefficients must be finite");
        w.twist_[i] += twist[i];
    }
    return w;
}

turn_t WeightSeq::phase(std::uint64_t n) const {
    turn_t t = 0;
    if (base_ == Base::random_phase)
        t = u128(splitmix64(seed_ ^ splitmix64(n))) << 64;
    for (std::size_t i = 0; i < twist_.size(); ++i)
        if (twist_[i] != 0.0) t += turn_mul(twist_[i], checked_pow(n, static_cast<int>(i + 1)));
    return t;
}

turn_t phase_turn(const Phase& phase, std::uint64_t n) {
    if (const auto* p = std::get_if<PhaseVector>(&phase)) {
        turn_t t = 0;
        for (int i = 0; i < p->degree(); ++i) t += turn_mul((*p)[i], checked_pow(n, i + 1));
        return t;
    }
    if (const auto* m = std::get_if<MonomialPhase>(&phase)) {
        require(m->degree >= 1, "monomial degree must be >= 1");
        return turn_mul(m->x, checked_pow(n, m->degree));
    }
    const auto& g = std::get<GeneralPhase>(phase);
    auto nd = static_cast<double>(n);
    if (g.kind == GeneralPhase::Kind::power) {
        int d = 0;
        if (integral_exponent(g.param, d)) return turn_mul(g.x, checked_pow(n, d));
        return turn_mul_real(g.x, std::pow(nd, g.param));
    }
    double nlogn = n == 0 ? 0.0 : nd * std::log(nd);
    return turn_mul_real(g.param, nlogn) + turn_mul(g.x, n);
}

double phase_eval(const Phase& phase, std::uint64_t n) { return turn_to_unit(phase_turn(phase, n)); }

SumValue weyl_range_sum(const Phase& phase, const WeightSeq& weights, std::uint64_t lo,
                        std::uint64_t hi) {
    SumValue s{{0.0, 0.0}, 0};
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 1); n <= hi && hi > 0; ++n) {
        s.value += expi(phase_turn(phase, n) + weights.phase(n));
        ++s.n_terms;
    }
    return s;
}

SumValue weyl_sum(const Phase& phase, const WeightSeq& weights, std::uint64_t N) {
    return weyl_range_sum(phase, weights, 1, N);
}

PrefixMax prefix_max(const Phase& phase, const WeightSeq& weights, std::uint64_t N) {
    require(N >= 1, "prefix_max needs N >= 1");
    PrefixMax best;
    cplx s{0.0, 0.0};
    for (std::uint64_t n = 1; n <= N; ++n) {
        s += expi(phase_turn(phase, n) + weights.phase(n));
        double a = std::abs(s);
        if (a > best.max_abs) {
            best.max_abs = a;
            best.argmax = n;
        }
    }
    return best;
}

std::uint64_t rotor_period(int d) {
    // Relative drift after R steps grows like R^d / d! ulps; keep it below 2^13 ulps.
    std::uint64_t R = 1;
    while (R < (1u << 14)) {
        double next = 2.0 * static_cast<double>(R);
        double growth = std::pow(next, d) / std::tgamma(d + 1.0);
        if (growth > 8192.0) break;
        R *= 2;
    }
    return R;
}

namespace {

// Walks e(P(n)) for n = 1, 2, ... A wrapping turn table of forward differences
// is advanced exactly; the complex rotors follow it with d multiplications per
// step and are reseeded from it every `period` steps.
class RotorWalk {
public:
    explicit RotorWalk(const PhaseVector& p) : d_(p.degree()), phi_(d_ + 1), r_(d_ + 1) {
        std::vector<turn_t> v(d_ + 1);
        for (int i = 0; i <= d_; ++i) v[i] = phase_turn(p, static_cast<std::uint64_t>(i + 1));
        for (int j = 1; j <= d_; ++j)
            for (int i = d_; i >= j; --i) v[i] -= v[i - 1];
        phi_ = v;
        period_ = rotor_period(d_);
        reseed();
    }

    const cplx& current() const { return r_[0]; }

    void advance() {
        for (int j = 0; j < d_; ++j) {
            phi_[j] += phi_[j + 1];
            r_[j] *= r_[j + 1];
        }
        if (++count_ == period_) {
            count_ = 0;
            reseed();
        }
    }

private:
    void reseed() {
        for (int j = 0; j <= d_; ++j) r_[j] = expi(phi_[j]);
    }

    int d_;
    std::vector<turn_t> phi_;
    std::vector<cplx> r_;
    std::uint64_t period_ = 1, count_ = 0;
};

std::vector<cplx> weight_table(const WeightSeq& w, std::uint64_t N) {
    std::vector<cplx> a;
    if (w.is_ones()) return a;
    a.resize(N + 1);
    for (std::uint64_t n = 1; n <= N; ++n) a[n] = w(n);
    return a;
}

template <class Visit>
void walk(const PhaseVector& p, const std::vector<cplx>& a, std::uint64_t N, Visit&& visit) {
    RotorWalk rw(p);
    cplx s{0.0, 0.0};
    bool ones = a.empty();
    for (std::uint64_t n = 1; n <= N; ++n) {
        s += ones ? rw.current() : a[n] * rw.current();
        visit(n, s);
        if (n < N) rw.advance();
    }
}

}  // namespace

std::vector<SumValue> batch_eval(std::span<const PhaseVector> grid, const WeightSeq& weights,
                                 std::uint64_t N, unsigned threads) {
    std::vector<SumValue> out(grid.size());
    if (grid.empty()) return out;
    auto a = weight_table(weights, N);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        cplx last{0.0, 0.0};
        walk(grid[i], a, N, [&](std::uint64_t, const cplx& s) { last = s; });
        out[i] = {last, N};
    });
    return out;
}

std::vector<PrefixMax> batch_prefix_max(std::span<const PhaseVector> grid,
                                        const WeightSeq& weights, std::uint64_t N,
                                        unsigned threads) {
    require(N >= 1, "prefix_max needs N >= 1");
    std::vector<PrefixMax> out(grid.size());
    if (grid.empty()) return out;
    auto a = weight_table(weights, N);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        PrefixMax best;
        walk(grid[i], a, N, [&](std::uint64_t n, const cplx& s) {
            double v = std::abs(s);
            if (v > best.max_abs) best = {v, n};
        });
        out[i] = best;
    });
    return out;
}

std::vector<std::vector<double>> batch_ladder(std::span<const PhaseVector> grid,
                                              const WeightSeq& weights,
                                              std::span<const std::uint64_t> Ns,
                                              unsigned threads) {
    require(!Ns.empty(), "ladder must be non-empty");
    for (std::size_t i = 0; i < Ns.size(); ++i)
        require(Ns[i] >= 1 && (i == 0 || Ns[i] > Ns[i - 1]), "ladder must be strictly ascending");
    std::uint64_t top = Ns.back();
    std::vector<std::vector<double>> out(grid.size(), std::vector<double>(Ns.size()));
    auto a = weight_table(weights, top);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        std::size_t next = 0;
        walk(grid[i], a, top, [&](std::uint64_t n, const cplx& s) {
            if (next < Ns.size() && n == Ns[next]) {
                out[i][next] = std::abs(s) / std::sqrt(static_cast<double>(n));
                ++next;
            }
        });
    });
    return out;
}

FlatDemo flat_sum_demo(double xi, std::uint64_t N, std::uint64_t grid, unsigned threads) {
    require(std::isfinite(xi) && xi != 0.0, "flat_sum_demo needs xi != 0");
    require(N >= 1, "flat_sum_demo needs N >= 1");
    require(grid >= 4 * N, "grid resolution must be at least 4N");
    std::vector<cplx> c(N + 1);
    for (std::uint64_t n = 1; n <= N; ++n) {
        auto nd = static_cast<double>(n);
        c[n] = expi(turn_mul_real(xi, nd * std::log(nd)));
    }
    std::vector<cplx> table(grid);
    for (std::uint64_t k = 0; k < grid; ++k) table[k] = expi(turn_ratio(k, grid));
    std::vector<double> ratio(grid);
    double norm = std::sqrt(static_cast<double>(N));
    parallel_for(grid, threads, [&](std::size_t j) {
        cplx s{0.0, 0.0};
        std::uint64_t idx = 0;
        for (std::uint64_t n = 1; n <= N; ++n) {
            idx += j;
            if (idx >= grid) idx -= grid;
            s += c[n] * table[idx];
        }
        ratio[j] = std::abs(s) / norm;
    });
    FlatDemo best;
    for (std::uint64_t j = 0; j < grid; ++j)
        if (ratio[j] > best.ratio) best = {ratio[j], static_cast<double>(j) / static_cast<double>(grid)};
    return best;
}

}  // namespace weyl
