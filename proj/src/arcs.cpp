#include "weyl/arcs.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "weyl/core.hpp"
#include "weyl/error.hpp"
#include "weyl/parallel.hpp"

namespace weyl {

namespace {

std::uint64_t mod_pos(std::int64_t a, std::int64_t q) {
    std::int64_t r = a % q;
    return static_cast<std::uint64_t>(r < 0 ? r + q : r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>(u128(a) * b % q);
}

std::uint64_t pow_mod(std::uint64_t n, int d, std::uint64_t q) {
    std::uint64_t r = 1 % q, b = n % q;
    for (int i = 0; i < d; ++i) r = mul_mod(r, b, q);
    return r;
}

}  // namespace

RationalApprox cf_approx(double x, std::int64_t qmax) {
    require(std::isfinite(x), "x must be finite");
    require(qmax >= 1, "qmax must be >= 1");
    double fl = std::floor(x);
    require(std::fabs(fl) < 4e15, "x too large for a rational approximation");
    auto a0 = static_cast<std::int64_t>(fl);
    double f = x - fl;  // exact
    // Convergents of f = P / 2^s, computed exactly.
    std::int64_t h1 = 0, h2 = 1, k1 = 1, k2 = 0;  // h/k = 0/1 so far
    if (f != 0.0) {
        int E = 0;
        double m = std::frexp(f, &E);
        int s = 53 - E;
        if (s <= 125) {
            u128 P = static_cast<u128>(std::ldexp(m, 53));
            u128 Q = u128(1) << s;
            // First quotient of P/Q is floor(f) = 0; continue with Q/P.
            u128 num = Q, den = P;
            while (den != 0) {
                u128 ai = num / den;
                if (k1 != 0 && ai > static_cast<u128>((qmax - k2) / k1)) break;
                auto aq = static_cast<std::int64_t>(ai);
                std::int64_t h = aq * h1 + h2, k = aq * k1 + k2;
                h2 = h1, k2 = k1, h1 = h, k1 = k;
                u128 rem = num - ai * den;
                num = den, den = rem;
            }
        }
    }
    RationalApprox r;
    r.q = k1;
    r.a = h1 + a0 * k1;
    r.xi = std::fma(x - static_cast<double>(a0), static_cast<double>(r.q), -static_cast<double>(h1)) /
           static_cast<double>(r.q);
    return r;
}

cplx oscillatory_integral(std::span<const double> xi, double N, std::uint64_t max_nodes) {
    require(std::isfinite(N) && N >= 0.0, "integration length must be >= 0");
    for (double v : xi) require(std::isfinite(v), "phase coefficients must be finite");
    if (N == 0.0) return {0.0, 0.0};
    double slope = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i)
        slope += static_cast<double>(i + 1) * std::fabs(xi[i]) * std::pow(N, static_cast<double>(i));
    double h0 = slope > 0.0 ? std::min(1.0, 1.0 / (50.0 * slope)) : 1.0;
    double panels_f = std::ceil(N / h0);
    if (panels_f + 1 > static_cast<double>(max_nodes))
        throw BudgetError("oscillatory integral step underflow: needs " + std::to_string(panels_f) + " nodes");
    auto panels = static_cast<std::uint64_t>(panels_f);
    if (panels % 2) ++panels;
    double h = N / static_cast<double>(panels);
    auto f = [&](double t) {
        double ph = 0.0;
        for (std::size_t i = xi.size(); i-- > 0;) ph = (ph + xi[i]) * t;
        ph -= std::nearbyint(ph);
        double a = 2.0 * std::numbers::pi * ph;
        return cplx(std::cos(a), std::sin(a));
    };
    cplx odd{0.0, 0.0}, even{0.0, 0.0};
    for (std::uint64_t j = 1; j < panels; ++j) (j % 2 ? odd : even) += f(static_cast<double>(j) * h);
    return (f(0.0) + f(N) + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

cplx gauss_sum(std::int64_t a, std::int64_t q, int d) {
    require(q >= 1, "q must be >= 1");
    require(d >= 1, "degree must be >= 1");
    auto qq = static_cast<std::uint64_t>(q);
    std::uint64_t am = mod_pos(a, q);
    cplx s{0.0, 0.0};
    for (std::uint64_t n = 1; n <= qq; ++n) s += expi(turn_ratio(mul_mod(am, pow_mod(n, d, qq), qq), qq));
    return s;
}

cplx complete_sum(std::span<const std::int64_t> a, std::int64_t q) {
    require(q >= 1, "q must be >= 1");
    auto qq = static_cast<std::uint64_t>(q);
    cplx s{0.0, 0.0};
    for (std::uint64_t n = 1; n <= qq; ++n) {
        std::uint64_t acc = 0;
        for (std::size_t i = a.size(); i-- > 0;) acc = mul_mod((acc + mod_pos(a[i], q)) % qq, n % qq, qq);
        s += expi(turn_ratio(acc, qq));
    }
    return s;
}

cplx rational_point_sum(std::int64_t a, std::int64_t q, double xi, int d, std::uint64_t N) {
    require(q >= 1, "q must be >= 1");
    auto qq = static_cast<std::uint64_t>(q);
    std::uint64_t am = mod_pos(a, q);
    cplx s{0.0, 0.0};
    for (std::uint64_t n = 1; n <= N; ++n) {
        turn_t t = turn_ratio(mul_mod(am, pow_mod(n, d, qq), qq), qq) + turn_mul(xi, checked_pow(n, d));
        s += expi(t);
    }
    return s;
}

ArcMain vaughan_approx(const RationalApprox& r, int d, std::uint64_t N) {
    require(r.q >= 1, "q must be >= 1");
    require(d >= 1, "degree must be >= 1");
    std::vector<double> xi(static_cast<std::size_t>(d), 0.0);
    xi.back() = r.xi;
    auto Nd = static_cast<double>(N);
    ArcMain m;
    m.main = gauss_sum(r.a, r.q, d) / static_cast<double>(r.q) * oscillatory_integral(xi, Nd);
    m.error_budget = std::sqrt(static_cast<double>(r.q)) * std::sqrt(1.0 + std::fabs(r.xi) * std::pow(Nd, d));
    return m;
}

BakerPoint baker_point(std::vector<std::int64_t> a, std::int64_t q, std::vector<double> xi) {
    require(q >= 1, "q must be >= 1");
    require(!a.empty() && a.size() == xi.size(), "numerators and offsets must match in length");
    BakerPoint p{std::move(a), q, std::move(xi), q};
    std::int64_t D = q;
    for (std::size_t i = 1; i < p.a.size(); ++i) D = std::gcd(D, p.a[i]);
    p.D = D;
    return p;
}

BakerPoint baker_point(std::span<const double> x, std::int64_t q) {
    require(q >= 1, "q must be >= 1");
    std::vector<std::int64_t> a;
    std::vector<double> xi;
    auto qd = static_cast<double>(q);
    for (double v : x) {
        require(std::isfinite(v), "coefficients must be finite");
        auto ai = static_cast<std::int64_t>(std::llround(v * qd));
        a.push_back(ai);
        xi.push_back(std::fma(v, qd, -static_cast<double>(ai)) / qd);
    }
    return baker_point(std::move(a), q, std::move(xi));
}

ArcMain baker_approx(const BakerPoint& p, std::uint64_t N) {
    auto d = static_cast<double>(p.a.size());
    auto Nd = static_cast<double>(N);
    auto qd = static_cast<double>(p.q);
    ArcMain m;
    for (std::size_t i = 0; i < p.xi.size(); ++i)
        if (std::fabs(p.xi[i]) > 1.0 / (2.0 * d * d * qd * std::pow(Nd, static_cast<double>(i)))) m.valid = false;
    m.main = complete_sum(p.a, p.q) / qd * oscillatory_integral(p.xi, Nd);
    m.error_budget = std::pow(qd, 1.0 - 1.0 / d) * std::pow(static_cast<double>(p.D), 1.0 / d);
    return m;
}

std::vector<ArcRow> major_arc_scan(int d, std::uint64_t N, std::span<const double> grid,
                                   std::int64_t q_limit, unsigned threads) {
    require(d >= 1, "degree must be >= 1");
    require(N >= 1, "N must be >= 1");
    if (q_limit == 0) q_limit = static_cast<std::int64_t>(std::sqrt(static_cast<double>(N)));
    require(q_limit >= 1, "q_limit must be >= 1");
    std::vector<ArcRow> rows(grid.size());
    double width = static_cast<double>(q_limit) / std::pow(static_cast<double>(N), d);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        ArcRow row;
        row.x = grid[i];
        row.approx = cf_approx(grid[i], q_limit);
        row.major = row.approx.q <= q_limit && std::fabs(row.approx.xi) <= width;
        cplx direct = weyl_sum(MonomialPhase{grid[i], d}, WeightSeq::ones(), N).value;
        row.direct_abs = std::abs(direct);
        if (row.major) {
            auto m = vaughan_approx(row.approx, d, N);
            row.residual_ratio = std::abs(direct - m.main) / m.error_budget;
        }
        rows[i] = row;
    });
    return rows;
}

}  // namespace weyl
