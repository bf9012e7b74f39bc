#include "weyl/panel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "weyl/arcs.hpp"
#include "weyl/cantor.hpp"
#include "weyl/core.hpp"
#include "weyl/dims.hpp"
#include "weyl/discrepancy.hpp"
#include "weyl/error.hpp"
#include "weyl/moment.hpp"
#include "weyl/oracles.hpp"
#include "weyl/parallel.hpp"
#include "weyl/repcount.hpp"
#include "weyl/scan.hpp"

namespace weyl::lab {

namespace {

using nlohmann::json;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Records named comparisons. A corrupted checker gets impossible bounds.
class Checker {
public:
    Checker(CriterionResult& r, bool corrupt) : r_(r), corrupt_(corrupt) {}

    void le(const std::string& name, double v, double bound) {
        record(name, v, bound, "<=", v <= (corrupt_ ? -kInf : bound));
    }
    void ge(const std::string& name, double v, double bound) {
        record(name, v, bound, ">=", v >= (corrupt_ ? kInf : bound));
    }
    void lt(const std::string& name, double v, double bound) {
        record(name, v, bound, "<", v < (corrupt_ ? -kInf : bound));
    }
    void rel(const std::string& name, double v, double target, double tol) {
        double err = std::fabs(v - target) / std::max(1.0, std::fabs(target));
        record(name, v, target, "rel", err <= (corrupt_ ? -1.0 : tol));
    }
    void abs(const std::string& name, double v, double target, double tol) {
        record(name, v, target, "abs", std::fabs(v - target) <= (corrupt_ ? -1.0 : tol));
    }
    void truth(const std::string& name, bool ok) { record(name, ok ? 1.0 : 0.0, 1.0, "true", ok && !corrupt_); }

    // Only failures and the first few passes are kept, to bound the summary size.
    void record(const std::string& name, double v, double bound, const char* op, bool ok) {
        ++count_;
        if (!ok) r_.pass = false;
        if (!ok || count_ <= 40)
            r_.checks.push_back({{"name", name}, {"value", finite(v)}, {"bound", finite(bound)},
                                 {"op", op}, {"pass", ok}});
    }

    std::size_t count() const { return count_; }

private:
    static json finite(double v) { return std::isfinite(v) ? json(v) : json(std::to_string(v)); }

    CriterionResult& r_;
    bool corrupt_;
    std::size_t count_ = 0;
};

std::string str(i128 k) {
    bool neg = k < 0;
    u128 m = neg ? static_cast<u128>(-k) : static_cast<u128>(k);
    std::string s;
    do s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(m % 10))), m /= 10;
    while (m);
    return neg ? "-" + s : s;
}

void orthogonality(Checker& ck, CriterionResult& r, unsigned) {
    auto w = WeightSeq::ones();
    std::vector<double> y;
    std::vector<cplx> b;
    for (int d : {2, 3, 5})
        for (std::uint64_t N : {10, 100, 1000}) {
            family_terms(SumFamily::monomial(d), w, N, SumRange::one_to_n, y, b);
            auto m = exact_moment(y, b, {0.0, 1.0}, 1);
            ck.rel("nu=1 d=" + std::to_string(d) + " N=" + std::to_string(N), m.total, double(N), 1e-9);
        }
    for (int d : {2, 3, 4, 5})
        for (std::uint64_t N : {5, 12, 25, 40, 60}) {
            family_terms(SumFamily::monomial(d), w, N, SumRange::one_to_n, y, b);
            auto m = exact_moment(y, b, {0.0, 1.0}, 2);
            double ref = double(r_count(d, 0, N).total);
            ck.rel("nu=2 d=" + std::to_string(d) + " N=" + std::to_string(N), m.total, ref, 1e-9);
            if (N == 60) r.info["R_" + std::to_string(d) + "(0,60)"] = ref;
        }
}

void counting(Checker& ck, CriterionResult& r, unsigned) {
    std::vector<i128> ks{0, 1, -1, 7, -7};
    for (int k = 1720; k <= 1738; ++k) ks.push_back(k);
    for (std::uint64_t N : {12, 25, 60})
        for (i128 k : ks) {
            auto fast = r_count(3, k, N).total;
            auto slow = oracle::rep_count(3, k, N);
            ck.abs("R_3(" + str(k) + "," + std::to_string(N) + ")", double(fast), double(slow), 0.0);
        }
    auto taxi = r_count(3, 0, 12);
    ck.abs("R_3(0,12)", double(taxi.total), 284.0, 0.0);
    ck.abs("R_3(0,12) nondiagonal", double(taxi.nondiagonal), 8.0, 0.0);
    std::uint64_t bad = 0;
    for (std::uint64_t N = 1; N <= 500; ++N) {
        double expect = 2.0 * double(N) * double(N) - double(N);
        bool ok = double(q_count(0, 0, N).total) == expect;
        if (!ok) ++bad;
        if (!ok || N == 500) ck.abs("Q(0,0," + std::to_string(N) + ")", double(q_count(0, 0, N).total), expect, 0.0);
    }
    r.info["q_count_mismatches"] = bad;
}

void moment4(Checker& ck, CriterionResult& r, unsigned) {
    Interval I{0.3, 0.2};
    double prev = kInf;
    for (std::uint64_t N : {80, 120, 160}) {
        double ratio = fourth_moment_interval(5, WeightSeq::ones(), I, N).ratio;
        std::string tag = "N=" + std::to_string(N);
        ck.ge("ratio " + tag, ratio, 0.8);
        ck.le("ratio " + tag, ratio, 1.2);
        double dev = std::fabs(ratio - 1.0);
        ck.le("deviation " + tag, dev, prev);
        prev = dev;
        r.info["ratio_" + tag] = ratio;
    }
}

void moment2(Checker& ck, CriterionResult& r, unsigned) {
    UnitRng rng(2024);
    for (int i = 0; i < 5; ++i) {
        double len = 0.05 + 0.45 * rng.next();
        double start = (1.0 - len) * rng.next();
        double ratio = second_moment_interval(SumFamily::monomial(3), WeightSeq::ones(), {start, len}, 2000).ratio;
        std::string tag = "[" + std::to_string(start) + ", +" + std::to_string(len) + ")";
        ck.ge("ratio " + tag, ratio, 0.95);
        ck.le("ratio " + tag, ratio, 1.05);
        r.info["ratio_" + std::to_string(i)] = ratio;
    }
}

void profile(Checker& ck, CriterionResult& r, unsigned) {
    struct Case {
        int d;
        std::uint64_t N;
        double bound;
    };
    for (Case c : {Case{5, 200, 1 + 2 / std::sqrt(5.0) + 0.3}, Case{3, 500, 11.0 / 6.0 + 0.3}}) {
        PowerSumSpectrum spectrum(c.d, c.N);
        auto ks = sample_shifts(spectrum, 4000, 99, true);
        auto p = nondiag_profile(spectrum, ks);
        double e = p.exponent.value_or(0.0);
        std::string tag = "d=" + std::to_string(c.d) + " N=" + std::to_string(c.N);
        ck.le("log_N max nondiag " + tag, e, c.bound);
        r.info["max_nondiag_" + tag] = p.max_nondiag;
        r.info["argmax_k_" + tag] = str(p.argmax_k);
    }
}

struct ArcCase {
    int d;
    std::int64_t a, q;
    double t;  // xi = t N^{-d}
};

// Frozen major-arc points, N = 10^4.
const ArcCase kArcPanel[] = {
    {2, 9, 44, 0.409}, {3, 1, 25, 0.1722}, {5, 5, 16, -0.4869}, {2, 13, 14, 0.1607}, {3, 24, 37, 0.2574},
    {5, 23, 39, -0.2067}, {2, 21, 32, -0.1645}, {3, 19, 20, -0.4704}, {5, 35, 43, -0.3972}, {2, 5, 37, -0.2542},
    {3, 17, 38, 0.4355}, {5, 2, 39, 0.426}, {2, 7, 22, 0.2162}, {3, 13, 25, 0.3976}, {5, 21, 37, 0.2047},
    {2, 31, 46, -0.1672}, {3, 17, 50, 0.1891}, {5, 19, 20, -0.4253}, {2, 2, 19, 0.0672}, {3, 2, 5, -0.2089},
    {5, 11, 20, -0.3953}, {2, 11, 18, -0.0186}, {3, 7, 11, 0.0859}, {5, 2, 7, 0.0474}, {2, 10, 11, 0.1817},
    {3, 7, 40, 0.3278}, {5, 11, 35, 0.1902}, {2, 15, 31, 0.1044}, {3, 11, 28, -0.0577}, {5, 7, 12, 0.4242},
    {2, 1, 2, -0.3042}, {3, 16, 39, -0.3951}, {5, 10, 27, 0.0691}, {2, 0, 1, 0.4366}, {3, 11, 35, -0.1562},
    {5, 25, 34, -0.0901}, {2, 17, 38, 0.4013}, {3, 24, 25, 0.1988}, {5, 6, 31, -0.4895}, {2, 4, 9, 0.3688},
    {3, 22, 45, -0.2907}, {5, 7, 10, 0.0149}, {2, 32, 35, -0.0259}, {3, 17, 42, 0.0888}, {5, 11, 24, 0.4248},
    {2, 1, 50, 0.4477}, {3, 7, 23, -0.4202}, {5, 1, 4, 0.2766}, {2, 11, 18, 0.3491}, {3, 2, 19, -0.0268},
};

void arcs(Checker& ck, CriterionResult& r, unsigned) {
    const std::uint64_t N = 10000;
    double worst = 0.0;
    for (const auto& c : kArcPanel) {
        double xi = c.t * std::pow(double(N), -c.d);
        cplx direct = rational_point_sum(c.a, c.q, xi, c.d, N);
        cplx main = vaughan_approx({c.a, c.q, xi}, c.d, N).main;
        double bound = 20.0 * std::sqrt(double(c.q)) * std::sqrt(1.0 + std::fabs(c.t));
        double res = std::abs(direct - main);
        worst = std::max(worst, res / bound);
        ck.le("d=" + std::to_string(c.d) + " a/q=" + std::to_string(c.a) + "/" + std::to_string(c.q), res, bound);
    }
    r.info["max_residual_over_bound"] = worst;

    std::mt19937_64 g(31415);
    std::uniform_real_distribution<double> uN(10.0, 2000.0), ux(-0.5, 0.5);
    double worst_osc = 0.0;
    for (int i = 0; i < 100; ++i) {
        double Nn = std::floor(uN(g));
        double xi = ux(g);
        if (std::fabs(xi) < 1e-3) xi = 1e-3;
        double xs[] = {xi};
        cplx num = oscillatory_integral(xs, Nn);
        double th = 2 * std::numbers::pi * xi * Nn;
        cplx exact = (cplx(std::cos(th), std::sin(th)) - 1.0) / cplx(0.0, 2 * std::numbers::pi * xi);
        double err = std::abs(num - exact);
        worst_osc = std::max(worst_osc, err / Nn);
        ck.le("oscillatory case " + std::to_string(i), err, 1e-6 * Nn);
    }
    r.info["max_osc_error_over_N"] = worst_osc;
}

void dims_check(Checker& ck, CriterionResult& r, unsigned) {
    using namespace weyl::dims;
    ck.abs("s(2,1/2)", s_dim(2, 0.5), 2.0, 0.0);
    ck.abs("u(2,1/2)", u_dim(2, 0.5), 2.0, 0.0);
    ck.abs("s(2,1)", s_dim(2, 1.0), 0.0, 0.0);
    ck.abs("u(2,1)", u_dim(2, 1.0), 0.0, 0.0);
    double worst = 0.0;
    for (int i = 50; i <= 100; ++i) {
        double a = i / 100.0;
        double es = std::fabs(s_dim(2, a) - s2_piecewise(a)), eu = std::fabs(u_dim(2, a) - u2_piecewise(a));
        worst = std::max({worst, es, eu});
        ck.le("s(2," + std::to_string(a) + ") vs closed form", es, 1e-12);
        ck.le("u(2," + std::to_string(a) + ") vs closed form", eu, 1e-12);
        if (i > 50 && i < 100) ck.lt("s<u at " + std::to_string(a), s_dim(2, a), u_dim(2, a));
    }
    r.info["max_piecewise_error"] = worst;
    for (int d = 1; d <= 12; ++d) ck.abs("u(" + std::to_string(d) + ",1/2)", u_dim(d, 0.5), double(d), 1e-12);
    double q = s_dim(10000, 0.5) / std::sqrt(2.0e4);
    ck.ge("s(10^4,1/2)/sqrt(2e4)", q, 0.98);
    ck.le("s(10^4,1/2)/sqrt(2e4)", q, 1.05);
}

void disc(Checker& ck, CriterionResult& r, unsigned threads) {
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
        std::mt19937_64 g(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::size_t n = 1 + (seed * 37) % 300;
        std::vector<double> p(n);
        for (auto& v : p) v = seed % 4 == 0 ? std::floor(u(g) * 23) / 23 : u(g);
        double ref = oracle::discrepancy(p);
        ck.abs("seed " + std::to_string(seed) + " N=" + std::to_string(n), disc_exact(p).value, ref, 1e-9);
    }
    std::vector<double> ratios(50);
    std::vector<PhaseVector> xs;
    std::mt19937_64 g(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) xs.push_back(PhaseVector({u(g), u(g), u(g)}));
    parallel_for(xs.size(), threads, [&](std::size_t i) { ratios[i] = koksma_probe(xs[i], 10000).ratio; });
    double worst = *std::max_element(ratios.begin(), ratios.end());
    ck.le("max koksma ratio", worst, 10.0);
    r.info["max_koksma_ratio"] = worst;
}

void cantor(Checker& ck, CriterionResult& r, unsigned threads) {
    Pattern fig;
    fig.parent = {0.0, 1.0};
    fig.N = 8;
    fig.M = 6;
    fig.delta = 0.05;
    for (int cell : {0, 1, 3, 4, 6, 7}) fig.members.push_back({cell * 0.125 + 0.04, 0.05});
    ck.truth("eight-cell pattern accepted", pattern_validate(fig).ok);
    auto longer = fig;
    longer.members[2] = {0.375, 0.1};
    auto crossing = fig;
    crossing.members[0].start = 0.1;
    auto shared = fig;
    shared.members[1].start = 0.0;
    auto miscount = fig;
    miscount.M = 5;
    for (auto [name, p] : {std::pair{"length", &longer}, {"cell boundary", &crossing}, {"shared cell", &shared},
                           {"count", &miscount}}) {
        auto c = pattern_validate(*p);
        ck.truth(std::string("rejects ") + name + " mutation", !c.ok && c.violations.size() == 1);
    }

    auto mt = middle_thirds_levels(10);
    ck.abs("middle thirds", cantor_dim_estimate(mt), std::log(2.0) / std::log(3.0), 1e-9);

    GrowthSpec syn;
    syn.L1 = 32;
    double target = (syn.gamma - 0.5 - syn.tau) / (syn.gamma + syn.tau);
    auto sched = synthetic_schedule(syn, 4);
    double est = cantor_dim_estimate(sched);
    ck.abs("synthetic schedule vs (gamma-1/2-tau)/(gamma+tau)", est, target, 0.1);
    json per = json::array();
    double acc = 0.0;
    for (const auto& l : sched) {
        acc += std::log(l.M);
        per.push_back(acc / -std::log(l.delta));
    }
    r.info["synthetic_per_level"] = per;

    GrowthSpec g;  // L1 = 16, L2 = 256
    auto b = cantor_build(g, WeightSeq::ones(), {0.0, 1.0}, 2, Budget::from_env(), threads);
    ck.truth("build not truncated", !b.truncated && b.levels.size() == 3);
    json lv = json::array();
    for (std::size_t k = 1; k < b.levels.size(); ++k) {
        const auto& L = b.levels[k];
        auto N = static_cast<std::uint64_t>(L.L);
        std::string tag = "level " + std::to_string(k);
        ck.truth(tag + " patterns validate", L.patterns_valid);
        ck.le(tag + " delta_k * N_k / delta_{k-1}", L.delta * double(L.N) / b.levels[k - 1].delta, 1.0);
        double thr = g.c0 * std::sqrt(double(N));
        auto at_w = large_value_profile(g.gamma, WeightSeq::ones(), L.witnesses, N, threads);
        std::vector<double> ends;
        for (const auto& iv : L.intervals) ends.push_back(iv.start), ends.push_back(iv.end());
        auto at_e = large_value_profile(g.gamma, WeightSeq::ones(), ends, N, threads);
        ck.ge(tag + " min prefix_max at centers", *std::min_element(at_w.begin(), at_w.end()), thr);
        ck.ge(tag + " min prefix_max at endpoints", *std::min_element(at_e.begin(), at_e.end()), thr / 2);
        lv.push_back({{"k", k}, {"L", L.L}, {"N", L.N}, {"M", L.M}, {"delta", L.delta},
                      {"intervals", L.intervals.size()}, {"hypothesis_met", L.hypothesis_met}});
    }
    r.info["levels"] = lv;
    r.info["build_estimate"] = cantor_dim_estimate(b.levels);
}

void scan(Checker& ck, CriterionResult& r, unsigned threads) {
    std::vector<std::uint64_t> Ns;
    for (int e = 8; e <= 13; ++e) Ns.push_back(std::uint64_t{1} << e);
    auto rep = ladder_stats(ScanKind::monomial(3), WeightSeq::ones(), Interval{0.0, 1.0}, Ns, 0.3, 4.0, 2048, 1,
                            threads);
    ck.ge("ladder union fraction", rep.union_fraction, 0.9);
    r.info["tail_union"] = rep.tail_union;
    auto cx = counterexample_A(1000, {0.0, 1.0});
    ck.abs("counterexample bound vs 2pi^2/54", cx.bound, 2 * std::numbers::pi * std::numbers::pi / 54, 1e-3);
    r.info["counterexample_measure"] = json::array({cx.lower, cx.upper});
}

void variance(Checker& ck, CriterionResult& r, unsigned) {
    double prev = kInf;
    const double eps1 = 0.01;
    for (std::uint64_t N : {256, 512}) {
        double Nd = double(N);
        double eps0 = std::pow(Nd, -3.0 + 0.5 + 0.1);
        auto v = variance_integral(3.0, WeightSeq::ones(), 0.2, eps1, eps0, N, 64, 7);
        std::string tag = "N=" + std::to_string(N);
        ck.le("value " + tag, v.value, 10.0 * std::pow(Nd, -3.0 + 0.2) * (eps1 + 1.0 / Nd));
        ck.lt("decrease " + tag, v.value, prev);
        prev = v.value;
        r.info["value_" + tag] = v.value;
        r.info["stderr_" + tag] = v.stderr_;
    }
}

using Runner = void (*)(Checker&, CriterionResult&, unsigned);

struct Entry {
    CriterionInfo info;
    Runner run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {{1, "orthogonality", "orthogonality identities"}, orthogonality},
        {{2, "counting", "counting oracle equivalence"}, counting},
        {{3, "moment4", "fourth-moment asymptotic"}, moment4},
        {{4, "moment2", "second-moment asymptotic"}, moment2},
        {{5, "profile", "non-diagonal profile exponents"}, profile},
        {{6, "arcs", "major-arc residuals"}, arcs},
        {{7, "dims", "dimension calculators"}, dims_check},
        {{8, "disc", "discrepancy oracle"}, disc},
        {{9, "cantor", "Cantor machinery"}, cantor},
        {{10, "scan", "measure-scan trends"}, scan},
        {{11, "variance", "variance decay"}, variance},
    };
    return e;
}

bool listed(const std::vector<std::string>& names, const CriterionInfo& c) {
    for (const auto& n : names)
        if (n == c.id || n == std::to_string(c.number)) return true;
    return false;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
    static const std::vector<CriterionInfo> c = [] {
        std::vector<CriterionInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return c;
}

std::vector<CriterionResult> run_panel(const PanelOptions& opt) {
    for (const auto& n : opt.only) {
        bool known = false;
        for (const auto& c : criteria()) known = known || n == c.id || n == std::to_string(c.number);
        require(known, "unknown criterion: " + n);
    }
    std::vector<CriterionResult> out;
    for (const auto& e : entries()) {
        if (!opt.only.empty() && !listed(opt.only, e.info)) continue;
        CriterionResult r;
        r.number = e.info.number;
        r.id = e.info.id;
        r.title = e.info.title;
        r.pass = true;
        Checker ck(r, listed(opt.corrupt, e.info));
        auto t0 = std::chrono::steady_clock::now();
        try {
            e.run(ck, r, opt.threads);
        } catch (const std::exception& ex) {
            r.pass = false;
            r.info["error"] = ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.info["checks_run"] = ck.count();
        out.push_back(std::move(r));
    }
    return out;
}

json panel_summary(const std::vector<CriterionResult>& results) {
    json crit = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        crit.push_back({{"number", r.number}, {"id", r.id}, {"title", r.title}, {"pass", r.pass},
                        {"seconds", r.seconds}, {"checks", r.checks}, {"info", r.info}});
    }
    return {{"all_pass", all}, {"criteria", crit}};
}

}  // namespace weyl::lab
