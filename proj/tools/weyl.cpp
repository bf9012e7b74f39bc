// weyl: command-line front end for the Weyl sum laboratory.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weyl/arcs.hpp"
#include "weyl/cantor.hpp"
#include "weyl/core.hpp"
#include "weyl/dims.hpp"
#include "weyl/discrepancy.hpp"
#include "weyl/error.hpp"
#include "weyl/moment.hpp"
#include "weyl/panel.hpp"
#include "weyl/parallel.hpp"
#include "weyl/record.hpp"
#include "weyl/repcount.hpp"
#include "weyl/scan.hpp"

using nlohmann::json;
using namespace weyl;
using lab::Table;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitPanel = 4;

struct Opts {
    int d = 3;
    std::vector<double> x;
    std::uint64_t n = 1000;
    double gamma = 0.0;
    double tau = 0.1;
    double xi = 0.5;
    std::uint64_t grid = 0;
    std::string family = "monomial";
    std::string range = "one_to_n";
    double start = 0.0, length = 1.0;
    double start2 = 0.0, length2 = 1.0;
    double x1 = 0.2, eps1 = 0.01, eps0 = 0.0;
    std::uint64_t samples = 64;
    std::uint64_t seed = 1;
    std::string k = "0";
    std::int64_t m = 0;
    std::int64_t qmax = 0;
    std::int64_t q = 1;
    std::int64_t qlimit = 0;
    double alpha = 0.5;
    double c = 0.3, C = 4.0;
    double alpha1 = 1.0, alpha2 = 2.0;
    std::string kind = "monomial";
    std::vector<std::uint64_t> ns;
    double c0 = 0.25;
    double L1 = 16.0;
    int depth = 2;
    std::string schedule = "middle-thirds";
    int levels = 6;
    std::vector<double> mlist, deltas, radii;
    double t = 0.6;
    int nmax = 1000;
    bool no_snap = false;
    std::uint64_t count = 1000;
    std::string weights = "ones";
    std::vector<double> twist;
    unsigned threads = 0;
    std::uint64_t budget = 0;
    std::string out, csv;
    std::vector<std::string> only, corrupt;
};

struct Ctx {
    const Opts& o;
    json outputs = json::object();
    std::optional<Table> table;
    int exit_code = 0;
};

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

i128 parse_i128(const std::string& s) {
    require(!s.empty(), "empty integer");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') neg = s[0] == '-', i = 1;
    require(i < s.size(), "malformed integer: " + s);
    u128 v = 0;
    for (; i < s.size(); ++i) {
        require(s[i] >= '0' && s[i] <= '9', "malformed integer: " + s);
        u128 next = v * 10 + static_cast<u128>(s[i] - '0');
        require(next / 10 == v && next < (u128{1} << 126), "integer out of range: " + s);
        v = next;
    }
    return neg ? -static_cast<i128>(v) : static_cast<i128>(v);
}

std::string i128_str(i128 k) {
    bool neg = k < 0;
    u128 m = neg ? static_cast<u128>(-k) : static_cast<u128>(k);
    std::string s;
    do s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(m % 10))), m /= 10;
    while (m);
    return neg ? "-" + s : s;
}

WeightSeq make_weights(const Opts& o) {
    WeightSeq w = [&] {
        if (o.weights == "ones") return WeightSeq::ones();
        if (o.weights == "random") return WeightSeq::random_phase(o.seed);
        throw ValidationError("weights must be ones or random");
    }();
    return o.twist.empty() ? w : w.twisted(o.twist);
}

PhaseVector monomial_vector(int d, double x) {
    require(d >= 1 && d <= 64, "degree must lie in [1, 64]");
    std::vector<double> c(static_cast<std::size_t>(d), 0.0);
    c.back() = x;
    return PhaseVector(std::move(c));
}

PhaseVector full_vector(const Opts& o, bool d_given) {
    require(!o.x.empty(), "--x needs at least one coefficient");
    if (d_given) require(static_cast<int>(o.x.size()) == o.d, "--x must have d coefficients");
    return PhaseVector(o.x);
}

Interval region(const Opts& o) { return Interval::make(o.start, o.length); }

GrowthSpec growth(const Opts& o) {
    GrowthSpec g;
    g.gamma = o.gamma > 0.0 ? o.gamma : 3.0;
    g.tau = o.tau;
    g.c0 = o.c0;
    g.L1 = o.L1;
    return g;
}

ScanKind scan_kind(const Opts& o) {
    if (o.kind == "monomial") return ScanKind::monomial(o.d);
    if (o.kind == "full") return ScanKind::full(o.d);
    throw ValidationError("kind must be monomial or full");
}

Box scan_box(const Opts& o, const ScanKind& k) {
    Box b;
    for (std::size_t i = 0; i < k.dims(); ++i) b.sides.push_back(region(o));
    return b;
}

std::vector<double> unit_grid(const Opts& o, std::uint64_t fallback) {
    std::uint64_t g = o.grid ? o.grid : fallback;
    require(g >= 1 && g <= (std::uint64_t{1} << 26), "grid must lie in [1, 2^26]");
    Interval I = region(o);
    std::vector<double> xs(g);
    for (std::uint64_t j = 0; j < g; ++j) xs[j] = I.start + (static_cast<double>(j) + 0.5) / static_cast<double>(g) * I.length;
    return xs;
}

json rep_json(const RepCount& r) {
    return {{"total", r.total}, {"diagonal", r.diagonal}, {"nondiagonal", r.nondiagonal}};
}

using Handler = std::function<void(Ctx&)>;

struct Sub {
    CLI::App* app;
    Handler run;
};

}  // namespace

int main(int argc, char** argv) {
    static const std::set<std::string> kSubs{
        "eval", "batch", "flat", "moment2", "moment4", "momentq", "variance", "repcount", "qcount", "powerpairs",
        "profile", "cf", "osc", "vaughan", "baker", "arcs", "dims", "disc", "koksma", "pattern",
        "cantor", "dimest", "mass", "eps0", "frac", "ladder", "cexA", "panel"};
    auto usage = [&] {
        std::cerr << "usage: weyl <subcommand> [options]\nsubcommands:";
        for (const auto& s : kSubs) std::cerr << ' ' << s;
        std::cerr << "\nrun 'weyl <subcommand> --help' for its options\n";
    };
    if (argc < 2) {
        usage();
        return kExitUsage;
    }
    std::string first = argv[1];
    if (first == "-h" || first == "--help") {
        usage();
        return 0;
    }
    if (!kSubs.count(first)) {
        std::cerr << "unknown subcommand: " << first << '\n';
        usage();
        return kExitUsage;
    }

    Opts o;
    CLI::App app{"Weyl sum laboratory"};
    app.require_subcommand(1, 1);
    app.option_defaults()->always_capture_default();
    std::string config_path;
    std::map<std::string, Sub> subs;

    auto sub = [&](const char* name, const char* help, Handler h) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--threads", o.threads, "worker threads (0 = hardware)");
        s->add_option("--out", o.out, "write the JSON record here instead of stdout");
        s->add_option("--csv", o.csv, "write the result table as CSV");
        s->add_option("--config", config_path, "flat key = value file; flags take precedence");
        s->add_option("--budget", o.budget, "kernel work budget (pairs)");
        subs[name] = {s, std::move(h)};
        return s;
    };
    auto weights = [&](CLI::App* s) {
        s->add_option("--weights", o.weights, "ones or random");
        s->add_option("--seed", o.seed, "seed for random weights and sampling");
        s->add_option("--twist", o.twist, "multiply weights by e(c1 n + c2 n^2 + ...)")->delimiter(',');
    };
    auto interval = [&](CLI::App* s) {
        s->add_option("--start", o.start, "interval start");
        s->add_option("--length", o.length, "interval length");
    };

    CLI::Option* d_opt = nullptr;
    {
        auto* s = sub("eval", "evaluate S_d(x; N), or sum e(x n^gamma) with --gamma", [&](Ctx& c) {
            WeightSeq w = make_weights(c.o);
            SumValue v = c.o.gamma > 0.0 ? weyl_sum(GeneralPhase::power(c.o.x.at(0), c.o.gamma), w, c.o.n)
                                         : weyl_sum(full_vector(c.o, d_opt->count() > 0), w, c.o.n);
            c.outputs["value"] = complex_json(v.value);
            c.outputs["abs"] = std::abs(v.value);
            c.outputs["abs_over_sqrt_n"] = std::abs(v.value) / std::sqrt(static_cast<double>(c.o.n));
            c.outputs["n_terms"] = v.n_terms;
        });
        d_opt = s->add_option("--d", o.d, "degree");
        s->add_option("--x", o.x, "coefficients x1..xd")->delimiter(',')->required();
        s->add_option("--n", o.n, "N");
        s->add_option("--gamma", o.gamma, "real exponent > 1 (uses x1 only)");
        weights(s);
    }
    {
        auto* s = sub("batch", "sigma_d over a grid of the interval", [&](Ctx& c) {
            auto xs = unit_grid(c.o, 1024);
            std::vector<PhaseVector> g;
            for (double x : xs) g.push_back(monomial_vector(c.o.d, x - std::floor(x)));
            auto vals = batch_eval(g, make_weights(c.o), c.o.n, c.o.threads);
            Table t{{"x", "re", "im", "abs"}, {}};
            double best = -1.0, arg = 0.0, msq = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                double a = std::abs(vals[i].value);
                t.add({xs[i], vals[i].value.real(), vals[i].value.imag(), a});
                msq += a * a;
                if (a > best) best = a, arg = xs[i];
            }
            c.outputs["max_abs"] = best;
            c.outputs["argmax_x"] = arg;
            c.outputs["mean_sq_over_n"] = msq / static_cast<double>(xs.size()) / static_cast<double>(c.o.n);
            c.table = std::move(t);
        });
        s->add_option("--d", o.d, "degree");
        s->add_option("--n", o.n, "N");
        s->add_option("--grid", o.grid, "grid points (default 1024)");
        interval(s);
        weights(s);
    }
    {
        auto* s = sub("flat", "max over x of |sum e(xi n log n + x n)| / sqrt(N)", [&](Ctx& c) {
            auto r = flat_sum_demo(c.o.xi, c.o.n, c.o.grid ? c.o.grid : 4 * c.o.n, c.o.threads);
            c.outputs["ratio"] = r.ratio;
            c.outputs["argmax_x"] = r.argmax_x;
        });
        s->add_option("--xi", o.xi, "xi != 0");
        s->add_option("--n", o.n, "N");
        s->add_option("--grid", o.grid, "grid resolution (default 4N)");
    }
    {
        auto* s = sub("moment2", "exact second moment over an interval", [&](Ctx& c) {
            SumFamily f = c.o.family == "monomial" ? SumFamily::monomial(c.o.d)
                          : c.o.family == "power"  ? SumFamily::power(c.o.gamma)
                                                   : throw ValidationError("family must be monomial or power");
            SumRange r = c.o.range == "one_to_n"    ? SumRange::one_to_n
                         : c.o.range == "n_to_2n"   ? SumRange::n_to_2n
                         : c.o.range == "upper_half" ? SumRange::upper_half
                                                     : throw ValidationError("unknown range");
            auto m = second_moment_interval(f, make_weights(c.o), region(c.o), c.o.n, r);
            c.outputs["total"] = m.moment.total;
            c.outputs["diagonal"] = m.moment.diagonal;
            c.outputs["ratio"] = m.ratio;
            c.outputs["n_terms"] = m.moment.n_terms;
            c.outputs["spectrum_size"] = m.moment.spectrum_size;
        });
        s->add_option("--family", o.family, "monomial or power");
        s->add_option("--d", o.d, "degree");
        s->add_option("--gamma", o.gamma, "exponent for the power family");
        s->add_option("--range", o.range, "one_to_n, n_to_2n or upper_half");
        s->add_option("--n", o.n, "N");
        interval(s);
        weights(s);
    }
    {
        auto* s = sub("moment4", "exact fourth moment of sigma_d over an interval", [&](Ctx& c) {
            auto m = fourth_moment_interval(c.o.d, make_weights(c.o), region(c.o), c.o.n);
            c.outputs["total"] = m.moment.total;
            c.outputs["diagonal"] = m.moment.diagonal;
            c.outputs["ratio"] = m.ratio;
            c.outputs["spectrum_size"] = m.moment.spectrum_size;
        });
        s->add_option("--d", o.d, "degree");
        s->add_option("--n", o.n, "N");
        interval(s);
        weights(s);
    }
    {
        auto* s = sub("momentq", "fourth moment of the quadratic sum over a rectangle", [&](Ctx& c) {
            auto m = quadratic_pair_moment(region(c.o), Interval::make(c.o.start2, c.o.length2), make_weights(c.o),
                                           c.o.n);
            c.outputs["total"] = m.total;
            c.outputs["diagonal"] = m.diagonal;
            c.outputs["spectrum_size"] = m.spectrum_size;
        });
        s->add_option("--n", o.n, "N");
        interval(s);
        s->add_option("--start2", o.start2, "second side start");
        s->add_option("--length2", o.length2, "second side length");
        weights(s);
    }
    {
        auto* s = sub("variance", "variance integral of short-window second moments", [&](Ctx& c) {
            double g = c.o.gamma > 0.0 ? c.o.gamma : 3.0;
            double Nd = static_cast<double>(c.o.n);
            double e0 = c.o.eps0 > 0.0 ? c.o.eps0 : std::pow(Nd, -g + 0.5 + c.o.tau);
            auto v = variance_integral(g, make_weights(c.o), c.o.x1, c.o.eps1, e0, c.o.n, c.o.samples, c.o.seed);
            c.outputs["value"] = v.value;
            c.outputs["stderr"] = v.stderr_;
            c.outputs["eps0"] = v.eps0;
            c.outputs["eps1"] = v.eps1;
            c.outputs["samples"] = v.samples;
            c.outputs["reference_bound"] = 10.0 * std::pow(Nd, -g + 0.2) * (c.o.eps1 + 1.0 / Nd);
        });
        s->add_option("--gamma", o.gamma, "exponent > 2 (default 3)");
        s->add_option("--tau", o.tau, "eps0 = N^{-gamma+1/2+tau} when --eps0 is absent");
        s->add_option("--x1", o.x1, "outer window start");
        s->add_option("--eps1", o.eps1, "outer window length");
        s->add_option("--eps0", o.eps0, "inner window length");
        s->add_option("--n", o.n, "N");
        s->add_option("--samples", o.samples, "Monte Carlo samples");
        weights(s);
    }
    {
        auto* s = sub("repcount", "R_d(k, N)", [&](Ctx& c) {
            c.outputs = rep_json(r_count(c.o.d, parse_i128(c.o.k), c.o.n));
        });
        s->add_option("--d", o.d, "degree");
        s->add_option("--k", o.k, "shift");
        s->add_option("--n", o.n, "N");
    }
    {
        auto* s = sub("qcount", "quadratic system count Q(k, m, N)", [&](Ctx& c) {
            c.outputs = rep_json(q_count(static_cast<std::int64_t>(parse_i128(c.o.k)), c.o.m, c.o.n));
        });
        s->add_option("--k", o.k, "linear shift");
        s->add_option("--m", o.m, "quadratic shift");
        s->add_option("--n", o.n, "N");
    }
    {
        auto* s = sub("powerpairs", "pairs m, n <= N with m^d - n^d = k", [&](Ctx& c) {
            auto p = power_pair_count(c.o.d, parse_i128(c.o.k), c.o.n);
            c.outputs["count"] = p.count;
            Table t{{"m", "n"}, {}};
            for (auto [a, b] : p.pairs) t.add({a, b});
            c.outputs["pairs"] = t.to_json();
            c.table = std::move(t);
        });
        s->add_option("--d", o.d, "degree");
        s->add_option("--k", o.k, "nonzero difference");
        s->add_option("--n", o.n, "N");
    }
    {
        auto* s = sub("profile", "non-diagonal counts over sampled shifts", [&](Ctx& c) {
            PowerSumSpectrum spectrum(c.o.d, c.o.n);
            auto ks = sample_shifts(spectrum, c.o.count, c.o.seed, !c.o.no_snap);
            auto p = nondiag_profile(spectrum, ks);
            Table t{{"k", "total", "diagonal", "nondiagonal"}, {}};
            for (const auto& r : p.rows) t.add({i128_str(r.k), r.count.total, r.count.diagonal, r.count.nondiagonal});
            c.outputs["max_nondiag"] = p.max_nondiag;
            c.outputs["argmax_k"] = i128_str(p.argmax_k);
            c.outputs["exponent"] = p.exponent ? json(*p.exponent) : json(nullptr);
            c.outputs["shifts"] = ks.size();
            c.table = std::move(t);
        });
        s->add_option("--d", o.d, "degree");
        s->add_option("--n", o.n, "N");
        s->add_option("--count", o.count, "number of shifts");
        s->add_option("--seed", o.seed, "sampling seed");
        s->add_flag("--no-snap", o.no_snap, "keep raw shifts instead of the nearest attained ones");
    }
    {
        auto* s = sub("cf", "best rational approximation a/q with q <= qmax", [&](Ctx& c) {
            auto r = cf_approx(c.o.x.at(0), c.o.qmax ? c.o.qmax : 1000);
            c.outputs = {{"a", r.a}, {"q", r.q}, {"xi", r.xi}};
        });
        s->add_option("--x", o.x, "x")->delimiter(',')->required();
        s->add_option("--qmax", o.qmax, "denominator bound (default 1000)");
    }
    {
        auto* s = sub("osc", "integral over [0, N] of e(xi_1 t + ... + xi_d t^d)", [&](Ctx& c) {
            require(!c.o.x.empty(), "--x needs at least one coefficient");
            c.outputs["value"] = complex_json(oscillatory_integral(c.o.x, static_cast<double>(c.o.n)));
        });
        s->add_option("--x", o.x, "xi_1..xi_d")->delimiter(',')->required();
        s->add_option("--n", o.n, "N");
    }
    {
        auto* s = sub("vaughan", "major-arc main term for sigma_d at x", [&](Ctx& c) {
            double x = c.o.x.at(0);
            auto qm = c.o.qmax ? c.o.qmax : static_cast<std::int64_t>(std::sqrt(static_cast<double>(c.o.n)));
            auto r = cf_approx(x, std::max<std::int64_t>(qm, 1));
            auto m = vaughan_approx(r, c.o.d, c.o.n);
            cplx direct = rational_point_sum(r.a, r.q, r.xi, c.o.d, c.o.n);
            c.outputs = {{"a", r.a},           {"q", r.q},
                         {"xi", r.xi},         {"main", complex_json(m.main)},
                         {"error_budget", m.error_budget}, {"valid", m.valid},
                         {"direct", complex_json(direct)}, {"residual", std::abs(direct - m.main)}};
        });
        s->add_option("--d", o.d, "degree");
        s->add_option("--x", o.x, "x")->delimiter(',')->required();
        s->add_option("--n", o.n, "N");
        s->add_option("--qmax", o.qmax, "denominator bound (default sqrt N)");
    }
    {
        auto* s = sub("baker", "common-denominator main term for S_d at x", [&](Ctx& c) {
            require(!c.o.x.empty(), "--x needs at least one coefficient");
            auto p = baker_point(c.o.x, c.o.q);
            auto m = baker_approx(p, c.o.n);
            cplx direct = weyl_sum(PhaseVector(c.o.x), WeightSeq::ones(), c.o.n).value;
            c.outputs = {{"a", p.a}, {"q", p.q}, {"xi", p.xi}, {"D", p.D}, {"main", complex_json(m.main)},
                         {"error_budget", m.error_budget}, {"valid", m.valid}, {"direct", complex_json(direct)},
                         {"residual", std::abs(direct - m.main)}};
        });
        s->add_option("--x", o.x, "x1..xd")->delimiter(',')->required();
        s->add_option("--q", o.q, "common denominator");
        s->add_option("--n", o.n, "N");
    }
    {
        auto* s = sub("arcs", "major-arc scan over a grid", [&](Ctx& c) {
            auto xs = unit_grid(c.o, 1000);
            auto rows = major_arc_scan(c.o.d, c.o.n, xs, c.o.qlimit, c.o.threads);
            Table t{{"x", "a", "q", "xi", "major", "direct_abs", "residual_ratio"}, {}};
            std::uint64_t major = 0;
            double worst = 0.0;
            for (const auto& r : rows) {
                major += r.major;
                if (r.residual_ratio) worst = std::max(worst, *r.residual_ratio);
                t.add({r.x, r.approx.a, r.approx.q, r.approx.xi, r.major, r.direct_abs,
                       r.residual_ratio ? json(*r.residual_ratio) : json(nullptr)});
            }
            c.outputs["points"] = rows.size();
            c.outputs["major"] = major;
            c.outputs["max_residual_ratio"] = worst;
            c.table = std::move(t);
        });
        s->add_option("--d", o.d, "degree");
        s->add_option("--n", o.n, "N");
        s->add_option("--grid", o.grid, "grid points (default 1000)");
        s->add_option("--qlimit", o.qlimit, "major-arc denominator bound (default sqrt N)");
        interval(s);
    }
    {
        auto* s = sub("dims", "dimension bounds s(d, alpha), u(d, alpha)", [&](Ctx& c) {
            c.outputs["s"] = dims::s_dim(c.o.d, c.o.alpha);
            c.outputs["u"] = dims::u_dim(c.o.d, c.o.alpha);
            c.outputs["monomial"] = dims::monomial_conj_dim(c.o.d, c.o.alpha);
            c.outputs["alpha_at_endpoint"] = dims::at_half_endpoint(c.o.alpha);
            if (c.o.d == 2) {
                c.outputs["s_closed_form"] = dims::s2_piecewise(c.o.alpha);
                c.outputs["u_closed_form"] = dims::u2_piecewise(c.o.alpha);
            }
            if (c.o.gamma > 0.0) {
                auto b = dims::theorem_bounds(c.o.gamma);
                c.outputs["general_bound"] = b.general ? json(*b.general) : json(nullptr);
                c.outputs["quadratic_bound"] = b.quadratic ? json(*b.quadratic) : json(nullptr);
            }
        });
        s->add_option("--d", o.d, "degree");
        s->add_option("--alpha", o.alpha, "alpha in [1/2, 1]");
        s->add_option("--gamma", o.gamma, "also report the large-value dimension bounds");
    }
    {
        auto* s = sub("disc", "extreme discrepancy of frac(x1 n + ... + xd n^d)", [&](Ctx& c) {
            auto r = disc_for_phase(full_vector(c.o, false), c.o.n);
            c.outputs = {{"value", r.value}, {"a", r.a}, {"b", r.b}, {"closed", r.closed},
                         {"normalized", r.value / static_cast<double>(c.o.n)}};
        });
        s->add_option("--x", o.x, "x1..xd")->delimiter(',')->required();
        s->add_option("--n", o.n, "N");
    }
    {
        auto* s = sub("koksma", "|S_d| against the discrepancy", [&](Ctx& c) {
            auto k = koksma_probe(full_vector(c.o, false), c.o.n);
            c.outputs = {{"sum_abs", k.sum_abs}, {"discrepancy", k.discrepancy}, {"ratio", k.ratio}};
        });
        s->add_option("--x", o.x, "x1..xd")->delimiter(',')->required();
        s->add_option("--n", o.n, "N");
    }
    {
        auto* s = sub("pattern", "separated large values of sum e(x n^gamma) as a pattern", [&](Ctx& c) {
            auto r = large_value_intervals(growth(c.o), make_weights(c.o), region(c.o), c.o.n, true, c.o.threads);
            auto v = pattern_validate(r.pattern);
            Table t{{"start", "length", "witness", "value"}, {}};
            for (std::size_t i = 0; i < r.witnesses.size(); ++i)
                t.add({r.pattern.members[i].start, r.pattern.members[i].length, r.witnesses[i], r.witness_values[i]});
            c.outputs = {{"N", r.pattern.N},         {"M", r.pattern.M},           {"delta", r.pattern.delta},
                         {"separation", r.separation}, {"threshold", r.threshold}, {"c0", r.c0},
                         {"target_K", r.target_K},   {"grid_points", r.grid_points}, {"valid", v.ok},
                         {"violations", v.violations}};
            c.table = std::move(t);
        });
        s->add_option("--gamma", o.gamma, "exponent (default 3)");
        s->add_option("--tau", o.tau, "tau");
        s->add_option("--c0", o.c0, "threshold constant");
        s->add_option("--n", o.n, "N");
        interval(s);
        weights(s);
    }
    {
        auto* s = sub("cantor", "finite Cantor hierarchy of large-value intervals", [&](Ctx& c) {
            auto b = cantor_build(growth(c.o), make_weights(c.o), region(c.o), c.o.depth, Budget::from_env(),
                                  c.o.threads);
            Table t{{"k", "L", "N", "M", "delta", "intervals", "patterns_valid", "hypothesis_met"}, {}};
            for (const auto& l : b.levels)
                t.add({l.k, l.L, l.N, l.M, l.delta, l.intervals.size(), l.patterns_valid, l.hypothesis_met});
            c.outputs["levels"] = t.to_json();
            c.outputs["truncated"] = b.truncated;
            c.outputs["report"] = b.report;
            c.outputs["c0"] = b.c0;
            c.outputs["estimate"] = b.levels.size() > 1 ? json(cantor_dim_estimate(b.levels)) : json(nullptr);
            c.table = std::move(t);
        });
        s->add_option("--gamma", o.gamma, "exponent (default 3)");
        s->add_option("--tau", o.tau, "tau");
        s->add_option("--c0", o.c0, "threshold constant");
        s->add_option("--l1", o.L1, "L_1; later levels square it");
        s->add_option("--depth", o.depth, "levels below the root, at most 4");
        interval(s);
        weights(s);
    }
    {
        auto* s = sub("dimest", "dimension estimate of a level schedule", [&](Ctx& c) {
            std::vector<LevelSize> lv;
            if (c.o.schedule == "middle-thirds") {
                for (const auto& l : middle_thirds_levels(c.o.levels))
                    if (l.k) lv.push_back({double(l.M), l.delta});
            } else if (c.o.schedule == "synthetic") {
                GrowthSpec g = growth(c.o);
                lv = synthetic_schedule(g, c.o.levels);
            } else if (c.o.schedule == "custom") {
                require(c.o.mlist.size() == c.o.deltas.size(), "--m-list and --deltas differ in length");
                for (std::size_t i = 0; i < c.o.mlist.size(); ++i) lv.push_back({c.o.mlist[i], c.o.deltas[i]});
            } else {
                throw ValidationError("schedule must be middle-thirds, synthetic or custom");
            }
            Table t{{"k", "M", "delta", "estimate"}, {}};
            double acc = 0.0;
            for (std::size_t i = 0; i < lv.size(); ++i) {
                acc += std::log(lv[i].M);
                t.add({i + 1, lv[i].M, lv[i].delta, acc / -std::log(lv[i].delta)});
            }
            c.outputs["estimate"] = cantor_dim_estimate(lv);
            c.outputs["levels"] = t.to_json();
            c.table = std::move(t);
        });
        s->add_option("--schedule", o.schedule, "middle-thirds, synthetic or custom");
        s->add_option("--levels", o.levels, "number of levels");
        s->add_option("--gamma", o.gamma, "exponent (default 3)");
        s->add_option("--tau", o.tau, "tau");
        s->add_option("--l1", o.L1, "L_1");
        s->add_option("--m-list", o.mlist, "M_k values")->delimiter(',');
        s->add_option("--deltas", o.deltas, "delta_k values")->delimiter(',');
    }
    {
        auto* s = sub("mass", "ball masses of the middle-thirds measure", [&](Ctx& c) {
            auto lv = middle_thirds_levels(c.o.levels);
            std::vector<double> radii = c.o.radii;
            if (radii.empty())
                for (int j = 2; j <= c.o.levels; ++j) radii.push_back(std::pow(3.0, -j));
            auto rows = mass_check(lv, radii, c.o.t);
            Table t{{"r", "max_mass", "ratio"}, {}};
            double worst = 0.0;
            for (const auto& r : rows) t.add({r.r, r.max_mass, r.ratio}), worst = std::max(worst, r.ratio);
            c.outputs["max_ratio"] = worst;
            c.outputs["rows"] = t.to_json();
            c.table = std::move(t);
        });
        s->add_option("--levels", o.levels, "depth of the middle-thirds construction");
        s->add_option("--t", o.t, "exponent below the dimension");
        s->add_option("--radii", o.radii, "ball radii (default 3^-2 .. 3^-levels)")->delimiter(',');
    }
    {
        auto* s = sub("eps0", "predicted indicator-set fraction", [&](Ctx& c) {
            c.outputs["epsilon0"] = epsilon0({c.o.c, c.o.C, c.o.alpha1, c.o.alpha2});
        });
        s->add_option("--c", o.c, "lower threshold");
        s->add_option("--C", o.C, "upper threshold");
        s->add_option("--alpha1", o.alpha1, "second-moment ratio");
        s->add_option("--alpha2", o.alpha2, "fourth-moment ratio");
    }
    {
        auto* s = sub("frac", "fraction of grid points with c sqrt N <= |S| <= C sqrt N", [&](Ctx& c) {
            auto k = scan_kind(c.o);
            c.outputs["fraction"] = indicator_fraction(k, make_weights(c.o), scan_box(c.o, k), c.o.n, c.o.c, c.o.C,
                                                       c.o.grid ? c.o.grid : 4096, c.o.seed, c.o.threads);
        });
        s->add_option("--kind", o.kind, "monomial or full");
        s->add_option("--d", o.d, "degree");
        s->add_option("--n", o.n, "N");
        s->add_option("--c", o.c, "lower threshold");
        s->add_option("--C", o.C, "upper threshold");
        s->add_option("--grid", o.grid, "grid points (default 4096)");
        interval(s);
        weights(s);
    }
    {
        auto* s = sub("ladder", "indicator hits across a ladder of N", [&](Ctx& c) {
            auto k = scan_kind(c.o);
            std::vector<std::uint64_t> ns = c.o.ns;
            if (ns.empty())
                for (int e = 8; e <= 13; ++e) ns.push_back(std::uint64_t{1} << e);
            auto r = ladder_stats(k, make_weights(c.o), scan_box(c.o, k), ns, c.o.c, c.o.C,
                                  c.o.grid ? c.o.grid : 2048, c.o.seed, c.o.threads);
            Table t{{"N", "fraction", "tail_union"}, {}};
            for (std::size_t i = 0; i < ns.size(); ++i) t.add({ns[i], r.fractions[i], r.tail_union[i]});
            c.outputs["union_fraction"] = r.union_fraction;
            c.outputs["rungs"] = t.to_json();
            c.outputs["points"] = r.masks.size();
            c.table = std::move(t);
        });
        s->add_option("--kind", o.kind, "monomial or full");
        s->add_option("--d", o.d, "degree");
        s->add_option("--ns", o.ns, "ladder (default 2^8..2^13)")->delimiter(',');
        s->add_option("--c", o.c, "lower threshold");
        s->add_option("--C", o.C, "upper threshold");
        s->add_option("--grid", o.grid, "grid points (default 2048)");
        interval(s);
        weights(s);
    }
    {
        auto* s = sub("cexA", "measure and local density of the triadic counterexample set", [&](Ctx& c) {
            auto r = counterexample_A(c.o.nmax, region(c.o));
            c.outputs = {{"bound", r.bound},
                         {"series_limit", r.series_limit},
                         {"generations", r.generations},
                         {"lower", r.lower},
                         {"upper", r.upper},
                         {"density_lower", r.density_lower},
                         {"density_upper", r.density_upper},
                         {"log_scale", r.log_scale},
                         {"bracket_n", r.bracket_n ? json(*r.bracket_n) : json(nullptr)},
                         {"bracket_fractions", r.bracket_fractions}};
        });
        s->add_option("--nmax", o.nmax, "series truncation");
        interval(s);
    }
    {
        auto* s = sub("panel", "run the acceptance criteria", [&](Ctx& c) {
            lab::PanelOptions p{c.o.only, c.o.corrupt, c.o.threads};
            auto results = lab::run_panel(p);
            for (const auto& r : results)
                std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.number << ' ' << r.id << " (" << r.seconds
                          << " s)\n";
            c.outputs = lab::panel_summary(results);
            if (!c.outputs["all_pass"].get<bool>()) c.exit_code = kExitPanel;
        });
        s->add_option("--only", o.only, "criterion ids or numbers")->delimiter(',');
        s->add_option("--corrupt", o.corrupt, "make these criteria fail (harness check)")->delimiter(',');
    }

    // Splice config-file keys in after the subcommand unless given as flags.
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 1; i + 1 < args.size(); ++i) {
        if (args[i] != "--config") continue;
        std::ifstream in(args[i + 1]);
        if (!in) {
            std::cerr << "cannot read config file " << args[i + 1] << '\n';
            return kExitValidation;
        }
        std::set<std::string> given;
        for (const auto& a : args)
            if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));
        std::vector<std::string> extra;
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            auto eq = line.find('=');
            auto trim = [](std::string s) {
                auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            if (trim(line).empty()) continue;
            if (eq == std::string::npos) {
                std::cerr << "config line without '=': " << line << '\n';
                return kExitValidation;
            }
            std::string key = "--" + trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
            if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
            if (given.count(key)) continue;
            extra.push_back(key);
            extra.push_back(val);
        }
        args.insert(args.begin() + 1, extra.begin(), extra.end());
        break;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());

    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    const Sub& chosen = subs.at(first);
    if (o.budget) setenv("WEYL_LAB_BUDGET", std::to_string(o.budget).c_str(), 1);
    if (o.threads) set_default_threads(o.threads);

    lab::ResultRecord rec;
    rec.subcommand = first;
    for (const CLI::Option* opt : chosen.app->get_options()) {
        if (opt->get_lnames().empty()) continue;
        std::string name = opt->get_lnames().front();
        if (name == "help" || name == "config" || name == "out" || name == "csv") continue;
        std::string val;
        if (opt->count()) {
            auto res = opt->results();
            for (std::size_t i = 0; i < res.size(); ++i) val += (i ? "," : "") + res[i];
        } else {
            val = opt->get_default_str();
            if (val == "{}") val.clear();
        }
        rec.config[name] = val;
    }

    Ctx ctx{o, json::object(), std::nullopt, 0};
    auto t0 = std::chrono::steady_clock::now();
    try {
        chosen.run(ctx);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitValidation;
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.outputs = std::move(ctx.outputs);

    std::string text = lab::emit(rec);
    if (o.out.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream f(o.out);
        if (!(f << text << '\n')) {
            std::cerr << "cannot write " << o.out << '\n';
            return kExitValidation;
        }
    }
    if (!o.csv.empty()) {
        if (!ctx.table) {
            std::cerr << "subcommand " << first << " has no table\n";
            return kExitValidation;
        }
        std::ofstream f(o.csv);
        lab::write_csv(f, *ctx.table);
        if (!f) {
            std::cerr << "cannot write " << o.csv << '\n';
            return kExitValidation;
        }
    }
    return ctx.exit_code;
}
