#include <doctest.h>

#include <cmath>

#include "weyl/cantor.hpp"
#include "weyl/error.hpp"

using namespace weyl;

namespace {

Pattern eight_cell_pattern() {
    Pattern p;
    p.parent = {0.0, 1.0};
    p.N = 8;
    p.M = 6;
    p.delta = 0.05;
    for (int cell : {0, 1, 3, 4, 6, 7}) p.members.push_back({cell * 0.125 + 0.04, 0.05});
    return p;
}

bool has(const PatternCheck& c, const char* needle) {
    for (const auto& v : c.violations)
        if (v.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_SUITE("cantor") {

TEST_CASE("pattern validation and single-clause mutations") {
    auto p = eight_cell_pattern();
    auto ok = pattern_validate(p);
    CHECK(ok.ok);
    CHECK(ok.violations.empty());

    auto longer = p;
    longer.members[2] = {0.375, 0.1};
    auto c1 = pattern_validate(longer);
    CHECK_FALSE(c1.ok);
    CHECK(c1.violations.size() == 1);
    CHECK(has(c1, "length"));

    auto crossing = p;
    crossing.members[0].start = 0.1;
    auto c2 = pattern_validate(crossing);
    CHECK_FALSE(c2.ok);
    CHECK(c2.violations.size() == 1);
    CHECK(has(c2, "crosses"));

    auto shared = p;
    shared.members[1].start = 0.0;
    auto c3 = pattern_validate(shared);
    CHECK_FALSE(c3.ok);
    CHECK(c3.violations.size() == 1);
    CHECK(has(c3, "share"));

    auto miscount = p;
    miscount.M = 5;
    auto c4 = pattern_validate(miscount);
    CHECK_FALSE(c4.ok);
    CHECK(c4.violations.size() == 1);

    auto empty = p;
    empty.members.clear();
    empty.M = 0;
    auto c5 = pattern_validate(empty);
    CHECK_FALSE(c5.ok);
    CHECK(has(c5, "M=0"));
}

TEST_CASE("greedy separated selection") {
    auto s = select_separated([](double) { return 1.0; }, {0.0, 1.0}, 0.1, 0.5);
    CHECK(s.intervals.size() == 10);
    for (std::size_t i = 1; i < s.intervals.size(); ++i) {
        CHECK(s.points[i] - s.points[i - 1] >= 0.1 - 1e-12);
        CHECK(s.intervals[i].start >= s.intervals[i - 1].end() - 1e-12);
    }
    for (const auto& iv : s.intervals) {
        CHECK(iv.start >= -1e-12);
        CHECK(iv.end() <= 1.0 + 1e-12);
    }
    CHECK(select_separated([](double) { return 1.0; }, {0.0, 1.0}, 0.1, 2.0).points.empty());
    CHECK_THROWS_AS(select_separated([](double) { return 1.0; }, {0.0, 1.0}, 0.0, 0.5), ValidationError);

    // cubic sum profile on [0, 0.01]; logged against N^{gamma-1/2-tau} |I|
    double sp = std::pow(256.0, -3.0 + 0.5 + 0.1);
    auto prof = [](double x) { return large_value_profile(3.0, WeightSeq::ones(), x, 256); };
    auto k = select_separated(prof, {0.0, 0.01}, sp, 0.8 * 16.0);
    CHECK(k.points.size() >= 1);
    MESSAGE("K = " << k.points.size() << ", target " << std::pow(256.0, 2.4) * 0.01);
}

TEST_CASE("large value intervals") {
    GrowthSpec g;
    auto r = large_value_intervals(g, WeightSeq::ones(), {0.2, 0.05}, 256);
    CHECK(r.hypothesis_met);
    CHECK(r.pattern.M >= 1);
    CHECK(pattern_validate(r.pattern).ok);
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        CHECK(r.witness_values[i] >= 0.25 * 16.0);
        CHECK(r.pattern.members[i].start <= r.witnesses[i]);
        CHECK(r.pattern.members[i].end() >= r.witnesses[i]);
    }
    MESSAGE("M = " << r.pattern.M << " of N = " << r.pattern.N << ", target K " << r.target_K);

    CHECK_THROWS_AS(large_value_intervals(g, WeightSeq::ones(), {0.2, 1e-3}, 256), ValidationError);
    auto relaxed = large_value_intervals(g, WeightSeq::ones(), {0.2, 1e-3}, 256, false);
    CHECK_FALSE(relaxed.hypothesis_met);

    GrowthSpec hi = g;
    hi.c0 = 10.0;
    auto none = large_value_intervals(hi, WeightSeq::ones(), {0.2, 0.05}, 256);
    CHECK(none.pattern.M == 0);
    auto check = pattern_validate(none.pattern);
    CHECK_FALSE(check.ok);
    CHECK(has(check, "M=0"));

    GrowthSpec bad = g;
    bad.tau = 0.6;
    CHECK_THROWS_AS(large_value_intervals(bad, WeightSeq::ones(), {0.2, 0.05}, 256), ValidationError);
}

TEST_CASE("cantor build") {
    GrowthSpec g;
    auto root = cantor_build(g, WeightSeq::ones(), {0.0, 1.0}, 0);
    CHECK(root.levels.size() == 1);
    CHECK(root.levels[0].intervals.size() == 1);

    auto b = cantor_build(g, WeightSeq::ones(), {0.0, 1.0}, 2);
    REQUIRE(b.levels.size() == 3);
    CHECK_FALSE(b.truncated);
    std::uint64_t count = 1;
    for (std::size_t k = 1; k < b.levels.size(); ++k) {
        const auto& lv = b.levels[k];
        count *= lv.M;
        CHECK(lv.patterns_valid);
        CHECK(lv.intervals.size() == count);
        CHECK(lv.delta <= b.levels[k - 1].delta / static_cast<double>(lv.N));
        double thr = 0.25 * std::sqrt(lv.L);
        auto N = static_cast<std::uint64_t>(lv.L);
        for (std::size_t i = 0; i < lv.intervals.size(); i += 97) {
            CHECK(large_value_profile(3.0, WeightSeq::ones(), lv.witnesses[i], N) >= thr);
            CHECK(large_value_profile(3.0, WeightSeq::ones(), lv.intervals[i].start, N) >= thr / 2);
            CHECK(large_value_profile(3.0, WeightSeq::ones(), lv.intervals[i].end(), N) >= thr / 2);
        }
        MESSAGE("level " << k << ": N=" << lv.N << " M=" << lv.M << " selected " << lv.min_selected << ".."
                         << lv.max_selected << " delta=" << lv.delta << " hypothesis " << lv.hypothesis_met);
    }
    MESSAGE("estimate " << cantor_dim_estimate(b.levels));

    GrowthSpec absurd = g;
    absurd.c0 = 100.0;
    auto t = cantor_build(absurd, WeightSeq::ones(), {0.0, 1.0}, 2);
    CHECK(t.truncated);
    CHECK(t.levels.size() == 1);
    CHECK_FALSE(t.report.empty());
    CHECK_THROWS_AS(cantor_build(g, WeightSeq::ones(), {0.0, 1.0}, 5), ValidationError);

    Budget tiny;
    tiny.kernel_pairs = 1000;
    CHECK_THROWS_AS(cantor_build(g, WeightSeq::ones(), {0.0, 1.0}, 1, tiny), BudgetError);
}

TEST_CASE("dimension estimate") {
    auto mt = middle_thirds_levels(8);
    CHECK(cantor_dim_estimate(mt) == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    std::vector<LevelSize> full;
    for (int k = 1; k <= 5; ++k) full.push_back({4.0, std::pow(4.0, -k)});
    CHECK(cantor_dim_estimate(full) == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<LevelSize> sq, mt2;
    for (int k = 1; k <= 6; ++k) {
        sq.push_back({2.0, std::pow(3.0, -k)});
        mt2.push_back({4.0, std::pow(9.0, -k)});
    }
    CHECK(std::fabs(cantor_dim_estimate(sq) - cantor_dim_estimate(mt2)) < 1e-9);

    std::vector<LevelSize> bad{{2.0, 1.0}};
    CHECK_THROWS_AS(cantor_dim_estimate(bad), ValidationError);
    std::vector<LevelSize> flat{{2.0, 0.1}, {2.0, 0.1}};
    CHECK_THROWS_AS(cantor_dim_estimate(flat), ValidationError);
    CHECK_THROWS_AS(cantor_dim_estimate(std::vector<LevelSize>{}), ValidationError);

    GrowthSpec g;
    g.L1 = 32;
    auto syn = synthetic_schedule(g, 4);
    CHECK(syn[0].M == 4096.0);
    MESSAGE("synthetic estimate " << cantor_dim_estimate(syn) << " vs " << 2.4 / 3.1);
}

TEST_CASE("mass distribution") {
    auto mt = middle_thirds_levels(6);
    std::vector<double> radii;
    for (int j = 2; j <= 6; ++j) radii.push_back(std::pow(3.0, -j));
    auto rows = mass_check(mt, radii, 0.6);
    REQUIRE(rows.size() == radii.size());
    for (const auto& r : rows) {
        CHECK(r.ratio <= 4.0);
        CHECK(r.ratio > 0.0);
    }
    for (const auto& r : mass_check(mt, radii, 0.0)) {
        CHECK(r.ratio == r.max_mass);
        CHECK(r.max_mass <= 1.0);
    }
    CHECK_THROWS_AS(mass_check(mt, radii, 0.7), ValidationError);
    auto single = mass_check(std::span<const CantorLevel>(mt.data(), 1), radii, 0.5);
    CHECK(single.size() == radii.size());
    CHECK(single[0].max_mass == doctest::Approx(2.0 / 9.0));
}

}
