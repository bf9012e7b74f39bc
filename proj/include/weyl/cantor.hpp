#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weyl/budget.hpp"
#include "weyl/core.hpp"
#include "weyl/moment.hpp"

namespace weyl {

struct Pattern {
    Interval parent;
    std::uint64_t N = 2;  // number of equal cells
    std::uint64_t M = 0;  // number of members
    double delta = 0.0;   // member length
    std::vector<Interval> members;
};

struct PatternCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

// Member lengths, one member per cell, and the counts.
PatternCheck pattern_validate(const Pattern& p);

struct Selection {
    std::vector<double> points;
    std::vector<double> values;
    std::vector<Interval> intervals;  // length `spacing`, centered at points
};

// Greedy left-to-right scan of samples (sorted by x): keep samples with
// value >= threshold whose interval fits in the parent and whose distance to
// the previous kept point is >= spacing.
Selection select_separated(std::span<const double> xs, std::span<const double> values,
                           const Interval& parent, double spacing, double threshold);

// Samples `profile` on a grid of step grid_step (spacing / 4 when 0).
Selection select_separated(const std::function<double(double)>& profile, const Interval& parent,
                           double spacing, double threshold, double grid_step = 0.0);

struct GrowthSpec {
    double gamma = 3.0;
    double tau = 0.1;
    double L1 = 16.0;
    std::vector<double> L;  // explicit L_1, L_2, ... overriding the squaring rule
    double c0 = 0.25;

    // L_k for k >= 1: L1, L1^2, L1^4, ... unless L is given.
    double L_at(int k) const;
    void validate() const;
};

// max_{M <= N} |sum_{n <= M} a_n e(x n^gamma)|.
double large_value_profile(double gamma, const WeightSeq& w, double x, std::uint64_t N);
std::vector<double> large_value_profile(double gamma, const WeightSeq& w, std::span<const double> xs,
                                        std::uint64_t N, unsigned threads = 0);

struct LargeValues {
    Pattern pattern;
    std::vector<double> witnesses;  // sampled point inside each member
    std::vector<double> witness_values;
    double separation = 0.0;  // N^{-gamma+1/2+tau}
    double threshold = 0.0;   // c0 sqrt(N)
    double c0 = 0.0;
    double target_K = 0.0;  // N^{gamma-1/2-tau} |interval|
    std::uint64_t grid_points = 0;
    bool hypothesis_met = true;
};

// Separated large values of the profile inside `interval`, shrunk to members
// of length N^{-gamma-tau}. With enforce set, |interval| < N^{-gamma+2} throws.
LargeValues large_value_intervals(const GrowthSpec& g, const WeightSeq& w, const Interval& interval,
                                  std::uint64_t N, bool enforce = true, unsigned threads = 0);

struct CantorLevel {
    int k = 0;
    std::uint64_t N = 1;
    std::uint64_t M = 1;
    double delta = 1.0;
    double L = 0.0;
    std::vector<Interval> intervals;
    std::vector<double> witnesses;
    bool patterns_valid = true;
    bool hypothesis_met = true;
    std::uint64_t min_selected = 0;  // per-parent selection counts before trimming to M
    std::uint64_t max_selected = 0;
};

struct CantorBuild {
    std::vector<CantorLevel> levels;  // levels[0] is the root
    double c0 = 0.0;
    bool truncated = false;
    std::string report;
};

// Level k+1 keeps, inside every level-k interval, the M_{k+1} members with the
// largest profile values, M_{k+1} being the smallest count over parents.
CantorBuild cantor_build(const GrowthSpec& g, const WeightSeq& w, const Interval& root, int depth,
                         const Budget& budget = Budget::from_env(), unsigned threads = 0);

struct LevelSize {
    double M = 1.0;
    double delta = 1.0;
};

// min_k log(prod_{i<=k} M_i) / log(1/delta_k).
double cantor_dim_estimate(std::span<const LevelSize> levels);
// Skips the root level.
double cantor_dim_estimate(std::span<const CantorLevel> levels);

// Levels 0..k of the middle-thirds set.
std::vector<CantorLevel> middle_thirds_levels(int k);

// delta_k = L_k^{-gamma-tau}, M_k = floor(delta_{k-1} L_k^{gamma-1/2-tau}).
std::vector<LevelSize> synthetic_schedule(const GrowthSpec& g, int levels);

struct MassRow {
    double r = 0.0;
    double max_mass = 0.0;
    double ratio = 0.0;  // max_mass / r^t
};

// Balls [c - r, c + r] against the uniform mass on the deepest level.
std::vector<MassRow> mass_check(std::span<const CantorLevel> levels, std::span<const double> radii, double t);

}  // namespace weyl
