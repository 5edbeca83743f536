#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "egvs/metric.hpp"

namespace egvs {

struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;
};

/// Uniform lattice of candidate placements over three axis ranges.
struct SweepSpec {
    AxisRange x;
    AxisRange y;
    AxisRange z;
    std::size_t budget = 100000;

    void validate() const;
    /// Lattice points per axis: floor((max - min) / step + 1), with a small
    /// slack so exact multiples of the step survive rounding.
    std::array<std::size_t, 3> axis_counts() const;
    std::size_t candidate_count() const;
    /// Candidate i in x-fastest order.
    Placement candidate(std::size_t i) const;
};

struct RankingRow {
    Placement placement;
    double score = 0.0;
    double normalized = 0.0;
    double eval_seconds = 0.0;
};

/// Rows sorted by score descending; ties by (x, y, z) ascending.
struct RankingTable {
    std::vector<RankingRow> rows;
};

/// Evaluates every lattice candidate against a fixed scene and entropy grid.
/// Candidates run in parallel; the table is identical for any thread count.
/// eval_seconds stays 0.0 unless record_timing is set.
RankingTable sweep(const SweepSpec& spec, const Scene& scene, const EntropyGrid& entropy,
                   const LidarSpec& lidar, EgvsParams params,
                   MissPolicy policy = MissPolicy::Extend, int threads = 0,
                   bool record_timing = false);

struct RefineResult {
    Placement placement;
    double score = 0.0;
    std::size_t evaluations = 0;
};

/// Compass search over (x, y, z): probe the six axis neighbors at the current
/// step, move on strict improvement, otherwise halve the step until it drops
/// below tolerance. Probes are clamped to bounds. The result never scores
/// below the start.
RefineResult refine(const Placement& start, const Box3& bounds,
                    const std::function<double(const Placement&)>& evaluator,
                    double initial_step, double tolerance);

struct GreedyStep {
    std::size_t candidate_index = 0;
    Placement placement;
    double marginal_gain = 0.0;
    double combined_score = 0.0;
};

struct GreedyResult {
    std::vector<Placement> selected;
    std::vector<GreedyStep> steps;
    double combined_score = 0.0;
    double normalized = 0.0;
};

/// Picks k placements one at a time, each maximizing the marginal gain of the
/// capped multi-sensor score. Gains tie-break on (x, y, z) ascending. Hit
/// grids are computed once per candidate and reused across steps.
GreedyResult greedy_multi(std::size_t k, std::span<const Placement> candidates,
                          const Scene& scene, const EntropyGrid& entropy,
                          const LidarSpec& lidar, EgvsParams params,
                          MissPolicy policy = MissPolicy::Extend, int threads = 0);

struct Correlation {
    double spearman = 0.0;
    double pearson = 0.0;
    std::size_t n = 0;
};

/// 1-based ranks; tied values share the average of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman is Pearson applied to average ranks; Pearson is the standard
/// product-moment coefficient. Requires n >= 3 and nonzero variance in both
/// columns.
Correlation rank_correlation(std::span<const double> scores,
                             std::span<const double> references);

void write_ranking_csv(const std::filesystem::path& path, const RankingTable& table);
void write_ranking_json(const std::filesystem::path& path, const RankingTable& table);
void write_correlation_json(const std::filesystem::path& path, const Correlation& corr);

}  // namespace egvs
