#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "egvs/grid.hpp"
#include "egvs/lidar.hpp"
#include "egvs/scene.hpp"
#include "egvs/traversal.hpp"

namespace egvs {

struct EgvsParams {
    std::uint32_t gamma = 5;  // per-voxel cap on multi-beam contributions

    void validate() const;
};

/// Score of a placement (or set of placements): the entropy-weighted,
/// cap-limited beam coverage summed over all voxels. `normalized` divides by
/// gamma times the total entropy, giving a value in [0, 1].
struct EgvsResult {
    double score = 0.0;
    double normalized = 0.0;
    std::vector<Placement> placements;
    EgvsParams params;
    std::array<std::int32_t, 3> grid_counts = {0, 0, 0};
    std::optional<std::vector<double>> per_voxel_contribution;
};

/// score = sum_i H(v_i) * min(gamma, counts[i]). The reduction uses a fixed
/// blocked order, so results are bit-stable across thread counts.
EgvsResult egvs(const EntropyGrid& entropy, const HitCountGrid& hits, EgvsParams params,
                bool materialize_contributions = false, int threads = 0);

/// Multi-LiDAR combination: counts are summed across hit grids, then capped.
EgvsResult egvs_multi(const EntropyGrid& entropy, std::span<const HitCountGrid> hit_grids,
                      EgvsParams params, bool materialize_contributions = false,
                      int threads = 0);
/// Non-owning variant for callers that keep a pool of cached hit grids.
EgvsResult egvs_multi(const EntropyGrid& entropy,
                      std::span<const HitCountGrid* const> hit_grids, EgvsParams params,
                      bool materialize_contributions = false, int threads = 0);

/// Full single-placement pipeline: cast the empty frame, count voxel hits,
/// apply the score. Deterministic for fixed inputs. The ROI variant checks
/// that the entropy grid is exactly the discretized ROI; the other clips
/// beams to the entropy grid's own box.
EgvsResult evaluate_placement(const Scene& scene, const EntropyGrid& entropy,
                              const LidarSpec& spec, const Placement& placement,
                              const RoiSpec& roi, EgvsParams params,
                              MissPolicy policy = MissPolicy::Extend, int threads = 0,
                              bool materialize_contributions = false);
EgvsResult evaluate_placement(const Scene& scene, const EntropyGrid& entropy,
                              const LidarSpec& spec, const Placement& placement,
                              EgvsParams params, MissPolicy policy = MissPolicy::Extend,
                              int threads = 0, bool materialize_contributions = false);

}  // namespace egvs
