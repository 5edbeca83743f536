#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "egvs/grid.hpp"
#include "egvs/lidar.hpp"

namespace egvs {

/// Number of beams intersecting each voxel; each segment contributes at most
/// one to any voxel.
struct HitCountGrid {
    GridSpec grid;
    std::vector<std::uint32_t> counts;
};

/// Enumerates the voxels crossed by a segment, in order of increasing ray
/// parameter. Only voxels where the segment has positive interior length are
/// reported (face, edge, and corner grazes are skipped); a zero-length
/// segment reports the voxel containing it. Endpoints must lie inside the
/// closed grid box (1e-9 tolerance).
std::vector<std::size_t> traverse(const Vec3& start, const Vec3& end, const GridSpec& grid);

/// Visitor form of traverse, used by the aggregation kernels.
void traverse_visit(const Vec3& start, const Vec3& end, const GridSpec& grid,
                    const std::function<void(std::size_t)>& visit);

/// Aggregates per-voxel hit counts over all segments of a beam set.
/// Serial and parallel runs produce identical counts.
HitCountGrid hit_counts(const BeamSet& beams, const GridSpec& grid, int threads = 0);

}  // namespace egvs
