#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "egvs/vec3.hpp"

namespace egvs {

/// Region of interest: a rectangular cuboid given by center, dimensions
/// (w, l, h) and voxel resolution. Each dimension must be an integer
/// multiple of the resolution (within 1e-9).
struct RoiSpec {
    Vec3 center;
    Vec3 dims;
    double resolution = 0.5;

    void validate() const;
    Box3 box() const { return {center - dims * 0.5, center + dims * 0.5}; }
};

/// Voxelization of an ROI. Voxels are indexed row-major with x fastest:
/// index = ix + n_x * (iy + n_y * iz). Cells are lower-inclusive and
/// upper-exclusive per axis; a position on the ROI max face belongs to the
/// last voxel of that axis.
struct GridSpec {
    Vec3 origin;
    std::array<std::int32_t, 3> counts = {0, 0, 0};
    double resolution = 0.0;

    std::size_t voxel_count() const {
        return static_cast<std::size_t>(counts[0]) * static_cast<std::size_t>(counts[1]) *
               static_cast<std::size_t>(counts[2]);
    }

    std::size_t index_of(std::int32_t ix, std::int32_t iy, std::int32_t iz) const {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(counts[0]) *
                   (static_cast<std::size_t>(iy) +
                    static_cast<std::size_t>(counts[1]) * static_cast<std::size_t>(iz));
    }

    std::array<std::int32_t, 3> coords_of(std::size_t index) const;

    Vec3 center_of(std::size_t index) const;

    /// Cell of a position inside the closed grid box. Positions exactly on a
    /// voxel boundary map to the higher-index cell; the max face folds into
    /// the last cell.
    std::array<std::int32_t, 3> cell_of(const Vec3& p) const;

    std::size_t index_of_position(const Vec3& p) const {
        const auto c = cell_of(p);
        return index_of(c[0], c[1], c[2]);
    }

    Box3 box() const {
        return {origin, origin + Vec3{counts[0] * resolution, counts[1] * resolution,
                                      counts[2] * resolution}};
    }

    bool same_shape(const GridSpec& o) const {
        return counts == o.counts && origin == o.origin && resolution == o.resolution;
    }

    std::string shape_string() const;
};

/// Traffic probabilistic occupancy grid: per-voxel occupancy frequency over
/// T frames. prob[i] is exactly occupied_counts[i] / frame_count.
struct Tpog {
    GridSpec grid;
    std::vector<std::uint32_t> occupied_counts;
    std::vector<double> prob;
    std::uint32_t frame_count = 0;
};

/// Per-voxel binary Shannon entropy of a Tpog, in bits. Values lie in [0, 1].
struct EntropyGrid {
    GridSpec grid;
    std::vector<double> entropy;
};

GridSpec discretize(const RoiSpec& roi);

/// Accumulates per-frame occupied-voxel index sets into a Tpog.
/// Parallel and serial runs produce bit-identical grids.
Tpog accumulate_tpog(const GridSpec& grid,
                     const std::vector<std::vector<std::uint32_t>>& frames, int threads = 0);

EntropyGrid entropy_grid(const Tpog& tpog, int threads = 0);
EntropyGrid entropy_grid(const GridSpec& grid, std::span<const double> probabilities,
                         int threads = 0);

/// H(p) = -p*log2(p) - (1-p)*log2(1-p) with the 0*log2(0) = 0 convention.
double binary_entropy(double p);

}  // namespace egvs
