#include "egvs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "egvs/errors.hpp"
#include "egvs/parallel.hpp"

namespace egvs {

namespace {

constexpr double kDivisibilityTol = 1e-9;

// Returns the voxel count along one axis, or -1 when the dimension is not an
// integer multiple of the resolution.
std::int64_t axis_count(double dim, double resolution) {
    const double q = dim / resolution;
    const double r = std::round(q);
    if (std::abs(q - r) > kDivisibilityTol || r < 1.0) {
        return -1;
    }
    return static_cast<std::int64_t>(r);
}

}  // namespace

void RoiSpec::validate() const {
    static constexpr const char* kAxisNames[3] = {"w", "l", "h"};
    for (int a = 0; a < 3; ++a) {
        if (!(dims[a] > 0.0)) {
            throw InputError(std::string("ROI dimension ") + kAxisNames[a] +
                             " must be positive");
        }
    }
    if (!(resolution > 0.0)) {
        throw InputError("ROI resolution must be positive");
    }
    for (int a = 0; a < 3; ++a) {
        if (axis_count(dims[a], resolution) < 0) {
            throw InputError(std::string(kAxisNames[a]) + " not divisible by resolution");
        }
    }
}

std::array<std::int32_t, 3> GridSpec::coords_of(std::size_t index) const {
    const auto nx = static_cast<std::size_t>(counts[0]);
    const auto ny = static_cast<std::size_t>(counts[1]);
    return {static_cast<std::int32_t>(index % nx),
            static_cast<std::int32_t>((index / nx) % ny),
            static_cast<std::int32_t>(index / (nx * ny))};
}

Vec3 GridSpec::center_of(std::size_t index) const {
    const auto c = coords_of(index);
    return {origin.x + (c[0] + 0.5) * resolution, origin.y + (c[1] + 0.5) * resolution,
            origin.z + (c[2] + 0.5) * resolution};
}

std::array<std::int32_t, 3> GridSpec::cell_of(const Vec3& p) const {
    std::array<std::int32_t, 3> cell{};
    for (int a = 0; a < 3; ++a) {
        auto i = static_cast<std::int64_t>(std::floor((p[a] - origin[a]) / resolution));
        i = std::clamp<std::int64_t>(i, 0, counts[a] - 1);
        cell[a] = static_cast<std::int32_t>(i);
    }
    return cell;
}

std::string GridSpec::shape_string() const {
    std::ostringstream os;
    os << counts[0] << "x" << counts[1] << "x" << counts[2];
    return os.str();
}

GridSpec discretize(const RoiSpec& roi) {
    roi.validate();
    GridSpec grid;
    grid.origin = roi.center - roi.dims * 0.5;
    grid.resolution = roi.resolution;
    for (int a = 0; a < 3; ++a) {
        grid.counts[a] = static_cast<std::int32_t>(axis_count(roi.dims[a], roi.resolution));
    }
    return grid;
}

Tpog accumulate_tpog(const GridSpec& grid, const std::vector<std::vector<std::uint32_t>>& frames,
                     int threads) {
    if (frames.empty()) {
        throw InputError("TPOG accumulation requires at least one frame");
    }
    const std::size_t m = grid.voxel_count();
    for (std::size_t f = 0; f < frames.size(); ++f) {
        for (const std::uint32_t idx : frames[f]) {
            if (idx >= m) {
                std::ostringstream os;
                os << "frame " << f << ": voxel index " << idx << " out of range (M = " << m
                   << ")";
                throw InputError(os.str());
            }
        }
    }

    Tpog tpog;
    tpog.grid = grid;
    tpog.frame_count = static_cast<std::uint32_t>(frames.size());
    tpog.occupied_counts.assign(m, 0);

    const unsigned workers = resolve_threads(threads);
    if (workers <= 1 || frames.size() == 1) {
        for (const auto& frame : frames) {
            for (const std::uint32_t idx : frame) {
                ++tpog.occupied_counts[idx];
            }
        }
    } else {
        // Privately aggregated per worker, then merged; integer addition makes
        // the merge order irrelevant for the result.
        std::vector<std::vector<std::uint32_t>> shards;
        const unsigned n_shards = std::min<unsigned>(workers, static_cast<unsigned>(frames.size()));
        shards.assign(n_shards, std::vector<std::uint32_t>(m, 0));
        const std::size_t chunk = (frames.size() + n_shards - 1) / n_shards;
        parallel_for(n_shards, n_shards, [&](std::size_t s0, std::size_t s1) {
            for (std::size_t s = s0; s < s1; ++s) {
                const std::size_t lo = s * chunk;
                const std::size_t hi = std::min(frames.size(), lo + chunk);
                auto& local = shards[s];
                for (std::size_t f = lo; f < hi; ++f) {
                    for (const std::uint32_t idx : frames[f]) {
                        ++local[idx];
                    }
                }
            }
        });
        for (const auto& shard : shards) {
            for (std::size_t i = 0; i < m; ++i) {
                tpog.occupied_counts[i] += shard[i];
            }
        }
    }

    tpog.prob.resize(m);
    const double t = static_cast<double>(tpog.frame_count);
    for (std::size_t i = 0; i < m; ++i) {
        tpog.prob[i] = static_cast<double>(tpog.occupied_counts[i]) / t;
    }
    return tpog;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    const double q = 1.0 - p;
    return -p * std::log2(p) - q * std::log2(q);
}

EntropyGrid entropy_grid(const Tpog& tpog, int threads) {
    return entropy_grid(tpog.grid, tpog.prob, threads);
}

EntropyGrid entropy_grid(const GridSpec& grid, std::span<const double> probabilities,
                         int threads) {
    if (probabilities.size() != grid.voxel_count()) {
        throw InputError("probability count does not match the grid shape");
    }
    EntropyGrid out;
    out.grid = grid;
    out.entropy.resize(probabilities.size());
    const unsigned workers = resolve_threads(threads);
    parallel_for(probabilities.size(), workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            out.entropy[i] = binary_entropy(probabilities[i]);
        }
    });
    return out;
}

}  // namespace egvs
