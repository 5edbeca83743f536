#include "egvs/traversal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "egvs/errors.hpp"
#include "egvs/parallel.hpp"

namespace egvs {

namespace {

constexpr double kEndpointTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Clamps both endpoints into the closed grid box; rejects endpoints farther
// outside than the tolerance.
void validate_and_clamp(Vec3& s, Vec3& e, const GridSpec& grid) {
    const Box3 box = grid.box();
    for (int a = 0; a < 3; ++a) {
        if (s[a] < box.min[a] - kEndpointTol || s[a] > box.max[a] + kEndpointTol ||
            e[a] < box.min[a] - kEndpointTol || e[a] > box.max[a] + kEndpointTol) {
            throw InputError("segment endpoint outside the grid box");
        }
        s[a] = std::clamp(s[a], box.min[a], box.max[a]);
        e[a] = std::clamp(e[a], box.min[a], box.max[a]);
    }
}

// Parametric grid march (Amanatides & Woo style) over t in [0, 1].
// Plane crossings are recomputed from integer plane indices instead of being
// accumulated, so crossing parameters match direct slab evaluation bit for
// bit. Axes whose crossings coincide step together, which skips the
// zero-length cells at edge and corner grazes. A cell is reported only when
// its parameter interval has positive length.
template <typename Visitor>
void march(Vec3 s, Vec3 e, const GridSpec& grid, Visitor&& visit) {
    const Vec3 d = e - s;
    std::array<std::int32_t, 3> cell = grid.cell_of(s);

    if (d.x == 0.0 && d.y == 0.0 && d.z == 0.0) {
        visit(grid.index_of(cell[0], cell[1], cell[2]));
        return;
    }

    const auto plane_t = [&](int a, std::int32_t k) {
        return (grid.origin[a] + k * grid.resolution - s[a]) / d[a];
    };

    std::array<std::int32_t, 3> step{};
    std::array<std::int32_t, 3> plane{};
    std::array<double, 3> t_next{kInf, kInf, kInf};
    for (int a = 0; a < 3; ++a) {
        if (d[a] > 0.0) {
            step[a] = 1;
            plane[a] = cell[a] + 1;
            t_next[a] = plane_t(a, plane[a]);
        } else if (d[a] < 0.0) {
            step[a] = -1;
            plane[a] = cell[a];
            t_next[a] = plane_t(a, plane[a]);
        }
    }

    double t_curr = 0.0;
    while (true) {
        double t_exit = std::min({t_next[0], t_next[1], t_next[2]});
        const bool last = t_exit >= 1.0;
        if (last) {
            t_exit = 1.0;
        }
        if (t_exit > t_curr) {
            visit(grid.index_of(cell[0], cell[1], cell[2]));
        }
        if (last) {
            return;
        }
        for (int a = 0; a < 3; ++a) {
            if (t_next[a] == t_exit) {
                cell[a] += step[a];
                if (cell[a] < 0 || cell[a] >= grid.counts[a]) {
                    return;
                }
                plane[a] += step[a];
                t_next[a] = plane_t(a, plane[a]);
            }
        }
        t_curr = t_exit;
    }
}

}  // namespace

std::vector<std::size_t> traverse(const Vec3& start, const Vec3& end, const GridSpec& grid) {
    Vec3 s = start;
    Vec3 e = end;
    validate_and_clamp(s, e, grid);
    std::vector<std::size_t> out;
    march(s, e, grid, [&](std::size_t idx) { out.push_back(idx); });
    return out;
}

void traverse_visit(const Vec3& start, const Vec3& end, const GridSpec& grid,
                    const std::function<void(std::size_t)>& visit) {
    Vec3 s = start;
    Vec3 e = end;
    validate_and_clamp(s, e, grid);
    march(s, e, grid, [&](std::size_t idx) { visit(idx); });
}

HitCountGrid hit_counts(const BeamSet& beams, const GridSpec& grid, int threads) {
    const std::size_t m = grid.voxel_count();
    const std::size_t n = beams.segments.size();

    // Validate (and clamp) every segment up front so the parallel phase
    // cannot throw; failures identify the offending segment.
    std::vector<Segment> clamped(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 s = beams.segments[i].start;
        Vec3 e = beams.segments[i].end;
        try {
            validate_and_clamp(s, e, grid);
        } catch (const InputError& err) {
            std::ostringstream os;
            os << "segment " << i << ": " << err.what();
            throw InputError(os.str());
        }
        clamped[i] = {s, e};
    }

    HitCountGrid out;
    out.grid = grid;
    out.counts.assign(m, 0);

    const unsigned workers =
        n == 0 ? 1 : std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(n));
    if (workers <= 1) {
        for (const Segment& seg : clamped) {
            march(seg.start, seg.end, grid, [&](std::size_t idx) { ++out.counts[idx]; });
        }
        return out;
    }

    std::vector<std::vector<std::uint32_t>> shards(workers,
                                                   std::vector<std::uint32_t>(m, 0));
    const std::size_t chunk = (n + workers - 1) / workers;
    parallel_for(workers, workers, [&](std::size_t w0, std::size_t w1) {
        for (std::size_t w = w0; w < w1; ++w) {
            auto& local = shards[w];
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) {
                march(clamped[i].start, clamped[i].end, grid,
                      [&](std::size_t idx) { ++local[idx]; });
            }
        }
    });
    for (const auto& shard : shards) {
        for (std::size_t i = 0; i < m; ++i) {
            out.counts[i] += shard[i];
        }
    }
    return out;
}

}  // namespace egvs
