#include "egvs/lidar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "egvs/errors.hpp"
#include "egvs/parallel.hpp"

namespace egvs {

namespace {

constexpr double kAzimuthTileTol = 1e-9;
constexpr double kMinSegmentLength = 1e-9;

// VLP-32C channel elevations sorted ascending, degrees.
constexpr double kVlp32cElevationsDeg[32] = {
    -25.0,   -15.639, -11.31, -8.843, -7.254, -6.148, -5.333, -4.667,
    -4.0,    -3.667,  -3.333, -3.0,   -2.667, -2.333, -2.0,   -1.667,
    -1.333,  -1.0,    -0.667, -0.333, 0.0,    0.333,  0.667,  1.0,
    1.333,   1.667,   2.333,  3.333,  4.667,  7.0,    10.333, 15.0};

}  // namespace

void LidarSpec::validate() const {
    if (scan_lines < 1) {
        throw InputError("LiDAR must have at least one scan line");
    }
    if (!(horizontal_resolution > 0.0 && horizontal_resolution < 2.0 * kPi)) {
        throw InputError("horizontal resolution must lie in (0, 2*pi)");
    }
    const double steps = 2.0 * kPi / horizontal_resolution;
    if (std::abs(steps - std::round(steps)) > kAzimuthTileTol) {
        throw InputError("beam azimuths must tile the circle: 2*pi / horizontal_resolution "
                         "is not an integer");
    }
    if (static_cast<int>(elevation_angles.size()) != scan_lines) {
        throw InputError("elevation angle count must equal the scan line count");
    }
    for (std::size_t i = 0; i < elevation_angles.size(); ++i) {
        const double e = elevation_angles[i];
        if (e < vfov_min || e > vfov_max) {
            std::ostringstream os;
            os << "elevation angle " << i << " outside the vertical field of view";
            throw InputError(os.str());
        }
        if (i > 0 && !(elevation_angles[i - 1] < e)) {
            throw InputError("elevation angles must be strictly increasing");
        }
    }
    if (!(max_range > 0.0)) {
        throw InputError("max_range must be positive");
    }
}

int LidarSpec::azimuth_steps() const {
    return static_cast<int>(std::round(2.0 * kPi / horizontal_resolution));
}

std::size_t LidarSpec::beam_count() const {
    return static_cast<std::size_t>(scan_lines) * static_cast<std::size_t>(azimuth_steps());
}

LidarSpec make_uniform_lidar(int scan_lines, double horizontal_resolution, double vfov_min,
                             double vfov_max, double max_range) {
    LidarSpec spec;
    spec.scan_lines = scan_lines;
    spec.horizontal_resolution = horizontal_resolution;
    spec.vfov_min = vfov_min;
    spec.vfov_max = vfov_max;
    spec.max_range = max_range;
    spec.elevation_angles.reserve(scan_lines);
    if (scan_lines == 1) {
        spec.elevation_angles.push_back(0.5 * (vfov_min + vfov_max));
    } else {
        // lerp lands the end lines exactly on the field-of-view bounds, so
        // the spec always passes its own validation.
        for (int i = 0; i < scan_lines; ++i) {
            const double t = static_cast<double>(i) / (scan_lines - 1);
            spec.elevation_angles.push_back(std::lerp(vfov_min, vfov_max, t));
        }
    }
    spec.validate();
    return spec;
}

LidarSpec make_vlp32c(double horizontal_resolution, double max_range) {
    LidarSpec spec;
    spec.scan_lines = 32;
    spec.horizontal_resolution = horizontal_resolution;
    spec.vfov_min = deg_to_rad(-25.0);
    spec.vfov_max = deg_to_rad(15.0);
    spec.max_range = max_range;
    spec.elevation_angles.reserve(32);
    for (const double deg : kVlp32cElevationsDeg) {
        spec.elevation_angles.push_back(deg_to_rad(deg));
    }
    spec.validate();
    return spec;
}

LidarSpec lidar_preset(const std::string& name) {
    if (name == "vlp32c") {
        return make_vlp32c();
    }
    throw InputError("unknown LiDAR preset: " + name);
}

void Placement::validate() const {
    if (!(position.z > 0.0)) {
        throw InputError("placement must be mounted above ground (z > 0)");
    }
}

bool placement_less(const Placement& a, const Placement& b) {
    if (a.position.x != b.position.x) {
        return a.position.x < b.position.x;
    }
    if (a.position.y != b.position.y) {
        return a.position.y < b.position.y;
    }
    return a.position.z < b.position.z;
}

std::vector<Vec3> beam_directions(const LidarSpec& spec, double azimuth_offset) {
    spec.validate();
    const int steps = spec.azimuth_steps();
    std::vector<double> cos_el(spec.elevation_angles.size());
    std::vector<double> sin_el(spec.elevation_angles.size());
    for (std::size_t i = 0; i < spec.elevation_angles.size(); ++i) {
        cos_el[i] = std::cos(spec.elevation_angles[i]);
        sin_el[i] = std::sin(spec.elevation_angles[i]);
    }
    std::vector<Vec3> dirs;
    dirs.reserve(spec.beam_count());
    for (int k = 0; k < steps; ++k) {
        const double az = azimuth_offset + k * spec.horizontal_resolution;
        const double ca = std::cos(az);
        const double sa = std::sin(az);
        for (std::size_t e = 0; e < spec.elevation_angles.size(); ++e) {
            dirs.push_back({ca * cos_el[e], sa * cos_el[e], sin_el[e]});
        }
    }
    return dirs;
}

std::optional<Segment> clip_segment_to_box(const Vec3& start, const Vec3& end, const Box3& box) {
    const Vec3 d = end - start;
    double t0 = 0.0;
    double t1 = 1.0;
    for (int a = 0; a < 3; ++a) {
        if (d[a] == 0.0) {
            if (start[a] < box.min[a] || start[a] > box.max[a]) {
                return std::nullopt;
            }
            continue;
        }
        double lo = (box.min[a] - start[a]) / d[a];
        double hi = (box.max[a] - start[a]) / d[a];
        if (lo > hi) {
            std::swap(lo, hi);
        }
        t0 = std::max(t0, lo);
        t1 = std::min(t1, hi);
        if (t0 > t1) {
            return std::nullopt;
        }
    }
    if ((t1 - t0) * norm(d) < kMinSegmentLength) {
        return std::nullopt;
    }
    Segment out;
    out.start = t0 == 0.0 ? start : start + d * t0;
    out.end = t1 == 1.0 ? end : start + d * t1;
    return out;
}

BeamSet empty_frame_segments(const Scene& scene, const Placement& placement,
                             const LidarSpec& spec, const RoiSpec& roi, MissPolicy policy,
                             int threads) {
    roi.validate();
    return empty_frame_segments(scene, placement, spec, roi.box(), policy, threads);
}

BeamSet empty_frame_segments(const Scene& scene, const Placement& placement,
                             const LidarSpec& spec, const Box3& clip_box, MissPolicy policy,
                             int threads) {
    placement.validate();
    const std::vector<Vec3> dirs = beam_directions(spec);
    const Box3 roi_box = clip_box;

    BeamSet beams;
    beams.placement = placement;
    beams.emitted_count = dirs.size();

    std::vector<std::optional<Segment>> slots(dirs.size());
    const unsigned workers = resolve_threads(threads);
    parallel_for(dirs.size(), workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto hit = scene.raycast(placement.position, dirs[i], spec.max_range);
            if (!hit && policy == MissPolicy::Drop) {
                continue;
            }
            const double reach = hit ? *hit : spec.max_range;
            const Vec3 endpoint = placement.position + dirs[i] * reach;
            slots[i] = clip_segment_to_box(placement.position, endpoint, roi_box);
        }
    });

    for (auto& slot : slots) {
        if (slot) {
            beams.segments.push_back(*slot);
        }
    }
    beams.kept_count = beams.segments.size();
    return beams;
}

BeamSet ingest_point_frame(std::span<const Vec3> points, const Placement& placement,
                           const RoiSpec& roi) {
    placement.validate();
    roi.validate();
    const Box3 roi_box = roi.box();

    BeamSet beams;
    beams.placement = placement;
    beams.emitted_count = points.size();
    for (const Vec3& p : points) {
        if (const auto clipped = clip_segment_to_box(placement.position, p, roi_box)) {
            beams.segments.push_back(*clipped);
        }
    }
    beams.kept_count = beams.segments.size();
    return beams;
}

}  // namespace egvs
