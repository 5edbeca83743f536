#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egvs/grid.hpp"
#include "egvs/scene.hpp"
#include "egvs/vec3.hpp"

namespace egvs {

/// Spinning multi-beam LiDAR: L scan lines at fixed elevation angles, one
/// beam per (azimuth, elevation) pair, azimuths tiling the full circle at
/// the horizontal resolution.
struct LidarSpec {
    int scan_lines = 0;
    double horizontal_resolution = 0.0;   // radians
    std::vector<double> elevation_angles; // radians, strictly increasing
    double vfov_min = 0.0;                // radians
    double vfov_max = 0.0;
    double max_range = 200.0;             // meters

    void validate() const;
    int azimuth_steps() const;
    std::size_t beam_count() const;       // N_B = L * 2*pi / psi
};

/// Evenly spaced elevation angles across the vertical field of view.
LidarSpec make_uniform_lidar(int scan_lines, double horizontal_resolution, double vfov_min,
                             double vfov_max, double max_range = 200.0);

/// The VLP-32C preset: 32 lines with the sensor's non-uniform elevation
/// table, VFoV -25..+15 degrees.
LidarSpec make_vlp32c(double horizontal_resolution = deg_to_rad(0.2), double max_range = 200.0);

/// Named preset lookup ("vlp32c"); throws InputError for unknown names.
LidarSpec lidar_preset(const std::string& name);

/// LiDAR mounting position, world frame, z above ground.
struct Placement {
    Vec3 position;

    void validate() const;
    bool operator==(const Placement& o) const { return position == o.position; }
};

/// Lexicographic (x, y, z) order, used for deterministic tie-breaking.
bool placement_less(const Placement& a, const Placement& b);

struct Segment {
    Vec3 start;
    Vec3 end;

    double length() const { return norm(end - start); }
};

/// Empty-frame laser segments for one placement, clipped to the ROI box.
struct BeamSet {
    Placement placement;
    std::vector<Segment> segments;
    std::size_t emitted_count = 0;
    std::size_t kept_count = 0;
};

/// What to do with beams that return nothing: extend them to max_range
/// (synthetic capture) or drop them (recorded point clouds).
enum class MissPolicy { Extend, Drop };

/// Unit beam directions in canonical order: azimuth-major, elevation-minor.
/// Azimuth k spans k * horizontal_resolution plus the optional offset.
std::vector<Vec3> beam_directions(const LidarSpec& spec, double azimuth_offset = 0.0);

/// Casts one full revolution against the scene and clips every segment to
/// the ROI box. Misses follow the policy; segments with no ROI overlap are
/// dropped. Output order is the canonical direction order at every thread
/// count.
BeamSet empty_frame_segments(const Scene& scene, const Placement& placement,
                             const LidarSpec& spec, const RoiSpec& roi,
                             MissPolicy policy = MissPolicy::Extend, int threads = 0);
BeamSet empty_frame_segments(const Scene& scene, const Placement& placement,
                             const LidarSpec& spec, const Box3& clip_box,
                             MissPolicy policy = MissPolicy::Extend, int threads = 0);

/// Builds segments from a recorded point frame (world-frame points), one per
/// point, clipped to the ROI box.
BeamSet ingest_point_frame(std::span<const Vec3> points, const Placement& placement,
                           const RoiSpec& roi);

/// Slab-clips a segment to the closed box. Returns nothing when the
/// intersection is empty or shorter than 1e-9.
std::optional<Segment> clip_segment_to_box(const Vec3& start, const Vec3& end, const Box3& box);

}  // namespace egvs
