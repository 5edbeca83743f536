#pragma once

#include <cstdint>
#include <vector>

#include "egvs/grid.hpp"
#include "egvs/io.hpp"
#include "egvs/lidar.hpp"
#include "egvs/scene.hpp"

namespace egvs {

/// SplitMix64 (Steele, Lea, Flood 2014). Sole source of randomness for
/// scenario synthesis: one 64-bit seed fixes every generated artifact.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next();
    /// Uniform in [0, 1), 53-bit resolution.
    double next_double();
    double uniform(double lo, double hi);
};

/// 50 x 100 x 5 m region centered on the intersection, resting on the ground,
/// at 0.5 m resolution (a 100 x 200 x 10 grid).
RoiSpec make_demo_roi();

/// Curbside mast west of the region, 3 m up.
Placement make_demo_placement();

/// Intersection furniture: ground plane, corner poles, signal arms, two
/// trees. with_wall adds a barrier between the demo placement and the region
/// of interest that occludes nearly the whole field of view.
std::vector<ScenePrimitive> make_demo_scene(bool with_wall);

/// Straight and crossing lanes with wrap-around vehicle flow.
struct SynthSpec {
    std::uint64_t seed = 42;
    std::size_t frames = 200;
    double dt = 0.25;
    int lanes_x = 1;  // lanes running along x
    int lanes_y = 1;  // lanes running along y, crossing the x lanes
    double lane_spacing = 7.0;
    int vehicles_per_lane = 4;
    double speed_min = 5.0;
    double speed_max = 15.0;
    double span = 120.0;  // lane length, centered on the origin

    void validate() const;
};

/// Lane i's lateral offset when lane_count lanes straddle the origin.
double lane_offset(int lane, int lane_count, double spacing);

/// Constant-speed vehicles on the lane lattice; positions wrap at the span
/// ends. Identical spec -> identical frames.
std::vector<TrajectoryFrame> make_demo_traffic(const SynthSpec& spec);

}  // namespace egvs
