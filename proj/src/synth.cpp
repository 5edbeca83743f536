#include "egvs/synth.hpp"

#include <cmath>
#include <string>

#include "egvs/errors.hpp"
#include "egvs/vec3.hpp"

namespace egvs {

std::uint64_t SplitMix64::next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

RoiSpec make_demo_roi() {
    return {{0.0, 0.0, 2.5}, {50.0, 100.0, 5.0}, 0.5};
}

Placement make_demo_placement() {
    return {{-30.0, 0.0, 3.0}};
}

std::vector<ScenePrimitive> make_demo_scene(bool with_wall) {
    std::vector<ScenePrimitive> prims;
    prims.push_back(GroundPlanePrim{0.0});
    for (const double sx : {-1.0, 1.0}) {
        for (const double sy : {-1.0, 1.0}) {
            prims.push_back(CylinderPrim{{sx * 8.0, sy * 8.0, 0.0}, 0.15, 6.0});
        }
    }
    // Signal arms reaching from two poles over the carriageway.
    prims.push_back(ObbPrim{{8.0, 5.5, 5.5}, {0.15, 2.5, 0.3}, 0.0});
    prims.push_back(ObbPrim{{-8.0, -5.5, 5.5}, {0.15, 2.5, 0.3}, 0.0});
    // Trees: trunk plus a tilted canopy box.
    prims.push_back(CylinderPrim{{15.0, -12.0, 0.0}, 0.2, 3.0});
    prims.push_back(ObbPrim{{15.0, -12.0, 4.0}, {1.5, 1.5, 1.2}, 0.4});
    prims.push_back(CylinderPrim{{-15.0, 12.0, 0.0}, 0.2, 3.0});
    prims.push_back(ObbPrim{{-15.0, 12.0, 4.0}, {1.8, 1.4, 1.1}, 2.1});
    if (with_wall) {
        prims.push_back(AabPrim{{-26.0, -30.0, 0.0}, {-25.5, 30.0, 6.0}});
    }
    return prims;
}

void SynthSpec::validate() const {
    if (frames < 1) {
        throw InputError("synthesis requires at least one frame");
    }
    if (!(dt > 0)) {
        throw InputError("frame interval must be positive");
    }
    if (lanes_x < 0 || lanes_y < 0 || lanes_x + lanes_y < 1) {
        throw InputError("at least one lane is required");
    }
    if (vehicles_per_lane < 1) {
        throw InputError("vehicles per lane must be positive");
    }
    if (!(lane_spacing > 0) || !(span > 0)) {
        throw InputError("lane spacing and span must be positive");
    }
    if (!(0 < speed_min && speed_min <= speed_max)) {
        throw InputError("speeds must satisfy 0 < min <= max");
    }
}

double lane_offset(int lane, int lane_count, double spacing) {
    return (static_cast<double>(lane) - 0.5 * static_cast<double>(lane_count - 1)) * spacing;
}

namespace {

constexpr Vec3 kVehicleDims{4.5, 1.8, 1.5};

struct Vehicle {
    std::string id;
    double offset = 0.0;  // lateral lane position
    double s0 = 0.0;      // initial position along the lane
    double speed = 0.0;
    bool along_x = false;
};

double wrap_span(double s, double span) {
    const double half = 0.5 * span;
    double r = std::fmod(s + half, span);
    if (r < 0) {
        r += span;
    }
    return r - half;
}

}  // namespace

std::vector<TrajectoryFrame> make_demo_traffic(const SynthSpec& spec) {
    spec.validate();
    SplitMix64 rng(spec.seed);

    std::vector<Vehicle> vehicles;
    const auto spawn_lane = [&](bool along_x, int lane, int lane_count) {
        const char axis = along_x ? 'x' : 'y';
        for (int v = 0; v < spec.vehicles_per_lane; ++v) {
            Vehicle veh;
            veh.id = std::string(1, axis) + std::to_string(lane) + "v" + std::to_string(v);
            veh.offset = lane_offset(lane, lane_count, spec.lane_spacing);
            veh.s0 = rng.uniform(-0.5 * spec.span, 0.5 * spec.span);
            veh.speed = rng.uniform(spec.speed_min, spec.speed_max);
            veh.along_x = along_x;
            vehicles.push_back(std::move(veh));
        }
    };
    for (int lane = 0; lane < spec.lanes_x; ++lane) {
        spawn_lane(true, lane, spec.lanes_x);
    }
    for (int lane = 0; lane < spec.lanes_y; ++lane) {
        spawn_lane(false, lane, spec.lanes_y);
    }

    std::vector<TrajectoryFrame> frames;
    frames.reserve(spec.frames);
    for (std::size_t f = 0; f < spec.frames; ++f) {
        TrajectoryFrame frame;
        frame.time = static_cast<double>(f) * spec.dt;
        for (const Vehicle& veh : vehicles) {
            const double s = wrap_span(veh.s0 + veh.speed * frame.time, spec.span);
            TrajectoryObject obj;
            obj.id = veh.id;
            obj.object_class = "vehicle";
            obj.dims = kVehicleDims;
            obj.center = veh.along_x ? Vec3{s, veh.offset, 0.5 * kVehicleDims.z}
                                     : Vec3{veh.offset, s, 0.5 * kVehicleDims.z};
            obj.yaw = veh.along_x ? 0.0 : 0.5 * kPi;
            frame.objects.push_back(std::move(obj));
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

}  // namespace egvs
