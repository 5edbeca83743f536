#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "egvs/vec3.hpp"

namespace egvs {

struct AabPrim {
    Vec3 min;
    Vec3 max;
};

/// Box rotated by yaw about the vertical axis.
struct ObbPrim {
    Vec3 center;
    Vec3 half_extents;
    double yaw = 0.0;
};

/// Capped vertical cylinder standing on its base center.
struct CylinderPrim {
    Vec3 base;
    double radius = 0.0;
    double height = 0.0;
};

/// Infinite horizontal plane at the given height.
struct GroundPlanePrim {
    double z = 0.0;
};

using ScenePrimitive = std::variant<AabPrim, ObbPrim, CylinderPrim, GroundPlanePrim>;

struct SceneMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;
};

/// Smallest t in (t_min, t_max] where the ray origin + t*dir meets the
/// element's surface, or nothing. dir must be unit length.
std::optional<double> intersect_aab(const Vec3& origin, const Vec3& dir, const AabPrim& box,
                                    double t_min, double t_max);
std::optional<double> intersect_obb(const Vec3& origin, const Vec3& dir, const ObbPrim& box,
                                    double t_min, double t_max);
std::optional<double> intersect_cylinder(const Vec3& origin, const Vec3& dir,
                                         const CylinderPrim& cyl, double t_min, double t_max);
std::optional<double> intersect_plane(const Vec3& origin, const Vec3& dir,
                                      const GroundPlanePrim& plane, double t_min, double t_max);
std::optional<double> intersect_primitive(const Vec3& origin, const Vec3& dir,
                                          const ScenePrimitive& prim, double t_min, double t_max);
/// Edge and vertex hits count as hits, so shared mesh edges cannot leak rays.
std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                                         const Vec3& b, const Vec3& c, double t_min, double t_max);

/// Throws InputError naming the element index when the primitive is malformed
/// (inverted box, nonpositive radius or height, nonfinite field).
void validate_primitive(const ScenePrimitive& prim, std::size_t index);

/// Static occluder geometry with a bounding-volume hierarchy for first-hit
/// queries. Immutable after build; concurrent queries are safe.
class Scene {
public:
    Scene() = default;

    /// Validates all elements and builds the acceleration structure.
    /// Degenerate mesh triangles are dropped with a warning on stderr.
    static Scene build(std::vector<ScenePrimitive> primitives, std::vector<SceneMesh> meshes);

    /// First-hit distance within (1e-6, max_range], or nothing.
    std::optional<double> raycast(const Vec3& origin, const Vec3& dir, double max_range) const;

    const std::vector<ScenePrimitive>& primitives() const { return primitives_; }
    const std::vector<SceneMesh>& meshes() const { return meshes_; }
    bool empty() const { return primitives_.empty() && meshes_.empty(); }
    std::size_t element_count() const { return elements_.size() + planes_.size(); }

    /// Minimum ray-start offset used by raycast.
    static constexpr double kSelfHitEpsilon = 1e-6;

private:
    struct Triangle {
        Vec3 a, b, c;
    };

    // BVH element: either a (finite) primitive or a mesh triangle.
    struct Element {
        std::int32_t primitive_index = -1;  // into primitives_, or -1
        std::int32_t triangle_index = -1;   // into triangles_, or -1
    };

    struct Node {
        Box3 bounds;
        std::int32_t left = -1;   // internal: child node ids
        std::int32_t right = -1;
        std::uint32_t first = 0;  // leaf: range into element order
        std::uint32_t count = 0;
    };

    void build_bvh();
    std::int32_t build_node(std::uint32_t first, std::uint32_t count,
                            std::vector<Box3>& boxes, std::vector<Vec3>& centroids);
    std::optional<double> intersect_element(const Vec3& origin, const Vec3& dir,
                                            const Element& e, double t_min, double t_max) const;

    std::vector<ScenePrimitive> primitives_;
    std::vector<SceneMesh> meshes_;
    std::vector<Triangle> triangles_;
    std::vector<GroundPlanePrim> planes_;  // infinite extent, kept out of the BVH
    std::vector<Element> elements_;
    std::vector<std::uint32_t> order_;     // element permutation referenced by leaves
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

}  // namespace egvs
