#include "egvs/scene.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "egvs/errors.hpp"

namespace egvs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBaryEps = 1e-12;   // inclusive margin so shared edges cannot leak
constexpr double kDegenerateArea2 = 1e-24;
constexpr std::uint32_t kLeafSize = 4;

// Solid interval [t0, t1] of an axis-aligned box along the ray, or empty.
// NaN from on-boundary zero-direction axes resolves to "inside" (conservative).
bool slab_interval(const Vec3& origin, const Vec3& dir, const Vec3& bmin, const Vec3& bmax,
                   double& t0, double& t1) {
    t0 = -kInf;
    t1 = kInf;
    for (int a = 0; a < 3; ++a) {
        const double inv = 1.0 / dir[a];
        double lo = (bmin[a] - origin[a]) * inv;
        double hi = (bmax[a] - origin[a]) * inv;
        if (inv < 0.0) {
            std::swap(lo, hi);
        }
        t0 = std::max(t0, lo);
        t1 = std::min(t1, hi);
        if (t0 > t1) {
            return false;
        }
    }
    return true;
}

std::optional<double> surface_hit(double t0, double t1, double t_min, double t_max) {
    if (t0 > t_min && t0 <= t_max) {
        return t0;
    }
    if (t1 > t_min && t1 <= t_max) {
        return t1;
    }
    return std::nullopt;
}

Box3 obb_bounds(const ObbPrim& b) {
    const double c = std::abs(std::cos(b.yaw));
    const double s = std::abs(std::sin(b.yaw));
    const Vec3 e{c * b.half_extents.x + s * b.half_extents.y,
                 s * b.half_extents.x + c * b.half_extents.y, b.half_extents.z};
    return {b.center - e, b.center + e};
}

Box3 primitive_bounds(const ScenePrimitive& prim) {
    if (const auto* aab = std::get_if<AabPrim>(&prim)) {
        return {aab->min, aab->max};
    }
    if (const auto* obb = std::get_if<ObbPrim>(&prim)) {
        return obb_bounds(*obb);
    }
    const auto& cyl = std::get<CylinderPrim>(prim);
    return {{cyl.base.x - cyl.radius, cyl.base.y - cyl.radius, cyl.base.z},
            {cyl.base.x + cyl.radius, cyl.base.y + cyl.radius, cyl.base.z + cyl.height}};
}

}  // namespace

void validate_primitive(const ScenePrimitive& prim, std::size_t index) {
    const auto fail = [index](const char* what) {
        std::ostringstream os;
        os << "primitive " << index << ": " << what;
        throw InputError(os.str());
    };
    if (const auto* aab = std::get_if<AabPrim>(&prim)) {
        if (!(aab->min.x < aab->max.x && aab->min.y < aab->max.y && aab->min.z < aab->max.z)) {
            fail("box min must be strictly below max on every axis");
        }
    } else if (const auto* obb = std::get_if<ObbPrim>(&prim)) {
        if (!(obb->half_extents.x > 0 && obb->half_extents.y > 0 && obb->half_extents.z > 0)) {
            fail("half extents must be positive");
        }
    } else if (const auto* cyl = std::get_if<CylinderPrim>(&prim)) {
        if (!(cyl->radius > 0)) {
            fail("cylinder radius must be positive");
        }
        if (!(cyl->height > 0)) {
            fail("cylinder height must be positive");
        }
    }
}

std::optional<double> intersect_aab(const Vec3& origin, const Vec3& dir, const AabPrim& box,
                                    double t_min, double t_max) {
    double t0;
    double t1;
    if (!slab_interval(origin, dir, box.min, box.max, t0, t1)) {
        return std::nullopt;
    }
    return surface_hit(t0, t1, t_min, t_max);
}

std::optional<double> intersect_obb(const Vec3& origin, const Vec3& dir, const ObbPrim& box,
                                    double t_min, double t_max) {
    const double c = std::cos(box.yaw);
    const double s = std::sin(box.yaw);
    const Vec3 rel = origin - box.center;
    // Rotate by -yaw into the box frame.
    const Vec3 o{c * rel.x + s * rel.y, -s * rel.x + c * rel.y, rel.z};
    const Vec3 d{c * dir.x + s * dir.y, -s * dir.x + c * dir.y, dir.z};
    double t0;
    double t1;
    if (!slab_interval(o, d, -box.half_extents, box.half_extents, t0, t1)) {
        return std::nullopt;
    }
    return surface_hit(t0, t1, t_min, t_max);
}

std::optional<double> intersect_cylinder(const Vec3& origin, const Vec3& dir,
                                         const CylinderPrim& cyl, double t_min, double t_max) {
    const double z0 = cyl.base.z;
    const double z1 = cyl.base.z + cyl.height;
    const double ox = origin.x - cyl.base.x;
    const double oy = origin.y - cyl.base.y;
    double best = kInf;

    const double a = dir.x * dir.x + dir.y * dir.y;
    if (a > 0.0) {
        const double b = 2.0 * (ox * dir.x + oy * dir.y);
        const double cq = ox * ox + oy * oy - cyl.radius * cyl.radius;
        const double disc = b * b - 4.0 * a * cq;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            for (const double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
                if (t > t_min && t <= t_max && t < best) {
                    const double z = origin.z + t * dir.z;
                    if (z >= z0 && z <= z1) {
                        best = t;
                    }
                }
            }
        }
    }
    if (dir.z != 0.0) {
        for (const double zc : {z0, z1}) {
            const double t = (zc - origin.z) / dir.z;
            if (t > t_min && t <= t_max && t < best) {
                const double x = ox + t * dir.x;
                const double y = oy + t * dir.y;
                if (x * x + y * y <= cyl.radius * cyl.radius) {
                    best = t;
                }
            }
        }
    }
    if (best == kInf) {
        return std::nullopt;
    }
    return best;
}

std::optional<double> intersect_plane(const Vec3& origin, const Vec3& dir,
                                      const GroundPlanePrim& plane, double t_min, double t_max) {
    if (dir.z == 0.0) {
        return std::nullopt;
    }
    const double t = (plane.z - origin.z) / dir.z;
    if (t > t_min && t <= t_max) {
        return t;
    }
    return std::nullopt;
}

std::optional<double> intersect_primitive(const Vec3& origin, const Vec3& dir,
                                          const ScenePrimitive& prim, double t_min, double t_max) {
    return std::visit(
        [&](const auto& p) -> std::optional<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, AabPrim>) {
                return intersect_aab(origin, dir, p, t_min, t_max);
            } else if constexpr (std::is_same_v<T, ObbPrim>) {
                return intersect_obb(origin, dir, p, t_min, t_max);
            } else if constexpr (std::is_same_v<T, CylinderPrim>) {
                return intersect_cylinder(origin, dir, p, t_min, t_max);
            } else {
                return intersect_plane(origin, dir, p, t_min, t_max);
            }
        },
        prim);
}

std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                                         const Vec3& b, const Vec3& c, double t_min,
                                         double t_max) {
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 p = cross(dir, e2);
    const double det = dot(e1, p);
    if (std::abs(det) < 1e-14) {
        return std::nullopt;
    }
    const double inv = 1.0 / det;
    const Vec3 s = origin - a;
    const double u = dot(s, p) * inv;
    if (u < -kBaryEps || u > 1.0 + kBaryEps) {
        return std::nullopt;
    }
    const Vec3 q = cross(s, e1);
    const double v = dot(dir, q) * inv;
    if (v < -kBaryEps || u + v > 1.0 + kBaryEps) {
        return std::nullopt;
    }
    const double t = dot(e2, q) * inv;
    if (t > t_min && t <= t_max) {
        return t;
    }
    return std::nullopt;
}

Scene Scene::build(std::vector<ScenePrimitive> primitives, std::vector<SceneMesh> meshes) {
    Scene scene;
    for (std::size_t i = 0; i < primitives.size(); ++i) {
        validate_primitive(primitives[i], i);
    }
    scene.primitives_ = std::move(primitives);

    for (std::size_t mi = 0; mi < meshes.size(); ++mi) {
        auto& mesh = meshes[mi];
        std::size_t dropped = 0;
        std::vector<std::array<std::uint32_t, 3>> kept;
        kept.reserve(mesh.triangles.size());
        for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
            const auto& tri = mesh.triangles[ti];
            for (const std::uint32_t vi : tri) {
                if (vi >= mesh.vertices.size()) {
                    std::ostringstream os;
                    os << "mesh " << mi << ", triangle " << ti << ": vertex index " << vi
                       << " out of range (" << mesh.vertices.size() << " vertices)";
                    throw InputError(os.str());
                }
            }
            const Vec3& a = mesh.vertices[tri[0]];
            const Vec3& b = mesh.vertices[tri[1]];
            const Vec3& c = mesh.vertices[tri[2]];
            if (norm_squared(cross(b - a, c - a)) < kDegenerateArea2) {
                ++dropped;
                continue;
            }
            kept.push_back(tri);
        }
        if (dropped > 0) {
            std::cerr << "warning: mesh " << mi << ": dropped " << dropped
                      << " degenerate triangle(s)\n";
        }
        mesh.triangles = std::move(kept);
    }
    scene.meshes_ = std::move(meshes);

    for (const auto& mesh : scene.meshes_) {
        for (const auto& tri : mesh.triangles) {
            scene.triangles_.push_back(
                {mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]});
        }
    }
    for (std::size_t i = 0; i < scene.primitives_.size(); ++i) {
        if (const auto* plane = std::get_if<GroundPlanePrim>(&scene.primitives_[i])) {
            scene.planes_.push_back(*plane);
        } else {
            scene.elements_.push_back({static_cast<std::int32_t>(i), -1});
        }
    }
    for (std::size_t t = 0; t < scene.triangles_.size(); ++t) {
        scene.elements_.push_back({-1, static_cast<std::int32_t>(t)});
    }

    scene.build_bvh();
    return scene;
}

void Scene::build_bvh() {
    const std::size_t n = elements_.size();
    order_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        order_[i] = static_cast<std::uint32_t>(i);
    }
    if (n == 0) {
        return;
    }
    std::vector<Box3> boxes(n);
    std::vector<Vec3> centroids(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Element& e = elements_[i];
        if (e.primitive_index >= 0) {
            boxes[i] = primitive_bounds(primitives_[e.primitive_index]);
        } else {
            const Triangle& t = triangles_[e.triangle_index];
            boxes[i] = {min(min(t.a, t.b), t.c), max(max(t.a, t.b), t.c)};
        }
        centroids[i] = boxes[i].center();
    }
    nodes_.reserve(2 * n);
    root_ = build_node(0, static_cast<std::uint32_t>(n), boxes, centroids);
}

std::int32_t Scene::build_node(std::uint32_t first, std::uint32_t count, std::vector<Box3>& boxes,
                               std::vector<Vec3>& centroids) {
    Node node;
    node.bounds = boxes[order_[first]];
    Box3 centroid_bounds{centroids[order_[first]], centroids[order_[first]]};
    for (std::uint32_t i = first + 1; i < first + count; ++i) {
        node.bounds = node.bounds.expanded(boxes[order_[i]]);
        const Vec3& c = centroids[order_[i]];
        centroid_bounds = centroid_bounds.expanded({c, c});
    }

    const Vec3 spread = centroid_bounds.extent();
    const int axis = spread.x >= spread.y ? (spread.x >= spread.z ? 0 : 2)
                                          : (spread.y >= spread.z ? 1 : 2);
    if (count <= kLeafSize || spread[axis] == 0.0) {
        node.first = first;
        node.count = count;
        nodes_.push_back(node);
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    const std::uint32_t mid = first + count / 2;
    std::nth_element(order_.begin() + first, order_.begin() + mid,
                     order_.begin() + first + count,
                     [&](std::uint32_t lhs, std::uint32_t rhs) {
                         const double cl = centroids[lhs][axis];
                         const double cr = centroids[rhs][axis];
                         return cl != cr ? cl < cr : lhs < rhs;
                     });

    const std::int32_t left = build_node(first, mid - first, boxes, centroids);
    const std::int32_t right = build_node(mid, first + count - mid, boxes, centroids);
    node.left = left;
    node.right = right;
    nodes_.push_back(node);
    return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::optional<double> Scene::intersect_element(const Vec3& origin, const Vec3& dir,
                                               const Element& e, double t_min,
                                               double t_max) const {
    if (e.primitive_index >= 0) {
        return intersect_primitive(origin, dir, primitives_[e.primitive_index], t_min, t_max);
    }
    const Triangle& t = triangles_[e.triangle_index];
    return intersect_triangle(origin, dir, t.a, t.b, t.c, t_min, t_max);
}

std::optional<double> Scene::raycast(const Vec3& origin, const Vec3& dir,
                                     double max_range) const {
    if (std::abs(norm(dir) - 1.0) > 1e-9) {
        throw InputError("ray direction must be a unit vector");
    }
    if (!(max_range > 0.0)) {
        throw InputError("max_range must be positive");
    }

    double best = kInf;
    for (const auto& plane : planes_) {
        if (const auto t = intersect_plane(origin, dir, plane, kSelfHitEpsilon, max_range)) {
            best = std::min(best, *t);
        }
    }

    if (root_ >= 0) {
        std::int32_t stack[64];
        int top = 0;
        stack[top++] = root_;
        while (top > 0) {
            const Node& node = nodes_[stack[--top]];
            double t0;
            double t1;
            if (!slab_interval(origin, dir, node.bounds.min, node.bounds.max, t0, t1)) {
                continue;
            }
            const double limit = std::min(best, max_range);
            if (t1 < kSelfHitEpsilon || t0 > limit) {
                continue;
            }
            if (node.count > 0) {
                for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
                    const auto t = intersect_element(origin, dir, elements_[order_[i]],
                                                     kSelfHitEpsilon, max_range);
                    if (t && *t < best) {
                        best = *t;
                    }
                }
            } else {
                stack[top++] = node.left;
                stack[top++] = node.right;
            }
        }
    }

    if (best <= max_range) {
        return best;
    }
    return std::nullopt;
}

}  // namespace egvs
