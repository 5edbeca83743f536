// Python module: mirrors the C++ surface one to one. Conversions follow the
// pybind11 STL casters (lists, tuples, sets, dicts, pathlib paths); sequences
// of three numbers convert to Vec3 and Placement implicitly.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <sstream>
#include <utility>
#include <vector>

#include "egvs/errors.hpp"
#include "egvs/grid.hpp"
#include "egvs/io.hpp"
#include "egvs/lidar.hpp"
#include "egvs/metric.hpp"
#include "egvs/scene.hpp"
#include "egvs/search.hpp"
#include "egvs/synth.hpp"
#include "egvs/traversal.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace egvs;

namespace {

Vec3 vec3_from_sequence(const py::sequence& s) {
    if (py::len(s) != 3) {
        throw py::type_error("expected a sequence of three numbers");
    }
    return {s[0].cast<double>(), s[1].cast<double>(), s[2].cast<double>()};
}

std::string vec3_repr(const Vec3& v) {
    std::ostringstream os;
    os << "Vec3(" << v.x << ", " << v.y << ", " << v.z << ")";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_egvs, m) {
    m.doc() = "Entropy-guided visibility scoring for roadside LiDAR placement";
    m.attr("__version__") = "0.1.0";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    // --- geometry ---------------------------------------------------------

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<>())
        .def(py::init<double, double, double>(), "x"_a, "y"_a, "z"_a)
        .def(py::init(&vec3_from_sequence))
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def("to_tuple", [](const Vec3& v) { return py::make_tuple(v.x, v.y, v.z); })
        .def("__len__", [](const Vec3&) { return 3; })
        .def("__getitem__",
             [](const Vec3& v, int i) {
                 if (i < 0 || i > 2) {
                     throw py::index_error();
                 }
                 return v[i];
             })
        .def("__iter__",
             [](const Vec3& v) { return py::iter(py::make_tuple(v.x, v.y, v.z)); })
        .def("__eq__", [](const Vec3& a, const Vec3& b) { return a == b; }, py::is_operator())
        .def("__repr__", &vec3_repr);
    py::implicitly_convertible<py::sequence, Vec3>();

    py::class_<Box3>(m, "Box3")
        .def(py::init<>())
        .def(py::init([](const Vec3& lo, const Vec3& hi) { return Box3{lo, hi}; }), "min"_a,
             "max"_a)
        .def_readwrite("min", &Box3::min)
        .def_readwrite("max", &Box3::max)
        .def("contains", &Box3::contains, "p"_a, "tol"_a = 0.0)
        .def("extent", &Box3::extent)
        .def("center", &Box3::center);

    m.def("deg_to_rad", &deg_to_rad, "deg"_a);
    m.def("rad_to_deg", &rad_to_deg, "rad"_a);

    // --- occupancy grids ----------------------------------------------------

    py::class_<RoiSpec>(m, "RoiSpec")
        .def(py::init<>())
        .def(py::init([](const Vec3& center, const Vec3& dims, double resolution) {
                 return RoiSpec{center, dims, resolution};
             }),
             "center"_a, "dims"_a, "resolution"_a = 0.5)
        .def_readwrite("center", &RoiSpec::center)
        .def_readwrite("dims", &RoiSpec::dims)
        .def_readwrite("resolution", &RoiSpec::resolution)
        .def("validate", &RoiSpec::validate)
        .def("box", &RoiSpec::box);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("origin", &GridSpec::origin)
        .def_readwrite("counts", &GridSpec::counts)
        .def_readwrite("resolution", &GridSpec::resolution)
        .def("voxel_count", &GridSpec::voxel_count)
        .def("index_of", &GridSpec::index_of, "ix"_a, "iy"_a, "iz"_a)
        .def("coords_of", &GridSpec::coords_of, "index"_a)
        .def("center_of", &GridSpec::center_of, "index"_a)
        .def("cell_of", &GridSpec::cell_of, "p"_a)
        .def("index_of_position", &GridSpec::index_of_position, "p"_a)
        .def("box", &GridSpec::box)
        .def("same_shape", &GridSpec::same_shape, "other"_a)
        .def("__repr__",
             [](const GridSpec& g) { return "GridSpec(" + g.shape_string() + ")"; });

    py::class_<Tpog>(m, "Tpog")
        .def_readonly("grid", &Tpog::grid)
        .def_readonly("occupied_counts", &Tpog::occupied_counts)
        .def_readonly("prob", &Tpog::prob)
        .def_readonly("frame_count", &Tpog::frame_count);

    py::class_<EntropyGrid>(m, "EntropyGrid")
        .def(py::init([](const GridSpec& grid, std::vector<double> entropy) {
                 return EntropyGrid{grid, std::move(entropy)};
             }),
             "grid"_a, "entropy"_a)
        .def_readonly("grid", &EntropyGrid::grid)
        .def_readonly("entropy", &EntropyGrid::entropy);

    m.def("discretize", &discretize, "roi"_a);
    m.def("binary_entropy", &binary_entropy, "p"_a);
    m.def(
        "accumulate_tpog",
        [](const GridSpec& grid, const std::vector<std::vector<std::uint32_t>>& frames,
           int threads) { return accumulate_tpog(grid, frames, threads); },
        "grid"_a, "frames"_a, "threads"_a = 0, py::call_guard<py::gil_scoped_release>());
    m.def(
        "entropy_grid",
        [](const Tpog& tpog, int threads) { return entropy_grid(tpog, threads); }, "tpog"_a,
        "threads"_a = 0, py::call_guard<py::gil_scoped_release>());
    m.def(
        "entropy_grid",
        [](const GridSpec& grid, const std::vector<double>& probabilities, int threads) {
            return entropy_grid(grid, probabilities, threads);
        },
        "grid"_a, "probabilities"_a, "threads"_a = 0,
        py::call_guard<py::gil_scoped_release>());

    // --- scenes -------------------------------------------------------------

    py::class_<AabPrim>(m, "AabPrim")
        .def(py::init([](const Vec3& lo, const Vec3& hi) { return AabPrim{lo, hi}; }),
             "min"_a, "max"_a)
        .def_readwrite("min", &AabPrim::min)
        .def_readwrite("max", &AabPrim::max);

    py::class_<ObbPrim>(m, "ObbPrim")
        .def(py::init([](const Vec3& center, const Vec3& half_extents, double yaw) {
                 return ObbPrim{center, half_extents, yaw};
             }),
             "center"_a, "half_extents"_a, "yaw"_a = 0.0)
        .def_readwrite("center", &ObbPrim::center)
        .def_readwrite("half_extents", &ObbPrim::half_extents)
        .def_readwrite("yaw", &ObbPrim::yaw);

    py::class_<CylinderPrim>(m, "CylinderPrim")
        .def(py::init([](const Vec3& base, double radius, double height) {
                 return CylinderPrim{base, radius, height};
             }),
             "base"_a, "radius"_a, "height"_a)
        .def_readwrite("base", &CylinderPrim::base)
        .def_readwrite("radius", &CylinderPrim::radius)
        .def_readwrite("height", &CylinderPrim::height);

    py::class_<GroundPlanePrim>(m, "GroundPlanePrim")
        .def(py::init([](double z) { return GroundPlanePrim{z}; }), "z"_a = 0.0)
        .def_readwrite("z", &GroundPlanePrim::z);

    py::class_<SceneMesh>(m, "SceneMesh")
        .def(py::init<>())
        .def(py::init([](std::vector<Vec3> vertices,
                         std::vector<std::array<std::uint32_t, 3>> triangles) {
                 return SceneMesh{std::move(vertices), std::move(triangles)};
             }),
             "vertices"_a, "triangles"_a)
        .def_readwrite("vertices", &SceneMesh::vertices)
        .def_readwrite("triangles", &SceneMesh::triangles);

    py::class_<Scene>(m, "Scene")
        .def(py::init<>())
        .def_static(
            "build",
            [](std::vector<ScenePrimitive> primitives, std::vector<SceneMesh> meshes) {
                return Scene::build(std::move(primitives), std::move(meshes));
            },
            "primitives"_a, "meshes"_a = std::vector<SceneMesh>{})
        .def("raycast", &Scene::raycast, "origin"_a, "dir"_a, "max_range"_a)
        .def("primitives", &Scene::primitives)
        .def("meshes", &Scene::meshes)
        .def("empty", &Scene::empty)
        .def("element_count", &Scene::element_count);

    // --- sensors and beams ----------------------------------------------------

    py::class_<LidarSpec>(m, "LidarSpec")
        .def(py::init<>())
        .def_readwrite("scan_lines", &LidarSpec::scan_lines)
        .def_readwrite("horizontal_resolution", &LidarSpec::horizontal_resolution)
        .def_readwrite("elevation_angles", &LidarSpec::elevation_angles)
        .def_readwrite("vfov_min", &LidarSpec::vfov_min)
        .def_readwrite("vfov_max", &LidarSpec::vfov_max)
        .def_readwrite("max_range", &LidarSpec::max_range)
        .def("validate", &LidarSpec::validate)
        .def("azimuth_steps", &LidarSpec::azimuth_steps)
        .def("beam_count", &LidarSpec::beam_count);

    m.def("make_uniform_lidar", &make_uniform_lidar, "scan_lines"_a,
          "horizontal_resolution"_a, "vfov_min"_a, "vfov_max"_a, "max_range"_a = 200.0);
    m.def("make_vlp32c", &make_vlp32c, "horizontal_resolution"_a = deg_to_rad(0.2),
          "max_range"_a = 200.0);
    m.def("lidar_preset", &lidar_preset, "name"_a);

    py::class_<Placement>(m, "Placement")
        .def(py::init<>())
        .def(py::init([](const Vec3& position) { return Placement{position}; }), "position"_a)
        .def(py::init(
            [](const py::sequence& s) { return Placement{vec3_from_sequence(s)}; }))
        .def_readwrite("position", &Placement::position)
        .def("validate", &Placement::validate)
        .def("__eq__", [](const Placement& a, const Placement& b) { return a == b; },
             py::is_operator())
        .def("__repr__", [](const Placement& p) {
            return "Placement(" + vec3_repr(p.position) + ")";
        });
    py::implicitly_convertible<py::sequence, Placement>();

    py::class_<Segment>(m, "Segment")
        .def_readonly("start", &Segment::start)
        .def_readonly("end", &Segment::end)
        .def("length", &Segment::length);

    py::class_<BeamSet>(m, "BeamSet")
        .def_readonly("placement", &BeamSet::placement)
        .def_readonly("segments", &BeamSet::segments)
        .def_readonly("emitted_count", &BeamSet::emitted_count)
        .def_readonly("kept_count", &BeamSet::kept_count);

    py::enum_<MissPolicy>(m, "MissPolicy")
        .value("Extend", MissPolicy::Extend)
        .value("Drop", MissPolicy::Drop);

    m.def(
        "empty_frame_segments",
        [](const Scene& scene, const Placement& placement, const LidarSpec& spec,
           const RoiSpec& roi, MissPolicy policy, int threads) {
            return empty_frame_segments(scene, placement, spec, roi, policy, threads);
        },
        "scene"_a, "placement"_a, "spec"_a, "roi"_a, "policy"_a = MissPolicy::Extend,
        "threads"_a = 0, py::call_guard<py::gil_scoped_release>());
    m.def(
        "ingest_point_frame",
        [](const std::vector<Vec3>& points, const Placement& placement, const RoiSpec& roi) {
            return ingest_point_frame(points, placement, roi);
        },
        "points"_a, "placement"_a, "roi"_a);
    m.def("clip_segment_to_box", &clip_segment_to_box, "start"_a, "end"_a, "box"_a);

    // --- traversal and scoring -------------------------------------------------

    py::class_<HitCountGrid>(m, "HitCountGrid")
        .def_readonly("grid", &HitCountGrid::grid)
        .def_readonly("counts", &HitCountGrid::counts);

    m.def("traverse", &traverse, "start"_a, "end"_a, "grid"_a);
    m.def("hit_counts", &hit_counts, "beams"_a, "grid"_a, "threads"_a = 0,
          py::call_guard<py::gil_scoped_release>());

    py::class_<EgvsParams>(m, "EgvsParams")
        .def(py::init<>())
        .def(py::init([](std::uint32_t gamma) { return EgvsParams{gamma}; }), "gamma"_a)
        .def_readwrite("gamma", &EgvsParams::gamma)
        .def("validate", &EgvsParams::validate);

    py::class_<EgvsResult>(m, "EgvsResult")
        .def_readonly("score", &EgvsResult::score)
        .def_readonly("normalized", &EgvsResult::normalized)
        .def_readonly("placements", &EgvsResult::placements)
        .def_readonly("params", &EgvsResult::params)
        .def_readonly("grid_counts", &EgvsResult::grid_counts)
        .def_readonly("per_voxel_contribution", &EgvsResult::per_voxel_contribution)
        .def("__repr__", [](const EgvsResult& r) {
            std::ostringstream os;
            os << "EgvsResult(score=" << r.score << ", normalized=" << r.normalized << ")";
            return os.str();
        });

    m.def("egvs", &egvs::egvs, "entropy"_a, "hits"_a, "params"_a = EgvsParams{},
          "materialize_contributions"_a = false, "threads"_a = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "egvs_multi",
        [](const EntropyGrid& entropy, const std::vector<HitCountGrid>& hit_grids,
           EgvsParams params, bool materialize_contributions, int threads) {
            return egvs_multi(entropy, hit_grids, params, materialize_contributions, threads);
        },
        "entropy"_a, "hit_grids"_a, "params"_a = EgvsParams{},
        "materialize_contributions"_a = false, "threads"_a = 0,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "evaluate_placement",
        [](const Scene& scene, const EntropyGrid& entropy, const LidarSpec& spec,
           const Placement& placement, EgvsParams params, MissPolicy policy, int threads,
           bool materialize_contributions) {
            return evaluate_placement(scene, entropy, spec, placement, params, policy,
                                      threads, materialize_contributions);
        },
        "scene"_a, "entropy"_a, "spec"_a, "placement"_a, "params"_a = EgvsParams{},
        "policy"_a = MissPolicy::Extend, "threads"_a = 0,
        "materialize_contributions"_a = false, py::call_guard<py::gil_scoped_release>());
    m.def(
        "evaluate_placement",
        [](const Scene& scene, const EntropyGrid& entropy, const LidarSpec& spec,
           const Placement& placement, const RoiSpec& roi, EgvsParams params,
           MissPolicy policy, int threads, bool materialize_contributions) {
            return evaluate_placement(scene, entropy, spec, placement, roi, params, policy,
                                      threads, materialize_contributions);
        },
        "scene"_a, "entropy"_a, "spec"_a, "placement"_a, "roi"_a, "params"_a = EgvsParams{},
        "policy"_a = MissPolicy::Extend, "threads"_a = 0,
        "materialize_contributions"_a = false, py::call_guard<py::gil_scoped_release>());

    // --- placement search ---------------------------------------------------

    py::class_<AxisRange>(m, "AxisRange")
        .def(py::init<>())
        .def(py::init([](double lo, double hi, double step) {
                 return AxisRange{lo, hi, step};
             }),
             "min"_a, "max"_a, "step"_a = 1.0)
        .def_readwrite("min", &AxisRange::min)
        .def_readwrite("max", &AxisRange::max)
        .def_readwrite("step", &AxisRange::step);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def(py::init([](AxisRange x, AxisRange y, AxisRange z, std::size_t budget) {
                 return SweepSpec{x, y, z, budget};
             }),
             "x"_a, "y"_a, "z"_a, "budget"_a = 100000)
        .def_readwrite("x", &SweepSpec::x)
        .def_readwrite("y", &SweepSpec::y)
        .def_readwrite("z", &SweepSpec::z)
        .def_readwrite("budget", &SweepSpec::budget)
        .def("validate", &SweepSpec::validate)
        .def("axis_counts", &SweepSpec::axis_counts)
        .def("candidate_count", &SweepSpec::candidate_count)
        .def("candidate", &SweepSpec::candidate, "i"_a);

    py::class_<RankingRow>(m, "RankingRow")
        .def_readonly("placement", &RankingRow::placement)
        .def_readonly("score", &RankingRow::score)
        .def_readonly("normalized", &RankingRow::normalized)
        .def_readonly("eval_seconds", &RankingRow::eval_seconds);

    py::class_<RankingTable>(m, "RankingTable").def_readonly("rows", &RankingTable::rows);

    m.def("sweep", &sweep, "spec"_a, "scene"_a, "entropy"_a, "lidar"_a,
          "params"_a = EgvsParams{}, "policy"_a = MissPolicy::Extend, "threads"_a = 0,
          "record_timing"_a = false, py::call_guard<py::gil_scoped_release>());

    py::class_<RefineResult>(m, "RefineResult")
        .def_readonly("placement", &RefineResult::placement)
        .def_readonly("score", &RefineResult::score)
        .def_readonly("evaluations", &RefineResult::evaluations);

    // The evaluator is a Python callable, so this one keeps the GIL.
    m.def("refine", &refine, "start"_a, "bounds"_a, "evaluator"_a, "initial_step"_a,
          "tolerance"_a);

    py::class_<GreedyStep>(m, "GreedyStep")
        .def_readonly("candidate_index", &GreedyStep::candidate_index)
        .def_readonly("placement", &GreedyStep::placement)
        .def_readonly("marginal_gain", &GreedyStep::marginal_gain)
        .def_readonly("combined_score", &GreedyStep::combined_score);

    py::class_<GreedyResult>(m, "GreedyResult")
        .def_readonly("selected", &GreedyResult::selected)
        .def_readonly("steps", &GreedyResult::steps)
        .def_readonly("combined_score", &GreedyResult::combined_score)
        .def_readonly("normalized", &GreedyResult::normalized);

    m.def(
        "greedy_multi",
        [](std::size_t k, const std::vector<Placement>& candidates, const Scene& scene,
           const EntropyGrid& entropy, const LidarSpec& lidar, EgvsParams params,
           MissPolicy policy, int threads) {
            return greedy_multi(k, candidates, scene, entropy, lidar, params, policy,
                                threads);
        },
        "k"_a, "candidates"_a, "scene"_a, "entropy"_a, "lidar"_a, "params"_a = EgvsParams{},
        "policy"_a = MissPolicy::Extend, "threads"_a = 0,
        py::call_guard<py::gil_scoped_release>());

    py::class_<Correlation>(m, "Correlation")
        .def_readonly("spearman", &Correlation::spearman)
        .def_readonly("pearson", &Correlation::pearson)
        .def_readonly("n", &Correlation::n);

    m.def(
        "average_ranks",
        [](const std::vector<double>& values) { return average_ranks(values); }, "values"_a);
    m.def(
        "rank_correlation",
        [](const std::vector<double>& scores, const std::vector<double>& references) {
            return rank_correlation(scores, references);
        },
        "scores"_a, "references"_a);

    // --- file formats ---------------------------------------------------------

    py::class_<TrajectoryObject>(m, "TrajectoryObject")
        .def(py::init<>())
        .def(py::init([](std::string id, std::string object_class, const Vec3& center,
                         const Vec3& dims, double yaw) {
                 return TrajectoryObject{std::move(id), std::move(object_class), center, dims,
                                         yaw};
             }),
             "id"_a, "object_class"_a, "center"_a, "dims"_a, "yaw"_a = 0.0)
        .def_readwrite("id", &TrajectoryObject::id)
        .def_readwrite("object_class", &TrajectoryObject::object_class)
        .def_readwrite("center", &TrajectoryObject::center)
        .def_readwrite("dims", &TrajectoryObject::dims)
        .def_readwrite("yaw", &TrajectoryObject::yaw);

    py::class_<TrajectoryFrame>(m, "TrajectoryFrame")
        .def(py::init<>())
        .def(py::init([](double time, std::vector<TrajectoryObject> objects) {
                 return TrajectoryFrame{time, std::move(objects)};
             }),
             "time"_a, "objects"_a)
        .def_readwrite("time", &TrajectoryFrame::time)
        .def_readwrite("objects", &TrajectoryFrame::objects);

    m.def("default_class_filter",
          []() -> std::set<std::string> { return default_class_filter(); });
    m.def("parse_trajectory", &parse_trajectory, "path"_a);
    m.def(
        "write_trajectory",
        [](const std::filesystem::path& path, const std::vector<TrajectoryFrame>& frames) {
            write_trajectory(path, frames);
        },
        "path"_a, "frames"_a);
    m.def(
        "rasterize_frame",
        [](const std::vector<TrajectoryObject>& objects, const GridSpec& grid,
           const std::set<std::string>& class_filter) {
            return rasterize_frame(objects, grid, class_filter);
        },
        "objects"_a, "grid"_a, "class_filter"_a = default_class_filter());
    m.def(
        "build_tpog",
        [](const std::vector<TrajectoryFrame>& frames, const GridSpec& grid,
           const std::set<std::string>& class_filter, int threads) {
            return build_tpog(frames, grid, class_filter, threads);
        },
        "frames"_a, "grid"_a, "class_filter"_a = default_class_filter(), "threads"_a = 0,
        py::call_guard<py::gil_scoped_release>());

    m.def("parse_scene", &parse_scene, "path"_a);
    m.def(
        "write_scene",
        [](const std::filesystem::path& path, const std::vector<ScenePrimitive>& primitives,
           const std::vector<std::string>& mesh_files) {
            write_scene(path, primitives, mesh_files);
        },
        "path"_a, "primitives"_a, "mesh_files"_a = std::vector<std::string>{});
    m.def("parse_mesh", &parse_mesh, "path"_a);
    m.def("write_mesh", &write_mesh, "path"_a, "mesh"_a);
    m.def("parse_point_frame", &parse_point_frame, "path"_a);
    m.def("parse_pose_matrix", &parse_pose_matrix, "path"_a);
    m.def(
        "apply_pose",
        [](const std::vector<Vec3>& points, const std::array<double, 16>& pose) {
            return apply_pose(points, pose);
        },
        "points"_a, "pose"_a);

    py::enum_<GridValueKind>(m, "GridValueKind")
        .value("Probability", GridValueKind::Probability)
        .value("Entropy", GridValueKind::Entropy)
        .value("Count", GridValueKind::Count)
        .value("Contribution", GridValueKind::Contribution);

    py::class_<LoadedGrid>(m, "LoadedGrid")
        .def_readonly("grid", &LoadedGrid::grid)
        .def_readonly("kind", &LoadedGrid::kind)
        .def_readonly("reals", &LoadedGrid::reals)
        .def_readonly("counts", &LoadedGrid::counts);

    m.def(
        "write_grid",
        [](const std::filesystem::path& path, const GridSpec& grid,
           const std::vector<double>& values, GridValueKind kind) {
            write_grid(path, grid, values, kind);
        },
        "path"_a, "grid"_a, "values"_a, "kind"_a);
    m.def(
        "write_count_grid",
        [](const std::filesystem::path& path, const GridSpec& grid,
           const std::vector<std::uint32_t>& values) { write_grid(path, grid, values); },
        "path"_a, "grid"_a, "values"_a);
    m.def("read_grid", &read_grid, "path"_a);
    m.def(
        "z_sum",
        [](const std::vector<double>& values, const GridSpec& grid) {
            return z_sum(values, grid);
        },
        "values"_a, "grid"_a);
    m.def(
        "write_z_sum_heatmap",
        [](const std::filesystem::path& path, const std::vector<double>& values,
           const GridSpec& grid) { write_z_sum_heatmap(path, values, grid); },
        "path"_a, "values"_a, "grid"_a);
    m.def("write_egvs_result_json", &write_egvs_result_json, "path"_a, "result"_a,
          "eval_seconds"_a = 0.0);
    m.def("write_ranking_csv", &write_ranking_csv, "path"_a, "table"_a);
    m.def("write_ranking_json", &write_ranking_json, "path"_a, "table"_a);
    m.def("write_correlation_json", &write_correlation_json, "path"_a, "corr"_a);

    py::class_<CsvTable>(m, "CsvTable")
        .def_readonly("header", &CsvTable::header)
        .def_readonly("rows", &CsvTable::rows);

    m.def("parse_csv", &parse_csv, "path"_a);
    m.def("csv_column", &csv_column, "table"_a, "name"_a);

    // --- scenario synthesis ----------------------------------------------------

    py::class_<SplitMix64>(m, "SplitMix64")
        .def(py::init<std::uint64_t>(), "seed"_a)
        .def_readwrite("state", &SplitMix64::state)
        .def("next", &SplitMix64::next)
        .def("next_double", &SplitMix64::next_double)
        .def("uniform", &SplitMix64::uniform, "lo"_a, "hi"_a);

    py::class_<SynthSpec>(m, "SynthSpec")
        .def(py::init<>())
        .def_readwrite("seed", &SynthSpec::seed)
        .def_readwrite("frames", &SynthSpec::frames)
        .def_readwrite("dt", &SynthSpec::dt)
        .def_readwrite("lanes_x", &SynthSpec::lanes_x)
        .def_readwrite("lanes_y", &SynthSpec::lanes_y)
        .def_readwrite("lane_spacing", &SynthSpec::lane_spacing)
        .def_readwrite("vehicles_per_lane", &SynthSpec::vehicles_per_lane)
        .def_readwrite("speed_min", &SynthSpec::speed_min)
        .def_readwrite("speed_max", &SynthSpec::speed_max)
        .def_readwrite("span", &SynthSpec::span)
        .def("validate", &SynthSpec::validate);

    m.def("make_demo_roi", &make_demo_roi);
    m.def("make_demo_placement", &make_demo_placement);
    m.def("make_demo_scene", &make_demo_scene, "with_wall"_a);
    m.def("lane_offset", &lane_offset, "lane"_a, "lane_count"_a, "spacing"_a);
    m.def("make_demo_traffic", &make_demo_traffic, "spec"_a,
          py::call_guard<py::gil_scoped_release>());
}
