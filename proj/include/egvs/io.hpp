#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "egvs/grid.hpp"
#include "egvs/metric.hpp"
#include "egvs/scene.hpp"
#include "egvs/vec3.hpp"

namespace egvs {

/// One tracked object in a trajectory frame. dims are (length, width,
/// height); yaw rotates the box about the vertical axis.
struct TrajectoryObject {
    std::string id;
    std::string object_class;
    Vec3 center;
    Vec3 dims;
    double yaw = 0.0;
};

struct TrajectoryFrame {
    double time = 0.0;
    std::vector<TrajectoryObject> objects;
};

/// Classes rasterized into the TPOG unless overridden.
const std::set<std::string>& default_class_filter();

/// Line-delimited JSON trajectory log. Rejects malformed lines (with the
/// line number) and non-monotonic frame times.
std::vector<TrajectoryFrame> parse_trajectory(const std::filesystem::path& path);
void write_trajectory(const std::filesystem::path& path,
                      std::span<const TrajectoryFrame> frames);

/// Voxels whose centers fall inside any filtered object's yaw-rotated box.
/// An empty filter admits every class. Returns sorted unique indices.
std::vector<std::uint32_t> rasterize_frame(std::span<const TrajectoryObject> objects,
                                           const GridSpec& grid,
                                           const std::set<std::string>& class_filter);

/// Rasterizes every frame (in parallel) and accumulates the TPOG.
Tpog build_tpog(std::span<const TrajectoryFrame> frames, const GridSpec& grid,
                const std::set<std::string>& class_filter, int threads = 0);

/// Scene JSON: {"primitives": [...], "mesh_files": [...]}. Mesh files use a
/// plain-text indexed-triangle format: a "<nv> <nt>" count header, then
/// "v x y z" lines, then zero-based "f i j k" lines.
std::pair<std::vector<ScenePrimitive>, std::vector<SceneMesh>> parse_scene(
    const std::filesystem::path& path);
void write_scene(const std::filesystem::path& path,
                 std::span<const ScenePrimitive> primitives,
                 std::span<const std::string> mesh_files = {});
SceneMesh parse_mesh(const std::filesystem::path& path);
void write_mesh(const std::filesystem::path& path, const SceneMesh& mesh);

/// Plain-text point rows "x y z" (meters, world frame); '#' starts a comment.
std::vector<Vec3> parse_point_frame(const std::filesystem::path& path);

/// Row-major 4x4 pose matrix in a whitespace-separated text file.
std::array<double, 16> parse_pose_matrix(const std::filesystem::path& path);
std::vector<Vec3> apply_pose(std::span<const Vec3> points, const std::array<double, 16>& pose);

enum class GridValueKind { Probability, Entropy, Count, Contribution };

std::string to_string(GridValueKind kind);
GridValueKind grid_value_kind_from_string(const std::string& s);

/// Grid payload loaded back from disk; reals holds float64 kinds, counts
/// holds the count kind.
struct LoadedGrid {
    GridSpec grid;
    GridValueKind kind = GridValueKind::Probability;
    std::vector<double> reals;
    std::vector<std::uint32_t> counts;
};

/// Writes the raw little-endian payload at `path` and a JSON sidecar header
/// at `path + ".json"`. Round-trips bit-exactly.
void write_grid(const std::filesystem::path& path, const GridSpec& grid,
                std::span<const double> values, GridValueKind kind);
void write_grid(const std::filesystem::path& path, const GridSpec& grid,
                std::span<const std::uint32_t> values);
LoadedGrid read_grid(const std::filesystem::path& path);

/// Sums values through z and writes an n_y-row by n_x-column CSV with
/// 17-significant-digit formatting.
void write_z_sum_heatmap(const std::filesystem::path& path, std::span<const double> values,
                         const GridSpec& grid);
std::vector<double> z_sum(std::span<const double> values, const GridSpec& grid);

/// Score report: score, normalized score, gamma, placements, grid shape, and
/// the evaluation time (0.0 unless timing was requested).
void write_egvs_result_json(const std::filesystem::path& path, const EgvsResult& result,
                            double eval_seconds = 0.0);

/// Header-row CSV without quoting; cells may not contain commas.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::filesystem::path& path);
/// Column by header name, parsed as numbers. Throws when the column is
/// missing or holds a non-numeric cell.
std::vector<double> csv_column(const CsvTable& table, const std::string& name);

}  // namespace egvs
