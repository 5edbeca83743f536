#include "egvs/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "egvs/errors.hpp"
#include "egvs/parallel.hpp"

namespace egvs {

namespace {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "grid payloads are little-endian; big-endian hosts are unsupported");

std::ifstream open_input(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ifstream in(path, mode);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    return out;
}

Vec3 vec3_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number()) {
        throw InputError(context + " must be an array of three numbers");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

double number_field(const json& j, const char* field, const std::string& context) {
    const auto it = j.find(field);
    if (it == j.end()) {
        throw InputError(context + " missing field '" + field + "'");
    }
    if (!it->is_number()) {
        throw InputError(context + " field '" + field + "' must be a number");
    }
    return it->get<double>();
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

TrajectoryObject parse_object(const json& j, const std::string& context) {
    if (!j.is_object()) {
        throw InputError(context + " must be an object");
    }
    TrajectoryObject obj;
    const auto id = j.find("id");
    if (id == j.end() || !id->is_string()) {
        throw InputError(context + " missing field 'id'");
    }
    obj.id = id->get<std::string>();
    const auto cls = j.find("class");
    if (cls == j.end() || !cls->is_string()) {
        throw InputError(context + " missing field 'class'");
    }
    obj.object_class = cls->get<std::string>();
    const auto center = j.find("center");
    if (center == j.end()) {
        throw InputError(context + " missing field 'center'");
    }
    obj.center = vec3_from_json(*center, context + " field 'center'");
    const auto dims = j.find("dims");
    if (dims == j.end()) {
        throw InputError(context + " missing field 'dims'");
    }
    obj.dims = vec3_from_json(*dims, context + " field 'dims'");
    if (!(obj.dims.x > 0 && obj.dims.y > 0 && obj.dims.z > 0)) {
        throw InputError(context + " field 'dims' must be positive");
    }
    obj.yaw = number_field(j, "yaw", context);
    return obj;
}

}  // namespace

const std::set<std::string>& default_class_filter() {
    static const std::set<std::string> classes = {"vehicle", "truck", "bus"};
    return classes;
}

std::vector<TrajectoryFrame> parse_trajectory(const std::filesystem::path& path) {
    std::ifstream in = open_input(path, std::ios::in);
    std::vector<TrajectoryFrame> frames;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const std::string context = "line " + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw InputError(context + ": invalid JSON: " + e.what());
        }
        if (!j.is_object()) {
            throw InputError(context + ": frame must be a JSON object");
        }
        TrajectoryFrame frame;
        frame.time = number_field(j, "time", context);
        const auto objects = j.find("objects");
        if (objects == j.end() || !objects->is_array()) {
            throw InputError(context + " missing field 'objects'");
        }
        std::size_t oi = 0;
        for (const auto& obj : *objects) {
            frame.objects.push_back(
                parse_object(obj, context + ", object " + std::to_string(oi)));
            ++oi;
        }
        if (!frames.empty() && !(frames.back().time < frame.time)) {
            throw InputError(context + ": frame time must be strictly increasing");
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

void write_trajectory(const std::filesystem::path& path,
                      std::span<const TrajectoryFrame> frames) {
    std::ofstream out = open_output(path, std::ios::out);
    for (const auto& frame : frames) {
        json j;
        j["time"] = frame.time;
        json objects = json::array();
        for (const auto& obj : frame.objects) {
            json o;
            o["id"] = obj.id;
            o["class"] = obj.object_class;
            o["center"] = vec3_to_json(obj.center);
            o["dims"] = vec3_to_json(obj.dims);
            o["yaw"] = obj.yaw;
            objects.push_back(std::move(o));
        }
        j["objects"] = std::move(objects);
        out << j.dump() << "\n";
    }
}

std::vector<std::uint32_t> rasterize_frame(std::span<const TrajectoryObject> objects,
                                           const GridSpec& grid,
                                           const std::set<std::string>& class_filter) {
    std::vector<std::uint32_t> occupied;
    const Box3 grid_box = grid.box();
    for (const auto& obj : objects) {
        if (!class_filter.empty() && class_filter.count(obj.object_class) == 0) {
            continue;
        }
        const double hx = 0.5 * obj.dims.x;
        const double hy = 0.5 * obj.dims.y;
        const double hz = 0.5 * obj.dims.z;
        const double c = std::cos(obj.yaw);
        const double s = std::sin(obj.yaw);
        // Horizontal reach of the rotated footprint.
        const double rx = std::abs(c) * hx + std::abs(s) * hy;
        const double ry = std::abs(s) * hx + std::abs(c) * hy;
        const Vec3 lo = max(Vec3{obj.center.x - rx, obj.center.y - ry, obj.center.z - hz},
                            grid_box.min);
        const Vec3 hi = min(Vec3{obj.center.x + rx, obj.center.y + ry, obj.center.z + hz},
                            grid_box.max);
        if (lo.x > hi.x || lo.y > hi.y || lo.z > hi.z) {
            continue;
        }
        const auto cell_lo = grid.cell_of(lo);
        const auto cell_hi = grid.cell_of(hi);
        for (std::int32_t iz = cell_lo[2]; iz <= cell_hi[2]; ++iz) {
            const double pz = grid.origin.z + (iz + 0.5) * grid.resolution;
            if (std::abs(pz - obj.center.z) > hz) {
                continue;
            }
            for (std::int32_t iy = cell_lo[1]; iy <= cell_hi[1]; ++iy) {
                const double py = grid.origin.y + (iy + 0.5) * grid.resolution;
                for (std::int32_t ix = cell_lo[0]; ix <= cell_hi[0]; ++ix) {
                    const double px = grid.origin.x + (ix + 0.5) * grid.resolution;
                    const double dx = px - obj.center.x;
                    const double dy = py - obj.center.y;
                    // Rotate the offset by -yaw into the box frame.
                    const double lx = c * dx + s * dy;
                    const double ly = -s * dx + c * dy;
                    if (std::abs(lx) <= hx && std::abs(ly) <= hy) {
                        occupied.push_back(
                            static_cast<std::uint32_t>(grid.index_of(ix, iy, iz)));
                    }
                }
            }
        }
    }
    std::sort(occupied.begin(), occupied.end());
    occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
    return occupied;
}

Tpog build_tpog(std::span<const TrajectoryFrame> frames, const GridSpec& grid,
                const std::set<std::string>& class_filter, int threads) {
    if (frames.empty()) {
        throw InputError("TPOG accumulation requires at least one frame");
    }
    std::vector<std::vector<std::uint32_t>> occupied(frames.size());
    const unsigned workers = resolve_threads(threads);
    parallel_for(frames.size(), workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t f = lo; f < hi; ++f) {
            occupied[f] = rasterize_frame(frames[f].objects, grid, class_filter);
        }
    });
    return accumulate_tpog(grid, occupied, threads);
}

std::pair<std::vector<ScenePrimitive>, std::vector<SceneMesh>> parse_scene(
    const std::filesystem::path& path) {
    std::ifstream in = open_input(path, std::ios::in);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": invalid JSON: " + std::string(e.what()));
    }
    if (!j.is_object() || !j.contains("primitives") || !j["primitives"].is_array()) {
        throw InputError(path.string() + ": scene must contain a 'primitives' array");
    }

    std::vector<ScenePrimitive> primitives;
    std::size_t index = 0;
    for (const auto& p : j["primitives"]) {
        const std::string context = "primitive " + std::to_string(index);
        if (!p.is_object() || !p.contains("kind") || !p["kind"].is_string()) {
            throw InputError(context + " missing field 'kind'");
        }
        const std::string kind = p["kind"].get<std::string>();
        if (kind == "aab") {
            primitives.push_back(AabPrim{vec3_from_json(p.at("min"), context + " 'min'"),
                                         vec3_from_json(p.at("max"), context + " 'max'")});
        } else if (kind == "obb") {
            primitives.push_back(
                ObbPrim{vec3_from_json(p.at("center"), context + " 'center'"),
                        vec3_from_json(p.at("half_extents"), context + " 'half_extents'"),
                        number_field(p, "yaw", context)});
        } else if (kind == "cylinder") {
            primitives.push_back(CylinderPrim{vec3_from_json(p.at("base"), context + " 'base'"),
                                              number_field(p, "radius", context),
                                              number_field(p, "height", context)});
        } else if (kind == "ground") {
            primitives.push_back(GroundPlanePrim{number_field(p, "z", context)});
        } else {
            throw InputError(context + ": unknown kind '" + kind + "'");
        }
        validate_primitive(primitives.back(), index);
        ++index;
    }

    std::vector<SceneMesh> meshes;
    if (j.contains("mesh_files")) {
        if (!j["mesh_files"].is_array()) {
            throw InputError(path.string() + ": 'mesh_files' must be an array of paths");
        }
        for (const auto& f : j["mesh_files"]) {
            if (!f.is_string()) {
                throw InputError(path.string() + ": 'mesh_files' entries must be strings");
            }
            std::filesystem::path mesh_path = f.get<std::string>();
            if (mesh_path.is_relative()) {
                mesh_path = path.parent_path() / mesh_path;
            }
            meshes.push_back(parse_mesh(mesh_path));
        }
    }
    return {std::move(primitives), std::move(meshes)};
}

void write_scene(const std::filesystem::path& path, std::span<const ScenePrimitive> primitives,
                 std::span<const std::string> mesh_files) {
    json j;
    json prims = json::array();
    for (const auto& prim : primitives) {
        json p;
        if (const auto* aab = std::get_if<AabPrim>(&prim)) {
            p["kind"] = "aab";
            p["min"] = vec3_to_json(aab->min);
            p["max"] = vec3_to_json(aab->max);
        } else if (const auto* obb = std::get_if<ObbPrim>(&prim)) {
            p["kind"] = "obb";
            p["center"] = vec3_to_json(obb->center);
            p["half_extents"] = vec3_to_json(obb->half_extents);
            p["yaw"] = obb->yaw;
        } else if (const auto* cyl = std::get_if<CylinderPrim>(&prim)) {
            p["kind"] = "cylinder";
            p["base"] = vec3_to_json(cyl->base);
            p["radius"] = cyl->radius;
            p["height"] = cyl->height;
        } else {
            p["kind"] = "ground";
            p["z"] = std::get<GroundPlanePrim>(prim).z;
        }
        prims.push_back(std::move(p));
    }
    j["primitives"] = std::move(prims);
    if (!mesh_files.empty()) {
        j["mesh_files"] = json(std::vector<std::string>(mesh_files.begin(), mesh_files.end()));
    }
    std::ofstream out = open_output(path, std::ios::out);
    out << j.dump(2) << "\n";
}

SceneMesh parse_mesh(const std::filesystem::path& path) {
    std::ifstream in = open_input(path, std::ios::in);
    const std::string name = path.string();

    std::string line;
    std::size_t line_no = 0;
    const auto next_content_line = [&](std::string& out_line) {
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            out_line = line;
            return true;
        }
        return false;
    };

    std::string content;
    if (!next_content_line(content)) {
        throw InputError(name + ": missing header line");
    }
    std::istringstream header(content);
    std::size_t n_vertices = 0;
    std::size_t n_triangles = 0;
    if (!(header >> n_vertices >> n_triangles)) {
        throw InputError(name + ": header must be '<vertex count> <triangle count>'");
    }

    SceneMesh mesh;
    mesh.vertices.reserve(n_vertices);
    for (std::size_t i = 0; i < n_vertices; ++i) {
        if (!next_content_line(content)) {
            throw InputError(name + ": unexpected end of file in vertex list");
        }
        std::istringstream row(content);
        char tag = 0;
        Vec3 v;
        if (!(row >> tag >> v.x >> v.y >> v.z) || tag != 'v') {
            throw InputError(name + ": line " + std::to_string(line_no) +
                             ": expected 'v x y z'");
        }
        mesh.vertices.push_back(v);
    }
    mesh.triangles.reserve(n_triangles);
    for (std::size_t i = 0; i < n_triangles; ++i) {
        if (!next_content_line(content)) {
            throw InputError(name + ": unexpected end of file in face list");
        }
        std::istringstream row(content);
        char tag = 0;
        long long a = 0;
        long long b = 0;
        long long c = 0;
        if (!(row >> tag >> a >> b >> c) || tag != 'f') {
            throw InputError(name + ": line " + std::to_string(line_no) +
                             ": expected 'f i j k'");
        }
        for (const long long idx : {a, b, c}) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= mesh.vertices.size()) {
                throw InputError(name + ": line " + std::to_string(line_no) +
                                 ": vertex index " + std::to_string(idx) + " out of range");
            }
        }
        mesh.triangles.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                  static_cast<std::uint32_t>(c)});
    }
    return mesh;
}

void write_mesh(const std::filesystem::path& path, const SceneMesh& mesh) {
    std::ofstream out = open_output(path, std::ios::out);
    out << mesh.vertices.size() << " " << mesh.triangles.size() << "\n";
    for (const Vec3& v : mesh.vertices) {
        out << "v " << format_double(v.x) << " " << format_double(v.y) << " "
            << format_double(v.z) << "\n";
    }
    for (const auto& t : mesh.triangles) {
        out << "f " << t[0] << " " << t[1] << " " << t[2] << "\n";
    }
}

std::vector<Vec3> parse_point_frame(const std::filesystem::path& path) {
    std::ifstream in = open_input(path, std::ios::in);
    std::vector<Vec3> points;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream row(line);
        Vec3 p;
        std::string extra;
        if (!(row >> p.x >> p.y >> p.z)) {
            throw InputError(path.string() + ": line " + std::to_string(line_no) +
                             ": expected three numeric fields 'x y z'");
        }
        if (row >> extra) {
            throw InputError(path.string() + ": line " + std::to_string(line_no) +
                             ": trailing content '" + extra + "'");
        }
        points.push_back(p);
    }
    return points;
}

std::array<double, 16> parse_pose_matrix(const std::filesystem::path& path) {
    std::ifstream in = open_input(path, std::ios::in);
    std::array<double, 16> pose{};
    for (std::size_t i = 0; i < pose.size(); ++i) {
        if (!(in >> pose[i])) {
            throw InputError(path.string() + ": pose file must contain 16 numbers (4x4, "
                                             "row-major)");
        }
    }
    return pose;
}

std::vector<Vec3> apply_pose(std::span<const Vec3> points, const std::array<double, 16>& pose) {
    std::vector<Vec3> out;
    out.reserve(points.size());
    for (const Vec3& p : points) {
        out.push_back({pose[0] * p.x + pose[1] * p.y + pose[2] * p.z + pose[3],
                       pose[4] * p.x + pose[5] * p.y + pose[6] * p.z + pose[7],
                       pose[8] * p.x + pose[9] * p.y + pose[10] * p.z + pose[11]});
    }
    return out;
}

std::string to_string(GridValueKind kind) {
    switch (kind) {
        case GridValueKind::Probability: return "probability";
        case GridValueKind::Entropy: return "entropy";
        case GridValueKind::Count: return "count";
        case GridValueKind::Contribution: return "contribution";
    }
    throw InternalError("unhandled grid value kind");
}

GridValueKind grid_value_kind_from_string(const std::string& s) {
    if (s == "probability") return GridValueKind::Probability;
    if (s == "entropy") return GridValueKind::Entropy;
    if (s == "count") return GridValueKind::Count;
    if (s == "contribution") return GridValueKind::Contribution;
    throw InputError("unknown grid value kind '" + s + "'");
}

namespace {

void write_grid_header(const std::filesystem::path& path, const GridSpec& grid,
                       GridValueKind kind, const char* dtype) {
    json header;
    header["byte_order"] = "little";
    header["dtype"] = dtype;
    header["kind"] = to_string(kind);
    header["origin"] = vec3_to_json(grid.origin);
    header["resolution"] = grid.resolution;
    header["shape"] = json::array({grid.counts[0], grid.counts[1], grid.counts[2]});
    std::ofstream out = open_output(path.string() + ".json", std::ios::out);
    out << header.dump(2) << "\n";
}

void check_payload(const std::filesystem::path& path, std::size_t expected,
                   std::size_t actual) {
    if (expected != actual) {
        std::ostringstream os;
        os << path.string() << ": payload size mismatch: header implies " << expected
           << " bytes, file holds " << actual;
        throw InputError(os.str());
    }
}

}  // namespace

void write_grid(const std::filesystem::path& path, const GridSpec& grid,
                std::span<const double> values, GridValueKind kind) {
    if (kind == GridValueKind::Count) {
        throw InputError("count grids store uint32 payloads");
    }
    if (values.size() != grid.voxel_count()) {
        throw InputError("grid value count does not match the grid shape");
    }
    write_grid_header(path, grid, kind, "float64");
    std::ofstream out = open_output(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
}

void write_grid(const std::filesystem::path& path, const GridSpec& grid,
                std::span<const std::uint32_t> values) {
    if (values.size() != grid.voxel_count()) {
        throw InputError("grid value count does not match the grid shape");
    }
    write_grid_header(path, grid, GridValueKind::Count, "uint32");
    std::ofstream out = open_output(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(std::uint32_t)));
}

LoadedGrid read_grid(const std::filesystem::path& path) {
    std::ifstream header_in = open_input(path.string() + ".json", std::ios::in);
    json header;
    try {
        header = json::parse(header_in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ".json: invalid JSON: " + std::string(e.what()));
    }

    LoadedGrid loaded;
    loaded.kind = grid_value_kind_from_string(header.at("kind").get<std::string>());
    loaded.grid.origin = vec3_from_json(header.at("origin"), "grid header 'origin'");
    loaded.grid.resolution = header.at("resolution").get<double>();
    const auto& shape = header.at("shape");
    if (!shape.is_array() || shape.size() != 3) {
        throw InputError(path.string() + ".json: 'shape' must have three entries");
    }
    for (int a = 0; a < 3; ++a) {
        loaded.grid.counts[a] = shape[a].get<std::int32_t>();
        if (loaded.grid.counts[a] < 1) {
            throw InputError(path.string() + ".json: shape entries must be positive");
        }
    }
    const std::string dtype = header.at("dtype").get<std::string>();
    const std::size_t m = loaded.grid.voxel_count();

    std::ifstream in = open_input(path, std::ios::binary);
    in.seekg(0, std::ios::end);
    const std::size_t bytes = static_cast<std::size_t>(in.tellg());
    in.seekg(0, std::ios::beg);
    if (loaded.kind == GridValueKind::Count) {
        if (dtype != "uint32") {
            throw InputError(path.string() + ".json: count grids require dtype uint32");
        }
        check_payload(path, m * sizeof(std::uint32_t), bytes);
        loaded.counts.resize(m);
        in.read(reinterpret_cast<char*>(loaded.counts.data()),
                static_cast<std::streamsize>(bytes));
    } else {
        if (dtype != "float64") {
            throw InputError(path.string() + ".json: real grids require dtype float64");
        }
        check_payload(path, m * sizeof(double), bytes);
        loaded.reals.resize(m);
        in.read(reinterpret_cast<char*>(loaded.reals.data()),
                static_cast<std::streamsize>(bytes));
    }
    if (!in) {
        throw InputError(path.string() + ": short read");
    }
    return loaded;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') {
            cell.pop_back();
        }
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

}  // namespace

CsvTable parse_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path, std::ios::in);
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::vector<std::string> cells = split_csv_line(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw InputError(path.string() + ": line " + std::to_string(line_no) + ": expected " +
                             std::to_string(table.header.size()) + " cells, found " +
                             std::to_string(cells.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) {
        throw InputError(path.string() + ": missing CSV header row");
    }
    return table;
}

std::vector<double> csv_column(const CsvTable& table, const std::string& name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) {
        throw InputError("CSV has no column named '" + name + "'");
    }
    const std::size_t col = static_cast<std::size_t>(it - table.header.begin());
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string& cell = table.rows[r][col];
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != cell.size() || cell.empty()) {
            throw InputError("column '" + name + "', row " + std::to_string(r + 1) +
                             ": non-numeric cell '" + cell + "'");
        }
        values.push_back(v);
    }
    return values;
}

std::vector<double> z_sum(std::span<const double> values, const GridSpec& grid) {
    if (values.size() != grid.voxel_count()) {
        throw InputError("grid value count does not match the grid shape");
    }
    const std::size_t nx = static_cast<std::size_t>(grid.counts[0]);
    const std::size_t ny = static_cast<std::size_t>(grid.counts[1]);
    const std::size_t nz = static_cast<std::size_t>(grid.counts[2]);
    std::vector<double> cells(nx * ny, 0.0);
    for (std::size_t iz = 0; iz < nz; ++iz) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const std::size_t row = nx * (iy + ny * iz);
            for (std::size_t ix = 0; ix < nx; ++ix) {
                cells[iy * nx + ix] += values[row + ix];
            }
        }
    }
    return cells;
}

void write_egvs_result_json(const std::filesystem::path& path, const EgvsResult& result,
                            double eval_seconds) {
    json j;
    j["score"] = result.score;
    j["normalized"] = result.normalized;
    j["gamma"] = result.params.gamma;
    json placements = json::array();
    for (const Placement& p : result.placements) {
        placements.push_back(json::array({p.position.x, p.position.y, p.position.z}));
    }
    j["placements"] = std::move(placements);
    j["grid_shape"] =
        json::array({result.grid_counts[0], result.grid_counts[1], result.grid_counts[2]});
    j["eval_seconds"] = eval_seconds;
    std::ofstream out = open_output(path, std::ios::out);
    out << j.dump(2) << "\n";
}

void write_z_sum_heatmap(const std::filesystem::path& path, std::span<const double> values,
                         const GridSpec& grid) {
    const std::vector<double> cells = z_sum(values, grid);
    const std::size_t nx = static_cast<std::size_t>(grid.counts[0]);
    const std::size_t ny = static_cast<std::size_t>(grid.counts[1]);
    std::ofstream out = open_output(path, std::ios::out);
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            if (ix > 0) {
                out << ",";
            }
            out << format_double(cells[iy * nx + ix]);
        }
        out << "\n";
    }
}

}  // namespace egvs
