// Command-line front end: every subcommand reads its inputs, writes its
// artifacts into --out, and drops a manifest.json echoing the resolved
// configuration. Exit codes: 0 success, 2 input error, 70 internal error.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "egvs/errors.hpp"
#include "egvs/grid.hpp"
#include "egvs/io.hpp"
#include "egvs/lidar.hpp"
#include "egvs/metric.hpp"
#include "egvs/parallel.hpp"
#include "egvs/scene.hpp"
#include "egvs/search.hpp"
#include "egvs/synth.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace egvs;

// One registered option: its CLI11 handle plus hooks to read the same key
// from a config file and to echo the resolved value into the manifest.
struct OptionRecord {
    std::string key;
    CLI::Option* opt = nullptr;
    std::function<void(const json&)> from_config;
    std::function<json()> value;
    std::string source = "default";
};

// Flags override config-file values, which override defaults. resolve()
// applies that precedence after parsing and remembers each key's source.
class OptionSet {
public:
    explicit OptionSet(CLI::App* cmd) : cmd_(cmd) {
        cmd->add_option("--config", config_path_,
                        "JSON config file; explicit flags override its keys");
    }

    template <typename T>
    CLI::Option* add(const std::string& flag, T& target, const std::string& help) {
        CLI::Option* opt = cmd_->add_option(flag, target, help);
        OptionRecord rec;
        rec.key = key_of(flag);
        rec.opt = opt;
        rec.from_config = [&target](const json& j) { target = j.get<T>(); };
        rec.value = [&target]() { return json(target); };
        records_.push_back(std::move(rec));
        return opt;
    }

    CLI::Option* add_flag(const std::string& flag, bool& target, const std::string& help) {
        CLI::Option* opt = cmd_->add_flag(flag, target, help);
        OptionRecord rec;
        rec.key = key_of(flag);
        rec.opt = opt;
        rec.from_config = [&target](const json& j) { target = j.get<bool>(); };
        rec.value = [&target]() { return json(target); };
        records_.push_back(std::move(rec));
        return opt;
    }

    void resolve() {
        json config;
        if (!config_path_.empty()) {
            std::ifstream in(config_path_);
            if (!in) {
                throw InputError("cannot open " + config_path_.string());
            }
            try {
                config = json::parse(in);
            } catch (const json::parse_error& e) {
                throw InputError(config_path_.string() + ": invalid JSON: " +
                                 std::string(e.what()));
            }
            if (!config.is_object()) {
                throw InputError(config_path_.string() + ": config must be a JSON object");
            }
        }
        std::set<std::string> known;
        for (OptionRecord& rec : records_) {
            known.insert(rec.key);
            if (rec.opt->count() > 0) {
                rec.source = "flag";
                continue;
            }
            if (config.contains(rec.key)) {
                try {
                    rec.from_config(config.at(rec.key));
                } catch (const json::exception& e) {
                    throw InputError(config_path_.string() + ": key '" + rec.key +
                                     "': " + e.what());
                }
                rec.source = "config";
            }
        }
        for (const auto& [key, unused] : config.items()) {
            (void)unused;
            if (!known.contains(key)) {
                throw InputError(config_path_.string() + ": unknown key '" + key + "'");
            }
        }
    }

    json resolved_config() const {
        json out;
        for (const OptionRecord& rec : records_) {
            out[rec.key] = rec.value();
        }
        return out;
    }

    json sources() const {
        json out;
        for (const OptionRecord& rec : records_) {
            out[rec.key] = rec.source;
        }
        return out;
    }

private:
    static std::string key_of(std::string flag) {
        // "--x-range" -> "x_range"; multi-alias flags keep the first name.
        if (const auto comma = flag.find(','); comma != std::string::npos) {
            flag.erase(comma);
        }
        flag.erase(0, flag.find_first_not_of('-'));
        std::replace(flag.begin(), flag.end(), '-', '_');
        return flag;
    }

    CLI::App* cmd_;
    fs::path config_path_;
    std::vector<OptionRecord> records_;
};

fs::path prepare_out_dir(const std::string& out) {
    const fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw InputError("cannot create output directory " + dir.string() + ": " +
                         ec.message());
    }
    return dir;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const OptionSet& opts, const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["config"] = opts.resolved_config();
    m["sources"] = opts.sources();
    m["outputs"] = outputs;
    std::ofstream out(out_dir / "manifest.json");
    if (!out) {
        throw InputError("cannot write " + (out_dir / "manifest.json").string());
    }
    out << m.dump(2) << "\n";
}

// Shared flag bundles. Each subcommand composes the bundles it needs and
// registers them on its OptionSet so the manifest echoes everything.

struct RoiFlags {
    std::vector<double> center{0.0, 0.0, 2.5};
    std::vector<double> dims{50.0, 100.0, 5.0};
    double resolution = 0.5;

    void attach(OptionSet& opts) {
        opts.add("--roi-center", center, "ROI center (x y z), meters")->expected(3);
        opts.add("--roi-dims", dims, "ROI dimensions (w l h), meters")->expected(3);
        opts.add("--resolution", resolution, "voxel edge length, meters");
    }

    RoiSpec roi() const {
        return {{center[0], center[1], center[2]}, {dims[0], dims[1], dims[2]}, resolution};
    }
};

struct LidarFlags {
    std::string preset = "vlp32c";
    int scan_lines = 0;
    double hres_deg = 0.2;
    double vfov_min_deg = -25.0;
    double vfov_max_deg = 15.0;
    double max_range = 200.0;

    void attach(OptionSet& opts) {
        opts.add("--lidar", preset, "sensor preset name");
        opts.add("--scan-lines", scan_lines,
                 "build a uniform-elevation sensor with this many lines instead of the preset");
        opts.add("--hres-deg", hres_deg, "horizontal resolution, degrees");
        opts.add("--vfov-min-deg", vfov_min_deg, "uniform sensor: lowest elevation, degrees");
        opts.add("--vfov-max-deg", vfov_max_deg, "uniform sensor: highest elevation, degrees");
        opts.add("--max-range", max_range, "maximum beam range, meters");
    }

    LidarSpec lidar() const {
        if (scan_lines > 0) {
            return make_uniform_lidar(scan_lines, deg_to_rad(hres_deg),
                                      deg_to_rad(vfov_min_deg), deg_to_rad(vfov_max_deg),
                                      max_range);
        }
        if (preset == "vlp32c") {
            return make_vlp32c(deg_to_rad(hres_deg), max_range);
        }
        return lidar_preset(preset);
    }
};

struct PlacementFlags {
    double x = -30.0;
    double y = 0.0;
    double z = 3.0;

    void attach(OptionSet& opts) {
        opts.add("--x", x, "sensor x, meters");
        opts.add("--y", y, "sensor y, meters");
        opts.add("--z", z, "sensor height, meters");
    }

    Placement placement() const { return {{x, y, z}}; }
};

struct ScoreFlags {
    std::uint32_t gamma = 5;
    std::string miss_policy = "extend";

    void attach(OptionSet& opts) {
        opts.add("--gamma", gamma, "per-voxel cap on beam contributions");
        opts.add("--miss-policy", miss_policy, "missing returns: extend | drop")
            ->check(CLI::IsMember({"extend", "drop"}));
    }

    EgvsParams params() const { return {gamma}; }
    MissPolicy policy() const {
        return miss_policy == "drop" ? MissPolicy::Drop : MissPolicy::Extend;
    }
};

std::set<std::string> parse_classes(const std::string& spec) {
    if (spec == "all") {
        return {};
    }
    std::set<std::string> classes;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            classes.insert(item);
        }
    }
    return classes;
}

EntropyGrid load_entropy(const fs::path& path, int threads) {
    const LoadedGrid lg = read_grid(path);
    if (lg.kind == GridValueKind::Probability) {
        return entropy_grid(lg.grid, lg.reals, threads);
    }
    if (lg.kind == GridValueKind::Entropy) {
        return {lg.grid, lg.reals};
    }
    throw InputError(path.string() + ": expected a probability or entropy grid, got '" +
                     to_string(lg.kind) + "'");
}

std::vector<Placement> load_candidates(const fs::path& path) {
    const CsvTable table = parse_csv(path);
    const std::vector<double> xs = csv_column(table, "x");
    const std::vector<double> ys = csv_column(table, "y");
    const std::vector<double> zs = csv_column(table, "z");
    std::vector<Placement> candidates;
    candidates.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        candidates.push_back({{xs[i], ys[i], zs[i]}});
    }
    return candidates;
}

// --- subcommand registration -------------------------------------------------

void register_synth(CLI::App& app) {
    auto cmd = app.add_subcommand("synth", "Generate a seeded demo scenario: trajectory log "
                                           "plus an intersection scene");
    auto opts = std::make_shared<OptionSet>(cmd);
    auto out = std::make_shared<std::string>();
    auto flags = std::make_shared<SynthSpec>();
    auto with_wall = std::make_shared<bool>(false);

    cmd->add_option("--out", *out, "output directory")->required();
    opts->add("--seed", flags->seed, "scenario seed");
    opts->add("--frames", flags->frames, "frame count");
    opts->add("--dt", flags->dt, "frame interval, seconds");
    opts->add("--lanes-x", flags->lanes_x, "lanes running along x");
    opts->add("--lanes-y", flags->lanes_y, "crossing lanes running along y");
    opts->add("--lane-spacing", flags->lane_spacing, "distance between lanes, meters");
    opts->add("--vehicles-per-lane", flags->vehicles_per_lane, "vehicle flow per lane");
    opts->add("--speed-min", flags->speed_min, "slowest vehicle speed, m/s");
    opts->add("--speed-max", flags->speed_max, "fastest vehicle speed, m/s");
    opts->add("--span", flags->span, "lane length, meters");
    opts->add_flag("--with-wall", *with_wall, "add the occluding wall to the demo scene");

    cmd->callback([opts, out, flags, with_wall]() {
        opts->resolve();
        const fs::path dir = prepare_out_dir(*out);
        const std::vector<TrajectoryFrame> frames = make_demo_traffic(*flags);
        write_trajectory(dir / "trajectory.jsonl", frames);
        const std::vector<ScenePrimitive> prims = make_demo_scene(*with_wall);
        write_scene(dir / "scene.json", prims);
        write_manifest(dir, "synth", *opts, {"trajectory.jsonl", "scene.json"});
        std::cout << "frames: " << frames.size() << "\n"
                  << "vehicles per frame: " << frames.front().objects.size() << "\n"
                  << "scene primitives: " << prims.size() << "\n"
                  << "wrote " << (dir / "trajectory.jsonl").string() << ", "
                  << (dir / "scene.json").string() << "\n";
    });
}

void register_tpog(CLI::App& app) {
    auto cmd = app.add_subcommand("tpog", "Accumulate a trajectory log into a probabilistic "
                                          "occupancy grid");
    auto opts = std::make_shared<OptionSet>(cmd);
    auto out = std::make_shared<std::string>();
    auto trajectory = std::make_shared<std::string>();
    auto roi = std::make_shared<RoiFlags>();
    auto classes = std::make_shared<std::string>("vehicle,truck,bus");
    auto threads = std::make_shared<int>(0);

    cmd->add_option("--out", *out, "output directory")->required();
    opts->add("--trajectory", *trajectory, "line-delimited JSON trajectory log")->required();
    roi->attach(*opts);
    opts->add("--classes", *classes, "comma-separated classes to rasterize, or 'all'");
    opts->add("--threads", *threads, "worker threads (0 = EGVS_THREADS or hardware)");

    cmd->callback([opts, out, trajectory, roi, classes, threads]() {
        opts->resolve();
        const fs::path dir = prepare_out_dir(*out);
        const std::vector<TrajectoryFrame> frames = parse_trajectory(*trajectory);
        const GridSpec grid = discretize(roi->roi());
        const Tpog tpog = build_tpog(frames, grid, parse_classes(*classes), *threads);
        write_grid(dir / "tpog.bin", grid, tpog.prob, GridValueKind::Probability);
        write_z_sum_heatmap(dir / "tpog_heatmap.csv", tpog.prob, grid);
        write_manifest(dir, "tpog", *opts, {"tpog.bin", "tpog.bin.json", "tpog_heatmap.csv"});
        const std::size_t nonzero = static_cast<std::size_t>(
            std::count_if(tpog.prob.begin(), tpog.prob.end(), [](double p) { return p > 0; }));
        if (nonzero == 0) {
            std::cerr << "warning: no trajectory object overlaps the region of interest\n";
        }
        std::cout << "frames: " << tpog.frame_count << "\n"
                  << "nonzero voxels: " << nonzero << " / " << grid.voxel_count() << "\n";
    });
}

void register_entropy(CLI::App& app) {
    auto cmd = app.add_subcommand("entropy", "Map a probability grid to per-voxel binary "
                                             "entropy");
    auto opts = std::make_shared<OptionSet>(cmd);
    auto out = std::make_shared<std::string>();
    auto tpog_path = std::make_shared<std::string>();
    auto threads = std::make_shared<int>(0);

    cmd->add_option("--out", *out, "output directory")->required();
    opts->add("--tpog", *tpog_path, "probability grid file")->required();
    opts->add("--threads", *threads, "worker threads (0 = EGVS_THREADS or hardware)");

    cmd->callback([opts, out, tpog_path, threads]() {
        opts->resolve();
        const fs::path dir = prepare_out_dir(*out);
        const LoadedGrid lg = read_grid(*tpog_path);
        if (lg.kind != GridValueKind::Probability) {
            throw InputError(*tpog_path + ": expected a probability grid, got '" +
                             to_string(lg.kind) + "'");
        }
        const EntropyGrid entropy = entropy_grid(lg.grid, lg.reals, *threads);
        write_grid(dir / "entropy.bin", entropy.grid, entropy.entropy, GridValueKind::Entropy);
        write_z_sum_heatmap(dir / "entropy_heatmap.csv", entropy.entropy, entropy.grid);
        write_manifest(dir, "entropy", *opts,
                       {"entropy.bin", "entropy.bin.json", "entropy_heatmap.csv"});
        const double total = blocked_sum(
            entropy.entropy.size(), resolve_threads(*threads),
            [&](std::size_t i) { return entropy.entropy[i]; });
        std::cout << "total entropy: " << total << " bits over " << entropy.entropy.size()
                  << " voxels\n";
    });
}

void register_eval(CLI::App& app) {
    auto cmd = app.add_subcommand("eval", "Score one sensor placement against a scene and an "
                                          "occupancy or entropy grid");
    auto opts = std::make_shared<OptionSet>(cmd);
    auto out = std::make_shared<std::string>();
    auto scene_path = std::make_shared<std::string>();
    auto grid_path = std::make_shared<std::string>();
    auto placement = std::make_shared<PlacementFlags>();
    auto lidar = std::make_shared<LidarFlags>();
    auto score = std::make_shared<ScoreFlags>();
    auto threads = std::make_shared<int>(0);
    auto contrib = std::make_shared<bool>(false);
    auto emit_timing = std::make_shared<bool>(false);

    cmd->add_option("--out", *out, "output directory")->required();
    opts->add("--scene", *scene_path, "scene JSON file")->required();
    opts->add("--tpog", *grid_path, "probability or entropy grid file")->required();
    placement->attach(*opts);
    lidar->attach(*opts);
    score->attach(*opts);
    opts->add("--threads", *threads, "worker threads (0 = EGVS_THREADS or hardware)");
    opts->add_flag("--contrib", *contrib, "also write the per-voxel contribution grid");
    opts->add_flag("--emit-timing", *emit_timing,
                   "record wall time in result.json (off keeps outputs bit-stable)");

    cmd->callback([opts, out, scene_path, grid_path, placement, lidar, score, threads, contrib,
                   emit_timing]() {
        opts->resolve();
        const fs::path dir = prepare_out_dir(*out);
        auto [prims, meshes] = parse_scene(*scene_path);
        const Scene scene = Scene::build(std::move(prims), std::move(meshes));
        const EntropyGrid entropy = load_entropy(*grid_path, *threads);

        const auto t0 = std::chrono::steady_clock::now();
        const EgvsResult result =
            evaluate_placement(scene, entropy, lidar->lidar(), placement->placement(),
                               score->params(), score->policy(), *threads, *contrib);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        write_egvs_result_json(dir / "result.json", result, *emit_timing ? elapsed : 0.0);
        std::vector<std::string> outputs = {"result.json"};
        if (*contrib) {
            write_grid(dir / "contribution.bin", entropy.grid, *result.per_voxel_contribution,
                       GridValueKind::Contribution);
            outputs.push_back("contribution.bin");
            outputs.push_back("contribution.bin.json");
        }
        write_manifest(dir, "eval", *opts, outputs);
        std::cout << "EGVS: " << result.score << "\n"
                  << "normalized: " << result.normalized << "\n"
                  << "elapsed: " << elapsed << " s\n";
    });
}

void register_sweep(CLI::App& app) {
    auto cmd = app.add_subcommand("sweep", "Rank every placement on a lattice of candidate "
                                           "positions");
    auto opts = std::make_shared<OptionSet>(cmd);
    auto out = std::make_shared<std::string>();
    auto scene_path = std::make_shared<std::string>();
    auto grid_path = std::make_shared<std::string>();
    auto x_range = std::make_shared<std::vector<double>>(std::vector<double>{-30.0, -30.0, 1.0});
    auto y_range = std::make_shared<std::vector<double>>(std::vector<double>{0.0, 0.0, 1.0});
    auto z_range = std::make_shared<std::vector<double>>(std::vector<double>{3.0, 3.0, 1.0});
    auto budget = std::make_shared<std::size_t>(100000);
    auto lidar = std::make_shared<LidarFlags>();
    auto score = std::make_shared<ScoreFlags>();
    auto threads = std::make_shared<int>(0);
    auto emit_timing = std::make_shared<bool>(false);

    cmd->add_option("--out", *out, "output directory")->required();
    opts->add("--scene", *scene_path, "scene JSON file")->required();
    opts->add("--tpog", *grid_path, "probability or entropy grid file")->required();
    opts->add("--x-range", *x_range, "x lattice: min max step")->expected(3);
    opts->add("--y-range", *y_range, "y lattice: min max step")->expected(3);
    opts->add("--z-range", *z_range, "z lattice: min max step")->expected(3);
    opts->add("--budget", *budget, "largest allowed candidate count");
    lidar->attach(*opts);
    score->attach(*opts);
    opts->add("--threads", *threads, "worker threads (0 = EGVS_THREADS or hardware)");
    opts->add_flag("--emit-timing", *emit_timing,
                   "record per-candidate wall time (off keeps outputs bit-stable)");

    cmd->callback([opts, out, scene_path, grid_path, x_range, y_range, z_range, budget, lidar,
                   score, threads, emit_timing]() {
        opts->resolve();
        const fs::path dir = prepare_out_dir(*out);
        auto [prims, meshes] = parse_scene(*scene_path);
        const Scene scene = Scene::build(std::move(prims), std::move(meshes));
        const EntropyGrid entropy = load_entropy(*grid_path, *threads);

        SweepSpec spec;
        spec.x = {(*x_range)[0], (*x_range)[1], (*x_range)[2]};
        spec.y = {(*y_range)[0], (*y_range)[1], (*y_range)[2]};
        spec.z = {(*z_range)[0], (*z_range)[1], (*z_range)[2]};
        spec.budget = *budget;

        const RankingTable table = sweep(spec, scene, entropy, lidar->lidar(), score->params(),
                                         score->policy(), *threads, *emit_timing);
        write_ranking_csv(dir / "ranking.csv", table);
        write_ranking_json(dir / "ranking.json", table);
        write_manifest(dir, "sweep", *opts, {"ranking.csv", "ranking.json"});
        const RankingRow& top = table.rows.front();
        std::cout << "candidates: " << table.rows.size() << "\n"
                  << "best: (" << top.placement.position.x << ", " << top.placement.position.y
                  << ", " << top.placement.position.z << ") score " << top.score << "\n";
    });
}

void register_greedy(CLI::App& app) {
    auto cmd = app.add_subcommand("greedy", "Pick k placements by marginal combined-score "
                                            "gain");
    auto opts = std::make_shared<OptionSet>(cmd);
    auto out = std::make_shared<std::string>();
    auto scene_path = std::make_shared<std::string>();
    auto grid_path = std::make_shared<std::string>();
    auto candidates_path = std::make_shared<std::string>();
    auto k = std::make_shared<std::size_t>(1);
    auto lidar = std::make_shared<LidarFlags>();
    auto score = std::make_shared<ScoreFlags>();
    auto threads = std::make_shared<int>(0);

    cmd->add_option("--out", *out, "output directory")->required();
    opts->add("--scene", *scene_path, "scene JSON file")->required();
    opts->add("--tpog", *grid_path, "probability or entropy grid file")->required();
    opts->add("--candidates", *candidates_path, "CSV of candidate positions (x,y,z header)")
        ->required();
    opts->add("--k", *k, "number of sensors to place");
    lidar->attach(*opts);
    score->attach(*opts);
    opts->add("--threads", *threads, "worker threads (0 = EGVS_THREADS or hardware)");

    cmd->callback([opts, out, scene_path, grid_path, candidates_path, k, lidar, score,
                   threads]() {
        opts->resolve();
        const fs::path dir = prepare_out_dir(*out);
        auto [prims, meshes] = parse_scene(*scene_path);
        const Scene scene = Scene::build(std::move(prims), std::move(meshes));
        const EntropyGrid entropy = load_entropy(*grid_path, *threads);
        const std::vector<Placement> candidates = load_candidates(*candidates_path);

        const GreedyResult result = greedy_multi(*k, candidates, scene, entropy,
                                                 lidar->lidar(), score->params(),
                                                 score->policy(), *threads);

        json j;
        json selected = json::array();
        for (const Placement& p : result.selected) {
            selected.push_back(json::array({p.position.x, p.position.y, p.position.z}));
        }
        j["selected"] = std::move(selected);
        json steps = json::array();
        for (const GreedyStep& step : result.steps) {
            json s;
            s["candidate_index"] = step.candidate_index;
            s["placement"] = json::array({step.placement.position.x, step.placement.position.y,
                                          step.placement.position.z});
            s["marginal_gain"] = step.marginal_gain;
            s["combined_score"] = step.combined_score;
            steps.push_back(std::move(s));
        }
        j["steps"] = std::move(steps);
        j["combined_score"] = result.combined_score;
        j["normalized"] = result.normalized;
        std::ofstream greedy_out(dir / "greedy.json");
        if (!greedy_out) {
            throw InputError("cannot write " + (dir / "greedy.json").string());
        }
        greedy_out << j.dump(2) << "\n";

        write_manifest(dir, "greedy", *opts, {"greedy.json"});
        std::cout << "selected " << result.selected.size() << " of " << candidates.size()
                  << " candidates, combined score " << result.combined_score << "\n";
        for (const GreedyStep& step : result.steps) {
            std::cout << "  step " << (&step - result.steps.data()) + 1 << ": candidate "
                      << step.candidate_index << " gain " << step.marginal_gain << "\n";
        }
    });
}

void register_correlate(CLI::App& app) {
    auto cmd = app.add_subcommand("correlate", "Rank correlation between two CSV columns");
    auto opts = std::make_shared<OptionSet>(cmd);
    auto out = std::make_shared<std::string>();
    auto table_path = std::make_shared<std::string>();
    auto score_col = std::make_shared<std::string>("EGVS");
    auto ref_col = std::make_shared<std::string>("AP(Combined)");

    cmd->add_option("--out", *out, "output directory")->required();
    opts->add("--table", *table_path, "CSV with a header row")->required();
    opts->add("--score-col", *score_col, "score column name");
    opts->add("--ref-col", *ref_col, "reference column name");

    cmd->callback([opts, out, table_path, score_col, ref_col]() {
        opts->resolve();
        const fs::path dir = prepare_out_dir(*out);
        const CsvTable table = parse_csv(*table_path);
        const std::vector<double> scores = csv_column(table, *score_col);
        const std::vector<double> refs = csv_column(table, *ref_col);
        const Correlation corr = rank_correlation(scores, refs);
        write_correlation_json(dir / "correlation.json", corr);
        write_manifest(dir, "correlate", *opts, {"correlation.json"});
        std::cout << "n: " << corr.n << "\n"
                  << "spearman: " << corr.spearman << "\n"
                  << "pearson: " << corr.pearson << "\n";
    });
}

void register_heatmap(CLI::App& app) {
    auto cmd = app.add_subcommand("heatmap", "Sum a grid through z and write the 2D CSV");
    auto opts = std::make_shared<OptionSet>(cmd);
    auto out = std::make_shared<std::string>();
    auto grid_path = std::make_shared<std::string>();

    cmd->add_option("--out", *out, "output directory")->required();
    opts->add("--grid", *grid_path, "grid file of any kind")->required();

    cmd->callback([opts, out, grid_path]() {
        opts->resolve();
        const fs::path dir = prepare_out_dir(*out);
        const LoadedGrid lg = read_grid(*grid_path);
        std::vector<double> values;
        if (lg.kind == GridValueKind::Count) {
            values.assign(lg.counts.begin(), lg.counts.end());
        } else {
            values = lg.reals;
        }
        write_z_sum_heatmap(dir / "heatmap.csv", values, lg.grid);
        write_manifest(dir, "heatmap", *opts, {"heatmap.csv"});
        std::cout << "heatmap: " << lg.grid.counts[1] << " rows x " << lg.grid.counts[0]
                  << " columns\n";
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roadside LiDAR placement evaluation: entropy-weighted beam coverage over a "
                 "voxelized region of interest"};
    app.require_subcommand(1);

    register_synth(app);
    register_tpog(app);
    register_entropy(app);
    register_eval(app);
    register_sweep(app);
    register_greedy(app);
    register_correlate(app);
    register_heatmap(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const egvs::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const egvs::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return 0;
}
