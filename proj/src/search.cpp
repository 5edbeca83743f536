#include "egvs/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "egvs/errors.hpp"
#include "egvs/parallel.hpp"

namespace egvs {

namespace {

using nlohmann::json;

// Slack for counting lattice points: (max - min) / step may land a hair under
// an integer when the range is an exact multiple of the step.
constexpr double kCountSlack = 1e-9;

std::size_t axis_count(const AxisRange& r) {
    return static_cast<std::size_t>(std::floor((r.max - r.min) / r.step + 1.0 + kCountSlack));
}

void validate_axis(const AxisRange& r, const char* name) {
    if (!(r.step > 0)) {
        throw InputError(std::string(name) + " step must be positive");
    }
    if (!(r.min <= r.max)) {
        throw InputError(std::string(name) + " range must satisfy min <= max");
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    return out;
}

bool ranking_before(const RankingRow& a, const RankingRow& b) {
    if (a.score != b.score) {
        return a.score > b.score;
    }
    return placement_less(a.placement, b.placement);
}

json placement_json(const Placement& p) {
    return json::array({p.position.x, p.position.y, p.position.z});
}

}  // namespace

void SweepSpec::validate() const {
    validate_axis(x, "x");
    validate_axis(y, "y");
    validate_axis(z, "z");
    const std::size_t count = candidate_count();
    if (count > budget) {
        std::ostringstream os;
        os << "sweep would evaluate " << count << " candidates, over the budget of " << budget;
        throw InputError(os.str());
    }
}

std::array<std::size_t, 3> SweepSpec::axis_counts() const {
    return {axis_count(x), axis_count(y), axis_count(z)};
}

std::size_t SweepSpec::candidate_count() const {
    const auto counts = axis_counts();
    return counts[0] * counts[1] * counts[2];
}

Placement SweepSpec::candidate(std::size_t i) const {
    const auto counts = axis_counts();
    const std::size_t ix = i % counts[0];
    const std::size_t iy = (i / counts[0]) % counts[1];
    const std::size_t iz = i / (counts[0] * counts[1]);
    return {{x.min + static_cast<double>(ix) * x.step,
             y.min + static_cast<double>(iy) * y.step,
             z.min + static_cast<double>(iz) * z.step}};
}

RankingTable sweep(const SweepSpec& spec, const Scene& scene, const EntropyGrid& entropy,
                   const LidarSpec& lidar, EgvsParams params, MissPolicy policy, int threads,
                   bool record_timing) {
    spec.validate();
    const std::size_t count = spec.candidate_count();
    RankingTable table;
    table.rows.resize(count);
    const unsigned workers = resolve_threads(threads);
    // One worker per candidate range; each evaluation runs single-threaded so
    // candidate scores never depend on the outer parallelism.
    parallel_for(count, workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Placement placement = spec.candidate(i);
            const auto start = std::chrono::steady_clock::now();
            const EgvsResult result =
                evaluate_placement(scene, entropy, lidar, placement, params, policy, 1);
            RankingRow& row = table.rows[i];
            row.placement = placement;
            row.score = result.score;
            row.normalized = result.normalized;
            if (record_timing) {
                row.eval_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
            }
        }
    });
    std::sort(table.rows.begin(), table.rows.end(), ranking_before);
    return table;
}

RefineResult refine(const Placement& start, const Box3& bounds,
                    const std::function<double(const Placement&)>& evaluator,
                    double initial_step, double tolerance) {
    if (!(initial_step > 0) || !(tolerance > 0)) {
        throw InputError("refine requires positive initial step and tolerance");
    }
    if (!bounds.contains(start.position, 0.0)) {
        throw InputError("start placement lies outside the search bounds");
    }

    const auto clamp_to_bounds = [&bounds](Vec3 p) {
        return max(bounds.min, min(bounds.max, p));
    };

    RefineResult result;
    result.placement = start;
    result.score = evaluator(start);
    result.evaluations = 1;

    double step = initial_step;
    while (step >= tolerance) {
        bool improved = false;
        Placement best = result.placement;
        double best_score = result.score;
        for (int axis = 0; axis < 3; ++axis) {
            for (const double sign : {1.0, -1.0}) {
                Vec3 probe = result.placement.position;
                probe[axis] += sign * step;
                probe = clamp_to_bounds(probe);
                if (probe == result.placement.position) {
                    continue;
                }
                const Placement candidate{probe};
                const double score = evaluator(candidate);
                ++result.evaluations;
                if (score > best_score ||
                    (improved && score == best_score && placement_less(candidate, best))) {
                    best = candidate;
                    best_score = score;
                    improved = true;
                }
            }
        }
        if (improved) {
            result.placement = best;
            result.score = best_score;
        } else {
            step *= 0.5;
        }
    }
    return result;
}

GreedyResult greedy_multi(std::size_t k, std::span<const Placement> candidates,
                          const Scene& scene, const EntropyGrid& entropy,
                          const LidarSpec& lidar, EgvsParams params, MissPolicy policy,
                          int threads) {
    if (candidates.empty()) {
        throw InputError("greedy selection requires at least one candidate");
    }
    if (k < 1 || k > candidates.size()) {
        std::ostringstream os;
        os << "k must lie in [1, " << candidates.size() << "], got " << k;
        throw InputError(os.str());
    }
    params.validate();

    const unsigned workers = resolve_threads(threads);
    std::vector<HitCountGrid> hit_grids(candidates.size());
    parallel_for(candidates.size(), workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const BeamSet beams =
                empty_frame_segments(scene, candidates[i], lidar, entropy.grid.box(), policy, 1);
            hit_grids[i] = hit_counts(beams, entropy.grid, 1);
        }
    });

    GreedyResult result;
    std::vector<const HitCountGrid*> selected_grids;
    std::vector<bool> taken(candidates.size(), false);
    double current_score = 0.0;

    for (std::size_t step = 0; step < k; ++step) {
        std::vector<double> gains(candidates.size(),
                                  -std::numeric_limits<double>::infinity());
        parallel_for(candidates.size(), workers, [&](std::size_t lo, std::size_t hi) {
            std::vector<const HitCountGrid*> trial = selected_grids;
            trial.push_back(nullptr);
            for (std::size_t i = lo; i < hi; ++i) {
                if (taken[i]) {
                    continue;
                }
                trial.back() = &hit_grids[i];
                const EgvsResult combined = egvs_multi(entropy, trial, params, false, 1);
                gains[i] = combined.score - current_score;
            }
        });

        std::size_t best = candidates.size();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (taken[i]) {
                continue;
            }
            if (best == candidates.size() || gains[i] > gains[best] ||
                (gains[i] == gains[best] && placement_less(candidates[i], candidates[best]))) {
                best = i;
            }
        }

        taken[best] = true;
        selected_grids.push_back(&hit_grids[best]);
        current_score += gains[best];
        result.selected.push_back(candidates[best]);
        result.steps.push_back({best, candidates[best], gains[best], current_score});
    }

    const EgvsResult combined = egvs_multi(entropy, selected_grids, params, false, threads);
    result.combined_score = combined.score;
    result.normalized = combined.normalized;
    return result;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] != values[b] ? values[a] < values[b] : a < b;
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        // Positions i..j (0-based) share the average 1-based rank.
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t p = i; p <= j; ++p) {
            ranks[order[p]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

namespace {

double pearson_of(std::span<const double> xs, std::span<const double> ys,
                  const char* x_name, const char* y_name) {
    const double n = static_cast<double>(xs.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw InputError(std::string(x_name) + " column has zero variance");
    }
    if (syy == 0.0) {
        throw InputError(std::string(y_name) + " column has zero variance");
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

Correlation rank_correlation(std::span<const double> scores,
                             std::span<const double> references) {
    if (scores.size() != references.size()) {
        std::ostringstream os;
        os << "scores and references must have equal length (" << scores.size() << " vs "
           << references.size() << ")";
        throw InputError(os.str());
    }
    if (scores.size() < 3) {
        throw InputError("correlation requires at least 3 pairs");
    }
    Correlation corr;
    corr.n = scores.size();
    corr.pearson = pearson_of(scores, references, "scores", "references");
    const std::vector<double> score_ranks = average_ranks(scores);
    const std::vector<double> reference_ranks = average_ranks(references);
    corr.spearman = pearson_of(score_ranks, reference_ranks, "scores", "references");
    return corr;
}

void write_ranking_csv(const std::filesystem::path& path, const RankingTable& table) {
    std::ofstream out = open_output(path);
    out << "x,y,z,score,normalized,eval_seconds\n";
    for (const RankingRow& row : table.rows) {
        out << format_double(row.placement.position.x) << ","
            << format_double(row.placement.position.y) << ","
            << format_double(row.placement.position.z) << "," << format_double(row.score)
            << "," << format_double(row.normalized) << "," << format_double(row.eval_seconds)
            << "\n";
    }
}

void write_ranking_json(const std::filesystem::path& path, const RankingTable& table) {
    json rows = json::array();
    for (const RankingRow& row : table.rows) {
        json r;
        r["placement"] = placement_json(row.placement);
        r["score"] = row.score;
        r["normalized"] = row.normalized;
        r["eval_seconds"] = row.eval_seconds;
        rows.push_back(std::move(r));
    }
    json j;
    j["rows"] = std::move(rows);
    std::ofstream out = open_output(path);
    out << j.dump(2) << "\n";
}

void write_correlation_json(const std::filesystem::path& path, const Correlation& corr) {
    json j;
    j["n"] = corr.n;
    j["pearson"] = corr.pearson;
    j["spearman"] = corr.spearman;
    std::ofstream out = open_output(path);
    out << j.dump(2) << "\n";
}

}  // namespace egvs
