#include "egvs/metric.hpp"

#include <algorithm>
#include <sstream>

#include "egvs/errors.hpp"
#include "egvs/parallel.hpp"

namespace egvs {

namespace {

void check_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!a.same_shape(b)) {
        std::ostringstream os;
        os << "entropy grid and hit-count grid disagree: " << a.shape_string() << " vs "
           << b.shape_string();
        throw InputError(os.str());
    }
}

// Grids can arrive from files or bindings, so payload lengths are not a
// given; indexing past a short payload would read out of bounds.
void check_payload(std::size_t values, const GridSpec& grid, const char* label) {
    if (values != grid.voxel_count()) {
        std::ostringstream os;
        os << label << " holds " << values << " values for a " << grid.shape_string()
           << " grid";
        throw InputError(os.str());
    }
}

EgvsResult reduce(const EntropyGrid& entropy, const std::function<std::uint64_t(std::size_t)>& count_of,
                  EgvsParams params, bool materialize, int threads) {
    params.validate();
    const std::size_t m = entropy.entropy.size();
    const double gamma = static_cast<double>(params.gamma);
    const unsigned workers = resolve_threads(threads);

    EgvsResult result;
    result.params = params;
    result.grid_counts = entropy.grid.counts;

    const auto contribution = [&](std::size_t i) {
        const std::uint64_t c = count_of(i);
        const double capped =
            c >= params.gamma ? gamma : static_cast<double>(c);
        return entropy.entropy[i] * capped;
    };

    result.score = blocked_sum(m, workers, contribution);
    const double entropy_total =
        blocked_sum(m, workers, [&](std::size_t i) { return entropy.entropy[i]; });
    result.normalized = entropy_total > 0.0 ? result.score / (entropy_total * gamma) : 0.0;

    if (materialize) {
        std::vector<double> contrib(m);
        parallel_for(m, workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                contrib[i] = contribution(i);
            }
        });
        result.per_voxel_contribution = std::move(contrib);
    }
    return result;
}

}  // namespace

void EgvsParams::validate() const {
    if (gamma < 1) {
        throw InputError("gamma must be at least 1");
    }
}

EgvsResult egvs(const EntropyGrid& entropy, const HitCountGrid& hits, EgvsParams params,
                bool materialize_contributions, int threads) {
    check_same_grid(entropy.grid, hits.grid);
    check_payload(entropy.entropy.size(), entropy.grid, "entropy grid");
    check_payload(hits.counts.size(), hits.grid, "hit-count grid");
    return reduce(
        entropy, [&](std::size_t i) { return static_cast<std::uint64_t>(hits.counts[i]); },
        params, materialize_contributions, threads);
}

EgvsResult egvs_multi(const EntropyGrid& entropy, std::span<const HitCountGrid> hit_grids,
                      EgvsParams params, bool materialize_contributions, int threads) {
    check_payload(entropy.entropy.size(), entropy.grid, "entropy grid");
    for (const auto& hits : hit_grids) {
        check_same_grid(entropy.grid, hits.grid);
        check_payload(hits.counts.size(), hits.grid, "hit-count grid");
    }
    return reduce(
        entropy,
        [&](std::size_t i) {
            std::uint64_t total = 0;
            for (const auto& hits : hit_grids) {
                total += hits.counts[i];
            }
            return total;
        },
        params, materialize_contributions, threads);
}

EgvsResult egvs_multi(const EntropyGrid& entropy,
                      std::span<const HitCountGrid* const> hit_grids, EgvsParams params,
                      bool materialize_contributions, int threads) {
    check_payload(entropy.entropy.size(), entropy.grid, "entropy grid");
    for (const auto* hits : hit_grids) {
        check_same_grid(entropy.grid, hits->grid);
        check_payload(hits->counts.size(), hits->grid, "hit-count grid");
    }
    return reduce(
        entropy,
        [&](std::size_t i) {
            std::uint64_t total = 0;
            for (const auto* hits : hit_grids) {
                total += hits->counts[i];
            }
            return total;
        },
        params, materialize_contributions, threads);
}

EgvsResult evaluate_placement(const Scene& scene, const EntropyGrid& entropy,
                              const LidarSpec& spec, const Placement& placement,
                              const RoiSpec& roi, EgvsParams params, MissPolicy policy,
                              int threads, bool materialize_contributions) {
    const GridSpec roi_grid = discretize(roi);
    if (!roi_grid.same_shape(entropy.grid)) {
        std::ostringstream os;
        os << "entropy grid does not match the discretized ROI: " << entropy.grid.shape_string()
           << " vs " << roi_grid.shape_string();
        throw InputError(os.str());
    }
    const BeamSet beams = empty_frame_segments(scene, placement, spec, roi, policy, threads);
    const HitCountGrid hits = hit_counts(beams, entropy.grid, threads);
    EgvsResult result = egvs(entropy, hits, params, materialize_contributions, threads);
    result.placements = {placement};
    return result;
}

EgvsResult evaluate_placement(const Scene& scene, const EntropyGrid& entropy,
                              const LidarSpec& spec, const Placement& placement,
                              EgvsParams params, MissPolicy policy, int threads,
                              bool materialize_contributions) {
    const BeamSet beams =
        empty_frame_segments(scene, placement, spec, entropy.grid.box(), policy, threads);
    const HitCountGrid hits = hit_counts(beams, entropy.grid, threads);
    EgvsResult result = egvs(entropy, hits, params, materialize_contributions, threads);
    result.placements = {placement};
    return result;
}

}  // namespace egvs
