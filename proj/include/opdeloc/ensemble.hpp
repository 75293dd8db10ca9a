#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opdeloc/battery.hpp"
#include "opdeloc/couplings.hpp"
#include "opdeloc/krylov.hpp"
#include "opdeloc/netgen.hpp"

namespace opdeloc {

// Independent stream for realization r of a run seeded with `master_seed`.
// Depends only on the pair, so adding realizations never perturbs earlier ones.
Rng realization_stream(std::uint64_t master_seed, std::uint64_t index);

struct EnsembleStats {
    std::vector<double> mean;
    std::vector<double> stderr_;  // sample std / sqrt(N); 0 when N = 1
    int realizations = 0;         // successful ones
    int failures = 0;
    // Per-realization rows in index order, kept for resampling estimates.
    std::vector<std::vector<double>> rows;
};

// Parallel map over realizations followed by an index-ordered fold. Each call
// of `observable` owns its stream and must return rows of a fixed length.
// Exceptions count as failures; more than 1% of them aborts the run.
using Observable = std::function<std::vector<double>(int index, Rng& rng)>;
EnsembleStats run_realizations(int realizations, std::uint64_t master_seed, const Observable& observable,
                               int threads = 0, bool keep_rows = false);

struct GraphFamily {
    enum class Kind { complete, star, ring, watts_strogatz };
    Kind kind = Kind::complete;
    WattsStrogatzParams ws;

    // "full", "star", "ring", "ws(k=1,p=0.1)"
    std::string label() const;
    bool random() const { return kind == Kind::watts_strogatz; }
    Graph draw(int num_modes, Rng& rng) const;
};

enum class TaskKind { ck_curve, ratio, battery };

struct EnsembleSpec {
    int realizations = 1000;
    std::uint64_t master_seed = 0;
    GraphFamily family;
    int num_modes = 8;
    TaskKind task = TaskKind::ck_curve;
    std::vector<double> times = time_grid(10.0, 0.05);

    // ck_curve: initial string on the first `size` modes.
    int size = 1;
    // ratio: size-1 against size-L/2 strings, window [t_lo, t_hi].
    double t_lo = 0.5;
    double t_hi = 2.0;
    // battery
    Axis axis = Axis::x;
    AutocorrelationPath path = AutocorrelationPath::free_determinant;

    std::optional<double> variance;
    CouplingDistribution distribution = CouplingDistribution::gaussian;
    int max_krylov_dim = 0;  // 0: choose from the time horizon
    int threads = 0;
};

// One realization's quench: graph (redrawn only for random families), couplings,
// rescaled to unit bandwidth.
CouplingMatrix draw_quench(const EnsembleSpec& spec, Rng& rng, const Graph* fixed_graph = nullptr);

struct CurveResult {
    std::vector<double> times;
    std::vector<double> mean;
    std::vector<double> stderr_;
    int realizations = 0;
};

struct RatioEstimate {
    RatioResult ratio;  // from the ensemble-mean curves
    double stderr_ = 0.0;  // delete-a-block jackknife
    CurveResult small;
    CurveResult large;
};

struct BatteryEstimate {
    CurveResult phi0;
    CurveResult power;
    double p_max = 0.0;
    double t_star = 0.0;
    double p_max_stderr = 0.0;  // stderr of the mean power at the grid argmax
};

CurveResult run_ck_curve(const EnsembleSpec& spec);
RatioEstimate run_ratio(const EnsembleSpec& spec);
BatteryEstimate run_battery(const EnsembleSpec& spec);

}  // namespace opdeloc
