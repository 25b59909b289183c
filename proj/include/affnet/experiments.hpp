#ifndef AFFNET_EXPERIMENTS_HPP
#define AFFNET_EXPERIMENTS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "affnet/dynamics.hpp"
#include "affnet/metrics.hpp"
#include "affnet/params.hpp"

namespace affnet {

// One full run: per-step metric rows plus the final row. With steps == 0 the
// final row describes the initial state and the series is empty.
struct RunSummary {
    Params params;
    std::uint64_t seed = 0;
    std::vector<MetricsRow> time_series;
    MetricsRow final_row;
};

// Runs the whole horizon. `on_step` (optional) observes the network and the
// step's events after every step, before metrics are recorded.
RunSummary run_simulation(const Params& p, std::uint64_t seed,
                          const std::function<void(const Network&, const StepEvents&)>& on_step = {});

// Deterministic per-replication seed for experiment cell `cell`, replication
// `rep`, so tables are reproducible without storing seed lists.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t rep);

struct Aggregate {
    double mean = 0.0;
    double std = 0.0; // population standard deviation across replications
};

struct FinalAggregates {
    Aggregate density;
    Aggregate mean_net_size;
    Aggregate clustering;
    Aggregate mean_affinity;
    Aggregate std_affinity;
};

struct ReplicationSet {
    std::vector<RunSummary> runs; // in seed order
    FinalAggregates aggregates;
};

// One full simulation per seed; replications run in parallel but are
// aggregated in seed order, so results do not depend on scheduling.
ReplicationSet run_replications(const Params& p, const std::vector<std::uint64_t>& seeds);

// Parameter fields experiments may override, by config key.
bool is_sweepable_param(const std::string& name);
// Applies `value` to the named field; throws std::invalid_argument for an
// unknown field, a non-integral value on an integer field, or a value that
// violates the field's range.
Params with_param_value(const Params& base, const std::string& name, double value);
double param_value(const Params& p, const std::string& name);

struct SweepPoint {
    double value;
    int reps;
    Aggregate clustering;
    Aggregate std_affinity;
    Aggregate density;
};

struct SweepResult {
    std::string param;
    std::vector<SweepPoint> points;
};

// Runs `reps` replications of `base` with the named field set to each value.
// Every value is validated before any simulation starts.
SweepResult sweep(const Params& base, const std::string& param, const std::vector<double>& values,
                  int reps, std::uint64_t master_seed);

// Relative output change over relative parameter change. Undefined (nullopt)
// when the baseline output, the baseline parameter, or the parameter change
// is zero.
std::optional<double> sensitivity_coefficient(double base_out, double new_out, double base_param,
                                              double new_param);

// Integer perturbation: nearest integer to value*(1+delta); an exact .5 tie
// resolves away from the baseline so the perturbation stays a perturbation.
long perturb_integer(long value, double delta);

struct SensitivityCell {
    std::string param;
    double delta = 0.0;
    double value = 0.0; // effective parameter value after any rounding
    enum class Status { Ok, NoChange, Invalid } status = Status::Ok;
    double clustering_mean = 0.0;
    double std_affinity_mean = 0.0;
    std::optional<double> clustering_s;
    std::optional<double> std_affinity_s;
};

struct SensitivityReport {
    int baseline_reps = 0;
    int cell_reps = 0;
    double baseline_clustering = 0.0;
    double baseline_std_affinity = 0.0;
    std::vector<SensitivityCell> cells;
};

// Perturbs every model parameter by each nonzero delta and reports the
// sensitivity of final clustering and affinity spread against a shared
// baseline. Cells whose perturbed value is illegal are marked Invalid; cells
// where integer rounding lands back on the baseline are marked NoChange.
SensitivityReport sensitivity_suite(const Params& base, const std::vector<double>& deltas,
                                    int cell_reps, int baseline_reps, std::uint64_t master_seed);

// Checks the invariants every step must restore; throws std::logic_error.
void check_step_invariants(const Network& net, const Params& p);

struct ScenarioOutcome {
    std::string name;
    bool has_assertion = false;
    bool passed = true;
    std::string detail;
    FinalAggregates aggregates;
};

struct BatteryReport {
    std::vector<ScenarioOutcome> scenarios;
    bool all_passed() const;
};

// The extreme-value scenario battery: zero and full affinity radius, frozen
// affinities, maximum personal network, zero distortion, and combinations,
// each run for the full horizon with invariants audited every step.
BatteryReport run_verification_battery(const Params& base, int reps, std::uint64_t master_seed);

} // namespace affnet

#endif
