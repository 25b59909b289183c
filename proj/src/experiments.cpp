#include "affnet/experiments.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace affnet {

namespace {

constexpr double kUniformStd = 0.28867513459481287; // sqrt(1/12)

// Runs fn(0..count-1) across a small thread pool. Results must be written to
// per-index slots; the first failing index's exception is rethrown after all
// workers finish, so outcomes never depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0)
        return;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto nthreads = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& err : errors)
        if (err)
            std::rethrow_exception(err);
}

Aggregate aggregate(const std::vector<double>& xs) {
    Aggregate a;
    if (xs.empty())
        return a;
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    a.mean = sum / static_cast<double>(xs.size());
    double sq = 0.0;
    for (double x : xs) {
        const double d = x - a.mean;
        sq += d * d;
    }
    a.std = std::sqrt(sq / static_cast<double>(xs.size()));
    return a;
}

FinalAggregates aggregate_finals(const std::vector<const MetricsRow*>& rows) {
    std::vector<double> density, net_size, clustering, mean_aff, std_aff;
    for (const MetricsRow* r : rows) {
        density.push_back(r->density);
        net_size.push_back(r->mean_net_size);
        clustering.push_back(r->clustering);
        mean_aff.push_back(r->mean_affinity);
        std_aff.push_back(r->std_affinity);
    }
    return {aggregate(density), aggregate(net_size), aggregate(clustering), aggregate(mean_aff),
            aggregate(std_aff)};
}

RunSummary run_with_setup(const Params& p, std::uint64_t seed,
                          const std::function<void(Network&)>& setup,
                          const std::function<void(const Network&, const StepEvents&)>& on_step) {
    Simulation sim(p, seed);
    if (setup)
        setup(sim.network_mutable());
    RunSummary summary{p, seed, {}, {}};
    summary.time_series.reserve(static_cast<std::size_t>(p.steps));
    for (long s = 0; s < p.steps; ++s) {
        const StepEvents events = sim.step();
        if (on_step)
            on_step(sim.network(), events);
        summary.time_series.push_back(compute_metrics(sim.network(), p.max_network));
    }
    summary.final_row = summary.time_series.empty() ? compute_metrics(sim.network(), p.max_network)
                                                    : summary.time_series.back();
    return summary;
}

struct FieldInfo {
    const char* name;
    bool integral;
    double (*get)(const Params&);
    void (*set)(Params&, double);
};

constexpr FieldInfo kFields[] = {
    {"max-profiles", true, [](const Params& p) { return static_cast<double>(p.max_profiles); },
     [](Params& p, double v) { p.max_profiles = static_cast<int>(v); }},
    {"max-network", true, [](const Params& p) { return static_cast<double>(p.max_network); },
     [](Params& p, double v) { p.max_network = static_cast<int>(v); }},
    {"distortion", false, [](const Params& p) { return p.distortion; },
     [](Params& p, double v) { p.distortion = v; }},
    {"max-change", false, [](const Params& p) { return p.max_change; },
     [](Params& p, double v) { p.max_change = v; }},
    {"aff-radius", false, [](const Params& p) { return p.aff_radius; },
     [](Params& p, double v) { p.aff_radius = v; }},
    {"people-dead", true, [](const Params& p) { return static_cast<double>(p.people_dead); },
     [](Params& p, double v) { p.people_dead = static_cast<int>(v); }},
};

const FieldInfo* find_field(const std::string& name) {
    for (const FieldInfo& f : kFields)
        if (name == f.name)
            return &f;
    return nullptr;
}

} // namespace

RunSummary run_simulation(const Params& p, std::uint64_t seed,
                          const std::function<void(const Network&, const StepEvents&)>& on_step) {
    return run_with_setup(p, seed, nullptr, on_step);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t rep) {
    std::uint64_t state =
        master + 0x9E3779B97F4A7C15ull * (cell + 1) + 0xC2B2AE3D27D4EB4Full * (rep + 1);
    return splitmix64(state);
}

ReplicationSet run_replications(const Params& p, const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty())
        throw std::invalid_argument("run_replications: need at least one seed");
    require_valid(p);
    ReplicationSet set;
    set.runs.resize(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) { set.runs[i] = run_simulation(p, seeds[i]); });
    std::vector<const MetricsRow*> finals;
    finals.reserve(set.runs.size());
    for (const RunSummary& r : set.runs)
        finals.push_back(&r.final_row);
    set.aggregates = aggregate_finals(finals);
    return set;
}

bool is_sweepable_param(const std::string& name) { return find_field(name) != nullptr; }

double param_value(const Params& p, const std::string& name) {
    const FieldInfo* f = find_field(name);
    if (!f)
        throw std::invalid_argument("unknown parameter '" + name + "'");
    return f->get(p);
}

Params with_param_value(const Params& base, const std::string& name, double value) {
    const FieldInfo* f = find_field(name);
    if (!f)
        throw std::invalid_argument("'" + name + "' is not a sweepable model parameter");
    if (f->integral && value != std::floor(value))
        throw std::invalid_argument(std::string("parameter '") + name + "' takes integer values");
    Params p = base;
    f->set(p, value);
    const auto violations = validate_params(p);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "value " << value << " is illegal for '" << name << "':";
        for (const auto& v : violations)
            msg << " [" << v.field << ": " << v.message << "]";
        throw std::invalid_argument(msg.str());
    }
    return p;
}

SweepResult sweep(const Params& base, const std::string& param, const std::vector<double>& values,
                  int reps, std::uint64_t master_seed) {
    if (reps < 1)
        throw std::invalid_argument("sweep: reps must be >= 1");
    // Reject any illegal value before the first simulation runs.
    std::vector<Params> cells;
    cells.reserve(values.size());
    for (double v : values)
        cells.push_back(with_param_value(base, param, v));

    SweepResult result{param, {}};
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<std::uint64_t> seeds;
        seeds.reserve(static_cast<std::size_t>(reps));
        for (int r = 0; r < reps; ++r)
            seeds.push_back(derive_seed(master_seed, c, static_cast<std::uint64_t>(r)));
        const ReplicationSet set = run_replications(cells[c], seeds);
        result.points.push_back({values[c], reps, set.aggregates.clustering,
                                 set.aggregates.std_affinity, set.aggregates.density});
    }
    return result;
}

std::optional<double> sensitivity_coefficient(double base_out, double new_out, double base_param,
                                              double new_param) {
    if (base_out == 0.0 || base_param == 0.0 || new_param == base_param)
        return std::nullopt;
    return ((new_out - base_out) / base_out) / ((new_param - base_param) / base_param);
}

long perturb_integer(long value, double delta) {
    const double x = static_cast<double>(value) * (1.0 + delta);
    const double lo = std::floor(x);
    const double hi = std::ceil(x);
    if (lo == hi)
        return static_cast<long>(lo);
    const double down = x - lo;
    const double up = hi - x;
    if (down < up)
        return static_cast<long>(lo);
    if (up < down)
        return static_cast<long>(hi);
    // Exact .5 tie: round away from the baseline so the perturbation survives.
    return x < static_cast<double>(value) ? static_cast<long>(lo) : static_cast<long>(hi);
}

SensitivityReport sensitivity_suite(const Params& base, const std::vector<double>& deltas,
                                    int cell_reps, int baseline_reps, std::uint64_t master_seed) {
    if (cell_reps < 1 || baseline_reps < 1)
        throw std::invalid_argument("sensitivity_suite: replication counts must be >= 1");
    require_valid(base);

    SensitivityReport report;
    report.baseline_reps = baseline_reps;
    report.cell_reps = cell_reps;

    // Cell 0 is the shared baseline.
    {
        std::vector<std::uint64_t> seeds;
        for (int r = 0; r < baseline_reps; ++r)
            seeds.push_back(derive_seed(master_seed, 0, static_cast<std::uint64_t>(r)));
        const ReplicationSet set = run_replications(base, seeds);
        report.baseline_clustering = set.aggregates.clustering.mean;
        report.baseline_std_affinity = set.aggregates.std_affinity.mean;
    }

    std::uint64_t cell_index = 1;
    for (const FieldInfo& field : kFields) {
        const double base_value = field.get(base);
        for (double delta : deltas) {
            if (delta == 0.0)
                continue; // a zero delta is no perturbation
            SensitivityCell cell;
            cell.param = field.name;
            cell.delta = delta;

            double new_value;
            if (field.integral) {
                new_value = static_cast<double>(
                    perturb_integer(static_cast<long>(base_value), delta));
            } else {
                new_value = base_value * (1.0 + delta);
            }
            cell.value = new_value;

            if (new_value == base_value) {
                cell.status = SensitivityCell::Status::NoChange;
                report.cells.push_back(cell);
                ++cell_index;
                continue;
            }

            Params perturbed = base;
            field.set(perturbed, new_value);
            if (!validate_params(perturbed).empty()) {
                cell.status = SensitivityCell::Status::Invalid;
                report.cells.push_back(cell);
                ++cell_index;
                continue;
            }

            std::vector<std::uint64_t> seeds;
            for (int r = 0; r < cell_reps; ++r)
                seeds.push_back(derive_seed(master_seed, cell_index, static_cast<std::uint64_t>(r)));
            const ReplicationSet set = run_replications(perturbed, seeds);
            cell.clustering_mean = set.aggregates.clustering.mean;
            cell.std_affinity_mean = set.aggregates.std_affinity.mean;
            cell.clustering_s = sensitivity_coefficient(report.baseline_clustering,
                                                        cell.clustering_mean, base_value, new_value);
            cell.std_affinity_s = sensitivity_coefficient(
                report.baseline_std_affinity, cell.std_affinity_mean, base_value, new_value);
            report.cells.push_back(cell);
            ++cell_index;
        }
    }
    return report;
}

void check_step_invariants(const Network& net, const Params& p) {
    if (static_cast<int>(net.size()) != p.max_profiles)
        throw std::logic_error("population not conserved");
    net.audit_consistency();
    const auto caps = tier_caps(p.max_network);
    for (ProfileId id : net.ids_ascending()) {
        const Profile& profile = net.profile(id);
        if (!(profile.affinity >= 0.0 && profile.affinity <= 1.0))
            throw std::logic_error("affinity outside [0,1]");
        if (net.out_degree(id) > p.max_network)
            throw std::logic_error("out-degree above max-network");
        for (int t = 0; t < kTierCount; ++t)
            if (net.tier_counts(id)[t] > caps[t])
                throw std::logic_error("tier count above cap");
    }
}

bool BatteryReport::all_passed() const {
    for (const ScenarioOutcome& s : scenarios)
        if (!s.passed)
            return false;
    return true;
}

namespace {

// Rescales initial ages into [10, 50) so nobody reaches 80 within a
// 1000-step (about 27 year) horizon; the frozen scenarios need a run with no
// deaths at all.
void cap_initial_ages(Network& net) {
    for (ProfileId id : net.ids_ascending()) {
        double& age = net.profile(id).age;
        age = 10.0 + (age - 10.0) * (4.0 / 7.0);
    }
}

struct ScenarioSpec {
    enum class Kind { Report, ZeroLinks, FullRadius, StdNearUniform, FrozenExact };
    std::string name;
    Kind kind;
    bool cap_ages;
    std::function<void(Params&)> tweak;
};

struct RepOutcome {
    RunSummary summary;
    bool completed = false;
    std::string violation; // empty when the rep satisfied its checks
};

std::string format_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

BatteryReport run_verification_battery(const Params& base, int reps, std::uint64_t master_seed) {
    if (reps < 1)
        throw std::invalid_argument("verification battery: reps must be >= 1");
    require_valid(base);
    using Kind = ScenarioSpec::Kind;

    const std::vector<ScenarioSpec> specs = {
        {"default", Kind::Report, false, {}},
        {"aff-radius-0", Kind::ZeroLinks, false, [](Params& p) { p.aff_radius = 0.0; }},
        {"aff-radius-1", Kind::FullRadius, false, [](Params& p) { p.aff_radius = 1.0; }},
        {"max-change-0", Kind::StdNearUniform, false, [](Params& p) { p.max_change = 0.0; }},
        {"max-change-0-people-dead-0", Kind::FrozenExact, true,
         [](Params& p) {
             p.max_change = 0.0;
             p.people_dead = 0;
         }},
        {"max-network-max", Kind::Report, false,
         [](Params& p) { p.max_network = p.max_profiles - 1; }},
        {"distortion-0", Kind::Report, false, [](Params& p) { p.distortion = 0.0; }},
        {"distortion-0-people-dead-0-max-change-0", Kind::FrozenExact, true,
         [](Params& p) {
             p.distortion = 0.0;
             p.people_dead = 0;
             p.max_change = 0.0;
         }},
    };

    BatteryReport report;
    double default_density_mean = 0.0;

    for (std::size_t c = 0; c < specs.size(); ++c) {
        const ScenarioSpec& spec = specs[c];
        Params p = base;
        if (spec.tweak)
            spec.tweak(p);

        std::vector<RepOutcome> outcomes(static_cast<std::size_t>(reps));
        parallel_for(outcomes.size(), [&](std::size_t r) {
            RepOutcome& out = outcomes[r];
            const std::uint64_t seed = derive_seed(master_seed, c, r);
            double mean0 = 0.0;
            double std0 = 0.0;
            const auto setup = [&](Network& net) {
                if (spec.cap_ages)
                    cap_initial_ages(net);
                const auto stats = affinity_stats(net);
                mean0 = stats.first;
                std0 = stats.second;
            };
            const auto on_step = [&](const Network& net, const StepEvents&) {
                check_step_invariants(net, p);
                if (!out.violation.empty())
                    return;
                if (spec.kind == Kind::ZeroLinks && net.total_links() != 0) {
                    out.violation = "links exist at step " + std::to_string(net.step_index());
                } else if (spec.kind == Kind::FrozenExact) {
                    const auto stats = affinity_stats(net);
                    if (std::abs(stats.first - mean0) > 1e-12 || std::abs(stats.second - std0) > 1e-12)
                        out.violation =
                            "affinity distribution drifted at step " + std::to_string(net.step_index());
                }
            };
            try {
                out.summary = run_with_setup(p, seed, setup, on_step);
                out.completed = true;
            } catch (const std::exception& e) {
                out.violation = e.what();
            }
        });

        ScenarioOutcome outcome;
        outcome.name = spec.name;
        std::vector<const MetricsRow*> finals;
        std::string first_violation;
        for (const RepOutcome& out : outcomes) {
            if (out.completed)
                finals.push_back(&out.summary.final_row);
            if (first_violation.empty() && !out.violation.empty())
                first_violation = out.violation;
        }
        outcome.aggregates = aggregate_finals(finals);
        const bool all_completed = finals.size() == outcomes.size();

        switch (spec.kind) {
        case Kind::Report:
            outcome.has_assertion = false;
            outcome.passed = all_completed && first_violation.empty();
            outcome.detail = "final density " + format_num(outcome.aggregates.density.mean) +
                             ", clustering " + format_num(outcome.aggregates.clustering.mean) +
                             ", affinity std " + format_num(outcome.aggregates.std_affinity.mean);
            break;
        case Kind::ZeroLinks:
            outcome.has_assertion = true;
            outcome.passed = all_completed && first_violation.empty();
            outcome.detail = outcome.passed ? "no links over the whole horizon" : first_violation;
            break;
        case Kind::FullRadius: {
            outcome.has_assertion = true;
            const double density = outcome.aggregates.density.mean;
            outcome.passed = all_completed && first_violation.empty() && density > 0.40 &&
                             density > default_density_mean;
            outcome.detail = "mean final density " + format_num(density) + " (needs > 0.40 and > default " +
                             format_num(default_density_mean) + ")";
            if (!first_violation.empty())
                outcome.detail = first_violation;
            break;
        }
        case Kind::StdNearUniform: {
            outcome.has_assertion = true;
            const double sd = outcome.aggregates.std_affinity.mean;
            outcome.passed =
                all_completed && first_violation.empty() && std::abs(sd - kUniformStd) <= 0.05;
            outcome.detail =
                "mean final affinity std " + format_num(sd) + " (needs within 0.05 of 0.2887)";
            if (!first_violation.empty())
                outcome.detail = first_violation;
            break;
        }
        case Kind::FrozenExact: {
            outcome.has_assertion = true;
            const double sd = outcome.aggregates.std_affinity.mean;
            outcome.passed = all_completed && first_violation.empty() &&
                             std::abs(sd - kUniformStd) <= 0.03;
            outcome.detail = "affinity mean/std constant; final std " + format_num(sd) +
                             " (needs within 0.03 of 0.2887)";
            if (!first_violation.empty())
                outcome.detail = first_violation;
            break;
        }
        }

        if (spec.name == "default")
            default_density_mean = outcome.aggregates.density.mean;
        report.scenarios.push_back(std::move(outcome));
    }
    return report;
}

} // namespace affnet
