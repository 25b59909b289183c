// Command-line front end: run / sweep / sensitivity / verify.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affnet/config.hpp"
#include "affnet/dynamics.hpp"
#include "affnet/experiments.hpp"
#include "affnet/metrics.hpp"
#include "affnet/output.hpp"
#include "affnet/params.hpp"

namespace fs = std::filesystem;
using namespace affnet;

namespace {

// Model/flag state for one subcommand. Precedence: defaults, then the config
// file, then any flag actually given on the command line.
struct ParamArgs {
    std::string config_path;
    int max_profiles = 0;
    int max_network = 0;
    double distortion = 0.0;
    double max_change = 0.0;
    double aff_radius = 0.0;
    int people_dead = 0;
    long steps = 0;
    std::uint64_t seed = 0;

    CLI::Option* opt_config = nullptr;
    CLI::Option* opt_max_profiles = nullptr;
    CLI::Option* opt_max_network = nullptr;
    CLI::Option* opt_distortion = nullptr;
    CLI::Option* opt_max_change = nullptr;
    CLI::Option* opt_aff_radius = nullptr;
    CLI::Option* opt_people_dead = nullptr;
    CLI::Option* opt_steps = nullptr;
    CLI::Option* opt_seed = nullptr;

    void attach(CLI::App* cmd) {
        opt_config = cmd->add_option("--config", config_path, "JSON config file");
        opt_max_profiles = cmd->add_option("--max-profiles", max_profiles, "population size");
        opt_max_network = cmd->add_option("--max-network", max_network, "out-degree cap per profile");
        opt_distortion = cmd->add_option("--distortion", distortion, "perception noise sd");
        opt_max_change = cmd->add_option("--max-change", max_change, "per-step affinity change cap");
        opt_aff_radius = cmd->add_option("--aff-radius", aff_radius, "affinity tolerance radius");
        opt_people_dead = cmd->add_option("--people-dead", people_dead, "stochastic deaths cap per step");
        opt_steps = cmd->add_option("--steps", steps, "steps to simulate (10 days each)");
        opt_seed = cmd->add_option("--seed", seed, "master random seed");
    }

    Params resolve() const {
        Params p;
        if (opt_config->count() > 0)
            apply_config_file(config_path, p);
        if (opt_max_profiles->count() > 0)
            p.max_profiles = max_profiles;
        if (opt_max_network->count() > 0)
            p.max_network = max_network;
        if (opt_distortion->count() > 0)
            p.distortion = distortion;
        if (opt_max_change->count() > 0)
            p.max_change = max_change;
        if (opt_aff_radius->count() > 0)
            p.aff_radius = aff_radius;
        if (opt_people_dead->count() > 0)
            p.people_dead = people_dead;
        if (opt_steps->count() > 0)
            p.steps = steps;
        if (opt_seed->count() > 0)
            p.seed = seed;

        const auto violations = validate_params(p);
        if (!violations.empty()) {
            std::string msg = "invalid parameters:";
            for (const auto& v : violations)
                msg += "\n  " + v.field + ": " + v.message;
            throw std::runtime_error(msg);
        }
        return p;
    }
};

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

int cmd_run(const ParamArgs& args, const std::string& out_dir, bool dump_edges) {
    const Params p = args.resolve();

    Simulation sim(p, p.seed);
    std::vector<MetricsRow> rows;
    rows.reserve(static_cast<std::size_t>(p.steps));
    for (long s = 0; s < p.steps; ++s) {
        sim.step();
        rows.push_back(compute_metrics(sim.network(), p.max_network));
    }
    const MetricsRow final_row =
        rows.empty() ? compute_metrics(sim.network(), p.max_network) : rows.back();

    // Build every document before touching the filesystem.
    const std::string ts = timeseries_csv(rows);
    const std::string summary = summary_json(p, final_row);
    const std::string edges = dump_edges ? edges_csv(sim.network()) : std::string{};

    const fs::path dir(out_dir);
    ensure_out_dir(dir);
    write_file_atomic(dir / "timeseries.csv", ts);
    write_file_atomic(dir / "summary.json", summary);
    if (dump_edges)
        write_file_atomic(dir / "edges.csv", edges);

    std::cout << "run finished: " << p.steps << " steps, final density " << format_real(final_row.density)
              << ", clustering " << format_real(final_row.clustering) << ", affinity std "
              << format_real(final_row.std_affinity) << "\n"
              << "results in " << dir.string() << "\n";
    return 0;
}

std::vector<double> range_values(double from, double to, double step) {
    if (step <= 0.0)
        throw std::runtime_error("--step must be positive");
    if (to < from)
        throw std::runtime_error("--to must be >= --from");
    std::vector<double> values;
    const double slack = step * 1e-9;
    for (int k = 0;; ++k) {
        const double v = from + step * k;
        if (v > to + slack)
            break;
        values.push_back(v);
    }
    return values;
}

int cmd_sweep(const ParamArgs& args, const std::string& out_dir, const std::string& param,
              const std::vector<double>& explicit_values, bool has_range, double from, double to,
              double step, int reps) {
    const Params base = args.resolve();
    std::vector<double> values = explicit_values;
    if (values.empty()) {
        if (!has_range)
            throw std::runtime_error("sweep needs either --values or --from/--to/--step");
        values = range_values(from, to, step);
    }

    const SweepResult result = sweep(base, param, values, reps, base.seed);

    const fs::path dir(out_dir);
    ensure_out_dir(dir);
    write_file_atomic(dir / "sweep.csv", sweep_csv(result));

    std::cout << "sweep over " << param << ": " << result.points.size() << " values x " << reps
              << " reps\n";
    for (const SweepPoint& point : result.points)
        std::cout << "  " << param << "=" << format_real(point.value) << "  clustering "
                  << format_real(point.clustering.mean) << "  affinity std "
                  << format_real(point.std_affinity.mean) << "  density "
                  << format_real(point.density.mean) << "\n";
    std::cout << "table in " << (dir / "sweep.csv").string() << "\n";
    return 0;
}

int cmd_sensitivity(const ParamArgs& args, const std::string& out_dir,
                    const std::vector<double>& deltas, int reps, int baseline_reps) {
    const Params base = args.resolve();
    const SensitivityReport report = sensitivity_suite(base, deltas, reps, baseline_reps, base.seed);

    const fs::path dir(out_dir);
    ensure_out_dir(dir);
    write_file_atomic(dir / "sensitivity.csv", sensitivity_csv(report));

    std::cout << "baseline (" << report.baseline_reps << " runs): clustering "
              << format_real(report.baseline_clustering) << ", affinity std "
              << format_real(report.baseline_std_affinity) << "\n";
    for (const SensitivityCell& cell : report.cells) {
        std::cout << "  " << cell.param << " " << (cell.delta > 0 ? "+" : "")
                  << format_real(cell.delta * 100.0) << "%";
        switch (cell.status) {
        case SensitivityCell::Status::NoChange:
            std::cout << "  (rounds back to the baseline value; no run)\n";
            break;
        case SensitivityCell::Status::Invalid:
            std::cout << "  (perturbed value is outside the legal range)\n";
            break;
        case SensitivityCell::Status::Ok:
            std::cout << "  S_clustering "
                      << (cell.clustering_s ? format_real(*cell.clustering_s) : "undefined")
                      << "  S_affinity_std "
                      << (cell.std_affinity_s ? format_real(*cell.std_affinity_s) : "undefined")
                      << "\n";
            break;
        }
    }
    std::cout << "table in " << (dir / "sensitivity.csv").string() << "\n";
    return 0;
}

int cmd_verify(const ParamArgs& args, int reps) {
    const Params base = args.resolve();
    const BatteryReport report = run_verification_battery(base, reps, base.seed);
    for (const ScenarioOutcome& s : report.scenarios) {
        std::cout << (s.passed ? "PASS" : "FAIL") << "  " << s.name;
        if (!s.has_assertion)
            std::cout << " [report]";
        std::cout << ": " << s.detail << "\n";
    }
    std::cout << (report.all_passed() ? "verify: all scenarios passed"
                                      : "verify: at least one scenario FAILED")
              << "\n";
    return report.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"affinity-driven social network simulator"};
    app.require_subcommand(1);

    ParamArgs run_args, sweep_args, sens_args, verify_args;
    std::string run_out = "out", sweep_out = "out", sens_out = "out";
    bool dump_edges = false;

    CLI::App* run_cmd = app.add_subcommand("run", "simulate once and write timeseries/summary");
    run_args.attach(run_cmd);
    run_cmd->add_option("--out", run_out, "output directory");
    run_cmd->add_flag("--dump-edges", dump_edges, "also write the final edge list");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "replicate runs across one parameter's values");
    sweep_args.attach(sweep_cmd);
    std::string sweep_param;
    double sweep_from = 0.0, sweep_to = 0.0, sweep_step = 0.0;
    std::vector<double> sweep_values;
    int sweep_reps = 20;
    sweep_cmd->add_option("--param", sweep_param, "parameter to sweep")->required();
    auto* opt_from = sweep_cmd->add_option("--from", sweep_from, "first value");
    auto* opt_to = sweep_cmd->add_option("--to", sweep_to, "last value (inclusive)");
    auto* opt_step = sweep_cmd->add_option("--step", sweep_step, "increment");
    sweep_cmd->add_option("--values", sweep_values, "explicit comma-separated values")->delimiter(',');
    sweep_cmd->add_option("--reps", sweep_reps, "replications per value");
    sweep_cmd->add_option("--out", sweep_out, "output directory");

    CLI::App* sens_cmd = app.add_subcommand("sensitivity", "±5%/±10% parameter perturbation table");
    sens_args.attach(sens_cmd);
    std::vector<double> deltas = {-0.10, -0.05, 0.05, 0.10};
    int sens_reps = 20;
    int baseline_reps = 30;
    sens_cmd->add_option("--deltas", deltas, "relative perturbations")->delimiter(',');
    sens_cmd->add_option("--reps", sens_reps, "replications per perturbed cell");
    sens_cmd->add_option("--baseline-reps", baseline_reps, "replications for the baseline");
    sens_cmd->add_option("--out", sens_out, "output directory");

    CLI::App* verify_cmd = app.add_subcommand("verify", "extreme-scenario battery with pass/fail checks");
    verify_args.attach(verify_cmd);
    int verify_reps = 5;
    verify_cmd->add_option("--reps", verify_reps, "replications per scenario");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed())
            return cmd_run(run_args, run_out, dump_edges);
        if (sweep_cmd->parsed()) {
            const bool has_range = opt_from->count() > 0 || opt_to->count() > 0 || opt_step->count() > 0;
            if (has_range && (opt_from->count() == 0 || opt_to->count() == 0 || opt_step->count() == 0))
                throw std::runtime_error("--from/--to/--step must be given together");
            return cmd_sweep(sweep_args, sweep_out, sweep_param, sweep_values, has_range, sweep_from,
                             sweep_to, sweep_step, sweep_reps);
        }
        if (sens_cmd->parsed())
            return cmd_sensitivity(sens_args, sens_out, deltas, sens_reps, baseline_reps);
        if (verify_cmd->parsed())
            return cmd_verify(verify_args, verify_reps);
    } catch (const std::exception& e) {
        std::cerr << "affnet: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
