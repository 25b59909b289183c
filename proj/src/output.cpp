#include "affnet/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace affnet {

std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("failed while writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignore;
        std::filesystem::remove(tmp, ignore);
        throw std::runtime_error("cannot move results into place at '" + path.string() +
                                 "': " + ec.message());
    }
}

static const char* kTimeseriesHeader =
    "step,density,mean_net_size,clustering,mean_affinity,std_affinity,"
    "low_outliers,high_outliers,links_strongest,links_strong,links_medium,links_weak,links_weakest";

std::string timeseries_csv(const std::vector<MetricsRow>& rows) {
    std::string out = kTimeseriesHeader;
    out += '\n';
    for (const MetricsRow& r : rows) {
        out += std::to_string(r.step);
        out += ',';
        out += format_real(r.density);
        out += ',';
        out += format_real(r.mean_net_size);
        out += ',';
        out += format_real(r.clustering);
        out += ',';
        out += format_real(r.mean_affinity);
        out += ',';
        out += format_real(r.std_affinity);
        out += ',';
        out += std::to_string(r.low_outliers);
        out += ',';
        out += std::to_string(r.high_outliers);
        for (long count : r.tier_counts) {
            out += ',';
            out += std::to_string(count);
        }
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json params_json(const Params& p) {
    return {
        {"max-profiles", p.max_profiles}, {"max-network", p.max_network},
        {"distortion", p.distortion},     {"max-change", p.max_change},
        {"aff-radius", p.aff_radius},     {"people-dead", p.people_dead},
        {"steps", p.steps},               {"seed", p.seed},
    };
}

nlohmann::json metrics_json(const MetricsRow& r) {
    return {
        {"step", r.step},
        {"density", r.density},
        {"mean_net_size", r.mean_net_size},
        {"clustering", r.clustering},
        {"mean_affinity", r.mean_affinity},
        {"std_affinity", r.std_affinity},
        {"low_outliers", r.low_outliers},
        {"high_outliers", r.high_outliers},
        {"links_strongest", r.tier_counts[0]},
        {"links_strong", r.tier_counts[1]},
        {"links_medium", r.tier_counts[2]},
        {"links_weak", r.tier_counts[3]},
        {"links_weakest", r.tier_counts[4]},
    };
}

} // namespace

std::string summary_json(const Params& p, const MetricsRow& final_row) {
    nlohmann::json doc;
    doc["params"] = params_json(p);
    doc["seed"] = p.seed;
    doc["final"] = metrics_json(final_row);
    return doc.dump(2) + "\n";
}

std::string edges_csv(const Network& net) {
    std::string out = "source,target,tier\n";
    for (const Link& link : net.all_links()) {
        out += std::to_string(link.source);
        out += ',';
        out += std::to_string(link.target);
        out += ',';
        out += tier_name(link.tier);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out =
        "param,value,reps,clustering_mean,clustering_std,std_affinity_mean,std_affinity_std,"
        "density_mean,density_std\n";
    for (const SweepPoint& point : result.points) {
        out += result.param;
        out += ',';
        out += format_real(point.value);
        out += ',';
        out += std::to_string(point.reps);
        out += ',';
        out += format_real(point.clustering.mean);
        out += ',';
        out += format_real(point.clustering.std);
        out += ',';
        out += format_real(point.std_affinity.mean);
        out += ',';
        out += format_real(point.std_affinity.std);
        out += ',';
        out += format_real(point.density.mean);
        out += ',';
        out += format_real(point.density.std);
        out += '\n';
    }
    return out;
}

std::string sensitivity_csv(const SensitivityReport& report) {
    std::string out =
        "param,delta,value,status,clustering_mean,clustering_sensitivity,"
        "std_affinity_mean,std_affinity_sensitivity\n";
    out += "baseline,0,,ok," + format_real(report.baseline_clustering) + ",," +
           format_real(report.baseline_std_affinity) + ",\n";
    for (const SensitivityCell& cell : report.cells) {
        out += cell.param;
        out += ',';
        out += format_real(cell.delta);
        out += ',';
        out += format_real(cell.value);
        out += ',';
        switch (cell.status) {
        case SensitivityCell::Status::Ok: out += "ok"; break;
        case SensitivityCell::Status::NoChange: out += "no-change"; break;
        case SensitivityCell::Status::Invalid: out += "invalid"; break;
        }
        if (cell.status == SensitivityCell::Status::Ok) {
            out += ',';
            out += format_real(cell.clustering_mean);
            out += ',';
            out += cell.clustering_s ? format_real(*cell.clustering_s) : "undefined";
            out += ',';
            out += format_real(cell.std_affinity_mean);
            out += ',';
            out += cell.std_affinity_s ? format_real(*cell.std_affinity_s) : "undefined";
        } else {
            out += ",,,,";
        }
        out += '\n';
    }
    return out;
}

} // namespace affnet
