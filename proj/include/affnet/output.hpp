#ifndef AFFNET_OUTPUT_HPP
#define AFFNET_OUTPUT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "affnet/experiments.hpp"
#include "affnet/metrics.hpp"
#include "affnet/network.hpp"
#include "affnet/params.hpp"

namespace affnet {

// 17 significant digits, locale independent, so equal doubles always print
// to equal bytes and round-trip exactly.
std::string format_real(double v);

// Writes via a temporary file in the same directory plus a rename, so an
// interrupted run never leaves a truncated result behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string timeseries_csv(const std::vector<MetricsRow>& rows);
std::string summary_json(const Params& p, const MetricsRow& final_row);
std::string edges_csv(const Network& net);
std::string sweep_csv(const SweepResult& result);
std::string sensitivity_csv(const SensitivityReport& report);

} // namespace affnet

#endif
