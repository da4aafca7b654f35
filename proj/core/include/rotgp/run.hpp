#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "rotgp/config.hpp"

namespace rotgp {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// One row of the diagnostics time series. Residuals need neighbouring
/// rows and are NaN at the ends of a series.
struct DiagnosticsRecord {
  double time = 0.0;
  std::array<double, 2> mass{};  // int (rho_k - a_k)
  double energy = 0.0;           // localized energy e(t)
  double h_wave = 0.0;
  double h_hydro = 0.0;
  bool floor_skipped = false;
  double overlap = 0.0;
  double density_gap = 0.0;
  double momentum_gap = 0.0;
  std::array<double, 2> component_gap{};
  std::array<double, 2> mass_residual{kNaN, kNaN};
  double momentum_residual = kNaN;
  double energy_residual = kNaN;
};

/// Column names of the CSV time series, in order.
const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& rows);
std::vector<DiagnosticsRecord> read_csv(std::istream& in);
void write_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& rows);
std::vector<DiagnosticsRecord> read_csv(const std::filesystem::path& path);

struct RunManifest {
  std::filesystem::path directory;
  std::filesystem::path csv;
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> snapshots;
  std::string stop_reason = "horizon";
  double stop_time = 0.0;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
  std::vector<DiagnosticsRecord> rows;
  DiagnosticsRecord final_record() const { return rows.empty() ? DiagnosticsRecord{} : rows.back(); }
};

/// Limit-flow reference for a setup: evolved to the horizon or until the
/// smoothness monitor stops it.
HydroTrajectory limit_reference(const RunConfig& config, const RunSetup& setup);

/// GP run against a precomputed limit reference, with diagnostics at every
/// reference snapshot. Writes artifacts into config.output_dir.
RunManifest run_against(const RunConfig& config, const RunSetup& setup, const HydroTrajectory& reference);

/// Full pipeline: limit reference, GP evolution, diagnostics, artifacts.
RunManifest run_single(const RunConfig& config);

/// Limit system only; writes a small CSV of norms per cadence tick.
RunManifest run_euler(const RunConfig& config);

struct ScanSeries {
  double epsilon = 0.0;
  std::vector<DiagnosticsRecord> rows;
  std::string stop_reason;
  /// Empty unless the run failed.
  std::string failure;
};

/// Sup over time of each metric, per epsilon, with log-log slopes.
struct ScanMetric {
  std::string name;
  std::vector<double> sup;
  double slope = kNaN;
  bool decreasing = false;
};

struct ScanReport {
  std::vector<double> epsilons;
  std::vector<ScanSeries> series;
  std::vector<ScanMetric> metrics;
  double min_energy_slope = 0.8;
  bool passed = false;
  std::vector<std::string> failures;

  const ScanMetric& metric(const std::string& name) const;
};

struct ScanOptions {
  unsigned threads = 1;
};

/// Least-squares slope of log(y) against log(x); NaN if any y <= 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Builds the report from raw series (also used by `report`).
ScanReport assemble_report(std::vector<ScanSeries> series);

/// Independent runs, one per epsilon, sharing the limit reference. Each run
/// writes into <output_dir>/eps_<value>; the report goes to output_dir.
ScanReport epsilon_scan(const RunConfig& base, const std::vector<double>& epsilons, const ScanOptions& options = {});

void write_report(const ScanReport& report, const std::filesystem::path& directory);
/// Rebuilds the report from the series stored in a scan directory.
ScanReport load_report(const std::filesystem::path& directory);

}  // namespace rotgp
