#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <thread>

#include <nlohmann/json.hpp>

#include "rotgp/errors.hpp"
#include "rotgp/run.hpp"

namespace rotgp {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Values this small count as identically zero when checking monotonicity.
constexpr double kVanishing = 1e-14;

struct MetricDef {
  const char* name;
  std::function<double(const DiagnosticsRecord&)> get;
  bool required;
};

const std::vector<MetricDef>& metric_defs() {
  static const std::vector<MetricDef> defs{
      {"h_wave", [](const DiagnosticsRecord& r) { return r.h_wave; }, true},
      {"density_gap", [](const DiagnosticsRecord& r) { return r.density_gap; }, true},
      {"momentum_gap", [](const DiagnosticsRecord& r) { return r.momentum_gap; }, true},
      {"component_gap_1", [](const DiagnosticsRecord& r) { return r.component_gap[0]; }, true},
      {"component_gap_2", [](const DiagnosticsRecord& r) { return r.component_gap[1]; }, true},
      {"overlap", [](const DiagnosticsRecord& r) { return r.overlap; }, false},
  };
  return defs;
}

std::string eps_dir(double eps) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, eps);
  return "eps_" + std::string(buf, res.ptr);
}

void write_failure(const fs::path& dir, double eps, const std::string& what) {
  fs::create_directories(dir);
  std::ofstream out(dir / "failure.json", std::ios::trunc);
  out << json{{"epsilon", eps}, {"failure", what}}.dump(2) << "\n";
}

}  // namespace

const ScanMetric& ScanReport::metric(const std::string& name) const {
  for (const auto& m : metrics)
    if (m.name == name) return m;
  throw std::out_of_range("no scan metric named " + name);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return kNaN;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return kNaN;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? kNaN : (n * sxy - sx * sy) / den;
}

ScanReport assemble_report(std::vector<ScanSeries> series) {
  std::sort(series.begin(), series.end(), [](const ScanSeries& a, const ScanSeries& b) { return a.epsilon > b.epsilon; });
  ScanReport report;
  for (const auto& s : series) {
    report.epsilons.push_back(s.epsilon);
    if (!s.failure.empty()) report.failures.push_back(eps_dir(s.epsilon) + ": " + s.failure);
  }
  if (report.epsilons.size() < 3) report.failures.push_back("a scan needs at least three epsilon values");

  for (const auto& def : metric_defs()) {
    ScanMetric m;
    m.name = def.name;
    for (const auto& s : series) {
      double sup = s.rows.empty() ? kNaN : 0.0;
      for (const auto& r : s.rows) sup = std::max(sup, def.get(r));
      m.sup.push_back(sup);
    }
    m.slope = loglog_slope(report.epsilons, m.sup);
    m.decreasing = !m.sup.empty();
    for (std::size_t i = 0; i + 1 < m.sup.size(); ++i) {
      const bool vanishing = std::abs(m.sup[i]) <= kVanishing && std::abs(m.sup[i + 1]) <= kVanishing;
      if (!(m.sup[i + 1] < m.sup[i]) && !vanishing) m.decreasing = false;
    }
    if (def.required && !m.decreasing) report.failures.push_back(m.name + " is not decreasing in epsilon");
    report.metrics.push_back(std::move(m));
  }
  const double slope = report.metric("h_wave").slope;
  if (!(slope >= report.min_energy_slope))
    report.failures.push_back("modulated energy slope " + std::to_string(slope) + " is below " +
                              std::to_string(report.min_energy_slope));
  report.series = std::move(series);
  report.passed = report.failures.empty();
  return report;
}

ScanReport epsilon_scan(const RunConfig& base, const std::vector<double>& epsilons, const ScanOptions& options) {
  if (epsilons.size() < 3) throw ConfigError("epsilon scan needs at least three values");
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i)
    if (!(epsilons[i + 1] < epsilons[i])) throw ConfigError("epsilon values must be strictly decreasing");
  for (double e : epsilons)
    if (!(e > 0.0)) throw ConfigError("epsilon values must be positive");

  // The limit flow does not depend on epsilon; compute it once.
  const RunSetup base_setup = build_setup(base);
  const HydroTrajectory reference = limit_reference(base, base_setup);

  std::vector<ScanSeries> series(epsilons.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < epsilons.size(); i = next++) {
      RunConfig cfg = base;
      cfg.params.epsilon = epsilons[i];
      cfg.output_dir = base.output_dir / eps_dir(epsilons[i]);
      ScanSeries& s = series[i];
      s.epsilon = epsilons[i];
      try {
        const RunSetup setup = build_setup(cfg);
        const RunManifest m = run_against(cfg, setup, reference);
        s.rows = m.rows;
        s.stop_reason = m.stop_reason;
      } catch (const std::exception& e) {
        s.failure = e.what();
        s.stop_reason = "failed";
        write_failure(cfg.output_dir, s.epsilon, s.failure);
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(epsilons.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  ScanReport report = assemble_report(std::move(series));
  write_report(report, base.output_dir);
  return report;
}

void write_report(const ScanReport& report, const fs::path& directory) {
  fs::create_directories(directory);
  json metrics = json::array();
  for (const auto& m : report.metrics)
    metrics.push_back({{"name", m.name},
                       {"sup", m.sup},
                       {"slope", std::isnan(m.slope) ? json(nullptr) : json(m.slope)},
                       {"decreasing", m.decreasing}});
  json runs = json::array();
  for (const auto& s : report.series)
    runs.push_back({{"epsilon", s.epsilon},
                    {"directory", eps_dir(s.epsilon)},
                    {"rows", s.rows.size()},
                    {"stop_reason", s.stop_reason},
                    {"failure", s.failure}});
  const json j{{"epsilons", report.epsilons},
               {"metrics", metrics},
               {"runs", runs},
               {"min_energy_slope", report.min_energy_slope},
               {"passed", report.passed},
               {"failures", report.failures}};
  {
    std::ofstream out(directory / "report.json", std::ios::trunc);
    if (!out) throw FormatError("cannot write report into " + directory.string());
    out << j.dump(2) << "\n";
  }
  std::ofstream csv(directory / "scan_summary.csv", std::ios::trunc);
  csv << "epsilon";
  for (const auto& m : report.metrics) csv << ",sup_" << m.name;
  csv << "\n";
  for (std::size_t i = 0; i < report.epsilons.size(); ++i) {
    csv << report.epsilons[i];
    for (const auto& m : report.metrics) csv << ',' << m.sup[i];
    csv << "\n";
  }
}

ScanReport load_report(const fs::path& directory) {
  if (!fs::is_directory(directory)) throw ConfigError(directory.string() + " is not a scan directory");
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(directory))
    if (entry.is_directory() && entry.path().filename().string().starts_with("eps_")) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());
  std::vector<ScanSeries> series;
  for (const auto& d : dirs) {
    ScanSeries s;
    if (fs::exists(d / "failure.json")) {
      std::ifstream in(d / "failure.json");
      const json j = json::parse(in);
      s.epsilon = j.at("epsilon").get<double>();
      s.failure = j.at("failure").get<std::string>();
      s.stop_reason = "failed";
    } else {
      std::ifstream in(d / "manifest.json");
      if (!in) throw FormatError("missing manifest in " + d.string());
      const json j = json::parse(in);
      s.epsilon = j.at("params").at("epsilon").get<double>();
      s.stop_reason = j.at("stop_reason").get<std::string>();
      s.rows = read_csv(d / "diagnostics.csv");
    }
    series.push_back(std::move(s));
  }
  if (series.empty()) throw ConfigError("no eps_* runs found in " + directory.string());
  return assemble_report(std::move(series));
}

}  // namespace rotgp
