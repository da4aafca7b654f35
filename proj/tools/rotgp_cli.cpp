// Command line front end for the rotgp library.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotgp/config.hpp"
#include "rotgp/errors.hpp"
#include "rotgp/galilean.hpp"
#include "rotgp/run.hpp"
#include "rotgp/snapshot_io.hpp"

namespace {

enum Exit : int { ok = 0, config_error = 2, solver_abort = 3, acceptance_failure = 4 };

struct Common {
  std::string out;
  double cadence = 0.0;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool strict = false;
};

rotgp::RunConfig prepare(const std::string& path, const Common& common) {
  rotgp::RunConfig config = rotgp::load_config(path);
  if (!common.out.empty()) config.output_dir = common.out;
  if (common.cadence > 0.0) config.cadence = common.cadence;
  if (common.seed_set) config.seed = common.seed;
  const rotgp::ConfigCheck check = rotgp::check_config(config);
  for (const auto& w : check.warnings) std::cerr << "warning: " << w << "\n";
  if (common.strict && !check.warnings.empty()) throw rotgp::ConfigError("warnings are fatal under --strict");
  return config;
}

void print_manifest(const rotgp::RunManifest& m) {
  std::cout << "stop: " << m.stop_reason << " at t = " << m.stop_time << "\n"
            << "rows: " << m.rows.size() << "\n"
            << "manifest: " << m.manifest.string() << "\n";
}

void print_report(const rotgp::ScanReport& r) {
  std::printf("%-18s", "epsilon");
  for (double e : r.epsilons) std::printf(" %12g", e);
  std::printf(" %10s  %s\n", "slope", "decreasing");
  for (const auto& m : r.metrics) {
    std::printf("%-18s", m.name.c_str());
    for (double v : m.sup) std::printf(" %12.4e", v);
    std::printf(" %10.4f  %s\n", m.slope, m.decreasing ? "yes" : "no");
  }
  for (const auto& f : r.failures) std::printf("FAIL %s\n", f.c_str());
  std::printf("%s\n", r.passed ? "scan passed" : "scan failed");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw rotgp::ConfigError("bad epsilon value '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-component rotating Gross-Pitaevskii solver and semiclassical-limit harness"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--out", common.out, "Output directory (overrides the config)");
  app.add_option("--cadence", common.cadence, "Diagnostics cadence (overrides the config)")->check(CLI::PositiveNumber);
  app.add_option("--threads", common.threads, "Worker threads for scans")->check(CLI::Range(1u, 1024u));
  auto* seed = app.add_option("--seed", common.seed, "Seed recorded in the manifest (no randomness is used)");
  app.add_flag("--strict", common.strict, "Treat configuration warnings as errors");

  std::string config_path;
  auto* gp = app.add_subcommand("simulate-gp", "GP run with limit reference and diagnostics");
  gp->add_option("config", config_path, "Run config (JSON)")->required()->check(CLI::ExistingFile);

  auto* euler = app.add_subcommand("simulate-euler", "Limit system only");
  euler->add_option("config", config_path, "Run config (JSON)")->required()->check(CLI::ExistingFile);

  std::string eps_text;
  auto* scan = app.add_subcommand("scan-epsilon", "Independent runs over a decreasing list of epsilon");
  scan->add_option("config", config_path, "Base run config (JSON)")->required()->check(CLI::ExistingFile);
  scan->add_option("--eps", eps_text, "Comma separated, strictly decreasing")->required();

  auto* check = app.add_subcommand("check-initdata", "Print the preparedness integrals of the initial data");
  check->add_option("config", config_path, "Run config (JSON)")->required()->check(CLI::ExistingFile);

  std::string snapshot_path, target;
  auto* transform = app.add_subcommand("transform", "Convert a wave-pair snapshot between frames");
  transform->add_option("snapshot", snapshot_path, "Wave-pair snapshot")->required()->check(CLI::ExistingFile);
  transform->add_option("--to", target, "Target frame")->required()->check(CLI::IsMember({"psi", "phi"}));
  transform->add_option("--config", config_path, "Config providing the parameters")->required()->check(CLI::ExistingFile);

  std::string scan_dir;
  auto* report = app.add_subcommand("report", "Rebuild the report of a finished scan");
  report->add_option("scan-dir", scan_dir, "Scan output directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::config_error;
  }
  common.seed_set = seed->count() > 0;

  try {
    if (*gp) {
      print_manifest(rotgp::run_single(prepare(config_path, common)));
    } else if (*euler) {
      print_manifest(rotgp::run_euler(prepare(config_path, common)));
    } else if (*scan) {
      const rotgp::RunConfig config = prepare(config_path, common);
      const rotgp::ScanReport r = rotgp::epsilon_scan(config, parse_list(eps_text), {common.threads});
      print_report(r);
    } else if (*check) {
      const rotgp::RunConfig config = prepare(config_path, common);
      const rotgp::RunSetup s = rotgp::build_setup(config);
      const rotgp::PreparednessReport r = rotgp::well_prepared_report(
          s.data.data, s.data.u0, s.data.rho0, s.model.field->potential(0.0), config.params);
      std::printf("epsilon          %g\n", r.epsilon);
      std::printf("kinetic          %.6e %.6e\n", r.kinetic[0], r.kinetic[1]);
      std::printf("velocity         %.6e %.6e\n", r.velocity[0], r.velocity[1]);
      std::printf("density_gap      %.6e\n", r.density_gap);
      std::printf("overlap          %.6e\n", r.overlap);
      std::printf("assembled        %.6e\n", r.assembled());
      std::printf("h0               %.6e\n", r.h0);
    } else if (*transform) {
      const rotgp::RunConfig config = prepare(config_path, common);
      rotgp::Snapshot snap = rotgp::read_snapshot(snapshot_path);
      auto* pair = std::get_if<rotgp::WavePair>(&snap);
      if (!pair) throw rotgp::ConfigError("transform needs a wave-pair snapshot");
      const rotgp::Frame to = target == "psi" ? rotgp::Frame::psi : rotgp::Frame::phi;
      rotgp::WavePair out = *pair;
      if (pair->frame != to)
        out = to == rotgp::Frame::phi ? rotgp::forward(*pair, config.params) : rotgp::inverse(*pair, config.params);
      const std::filesystem::path src(snapshot_path);
      const std::filesystem::path dir = common.out.empty() ? src.parent_path() : std::filesystem::path(common.out);
      if (!dir.empty()) std::filesystem::create_directories(dir);
      const std::filesystem::path dest = dir / (src.stem().string() + "_" + target + ".snap");
      rotgp::write_snapshot(out, dest);
      std::cout << dest.string() << "\n";
    } else if (*report) {
      const rotgp::ScanReport r = rotgp::load_report(scan_dir);
      rotgp::write_report(r, scan_dir);
      print_report(r);
      return r.passed ? Exit::ok : Exit::acceptance_failure;
    }
  } catch (const rotgp::SolverAbort& e) {
    std::cerr << "solver abort: " << e.what() << " (last good time " << e.last_good_time() << ")\n";
    return Exit::solver_abort;
  } catch (const rotgp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return Exit::config_error;
  } catch (const rotgp::DataError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return Exit::config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return Exit::ok;
}
