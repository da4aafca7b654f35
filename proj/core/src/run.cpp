#include "rotgp/run.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include "rotgp/errors.hpp"
#include "rotgp/galilean.hpp"
#include "rotgp/snapshot_io.hpp"
#include "rotgp/spectral.hpp"

namespace rotgp {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view s) {
  if (s == "nan") return kNaN;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw FormatError("bad number '" + std::string(s) + "' in diagnostics CSV");
  return v;
}

std::vector<double> flatten(const DiagnosticsRecord& r) {
  return {r.time,
          r.mass[0],
          r.mass[1],
          r.energy,
          r.h_wave,
          r.h_hydro,
          r.floor_skipped ? 1.0 : 0.0,
          r.overlap,
          r.density_gap,
          r.momentum_gap,
          r.component_gap[0],
          r.component_gap[1],
          r.mass_residual[0],
          r.mass_residual[1],
          r.momentum_residual,
          r.energy_residual};
}

DiagnosticsRecord unflatten(const std::vector<double>& v) {
  DiagnosticsRecord r;
  r.time = v[0];
  r.mass = {v[1], v[2]};
  r.energy = v[3];
  r.h_wave = v[4];
  r.h_hydro = v[5];
  r.floor_skipped = v[6] != 0.0;
  r.overlap = v[7];
  r.density_gap = v[8];
  r.momentum_gap = v[9];
  r.component_gap = {v[10], v[11]};
  r.mass_residual = {v[12], v[13]};
  r.momentum_residual = v[14];
  r.energy_residual = v[15];
  return r;
}

std::string frame_tag(std::size_t i) {
  std::ostringstream s;
  s << std::setw(4) << std::setfill('0') << i;
  return s.str();
}

json record_json(const DiagnosticsRecord& r) {
  json j = json::object();
  const auto values = flatten(r);
  for (std::size_t c = 0; c < values.size(); ++c)
    j[csv_columns()[c]] = std::isnan(values[c]) ? json(nullptr) : json(values[c]);
  return j;
}

json manifest_json(const RunConfig& config, const RunManifest& m) {
  json snaps = json::array();
  for (const auto& s : m.snapshots) snaps.push_back(s.filename().string());
  json params = json::parse(serialize_config(config));
  return json{{"params", params["params"]},
              {"grid", params["grid"]},
              {"versions", {{"rotgp", ROTGP_VERSION}, {"fftw", std::string(fftw_version)}}},
              {"stop_reason", m.stop_reason},
              {"stop_time", m.stop_time},
              {"wall_seconds", m.wall_seconds},
              {"seed", config.seed},
              {"warnings", m.warnings},
              {"artifacts", {{"config", "config.json"}, {"csv", m.csv.filename().string()}, {"snapshots", snaps}}},
              {"final", m.rows.empty() ? json(nullptr) : record_json(m.rows.back())}};
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

HydroState initial_hydro(const RunSetup& setup, Vec2 u_inf) {
  HydroState h{0.0, setup.data.rho0, setup.data.u0};
  for (double& v : h.rho_hat.values()) v -= 1.0;
  for (std::size_t i = 0; i < h.u_hat.size(); ++i) h.u_hat.set(i, h.u_hat[i] - u_inf);
  return h;
}

DiagnosticsRecord record_at(const LabView& lab, const HydroState& limit, const RunSetup& setup, const RunConfig& config) {
  const SimParams& p = config.params;
  const Model& model = setup.model;
  const GridPtr& grid = setup.grid;
  const Vec2 u_inf = p.limit_far_velocity();
  const ScalarField rho = limit_density(limit);
  const VectorField u = limit_velocity(limit, u_inf);

  DiagnosticsRecord r;
  r.time = lab.time;
  const double area = grid->length() * grid->length();
  for (int k = 0; k < 2; ++k) r.mass[k] = integrate(lab.density[k]) - p.a[k] * area;
  r.energy = energy_chi(lab, model, setup.cutoff);
  r.h_wave = modulated_energy(lab, rho, u, p);
  const HydroEnergy hh = modulated_energy_hydro(lab.density, lab.current, rho, u, p.epsilon, p.gamma);
  r.h_hydro = hh.value;
  r.floor_skipped = hh.floor_skipped;
  const ConvergenceMetrics m = convergence_metrics(lab, limit, u_inf, setup.window_half_width);
  r.overlap = m.overlap;
  r.density_gap = m.density_gap;
  r.momentum_gap = m.momentum_gap;
  r.component_gap = m.component_gap;
  return r;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "time",         "mass_1",          "mass_2",          "energy",          "h_wave",
      "h_hydro",      "floor_skipped",   "overlap",         "density_gap",     "momentum_gap",
      "component_gap_1", "component_gap_2", "mass_residual_1", "mass_residual_2", "momentum_residual",
      "energy_residual"};
  return cols;
}

void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& rows) {
  const auto& cols = csv_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << "\n";
  for (const auto& r : rows) {
    const auto v = flatten(r);
    for (std::size_t c = 0; c < v.size(); ++c) out << (c ? "," : "") << number(v[c]);
    out << "\n";
  }
}

std::vector<DiagnosticsRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty diagnostics CSV");
  std::string expected;
  for (std::size_t c = 0; c < csv_columns().size(); ++c) expected += (c ? "," : "") + csv_columns()[c];
  if (line != expected) throw FormatError("diagnostics CSV header does not match");
  std::vector<DiagnosticsRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      v.push_back(parse_number(std::string_view(line).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (v.size() != csv_columns().size()) throw FormatError("diagnostics CSV row has the wrong number of fields");
    rows.push_back(unflatten(v));
  }
  return rows;
}

void write_csv(const fs::path& path, const std::vector<DiagnosticsRecord>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  write_csv(out, rows);
}

std::vector<DiagnosticsRecord> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_csv(in);
}

HydroTrajectory limit_reference(const RunConfig& config, const RunSetup& setup) {
  EulerModel em = make_euler_model(setup.model);
  em.hyperviscosity = config.hyperviscosity;
  EulerEvolveOptions opts;
  opts.cadence = config.cadence;
  return euler_evolve(initial_hydro(setup, em.u_inf), em, config.params.horizon, config.euler, opts);
}

RunManifest run_against(const RunConfig& config, const RunSetup& setup, const HydroTrajectory& reference) {
  const auto started = std::chrono::steady_clock::now();
  const SimParams& p = config.params;
  RunManifest m;
  m.directory = config.output_dir;
  fs::create_directories(m.directory);
  m.stop_reason = reference.stop_reason;
  m.stop_time = reference.stop_time;
  if (!is_resonant(p.u_inf, config.length, p.epsilon))
    m.warnings.push_back("far-field velocity is not resonant on the box");

  const Frame frame = config.gp_frame;
  const GpSolver solver(setup.model, frame, config.gp, frame == Frame::psi ? p.u_inf : Vec2{});
  const WavePair start = frame == Frame::psi ? setup.initial : forward(setup.initial, p);
  GpEvolveOptions opts;
  opts.cadence = config.cadence;
  const GpTrajectory traj = solver.evolve(start, reference.stop_time, opts);
  if (traj.snapshots.size() != reference.snapshots.size())
    throw ConfigError("GP and limit trajectories are out of step");

  std::vector<LabView> labs;
  labs.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) labs.push_back(lab_view(s, setup.model));
  for (std::size_t i = 0; i < labs.size(); ++i) {
    DiagnosticsRecord r = record_at(labs[i], reference.snapshots[i], setup, config);
    if (i > 0 && i + 1 < labs.size()) {
      r.mass_residual = mass_residual(labs[i - 1], labs[i], labs[i + 1]);
      r.momentum_residual = momentum_residual(labs[i - 1], labs[i], labs[i + 1], setup.model);
      r.energy_residual =
          energy_rate_residual(labs[i - 1], labs[i], labs[i + 1], setup.model, setup.cutoff, config.energy_variant)
              .residual;
    }
    m.rows.push_back(r);
  }

  save_config(config, m.directory / "config.json");
  m.csv = m.directory / "diagnostics.csv";
  write_csv(m.csv, m.rows);
  const fs::path snap_dir = m.directory / "snapshots";
  fs::create_directories(snap_dir);
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    if (!config.write_all_snapshots && i != 0 && i + 1 != traj.snapshots.size()) continue;
    m.snapshots.push_back(snap_dir / ("gp_" + frame_tag(i) + ".snap"));
    write_snapshot(traj.snapshots[i], m.snapshots.back());
    m.snapshots.push_back(snap_dir / ("limit_" + frame_tag(i) + ".snap"));
    write_snapshot(reference.snapshots[i], m.snapshots.back());
  }
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  m.manifest = m.directory / "manifest.json";
  write_json(manifest_json(config, m), m.manifest);
  return m;
}

RunManifest run_single(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const RunSetup setup = build_setup(config);
  const HydroTrajectory reference = limit_reference(config, setup);
  RunManifest m = run_against(config, setup, reference);
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_json(manifest_json(config, m), m.manifest);
  return m;
}

RunManifest run_euler(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const RunSetup setup = build_setup(config);
  const HydroTrajectory reference = limit_reference(config, setup);
  RunManifest m;
  m.directory = config.output_dir;
  fs::create_directories(m.directory);
  m.stop_reason = reference.stop_reason;
  m.stop_time = reference.stop_time;

  save_config(config, m.directory / "config.json");
  m.csv = m.directory / "limit.csv";
  {
    std::ofstream out(m.csv, std::ios::trunc);
    if (!out) throw FormatError("cannot write " + m.csv.string());
    out << "time,rho_hat_l2,u_hat_l2,tail_fraction\n";
    for (const auto& s : reference.snapshots)
      out << number(s.time) << ',' << number(l2_norm(s.rho_hat)) << ',' << number(l2_norm(s.u_hat)) << ','
          << number(smoothness_indicator(s)) << "\n";
  }
  const fs::path snap_dir = m.directory / "snapshots";
  fs::create_directories(snap_dir);
  for (std::size_t i = 0; i < reference.snapshots.size(); ++i) {
    if (!config.write_all_snapshots && i != 0 && i + 1 != reference.snapshots.size()) continue;
    m.snapshots.push_back(snap_dir / ("limit_" + frame_tag(i) + ".snap"));
    write_snapshot(reference.snapshots[i], m.snapshots.back());
  }
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  m.manifest = m.directory / "manifest.json";
  write_json(manifest_json(config, m), m.manifest);
  return m;
}

}  // namespace rotgp
