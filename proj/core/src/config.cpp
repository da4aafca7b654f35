#include "rotgp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rotgp/errors.hpp"
#include "rotgp/galilean.hpp"
#include "rotgp/snapshot_io.hpp"
#include "rotgp/spectral.hpp"

namespace rotgp {
namespace {

using nlohmann::json;

json vec(Vec2 v) { return json::array({v.x, v.y}); }

// Reads keys from one JSON object, rejecting keys nobody asked about.
class Section {
 public:
  Section(const json& j, std::string name, std::initializer_list<const char*> keys) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError("'" + name_ + "' must be an object");
    for (const auto& [key, value] : j_.items()) {
      (void)value;
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
        throw ConfigError("unknown key '" + key + "' in '" + name_ + "'");
    }
  }

  template <class T>
  void read(const char* key, T& out) const {
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError("bad value for '" + name_ + "." + key + "'");
    }
  }
  void read(const char* key, Vec2& out) const {
    std::array<double, 2> v{out.x, out.y};
    read(key, v);
    out = {v[0], v[1]};
  }
  template <class E>
  void read_enum(const char* key, E& out, std::initializer_list<std::pair<const char*, E>> names) const {
    if (!j_.contains(key)) return;
    std::string s;
    read(key, s);
    for (const auto& [n, e] : names)
      if (s == n) {
        out = e;
        return;
      }
    throw ConfigError("bad value '" + s + "' for '" + name_ + "." + key + "'");
  }
  bool has(const char* key) const { return j_.contains(key); }
  Section sub(const char* key, std::initializer_list<const char*> keys) const {
    static const json empty = json::object();
    return Section(j_.contains(key) ? j_.at(key) : empty, name_ + "." + key, keys);
  }

 private:
  const json& j_;
  std::string name_;
};

const std::initializer_list<std::pair<const char*, ParamMode>> kModes{{"theorem", ParamMode::theorem},
                                                                     {"exploratory", ParamMode::exploratory}};
const std::initializer_list<std::pair<const char*, ObstacleKind>> kObstacles{{"none", ObstacleKind::none},
                                                                            {"disk", ObstacleKind::disk}};
const std::initializer_list<std::pair<const char*, RotatingMode>> kRotating{
    {"rotating_blend", RotatingMode::rotating_blend}, {"uniform_constant", RotatingMode::uniform_constant}};
const std::initializer_list<std::pair<const char*, InitialKind>> kInitial{{"canonical", InitialKind::canonical},
                                                                         {"snapshot", InitialKind::snapshot}};
const std::initializer_list<std::pair<const char*, GpScheme>> kSchemes{
    {"if_rk4", GpScheme::integrating_factor_rk4}, {"strang", GpScheme::strang}};
const std::initializer_list<std::pair<const char*, Frame>> kFrames{{"psi", Frame::psi}, {"phi", Frame::phi}};
const std::initializer_list<std::pair<const char*, EnergyVariant>> kVariants{
    {"statement", EnergyVariant::statement}, {"derivation", EnergyVariant::derivation}};

template <class E>
std::string name_of(E e, std::initializer_list<std::pair<const char*, E>> names) {
  for (const auto& [n, v] : names)
    if (v == e) return n;
  return "?";
}

json to_json(const RunConfig& c) {
  const SimParams& p = c.params;
  const FamilyShape& f = c.initial.shape;
  return json{
      {"params",
       {{"epsilon", p.epsilon},
        {"eta", p.eta},
        {"gamma", p.gamma},
        {"a", p.a},
        {"u_inf", vec(p.u_inf)},
        {"a_inf", vec(p.a_inf)},
        {"v_inf", p.v_inf},
        {"horizon", p.horizon},
        {"mode", name_of(p.mode, kModes)}}},
      {"grid",
       {{"length", c.length},
        {"size", c.size},
        {"obstacle",
         {{"kind", name_of(c.obstacle.kind, kObstacles)},
          {"center", vec(c.obstacle.center)},
          {"radius", c.obstacle.radius},
          {"penalization", c.obstacle.penalization}}},
        {"penalize", c.penalize}}},
      {"rotating_field",
       {{"mode", name_of(c.rotating.mode, kRotating)},
        {"r1", c.rotating.r1},
        {"r2", c.rotating.r2},
        {"omega",
         {{"base", c.rotating.omega.base},
          {"amplitude", c.rotating.omega.amplitude},
          {"frequency", c.rotating.omega.frequency}}}}},
      {"trap",
       {{"amplitude", c.trap.amplitude},
        {"width", c.trap.width},
        {"center", vec(c.trap.center)},
        {"time_amplitude", c.trap.time_amplitude},
        {"time_frequency", c.trap.time_frequency}}},
      {"initial_data",
       {{"kind", name_of(c.initial.kind, kInitial)},
        {"amplitude", f.amplitude},
        {"phase_amplitude", f.phase_amplitude},
        {"width", f.width},
        {"center", vec(f.center)},
        {"second_amplitude", f.second_amplitude},
        {"second_power", f.second_power},
        {"second_center", vec(f.second_center)},
        {"second_width", f.second_width},
        {"snapshot", c.initial.snapshot_path}}},
      {"gp",
       {{"dt", c.gp.dt},
        {"dt_factor", c.gp.dt_factor},
        {"stability_factor", c.gp.stability_factor},
        {"scheme", name_of(c.gp.scheme, kSchemes)},
        {"dealias", c.gp.dealias},
        {"frame", name_of(c.gp_frame, kFrames)}}},
      {"euler",
       {{"dt", c.euler.dt},
        {"cfl", c.euler.cfl},
        {"smoothness_tol", c.euler.smoothness_tol},
        {"hyperviscosity", c.hyperviscosity}}},
      {"diagnostics",
       {{"cutoff_radius", c.cutoff_radius},
        {"window_half_width", c.window_half_width},
        {"energy_variant", name_of(c.energy_variant, kVariants)}}},
      {"output",
       {{"directory", c.output_dir.string()},
        {"cadence", c.cadence},
        {"all_snapshots", c.write_all_snapshots},
        {"seed", c.seed}}},
  };
}

RunConfig from_json(const json& j) {
  RunConfig c;
  const Section root(j, "config",
                     {"params", "grid", "rotating_field", "trap", "initial_data", "gp", "euler", "diagnostics",
                      "output"});
  {
    const Section s = root.sub("params", {"epsilon", "eta", "gamma", "a", "u_inf", "a_inf", "v_inf", "horizon", "mode"});
    SimParams& p = c.params;
    s.read("epsilon", p.epsilon);
    s.read("eta", p.eta);
    s.read("gamma", p.gamma);
    s.read("a", p.a);
    s.read("u_inf", p.u_inf);
    s.read("a_inf", p.a_inf);
    s.read("v_inf", p.v_inf);
    s.read("horizon", p.horizon);
    s.read_enum("mode", p.mode, kModes);
  }
  {
    const Section s = root.sub("grid", {"length", "size", "obstacle", "penalize"});
    s.read("length", c.length);
    s.read("size", c.size);
    s.read("penalize", c.penalize);
    const Section o = s.sub("obstacle", {"kind", "center", "radius", "penalization"});
    o.read_enum("kind", c.obstacle.kind, kObstacles);
    o.read("center", c.obstacle.center);
    o.read("radius", c.obstacle.radius);
    o.read("penalization", c.obstacle.penalization);
  }
  {
    const Section s = root.sub("rotating_field", {"mode", "r1", "r2", "omega"});
    s.read_enum("mode", c.rotating.mode, kRotating);
    s.read("r1", c.rotating.r1);
    s.read("r2", c.rotating.r2);
    const Section o = s.sub("omega", {"base", "amplitude", "frequency"});
    o.read("base", c.rotating.omega.base);
    o.read("amplitude", c.rotating.omega.amplitude);
    o.read("frequency", c.rotating.omega.frequency);
  }
  {
    const Section s = root.sub("trap", {"amplitude", "width", "center", "time_amplitude", "time_frequency"});
    s.read("amplitude", c.trap.amplitude);
    s.read("width", c.trap.width);
    s.read("center", c.trap.center);
    s.read("time_amplitude", c.trap.time_amplitude);
    s.read("time_frequency", c.trap.time_frequency);
  }
  {
    const Section s = root.sub("initial_data", {"kind", "amplitude", "phase_amplitude", "width", "center",
                                                "second_amplitude", "second_power", "second_center", "second_width",
                                                "snapshot"});
    FamilyShape& f = c.initial.shape;
    s.read_enum("kind", c.initial.kind, kInitial);
    s.read("amplitude", f.amplitude);
    s.read("phase_amplitude", f.phase_amplitude);
    s.read("width", f.width);
    s.read("center", f.center);
    s.read("second_amplitude", f.second_amplitude);
    s.read("second_power", f.second_power);
    s.read("second_center", f.second_center);
    s.read("second_width", f.second_width);
    s.read("snapshot", c.initial.snapshot_path);
  }
  {
    const Section s = root.sub("gp", {"dt", "dt_factor", "stability_factor", "scheme", "dealias", "frame"});
    s.read("dt", c.gp.dt);
    s.read("dt_factor", c.gp.dt_factor);
    s.read("stability_factor", c.gp.stability_factor);
    s.read_enum("scheme", c.gp.scheme, kSchemes);
    s.read("dealias", c.gp.dealias);
    s.read_enum("frame", c.gp_frame, kFrames);
  }
  {
    const Section s = root.sub("euler", {"dt", "cfl", "smoothness_tol", "hyperviscosity"});
    s.read("dt", c.euler.dt);
    s.read("cfl", c.euler.cfl);
    s.read("smoothness_tol", c.euler.smoothness_tol);
    s.read("hyperviscosity", c.hyperviscosity);
  }
  {
    const Section s = root.sub("diagnostics", {"cutoff_radius", "window_half_width", "energy_variant"});
    s.read("cutoff_radius", c.cutoff_radius);
    s.read("window_half_width", c.window_half_width);
    s.read_enum("energy_variant", c.energy_variant, kVariants);
  }
  {
    const Section s = root.sub("output", {"directory", "cadence", "all_snapshots", "seed"});
    std::string dir = c.output_dir.string();
    s.read("directory", dir);
    c.output_dir = dir;
    s.read("cadence", c.cadence);
    s.read("all_snapshots", c.write_all_snapshots);
    s.read("seed", c.seed);
  }
  return c;
}

CanonicalData from_pair(const WavePair& psi, const Model& model) {
  const SimParams& p = model.params;
  const GridPtr& grid = psi.grid();
  CanonicalData out{extract_madelung(psi, p), ScalarField(grid), VectorField(grid)};
  const auto rho = densities(psi);
  const auto j = momenta(psi, model.field->potential(psi.time), p.epsilon, p.eta);
  const VectorField a = model.field->potential(psi.time);
  const double w = p.eta == 0.0 ? 0.0 : p.gauge_weight();
  for (std::size_t i = 0; i < grid->count(); ++i) {
    const double r = rho[0][i] + rho[1][i];
    if (r < kDensityFloor) throw DataError("initial snapshot has a vacuum region; no limit velocity");
    out.rho0[i] = r;
    out.u0.set(i, (1.0 / r) * (j[0][i] + j[1][i]) + w * a[i]);
  }
  return out;
}

}  // namespace

ConfigCheck check_config(const RunConfig& config) {
  const RunSetup setup = build_setup(config);
  const SimParams& p = config.params;
  if (!(config.cadence > 0.0)) throw ConfigError("output cadence must be positive");
  if (!(p.horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (config.hyperviscosity < 0.0) throw ConfigError("hyperviscosity must be nonnegative");

  ConfigCheck check;
  check.cutoff_radius = setup.cutoff.radius;
  check.window_half_width = setup.window_half_width;
  if (!is_resonant(p.u_inf, config.length, p.epsilon)) {
    std::ostringstream msg;
    msg << "far-field velocity (" << p.u_inf.x << ", " << p.u_inf.y << ") is not resonant on the box at epsilon "
        << p.epsilon << "; psi-frame snapshots keep a separate carrier";
    check.warnings.push_back(msg.str());
  }

  const Frame frame = config.gp_frame;
  const GpSolver solver(setup.model, frame, config.gp, frame == Frame::psi ? p.u_inf : Vec2{});
  const WavePair start = frame == Frame::psi ? setup.initial : forward(setup.initial, p);
  check.gp_step = solver.max_step(start);

  EulerModel em = make_euler_model(setup.model);
  HydroState h{0.0, setup.data.rho0, setup.data.u0};
  for (double& v : h.rho_hat.values()) v -= 1.0;
  for (std::size_t i = 0; i < h.u_hat.size(); ++i) h.u_hat.set(i, h.u_hat[i] - em.u_inf);
  check.euler_step = config.euler.dt > 0.0 ? config.euler.dt : euler_cfl_step(h, em, config.euler.cfl);
  return check;
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

std::string serialize_config(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void save_config(const RunConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write config " + path.string());
  out << serialize_config(config);
}

RunSetup build_setup(const RunConfig& config) {
  config.params.validate();
  RunSetup s;
  s.grid = make_grid(config.length, config.size, config.obstacle);
  s.model = make_model(config.params, config.rotating, config.trap, s.grid, config.penalize);
  const SimParams& p = config.params;
  if (config.initial.kind == InitialKind::canonical) {
    s.data = canonical_family(p, *s.model.field, config.initial.shape);
    s.initial = madelung(s.data.data, p);
  } else {
    Snapshot snap = read_snapshot(config.initial.snapshot_path, s.grid);
    auto* pair = std::get_if<WavePair>(&snap);
    if (!pair || pair->frame != Frame::psi) throw ConfigError("initial snapshot must hold a psi-frame wave pair");
    s.initial = rebase_carrier(*pair, p.u_inf, p.epsilon);
    s.data = from_pair(s.initial, s.model);
  }
  const double radius = config.cutoff_radius > 0.0 ? config.cutoff_radius : default_cutoff_radius(*s.grid);
  s.cutoff = build_cutoff(s.grid, radius);
  s.window_half_width = config.window_half_width > 0.0 ? config.window_half_width : 0.25 * config.length;
  if (s.window_half_width > 0.5 * config.length) throw ConfigError("momentum window exceeds the box");
  return s;
}

}  // namespace rotgp
