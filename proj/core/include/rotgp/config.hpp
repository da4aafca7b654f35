#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rotgp/diagnostics.hpp"
#include "rotgp/euler_solver.hpp"
#include "rotgp/gp_solver.hpp"
#include "rotgp/init_data.hpp"

namespace rotgp {

enum class InitialKind {
  /// Smooth bump family built from FamilyShape.
  canonical,
  /// psi-frame wave pair read from a snapshot file.
  snapshot,
};

struct InitialDataSpec {
  InitialKind kind = InitialKind::canonical;
  FamilyShape shape;
  std::string snapshot_path;
};

struct RunConfig {
  SimParams params;
  double length = 12.8;
  int size = 128;
  ObstacleSpec obstacle;
  RotatingFieldSpec rotating;
  TrapPotentialSpec trap;
  bool penalize = false;
  InitialDataSpec initial;

  StepperConfig gp;
  Frame gp_frame = Frame::phi;
  EulerConfig euler;
  double hyperviscosity = 0.0;

  /// Cutoff radius; 0 picks the default for the grid.
  double cutoff_radius = 0.0;
  /// Half width of the momentum window; 0 means L/4.
  double window_half_width = 0.0;
  EnergyVariant energy_variant = EnergyVariant::derivation;

  double cadence = 0.025;
  std::filesystem::path output_dir = "out";
  bool write_all_snapshots = false;
  std::uint64_t seed = 0;
};

/// Derived quantities and warnings of a config.
struct ConfigCheck {
  std::vector<std::string> warnings;
  double gp_step = 0.0;     // policy step at t = 0
  double euler_step = 0.0;  // CFL step at t = 0
  double cutoff_radius = 0.0;
  double window_half_width = 0.0;
};

/// Validates every part; throws ConfigError (or DataError for bad initial
/// data). Warnings cover non-resonant carriers.
ConfigCheck check_config(const RunConfig& config);

RunConfig parse_config(std::string_view json_text);
std::string serialize_config(const RunConfig& config);
RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& config, const std::filesystem::path& path);

/// Pieces built from a config that the drivers share.
struct RunSetup {
  GridPtr grid;
  Model model;
  /// Hydrodynamic profiles and their limit-flow counterpart.
  CanonicalData data;
  /// psi-frame initial pair.
  WavePair initial;
  CutoffField cutoff;
  double window_half_width = 0.0;
};

RunSetup build_setup(const RunConfig& config);

}  // namespace rotgp
