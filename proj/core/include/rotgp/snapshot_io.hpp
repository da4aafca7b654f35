#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>

#include "rotgp/euler_solver.hpp"
#include "rotgp/wave_pair.hpp"

namespace rotgp {

// Binary field snapshots. Layout, all little endian:
//   8 bytes   magic "ROTGPSNP"
//   u32       format version
//   f64, u32  box length L, grid size N
//   u32       kind tag
//   kind header (wave pair: u32 frame, f64 time, 2 x f64 carrier;
//                hydro: f64 time; others: none)
//   f64 data in storage order (x1 fastest), complex values as re, im;
//   multi-field kinds store their fields one after another.

inline constexpr std::uint32_t kSnapshotVersion = 1;

enum class SnapshotKind : std::uint32_t { scalar = 1, vector = 2, complex = 3, wave_pair = 4, hydro = 5 };

using Snapshot = std::variant<ScalarField, VectorField, ComplexField, WavePair, HydroState>;

std::string encode_snapshot(const Snapshot& snapshot);
/// Fields are placed on `grid` when it matches the stored L and N, else on
/// a fresh obstacle-free grid. Throws FormatError on any mismatch.
Snapshot decode_snapshot(const std::string& bytes, const GridPtr& grid = nullptr);

void write_snapshot(const Snapshot& snapshot, const std::filesystem::path& path);
Snapshot read_snapshot(const std::filesystem::path& path, const GridPtr& grid = nullptr);

}  // namespace rotgp
