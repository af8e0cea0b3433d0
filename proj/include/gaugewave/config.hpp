#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "gaugewave/evolve.hpp"

namespace gaugewave::cli {

enum class DataKind { random, single_mode, file };

struct DataConfig {
  DataKind kind = DataKind::random;
  std::uint64_t seed = 0;
  double xi0 = 0.0;
  double amplitude = 0.0;
  std::array<int, 3> mode{0, 0, 0};
  std::filesystem::path path;  // directory of per-field snapshots
};

struct OutputConfig {
  std::filesystem::path directory;
  bool csv = false;
  bool jsonl = false;
  bool snapshots = false;
};

// Sections [system] [grid] [integrator] [data] [output]; every key that applies is mandatory.
//   [system]      name = mkg | mcsh; mcsh also e, kappa, v
//   [grid]        n, box_length (dim is 3 for mkg, 2 for mcsh)
//   [integrator]  scheme = leapfrog | rk4, dt, t_final, snapshot_every, formulation = raw | decomposed,
//                 regauge_every = none | <steps>
//   [data]        kind = random | single_mode | file, support_diameter = periodic | <length>
//                 random: seed, xi0, amplitude; single_mode: mode (integers), amplitude; file: path
//   [output]      directory, formats (any of csv jsonl snapshots)
struct RunConfig {
  evolve::System system = evolve::System::mkg;
  Grid grid;
  mcsh::Params params;
  evolve::IntegratorConfig integrator;
  DataConfig data;
  OutputConfig output;
};

// Throws ConfigError carrying the offending line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// random: admissible random data; single_mode: phi = amplitude cos(xi.x) at rest, other fields zero;
// file: snapshots named after the state fields (A0, dA0, phi, dphi, N, dN, ...)
evolve::SystemState build_initial(const RunConfig& cfg);

void write_state(const std::filesystem::path& dir, const evolve::SystemState& s);
evolve::SystemState read_state(const std::filesystem::path& dir, evolve::System sys);

}  // namespace gaugewave::cli
