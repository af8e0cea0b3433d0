#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gaugewave/field.hpp"

namespace gaugewave {

// Text header terminated by a line "end", then little-endian float64 (re, im)
// pairs in row-major lattice order:
//   GAUGEWAVE-SNAPSHOT 1
//   dim 3
//   n 32
//   box_length <L, %.17g>
//   field phi
//   reality complex
//   normalization D2
//   time 0
//   end
struct Snapshot {
  std::string name;
  double time = 0.0;
  SpectralField field;
};

void write_snapshot(const std::filesystem::path& path, const SpectralField& f, std::string_view name, double time);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace gaugewave
