#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "gaugewave/dynamics.hpp"

namespace gaugewave::evolve {

// One diagnostics row; slack = bound - value, negative when a growth bound fails.
struct RunRow {
  long step = 0;
  double t = 0.0;
  double energy = 0.0;
  double gauss_l2 = 0.0;
  double l2_a = 0.0;
  double l2_phi = 0.0;
  double l2_n = 0.0;
  double h1dot_a = 0.0;
  double h1dot_phi = 0.0;
  double a_slack = 0.0;
  double phi_slack = 0.0;
  double n_slack = std::numeric_limits<double>::quiet_NaN();
  // L2 distance to an unregauged run; NaN when no regauging took place
  double gauge_defect = std::numeric_limits<double>::quiet_NaN();
};

struct RunRecord {
  System system = System::mkg;
  std::vector<RunRow> rows;
  long steps = 0;
};

}  // namespace gaugewave::evolve
