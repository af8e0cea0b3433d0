#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gaugewave/dynamics.hpp"
#include "gaugewave/error.hpp"
#include "gaugewave/gauge.hpp"
#include "gaugewave/run_record.hpp"

namespace gaugewave::evolve {

struct IntegratorConfig {
  Scheme scheme = Scheme::leapfrog;
  double dt = 1e-3;
  double t_final = 1.0;
  long snapshot_every = 100;
  Formulation formulation = Formulation::raw;
  std::optional<long> regauge_every;
  // diameter of the data support; unset for periodic data, which has no light cone to guard
  std::optional<double> support_diameter;

  // dt positive, CFL, t_final a whole number of steps, light cone inside the box
  void validate(const Grid& g) const;
  long steps() const;
};

// dt |xi|_max <= 1: the leapfrog limit 2 with safety factor 1/2
void check_cfl(const Grid& g, double dt);

class Integrator {
 public:
  Integrator(const Dynamics& dyn, Scheme scheme, double dt);
  // advances by dt; forces are reused between leapfrog steps until reset()
  void step(PhaseState& s);
  void reset() { cached_.clear(); }
  double dt() const { return dt_; }

 private:
  const Dynamics& dyn_;
  Scheme scheme_;
  double dt_;
  std::vector<SpectralField> cached_;
};

PhaseState step(const PhaseState& s, const Dynamics& dyn, Scheme scheme, double dt);

struct BlowUpError : Error {
  BlowUpError(const std::string& what, RunRecord record, SystemState last_good)
      : Error(what), record(std::move(record)), last_good(std::move(last_good)) {}
  RunRecord record;
  SystemState last_good;
};

using SnapshotSink = std::function<void(const SystemState&, long step)>;

struct RunResult {
  RunRecord record;
  SystemState final_state;
};

RunRow diagnostics(const SystemState& s, const mcsh::Params& p);
SystemState transform(const SystemState& s, const gauge::GaugeFunction& chi, const mcsh::Params& p);
SpectralField gauss_residual(const SystemState& s, const mcsh::Params& p);
// L2 distance over all fields and velocities
double state_distance(const SystemState& a, const SystemState& b);

// Evolves to cfg.t_final, recording a row at step 0, every snapshot_every steps and at the end.
// With regauge_every, each segment is evolved in the Coulomb gauge of its starting A and mapped
// back; rows then carry the L2 distance to an unregauged run.
RunResult run(const SystemState& initial, const IntegratorConfig& cfg, const mcsh::Params& p = {},
              const SnapshotSink& sink = {});

// L2 differences of gauge-invariant observables between two states at the same time.
struct DefectReport {
  double phi_modulus = 0.0;
  double curvature = 0.0;     // F_ij
  double electric = 0.0;      // F_0i = dt A_i
  double energy_density = 0.0;
  double max() const;
};

DefectReport compare_observables(const SystemState& a, const SystemState& b, const mcsh::Params& p = {});
// raw and decomposed runs from the same data and cfg (formulation ignored), compared at t_final
DefectReport cross_validate(const SystemState& initial, IntegratorConfig cfg, const mcsh::Params& p = {});

}  // namespace gaugewave::evolve
