#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "gaugewave/mcsh.hpp"
#include "gaugewave/mkg.hpp"

namespace gaugewave::evolve {

enum class Scheme { leapfrog, rk4 };
enum class Formulation { raw, decomposed };
enum class System { mkg, mcsh };

using SystemState = std::variant<mkg::State, mcsh::State>;

System system_of(const SystemState& s);
const Grid& grid_of(const SystemState& s);
double time_of(const SystemState& s);

// Second-order fields q with velocities p, plus first-order fields c (the curl-free
// part of A in the decomposed formulation).
struct PhaseState {
  std::vector<SpectralField> q, p, c;
  double time = 0.0;

  bool all_finite() const;
};

struct PhaseRate {
  std::vector<SpectralField> dq, dp, dc;
};

class Dynamics {
 public:
  virtual ~Dynamics() = default;

  virtual PhaseState to_phase(const SystemState& s) const = 0;
  virtual SystemState to_state(const PhaseState& s) const = 0;

  // position-dependent accelerations of p
  virtual std::vector<SpectralField> forces(const PhaseState& s) const = 0;
  // p += h (forces + velocity-dependent terms). `leading` marks the kick before the drift.
  virtual void kick(PhaseState& s, double h, const std::vector<SpectralField>& f, bool leading) const;
  // dc/dt
  virtual std::vector<SpectralField> first_order_rate(const PhaseState& s) const;
  // full first-order right-hand side
  virtual PhaseRate rate(const PhaseState& s) const = 0;
};

std::unique_ptr<Dynamics> make_dynamics(System sys, Formulation form, const mcsh::Params& p = {});

// Cayley (implicit midpoint) solve of p' = p + h (F - kappa J (p + p')/2) for a 2-vector of coefficients.
// With zero_mode_only the rotation acts on the mean only and other modes take the explicit kick.
void rotation_kick(SpectralField& p0, SpectralField& p1, const SpectralField& f0, const SpectralField& f1, double h,
                   double kappa, bool zero_mode_only);

}  // namespace gaugewave::evolve
