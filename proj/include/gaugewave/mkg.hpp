#pragma once

#include "gaugewave/fft.hpp"
#include "gaugewave/field.hpp"

// Maxwell-Klein-Gordon in temporal gauge, D = d - iA, unit charge:
//   dtt A = lap A - grad div A - Im(phi conj(D phi))
//   dtt phi = D_j D_j phi
// with Gauss law  -div dt A - Im(phi conj dt phi) = 0.
namespace gaugewave::mkg {

struct State {
  VectorField a;
  VectorField da;
  SpectralField phi;
  SpectralField dphi;
  double time = 0.0;

  static State zero(const Grid& g);
  const Grid& grid() const { return phi.grid(); }
  void validate() const;
};

// A = a_cf + a_df; only the df part carries its own velocity.
struct Split {
  VectorField a_cf;
  VectorField a_df;
  VectorField da_df;
  SpectralField phi;
  SpectralField dphi;
  double time = 0.0;
};

struct Accel {
  VectorField dda;
  SpectralField ddphi;
};

struct SplitRate {
  VectorField da_cf;
  VectorField dda_df;
  SpectralField ddphi;
};

// mu = 0: dt phi; mu = i: d_i phi - i A_i phi
SpectralField covariant_derivative(const State& s, int mu);
double energy(const State& s);
// energy density sampled on the padded grid
RealSamples energy_density(const State& s);

Accel rhs_raw(const State& s);
// accelerations depend on positions only
Accel forces(const VectorField& a, const SpectralField& phi);
SplitRate rhs_decomposed(const Split& s);

Split split(const State& s);
State recompose(const Split& s);
void check_split(const Split& s);

// Pi Im(phi conj dphi)
SpectralField charge_density(const SpectralField& phi, const SpectralField& dphi);
// dt A_cf fixed by the Gauss law
VectorField constraint_rate(const SpectralField& phi, const SpectralField& dphi);
// its time derivative along the flow, given dtt phi
VectorField constraint_acceleration(const SpectralField& phi, const SpectralField& ddphi);

}  // namespace gaugewave::mkg
