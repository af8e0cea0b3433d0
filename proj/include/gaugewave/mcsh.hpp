#pragma once

#include "gaugewave/fft.hpp"
#include "gaugewave/field.hpp"

// Maxwell-Chern-Simons-Higgs in temporal gauge, nontopological branch, D = d - ieA,
// N = Ntilde + e v^2 / kappa, U = 1/2 (e|phi|^2 + kappa Ntilde)^2 + e^2 N^2 |phi|^2:
//   dtt A = lap A - grad div A - kappa J dt A - 2e Im(phi conj(D phi)),   J(v1, v2) = (v2, -v1)
//   dtt phi = D_j D_j phi - U_rho phi
//   dtt Ntilde = lap Ntilde - U_N
// with Gauss law  div dt A + kappa F12 + 2e Im(phi conj dt phi) = 0.
namespace gaugewave::mcsh {

struct Params {
  double e = 1.0;
  double kappa = 1.0;
  double v = 1.0;

  void validate() const;
  // e v^2 / kappa, the vacuum value of N
  double n_shift() const { return e * v * v / kappa; }
};

struct State {
  VectorField a;
  VectorField da;
  SpectralField phi;
  SpectralField dphi;
  SpectralField n_tilde;
  SpectralField dn_tilde;
  double time = 0.0;

  static State zero(const Grid& g);
  const Grid& grid() const { return phi.grid(); }
  void validate() const;
};

struct Split {
  VectorField a_cf;
  VectorField a_df;
  VectorField da_df;
  SpectralField phi;
  SpectralField dphi;
  SpectralField n_tilde;
  SpectralField dn_tilde;
  double time = 0.0;
};

struct Accel {
  VectorField dda;
  SpectralField ddphi;
  SpectralField ddn;
};

struct SplitRate {
  VectorField da_cf;
  VectorField dda_df;
  SpectralField ddphi;
  SpectralField ddn;
};

struct PotentialGrad {
  SpectralField u_phibar;  // dU/d(conj phi) = U_rho phi
  SpectralField u_n;
};

SpectralField potential(const SpectralField& phi, const SpectralField& n_tilde, const Params& p);
PotentialGrad potential_grad(const SpectralField& phi, const SpectralField& n_tilde, const Params& p);
// integral of U by padded-grid quadrature
double potential_integral(const SpectralField& phi, const SpectralField& n_tilde, const Params& p);

SpectralField covariant_derivative(const State& s, int mu, const Params& p);
double energy(const State& s, const Params& p);
RealSamples energy_density(const State& s, const Params& p);

Accel rhs_raw(const State& s, const Params& p);
// position-dependent part: everything except -kappa J dt A
Accel forces(const VectorField& a, const SpectralField& phi, const SpectralField& n_tilde, const Params& p);
SplitRate rhs_decomposed(const Split& s, const Params& p);

Split split(const State& s, const Params& p);
State recompose(const Split& s, const Params& p);
void check_split(const Split& s);

// J v = (v2, -v1)
VectorField rotate(const VectorField& v);
// dt A_cf fixed by the Gauss law: -grad lap^-1 [kappa curl A + 2e Pi Im(phi conj dphi)]
VectorField constraint_rate(const VectorField& a, const SpectralField& phi, const SpectralField& dphi,
                            const Params& p);
// time derivative of the above, given dt A and dtt phi
VectorField constraint_acceleration(const VectorField& da, const SpectralField& phi, const SpectralField& ddphi,
                                    const Params& p);

}  // namespace gaugewave::mcsh
