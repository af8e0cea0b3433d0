#pragma once

#include <complex>
#include <vector>

#include "gaugewave/field.hpp"

namespace gaugewave {

// Both sides of a bilinear identity and the least-squares constant alpha with lhs ~ alpha * rhs.
struct IdentityReport {
  std::vector<SpectralField> lhs;  // one entry per component
  std::vector<SpectralField> rhs;
  std::complex<double> alpha{1.0, 0.0};
  double residual = 0.0;        // |lhs - alpha rhs| / |lhs|, absolute when lhs vanishes
  double raw_residual = 0.0;    // same with alpha = 1
  bool degenerate = false;      // rhs vanishes, alpha undetermined
};

// 2 A.grad(phi) against sum_{i != j} Q_ij(phi, |D|^-1 (R_i A_j - R_j A_i)); expects alpha = 1.
// Requires A divergence-free with zero mean.
IdentityReport check_transport_null_form(const VectorField& a_df, const SpectralField& phi);

// Mean-free part of P[Im(phi conj(grad phi))] against 2 sum_j R_j |D|^-1 Q_ij(Re phi, Im phi); expects alpha = -1.
// The torus zero mode of the projected current has no counterpart on the right, so it is removed. 3D only.
IdentityReport check_projected_current(const SpectralField& phi);

}  // namespace gaugewave
