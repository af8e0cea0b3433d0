#pragma once

#include "gaugewave/field.hpp"

namespace gaugewave {

// Fourier multipliers. Inverse operators and Riesz transforms annihilate the zero mode.
SpectralField partial(const SpectralField& f, int axis);
SpectralField laplacian(const SpectralField& f);
SpectralField inv_laplacian(const SpectralField& f);
SpectralField riesz(const SpectralField& f, int axis);
SpectralField modulus_d(const SpectralField& f);
SpectralField inv_modulus_d(const SpectralField& f);

VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
// 2D scalar curl d1 v2 - d2 v1
SpectralField curl_2d(const VectorField& v);
VectorField curl_3d(const VectorField& v);
// 2D: (-d2 psi, d1 psi)
VectorField perp_gradient(const SpectralField& psi);

struct HelmholtzSplit {
  VectorField df;  // divergence-free part, carries the zero mode
  VectorField cf;  // curl-free part, a pure gradient
};

HelmholtzSplit helmholtz(const VectorField& a);
// divergence-free part in any dimension
VectorField df_part(const VectorField& x);
// divergence-free projector, 3D only
VectorField project_df(const VectorField& x);

// dealiased pointwise product
SpectralField multiply(const SpectralField& f, const SpectralField& g);
// d_i u d_j v - d_j u d_i v, dealiased
SpectralField null_form(const SpectralField& u, const SpectralField& v, int i, int j);

}  // namespace gaugewave
