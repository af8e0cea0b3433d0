#include "gaugewave/operators.hpp"

#include <cmath>

#include "gaugewave/error.hpp"
#include "gaugewave/fft.hpp"

namespace gaugewave {

namespace {

void check_axis(const Grid& g, int axis) {
  if (axis < 0 || axis >= g.dim) throw PreconditionError("axis index out of range");
}

template <class Mult>
SpectralField apply(const SpectralField& f, Reality r, Mult mult) {
  const auto& t = modes(f.grid());
  SpectralField out(f.grid(), r);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = t.resolved[i] ? mult(i, f[i]) : cplx{};
  return out;
}

const cplx I(0.0, 1.0);

}  // namespace

SpectralField partial(const SpectralField& f, int axis) {
  check_axis(f.grid(), axis);
  const auto& xi = modes(f.grid()).xi[axis];
  return apply(f, f.reality(), [&](std::size_t i, cplx c) { return I * xi[i] * c; });
}

SpectralField laplacian(const SpectralField& f) {
  const auto& xi2 = modes(f.grid()).xi2;
  return apply(f, f.reality(), [&](std::size_t i, cplx c) { return -xi2[i] * c; });
}

SpectralField inv_laplacian(const SpectralField& f) {
  const auto& xi2 = modes(f.grid()).xi2;
  return apply(f, f.reality(), [&](std::size_t i, cplx c) { return i == 0 ? cplx{} : -c / xi2[i]; });
}

SpectralField riesz(const SpectralField& f, int axis) {
  check_axis(f.grid(), axis);
  const auto& t = modes(f.grid());
  return apply(f, f.reality(),
               [&](std::size_t i, cplx c) { return i == 0 ? cplx{} : I * t.xi[axis][i] / std::sqrt(t.xi2[i]) * c; });
}

SpectralField modulus_d(const SpectralField& f) {
  const auto& xi2 = modes(f.grid()).xi2;
  return apply(f, f.reality(), [&](std::size_t i, cplx c) { return std::sqrt(xi2[i]) * c; });
}

SpectralField inv_modulus_d(const SpectralField& f) {
  const auto& xi2 = modes(f.grid()).xi2;
  return apply(f, f.reality(), [&](std::size_t i, cplx c) { return i == 0 ? cplx{} : c / std::sqrt(xi2[i]); });
}

VectorField gradient(const SpectralField& f) {
  std::vector<SpectralField> c;
  for (int d = 0; d < f.grid().dim; ++d) c.push_back(partial(f, d));
  return VectorField(std::move(c));
}

SpectralField divergence(const VectorField& v) {
  SpectralField out = partial(v[0], 0);
  for (std::size_t d = 1; d < v.size(); ++d) out += partial(v[d], static_cast<int>(d));
  return out;
}

SpectralField curl_2d(const VectorField& v) {
  if (v.grid().dim != 2) throw PreconditionError("scalar curl needs a 2D field");
  return partial(v[1], 0) - partial(v[0], 1);
}

VectorField curl_3d(const VectorField& v) {
  if (v.grid().dim != 3) throw PreconditionError("vector curl needs a 3D field");
  return VectorField({partial(v[2], 1) - partial(v[1], 2), partial(v[0], 2) - partial(v[2], 0),
                      partial(v[1], 0) - partial(v[0], 1)});
}

VectorField perp_gradient(const SpectralField& psi) {
  if (psi.grid().dim != 2) throw PreconditionError("perpendicular gradient needs a 2D field");
  return VectorField({-partial(psi, 1), partial(psi, 0)});
}

HelmholtzSplit helmholtz(const VectorField& a) {
  const Grid& g = a.grid();
  const auto& t = modes(g);
  VectorField cf = VectorField::zeros(g, a[0].reality());
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!t.resolved[i]) continue;
    cplx dot{};
    for (int d = 0; d < g.dim; ++d) dot += t.xi[d][i] * a[d][i];
    for (int d = 0; d < g.dim; ++d) cf[d][i] = t.xi[d][i] * dot / t.xi2[i];
  }
  VectorField df = a - cf;
  return {std::move(df), std::move(cf)};
}

VectorField df_part(const VectorField& x) { return helmholtz(x).df; }

VectorField project_df(const VectorField& x) {
  if (x.grid().dim != 3) throw PreconditionError("the divergence-free projector is defined in 3D; use helmholtz");
  return df_part(x);
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid());
  if (f.is_real() && g.is_real()) {
    auto [pf, pg] = to_physical_pair(f, g);
    for (std::size_t i = 0; i < pf.size(); ++i) pf[i] *= pg[i];
    return from_physical_real(pf, f.grid());
  }
  ComplexSamples pf = to_physical(f), pg = to_physical(g);
  for (std::size_t i = 0; i < pf.size(); ++i) pf[i] *= pg[i];
  return from_physical(std::move(pf), f.grid());
}

SpectralField null_form(const SpectralField& u, const SpectralField& v, int i, int j) {
  require_same_grid(u.grid(), v.grid());
  check_axis(u.grid(), i);
  check_axis(u.grid(), j);
  if (i == j) throw PreconditionError("null form needs distinct indices");
  const bool real = u.is_real() && v.is_real();
  ComplexSamples ui = to_physical(partial(u, i)), uj = to_physical(partial(u, j));
  ComplexSamples vi = to_physical(partial(v, i)), vj = to_physical(partial(v, j));
  for (std::size_t k = 0; k < ui.size(); ++k) ui[k] = ui[k] * vj[k] - uj[k] * vi[k];
  if (real) {
    RealSamples r(ui.size());
    for (std::size_t k = 0; k < ui.size(); ++k) r[k] = ui[k].real();
    return from_physical_real(r, u.grid());
  }
  return from_physical(std::move(ui), u.grid());
}

}  // namespace gaugewave
