#include "gaugewave/mkg.hpp"

#include <algorithm>
#include <cmath>

#include "covariant.hpp"
#include "gaugewave/error.hpp"
#include "gaugewave/operators.hpp"

namespace gaugewave::mkg {

using detail::coeff_norm2;

State State::zero(const Grid& g) {
  if (g.dim != 3) throw PreconditionError("MKG lives on a 3D grid");
  return {VectorField::zeros(g), VectorField::zeros(g), SpectralField(g, Reality::complex),
          SpectralField(g, Reality::complex), 0.0};
}

void State::validate() const {
  const Grid& g = grid();
  if (g.dim != 3) throw PreconditionError("MKG lives on a 3D grid");
  require_same_grid(a.grid(), g);
  require_same_grid(da.grid(), g);
  require_same_grid(dphi.grid(), g);
  if (!a.is_real() || !da.is_real()) throw PreconditionError("gauge potential must be real");
}

SpectralField covariant_derivative(const State& s, int mu) {
  if (mu < 0 || mu > 3) throw PreconditionError("covariant derivative index out of range");
  if (mu == 0) return s.dphi;
  const int i = mu - 1;
  return partial(s.phi, i) - cplx(0.0, 1.0) * multiply(s.a[i], s.phi);
}

namespace {

double curvature_norm2(const VectorField& a) {
  double f2 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) f2 += coeff_norm2(partial(a[j], i) - partial(a[i], j));
  return f2;
}

}  // namespace

double energy(const State& s) {
  const Grid& g = s.grid();
  double kinetic = 0.0;
  for (const auto& c : s.da) kinetic += coeff_norm2(c);
  kinetic += coeff_norm2(s.dphi);
  auto cov = detail::sample_covariant(s.a, s.phi, 1.0);
  double gradient = 0.0;
  for (const auto& p : cov.psi) gradient += detail::sample_norm2(p, g);
  return 0.5 * (kinetic + curvature_norm2(s.a) + gradient);
}

RealSamples energy_density(const State& s) {
  auto cov = detail::sample_covariant(s.a, s.phi, 1.0);
  std::vector<SpectralField> f;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) f.push_back(partial(s.a[j], i) - partial(s.a[i], j));
  std::vector<const SpectralField*> reals;
  for (const auto& c : s.da) reals.push_back(&c);
  for (const auto& c : f) reals.push_back(&c);
  auto r = to_physical_reals(reals);
  ComplexSamples dphi = to_physical(s.dphi);
  RealSamples e(dphi.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    double v = std::norm(dphi[x]);
    for (const auto& q : r) v += q[x] * q[x];
    for (const auto& p : cov.psi) v += std::norm(p[x]);
    e[x] = 0.5 * v;
  }
  return e;
}

Accel forces(const VectorField& a, const SpectralField& phi) {
  const Grid& g = phi.grid();
  auto cov = detail::sample_covariant(a, phi, 1.0);
  auto current = detail::current_samples(cov);
  SpectralField ddphi = laplacian(phi) - cplx(0.0, 1.0) * from_physical(detail::transport_samples(cov, 1.0), g);
  std::vector<const RealSamples*> cur;
  for (const auto& c : current) cur.push_back(&c);
  auto pj = from_physical_reals(cur, g);
  SpectralField div = divergence(a);
  std::vector<SpectralField> dda;
  for (int i = 0; i < 3; ++i) dda.push_back(laplacian(a[i]) - partial(div, i) - pj[i]);
  return {VectorField(std::move(dda)), std::move(ddphi)};
}

Accel rhs_raw(const State& s) { return forces(s.a, s.phi); }

SpectralField charge_density(const SpectralField& phi, const SpectralField& dphi) {
  return detail::imag_product(phi, dphi);
}

VectorField constraint_rate(const SpectralField& phi, const SpectralField& dphi) {
  return -1.0 * gradient(inv_laplacian(charge_density(phi, dphi)));
}

VectorField constraint_acceleration(const SpectralField& phi, const SpectralField& ddphi) {
  return constraint_rate(phi, ddphi);
}

void check_split(const Split& s) {
  const double tol = 1e-10;
  double h1 = 0.0;
  for (const auto& c : s.a_df) h1 += std::pow(l2_norm(gradient(c)), 2);
  if (l2_norm(divergence(s.a_df)) > tol * std::max(1.0, std::sqrt(h1)))
    throw PreconditionError("divergence-free part has nonzero divergence");
  if (l2_norm(curl_3d(s.a_cf)) > tol * std::max(1.0, l2_norm(s.a_cf)))
    throw PreconditionError("curl-free part has nonzero curl");
  for (const auto& c : s.a_cf)
    if (std::abs(c.mean()) > tol * std::max(1.0, l2_norm(s.a_cf)))
      throw PreconditionError("curl-free part must not carry the zero mode");
}

SplitRate rhs_decomposed(const Split& s) {
  check_split(s);
  Accel f = forces(s.a_df + s.a_cf, s.phi);
  return {constraint_rate(s.phi, s.dphi), project_df(f.dda), std::move(f.ddphi)};
}

Split split(const State& s) {
  auto h = helmholtz(s.a);
  return {std::move(h.cf), std::move(h.df), project_df(s.da), s.phi, s.dphi, s.time};
}

State recompose(const Split& s) {
  return {s.a_df + s.a_cf, s.da_df + constraint_rate(s.phi, s.dphi), s.phi, s.dphi, s.time};
}

}  // namespace gaugewave::mkg
