#include "gaugewave/mcsh.hpp"

#include <algorithm>
#include <cmath>

#include "covariant.hpp"
#include "gaugewave/error.hpp"
#include "gaugewave/operators.hpp"

namespace gaugewave::mcsh {

using detail::coeff_norm2;

void Params::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw PreconditionError("kappa must be positive");
  if (!std::isfinite(e)) throw PreconditionError("charge must be finite");
  if (v == 0.0 || !std::isfinite(v)) throw PreconditionError("vacuum constant must be nonzero");
}

State State::zero(const Grid& g) {
  if (g.dim != 2) throw PreconditionError("MCSH lives on a 2D grid");
  return {VectorField::zeros(g), VectorField::zeros(g), SpectralField(g, Reality::complex),
          SpectralField(g, Reality::complex), SpectralField(g, Reality::real), SpectralField(g, Reality::real), 0.0};
}

void State::validate() const {
  const Grid& g = grid();
  if (g.dim != 2) throw PreconditionError("MCSH lives on a 2D grid");
  for (const Grid* o : {&a.grid(), &da.grid(), &dphi.grid(), &n_tilde.grid(), &dn_tilde.grid()})
    require_same_grid(*o, g);
  if (!a.is_real() || !da.is_real() || !n_tilde.is_real() || !dn_tilde.is_real())
    throw PreconditionError("gauge potential and neutral field must be real");
}

namespace {

struct PointPotential {
  double u, u_rho, u_n;
};

PointPotential point(double rho, double nt, const Params& p) {
  const double n = nt + p.n_shift();
  const double s = p.e * rho + p.kappa * nt;
  const double e2 = p.e * p.e;
  return {0.5 * s * s + e2 * n * n * rho, p.e * s + e2 * n * n, p.kappa * s + 2.0 * e2 * n * rho};
}

}  // namespace

SpectralField potential(const SpectralField& phi, const SpectralField& n_tilde, const Params& p) {
  ComplexSamples f = to_physical(phi);
  RealSamples n = to_physical_real(n_tilde);
  RealSamples u(n.size());
  for (std::size_t x = 0; x < u.size(); ++x) u[x] = point(std::norm(f[x]), n[x], p).u;
  return from_physical_real(u, phi.grid());
}

double potential_integral(const SpectralField& phi, const SpectralField& n_tilde, const Params& p) {
  ComplexSamples f = to_physical(phi);
  RealSamples n = to_physical_real(n_tilde);
  RealSamples u(n.size());
  for (std::size_t x = 0; x < u.size(); ++x) u[x] = point(std::norm(f[x]), n[x], p).u;
  return integrate(u, phi.grid());
}

PotentialGrad potential_grad(const SpectralField& phi, const SpectralField& n_tilde, const Params& p) {
  ComplexSamples f = to_physical(phi);
  RealSamples n = to_physical_real(n_tilde);
  RealSamples un(n.size());
  for (std::size_t x = 0; x < n.size(); ++x) {
    auto q = point(std::norm(f[x]), n[x], p);
    f[x] *= q.u_rho;
    un[x] = q.u_n;
  }
  return {from_physical(std::move(f), phi.grid()), from_physical_real(un, phi.grid())};
}

SpectralField covariant_derivative(const State& s, int mu, const Params& p) {
  if (mu < 0 || mu > 2) throw PreconditionError("covariant derivative index out of range");
  if (mu == 0) return s.dphi;
  const int i = mu - 1;
  return partial(s.phi, i) - cplx(0.0, p.e) * multiply(s.a[i], s.phi);
}

double energy(const State& s, const Params& p) {
  const Grid& g = s.grid();
  double e = 0.5 * (coeff_norm2(s.da[0]) + coeff_norm2(s.da[1]) + coeff_norm2(curl_2d(s.a)));
  e += coeff_norm2(s.dphi);
  auto cov = detail::sample_covariant(s.a, s.phi, p.e, {&s.n_tilde});
  for (const auto& q : cov.psi) e += detail::sample_norm2(q, g);
  e += 0.5 * (coeff_norm2(s.dn_tilde) + coeff_norm2(partial(s.n_tilde, 0)) + coeff_norm2(partial(s.n_tilde, 1)));
  RealSamples u(cov.phi.size());
  for (std::size_t x = 0; x < u.size(); ++x) u[x] = point(std::norm(cov.phi[x]), cov.extra[0][x], p).u;
  return e + integrate(u, g);
}

RealSamples energy_density(const State& s, const Params& p) {
  auto cov = detail::sample_covariant(s.a, s.phi, p.e, {&s.n_tilde});
  SpectralField f12 = curl_2d(s.a), n1 = partial(s.n_tilde, 0), n2 = partial(s.n_tilde, 1);
  auto r = to_physical_reals({&s.da[0], &s.da[1], &f12, &s.dn_tilde, &n1, &n2});
  ComplexSamples dphi = to_physical(s.dphi);
  RealSamples e(dphi.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    double v = 0.0;
    for (const auto& q : r) v += 0.5 * q[x] * q[x];
    v += std::norm(dphi[x]);
    for (const auto& q : cov.psi) v += std::norm(q[x]);
    e[x] = v + point(std::norm(cov.phi[x]), cov.extra[0][x], p).u;
  }
  return e;
}

Accel forces(const VectorField& a, const SpectralField& phi, const SpectralField& n_tilde, const Params& p) {
  const Grid& g = phi.grid();
  auto cov = detail::sample_covariant(a, phi, p.e, {&n_tilde});
  auto current = detail::current_samples(cov);
  ComplexSamples t = detail::transport_samples(cov, p.e);
  const cplx ie(0.0, p.e);
  RealSamples un(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    auto q = point(std::norm(cov.phi[x]), cov.extra[0][x], p);
    t[x] = -ie * t[x] - q.u_rho * cov.phi[x];
    un[x] = q.u_n;
  }
  SpectralField ddphi = laplacian(phi) + from_physical(std::move(t), g);
  auto r = from_physical_reals({&current[0], &current[1], &un}, g);
  SpectralField div = divergence(a);
  std::vector<SpectralField> dda;
  for (int i = 0; i < 2; ++i) dda.push_back(laplacian(a[i]) - partial(div, i) - 2.0 * p.e * r[i]);
  return {VectorField(std::move(dda)), std::move(ddphi), laplacian(n_tilde) - r[2]};
}

VectorField rotate(const VectorField& v) { return VectorField({v[1], -v[0]}); }

Accel rhs_raw(const State& s, const Params& p) {
  Accel f = forces(s.a, s.phi, s.n_tilde, p);
  f.dda.axpy(-p.kappa, rotate(s.da));
  return f;
}

VectorField constraint_rate(const VectorField& a, const SpectralField& phi, const SpectralField& dphi,
                            const Params& p) {
  SpectralField source = p.kappa * curl_2d(a) + 2.0 * p.e * detail::imag_product(phi, dphi);
  return -1.0 * gradient(inv_laplacian(source));
}

VectorField constraint_acceleration(const VectorField& da, const SpectralField& phi, const SpectralField& ddphi,
                                    const Params& p) {
  return constraint_rate(da, phi, ddphi, p);
}

void check_split(const Split& s) {
  const double tol = 1e-10;
  double h1 = 0.0;
  for (const auto& c : s.a_df) h1 += std::pow(l2_norm(gradient(c)), 2);
  if (l2_norm(divergence(s.a_df)) > tol * std::max(1.0, std::sqrt(h1)))
    throw PreconditionError("divergence-free part has nonzero divergence");
  if (l2_norm(curl_2d(s.a_cf)) > tol * std::max(1.0, l2_norm(s.a_cf)))
    throw PreconditionError("curl-free part has nonzero curl");
  for (const auto& c : s.a_cf)
    if (std::abs(c.mean()) > tol * std::max(1.0, l2_norm(s.a_cf)))
      throw PreconditionError("curl-free part must not carry the zero mode");
}

SplitRate rhs_decomposed(const Split& s, const Params& p) {
  check_split(s);
  VectorField da_cf = constraint_rate(s.a_df, s.phi, s.dphi, p);
  Accel f = forces(s.a_df + s.a_cf, s.phi, s.n_tilde, p);
  f.dda.axpy(-p.kappa, rotate(s.da_df + da_cf));
  return {std::move(da_cf), df_part(f.dda), std::move(f.ddphi), std::move(f.ddn)};
}

Split split(const State& s, const Params&) {
  auto h = helmholtz(s.a);
  return {std::move(h.cf), std::move(h.df), df_part(s.da), s.phi, s.dphi, s.n_tilde, s.dn_tilde, s.time};
}

State recompose(const Split& s, const Params& p) {
  return {s.a_df + s.a_cf,  s.da_df + constraint_rate(s.a_df, s.phi, s.dphi, p),
          s.phi,            s.dphi,
          s.n_tilde,        s.dn_tilde,
          s.time};
}

}  // namespace gaugewave::mcsh
