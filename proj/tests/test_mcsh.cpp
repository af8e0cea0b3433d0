#include <doctest.h>

#include <Eigen/Dense>

#include "gaugewave/error.hpp"
#include "gaugewave/gauge.hpp"
#include "gaugewave/operators.hpp"
#include "support.hpp"

using namespace gwtest;

namespace {

const SpectrumProfile smooth{1.0};
const mcsh::Params unit{1.0, 1.0, 1.0};
const mcsh::Params odd{1.3, 0.7, 0.9};

// U from physical samples, without any spectral round trip
RealSamples pointwise_u(const mcsh::State& s, const mcsh::Params& p, Sampling where) {
  auto phi = to_physical(s.phi, where);
  auto n = to_physical_real(s.n_tilde, where);
  RealSamples u(phi.size());
  for (std::size_t x = 0; x < u.size(); ++x) {
    const double rho = std::norm(phi[x]);
    const double big_n = n[x] + p.e * p.v * p.v / p.kappa;
    u[x] = 0.5 * std::pow(p.e * rho + p.kappa * n[x], 2) + p.e * p.e * big_n * big_n * rho;
  }
  return u;
}

mcsh::State random_state(const Grid& g, std::uint64_t seed, const mcsh::Params& p, double amp = 0.6) {
  return gaugewave::gauge::make_admissible_mcsh(g, seed, smooth, amp, p);
}

}  // namespace

TEST_CASE("potential") {
  const Grid g = grid2(16);
  auto vac = mcsh::State::zero(g);
  CHECK(l2_norm(mcsh::potential(vac.phi, vac.n_tilde, odd)) == 0.0);
  CHECK(mcsh::potential_integral(vac.phi, vac.n_tilde, odd) == 0.0);
  // N = 0 everywhere: U = e^2 v^4 / 2, integral (2 pi)^2 / 2 for e = v = 1
  auto n0 = single_mode(g, {0, 0, 0}, -unit.n_shift(), Reality::real);
  CHECK(mcsh::potential_integral(vac.phi, n0, unit) == doctest::Approx(19.7392088).epsilon(1e-9));
  CHECK(std::abs(mcsh::potential(vac.phi, n0, unit).mean() - 0.5) < 1e-15);

  const Grid h = grid2(64);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto s = random_state(h, seed, odd);
    auto spectral = to_physical_real(mcsh::potential(s.phi, s.n_tilde, odd), Sampling::grid);
    auto direct = pointwise_u(s, odd, Sampling::grid);
    CHECK(max_diff(spectral, direct) <= 1e-12 * max_abs(direct));
    CHECK(rel(mcsh::potential_integral(s.phi, s.n_tilde, odd), integrate(pointwise_u(s, odd, Sampling::padded), h)) <
          1e-12);
    auto u = to_physical_real(mcsh::potential(s.phi, s.n_tilde, odd));
    CHECK(*std::min_element(u.begin(), u.end()) >= -1e-12 * max_abs(u));
  }
}

TEST_CASE("potential gradient") {
  const Grid g = grid2(32);
  auto vac = mcsh::State::zero(g);
  auto v = mcsh::potential_grad(vac.phi, vac.n_tilde, odd);
  CHECK(l2_norm(v.u_phibar) == 0.0);
  CHECK(l2_norm(v.u_n) == 0.0);
  const auto n = rfield(g, 3);
  auto w = mcsh::potential_grad(vac.phi, n, odd);
  CHECK(l2_norm(w.u_phibar) == 0.0);
  CHECK(l2_distance(w.u_n, odd.kappa * odd.kappa * n) <= 1e-14 * l2_norm(w.u_n));

  // directional derivatives of the integral by centred differences
  const double eps = 1e-4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto s = random_state(grid2(64), seed, odd);
    auto grad = mcsh::potential_grad(s.phi, s.n_tilde, odd);
    const auto eta = cfield(s.grid(), 100 + seed);
    const auto zeta = rfield(s.grid(), 200 + seed);
    auto integral = [&](const SpectralField& phi, const SpectralField& n) {
      return mcsh::potential_integral(phi, n, odd);
    };
    const double dphi = (integral(s.phi + eps * eta, s.n_tilde) - integral(s.phi - eps * eta, s.n_tilde)) / (2 * eps);
    CHECK(rel(dphi, 2.0 * inner(eta, grad.u_phibar).real()) < 1e-6);
    const double dn = (integral(s.phi, s.n_tilde + eps * zeta) - integral(s.phi, s.n_tilde - eps * zeta)) / (2 * eps);
    CHECK(rel(dn, inner(zeta, grad.u_n).real()) < 1e-6);
  }
}

TEST_CASE("energy") {
  const Grid g = grid2(16, 5.0);
  CHECK(mcsh::energy(mcsh::State::zero(g), odd) == 0.0);
  // phi = 0, static Ntilde = a cos(xi.x): |grad N|^2 / 2 + (kappa N)^2 / 2
  auto s = mcsh::State::zero(g);
  s.n_tilde = single_mode(g, {2, 1, 0}, 0.15, Reality::real);
  const double xi2 = 5.0 * std::pow(g.fundamental(), 2), n2 = std::pow(l2_norm(s.n_tilde), 2);
  CHECK(mcsh::energy(s, odd) == doctest::Approx(0.5 * xi2 * n2 + 0.5 * odd.kappa * odd.kappa * n2).epsilon(1e-13));
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto r = random_state(grid2(64), seed, odd);
    CHECK(mcsh::energy(r, odd) > 0.0);
    CHECK(rel(integrate(mcsh::energy_density(r, odd), r.grid()), mcsh::energy(r, odd)) < 1e-11);
  }
}

TEST_CASE("raw right-hand side") {
  const Grid g = grid2(16);
  auto z = mcsh::rhs_raw(mcsh::State::zero(g), odd);
  CHECK(l2_norm(z.dda) == 0.0);
  CHECK(l2_norm(z.ddphi) == 0.0);
  CHECK(l2_norm(z.ddn) == 0.0);

  // e = 0, phi = 0: linear Maxwell-Chern-Simons, each mode obeys a'' = -(|xi|^2 - xi xi^T) a - kappa J a'
  mcsh::Params lin{0.0, 0.8, 1.0};
  const Grid h = grid2(16, 4.0);
  const std::array<int, 3> k{2, -1, 0};
  auto s = mcsh::State::zero(h);
  s.a[0] = single_mode(h, k, cplx(0.3, 0.1), Reality::real);
  s.a[1] = single_mode(h, k, cplx(-0.2, 0.4), Reality::real);
  s.da[0] = single_mode(h, k, cplx(0.05, -0.1), Reality::real);
  s.da[1] = single_mode(h, k, cplx(0.2, 0.3), Reality::real);
  auto r = mcsh::rhs_raw(s, lin);
  const double k0 = h.fundamental();
  Eigen::Vector2d xi(k[0] * k0, k[1] * k0);
  Eigen::Matrix2d stiff = xi.squaredNorm() * Eigen::Matrix2d::Identity() - xi * xi.transpose();
  Eigen::Matrix2d J;
  J << 0, 1, -1, 0;
  Eigen::Vector2cd a(s.a[0].mode(k), s.a[1].mode(k)), da(s.da[0].mode(k), s.da[1].mode(k));
  Eigen::Vector2cd expect = -stiff.cast<cplx>() * a - lin.kappa * J.cast<cplx>() * da;
  CHECK(std::abs(r.dda[0].mode(k) - expect(0)) < 1e-14);
  CHECK(std::abs(r.dda[1].mode(k) - expect(1)) < 1e-14);
  CHECK(l2_norm(r.ddphi) == 0.0);

  // characteristic polynomial lambda^2 (lambda^2 + |xi|^2 + kappa^2): a massive pair and a double zero
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.block<2, 2>(0, 2) = Eigen::Matrix2d::Identity();
  m.block<2, 2>(2, 0) = -stiff;
  m.block<2, 2>(2, 2) = -lin.kappa * J;
  Eigen::EigenSolver<Eigen::Matrix4d> es(m);
  std::vector<double> freq;
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(es.eigenvalues()(i).real()) < 1e-7);
    freq.push_back(std::abs(es.eigenvalues()(i).imag()));
  }
  std::sort(freq.begin(), freq.end());
  const double mass = std::sqrt(xi.squaredNorm() + lin.kappa * lin.kappa);
  CHECK(freq[0] < 1e-7);
  CHECK(freq[1] < 1e-7);
  CHECK(freq[2] == doctest::Approx(mass).epsilon(1e-12));
  CHECK(freq[3] == doctest::Approx(mass).epsilon(1e-12));
}

TEST_CASE("decomposed formulation agrees with the raw one") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto s = random_state(grid2(64), seed, odd);
    auto sp = mcsh::split(s, odd);
    auto d = mcsh::rhs_decomposed(sp, odd);
    CHECK(l2_norm(divergence(d.dda_df)) <= 1e-13 * l2_norm(d.dda_df));
    auto raw = mcsh::rhs_raw(mcsh::recompose(sp, odd), odd);
    auto total = d.dda_df + mcsh::constraint_acceleration(s.da, s.phi, d.ddphi, odd);
    CHECK(l2_distance(total, raw.dda) <= 1e-10 * l2_norm(raw.dda));
    CHECK(l2_distance(d.ddphi, raw.ddphi) <= 1e-12 * l2_norm(raw.ddphi));
    CHECK(l2_distance(d.ddn, raw.ddn) <= 1e-12 * l2_norm(raw.ddn));
    auto back = mcsh::recompose(sp, odd);
    CHECK(l2_distance(back.da, s.da) <= 1e-12 * l2_norm(s.da));
  }
  // without charge the cf velocity is -grad lap^-1 (kappa curl A)
  mcsh::Params neutral{0.0, 0.9, 1.0};
  auto f = mcsh::State::zero(grid2(32));
  f.a = random_vector(f.grid(), 4, 1, smooth, 1.0);
  auto rate = mcsh::constraint_rate(f.a, f.phi, f.dphi, neutral);
  CHECK(l2_distance(rate, -1.0 * gradient(inv_laplacian(neutral.kappa * curl_2d(f.a)))) <= 1e-14 * l2_norm(rate));
  f.da = rate;
  auto d = mcsh::rhs_decomposed(mcsh::split(f, neutral), neutral);
  CHECK(l2_distance(d.da_cf, rate) <= 1e-14 * l2_norm(rate));
  auto raw = mcsh::rhs_raw(f, neutral);
  auto total = d.dda_df + mcsh::constraint_acceleration(f.da, f.phi, d.ddphi, neutral);
  CHECK(l2_distance(total, raw.dda) <= 1e-12 * l2_norm(raw.dda));
}

TEST_CASE("Gauss law is compatible with the raw flow") {
  for (std::uint64_t seed : {4ull, 5ull}) {
    auto s = random_state(grid2(64), seed, odd);
    auto r = mcsh::rhs_raw(s, odd);
    auto rate = divergence(r.dda) + odd.kappa * curl_2d(s.da) + 2.0 * odd.e * mkg::charge_density(s.phi, r.ddphi);
    CHECK(l2_norm(rate) <= 1e-10);
  }
}

TEST_CASE("parameters and validation") {
  CHECK_THROWS_AS((mcsh::Params{1.0, 0.0, 1.0}.validate()), PreconditionError);
  CHECK_THROWS_AS((mcsh::Params{1.0, 1.0, 0.0}.validate()), PreconditionError);
  CHECK(odd.n_shift() == doctest::Approx(odd.e * odd.v * odd.v / odd.kappa));
  CHECK_THROWS_AS(mcsh::State::zero(grid3(8)), PreconditionError);
  auto s = mcsh::State::zero(grid2(8));
  s.n_tilde = cfield(s.grid(), 1);
  CHECK_THROWS_AS(s.validate(), PreconditionError);
}
