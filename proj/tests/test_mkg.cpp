#include <doctest.h>

#include "gaugewave/error.hpp"
#include "gaugewave/gauge.hpp"
#include "gaugewave/operators.hpp"
#include "support.hpp"

using namespace gwtest;

namespace {

const SpectrumProfile smooth{1.0};

// Right-hand side of the raw system from grid samples with fourth-order differences.
std::pair<std::vector<RealSamples>, ComplexSamples> fd_rhs(const mkg::State& s) {
  const Grid& g = s.grid();
  const auto S = Sampling::padded;
  ComplexSamples phi = to_physical(s.phi);
  std::vector<RealSamples> a;
  for (const auto& c : s.a) a.push_back(to_physical_real(c));
  std::vector<ComplexSamples> dphi;
  std::vector<RealSamples> lap_a(3, RealSamples(phi.size(), 0.0));
  ComplexSamples lap_phi(phi.size());
  RealSamples div(phi.size(), 0.0);
  for (int j = 0; j < 3; ++j) {
    dphi.push_back(fd_partial(phi, g, S, j));
    auto d2 = fd_partial(dphi[j], g, S, j);
    for (std::size_t x = 0; x < phi.size(); ++x) lap_phi[x] += d2[x];
    auto da = fd_partial(a[j], g, S, j);
    for (std::size_t x = 0; x < phi.size(); ++x) div[x] += da[x];
    for (int i = 0; i < 3; ++i) {
      auto d = fd_partial(fd_partial(a[i], g, S, j), g, S, j);
      for (std::size_t x = 0; x < phi.size(); ++x) lap_a[i][x] += d[x];
    }
  }
  const cplx I(0.0, 1.0);
  ComplexSamples ddphi(phi.size());
  std::vector<RealSamples> dda(3, RealSamples(phi.size()));
  std::vector<RealSamples> grad_div;
  for (int i = 0; i < 3; ++i) grad_div.push_back(fd_partial(div, g, S, i));
  for (std::size_t x = 0; x < phi.size(); ++x) {
    cplx t = div[x] * phi[x];
    double a2 = 0.0;
    for (int j = 0; j < 3; ++j) {
      t += 2.0 * a[j][x] * dphi[j][x];
      a2 += a[j][x] * a[j][x];
    }
    t -= I * a2 * phi[x];
    ddphi[x] = lap_phi[x] - I * t;
    for (int i = 0; i < 3; ++i) {
      const cplx psi = dphi[i][x] - I * a[i][x] * phi[x];
      dda[i][x] = lap_a[i][x] - grad_div[i][x] - std::imag(phi[x] * std::conj(psi));
    }
  }
  return {dda, ddphi};
}

double fd_error(int n) {
  auto s = gaugewave::gauge::make_admissible_mkg(grid3(n), 17, smooth, 0.6);
  auto [dda, ddphi] = fd_rhs(s);
  auto r = mkg::rhs_raw(s);
  double err = max_diff(ddphi, to_physical(r.ddphi));
  for (int i = 0; i < 3; ++i) err = std::max(err, max_diff(dda[i], to_physical_real(r.dda[i])));
  return err;
}

}  // namespace

TEST_CASE("covariant derivative") {
  const Grid g = grid3(8, 4.0);
  auto s = mkg::State::zero(g);
  s.phi = cfield(g, 1);
  s.dphi = cfield(g, 2);
  CHECK(l2_distance(mkg::covariant_derivative(s, 0), s.dphi) == 0.0);
  for (int i = 1; i <= 3; ++i) CHECK(l2_distance(mkg::covariant_derivative(s, i), partial(s.phi, i - 1)) == 0.0);
  CHECK_THROWS_AS(mkg::covariant_derivative(s, 4), PreconditionError);
  auto z = mkg::State::zero(g);
  z.a = random_vector(g, 3, 1, smooth, 1.0);
  CHECK(l2_norm(mkg::covariant_derivative(z, 2)) == 0.0);
  // A_1 = a cos(b.x), phi = e^{i k.x}: D_1 phi = i k_1 phi - (i a / 2)(e^{i(k+b).x} + e^{i(k-b).x})
  const double k0 = g.fundamental(), amp = 0.3;
  auto t = mkg::State::zero(g);
  t.phi = single_mode(g, {1, 0, 1}, 1.0);
  t.a[0] = single_mode(g, {0, 1, 0}, 0.5 * amp, Reality::real);
  auto d = mkg::covariant_derivative(t, 1);
  CHECK(std::abs(d.mode({1, 0, 1}) - cplx(0.0, k0)) < 1e-14);
  CHECK(std::abs(d.mode({1, 1, 1}) - cplx(0.0, -0.5 * amp)) < 1e-14);
  CHECK(std::abs(d.mode({1, -1, 1}) - cplx(0.0, -0.5 * amp)) < 1e-14);
  CHECK(l2_norm(d) == doctest::Approx(std::sqrt(g.volume() * (k0 * k0 + 0.5 * amp * amp))));
}

TEST_CASE("energy") {
  const Grid g = grid3(8, 3.0);
  CHECK(mkg::energy(mkg::State::zero(g)) == 0.0);
  auto c = mkg::State::zero(g);
  c.phi = single_mode(g, {0, 0, 0}, cplx(0.4, 0.2));
  CHECK(mkg::energy(c) == 0.0);
  // phi = eps e^{i xi.x}: E = V eps^2 |xi|^2 / 2
  const double eps = 0.25;
  auto w = mkg::State::zero(g);
  w.phi = single_mode(g, {1, 2, 0}, eps);
  const double xi2 = 5.0 * std::pow(g.fundamental(), 2);
  CHECK(mkg::energy(w) == doctest::Approx(0.5 * g.volume() * eps * eps * xi2).epsilon(1e-13));
  CHECK(integrate(mkg::energy_density(w), g) == doctest::Approx(mkg::energy(w)).epsilon(1e-13));
  auto s = gaugewave::gauge::make_admissible_mkg(grid3(16), 2, smooth, 0.6);
  CHECK(mkg::energy(s) > 0.0);
  CHECK(rel(integrate(mkg::energy_density(s), s.grid()), mkg::energy(s)) < 1e-12);
}

TEST_CASE("raw right-hand side") {
  const Grid g = grid3(8);
  auto z = mkg::rhs_raw(mkg::State::zero(g));
  CHECK(l2_norm(z.dda) == 0.0);
  CHECK(l2_norm(z.ddphi) == 0.0);
  auto w = mkg::State::zero(g);
  w.phi = single_mode(g, {2, -1, 1}, cplx(0.3, 0.1));
  auto r = mkg::rhs_raw(w);
  CHECK(l2_distance(r.ddphi, -6.0 * w.phi) < 1e-15);
  // a plane wave carries the constant current -xi |c|^2, which accelerates the mean of A
  const double k0 = g.fundamental(), c2 = std::norm(cplx(0.3, 0.1));
  const double xi[3] = {2 * k0, -k0, k0};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(r.dda[i].mean() - xi[i] * c2) < 1e-15);
    CHECK(l2_norm(r.dda[i]) == doctest::Approx(std::abs(xi[i]) * c2 * std::sqrt(g.volume())));
  }
}

TEST_CASE("raw right-hand side against fourth-order finite differences") {
  const double coarse = fd_error(16), fine = fd_error(32);
  MESSAGE("finite-difference errors " << coarse << " " << fine);
  CHECK(fine < 1e-3);
  CHECK(coarse / fine == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("decomposed formulation agrees with the raw one") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto s = gaugewave::gauge::make_admissible_mkg(grid3(16), seed, smooth, 0.6);
    auto sp = mkg::split(s);
    auto d = mkg::rhs_decomposed(sp);
    CHECK(l2_norm(divergence(d.dda_df)) <= 1e-13 * l2_norm(d.dda_df));
    auto raw = mkg::rhs_raw(mkg::recompose(sp));
    auto total = d.dda_df + mkg::constraint_acceleration(s.phi, d.ddphi);
    CHECK(l2_distance(total, raw.dda) <= 1e-10 * l2_norm(raw.dda));
    CHECK(l2_distance(d.ddphi, raw.ddphi) <= 1e-12 * l2_norm(raw.ddphi));
    CHECK(l2_distance(d.da_cf, helmholtz(s.da).cf) <= 1e-12 * l2_norm(s.da));
    auto back = mkg::recompose(sp);
    CHECK(l2_distance(back.a, s.a) <= 1e-14 * l2_norm(s.a));
    CHECK(l2_distance(back.da, s.da) <= 1e-12 * l2_norm(s.da));
  }
  // phi = 0: free Maxwell for the df part, frozen cf part
  auto f = mkg::State::zero(grid3(8));
  f.a = random_vector(f.grid(), 4, 1, smooth, 1.0);
  auto d = mkg::rhs_decomposed(mkg::split(f));
  CHECK(l2_norm(d.da_cf) == 0.0);
  auto df = helmholtz(f.a).df;
  VectorField lap(std::vector<SpectralField>{laplacian(df[0]), laplacian(df[1]), laplacian(df[2])});
  CHECK(l2_distance(d.dda_df, lap) <= 1e-14 * l2_norm(lap));
  auto bad = mkg::split(f);
  bad.a_df = f.a;
  CHECK_THROWS_AS(mkg::rhs_decomposed(bad), PreconditionError);
}

TEST_CASE("Gauss law is compatible with the raw flow") {
  // exact up to truncation of the cubic terms, negligible once the grid resolves three times the data band
  for (std::uint64_t seed : {4ull, 5ull}) {
    auto s = gaugewave::gauge::make_admissible_mkg(grid3(32), seed, smooth, 0.6);
    auto r = mkg::rhs_raw(s);
    // d/dt [-div dA - Im(phi conj dphi)]; the |dphi|^2 term is real
    auto rate = -1.0 * divergence(r.dda) - mkg::charge_density(s.phi, r.ddphi);
    CHECK(l2_norm(rate) <= 1e-10);
  }
}

TEST_CASE("state validation") {
  auto s = mkg::State::zero(grid3(8));
  CHECK_NOTHROW(s.validate());
  CHECK_THROWS_AS(mkg::State::zero(grid2(8)), PreconditionError);
  s.da[0] = cfield(s.grid(), 1);
  CHECK_THROWS_AS(s.validate(), PreconditionError);
}
