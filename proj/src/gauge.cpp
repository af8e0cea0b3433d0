#include "gaugewave/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "covariant.hpp"
#include "gaugewave/error.hpp"
#include "gaugewave/operators.hpp"

namespace gaugewave::gauge {

GaugeFunction::GaugeFunction(SpectralField chi) : chi_(std::move(chi)) {
  if (!chi_.is_real()) throw PreconditionError("gauge function must be real");
}

SpectralField apply_phase(const SpectralField& phi, const SpectralField& chi, double charge) {
  require_same_grid(phi.grid(), chi.grid());
  if (std::all_of(chi.coeffs().begin(), chi.coeffs().end(), [](cplx c) { return c == cplx{}; })) return phi;
  ComplexSamples f = to_physical(phi);
  RealSamples c = to_physical_real(chi);
  for (std::size_t x = 0; x < f.size(); ++x) f[x] *= std::polar(1.0, charge * c[x]);
  return from_physical(std::move(f), phi.grid());
}

mkg::State transform(const mkg::State& s, const GaugeFunction& g) {
  require_same_grid(s.grid(), g.chi().grid());
  return {s.a + gradient(g.chi()), s.da, apply_phase(s.phi, g.chi(), 1.0), apply_phase(s.dphi, g.chi(), 1.0),
          s.time};
}

mcsh::State transform(const mcsh::State& s, const GaugeFunction& g, const mcsh::Params& p) {
  require_same_grid(s.grid(), g.chi().grid());
  if (p.e == 0.0) return {s.a + gradient(g.chi()), s.da, s.phi, s.dphi, s.n_tilde, s.dn_tilde, s.time};
  return {s.a + gradient(g.chi()),
          s.da,
          apply_phase(s.phi, g.chi(), p.e),
          apply_phase(s.dphi, g.chi(), p.e),
          s.n_tilde,
          s.dn_tilde,
          s.time};
}

CoulombFix coulomb_fix(const VectorField& a0) {
  if (!a0.is_real()) throw PreconditionError("gauge potential must be real");
  SpectralField chi = -1.0 * inv_laplacian(divergence(a0));
  return {a0 + gradient(chi), GaugeFunction(std::move(chi))};
}

SpectralField gauss_residual(const mkg::State& s) {
  return -1.0 * divergence(s.da) - mkg::charge_density(s.phi, s.dphi);
}

SpectralField gauss_residual(const mcsh::State& s, const mcsh::Params& p) {
  return divergence(s.da) + p.kappa * curl_2d(s.a) + 2.0 * p.e * detail::imag_product(s.phi, s.dphi);
}

namespace {

// dphi += i beta phi so that the total charge Im<phi, dphi> vanishes
void neutralize(const SpectralField& phi, SpectralField& dphi) {
  const double mass = std::pow(l2_norm(phi), 2);
  if (!(mass > 0.0)) return;
  const double beta = inner(dphi, phi).imag() / mass;
  dphi.axpy(1.0, cplx(0.0, beta) * phi);
}

enum Stream : std::uint64_t { s_phi = 1, s_dphi, s_a, s_w, s_n, s_dn, s_chi };

}  // namespace

mkg::State make_admissible_mkg(const Grid& g, std::uint64_t seed, const SpectrumProfile& profile, double amplitude) {
  mkg::State s = mkg::State::zero(g);
  if (amplitude == 0.0) return s;
  s.phi = random_field(g, Reality::complex, seed, s_phi, profile, amplitude);
  s.dphi = random_field(g, Reality::complex, seed, s_dphi, profile, amplitude);
  neutralize(s.phi, s.dphi);
  s.a = random_vector(g, seed, s_a, profile, amplitude);
  s.da = random_df_vector(g, seed, s_w, profile, amplitude) + mkg::constraint_rate(s.phi, s.dphi);
  return s;
}

mcsh::State make_admissible_mcsh(const Grid& g, std::uint64_t seed, const SpectrumProfile& profile, double amplitude,
                                 const mcsh::Params& p) {
  p.validate();
  mcsh::State s = mcsh::State::zero(g);
  if (amplitude == 0.0) return s;
  s.phi = random_field(g, Reality::complex, seed, s_phi, profile, amplitude);
  s.dphi = random_field(g, Reality::complex, seed, s_dphi, profile, amplitude);
  neutralize(s.phi, s.dphi);
  s.a = random_vector(g, seed, s_a, profile, amplitude);
  s.da = random_df_vector(g, seed, s_w, profile, amplitude) + mcsh::constraint_rate(s.a, s.phi, s.dphi, p);
  s.n_tilde = random_field(g, Reality::real, seed, s_n, profile, amplitude);
  s.dn_tilde = random_field(g, Reality::real, seed, s_dn, profile, amplitude);
  return s;
}

GaugeFunction random_gauge(const Grid& g, std::uint64_t seed, const SpectrumProfile& profile, double amplitude) {
  return GaugeFunction(random_field(g, Reality::real, seed, s_chi, profile, amplitude));
}

}  // namespace gaugewave::gauge
