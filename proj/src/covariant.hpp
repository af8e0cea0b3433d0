#pragma once

#include <vector>

#include "gaugewave/fft.hpp"
#include "gaugewave/operators.hpp"

namespace gaugewave::detail {

// Padded-grid samples shared by the matter couplings of both systems.
struct CovariantSamples {
  ComplexSamples phi;
  std::vector<ComplexSamples> dphi;  // d_j phi
  std::vector<RealSamples> a;
  RealSamples div_a;
  std::vector<RealSamples> extra;    // caller-supplied real fields, batched with A
  std::vector<ComplexSamples> psi;   // D_j phi = d_j phi - i q A_j phi
};

inline CovariantSamples sample_covariant(const VectorField& a, const SpectralField& phi, double q,
                                         const std::vector<const SpectralField*>& extra = {}) {
  const int dim = phi.grid().dim;
  CovariantSamples s;
  s.phi = to_physical(phi);
  for (int j = 0; j < dim; ++j) s.dphi.push_back(to_physical(partial(phi, j)));
  SpectralField div = divergence(a);
  std::vector<const SpectralField*> reals;
  for (int j = 0; j < dim; ++j) reals.push_back(&a[j]);
  reals.push_back(&div);
  for (auto* e : extra) reals.push_back(e);
  auto r = to_physical_reals(reals);
  for (int j = 0; j < dim; ++j) s.a.push_back(std::move(r[j]));
  s.div_a = std::move(r[dim]);
  for (std::size_t k = dim + 1; k < r.size(); ++k) s.extra.push_back(std::move(r[k]));
  const cplx iq(0.0, q);
  for (int j = 0; j < dim; ++j) {
    ComplexSamples p(s.phi.size());
    for (std::size_t x = 0; x < p.size(); ++x) p[x] = s.dphi[j][x] - iq * s.a[j][x] * s.phi[x];
    s.psi.push_back(std::move(p));
  }
  return s;
}

// Im(phi conj psi_j) on the padded grid
inline std::vector<RealSamples> current_samples(const CovariantSamples& s) {
  std::vector<RealSamples> out;
  for (const auto& p : s.psi) {
    RealSamples j(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) j[x] = std::imag(s.phi[x] * std::conj(p[x]));
    out.push_back(std::move(j));
  }
  return out;
}

// (div A) phi + 2 A.grad phi - i q |A|^2 phi, so that D_j D_j phi = lap phi - i q Pi[this]
inline ComplexSamples transport_samples(const CovariantSamples& s, double q) {
  const cplx iq(0.0, q);
  ComplexSamples t(s.phi.size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    cplx adphi{};
    double a2 = 0.0;
    for (std::size_t j = 0; j < s.a.size(); ++j) {
      adphi += s.a[j][x] * s.dphi[j][x];
      a2 += s.a[j][x] * s.a[j][x];
    }
    t[x] = s.div_a[x] * s.phi[x] + 2.0 * adphi - iq * a2 * s.phi[x];
  }
  return t;
}

// Pi Im(f conj g)
inline SpectralField imag_product(const SpectralField& f, const SpectralField& g) {
  ComplexSamples pf = to_physical(f), pg = to_physical(g);
  RealSamples r(pf.size());
  for (std::size_t x = 0; x < r.size(); ++x) r[x] = std::imag(pf[x] * std::conj(pg[x]));
  return from_physical_real(r, f.grid());
}

inline double sample_norm2(const ComplexSamples& s, const Grid& g) {
  double sum = 0.0;
  for (const auto& z : s) sum += std::norm(z);
  return g.volume() * sum / static_cast<double>(s.size());
}

inline double coeff_norm2(const SpectralField& f) { return std::pow(l2_norm(f), 2); }

}  // namespace gaugewave::detail
