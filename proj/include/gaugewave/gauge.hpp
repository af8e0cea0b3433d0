#pragma once

#include <cstdint>

#include "gaugewave/mcsh.hpp"
#include "gaugewave/mkg.hpp"
#include "gaugewave/random.hpp"

namespace gaugewave::gauge {

// Time-independent real gauge function; temporal gauge is preserved.
class GaugeFunction {
 public:
  explicit GaugeFunction(SpectralField chi);
  const SpectralField& chi() const { return chi_; }
  GaugeFunction operator-() const { return GaugeFunction(-1.0 * chi_); }

 private:
  SpectralField chi_;
};

// Pi(exp(i q chi) phi), phase evaluated pointwise on the padded grid
SpectralField apply_phase(const SpectralField& phi, const SpectralField& chi, double charge);

// A + grad chi, phi -> exp(i chi) phi
mkg::State transform(const mkg::State& s, const GaugeFunction& chi);
// A + grad chi, phi -> exp(i e chi) phi; Ntilde untouched
mcsh::State transform(const mcsh::State& s, const GaugeFunction& chi, const mcsh::Params& p);

struct CoulombFix {
  VectorField a;
  GaugeFunction chi;
};

// chi = -lap^-1 div A0, A0' = A0 + grad chi
CoulombFix coulomb_fix(const VectorField& a0);

// -div dt A - Pi Im(phi conj dt phi)
SpectralField gauss_residual(const mkg::State& s);
// div dt A + kappa F12 + 2e Pi Im(phi conj dt phi)
SpectralField gauss_residual(const mcsh::State& s, const mcsh::Params& p);

mkg::State make_admissible_mkg(const Grid& g, std::uint64_t seed, const SpectrumProfile& profile, double amplitude);
mcsh::State make_admissible_mcsh(const Grid& g, std::uint64_t seed, const SpectrumProfile& profile, double amplitude,
                                 const mcsh::Params& p);

GaugeFunction random_gauge(const Grid& g, std::uint64_t seed, const SpectrumProfile& profile, double amplitude);

}  // namespace gaugewave::gauge
