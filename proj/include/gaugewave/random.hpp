#pragma once

#include <cstdint>

#include "gaugewave/field.hpp"

namespace gaugewave {

// Gaussian spectrum exp(-|xi|^2 / xi0^2) with unit-normal complex draws.
struct SpectrumProfile {
  double xi0 = 1.0;
  // a quarter of the Nyquist wavenumber
  static SpectrumProfile default_for(const Grid& g);
};

// Draws are keyed by (seed, stream, wavevector), so a field sampled on a finer grid
// reproduces the coarse one plus its (exponentially small) extra modes. The expected
// mean square over the box is amplitude^2.
SpectralField random_field(const Grid& g, Reality r, std::uint64_t seed, std::uint64_t stream,
                           const SpectrumProfile& profile, double amplitude);

// Divergence-free (df part, zero mode kept) random vector field.
VectorField random_df_vector(const Grid& g, std::uint64_t seed, std::uint64_t stream, const SpectrumProfile& profile,
                             double amplitude);

VectorField random_vector(const Grid& g, std::uint64_t seed, std::uint64_t stream, const SpectrumProfile& profile,
                          double amplitude);

}  // namespace gaugewave
