#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "gaugewave/field.hpp"

namespace gaugewave {

template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  template <class U>
  bool operator==(const FftwAllocator<U>&) const { return true; }
};

using ComplexSamples = std::vector<cplx, FftwAllocator<cplx>>;
using RealSamples = std::vector<double>;

// grid: the n^dim sample points; padded: the 3n/2 points per axis used for products
enum class Sampling { grid, padded };

int samples_per_axis(const Grid& g, Sampling s);
std::size_t sample_count(const Grid& g, Sampling s);
std::array<double, 3> sample_point(const Grid& g, Sampling s, std::size_t flat);

ComplexSamples to_physical(const SpectralField& f, Sampling s = Sampling::padded);
RealSamples to_physical_real(const SpectralField& f, Sampling s = Sampling::padded);
// two real fields through one complex transform
std::pair<RealSamples, RealSamples> to_physical_pair(const SpectralField& a, const SpectralField& b,
                                                     Sampling s = Sampling::padded);

// forward transforms truncate to the resolved band and zero the Nyquist planes
SpectralField from_physical(ComplexSamples samples, const Grid& g, Sampling s = Sampling::padded);
SpectralField from_physical_real(const RealSamples& samples, const Grid& g, Sampling s = Sampling::padded);
std::pair<SpectralField, SpectralField> from_physical_pair(const RealSamples& a, const RealSamples& b, const Grid& g,
                                                           Sampling s = Sampling::padded);

// batches of real fields, packed two per complex transform
std::vector<RealSamples> to_physical_reals(const std::vector<const SpectralField*>& fields,
                                           Sampling s = Sampling::padded);
std::vector<SpectralField> from_physical_reals(const std::vector<const RealSamples*>& samples, const Grid& g,
                                               Sampling s = Sampling::padded);

// integral of samples over the box (rectangle rule, exact for band-limited integrands)
double integrate(const RealSamples& samples, const Grid& g, Sampling s = Sampling::padded);

// number of FFTW threads; reads GAUGEWAVE_THREADS on first use unless set explicitly
void set_fft_threads(int threads);

}  // namespace gaugewave
