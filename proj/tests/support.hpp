#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "gaugewave/fft.hpp"
#include "gaugewave/field.hpp"
#include "gaugewave/random.hpp"

namespace gwtest {

using namespace gaugewave;
constexpr double pi = std::numbers::pi;

inline Grid grid3(int n = 16, double L = 2 * pi) { return {3, n, L}; }
inline Grid grid2(int n = 32, double L = 2 * pi) { return {2, n, L}; }

inline SpectralField single_mode(const Grid& g, std::array<int, 3> k, cplx amp, Reality r = Reality::complex) {
  SpectralField f(g, r);
  f.set_mode(k, amp);
  return f;
}

// sin(k0 . x) on a real field
inline SpectralField sine(const Grid& g, std::array<int, 3> k, double amp = 1.0) {
  return single_mode(g, k, cplx(0.0, -0.5 * amp), Reality::real);
}

inline SpectralField rfield(const Grid& g, std::uint64_t seed, double xi0 = 1.5, double amp = 1.0) {
  return random_field(g, Reality::real, seed, 11, SpectrumProfile{xi0}, amp);
}

inline SpectralField cfield(const Grid& g, std::uint64_t seed, double xi0 = 1.5, double amp = 1.0) {
  return random_field(g, Reality::complex, seed, 12, SpectrumProfile{xi0}, amp);
}

inline VectorField zero_mean(VectorField v) {
  for (auto& c : v) c.set_mode({0, 0, 0}, 0.0);
  return v;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

template <class S>
double max_abs(const S& s) {
  double m = 0.0;
  for (const auto& x : s) m = std::max(m, std::abs(x));
  return m;
}

template <class A, class B>
double max_diff(const A& a, const B& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Fourth-order centred difference along `axis` of periodic samples on an m^dim lattice.
template <class S>
S fd_partial(const S& f, const Grid& g, Sampling s, int axis) {
  const int m = samples_per_axis(g, s);
  const double h = g.box_length / m;
  std::size_t stride = 1;
  for (int d = g.dim - 1; d > axis; --d) stride *= m;
  S out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int c = static_cast<int>((i / stride) % m);
    auto at = [&](int off) {
      const int j = ((c + off) % m + m) % m;
      return f[i + (static_cast<long>(j) - c) * static_cast<long>(stride)];
    };
    out[i] = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
  }
  return out;
}

}  // namespace gwtest
