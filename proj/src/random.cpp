#include "gaugewave/random.hpp"

#include <cmath>
#include <random>

#include "gaugewave/error.hpp"
#include "gaugewave/operators.hpp"

namespace gaugewave {

SpectrumProfile SpectrumProfile::default_for(const Grid& g) { return {0.25 * g.fundamental() * (g.n / 2)}; }

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

cplx draw(std::uint64_t seed, std::uint64_t stream, const std::array<int, 3>& k) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ stream);
  for (int d = 0; d < 3; ++d) h = mix(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(k[d])));
  std::mt19937_64 eng(h);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  double re = normal(eng);
  double im = normal(eng);
  return {re, im};
}

bool canonical(const std::array<int, 3>& k) {
  for (int d = 0; d < 3; ++d)
    if (k[d] != 0) return k[d] > 0;
  return true;
}

// sqrt of the lattice sum over Z^dim of exp(-2|xi|^2/xi0^2)
double lattice_norm(const Grid& g, double xi0) {
  const double k0 = g.fundamental();
  double s = 1.0;
  for (int m = 1;; ++m) {
    double term = std::exp(-2.0 * std::pow(k0 * m / xi0, 2));
    s += 2.0 * term;
    if (term < 1e-300 || term < 1e-18 * s) break;
  }
  return std::sqrt(std::pow(s, g.dim));
}

}  // namespace

SpectralField random_field(const Grid& g, Reality r, std::uint64_t seed, std::uint64_t stream,
                           const SpectrumProfile& profile, double amplitude) {
  if (!(profile.xi0 > 0.0)) throw PreconditionError("spectrum width must be positive");
  SpectralField f(g, r);
  if (amplitude == 0.0) return f;
  const auto& t = modes(g);
  const double scale = amplitude / lattice_norm(g, profile.xi0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!t.resolved[i]) continue;
    const auto& k = t.k[i];
    const double w = scale * std::exp(-t.xi2[i] / (profile.xi0 * profile.xi0));
    if (r == Reality::complex) {
      f[i] = w * draw(seed, stream, k);
    } else if (canonical(k)) {
      cplx c = w * draw(seed, stream, k);
      if (t.negated[i] == i) c = std::sqrt(2.0) * c.real();
      f[i] = c;
      f[t.negated[i]] = std::conj(c);
    }
  }
  return f;
}

VectorField random_vector(const Grid& g, std::uint64_t seed, std::uint64_t stream, const SpectrumProfile& profile,
                          double amplitude) {
  std::vector<SpectralField> c;
  for (int d = 0; d < g.dim; ++d)
    c.push_back(random_field(g, Reality::real, seed, stream * 8 + static_cast<std::uint64_t>(d), profile, amplitude));
  return VectorField(std::move(c));
}

VectorField random_df_vector(const Grid& g, std::uint64_t seed, std::uint64_t stream, const SpectrumProfile& profile,
                             double amplitude) {
  return df_part(random_vector(g, seed, stream, profile, amplitude));
}

}  // namespace gaugewave
