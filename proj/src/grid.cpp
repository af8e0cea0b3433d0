#include "gaugewave/grid.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "gaugewave/error.hpp"

namespace gaugewave {

void Grid::validate() const {
  if (dim != 2 && dim != 3) throw PreconditionError("grid dimension must be 2 or 3");
  if (n < 8 || n % 2 != 0) throw PreconditionError("grid points per axis must be even and >= 8");
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw PreconditionError("box length must be positive");
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
  return s;
}

std::size_t Grid::padded_size() const {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(padded_n());
  return s;
}

double Grid::volume() const { return std::pow(box_length, dim); }

double Grid::max_wavenumber() const {
  return fundamental() * (n / 2 - 1) * std::sqrt(static_cast<double>(dim));
}

namespace {

std::shared_ptr<const ModeTable> build(const Grid& g) {
  auto t = std::make_shared<ModeTable>();
  t->grid = g;
  const std::size_t size = g.size();
  const int n = g.n, m = g.padded_n(), dim = g.dim;
  const double k0 = g.fundamental();
  t->k.resize(size);
  for (auto& x : t->xi) x.assign(size, 0.0);
  t->xi2.assign(size, 0.0);
  t->resolved.assign(size, 0);
  t->negated.assign(size, 0);
  t->padded.assign(size, 0);
  t->padded_negated.assign(size, 0);

  auto wrap = [](int k, int len) { return static_cast<std::size_t>(((k % len) + len) % len); };
  for (std::size_t flat = 0; flat < size; ++flat) {
    std::array<int, 3> k{0, 0, 0};
    std::size_t rem = flat;
    bool nyquist = false;
    for (int d = dim - 1; d >= 0; --d) {
      int i = static_cast<int>(rem % n);
      rem /= n;
      if (i == n / 2) nyquist = true;
      k[d] = i < n / 2 ? i : i - n;
    }
    t->k[flat] = k;
    t->resolved[flat] = nyquist ? 0 : 1;
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
      t->xi[d][flat] = k0 * k[d];
      s += t->xi[d][flat] * t->xi[d][flat];
    }
    t->xi2[flat] = s;
    std::size_t neg = 0, pad = 0, padneg = 0;
    for (int d = 0; d < dim; ++d) {
      neg = neg * n + wrap(-k[d], n);
      pad = pad * m + wrap(k[d], m);
      padneg = padneg * m + wrap(-k[d], m);
    }
    t->negated[flat] = neg;
    t->padded[flat] = pad;
    t->padded_negated[flat] = padneg;
  }
  return t;
}

}  // namespace

const ModeTable& modes(const Grid& g) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::shared_ptr<const ModeTable>> cache;
  g.validate();
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(g.dim, g.n, g.box_length);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build(g)).first;
  return *it->second;
}

}  // namespace gaugewave
