#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

namespace gaugewave {

// Periodic box [0, L)^dim sampled with n points per axis. Flat indices are
// row-major with the last axis fastest; wavenumber index i maps to i < n/2 ? i : i - n.
struct Grid {
  int dim = 3;
  int n = 32;
  double box_length = 2.0 * std::numbers::pi;

  void validate() const;
  std::size_t size() const;
  int padded_n() const { return 3 * n / 2; }
  std::size_t padded_size() const;
  double fundamental() const { return 2.0 * std::numbers::pi / box_length; }
  double volume() const;
  // largest |xi| over resolved (non-Nyquist) modes
  double max_wavenumber() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

// Lookup tables for one grid. The Nyquist planes (index n/2 on any axis) are
// never populated: the resolved band is |k_i| <= n/2 - 1.
struct ModeTable {
  Grid grid;
  std::vector<std::array<int, 3>> k;
  std::array<std::vector<double>, 3> xi;
  std::vector<double> xi2;
  std::vector<unsigned char> resolved;
  std::vector<std::size_t> negated;         // flat index of -k
  std::vector<std::size_t> padded;          // flat index of k on the 3n/2 grid
  std::vector<std::size_t> padded_negated;  // flat index of -k on the 3n/2 grid
};

// Cached per grid; safe to call from several threads.
const ModeTable& modes(const Grid& g);

}  // namespace gaugewave
