#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gaugewave/grid.hpp"

namespace gaugewave {

using cplx = std::complex<double>;

enum class Reality { real, complex };

// Fourier coefficients of a scalar field: f(x) = sum_k c_k exp(i xi_k . x).
// Real fields keep c(-k) = conj(c(k)); Nyquist coefficients are always zero.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const Grid& g, Reality r);
  SpectralField(const Grid& g, Reality r, std::vector<cplx> coeffs);

  const Grid& grid() const { return grid_; }
  Reality reality() const { return reality_; }
  bool is_real() const { return reality_ == Reality::real; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }
  const cplx& operator[](std::size_t i) const { return coeffs_[i]; }
  cplx& operator[](std::size_t i) { return coeffs_[i]; }

  cplx mode(const std::array<int, 3>& k) const;
  // sets c(k); for real fields also c(-k) = conj(value)
  void set_mode(const std::array<int, 3>& k, cplx value);
  cplx mean() const { return coeffs_.empty() ? cplx{} : coeffs_[0]; }

  bool all_finite() const;
  // max |c(-k) - conj c(k)| relative to max |c|
  double hermitian_defect() const;
  // projects onto the Hermitian-symmetric part and marks the field real
  SpectralField real_part() const;
  SpectralField imag_part() const;
  SpectralField conj() const;
  SpectralField as_complex() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  SpectralField& operator*=(cplx s);
  // this += s * o
  SpectralField& axpy(double s, const SpectralField& o);

 private:
  void require_same_grid(const SpectralField& o) const;

  Grid grid_;
  Reality reality_ = Reality::complex;
  std::vector<cplx> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a);
SpectralField operator*(double s, SpectralField a);
SpectralField operator*(cplx s, SpectralField a);

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<SpectralField> components);
  static VectorField zeros(const Grid& g, Reality r = Reality::real);

  std::size_t size() const { return c_.size(); }
  const Grid& grid() const { return c_.front().grid(); }
  bool is_real() const { return c_.front().is_real(); }
  const SpectralField& operator[](std::size_t i) const { return c_[i]; }
  SpectralField& operator[](std::size_t i) { return c_[i]; }
  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& axpy(double s, const VectorField& o);

 private:
  std::vector<SpectralField> c_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

// Parseval inner product <f, g> = L^dim sum conj(f_k) g_k and norms.
cplx inner(const SpectralField& f, const SpectralField& g);
double l2_norm(const SpectralField& f);
double l2_norm(const VectorField& v);
double l2_distance(const SpectralField& f, const SpectralField& g);
double l2_distance(const VectorField& f, const VectorField& g);
double real_inner(const VectorField& f, const VectorField& g);

void require_same_grid(const Grid& a, const Grid& b);

}  // namespace gaugewave
