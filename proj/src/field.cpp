#include "gaugewave/field.hpp"

#include <algorithm>
#include <cmath>

#include "gaugewave/error.hpp"

namespace gaugewave {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw PreconditionError("fields live on different grids");
}

SpectralField::SpectralField(const Grid& g, Reality r) : grid_(g), reality_(r) {
  g.validate();
  coeffs_.assign(g.size(), cplx{});
}

SpectralField::SpectralField(const Grid& g, Reality r, std::vector<cplx> coeffs)
    : grid_(g), reality_(r), coeffs_(std::move(coeffs)) {
  g.validate();
  if (coeffs_.size() != g.size()) throw PreconditionError("coefficient count does not match grid");
  const auto& t = modes(g);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!t.resolved[i]) coeffs_[i] = 0.0;
}

namespace {

std::size_t flat_index(const Grid& g, const std::array<int, 3>& k) {
  std::size_t flat = 0;
  for (int d = 0; d < g.dim; ++d) {
    if (k[d] <= -g.n / 2 || k[d] >= g.n / 2) throw PreconditionError("wavenumber outside the resolved band");
    flat = flat * g.n + static_cast<std::size_t>((k[d] + g.n) % g.n);
  }
  return flat;
}

}  // namespace

cplx SpectralField::mode(const std::array<int, 3>& k) const { return coeffs_[flat_index(grid_, k)]; }

void SpectralField::set_mode(const std::array<int, 3>& k, cplx value) {
  std::size_t i = flat_index(grid_, k);
  if (is_real()) {
    std::size_t j = modes(grid_).negated[i];
    if (i == j) value = value.real();
    coeffs_[j] = std::conj(value);
  }
  coeffs_[i] = value;
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double SpectralField::hermitian_defect() const {
  const auto& neg = modes(grid_).negated;
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    worst = std::max(worst, std::abs(coeffs_[neg[i]] - std::conj(coeffs_[i])));
    scale = std::max(scale, std::abs(coeffs_[i]));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

SpectralField SpectralField::real_part() const {
  const auto& neg = modes(grid_).negated;
  SpectralField out(grid_, Reality::real);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = 0.5 * (coeffs_[i] + std::conj(coeffs_[neg[i]]));
  return out;
}

SpectralField SpectralField::imag_part() const {
  const auto& neg = modes(grid_).negated;
  SpectralField out(grid_, Reality::real);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out.coeffs_[i] = (coeffs_[i] - std::conj(coeffs_[neg[i]])) / cplx(0.0, 2.0);
  return out;
}

SpectralField SpectralField::conj() const {
  const auto& neg = modes(grid_).negated;
  SpectralField out(grid_, reality_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = std::conj(coeffs_[neg[i]]);
  return out;
}

SpectralField SpectralField::as_complex() const {
  SpectralField out = *this;
  out.reality_ = Reality::complex;
  return out;
}

void SpectralField::require_same_grid(const SpectralField& o) const { gaugewave::require_same_grid(grid_, o.grid_); }

SpectralField& SpectralField::operator+=(const SpectralField& o) { return axpy(1.0, o); }
SpectralField& SpectralField::operator-=(const SpectralField& o) { return axpy(-1.0, o); }

SpectralField& SpectralField::axpy(double s, const SpectralField& o) {
  require_same_grid(o);
  if (!o.is_real()) reality_ = Reality::complex;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
  if (s.imag() != 0.0) reality_ = Reality::complex;
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator-(SpectralField a) { return a *= -1.0; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

VectorField::VectorField(std::vector<SpectralField> components) : c_(std::move(components)) {
  if (c_.empty()) throw PreconditionError("vector field needs components");
  for (const auto& c : c_) {
    require_same_grid(c.grid(), c_.front().grid());
    if (c.reality() != c_.front().reality()) throw PreconditionError("vector components differ in reality");
  }
  if (static_cast<int>(c_.size()) != c_.front().grid().dim)
    throw PreconditionError("vector field needs one component per axis");
}

VectorField VectorField::zeros(const Grid& g, Reality r) {
  return VectorField(std::vector<SpectralField>(g.dim, SpectralField(g, r)));
}

VectorField& VectorField::operator+=(const VectorField& o) { return axpy(1.0, o); }
VectorField& VectorField::operator-=(const VectorField& o) { return axpy(-1.0, o); }

VectorField& VectorField::axpy(double s, const VectorField& o) {
  if (o.size() != size()) throw PreconditionError("vector fields differ in length");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i].axpy(s, o.c_[i]);
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

cplx inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid());
  cplx s{};
  for (std::size_t i = 0; i < f.size(); ++i) s += std::conj(f[i]) * g[i];
  return f.grid().volume() * s;
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(f.grid().volume() * s);
}

double l2_norm(const VectorField& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::pow(l2_norm(c), 2);
  return std::sqrt(s);
}

double l2_distance(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid());
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f[i] - g[i]);
  return std::sqrt(f.grid().volume() * s);
}

double l2_distance(const VectorField& f, const VectorField& g) {
  if (f.size() != g.size()) throw PreconditionError("vector fields differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(l2_distance(f[i], g[i]), 2);
  return std::sqrt(s);
}

double real_inner(const VectorField& f, const VectorField& g) {
  if (f.size() != g.size()) throw PreconditionError("vector fields differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += inner(f[i], g[i]).real();
  return s;
}

}  // namespace gaugewave
