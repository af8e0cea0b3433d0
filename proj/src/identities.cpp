#include "gaugewave/identities.hpp"

#include <algorithm>
#include <cmath>

#include "gaugewave/error.hpp"
#include "gaugewave/operators.hpp"

namespace gaugewave {

namespace {

void calibrate(IdentityReport& r) {
  cplx num{};
  double den = 0.0, lhs2 = 0.0;
  for (std::size_t d = 0; d < r.lhs.size(); ++d) {
    num += inner(r.rhs[d], r.lhs[d]);
    den += std::pow(l2_norm(r.rhs[d]), 2);
    lhs2 += std::pow(l2_norm(r.lhs[d]), 2);
  }
  const double lhs_norm = std::sqrt(lhs2);
  const double scale = lhs_norm > 0.0 ? lhs_norm : 1.0;
  r.degenerate = !(den > 0.0);
  r.alpha = r.degenerate ? cplx(1.0, 0.0) : num / den;
  double res = 0.0, raw = 0.0;
  for (std::size_t d = 0; d < r.lhs.size(); ++d) {
    res += std::pow(l2_norm(r.lhs[d] - r.alpha * r.rhs[d]), 2);
    raw += std::pow(l2_distance(r.lhs[d], r.rhs[d]), 2);
  }
  r.residual = std::sqrt(res) / scale;
  r.raw_residual = std::sqrt(raw) / scale;
}

}  // namespace

IdentityReport check_transport_null_form(const VectorField& a_df, const SpectralField& phi) {
  const Grid& g = phi.grid();
  require_same_grid(a_df.grid(), g);
  double h1 = 0.0;
  for (const auto& c : a_df) h1 += std::pow(l2_norm(gradient(c)), 2);
  if (l2_norm(divergence(a_df)) > 1e-12 * std::max(1.0, std::sqrt(h1)))
    throw PreconditionError("transport identity needs a divergence-free vector field");
  for (const auto& c : a_df)
    if (std::abs(c.mean()) * std::sqrt(g.volume()) > 1e-12 * std::max(1.0, l2_norm(a_df)))
      throw PreconditionError("transport identity needs a zero-mean vector field");

  SpectralField lhs(g, Reality::complex);
  for (int i = 0; i < g.dim; ++i) lhs += multiply(a_df[i], partial(phi, i));
  lhs *= 2.0;

  SpectralField rhs(g, Reality::complex);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      if (i == j) continue;
      SpectralField b = inv_modulus_d(riesz(a_df[j], i) - riesz(a_df[i], j));
      rhs += null_form(phi, b, i, j);
    }

  IdentityReport r;
  r.lhs.push_back(lhs.as_complex());
  r.rhs.push_back(rhs.as_complex());
  calibrate(r);
  return r;
}

IdentityReport check_projected_current(const SpectralField& phi) {
  const Grid& g = phi.grid();
  if (g.dim != 3) throw PreconditionError("projected current identity is three-dimensional");
  const SpectralField u = phi.real_part(), v = phi.imag_part();

  // Im(phi conj d_i phi) = v d_i u - u d_i v
  std::vector<SpectralField> current;
  for (int i = 0; i < 3; ++i) current.push_back(multiply(v, partial(u, i)) - multiply(u, partial(v, i)));
  VectorField projected = project_df(VectorField(std::move(current)));

  IdentityReport r;
  for (int i = 0; i < 3; ++i) {
    SpectralField lhs = projected[i];
    lhs[0] = 0.0;
    SpectralField rhs(g, Reality::real);
    for (int j = 0; j < 3; ++j)
      if (j != i) rhs += riesz(inv_modulus_d(null_form(u, v, i, j)), j);
    rhs *= 2.0;
    r.lhs.push_back(lhs.as_complex());
    r.rhs.push_back(rhs.as_complex());
  }
  calibrate(r);
  return r;
}

}  // namespace gaugewave
