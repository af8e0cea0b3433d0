#include "gaugewave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "covariant.hpp"
#include "gaugewave/error.hpp"
#include "gaugewave/operators.hpp"

namespace gaugewave::analysis {

namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

double norm4_4(const ComplexSamples& s, const Grid& g) {
  double sum = 0.0;
  for (const auto& z : s) sum += std::pow(std::norm(z), 2);
  return g.volume() * sum / static_cast<double>(s.size());
}

double norm4_4(const RealSamples& s, const Grid& g) {
  double sum = 0.0;
  for (double v : s) sum += std::pow(v, 4);
  return g.volume() * sum / static_cast<double>(s.size());
}

// ||f g||_L2 by padded quadrature of the unprojected product
double product_norm(const ComplexSamples& f, const RealSamples& g, const Grid& grid) {
  double sum = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) sum += std::norm(f[x]) * g[x] * g[x];
  return std::sqrt(grid.volume() * sum / static_cast<double>(f.size()));
}

double vector_norm(const std::vector<SpectralField>& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::pow(l2_norm(c), 2);
  return std::sqrt(s);
}

void require_coulomb(const VectorField& a) {
  auto h = helmholtz(a);
  if (l2_norm(h.cf) > 1e-10 * std::max(1.0, l2_norm(a)))
    throw PreconditionError("curl-free part of A is nonzero; apply coulomb_fix first");
}

}  // namespace

double sobolev_norm(const SpectralField& f, double s) {
  const auto& xi2 = modes(f.grid()).xi2;
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += std::pow(1.0 + xi2[i], s) * std::norm(f[i]);
  return std::sqrt(f.grid().volume() * sum);
}

double h1dot_norm(const SpectralField& f) {
  const auto& xi2 = modes(f.grid()).xi2;
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += xi2[i] * std::norm(f[i]);
  return std::sqrt(f.grid().volume() * sum);
}

double h1dot_norm(const VectorField& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::pow(h1dot_norm(c), 2);
  return std::sqrt(s);
}

double quadrature_l2(const SpectralField& f) {
  ComplexSamples s = to_physical(f, Sampling::grid);
  return std::sqrt(detail::sample_norm2(s, f.grid()));
}

InequalityReport InequalityReport::bound(std::string name, double lhs, double rhs, double tolerance, bool hard) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.ratio = rhs != 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  r.hard = hard;
  r.pass = r.slack >= -tolerance;
  return r;
}

InequalityReport InequalityReport::equality(std::string name, double lhs, double rhs, double rel_tolerance,
                                            bool hard) {
  InequalityReport r = bound(std::move(name), lhs, rhs, 0.0, hard);
  r.pass = std::abs(lhs - rhs) <= rel_tolerance * std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return r;
}

InequalityReport InequalityReport::empirical(std::string name, double lhs, double rhs) {
  InequalityReport r = bound(std::move(name), lhs, rhs, 0.0, false);
  r.empirical_c = rhs > 0.0 ? lhs / rhs : 0.0;
  r.pass = std::isfinite(*r.empirical_c);
  return r;
}

GrowthConstants GrowthConstants::for_system(evolve::System sys) {
  if (sys == evolve::System::mkg) return {std::sqrt(2.0), std::sqrt(2.0), 0.0};
  return {std::sqrt(2.0), 1.0, std::sqrt(2.0)};
}

void fill_growth_slack(evolve::System sys, const evolve::RunRow& first, evolve::RunRow& row) {
  const auto c = GrowthConstants::for_system(sys);
  const double dt = row.t - first.t;
  const double root = std::sqrt(std::max(first.energy, 0.0));
  row.a_slack = first.l2_a + c.a * dt * root - row.l2_a;
  row.phi_slack = first.l2_phi + c.phi * dt * root - row.l2_phi;
  row.n_slack = sys == evolve::System::mcsh ? first.l2_n + c.n * dt * root - row.l2_n
                                            : std::numeric_limits<double>::quiet_NaN();
}

std::vector<GrowthRow> growth_bound_check(const evolve::RunRecord& record) {
  if (record.rows.empty()) throw PreconditionError("growth bound check needs a nonempty record");
  const auto& first = record.rows.front();
  const auto c = GrowthConstants::for_system(record.system);
  const double root = std::sqrt(std::max(first.energy, 0.0));
  const double tol = 1e-9;
  std::vector<GrowthRow> out;
  for (const auto& row : record.rows) {
    const double dt = row.t - first.t;
    GrowthRow g{row.t,
                InequalityReport::bound("A L2 growth", row.l2_a, first.l2_a + c.a * dt * root, tol),
                InequalityReport::bound("phi L2 growth", row.l2_phi, first.l2_phi + c.phi * dt * root, tol),
                InequalityReport::bound("Ntilde L2 growth", row.l2_n, first.l2_n + c.n * dt * root, tol,
                                        record.system == evolve::System::mcsh)};
    out.push_back(std::move(g));
  }
  return out;
}

CovariantGradientReport covariant_gradient_check(const SpectralField& phi0, const VectorField& a) {
  require_same_grid(phi0.grid(), a.grid());
  if (!a.is_real()) throw PreconditionError("vector potential must be real");
  for (const auto& c : a)
    if (std::abs(c.mean()) > 1e-12 * std::max(1.0, l2_norm(a)))
      throw PreconditionError("vector potential must have zero mean");
  CovariantGradientReport r;
  std::vector<SpectralField> grad, u;
  const cplx I(0.0, 1.0);
  for (int j = 0; j < phi0.grid().dim; ++j) {
    grad.push_back(partial(phi0, j));
    u.push_back(grad.back() - I * multiply(a[j], phi0));
  }
  r.grad_phi = vector_norm(grad);
  r.u = vector_norm(u);
  r.a_h1dot = h1dot_norm(a);
  r.phi_l2 = l2_norm(phi0);
  const double den = r.a_h1dot * r.a_h1dot * r.phi_l2;
  r.c_emp = den > 0.0 ? std::max(0.0, r.grad_phi - 2.0 * r.u) / den : 0.0;
  return r;
}

std::vector<InequalityReport> h1_control_check(const mkg::State& s) {
  require_coulomb(s.a);
  const Grid& g = s.grid();
  const double e = mkg::energy(s);
  const double root2e = std::sqrt(2.0 * e);
  std::vector<InequalityReport> out;
  const double a_h1 = h1dot_norm(s.a), curl = l2_norm(curl_3d(s.a));
  out.push_back(InequalityReport::equality("df Hdot1 equals curl L2", a_h1, curl, 1e-12));
  out.push_back(InequalityReport::bound("curl A <= sqrt(2E)", curl, root2e, 1e-12 * root2e));

  auto cov = detail::sample_covariant(s.a, s.phi, 1.0);
  double d2 = 0.0, ap2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    d2 += detail::sample_norm2(cov.psi[j], g);
    ap2 += std::pow(product_norm(cov.phi, cov.a[j], g), 2);
  }
  const double dphi = std::sqrt(d2), aphi = std::sqrt(ap2);
  const double grad = h1dot_norm(s.phi), phi_l2 = l2_norm(s.phi);
  out.push_back(InequalityReport::bound("|D phi| <= sqrt(2E)", dphi, root2e, 1e-12 * root2e));
  out.push_back(InequalityReport::bound("|grad phi| <= |D phi| + |A phi|", grad, dphi + aphi,
                                        1e-12 * std::max(1.0, grad)));
  const double lemma_excess = std::max(0.0, grad - 2.0 * dphi);
  out.push_back(InequalityReport::empirical("gauge-covariant gradient lemma constant", lemma_excess,
                                            a_h1 * a_h1 * phi_l2));
  out.push_back(InequalityReport::empirical("gradient control constant", grad, 1.0 + e * (1.0 + phi_l2)));
  return out;
}

std::vector<InequalityReport> h1_control_check(const mcsh::State& s, const mcsh::Params& p) {
  require_coulomb(s.a);
  const Grid& g = s.grid();
  const double e = mcsh::energy(s, p);
  std::vector<InequalityReport> out;
  const double a_h1 = h1dot_norm(s.a), curl = l2_norm(curl_2d(s.a));
  out.push_back(InequalityReport::equality("df gradient equals curl L2", a_h1, curl, 1e-12));
  out.push_back(InequalityReport::bound("curl A <= sqrt(2E)", curl, std::sqrt(2.0 * e), 1e-12 * std::sqrt(2.0 * e)));

  auto cov = detail::sample_covariant(s.a, s.phi, p.e);
  const double phi_l2 = l2_norm(s.phi), grad = h1dot_norm(s.phi), a_l2 = l2_norm(s.a);
  const double phi4 = std::pow(norm4_4(cov.phi, g), 0.25);
  out.push_back(InequalityReport::empirical("Ladyzhenskaya constant for phi", std::pow(phi4, 4),
                                            phi_l2 * phi_l2 * grad * grad));
  double d2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    const std::string tag = " (i=" + std::to_string(i + 1) + ")";
    const double di = std::sqrt(detail::sample_norm2(cov.psi[i], g));
    d2 += di * di;
    const double gi = l2_norm(partial(s.phi, i));
    const double api = std::abs(p.e) * product_norm(cov.phi, cov.a[i], g);
    const double ai4 = std::pow(norm4_4(cov.a[i], g), 0.25);
    out.push_back(InequalityReport::bound("|d phi| <= |D phi| + |e A phi|" + tag, gi, di + api,
                                          1e-12 * std::max(1.0, gi)));
    out.push_back(InequalityReport::bound("Hoelder |A phi| <= |phi|_4 |A|_4" + tag, api,
                                          std::abs(p.e) * phi4 * ai4, 1e-12 * std::max(1.0, api)));
    out.push_back(InequalityReport::empirical("Ladyzhenskaya constant for A" + tag, std::pow(ai4, 4),
                                              std::pow(l2_norm(s.a[i]) * h1dot_norm(s.a[i]), 2)));
  }
  out.push_back(InequalityReport::bound("|D phi| <= sqrt(E)", std::sqrt(d2), std::sqrt(e), 1e-12 * std::sqrt(e)));
  out.push_back(InequalityReport::empirical("gradient control constant", grad,
                                            1.0 + e + phi_l2 * phi_l2 * a_l2 * a_l2));
  return out;
}

SpaceTimeBlock::SpaceTimeBlock(double dt_, std::vector<SpectralField> samples_, Window window_)
    : dt(dt_), samples(std::move(samples_)), window(window_) {
  if (samples.size() < 8) throw PreconditionError("space-time block needs at least 8 time samples");
  if (!(dt > 0.0)) throw PreconditionError("time step must be positive");
  for (const auto& s : samples) require_same_grid(s.grid(), samples.front().grid());
}

double taper(double t, double period) {
  const double alpha = 0.5;
  const double x = t / period;
  const double edge = 0.5 * alpha;
  if (x < edge) return 0.5 * (1.0 - std::cos(std::numbers::pi * x / edge));
  if (x > 1.0 - edge) return 0.5 * (1.0 - std::cos(std::numbers::pi * (1.0 - x) / edge));
  return 1.0;
}

double xsb_weight_norm(const SpaceTimeBlock& block, double s, double b, Flavor flavor) {
  const Grid& g = block.grid();
  const auto& t = modes(g);
  const std::size_t nt = block.samples.size();
  const double period = block.period();
  std::vector<double> w(nt, 1.0);
  if (block.window == Window::cosine_taper)
    for (std::size_t m = 0; m < nt; ++m) w[m] = taper(block.dt * m, period);
  std::vector<double> tau(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    long jj = j < nt / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(nt);
    tau[j] = 2.0 * std::numbers::pi * jj / period;
  }
  // exp(+i tau_j t_m) table
  std::vector<cplx> phase(nt * nt);
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t m = 0; m < nt; ++m)
      phase[j * nt + m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * m) % nt) / nt);

  double sum = 0.0;
  std::vector<cplx> u(nt);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!t.resolved[k]) continue;
    bool any = false;
    for (std::size_t m = 0; m < nt; ++m) {
      u[m] = w[m] * block.samples[m][k];
      any = any || u[m] != cplx{};
    }
    if (!any) continue;
    const double xi = std::sqrt(t.xi2[k]);
    const double space = std::pow(1.0 + t.xi2[k], s);
    for (std::size_t j = 0; j < nt; ++j) {
      cplx acc{};
      for (std::size_t m = 0; m < nt; ++m) acc += phase[j * nt + m] * u[m];
      acc /= static_cast<double>(nt);
      double sigma = 0.0;
      switch (flavor) {
        case Flavor::wave: sigma = std::abs(tau[j]) - xi; break;
        case Flavor::wave_plus: sigma = -tau[j] + xi; break;
        case Flavor::wave_minus: sigma = -tau[j] - xi; break;
        case Flavor::tau0: sigma = tau[j]; break;
      }
      sum += space * std::pow(bracket(sigma), 2.0 * b) * std::norm(acc);
    }
  }
  return std::sqrt(period * g.volume() * sum);
}

WeightCheckResult weight_inequality_check(double s, double b, const Grid& g, int n_t, std::optional<double> period) {
  if (n_t < 8) throw PreconditionError("time lattice needs at least 8 nodes");
  const double T = period.value_or(g.box_length);
  const auto& t = modes(g);
  WeightCheckResult r;
  r.worst.margin = std::numeric_limits<double>::infinity();
  for (int j = -n_t / 2; j < n_t / 2; ++j) {
    const double tau = 2.0 * std::numbers::pi * j / T;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!t.resolved[k]) continue;
      const double xi = std::sqrt(t.xi2[k]);
      const double space = std::pow(bracket(xi), s);
      const double wave = space * std::pow(bracket(std::abs(tau) - xi), b);
      for (int sign : {1, -1}) {
        const double signed_w = space * std::pow(bracket(-tau + sign * xi), b);
        // b >= 0: wave <= signed; b <= 0: wave >= signed
        const double diff = b >= 0.0 ? signed_w - wave : wave - signed_w;
        const double margin = diff / std::max(wave, signed_w);
        ++r.nodes;
        if (margin < r.worst.margin) r.worst = {tau, xi, sign, wave, signed_w, margin};
        if (margin < -1e-14) r.pass = false;
      }
    }
  }
  return r;
}

}  // namespace gaugewave::analysis
