#include "gaugewave/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaugewave/analysis.hpp"
#include "gaugewave/operators.hpp"

namespace gaugewave::evolve {

void check_cfl(const Grid& g, double dt) {
  const double courant = dt * g.max_wavenumber();
  if (courant > 1.0) {
    std::ostringstream os;
    os << "CFL violated: dt*|xi|max = " << courant << " exceeds 1 (leapfrog limit 2, safety factor 1/2)";
    throw CflError(os.str());
  }
}

long IntegratorConfig::steps() const {
  const double ratio = t_final / dt;
  const long n = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(n)) > 1e-6)
    throw PreconditionError("t_final must be a whole number of time steps");
  return n;
}

void IntegratorConfig::validate(const Grid& g) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw PreconditionError("t_final must be non-negative");
  if (snapshot_every < 1) throw PreconditionError("snapshot_every must be at least 1");
  if (regauge_every && *regauge_every < 1) throw PreconditionError("regauge_every must be at least 1");
  check_cfl(g, dt);
  steps();
  if (support_diameter && !(g.box_length > 2.0 * t_final + *support_diameter)) {
    std::ostringstream os;
    os << "light cone leaves the box: need L > 2 t_final + support diameter = " << 2.0 * t_final + *support_diameter;
    throw PreconditionError(os.str());
  }
}

namespace {

void add_scaled(PhaseState& s, double h, const PhaseRate& r) {
  for (std::size_t i = 0; i < s.q.size(); ++i) {
    s.q[i].axpy(h, r.dq[i]);
    s.p[i].axpy(h, r.dp[i]);
  }
  for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i].axpy(h, r.dc[i]);
}

}  // namespace

Integrator::Integrator(const Dynamics& dyn, Scheme scheme, double dt) : dyn_(dyn), scheme_(scheme), dt_(dt) {
  if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
}

void Integrator::step(PhaseState& s) {
  if (!s.q.empty()) check_cfl(s.q.front().grid(), dt_);
  const double h = dt_;
  if (scheme_ == Scheme::leapfrog) {
    if (cached_.empty()) cached_ = dyn_.forces(s);
    dyn_.kick(s, 0.5 * h, cached_, true);
    if (!s.c.empty()) {
      PhaseState mid = s;
      for (std::size_t i = 0; i < mid.q.size(); ++i) mid.q[i].axpy(0.5 * h, s.p[i]);
      auto rate = dyn_.first_order_rate(mid);
      for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i].axpy(h, rate[i]);
    }
    for (std::size_t i = 0; i < s.q.size(); ++i) s.q[i].axpy(h, s.p[i]);
    s.time += h;
    cached_ = dyn_.forces(s);
    dyn_.kick(s, 0.5 * h, cached_, false);
    return;
  }
  PhaseRate k1 = dyn_.rate(s);
  PhaseState y = s;
  add_scaled(y, 0.5 * h, k1);
  PhaseRate k2 = dyn_.rate(y);
  y = s;
  add_scaled(y, 0.5 * h, k2);
  PhaseRate k3 = dyn_.rate(y);
  y = s;
  add_scaled(y, h, k3);
  PhaseRate k4 = dyn_.rate(y);
  add_scaled(s, h / 6.0, k1);
  add_scaled(s, h / 3.0, k2);
  add_scaled(s, h / 3.0, k3);
  add_scaled(s, h / 6.0, k4);
  s.time += h;
}

PhaseState step(const PhaseState& s, const Dynamics& dyn, Scheme scheme, double dt) {
  PhaseState out = s;
  Integrator(dyn, scheme, dt).step(out);
  return out;
}

SystemState transform(const SystemState& s, const gauge::GaugeFunction& chi, const mcsh::Params& p) {
  if (auto* m = std::get_if<mkg::State>(&s)) return gauge::transform(*m, chi);
  return gauge::transform(std::get<mcsh::State>(s), chi, p);
}

SpectralField gauss_residual(const SystemState& s, const mcsh::Params& p) {
  if (auto* m = std::get_if<mkg::State>(&s)) return gauge::gauss_residual(*m);
  return gauge::gauss_residual(std::get<mcsh::State>(s), p);
}

RunRow diagnostics(const SystemState& s, const mcsh::Params& p) {
  RunRow r;
  r.gauss_l2 = l2_norm(gauss_residual(s, p));
  if (auto* m = std::get_if<mkg::State>(&s)) {
    r.t = m->time;
    r.energy = mkg::energy(*m);
    r.l2_a = l2_norm(m->a);
    r.l2_phi = l2_norm(m->phi);
    r.h1dot_a = analysis::h1dot_norm(m->a);
    r.h1dot_phi = analysis::h1dot_norm(m->phi);
  } else {
    const auto& c = std::get<mcsh::State>(s);
    r.t = c.time;
    r.energy = mcsh::energy(c, p);
    r.l2_a = l2_norm(c.a);
    r.l2_phi = l2_norm(c.phi);
    r.l2_n = l2_norm(c.n_tilde);
    r.h1dot_a = analysis::h1dot_norm(c.a);
    r.h1dot_phi = analysis::h1dot_norm(c.phi);
  }
  return r;
}

double state_distance(const SystemState& a, const SystemState& b) {
  double s = 0.0;
  if (auto* m = std::get_if<mkg::State>(&a)) {
    const auto& n = std::get<mkg::State>(b);
    s = std::pow(l2_distance(m->a, n.a), 2) + std::pow(l2_distance(m->da, n.da), 2) +
        std::pow(l2_distance(m->phi, n.phi), 2) + std::pow(l2_distance(m->dphi, n.dphi), 2);
  } else {
    const auto& m2 = std::get<mcsh::State>(a);
    const auto& n = std::get<mcsh::State>(b);
    s = std::pow(l2_distance(m2.a, n.a), 2) + std::pow(l2_distance(m2.da, n.da), 2) +
        std::pow(l2_distance(m2.phi, n.phi), 2) + std::pow(l2_distance(m2.dphi, n.dphi), 2) +
        std::pow(l2_distance(m2.n_tilde, n.n_tilde), 2) + std::pow(l2_distance(m2.dn_tilde, n.dn_tilde), 2);
  }
  return std::sqrt(s);
}

namespace {

// sup-norm of the configuration fields on the sample grid, via the coefficient sum when that is small
double field_max(const SystemState& s) {
  std::vector<const SpectralField*> fields;
  std::visit(
      [&](const auto& x) {
        for (const auto& c : x.a) fields.push_back(&c);
        fields.push_back(&x.phi);
      },
      s);
  double worst = 0.0;
  for (const auto* f : fields) {
    double bound = 0.0;
    for (const auto& c : f->coeffs()) bound += std::abs(c);
    if (bound > 1e8) {
      ComplexSamples x = to_physical(*f, Sampling::grid);
      double m = 0.0;
      for (const auto& z : x) m = std::max(m, std::abs(z));
      bound = m;
    }
    worst = std::max(worst, bound);
  }
  return worst;
}

double gauss_scale(const SystemState& s, const mcsh::Params& p) {
  return std::visit(
      [&](const auto& x) {
        double sc = l2_norm(divergence(x.da)) + l2_norm(x.phi) * l2_norm(x.dphi) / std::sqrt(x.grid().volume());
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, mcsh::State>) sc += p.kappa * l2_norm(curl_2d(x.a));
        return std::max(1.0, sc);
      },
      s);
}

}  // namespace

RunResult run(const SystemState& initial, const IntegratorConfig& cfg, const mcsh::Params& p,
              const SnapshotSink& sink) {
  const System sys = system_of(initial);
  const Grid& g = grid_of(initial);
  cfg.validate(g);
  const double residual = l2_norm(gauss_residual(initial, p));
  if (residual > 1e-10 * gauss_scale(initial, p)) {
    std::ostringstream os;
    os << "initial data violate the Gauss law (residual " << residual << ")";
    throw PreconditionError(os.str());
  }
  auto dyn = make_dynamics(sys, cfg.formulation, p);
  const long n = cfg.steps();

  std::optional<gauge::GaugeFunction> chi;
  auto enter = [&](const SystemState& orig) {
    if (!cfg.regauge_every) return dyn->to_phase(orig);
    const auto& a = std::visit([](const auto& x) -> const VectorField& { return x.a; }, orig);
    chi = gauge::coulomb_fix(a).chi;
    return dyn->to_phase(transform(orig, *chi, p));
  };
  auto observe = [&](const PhaseState& ps) {
    SystemState st = dyn->to_state(ps);
    return chi ? transform(st, -*chi, p) : st;
  };

  RunRecord rec;
  rec.system = sys;
  PhaseState ps = enter(initial);
  Integrator integ(*dyn, cfg.scheme, cfg.dt);
  std::optional<PhaseState> ref;
  std::optional<Integrator> ref_integ;
  if (cfg.regauge_every) {
    ref = dyn->to_phase(initial);
    ref_integ.emplace(*dyn, cfg.scheme, cfg.dt);
  }

  RunRow first = diagnostics(initial, p);
  first.step = 0;
  analysis::fill_growth_slack(sys, first, first);
  if (cfg.regauge_every) first.gauge_defect = 0.0;
  rec.rows.push_back(first);
  if (sink) sink(initial, 0);
  SystemState last_good = initial;

  for (long k = 1; k <= n; ++k) {
    integ.step(ps);
    ps.time = k * cfg.dt;
    if (ref) {
      ref_integ->step(*ref);
      ref->time = ps.time;
    }
    rec.steps = k;
    if (!ps.all_finite()) {
      std::ostringstream os;
      os << "non-finite field at t = " << ps.time;
      throw BlowUpError(os.str(), rec, last_good);
    }
    if (k % cfg.snapshot_every == 0 || k == n) {
      SystemState st = observe(ps);
      RunRow row = diagnostics(st, p);
      row.step = k;
      row.t = ps.time;
      analysis::fill_growth_slack(sys, first, row);
      if (ref) row.gauge_defect = state_distance(st, dyn->to_state(*ref));
      rec.rows.push_back(row);
      if (first.energy > 0.0 && std::abs(row.energy - first.energy) > 0.1 * first.energy) {
        std::ostringstream os;
        os << "energy drift exceeds 10% at t = " << row.t;
        throw BlowUpError(os.str(), rec, last_good);
      }
      if (field_max(st) > 1e8) {
        std::ostringstream os;
        os << "field maximum exceeds 1e8 at t = " << row.t;
        throw BlowUpError(os.str(), rec, last_good);
      }
      if (sink) sink(st, k);
      last_good = st;
    }
    if (cfg.regauge_every && k % *cfg.regauge_every == 0 && k < n) {
      SystemState orig = observe(ps);
      ps = enter(orig);
      ps.time = k * cfg.dt;
      integ.reset();
    }
  }
  SystemState final_state = n == 0 ? initial : observe(ps);
  return {std::move(rec), std::move(final_state)};
}

double DefectReport::max() const { return std::max({phi_modulus, curvature, electric, energy_density}); }

DefectReport compare_observables(const SystemState& a, const SystemState& b, const mcsh::Params& p) {
  if (system_of(a) != system_of(b)) throw PreconditionError("states belong to different systems");
  const Grid& g = grid_of(a);
  require_same_grid(g, grid_of(b));
  DefectReport r;
  auto modulus_gap = [&](const SpectralField& x, const SpectralField& y) {
    ComplexSamples px = to_physical(x), py = to_physical(y);
    RealSamples d(px.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::pow(std::abs(px[i]) - std::abs(py[i]), 2);
    return std::sqrt(integrate(d, g));
  };
  auto density_gap = [&](const RealSamples& x, const RealSamples& y) {
    RealSamples d(x.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::pow(x[i] - y[i], 2);
    return std::sqrt(integrate(d, g));
  };
  if (auto* m = std::get_if<mkg::State>(&a)) {
    const auto& n = std::get<mkg::State>(b);
    r.phi_modulus = modulus_gap(m->phi, n.phi);
    r.curvature = l2_distance(curl_3d(m->a), curl_3d(n.a));
    r.electric = l2_distance(m->da, n.da);
    r.energy_density = density_gap(mkg::energy_density(*m), mkg::energy_density(n));
  } else {
    const auto& m2 = std::get<mcsh::State>(a);
    const auto& n = std::get<mcsh::State>(b);
    r.phi_modulus = modulus_gap(m2.phi, n.phi);
    r.curvature = l2_distance(curl_2d(m2.a), curl_2d(n.a));
    r.electric = l2_distance(m2.da, n.da);
    r.energy_density = density_gap(mcsh::energy_density(m2, p), mcsh::energy_density(n, p));
  }
  return r;
}

DefectReport cross_validate(const SystemState& initial, IntegratorConfig cfg, const mcsh::Params& p) {
  cfg.regauge_every.reset();
  cfg.snapshot_every = std::max<long>(1, cfg.steps());
  cfg.formulation = Formulation::raw;
  auto raw = run(initial, cfg, p);
  cfg.formulation = Formulation::decomposed;
  auto dec = run(initial, cfg, p);
  return compare_observables(raw.final_state, dec.final_state, p);
}

}  // namespace gaugewave::evolve
