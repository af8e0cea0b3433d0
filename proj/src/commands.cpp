#include "gaugewave/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "gaugewave/analysis.hpp"
#include "gaugewave/config.hpp"
#include "gaugewave/gauge.hpp"
#include "gaugewave/identities.hpp"
#include "gaugewave/operators.hpp"
#include "gaugewave/snapshot.hpp"

namespace gaugewave::cli {

using nlohmann::json;
using analysis::InequalityReport;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

const char* system_name(evolve::System s) { return s == evolve::System::mkg ? "mkg" : "mcsh"; }

void write_csv(const std::filesystem::path& path, const evolve::RunRecord& rec) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  const bool mkg = rec.system == evolve::System::mkg;
  out << "# schema=1\n# created=" << utc_now() << "\n";
  out << "t,E,gauss_l2,l2_A,l2_phi,l2_N,h1dot_A,h1dot_phi,bound37_slack,bound39_slack,bound52_slack\n";
  for (const auto& r : rec.rows) {
    out << num(r.t) << ',' << num(r.energy) << ',' << num(r.gauss_l2) << ',' << num(r.l2_a) << ',' << num(r.l2_phi)
        << ',' << (mkg ? "nan" : num(r.l2_n)) << ',' << num(r.h1dot_a) << ',' << num(r.h1dot_phi) << ','
        << num(r.a_slack) << ',' << num(r.phi_slack) << ',' << num(r.n_slack) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_jsonl(const std::filesystem::path& path, const evolve::RunRecord& rec) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  const bool mkg = rec.system == evolve::System::mkg;
  for (const auto& r : rec.rows) {
    json j = {{"system", system_name(rec.system)},
              {"step", r.step},
              {"t", r.t},
              {"E", r.energy},
              {"gauss_l2", r.gauss_l2},
              {"l2_A", r.l2_a},
              {"l2_phi", r.l2_phi},
              {"l2_N", mkg ? json(nullptr) : json(r.l2_n)},
              {"h1dot_A", r.h1dot_a},
              {"h1dot_phi", r.h1dot_phi},
              {"bound37_slack", finite_or_null(r.a_slack)},
              {"bound39_slack", finite_or_null(r.phi_slack)},
              {"bound52_slack", finite_or_null(r.n_slack)},
              {"gauge_defect", finite_or_null(r.gauge_defect)}};
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::string step_dir(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%08ld", step);
  return buf;
}

json to_json(const InequalityReport& r) {
  json j = {{"name", r.name},          {"lhs", finite_or_null(r.lhs)},     {"rhs", finite_or_null(r.rhs)},
            {"slack", finite_or_null(r.slack)}, {"ratio", finite_or_null(r.ratio)}, {"hard", r.hard},
            {"pass", r.pass}};
  j["empirical_C"] = r.empirical_c ? finite_or_null(*r.empirical_c) : json(nullptr);
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  j["resolution"] = r.resolution ? json(*r.resolution) : json(nullptr);
  return j;
}

struct Suite {
  std::vector<InequalityReport> checks;
  json extra = json::object();

  void add(InequalityReport r, std::optional<std::uint64_t> seed, int n) {
    r.seed = seed;
    r.resolution = n;
    checks.push_back(std::move(r));
  }
  bool pass() const {
    for (const auto& c : checks)
      if (c.hard && !c.pass) return false;
    return true;
  }
};

constexpr int sweep_seeds = 5;

std::uint64_t base_seed(const RunConfig& c) { return c.data.kind == DataKind::random ? c.data.seed : 0; }

SpectrumProfile profile_of(const RunConfig& c) {
  return c.data.kind == DataKind::random ? SpectrumProfile{c.data.xi0} : SpectrumProfile::default_for(c.grid);
}

VectorField zero_mean(VectorField v) {
  for (auto& c : v) c.set_mode({0, 0, 0}, 0.0);
  return v;
}

Suite suite_identities(const RunConfig& c) {
  Suite s;
  const Grid& g = c.grid;
  const auto prof = profile_of(c);
  json alphas = json::array();
  for (int i = 0; i < sweep_seeds; ++i) {
    const std::uint64_t seed = base_seed(c) + i;
    const auto phi = random_field(g, Reality::complex, seed, 1, prof, 1.0);
    const auto a = zero_mean(random_df_vector(g, seed, 2, prof, 1.0));
    const auto t = check_transport_null_form(a, phi);
    s.add(InequalityReport::bound("transport alpha - 1", std::abs(t.alpha - 1.0), 1e-10), seed, g.n);
    s.add(InequalityReport::bound("transport residual", t.residual, 1e-10), seed, g.n);
    json entry = {{"seed", seed}, {"transport_alpha", {t.alpha.real(), t.alpha.imag()}}};
    if (g.dim == 3) {
      const auto p = check_projected_current(phi);
      s.add(InequalityReport::bound("projected current alpha + 1", std::abs(p.alpha + 1.0), 1e-10), seed, g.n);
      s.add(InequalityReport::bound("projected current residual", p.residual, 1e-10), seed, g.n);
      entry["projected_current_alpha"] = {p.alpha.real(), p.alpha.imag()};
    }
    alphas.push_back(entry);
  }
  s.extra["alpha"] = alphas;
  return s;
}

Suite suite_gauge(const RunConfig& c) {
  Suite s;
  const Grid& g = c.grid;
  const auto prof = profile_of(c);
  for (int i = 0; i < sweep_seeds; ++i) {
    const std::uint64_t seed = base_seed(c) + i;
    const auto a = random_vector(g, seed, 3, prof, 1.0);
    const double scale = l2_norm(a);
    const auto h = helmholtz(a);
    s.add(InequalityReport::bound("helmholtz recomposition", l2_distance(h.df + h.cf, a), 1e-12 * scale), seed, g.n);
    s.add(InequalityReport::bound("helmholtz orthogonality", std::abs(real_inner(h.df, h.cf)), 1e-12 * scale * scale),
          seed, g.n);
    s.add(InequalityReport::bound("div of df part", l2_norm(divergence(h.df)), 1e-12 * g.max_wavenumber() * scale),
          seed, g.n);
    const double curl_cf = g.dim == 2 ? l2_norm(curl_2d(h.cf)) : l2_norm(curl_3d(h.cf));
    s.add(InequalityReport::bound("curl of cf part", curl_cf, 1e-12 * g.max_wavenumber() * scale), seed, g.n);
    const auto fixed = gauge::coulomb_fix(a);
    s.add(InequalityReport::bound("coulomb div", l2_norm(divergence(fixed.a)), 1e-12 * g.max_wavenumber() * scale),
          seed, g.n);
    const auto again = gauge::coulomb_fix(fixed.a);
    s.add(InequalityReport::bound("coulomb idempotent", l2_distance(again.a, fixed.a), 1e-12 * scale), seed, g.n);
  }
  // gauge covariance of the configured run
  const auto s0 = build_initial(c);
  auto cfg = c.integrator;
  cfg.regauge_every.reset();
  cfg.snapshot_every = std::max<long>(1, cfg.steps());
  const auto direct = evolve::run(s0, cfg, c.params).final_state;
  // gauge functions narrower than the data, so exp(i chi) phi stays resolved on the grid
  const SpectrumProfile gentle{0.7 * profile_of(c).xi0};
  for (int i = 0; i < 2; ++i) {
    const std::uint64_t seed = base_seed(c) + 1000 + i;
    const auto chi = gauge::random_gauge(c.grid, seed, gentle, 0.3);
    const auto moved = evolve::run(evolve::transform(s0, chi, c.params), cfg, c.params).final_state;
    const double d = evolve::state_distance(moved, evolve::transform(direct, chi, c.params));
    s.add(InequalityReport::bound("gauge covariance", d, 1e-8), seed, g.n);
  }
  return s;
}

Suite suite_bounds(const RunConfig& c) {
  Suite s;
  const auto s0 = build_initial(c);
  const auto res = evolve::run(s0, c.integrator, c.params);
  for (const auto& row : analysis::growth_bound_check(res.record)) {
    s.add(row.a, std::nullopt, c.grid.n);
    s.add(row.phi, std::nullopt, c.grid.n);
    if (c.system == evolve::System::mcsh) s.add(row.n, std::nullopt, c.grid.n);
  }
  // gradient-control chain on the Coulomb-fixed data
  const auto& a0 = std::visit([](const auto& x) -> const VectorField& { return x.a; }, s0);
  const auto fixed = evolve::transform(s0, gauge::coulomb_fix(a0).chi, c.params);
  std::vector<InequalityReport> chain;
  if (auto* m = std::get_if<mkg::State>(&fixed))
    chain = analysis::h1_control_check(*m);
  else
    chain = analysis::h1_control_check(std::get<mcsh::State>(fixed), c.params);
  for (auto& r : chain) s.add(r, base_seed(c), c.grid.n);
  const auto& fa = std::visit([](const auto& x) -> const VectorField& { return x.a; }, fixed);
  const auto& fphi = std::visit([](const auto& x) -> const SpectralField& { return x.phi; }, fixed);
  const auto l = analysis::covariant_gradient_check(fphi, zero_mean(fa));
  s.extra["covariant_gradient"] = {{"grad_phi", l.grad_phi}, {"U", l.u}, {"a_h1dot", l.a_h1dot}, {"phi_l2", l.phi_l2},
                        {"C_emp", l.c_emp}};
  return s;
}

Suite suite_weights(const RunConfig& c) {
  Suite s;
  const int n_t = 64;
  const std::pair<double, double> sb[] = {{0.0, 0.5}, {1.0, 0.5}, {0.5, 0.75}, {1.0, -0.5}, {2.0, -1.0}, {0.0, 0.0}};
  json nodes = json::array();
  for (const auto& [sv, bv] : sb) {
    const auto r = analysis::weight_inequality_check(sv, bv, c.grid, n_t);
    auto rep = InequalityReport::bound("weight ordering s=" + num(sv) + " b=" + num(bv), -r.worst.margin, 1e-14);
    rep.pass = r.pass;
    s.add(rep, std::nullopt, c.grid.n);
    nodes.push_back({{"s", sv},
                     {"b", bv},
                     {"nodes", r.nodes},
                     {"pass", r.pass},
                     {"worst", {{"tau", r.worst.tau}, {"xi", r.worst.xi}, {"sign", r.worst.sign},
                                {"margin", r.worst.margin}}}});
  }
  s.extra["lattices"] = nodes;
  s.extra["time_samples"] = n_t;
  return s;
}

Suite suite_crossval(const RunConfig& c) {
  Suite s;
  const auto s0 = build_initial(c);
  auto cfg = c.integrator;
  const auto coarse = evolve::cross_validate(s0, cfg, c.params);
  cfg.dt /= 2.0;
  const auto fine = evolve::cross_validate(s0, cfg, c.params);
  const double order = std::log2(coarse.max() / fine.max());
  s.extra["defect"] = {{"dt", c.integrator.dt}, {"coarse", coarse.max()}, {"fine", fine.max()}, {"order", order},
                       {"phi_modulus", coarse.phi_modulus}, {"curvature", coarse.curvature},
                       {"electric", coarse.electric}, {"energy_density", coarse.energy_density}};
  if (coarse.max() <= 1e-10) {
    s.add(InequalityReport::bound("formulation defect", coarse.max(), 1e-10), base_seed(c), c.grid.n);
  } else {
    // second order in dt: the defect must fall at least 2^1.8 on halving
    auto r = InequalityReport::bound("formulation defect order", 1.8, order);
    s.add(r, base_seed(c), c.grid.n);
  }
  return s;
}

int report_errors(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const evolve::BlowUpError& e) {
    err << "blow-up: " << e.what() << '\n';
    return blow_up;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return config_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
}

}  // namespace

int cmd_evolve(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  return report_errors(err, [&] {
    const RunConfig c = load_config(config);
    const auto initial = build_initial(c);
    std::filesystem::create_directories(c.output.directory);
    evolve::SnapshotSink sink;
    if (c.output.snapshots)
      sink = [&](const evolve::SystemState& s, long step) {
        write_state(c.output.directory / "snapshots" / step_dir(step), s);
      };
    auto emit = [&](const evolve::RunRecord& rec) {
      if (c.output.csv) write_csv(c.output.directory / "run.csv", rec);
      if (c.output.jsonl) write_jsonl(c.output.directory / "run.jsonl", rec);
    };
    try {
      const auto res = evolve::run(initial, c.integrator, c.params, sink);
      emit(res.record);
      const auto& first = res.record.rows.front();
      const auto& last = res.record.rows.back();
      out << system_name(c.system) << ": " << res.record.steps << " steps to t = " << last.t
          << ", relative energy drift " << (first.energy > 0 ? std::abs(last.energy - first.energy) / first.energy : 0.0)
          << '\n';
      return static_cast<int>(ok);
    } catch (const evolve::BlowUpError& e) {
      emit(e.record);
      if (c.output.snapshots) write_state(c.output.directory / "snapshots" / "last_good", e.last_good);
      throw;
    }
  });
}

int cmd_check(const std::string& suite, const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, Suite (*)(const RunConfig&)> suites = {{"identities", suite_identities},
                                                                          {"gauge", suite_gauge},
                                                                          {"bounds", suite_bounds},
                                                                          {"weights", suite_weights},
                                                                          {"crossval", suite_crossval}};
  const auto it = suites.find(suite);
  if (it == suites.end()) {
    err << "unknown suite '" << suite << "' (identities, gauge, bounds, weights, crossval)\n";
    return config_error;
  }
  return report_errors(err, [&] {
    const RunConfig c = load_config(config);
    json report = {{"suite", suite}, {"system", system_name(c.system)}, {"n", c.grid.n}};
    Suite s;
    int code = ok;
    try {
      s = it->second(c);
      code = s.pass() ? ok : failure;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      report["error"] = e.what();
      err << "error: " << e.what() << '\n';
      code = failure;
    }
    report["pass"] = code == ok;
    report["checks"] = json::array();
    for (const auto& r : s.checks) report["checks"].push_back(to_json(r));
    for (auto& [k, v] : s.extra.items()) report[k] = v;
    std::filesystem::create_directories(c.output.directory);
    std::ofstream f(c.output.directory / ("check_" + suite + ".json"));
    f << report.dump(2) << '\n';
    if (!f) throw IoError("cannot write the check report");
    out << report.dump(2) << '\n';
    return code;
  });
}

int cmd_norms(const std::vector<std::filesystem::path>& snapshots, const std::vector<double>& s_list,
              const std::vector<double>& b_list, std::ostream& out, std::ostream& err) {
  std::vector<Snapshot> snaps;
  try {
    for (const auto& p : snapshots) snaps.push_back(read_snapshot(p));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return config_error;
  }
  if (snaps.empty()) {
    err << "error: no snapshot given\n";
    return config_error;
  }
  return report_errors(err, [&] {
    std::optional<analysis::SpaceTimeBlock> block;
    if (!b_list.empty()) {
      if (snaps.size() < 8) throw ConfigError(0, "b needs at least 8 snapshots forming a time series");
      const double dt = snaps[1].time - snaps[0].time;
      std::vector<SpectralField> fields;
      for (std::size_t i = 0; i < snaps.size(); ++i) {
        if (snaps[i].name != snaps[0].name || !(snaps[i].field.grid() == snaps[0].field.grid()))
          throw ConfigError(0, "time series snapshots must hold one field on one grid");
        if (std::abs(snaps[i].time - snaps[0].time - dt * static_cast<double>(i)) > 1e-9 * std::max(1.0, dt))
          throw ConfigError(0, "time series snapshots must be uniformly spaced in time");
        fields.push_back(snaps[i].field);
      }
      if (!(dt > 0.0)) throw ConfigError(0, "time series snapshots must have increasing times");
      block.emplace(dt, std::move(fields));
    }
    const std::vector<double> ss = s_list.empty() ? std::vector<double>{0.0} : s_list;
    json reports = json::array();
    for (const auto& snap : block ? std::vector<Snapshot>{snaps.front()} : snaps) {
      for (double sv : ss) {
        json base = {{"field", snap.name},
                     {"time", snap.time},
                     {"s", sv},
                     {"l2", l2_norm(snap.field)},
                     {"h1dot", analysis::h1dot_norm(snap.field)},
                     {"hs", analysis::sobolev_norm(snap.field, sv)}};
        if (!block) {
          reports.push_back(base);
          continue;
        }
        for (double bv : b_list) {
          json j = base;
          j["b"] = bv;
          j["window"] = "cosine_taper";
          j["xsb"] = {{"wave", analysis::xsb_weight_norm(*block, sv, bv, analysis::Flavor::wave)},
                      {"wave_plus", analysis::xsb_weight_norm(*block, sv, bv, analysis::Flavor::wave_plus)},
                      {"wave_minus", analysis::xsb_weight_norm(*block, sv, bv, analysis::Flavor::wave_minus)},
                      {"tau0", analysis::xsb_weight_norm(*block, sv, bv, analysis::Flavor::tau0)}};
          reports.push_back(j);
        }
      }
    }
    out << reports.dump(2) << '\n';
    return static_cast<int>(ok);
  });
}

}  // namespace gaugewave::cli
