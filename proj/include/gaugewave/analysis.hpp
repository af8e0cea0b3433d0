#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaugewave/mcsh.hpp"
#include "gaugewave/mkg.hpp"
#include "gaugewave/run_record.hpp"

namespace gaugewave::analysis {

// ||<xi>^s f_hat|| under the Parseval normalization
double sobolev_norm(const SpectralField& f, double s);
double h1dot_norm(const SpectralField& f);
double h1dot_norm(const VectorField& v);
// L2 norm by rectangle-rule quadrature of the grid samples
double quadrature_l2(const SpectralField& f);

// An inequality lhs <= rhs (or an equality with rhs the reference); slack = rhs - lhs.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double ratio = 0.0;
  std::optional<double> empirical_c;
  std::optional<std::uint64_t> seed;
  std::optional<int> resolution;
  bool hard = false;   // counts towards pass/fail
  bool pass = true;

  static InequalityReport bound(std::string name, double lhs, double rhs, double tolerance = 0.0, bool hard = true);
  static InequalityReport equality(std::string name, double lhs, double rhs, double rel_tolerance, bool hard = true);
  static InequalityReport empirical(std::string name, double lhs, double rhs);
};

// Constants from the energy densities: MKG ||dt A||, ||dt phi|| <= sqrt(2E);
// MCSH ||dt A|| <= sqrt(2E), ||dt phi|| <= sqrt(E), ||dt Ntilde|| <= sqrt(2E).
struct GrowthConstants {
  double a, phi, n;
  static GrowthConstants for_system(evolve::System sys);
};

struct GrowthRow {
  double t;
  InequalityReport a, phi, n;
};

// ||X(t)|| <= ||X(0)|| + c t sqrt(E(0)) at every row, tolerance 1e-9
std::vector<GrowthRow> growth_bound_check(const evolve::RunRecord& record);
// fills the slack columns of `row` from the first row
void fill_growth_slack(evolve::System sys, const evolve::RunRow& first, evolve::RunRow& row);

struct CovariantGradientReport {
  double grad_phi = 0.0;  // ||grad phi0||
  double u = 0.0;         // ||grad phi0 - i phi0 a||
  double a_h1dot = 0.0;
  double phi_l2 = 0.0;
  double c_emp = 0.0;     // max(0, ||grad phi0|| - 2||U||) / (||a||^2_H1dot ||phi0||)
};

CovariantGradientReport covariant_gradient_check(const SpectralField& phi0, const VectorField& a);

// Every link of the gradient-control chain for Coulomb-fixed data (A_cf = 0).
std::vector<InequalityReport> h1_control_check(const mkg::State& s);
std::vector<InequalityReport> h1_control_check(const mcsh::State& s, const mcsh::Params& p);

enum class Window { none, cosine_taper };
enum class Flavor { wave, wave_plus, wave_minus, tau0 };

// Uniform time samples t_m = m dt, m < n_t, of one field.
struct SpaceTimeBlock {
  double dt = 0.0;
  std::vector<SpectralField> samples;
  Window window = Window::cosine_taper;

  SpaceTimeBlock(double dt, std::vector<SpectralField> samples, Window window = Window::cosine_taper);
  const Grid& grid() const { return samples.front().grid(); }
  double period() const { return dt * static_cast<double>(samples.size()); }
};

// Tukey window, taper fraction 1/2
double taper(double t, double period);

// Windowed-extension diagnostic of the X^{s,b} norm: time transform with exp(-i w t) at tau = +w,
// norm^2 = T L^dim sum w(tau, xi)^2 |u_hat|^2.
double xsb_weight_norm(const SpaceTimeBlock& block, double s, double b, Flavor flavor);

struct WeightNode {
  double tau = 0.0;
  double xi = 0.0;
  int sign = 1;
  double wave = 0.0;    // <xi>^s <|tau| - |xi|>^b
  double signed_ = 0.0; // <xi>^s <-tau +- |xi|>^b
  double margin = 0.0;  // relative margin of the required ordering, >= 0 when it holds
};

struct WeightCheckResult {
  bool pass = true;
  std::size_t nodes = 0;
  WeightNode worst;
};

// Pointwise ordering of the wave and half-wave weights at tau_j = 2 pi j / T, j in [-n_t/2, n_t/2),
// over every resolved spatial mode and both signs. Default T is the box length.
WeightCheckResult weight_inequality_check(double s, double b, const Grid& g, int n_t,
                                          std::optional<double> period = std::nullopt);

}  // namespace gaugewave::analysis
