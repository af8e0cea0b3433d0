#include "gaugewave/dynamics.hpp"

#include "gaugewave/error.hpp"
#include "gaugewave/operators.hpp"

namespace gaugewave::evolve {

System system_of(const SystemState& s) { return std::holds_alternative<mkg::State>(s) ? System::mkg : System::mcsh; }

const Grid& grid_of(const SystemState& s) {
  return std::visit([](const auto& x) -> const Grid& { return x.grid(); }, s);
}

double time_of(const SystemState& s) {
  return std::visit([](const auto& x) { return x.time; }, s);
}

bool PhaseState::all_finite() const {
  for (const auto* v : {&q, &p, &c})
    for (const auto& f : *v)
      if (!f.all_finite()) return false;
  return true;
}

void Dynamics::kick(PhaseState& s, double h, const std::vector<SpectralField>& f, bool) const {
  for (std::size_t i = 0; i < s.p.size(); ++i) s.p[i].axpy(h, f[i]);
}

std::vector<SpectralField> Dynamics::first_order_rate(const PhaseState&) const { return {}; }

void rotation_kick(SpectralField& p0, SpectralField& p1, const SpectralField& f0, const SpectralField& f1, double h,
                   double kappa, bool zero_mode_only) {
  const double a = 0.5 * h * kappa;
  const double det = 1.0 + a * a;
  const std::size_t end = zero_mode_only ? 1 : p0.size();
  for (std::size_t k = 0; k < end; ++k) {
    cplx r0 = p0[k] - a * p1[k] + h * f0[k];
    cplx r1 = p1[k] + a * p0[k] + h * f1[k];
    p0[k] = (r0 - a * r1) / det;
    p1[k] = (r1 + a * r0) / det;
  }
  if (zero_mode_only)
    for (std::size_t k = 1; k < p0.size(); ++k) {
      p0[k] += h * f0[k];
      p1[k] += h * f1[k];
    }
}

namespace {

VectorField vec(const std::vector<SpectralField>& v, std::size_t first, int dim) {
  return VectorField(std::vector<SpectralField>(v.begin() + first, v.begin() + first + dim));
}

void append(std::vector<SpectralField>& out, const VectorField& v) {
  for (const auto& c : v) out.push_back(c);
}

// q = (A, phi), p = (dA, dphi)
class MkgRaw : public Dynamics {
 public:
  PhaseState to_phase(const SystemState& st) const override {
    const auto& s = std::get<mkg::State>(st);
    PhaseState ps;
    append(ps.q, s.a);
    ps.q.push_back(s.phi);
    append(ps.p, s.da);
    ps.p.push_back(s.dphi);
    ps.time = s.time;
    return ps;
  }
  SystemState to_state(const PhaseState& ps) const override {
    return mkg::State{vec(ps.q, 0, 3), vec(ps.p, 0, 3), ps.q[3], ps.p[3], ps.time};
  }
  std::vector<SpectralField> forces(const PhaseState& ps) const override {
    auto f = mkg::forces(vec(ps.q, 0, 3), ps.q[3]);
    std::vector<SpectralField> out;
    append(out, f.dda);
    out.push_back(std::move(f.ddphi));
    return out;
  }
  PhaseRate rate(const PhaseState& ps) const override { return {ps.p, forces(ps), {}}; }
};

// q = (A_df, phi), p = (dA_df, dphi), c = A_cf
class MkgDecomposed : public Dynamics {
 public:
  PhaseState to_phase(const SystemState& st) const override {
    auto s = mkg::split(std::get<mkg::State>(st));
    PhaseState ps;
    append(ps.q, s.a_df);
    ps.q.push_back(s.phi);
    append(ps.p, s.da_df);
    ps.p.push_back(s.dphi);
    append(ps.c, s.a_cf);
    ps.time = s.time;
    return ps;
  }
  SystemState to_state(const PhaseState& ps) const override {
    return mkg::recompose({vec(ps.c, 0, 3), vec(ps.q, 0, 3), vec(ps.p, 0, 3), ps.q[3], ps.p[3], ps.time});
  }
  std::vector<SpectralField> forces(const PhaseState& ps) const override {
    auto f = mkg::forces(vec(ps.q, 0, 3) + vec(ps.c, 0, 3), ps.q[3]);
    std::vector<SpectralField> out;
    append(out, project_df(f.dda));
    out.push_back(std::move(f.ddphi));
    return out;
  }
  std::vector<SpectralField> first_order_rate(const PhaseState& ps) const override {
    std::vector<SpectralField> out;
    append(out, mkg::constraint_rate(ps.q[3], ps.p[3]));
    return out;
  }
  PhaseRate rate(const PhaseState& ps) const override { return {ps.p, forces(ps), first_order_rate(ps)}; }
};

// q = (A, phi, Ntilde), p = (dA, dphi, dNtilde)
class McshRaw : public Dynamics {
 public:
  explicit McshRaw(const mcsh::Params& p) : par_(p) {}
  PhaseState to_phase(const SystemState& st) const override {
    const auto& s = std::get<mcsh::State>(st);
    PhaseState ps;
    append(ps.q, s.a);
    ps.q.push_back(s.phi);
    ps.q.push_back(s.n_tilde);
    append(ps.p, s.da);
    ps.p.push_back(s.dphi);
    ps.p.push_back(s.dn_tilde);
    ps.time = s.time;
    return ps;
  }
  SystemState to_state(const PhaseState& ps) const override {
    return mcsh::State{vec(ps.q, 0, 2), vec(ps.p, 0, 2), ps.q[2], ps.p[2], ps.q[3], ps.p[3], ps.time};
  }
  std::vector<SpectralField> forces(const PhaseState& ps) const override {
    auto f = mcsh::forces(vec(ps.q, 0, 2), ps.q[2], ps.q[3], par_);
    return {f.dda[0], f.dda[1], f.ddphi, f.ddn};
  }
  void kick(PhaseState& ps, double h, const std::vector<SpectralField>& f, bool) const override {
    rotation_kick(ps.p[0], ps.p[1], f[0], f[1], h, par_.kappa, false);
    ps.p[2].axpy(h, f[2]);
    ps.p[3].axpy(h, f[3]);
  }
  PhaseRate rate(const PhaseState& ps) const override {
    auto f = forces(ps);
    f[0].axpy(-par_.kappa, ps.p[1]);
    f[1].axpy(par_.kappa, ps.p[0]);
    return {ps.p, std::move(f), {}};
  }

 private:
  mcsh::Params par_;
};

// q = (A_df, phi, Ntilde), p = (dA_df, dphi, dNtilde), c = A_cf
class McshDecomposed : public Dynamics {
 public:
  explicit McshDecomposed(const mcsh::Params& p) : par_(p) {}
  PhaseState to_phase(const SystemState& st) const override {
    auto s = mcsh::split(std::get<mcsh::State>(st), par_);
    PhaseState ps;
    append(ps.q, s.a_df);
    ps.q.push_back(s.phi);
    ps.q.push_back(s.n_tilde);
    append(ps.p, s.da_df);
    ps.p.push_back(s.dphi);
    ps.p.push_back(s.dn_tilde);
    append(ps.c, s.a_cf);
    ps.time = s.time;
    return ps;
  }
  SystemState to_state(const PhaseState& ps) const override {
    return mcsh::recompose(
        {vec(ps.c, 0, 2), vec(ps.q, 0, 2), vec(ps.p, 0, 2), ps.q[2], ps.p[2], ps.q[3], ps.p[3], ps.time}, par_);
  }
  std::vector<SpectralField> forces(const PhaseState& ps) const override {
    auto f = mcsh::forces(vec(ps.q, 0, 2) + vec(ps.c, 0, 2), ps.q[2], ps.q[3], par_);
    auto a = df_part(f.dda);
    return {a[0], a[1], f.ddphi, f.ddn};
  }
  std::vector<SpectralField> first_order_rate(const PhaseState& ps) const override {
    auto g = mcsh::constraint_rate(vec(ps.q, 0, 2), ps.q[2], ps.p[2], par_);
    return {g[0], g[1]};
  }
  // The df velocity feels -kappa J of the constraint rate (divergence-free, mean-free) and,
  // through the projection, the rotation of its own mean only. The leading kick uses the
  // constraint rate before updating dphi and the trailing kick after, keeping the step symmetric.
  void kick(PhaseState& ps, double h, const std::vector<SpectralField>& f, bool leading) const override {
    VectorField g = VectorField::zeros(ps.q[0].grid());
    if (leading) g = mcsh::constraint_rate(vec(ps.q, 0, 2), ps.q[2], ps.p[2], par_);
    ps.p[2].axpy(h, f[2]);
    ps.p[3].axpy(h, f[3]);
    if (!leading) g = mcsh::constraint_rate(vec(ps.q, 0, 2), ps.q[2], ps.p[2], par_);
    SpectralField f0 = f[0] - par_.kappa * g[1];
    SpectralField f1 = f[1] + par_.kappa * g[0];
    rotation_kick(ps.p[0], ps.p[1], f0, f1, h, par_.kappa, true);
  }
  PhaseRate rate(const PhaseState& ps) const override {
    auto g = mcsh::constraint_rate(vec(ps.q, 0, 2), ps.q[2], ps.p[2], par_);
    auto f = mcsh::forces(vec(ps.q, 0, 2) + vec(ps.c, 0, 2), ps.q[2], ps.q[3], par_);
    f.dda.axpy(-par_.kappa, mcsh::rotate(vec(ps.p, 0, 2) + g));
    auto a = df_part(f.dda);
    return {ps.p, {a[0], a[1], f.ddphi, f.ddn}, {g[0], g[1]}};
  }

 private:
  mcsh::Params par_;
};

}  // namespace

std::unique_ptr<Dynamics> make_dynamics(System sys, Formulation form, const mcsh::Params& p) {
  if (sys == System::mkg) {
    if (form == Formulation::raw) return std::make_unique<MkgRaw>();
    return std::make_unique<MkgDecomposed>();
  }
  p.validate();
  if (form == Formulation::raw) return std::make_unique<McshRaw>(p);
  return std::make_unique<McshDecomposed>(p);
}

}  // namespace gaugewave::evolve
