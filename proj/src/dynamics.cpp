#include "axisym/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace axisym {

void SimConfig::validate() const {
  if (nr < 2 || nz < 2) throw ConfigError("grid.nr and grid.nz must be at least 2");
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("domain.R must be positive");
  if (!(H > 0.0) || !std::isfinite(H)) throw ConfigError("domain.H must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("time.T must be non-negative");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("time.cfl must lie in (0, 1]");
  if (dt && !(*dt > 0.0 && std::isfinite(*dt))) throw ConfigError("time.dt must be positive");
  if (cadence < 1) throw ConfigError("diag.cadence must be at least 1");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("solver.tol must lie in (0, 1)");
  if (!std::isfinite(init.A) || !std::isfinite(init.B)) throw ConfigError("init amplitudes must be finite");
  if (init.k < 0) throw ConfigError("init.k must be non-negative");
  if (init.m < 1) throw ConfigError("init.m must be positive");
}

ScalarField rhs_gamma(const FlowState& s, const DynamicsOptions& opts) {
  const Grid& g = s.grid();
  const ScalarField& G = s.gamma();
  ScalarField out = laplacian_cyl(G);
  auto& o = out.data();
  const auto& a = G.data();
  const double cr = 0.5 / g.dr();
  for (Index j = 1; j <= g.nz(); ++j)
    for (Index i = 1; i <= g.nr(); ++i) o(i, j) -= (2.0 / g.r(i - 1)) * (a(i + 1, j) - a(i - 1, j)) * cr;
  if (!opts.diffusion_only) out.interior() -= advect(s.derived().velocity, G).interior();
  return out;
}

ScalarField rhs_omega(const FlowState& s, const DynamicsOptions& opts) {
  const Grid& g = s.grid();
  ScalarField out = l_omega(s.omega());
  if (opts.diffusion_only) return out;
  out.interior() -= advect(s.derived().velocity, s.omega()).interior();
  auto& o = out.data();
  const auto& a = s.gamma().data();
  const double cz = 0.5 / g.dz();
  for (Index j = 1; j <= g.nz(); ++j)
    for (Index i = 1; i <= g.nr(); ++i) {
      const double r2 = g.r(i - 1) * g.r(i - 1);
      const double up = a(i, j + 1), dn = a(i, j - 1);
      o(i, j) += (up - dn) * (up + dn) * cz / (r2 * r2);
    }
  return out;
}

namespace {

// Magnitudes beyond this count as overflow: the elliptic solve would
// overflow before producing inf in the prognostic fields.
constexpr double kOverflow = 1e100;

bool blown_up(const ScalarField& f) {
  return !f.all_finite() || f.interior().abs().maxCoeff() > kOverflow;
}

// u = a * x + b * (y + dt * L), componentwise on interiors.
FlowState combine(double a, const FlowState& x, double b, const FlowState& y, double dt,
                  const ScalarField& lg, const ScalarField& lo, double t_check) {
  ScalarField g(x.grid()), o(x.grid());
  g.interior() = a * x.gamma().interior() + b * (y.gamma().interior() + dt * lg.interior());
  o.interior() = a * x.omega().interior() + b * (y.omega().interior() + dt * lo.interior());
  if (blown_up(g)) throw BlowupError(t_check, "Gamma");
  if (blown_up(o)) throw BlowupError(t_check, "Omega");
  return FlowState(x.time(), g, o);
}

}  // namespace

FlowState step(const FlowState& s, double dt, const Reconstruction& rec, const DynamicsOptions& opts) {
  const bool need_b = !opts.diffusion_only;
  FlowState u0 = s;
  if (need_b && !u0.derived_valid()) u0.refresh(rec);
  if (dt == 0.0) return u0;
  const double t1 = s.time() + dt;

  FlowState u1 = combine(0.0, u0, 1.0, u0, dt, rhs_gamma(u0, opts), rhs_omega(u0, opts), t1);
  if (need_b) u1.refresh(rec);
  FlowState u2 = combine(0.75, u0, 0.25, u1, dt, rhs_gamma(u1, opts), rhs_omega(u1, opts), t1);
  if (need_b) u2.refresh(rec);
  FlowState u3 =
      combine(1.0 / 3.0, u0, 2.0 / 3.0, u2, dt, rhs_gamma(u2, opts), rhs_omega(u2, opts), t1);
  u3.set_time(t1);
  if (need_b) u3.refresh(rec);
  return u3;
}

double stable_dt(const FlowState& s, double cfl, const DynamicsOptions& opts) {
  const Grid& g = s.grid();
  const double dr2 = g.dr() * g.dr(), dz2 = g.dz() * g.dz();
  double bound = std::min(dr2 * dz2 / (2.0 * (dr2 + dz2)), 0.5 * g.dr() * g.r(0));
  if (!opts.diffusion_only) {
    const auto& v = s.derived().velocity;
    const double vr = linf_norm(v.r), vz = linf_norm(v.z);
    if (vr > 0.0) bound = std::min(bound, g.dr() / vr);
    if (vz > 0.0) bound = std::min(bound, g.dz() / vz);
  }
  return cfl * bound;
}

std::int64_t emitted_record_count(std::int64_t steps, Index cadence) {
  return 1 + steps / cadence + (steps % cadence != 0 ? 1 : 0);
}

RunResult run(const SimConfig& config, const StepObserver& observer, const StepObserver& on_abort) {
  config.validate();
  const Grid grid = config.grid();
  const DynamicsOptions opts = config.options();
  SolverSettings settings;
  settings.tolerance = config.tol;
  const Reconstruction rec(grid, settings);

  RunResult res;
  FlowState state = make_initial(config.init, grid);
  state.refresh(rec);
  if (observer) observer(state, 0);

  const double omega0_root = std::sqrt(weighted_lp_norm(state.omega(), 2.0));
  res.dt_min = std::numeric_limits<double>::infinity();

  std::int64_t steps = 0;
  bool done = !(state.time() < config.T);
  while (!done) {
    double dt = config.dt ? *config.dt : stable_dt(state, config.cfl, opts);
    const double remaining = config.T - state.time();
    // A leftover within the rounding accumulated by summing step sizes is
    // folded into this step rather than taken as a sliver step.
    const double drift = 4.0 * static_cast<double>(steps + 1) * std::numeric_limits<double>::epsilon() * config.T;
    if (remaining - dt <= drift) {
      dt = remaining;
      done = true;
    }
    try {
      state = step(state, dt, rec, opts);
    } catch (const Error&) {
      if (on_abort) on_abort(state, steps);
      throw;
    }
    if (done) state.set_time(config.T);
    ++steps;
    res.dt_min = std::min(res.dt_min, dt);
    res.dt_max = std::max(res.dt_max, dt);

    if (!res.omega_growth_time &&
        std::sqrt(weighted_lp_norm(state.omega(), 2.0)) > 2.0 * omega0_root)
      res.omega_growth_time = state.time();

    if (observer && (steps % config.cadence == 0 || done)) {
      if (!state.derived_valid()) state.refresh(rec);
      observer(state, steps);
    }
  }
  if (!state.derived_valid()) state.refresh(rec);
  if (steps == 0) res.dt_min = 0.0;
  res.steps = steps;
  res.final_state = std::move(state);
  return res;
}

}  // namespace axisym
