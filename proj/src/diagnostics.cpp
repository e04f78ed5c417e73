#include "axisym/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace axisym {

RegularityConstants compute_constants() {
  using L = long double;
  const L pi = std::numbers::pi_v<L>;
  const L s2 = std::sqrt(L(2));
  const L c1 = (1 + s2) * 2 * std::sqrt(pi) * std::pow(L(536), L(0.25)) *
               std::pow(L(57452) * (1 + 5 / (pi * pi)) + 60, L(0.25));
  const L a = 2 + 3 / s2;
  const L c3 = std::sqrt(a * a + L(2.5));
  const L cp = std::sqrt(L(5)) / pi;
  return {static_cast<double>(c1), static_cast<double>(c3), static_cast<double>(cp)};
}

ScalarField swirl_V(const FlowState& s) {
  const Grid& g = s.grid();
  ScalarField V(g);
  const auto& G = s.gamma().data();
  auto& v = V.data();
  for (Index j = 1; j <= g.nz(); ++j)
    for (Index i = 1; i <= g.nr(); ++i) {
      const double r = g.r(i - 1);
      v(i, j) = G(i, j) / (r * std::sqrt(r));
    }
  return V;
}

namespace {

double l4_pow4(const ScalarField& f) {
  const double n = weighted_lp_norm(f, 4.0);
  return n * n * n * n;
}

double l2_sq(const ScalarField& f) {
  const double n = weighted_lp_norm(f, 2.0);
  return n * n;
}

}  // namespace

double smallness(const FlowState& s, const RegularityConstants& c) {
  const double pref = 9.0 * c.C1 * std::sqrt(c.C3) / 4.0;
  const double inner = 0.5 * l4_pow4(swirl_V(s)) + l2_sq(s.omega());
  return pref * std::pow(inner, 0.25) * weighted_lp_norm(s.gamma(), 4.0);
}

double energy(const FlowState& s) {
  // ||V^2||_2^2 = ||V||_4^4.
  return 0.25 * l4_pow4(swirl_V(s)) + 0.5 * l2_sq(s.omega());
}

GradientBounds check_gradient_bounds(const ScalarField& phi, const ScalarField& omega,
                                     const RegularityConstants& c) {
  GradientBounds b{};
  b.grad_l2 = vector_l2_norm(grad_meridian(phi));
  b.hessian_l2 = hessian_l2_norm(hessian_vr_over_r(phi));
  b.omega_l2 = weighted_lp_norm(omega, 2.0);
  b.dz_omega_l2 = weighted_lp_norm(ddz(omega), 2.0);
  b.m1a = b.omega_l2 - b.grad_l2;
  b.m1b = c.C3 * b.dz_omega_l2 - b.hessian_l2;
  return b;
}

GradientBounds check_gradient_bounds(const FlowState& s, const RegularityConstants& c) {
  return check_gradient_bounds(s.derived().vr_over_r, s.omega(), c);
}

double check_vertical_balance(const ScalarField& phi) {
  const Grid& g = phi.grid();
  const auto& a = phi.data();
  std::vector<double> col(static_cast<std::size_t>(g.nz()));
  double worst = 0.0;
  for (Index i = 1; i <= g.nr(); ++i) {
    for (Index j = 1; j <= g.nz(); ++j) col[static_cast<std::size_t>(j - 1)] = a(i, j);
    worst = std::max(worst, std::abs(pairwise_sum(col.data(), g.nz()) * g.dz()));
  }
  return worst;
}

AgmonCheck check_agmon(const ScalarField& phi, const RegularityConstants& c) {
  const double grad = vector_l2_norm(grad_meridian(phi));
  const double hess = hessian_l2_norm(hessian_vr_over_r(phi));
  const double sup = linf_norm(phi);
  const double denom = std::sqrt(grad) * std::sqrt(hess);
  if (denom == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
  return {c.C1 * denom - sup, sup / denom};
}

AgmonCheck check_agmon(const FlowState& s, const RegularityConstants& c) {
  return check_agmon(s.derived().vr_over_r, c);
}

DiagnosticsRecord make_record(const FlowState& s, const RegularityConstants& c, double gamma0_sup) {
  const DerivedFields& d = s.derived();
  const Grid& g = s.grid();
  DiagnosticsRecord r;
  r.t = s.time();
  r.gamma_l2 = weighted_lp_norm(s.gamma(), 2.0);
  r.gamma_l4 = weighted_lp_norm(s.gamma(), 4.0);
  r.gamma_linf = linf_norm(s.gamma());
  r.omega_l2 = weighted_lp_norm(s.omega(), 2.0);
  r.dz_omega_l2 = weighted_lp_norm(ddz(s.omega()), 2.0);
  r.v_l4 = weighted_lp_norm(d.V, 4.0);

  ScalarField v2r(g);
  auto& a = v2r.data();
  const auto& V = d.V.data();
  for (Index j = 1; j <= g.nz(); ++j)
    for (Index i = 1; i <= g.nr(); ++i) a(i, j) = V(i, j) * V(i, j) / g.r(i - 1);
  r.v2_over_r_l2 = weighted_lp_norm(v2r, 2.0);

  r.energy = 0.25 * std::pow(r.v_l4, 4) + 0.5 * r.omega_l2 * r.omega_l2;
  r.smallness = 9.0 * c.C1 * std::sqrt(c.C3) / 4.0 *
                std::pow(0.5 * std::pow(r.v_l4, 4) + r.omega_l2 * r.omega_l2, 0.25) * r.gamma_l4;

  const GradientBounds gb = check_gradient_bounds(s, c);
  r.margin_grad = gb.m1a;
  r.margin_hessian = gb.m1b;
  r.margin_gamma_sup = gamma0_sup - r.gamma_linf;
  r.margin_balance = 1e-12 * (1.0 + linf_norm(d.vr_over_r)) - check_vertical_balance(d.vr_over_r);
  const AgmonCheck ag = check_agmon(s, c);
  r.margin_agmon = ag.margin;
  r.agmon_ratio = ag.ratio;
  r.vr_l4 = weighted_lp_norm(d.velocity.r, 4.0);
  r.vz_l4 = weighted_lp_norm(d.velocity.z, 4.0);
  r.vtheta_l4 = weighted_lp_norm(d.v_theta, 4.0);
  return r;
}

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols{
      "t",           "gamma_l2",       "gamma_l4",         "gamma_linf",   "omega_l2",
      "dz_omega_l2", "v_l4",           "v2_over_r_l2",     "energy",       "smallness",
      "margin_grad", "margin_hessian", "margin_gamma_sup", "margin_balance", "margin_agmon",
      "agmon_ratio", "vr_l4",          "vz_l4",            "vtheta_l4"};
  return cols;
}

std::vector<double> record_values(const DiagnosticsRecord& r) {
  return {r.t,           r.gamma_l2,       r.gamma_l4,         r.gamma_linf,     r.omega_l2,
          r.dz_omega_l2, r.v_l4,           r.v2_over_r_l2,     r.energy,         r.smallness,
          r.margin_grad, r.margin_hessian, r.margin_gamma_sup, r.margin_balance, r.margin_agmon,
          r.agmon_ratio, r.vr_l4,          r.vz_l4,            r.vtheta_l4};
}

namespace {

double relative_growth(double before, double after) {
  return before > 0.0 ? (after - before) / before : 0.0;
}

}  // namespace

GrowthReport check_gamma_max_principle(const std::vector<DiagnosticsRecord>& history) {
  if (history.size() < 2) throw ConfigError("maximum-principle check needs at least two records");
  const double lowest = -std::numeric_limits<double>::infinity();
  GrowthReport g{lowest, lowest, lowest};
  for (std::size_t k = 0; k + 1 < history.size(); ++k) {
    const auto& a = history[k];
    const auto& b = history[k + 1];
    g.l2 = std::max(g.l2, relative_growth(a.gamma_l2, b.gamma_l2));
    g.l4 = std::max(g.l4, relative_growth(a.gamma_l4, b.gamma_l4));
    g.linf = std::max(g.linf, relative_growth(a.gamma_linf, b.gamma_linf));
  }
  return g;
}

EnergyReport check_energy_monotone(const std::vector<DiagnosticsRecord>& history) {
  EnergyReport e;
  if (history.empty() || !(history.front().smallness <= 0.25)) return e;
  e.applicable = true;
  e.worst_increase = -std::numeric_limits<double>::infinity();
  e.worst_relative = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < history.size(); ++k) {
    const double d = history[k + 1].energy - history[k].energy;
    e.worst_increase = std::max(e.worst_increase, d);
    e.worst_relative = std::max(e.worst_relative, relative_growth(history[k].energy, history[k + 1].energy));
  }
  if (history.size() < 2) e.worst_increase = e.worst_relative = 0.0;
  return e;
}

ScalingReport scaling_check(const DataFamily& fam, const Grid& grid, double lambda,
                            const RegularityConstants& c) {
  const FlowState base = make_initial(fam, grid);
  const FlowState scaled = rescaled(fam, grid, lambda);
  ScalingReport rep;
  rep.S = smallness(base, c);
  if (!(rep.S > 0.0)) throw ConfigError("scaling check requires nonzero data");
  rep.S_scaled = smallness(scaled, c);
  rep.deviation = std::abs(rep.S_scaled - rep.S) / rep.S;

  const auto ratio = [](double a, double b) { return b > 0.0 ? a / b : 0.0; };
  rep.v_ratio = ratio(weighted_lp_norm(swirl_V(base), 4.0), weighted_lp_norm(swirl_V(scaled), 4.0));
  rep.gamma_ratio = ratio(weighted_lp_norm(base.gamma(), 4.0), weighted_lp_norm(scaled.gamma(), 4.0));
  rep.omega_ratio =
      std::sqrt(ratio(weighted_lp_norm(base.omega(), 2.0), weighted_lp_norm(scaled.omega(), 2.0)));
  return rep;
}

double amplitude_for_smallness(const DataFamily& fam, const Grid& grid, const RegularityConstants& c,
                               double target) {
  if (!(target > 0.0)) throw ConfigError("smallness target must be positive");
  const auto S_at = [&](double alpha) {
    DataFamily f = fam;
    f.A *= alpha;
    f.B *= alpha;
    return smallness(make_initial(f, grid), c);
  };
  if (!(S_at(1.0) > 0.0)) throw ConfigError("smallness vanishes for every amplitude of this family");
  double lo = 0.0, hi = 1.0;
  while (S_at(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (S_at(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace axisym
