#pragma once

// Regularity constants, the critical smallness quantity, energy and the
// margins of the inequalities the global-regularity argument rests on. Each
// margin is rhs - lhs: non-negative when the inequality holds.

#include <string>
#include <vector>

#include "axisym/initdata.hpp"
#include "axisym/state.hpp"

namespace axisym {

struct RegularityConstants {
  double C1;        // Agmon constant on the cylinder
  double C3;        // Hessian bound for v_r / r
  double CP_bound;  // Poincare constant bound
};

/// Closed forms evaluated in long double:
///   C1 = (1 + sqrt 2) 2 sqrt(pi) 536^(1/4) (57452 (1 + 5/pi^2) + 60)^(1/4)
///   C3 = ((2 + 3/sqrt 2)^2 + 5/2)^(1/2)
///   CP = sqrt 5 / pi
RegularityConstants compute_constants();

/// V = Gamma / r^(3/2) at cell centres, sampled from Gamma directly.
ScalarField swirl_V(const FlowState& s);

/// (9 C1 C3^(1/2) / 4) (||V||_4^4 / 2 + ||Omega||_2^2)^(1/4) ||Gamma||_4.
double smallness(const FlowState& s, const RegularityConstants& c);

/// ||V^2||_2^2 / 4 + ||Omega||_2^2 / 2.
double energy(const FlowState& s);

struct GradientBounds {
  double m1a;  // ||Omega|| - ||grad phi||
  double m1b;  // C3 ||d_z Omega|| - ||Hess phi||
  double grad_l2;
  double hessian_l2;
  double omega_l2;
  double dz_omega_l2;
};

/// phi = v_r / r with ghosts filled; omega with ghosts filled.
GradientBounds check_gradient_bounds(const ScalarField& phi, const ScalarField& omega,
                                     const RegularityConstants& c);
GradientBounds check_gradient_bounds(const FlowState& s, const RegularityConstants& c);

/// max_i |sum_j phi_ij dz|: the z-average of v_r / r vanishes on every
/// cylinder r = const.
double check_vertical_balance(const ScalarField& phi);

struct AgmonCheck {
  double margin;  // C1 ||grad phi||^(1/2) ||Hess phi||^(1/2) - ||phi||_inf; +inf for phi = 0
  double ratio;   // ||phi||_inf / (||grad phi|| ||Hess phi||)^(1/2); 0 for phi = 0
};

AgmonCheck check_agmon(const ScalarField& phi, const RegularityConstants& c);
AgmonCheck check_agmon(const FlowState& s, const RegularityConstants& c);

struct DiagnosticsRecord {
  double t = 0.0;
  double gamma_l2 = 0.0, gamma_l4 = 0.0, gamma_linf = 0.0;
  double omega_l2 = 0.0, dz_omega_l2 = 0.0;
  double v_l4 = 0.0, v2_over_r_l2 = 0.0;
  double energy = 0.0, smallness = 0.0;
  double margin_grad = 0.0, margin_hessian = 0.0;
  double margin_gamma_sup = 0.0;  // ||Gamma_0||_inf - ||Gamma(t)||_inf
  double margin_balance = 0.0;    // 1e-12 (1 + ||phi||_inf) - balance residual
  double margin_agmon = 0.0;
  double agmon_ratio = 0.0;
  double vr_l4 = 0.0, vz_l4 = 0.0, vtheta_l4 = 0.0;
};

/// Requires a valid derived cache.
DiagnosticsRecord make_record(const FlowState& s, const RegularityConstants& c, double gamma0_sup);

/// CSV header names and the matching values, in one fixed order.
const std::vector<std::string>& record_columns();
std::vector<double> record_values(const DiagnosticsRecord& r);

struct GrowthReport {
  double l2 = 0.0, l4 = 0.0, linf = 0.0;  // worst relative growth between records
};

/// Needs at least two records.
GrowthReport check_gamma_max_principle(const std::vector<DiagnosticsRecord>& history);

struct EnergyReport {
  bool applicable = false;      // first record has smallness <= 1/4
  double worst_increase = 0.0;  // max E_{k+1} - E_k
  double worst_relative = 0.0;  // max (E_{k+1} - E_k) / E_k
};

EnergyReport check_energy_monotone(const std::vector<DiagnosticsRecord>& history);

struct ScalingReport {
  double S = 0.0, S_scaled = 0.0;
  double deviation = 0.0;    // |S_scaled - S| / S
  double v_ratio = 0.0;      // ||V||_4 / ||V_l||_4, expected lambda^(-3/4)
  double gamma_ratio = 0.0;  // ||Gamma||_4 / ||Gamma_l||_4, expected lambda^(3/4)
  double omega_ratio = 0.0;  // (||Omega||_2 / ||Omega_l||_2)^(1/2), expected lambda^(-3/4)
};

/// Throws ConfigError when S vanishes for the family.
ScalingReport scaling_check(const DataFamily& fam, const Grid& grid, double lambda,
                            const RegularityConstants& c);

/// Factor alpha such that the family with amplitudes (alpha A, alpha B) has
/// smallness `target`, by bisection (S is strictly increasing in alpha).
double amplitude_for_smallness(const DataFamily& fam, const Grid& grid, const RegularityConstants& c,
                               double target = 0.25);

}  // namespace axisym
