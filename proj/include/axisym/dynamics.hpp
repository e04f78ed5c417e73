#pragma once

// Semi-discrete (Gamma, Omega) system with unit viscosity and no forcing,
// advanced by the three-stage SSP Runge-Kutta scheme:
//
//   d_t Gamma = Lap Gamma - b.grad Gamma - (2/r) d_r Gamma
//   d_t Omega = L Omega - b.grad Omega + d_z(Gamma^2) / r^4
//
// with b = (v_r, v_z) reconstructed from Omega through the stream route.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "axisym/elliptic.hpp"
#include "axisym/initdata.hpp"
#include "axisym/state.hpp"

namespace axisym {

struct DynamicsOptions {
  /// Drop the advection terms and the Omega source: two decoupled linear
  /// drift-diffusion equations.
  bool diffusion_only = false;
};

struct SimConfig {
  Index nr = 128;
  Index nz = 128;
  double R = 1.0;
  double H = 1.0;
  double T = 0.1;
  double cfl = 0.4;
  std::optional<double> dt;  // fixed step; stable_dt when empty
  DataFamily init;
  Index cadence = 10;
  double tol = 1e-10;
  std::string output_dir = "output";
  bool diffusion_only = false;

  /// Throws ConfigError naming the first out-of-range field.
  void validate() const;
  Grid grid() const { return Grid(nr, nz, R, H); }
  DynamicsOptions options() const { return {diffusion_only}; }
};

/// Both right-hand sides read b from the derived cache (InternalError when
/// stale) unless opts.diffusion_only.
ScalarField rhs_gamma(const FlowState& s, const DynamicsOptions& opts = {});
ScalarField rhs_omega(const FlowState& s, const DynamicsOptions& opts = {});

/// One SSP-RK3 step. The result carries a fresh derived cache except in
/// diffusion-only mode, where it is left stale. Throws BlowupError when a
/// stage produces a non-finite value or one above 1e100 in magnitude.
FlowState step(const FlowState& s, double dt, const Reconstruction& rec,
               const DynamicsOptions& opts = {});

/// cfl * min(dr^2 dz^2 / (2 (dr^2 + dz^2)), dr r_0 / 2, dr / max|v_r|, dz / max|v_z|);
/// the advective terms drop out when the velocity vanishes or in
/// diffusion-only mode.
double stable_dt(const FlowState& s, double cfl, const DynamicsOptions& opts = {});

/// Called at t = 0, every `cadence` steps and after the final step; the state
/// always has a valid derived cache.
using StepObserver = std::function<void(const FlowState&, std::int64_t step)>;

struct RunResult {
  FlowState final_state;
  std::int64_t steps = 0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  /// First time at which ||Omega||_2^(1/2) exceeded 2 ||Omega_0||_2^(1/2).
  std::optional<double> omega_growth_time;
};

/// Number of observer calls for a run of `steps` steps.
std::int64_t emitted_record_count(std::int64_t steps, Index cadence);

/// Step from the initial data until t = T (the last step is adjusted to land
/// on T). Step errors propagate after the observer has seen every completed
/// emission; `on_abort` first receives the last accepted state, whose derived
/// cache may be stale.
RunResult run(const SimConfig& config, const StepObserver& observer = {}, const StepObserver& on_abort = {});

}  // namespace axisym
