#pragma once

// Prognostic pair (Gamma, Omega) and the fields reconstructed from it.
//
//   Gamma = r v_theta      even at the axis, d_n Gamma = 0 on r = R and z = 0, H
//   Omega = omega_theta/r  even at the axis, Omega = 0 on r = R and z = 0, H

#include "axisym/elliptic.hpp"
#include "axisym/grid.hpp"
#include "axisym/operators.hpp"

namespace axisym {

BoundarySet gamma_boundary_set();
BoundarySet omega_boundary_set();

struct DerivedFields {
  ScalarField psi;
  MeridianVector<double> velocity;  // (v_r, v_z)
  ScalarField vr_over_r;            // stream route
  ScalarField v_theta;              // Gamma / r
  ScalarField V;                    // Gamma / r^(3/2)
};

/// Owns Gamma and Omega with ghosts always filled. The derived cache is
/// rebuilt by refresh() and dropped by any mutation.
class FlowState {
 public:
  FlowState() = default;
  /// Interior values are taken from the arguments; descriptors are attached
  /// and ghosts filled here.
  FlowState(double t, const ScalarField& gamma, const ScalarField& omega);

  double time() const { return t_; }
  void set_time(double t) { t_ = t; }
  const Grid& grid() const { return gamma_.grid(); }
  const ScalarField& gamma() const { return gamma_; }
  const ScalarField& omega() const { return omega_; }

  void set_fields(const ScalarField& gamma, const ScalarField& omega);

  bool derived_valid() const { return valid_; }
  /// Throws InternalError when the cache is stale.
  const DerivedFields& derived() const;
  void refresh(const Reconstruction& rec);

 private:
  double t_ = 0.0;
  ScalarField gamma_;
  ScalarField omega_;
  DerivedFields derived_;
  bool valid_ = false;
};

}  // namespace axisym
