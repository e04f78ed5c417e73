#pragma once

// Velocity reconstruction from the transformed vorticity Omega = omega_theta/r.
//
// Both routes invert the five-dimensional radial Laplacian
// L = d_r^2 + (3/r) d_r + d_z^2, each discretised in the form its equation is
// written in:
//
//   stream route    L chi = -Omega in flux form r^-3 d_r(r^3 d_r chi) + d_z^2 chi,
//                   chi = 0 on r = R and z = 0, H; psi = r^2 chi solves
//                   d_r^2 psi - (1/r) d_r psi + d_z^2 psi = -r^2 Omega.
//   Biot-Savart     L phi = d_z Omega as Laplacian plus (2/r) d_r drift,
//                   phi = 0 on r = R, d_z phi = 0 on the z sides, phi even at
//                   the axis; phi approximates v_r / r.
//
// The stream route drives the dynamics. The two discretisations agree to
// O(h^2), which makes the Biot-Savart route an independent cross-check.

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "axisym/grid.hpp"
#include "axisym/operators.hpp"

namespace axisym {

enum class SolverBackend {
  /// Eigendecomposition of the z operator, then one tridiagonal radial solve
  /// per z-mode. Direct; factorisations are reused across right-hand sides.
  separable,
  /// Jacobi-preconditioned BiCGSTAB on the assembled sparse matrix.
  bicgstab,
};

/// Discretisation of the radial part of L.
enum class RadialForm {
  drift,  // radial_l_omega_stencil, the l_omega operator
  flux,   // radial_l_omega_flux_stencil, the l_omega_flux operator
};

struct SolverSettings {
  double tolerance = 1e-10;   // relative residual
  Index max_iterations = 0;   // 0 means 50 * max(nr, nz)
  SolverBackend backend = SolverBackend::separable;
};

/// L u = f on a meridian grid with homogeneous conditions: even parity at
/// the axis, `outer` at r = R and `ends` on both z sides.
class EllipticProblem {
 public:
  using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  EllipticProblem(const Grid& grid, BoundaryCondition outer, BoundaryCondition ends,
                  SolverSettings settings = {}, RadialForm form = RadialForm::drift);

  /// Returns u with boundary descriptors attached and ghosts filled. Throws
  /// SolverError when the relative residual exceeds the tolerance.
  ScalarField solve(const ScalarField& rhs) const;

  /// ||L u - f||_2 / ||f||_2 over interior cells (absolute when f = 0).
  double relative_residual(const ScalarField& u, const ScalarField& rhs) const;

  /// Five-point matrix, row index i + nr * j.
  SparseMatrix assemble() const;

  const Grid& grid() const { return grid_; }
  const BoundarySet& boundary_set() const { return bcs_; }
  const SolverSettings& settings() const { return settings_; }
  RadialForm form() const { return form_; }
  Index max_iterations() const;

  /// L u for u with ghosts filled, in this problem's radial form.
  ScalarField apply(const ScalarField& u) const;

 private:
  Eigen::MatrixXd solve_separable(const Eigen::MatrixXd& f) const;
  Eigen::MatrixXd solve_bicgstab(const Eigen::MatrixXd& f) const;

  Grid grid_;
  BoundarySet bcs_;
  SolverSettings settings_;
  RadialForm form_;

  // Radial tridiagonal with the axis and outer ghosts folded in.
  Eigen::VectorXd rad_lower_, rad_diag_, rad_upper_;
  // z operator with end ghosts folded in: eigenvectors and eigenvalues.
  Eigen::VectorXd z_diag_;
  double z_off_ = 0.0;
  Eigen::MatrixXd z_modes_;
  Eigen::VectorXd z_eigs_;
  // Thomas factors per z-mode (column k).
  Eigen::MatrixXd thomas_c_, thomas_inv_;
};

BoundarySet stream_boundary_set();
BoundarySet vr_over_r_boundary_set();

/// Both reconstruction routes for one grid, factorised once.
class Reconstruction {
 public:
  explicit Reconstruction(const Grid& grid, SolverSettings settings = {});

  /// psi with dirichlet(0) on r = R and the z sides, even reflection at the
  /// axis (psi = r^2 chi), ghosts filled.
  ScalarField solve_stream(const ScalarField& omega) const;

  /// v_r / r from the Biot-Savart equation. omega must have ghosts filled.
  ScalarField solve_vr_over_r(const ScalarField& omega) const;

  const Grid& grid() const { return grid_; }
  const EllipticProblem& stream_problem() const { return stream_; }
  const EllipticProblem& biot_problem() const { return biot_; }

 private:
  Grid grid_;
  EllipticProblem stream_;
  EllipticProblem biot_;
};

/// v_r = -(1/r) d_z psi, v_z = (1/r) d_r psi with centred differences. The
/// components get their physical boundary descriptors and filled ghosts.
MeridianVector<double> velocity_from_stream(const ScalarField& psi);

/// v_r / r = -(1/r^2) d_z psi, with the Biot-Savart boundary descriptors.
ScalarField vr_over_r_from_stream(const ScalarField& psi);

/// (1/r) d_r (r v_r) + d_z v_z with v built from psi by the same centred
/// differences; zero up to rounding.
ScalarField discrete_divergence(const ScalarField& psi);

}  // namespace axisym
