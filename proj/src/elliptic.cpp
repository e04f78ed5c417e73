#include "axisym/elliptic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <cmath>
#include <vector>

namespace axisym {

namespace {

Eigen::MatrixXd interior_matrix(const ScalarField& f) { return f.interior().matrix(); }

}  // namespace

EllipticProblem::EllipticProblem(const Grid& grid, BoundaryCondition outer, BoundaryCondition ends,
                                 SolverSettings settings, RadialForm form)
    : grid_(grid), settings_(settings), form_(form) {
  if (!outer.homogeneous() || !ends.homogeneous())
    throw ConfigError("elliptic solves require homogeneous boundary data");
  bcs_ = {BoundaryCondition::parity(), outer, ends, ends};

  const Index nr = grid.nr(), nz = grid.nz();
  const double axis_factor = ghost_relation(BoundaryCondition::parity(), grid.dr(), AxisParity::even).factor;
  const double outer_factor = ghost_relation(outer, grid.dr(), AxisParity::even).factor;
  const double end_factor = ghost_relation(ends, grid.dz(), AxisParity::even).factor;

  rad_lower_.resize(nr);
  rad_diag_.resize(nr);
  rad_upper_.resize(nr);
  for (Index i = 0; i < nr; ++i) {
    const auto s = form == RadialForm::flux ? radial_l_omega_flux_stencil(grid, i)
                                            : radial_l_omega_stencil(grid, i);
    rad_lower_[i] = s.lower;
    rad_diag_[i] = s.centre;
    rad_upper_[i] = s.upper;
  }
  rad_diag_[0] += axis_factor * rad_lower_[0];
  rad_lower_[0] = 0.0;
  rad_diag_[nr - 1] += outer_factor * rad_upper_[nr - 1];
  rad_upper_[nr - 1] = 0.0;

  const double iz2 = 1.0 / (grid.dz() * grid.dz());
  z_off_ = iz2;
  z_diag_ = Eigen::VectorXd::Constant(nz, -2.0 * iz2);
  z_diag_[0] += end_factor * iz2;
  z_diag_[nz - 1] += end_factor * iz2;

  if (settings_.backend == SolverBackend::separable) {
    Eigen::MatrixXd tz = Eigen::MatrixXd::Zero(nz, nz);
    for (Index j = 0; j < nz; ++j) {
      tz(j, j) = z_diag_[j];
      if (j + 1 < nz) tz(j, j + 1) = tz(j + 1, j) = z_off_;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tz);
    if (eig.info() != Eigen::Success) throw SolverError("z eigendecomposition failed", 0.0);
    z_modes_ = eig.eigenvectors();
    z_eigs_ = eig.eigenvalues();

    thomas_c_.resize(nr, nz);
    thomas_inv_.resize(nr, nz);
    for (Index k = 0; k < nz; ++k) {
      double c_prev = 0.0;
      for (Index i = 0; i < nr; ++i) {
        const double m = rad_diag_[i] + z_eigs_[k] - rad_lower_[i] * c_prev;
        thomas_inv_(i, k) = 1.0 / m;
        c_prev = rad_upper_[i] / m;
        thomas_c_(i, k) = c_prev;
      }
    }
  }
}

Index EllipticProblem::max_iterations() const {
  return settings_.max_iterations > 0 ? settings_.max_iterations
                                      : 50 * std::max(grid_.nr(), grid_.nz());
}

Eigen::MatrixXd EllipticProblem::solve_separable(const Eigen::MatrixXd& f) const {
  const Index nr = grid_.nr(), nz = grid_.nz();
  Eigen::MatrixXd u_hat = f * z_modes_;
  for (Index k = 0; k < nz; ++k) {
    double* col = u_hat.col(k).data();
    const double* c = thomas_c_.col(k).data();
    const double* inv = thomas_inv_.col(k).data();
    col[0] *= inv[0];
    for (Index i = 1; i < nr; ++i) col[i] = (col[i] - rad_lower_[i] * col[i - 1]) * inv[i];
    for (Index i = nr - 2; i >= 0; --i) col[i] -= c[i] * col[i + 1];
  }
  return u_hat * z_modes_.transpose();
}

EllipticProblem::SparseMatrix EllipticProblem::assemble() const {
  const Index nr = grid_.nr(), nz = grid_.nz();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(5 * nr * nz));
  for (Index j = 0; j < nz; ++j) {
    for (Index i = 0; i < nr; ++i) {
      const Index row = i + nr * j;
      t.emplace_back(row, row, rad_diag_[i] + z_diag_[j]);
      if (i > 0) t.emplace_back(row, row - 1, rad_lower_[i]);
      if (i + 1 < nr) t.emplace_back(row, row + 1, rad_upper_[i]);
      if (j > 0) t.emplace_back(row, row - nr, z_off_);
      if (j + 1 < nz) t.emplace_back(row, row + nr, z_off_);
    }
  }
  SparseMatrix a(nr * nz, nr * nz);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

Eigen::MatrixXd EllipticProblem::solve_bicgstab(const Eigen::MatrixXd& f) const {
  const Index nr = grid_.nr(), nz = grid_.nz();
  const SparseMatrix a = assemble();
  Eigen::BiCGSTAB<SparseMatrix, Eigen::DiagonalPreconditioner<double>> solver;
  solver.setTolerance(settings_.tolerance);
  solver.setMaxIterations(max_iterations());
  solver.compute(a);
  const Eigen::Map<const Eigen::VectorXd> b(f.data(), nr * nz);
  Eigen::VectorXd x = solver.solve(b);
  if (solver.info() != Eigen::Success) {
    throw SolverError("BiCGSTAB did not converge in " + std::to_string(solver.iterations()) +
                          " iterations",
                      solver.error());
  }
  return Eigen::Map<Eigen::MatrixXd>(x.data(), nr, nz);
}

ScalarField EllipticProblem::solve(const ScalarField& rhs) const {
  if (!(rhs.grid() == grid_)) throw ConfigError("elliptic solve: right-hand side on wrong grid");
  require_finite(rhs);
  const Eigen::MatrixXd f = interior_matrix(rhs);
  const Eigen::MatrixXd u = settings_.backend == SolverBackend::separable ? solve_separable(f)
                                                                         : solve_bicgstab(f);
  ScalarField out(grid_, AxisParity::even, bcs_);
  out.interior() = u.array();
  fill_ghosts(out);
  const double res = relative_residual(out, rhs);
  if (!(res <= settings_.tolerance)) throw SolverError("elliptic solve missed tolerance", res);
  return out;
}

double EllipticProblem::relative_residual(const ScalarField& u, const ScalarField& rhs) const {
  ScalarField filled = u;
  if (!filled.ghosts_filled()) {
    filled.set_bcs(bcs_);
    fill_ghosts(filled);
  }
  const ScalarField lu = apply(filled);
  const double num = (lu.interior() - rhs.interior()).matrix().norm();
  const double den = rhs.interior().matrix().norm();
  return den > 0.0 ? num / den : num;
}

ScalarField EllipticProblem::apply(const ScalarField& u) const {
  return form_ == RadialForm::flux ? l_omega_flux(u) : l_omega(u);
}

BoundarySet stream_boundary_set() {
  return {BoundaryCondition::parity(), BoundaryCondition::dirichlet(), BoundaryCondition::dirichlet(),
          BoundaryCondition::dirichlet()};
}

BoundarySet vr_over_r_boundary_set() {
  return {BoundaryCondition::parity(), BoundaryCondition::dirichlet(), BoundaryCondition::neumann(),
          BoundaryCondition::neumann()};
}

Reconstruction::Reconstruction(const Grid& grid, SolverSettings settings)
    : grid_(grid),
      stream_(grid, BoundaryCondition::dirichlet(), BoundaryCondition::dirichlet(), settings,
              RadialForm::flux),
      biot_(grid, BoundaryCondition::dirichlet(), BoundaryCondition::neumann(), settings,
            RadialForm::drift) {}

ScalarField Reconstruction::solve_stream(const ScalarField& omega) const {
  ScalarField rhs(grid_);
  rhs.interior() = -omega.interior();
  const ScalarField chi = stream_.solve(rhs);
  ScalarField psi(grid_, AxisParity::even, stream_boundary_set());
  auto& p = psi.data();
  for (Index j = 0; j < grid_.nz(); ++j)
    for (Index i = 0; i < grid_.nr(); ++i) {
      const double r = grid_.r(i);
      p(i + 1, j + 1) = r * r * chi(i, j);
    }
  fill_ghosts(psi);
  return psi;
}

ScalarField Reconstruction::solve_vr_over_r(const ScalarField& omega) const {
  return biot_.solve(ddz(omega));
}

MeridianVector<double> velocity_from_stream(const ScalarField& psi) {
  psi.require_ghosts("velocity_from_stream");
  const Grid& g = psi.grid();
  const auto& p = psi.data();
  MeridianVector<double> v{
      ScalarField(g, AxisParity::odd,
                  {BoundaryCondition::parity(), BoundaryCondition::dirichlet(),
                   BoundaryCondition::neumann(), BoundaryCondition::neumann()}),
      ScalarField(g, AxisParity::even,
                  {BoundaryCondition::parity(), BoundaryCondition::neumann(),
                   BoundaryCondition::dirichlet(), BoundaryCondition::dirichlet()})};
  auto& vr = v.r.data();
  auto& vz = v.z.data();
  const double cz = 0.5 / g.dz(), cr = 0.5 / g.dr();
  for (Index j = 1; j <= g.nz(); ++j)
    for (Index i = 1; i <= g.nr(); ++i) {
      const double inv_r = 1.0 / g.r(i - 1);
      vr(i, j) = -(p(i, j + 1) - p(i, j - 1)) * cz * inv_r;
      vz(i, j) = (p(i + 1, j) - p(i - 1, j)) * cr * inv_r;
    }
  fill_ghosts(v.r);
  fill_ghosts(v.z);
  return v;
}

ScalarField vr_over_r_from_stream(const ScalarField& psi) {
  psi.require_ghosts("vr_over_r_from_stream");
  const Grid& g = psi.grid();
  const auto& p = psi.data();
  ScalarField phi(g, AxisParity::even, vr_over_r_boundary_set());
  auto& a = phi.data();
  const double cz = 0.5 / g.dz();
  for (Index j = 1; j <= g.nz(); ++j)
    for (Index i = 1; i <= g.nr(); ++i) {
      const double r = g.r(i - 1);
      a(i, j) = -(p(i, j + 1) - p(i, j - 1)) * cz / (r * r);
    }
  fill_ghosts(phi);
  return phi;
}

ScalarField discrete_divergence(const ScalarField& psi) {
  psi.require_ghosts("discrete_divergence");
  const Grid& g = psi.grid();
  const auto& p = psi.data();
  const Index nr = g.nr(), nz = g.nz();
  // r v_r = -q / (2 dz) on columns -1..nr; r v_z = p / (2 dr) on rows -1..nz.
  Eigen::ArrayXXd q = Eigen::ArrayXXd::Zero(nr + 2, nz + 2);
  Eigen::ArrayXXd s = Eigen::ArrayXXd::Zero(nr + 2, nz + 2);
  for (Index j = 1; j <= nz; ++j)
    for (Index i = 0; i <= nr + 1; ++i) q(i, j) = p(i, j + 1) - p(i, j - 1);
  for (Index j = 0; j <= nz + 1; ++j)
    for (Index i = 1; i <= nr; ++i) s(i, j) = p(i + 1, j) - p(i - 1, j);
  ScalarField div(g);
  auto& d = div.data();
  const double c = 0.25 / (g.dr() * g.dz());
  for (Index j = 1; j <= nz; ++j)
    for (Index i = 1; i <= nr; ++i)
      d(i, j) = ((q(i - 1, j) - q(i + 1, j)) + (s(i, j + 1) - s(i, j - 1))) * c / g.r(i - 1);
  return div;
}

}  // namespace axisym
