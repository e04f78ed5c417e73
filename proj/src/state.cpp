#include "axisym/state.hpp"

#include <cmath>
#include <utility>

namespace axisym {

BoundarySet gamma_boundary_set() {
  return {BoundaryCondition::parity(), BoundaryCondition::neumann(), BoundaryCondition::neumann(),
          BoundaryCondition::neumann()};
}

BoundarySet omega_boundary_set() {
  return {BoundaryCondition::parity(), BoundaryCondition::dirichlet(), BoundaryCondition::dirichlet(),
          BoundaryCondition::dirichlet()};
}

namespace {

ScalarField attach(const ScalarField& src, const BoundarySet& bcs) {
  ScalarField f(src.grid(), AxisParity::even, bcs);
  f.interior() = src.interior();
  fill_ghosts(f);
  return f;
}

}  // namespace

FlowState::FlowState(double t, const ScalarField& gamma, const ScalarField& omega) : t_(t) {
  set_fields(gamma, omega);
}

void FlowState::set_fields(const ScalarField& gamma, const ScalarField& omega) {
  if (!(gamma.grid() == omega.grid())) throw ConfigError("Gamma and Omega live on different grids");
  gamma_ = attach(gamma, gamma_boundary_set());
  omega_ = attach(omega, omega_boundary_set());
  valid_ = false;
}

const DerivedFields& FlowState::derived() const {
  if (!valid_) throw InternalError("derived fields requested from a stale cache");
  return derived_;
}

void FlowState::refresh(const Reconstruction& rec) {
  if (!(rec.grid() == grid())) throw ConfigError("reconstruction built for a different grid");
  const Grid& g = grid();
  derived_.psi = rec.solve_stream(omega_);
  derived_.velocity = velocity_from_stream(derived_.psi);
  derived_.vr_over_r = vr_over_r_from_stream(derived_.psi);
  derived_.v_theta = ScalarField(g);
  derived_.V = ScalarField(g);
  auto& vt = derived_.v_theta.data();
  auto& V = derived_.V.data();
  const auto& G = std::as_const(gamma_).data();
  for (Index j = 1; j <= g.nz(); ++j)
    for (Index i = 1; i <= g.nr(); ++i) {
      const double r = g.r(i - 1);
      vt(i, j) = G(i, j) / r;
      V(i, j) = G(i, j) / (r * std::sqrt(r));
    }
  valid_ = true;
}

}  // namespace axisym
