#pragma once

// Centred five-point cylindrical operators on cell-centred meridian fields.
// Every operator reads the ghost layer and writes interior values only; the
// result carries no boundary descriptors.

#include <cmath>

#include "axisym/grid.hpp"

namespace axisym {

/// b = v_r e_r + v_z e_z, both components on one grid.
template <typename Scalar>
struct MeridianVector {
  Field<Scalar> r;
  Field<Scalar> z;
};

/// Three-point radial coefficients at cell i: lower * f_{i-1} + centre * f_i +
/// upper * f_{i+1}.
template <typename Scalar>
struct RadialStencil {
  Scalar lower;
  Scalar centre;
  Scalar upper;
};

/// Conservative (1/r) d/dr (r d/dr): face radii weight the fluxes, so the face
/// on the axis (r = 0) carries no flux.
template <typename Scalar>
RadialStencil<Scalar> radial_laplacian_stencil(const MeridianGrid<Scalar>& g, Index i) {
  const Scalar inv = Scalar(1) / (g.r(i) * g.dr() * g.dr());
  const Scalar lo = g.r_face(i) * inv;
  const Scalar up = g.r_face(i + 1) * inv;
  return {lo, -(lo + up), up};
}

/// Radial part of d_r^2 + (3/r) d_r: the conservative Laplacian plus a centred
/// (2/r) d_r drift.
template <typename Scalar>
RadialStencil<Scalar> radial_l_omega_stencil(const MeridianGrid<Scalar>& g, Index i) {
  RadialStencil<Scalar> s = radial_laplacian_stencil(g, i);
  const Scalar drift = Scalar(1) / (g.r(i) * g.dr());
  s.lower -= drift;
  s.upper += drift;
  return s;
}

/// Flux form r^-3 d/dr (r^3 d/dr) of the same radial operator, divided by the
/// exact cell volume (r_{i+1/2}^4 - r_{i-1/2}^4) / 4 so that r^2 maps to 8
/// in every cell. The axis face carries no flux.
template <typename Scalar>
RadialStencil<Scalar> radial_l_omega_flux_stencil(const MeridianGrid<Scalar>& g, Index i) {
  const Scalar a = g.r_face(i), b = g.r_face(i + 1);
  const Scalar inv = Scalar(4) / ((b * b * b * b - a * a * a * a) * g.dr());
  const Scalar lo = a * a * a * inv;
  const Scalar up = b * b * b * inv;
  return {lo, -(lo + up), up};
}

namespace detail {

template <typename Scalar, typename Fn>
Field<Scalar> apply_interior(const Field<Scalar>& f, Fn&& fn) {
  Field<Scalar> out(f.grid());
  auto& o = out.data();
  const Index nr = f.nr(), nz = f.nz();
  for (Index j = 1; j <= nz; ++j)
    for (Index i = 1; i <= nr; ++i) o(i, j) = fn(i, j);
  return out;
}

template <typename Scalar, typename Stencil>
Field<Scalar> apply_radial_plus_axial(const Field<Scalar>& f, Stencil&& stencil) {
  const auto& g = f.grid();
  const auto& a = f.data();
  const Scalar iz2 = Scalar(1) / (g.dz() * g.dz());
  Field<Scalar> out(g);
  auto& o = out.data();
  for (Index i = 0; i < g.nr(); ++i) {
    const RadialStencil<Scalar> s = stencil(g, i);
    const Index ii = i + 1;
    for (Index jj = 1; jj <= g.nz(); ++jj) {
      o(ii, jj) = s.lower * a(ii - 1, jj) + s.centre * a(ii, jj) + s.upper * a(ii + 1, jj) +
                  (a(ii, jj + 1) - Scalar(2) * a(ii, jj) + a(ii, jj - 1)) * iz2;
    }
  }
  return out;
}

}  // namespace detail

/// Centred d/dr.
template <typename Scalar>
Field<Scalar> ddr(const Field<Scalar>& f) {
  f.require_ghosts("ddr");
  const auto& a = f.data();
  const Scalar c = Scalar(0.5) / f.grid().dr();
  return detail::apply_interior(f, [&](Index i, Index j) { return (a(i + 1, j) - a(i - 1, j)) * c; });
}

/// Centred d/dz.
template <typename Scalar>
Field<Scalar> ddz(const Field<Scalar>& f) {
  f.require_ghosts("ddz");
  const auto& a = f.data();
  const Scalar c = Scalar(0.5) / f.grid().dz();
  return detail::apply_interior(f, [&](Index i, Index j) { return (a(i, j + 1) - a(i, j - 1)) * c; });
}

template <typename Scalar>
MeridianVector<Scalar> grad_meridian(const Field<Scalar>& f) {
  return {ddr(f), ddz(f)};
}

/// d_r^2 + (1/r) d_r + d_z^2 in conservative flux form.
template <typename Scalar>
Field<Scalar> laplacian_cyl(const Field<Scalar>& f) {
  f.require_ghosts("laplacian_cyl");
  return detail::apply_radial_plus_axial(
      f, [](const MeridianGrid<Scalar>& g, Index i) { return radial_laplacian_stencil(g, i); });
}

/// d_r^2 + (3/r) d_r + d_z^2: laplacian_cyl plus (2/r) times the centred d_r.
template <typename Scalar>
Field<Scalar> l_omega(const Field<Scalar>& f) {
  f.require_ghosts("l_omega");
  return detail::apply_radial_plus_axial(
      f, [](const MeridianGrid<Scalar>& g, Index i) { return radial_l_omega_stencil(g, i); });
}

/// d_r^2 + (3/r) d_r + d_z^2 with the radial part in flux form.
template <typename Scalar>
Field<Scalar> l_omega_flux(const Field<Scalar>& f) {
  f.require_ghosts("l_omega_flux");
  return detail::apply_radial_plus_axial(
      f, [](const MeridianGrid<Scalar>& g, Index i) { return radial_l_omega_flux_stencil(g, i); });
}

/// b . grad f with centred differences.
template <typename Scalar>
Field<Scalar> advect(const MeridianVector<Scalar>& b, const Field<Scalar>& f) {
  f.require_ghosts("advect");
  if (!(b.r.grid() == f.grid()) || !(b.z.grid() == f.grid()))
    throw ConfigError("advect: velocity and field live on different grids");
  const auto& a = f.data();
  const auto& br = b.r.data();
  const auto& bz = b.z.data();
  const Scalar cr = Scalar(0.5) / f.grid().dr();
  const Scalar cz = Scalar(0.5) / f.grid().dz();
  return detail::apply_interior(f, [&](Index i, Index j) {
    return br(i, j) * (a(i + 1, j) - a(i - 1, j)) * cr + bz(i, j) * (a(i, j + 1) - a(i, j - 1)) * cz;
  });
}

/// The distinct entries of the Hessian of an axisymmetric scalar phi viewed
/// as a 3D function: d_r^2 phi, (1/r) d_r phi, d_z^2 phi and d_r d_z phi.
template <typename Scalar>
struct HessianEntries {
  Field<Scalar> rr;
  Field<Scalar> r_over;
  Field<Scalar> zz;
  Field<Scalar> rz;
};

template <typename Scalar>
HessianEntries<Scalar> hessian_vr_over_r(const Field<Scalar>& phi) {
  phi.require_ghosts("hessian_vr_over_r");
  const auto& g = phi.grid();
  const auto& a = phi.data();
  const Scalar ir2 = Scalar(1) / (g.dr() * g.dr());
  const Scalar iz2 = Scalar(1) / (g.dz() * g.dz());
  const Scalar cr = Scalar(0.5) / g.dr();
  const Scalar crz = Scalar(0.25) / (g.dr() * g.dz());
  HessianEntries<Scalar> h{
      detail::apply_interior(phi, [&](Index i, Index j) {
        return (a(i + 1, j) - Scalar(2) * a(i, j) + a(i - 1, j)) * ir2;
      }),
      detail::apply_interior(phi, [&](Index i, Index j) {
        return (a(i + 1, j) - a(i - 1, j)) * cr / g.r(i - 1);
      }),
      detail::apply_interior(phi, [&](Index i, Index j) {
        return (a(i, j + 1) - Scalar(2) * a(i, j) + a(i, j - 1)) * iz2;
      }),
      detail::apply_interior(phi, [&](Index i, Index j) {
        return (a(i + 1, j + 1) - a(i + 1, j - 1) - a(i - 1, j + 1) + a(i - 1, j - 1)) * crz;
      })};
  return h;
}

/// Weighted L2 norm of the full 3x3 Hessian: the off-diagonal r-z entry
/// appears twice.
template <typename Scalar>
Scalar hessian_l2_norm(const HessianEntries<Scalar>& h) {
  const auto sq = [](const Field<Scalar>& f) {
    const Scalar n = weighted_lp_norm(f, 2.0);
    return n * n;
  };
  return std::sqrt(sq(h.rr) + sq(h.r_over) + sq(h.zz) + Scalar(2) * sq(h.rz));
}

/// Weighted L2 norm of a meridian vector field, sqrt(|b_r|^2 + |b_z|^2).
template <typename Scalar>
Scalar vector_l2_norm(const MeridianVector<Scalar>& b) {
  const Scalar nr = weighted_lp_norm(b.r, 2.0);
  const Scalar nz = weighted_lp_norm(b.z, 2.0);
  return std::sqrt(nr * nr + nz * nz);
}

}  // namespace axisym
