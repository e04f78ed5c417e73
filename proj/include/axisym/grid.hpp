#pragma once

// Cell-centred mesh of the meridian half-plane (r, z) in (0,R) x (0,H), the
// scalar fields that live on it, ghost filling and cylindrical norms.
//
// Layout: a field stores (nr+2) x (nz+2) values. Interior cell (i, j) with
// 0 <= i < nr, 0 <= j < nz sits at r_i = (i+1/2) dr, z_j = (j+1/2) dz. Index
// -1 and nr (resp. nz) address the single ghost layer. No unknown sits on the
// axis, so 1/r and 1/r^2 coefficients are finite at every cell centre.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "axisym/errors.hpp"

namespace axisym {

using Index = Eigen::Index;

enum class Side : int { axis = 0, outer = 1, bottom = 2, top = 3 };

inline const char* side_name(Side s) {
  switch (s) {
    case Side::axis: return "axis";
    case Side::outer: return "outer";
    case Side::bottom: return "bottom";
    case Side::top: return "top";
  }
  return "?";
}

/// Behaviour of the continuous function under r -> -r.
enum class AxisParity { even, odd };

/// Boundary descriptor for one side. Normal derivatives are outward:
/// du/dn ~ (ghost - interior) / dn.
struct BoundaryCondition {
  enum class Kind { dirichlet, neumann, robin, parity };

  Kind kind = Kind::parity;
  double value = 0.0;  // dirichlet / neumann data
  double alpha = 0.0;  // robin: alpha * u + beta * du/dn = 0
  double beta = 0.0;

  static BoundaryCondition dirichlet(double v = 0.0) { return {Kind::dirichlet, v, 0.0, 0.0}; }
  static BoundaryCondition neumann(double g = 0.0) { return {Kind::neumann, g, 0.0, 0.0}; }
  static BoundaryCondition robin(double a, double b) { return {Kind::robin, 0.0, a, b}; }
  /// Reflection through the face using the field's axis parity.
  static BoundaryCondition parity() { return {Kind::parity, 0.0, 0.0, 0.0}; }

  bool homogeneous() const { return value == 0.0; }
  bool operator==(const BoundaryCondition&) const = default;
};

using BoundarySet = std::array<std::optional<BoundaryCondition>, 4>;

/// ghost = factor * interior + offset for a face with normal spacing dn.
struct GhostRelation {
  double factor;
  double offset;
};

inline GhostRelation ghost_relation(const BoundaryCondition& bc, double dn, AxisParity parity) {
  using K = BoundaryCondition::Kind;
  switch (bc.kind) {
    case K::dirichlet:
      return {-1.0, 2.0 * bc.value};
    case K::neumann:
      return {1.0, bc.value * dn};
    case K::robin: {
      const double den = bc.beta / dn + 0.5 * bc.alpha;
      if (den == 0.0) throw ConfigError("degenerate robin condition");
      return {(bc.beta / dn - 0.5 * bc.alpha) / den, 0.0};
    }
    case K::parity:
      return {parity == AxisParity::even ? 1.0 : -1.0, 0.0};
  }
  return {0.0, 0.0};
}

template <typename Scalar>
class MeridianGrid {
 public:
  MeridianGrid() = default;
  MeridianGrid(Index nr, Index nz, Scalar R = Scalar(1), Scalar H = Scalar(1))
      : nr_(nr), nz_(nz), R_(R), H_(H), dr_(R / Scalar(nr)), dz_(H / Scalar(nz)) {
    if (nr <= 0 || nz <= 0) throw ConfigError("grid sizes must be positive");
    if (!(R > 0) || !(H > 0)) throw ConfigError("domain extents must be positive");
  }

  Index nr() const { return nr_; }
  Index nz() const { return nz_; }
  Scalar R() const { return R_; }
  Scalar H() const { return H_; }
  Scalar dr() const { return dr_; }
  Scalar dz() const { return dz_; }

  /// Cell centres; valid for ghost indices too (r(-1) = -dr/2).
  Scalar r(Index i) const { return (Scalar(i) + Scalar(0.5)) * dr_; }
  Scalar z(Index j) const { return (Scalar(j) + Scalar(0.5)) * dz_; }
  /// Face radius r_{i-1/2}.
  Scalar r_face(Index i) const { return Scalar(i) * dr_; }
  /// Cylindrical quadrature weight r_i dr dz (the 2 pi is dropped throughout).
  Scalar weight(Index i) const { return r(i) * dr_ * dz_; }
  /// Largest squared spacing, the h^2 used in discretisation slacks.
  Scalar h2() const { return std::max(dr_ * dr_, dz_ * dz_); }

  bool operator==(const MeridianGrid& o) const {
    return nr_ == o.nr_ && nz_ == o.nz_ && R_ == o.R_ && H_ == o.H_;
  }

 private:
  Index nr_ = 0, nz_ = 0;
  Scalar R_ = 1, H_ = 1, dr_ = 0, dz_ = 0;
};

/// One scalar unknown on a MeridianGrid, with its ghost layer, axis parity and
/// per-side boundary descriptors. Any mutable access marks the ghosts stale.
template <typename Scalar>
class Field {
 public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Field() = default;
  explicit Field(const MeridianGrid<Scalar>& grid, AxisParity parity = AxisParity::even,
                 BoundarySet bcs = {})
      : grid_(grid), data_(Array::Zero(grid.nr() + 2, grid.nz() + 2)), parity_(parity), bcs_(bcs) {}

  const MeridianGrid<Scalar>& grid() const { return grid_; }
  Index nr() const { return grid_.nr(); }
  Index nz() const { return grid_.nz(); }

  Scalar operator()(Index i, Index j) const { return data_(i + 1, j + 1); }
  Scalar& operator()(Index i, Index j) {
    ghosts_filled_ = false;
    return data_(i + 1, j + 1);
  }

  auto interior() const { return data_.block(1, 1, nr(), nz()); }
  auto interior() {
    ghosts_filled_ = false;
    return data_.block(1, 1, nr(), nz());
  }

  /// Raw storage including ghosts, offset by one in both directions.
  const Array& data() const { return data_; }
  Array& data() {
    ghosts_filled_ = false;
    return data_;
  }

  AxisParity axis_parity() const { return parity_; }
  void set_axis_parity(AxisParity p) {
    parity_ = p;
    ghosts_filled_ = false;
  }

  const std::optional<BoundaryCondition>& bc(Side s) const { return bcs_[static_cast<int>(s)]; }
  const BoundarySet& bcs() const { return bcs_; }
  void set_bc(Side s, BoundaryCondition bc) {
    bcs_[static_cast<int>(s)] = bc;
    ghosts_filled_ = false;
  }
  void set_bcs(const BoundarySet& b) {
    bcs_ = b;
    ghosts_filled_ = false;
  }

  bool ghosts_filled() const { return ghosts_filled_; }
  /// For callers that populate ghosts themselves (e.g. analytic sampling).
  void mark_ghosts_filled() { ghosts_filled_ = true; }

  void require_ghosts(const char* op) const {
    if (!ghosts_filled_) throw GhostError(std::string(op) + ": ghost layer not filled");
  }

  bool all_finite() const { return interior().allFinite(); }

 private:
  MeridianGrid<Scalar> grid_;
  Array data_;
  AxisParity parity_ = AxisParity::even;
  BoundarySet bcs_{};
  bool ghosts_filled_ = false;
};

using Grid = MeridianGrid<double>;
using ScalarField = Field<double>;

/// Populate the ghost layer from the boundary descriptors so that the centred
/// two-point relation of each condition holds exactly. Radial sides are filled
/// first over interior rows, then the z sides over all columns including the
/// radial ghosts, which defines the corners.
template <typename Scalar>
void fill_ghosts(Field<Scalar>& f) {
  const auto& g = f.grid();
  const Index nr = g.nr(), nz = g.nz();
  for (int s = 0; s < 4; ++s) {
    if (!f.bcs()[s]) {
      throw ConfigError(std::string("missing boundary condition on side ") +
                        side_name(static_cast<Side>(s)));
    }
  }
  const auto rel = [&](Side s, Scalar dn) {
    return ghost_relation(*f.bc(s), static_cast<double>(dn), f.axis_parity());
  };
  const GhostRelation ax = rel(Side::axis, g.dr());
  const GhostRelation out = rel(Side::outer, g.dr());
  const GhostRelation bot = rel(Side::bottom, g.dz());
  const GhostRelation top = rel(Side::top, g.dz());

  auto& a = f.data();
  for (Index j = 1; j <= nz; ++j) {
    a(0, j) = Scalar(ax.factor) * a(1, j) + Scalar(ax.offset);
    a(nr + 1, j) = Scalar(out.factor) * a(nr, j) + Scalar(out.offset);
  }
  for (Index i = 0; i <= nr + 1; ++i) {
    a(i, 0) = Scalar(bot.factor) * a(i, 1) + Scalar(bot.offset);
    a(i, nz + 1) = Scalar(top.factor) * a(i, nz) + Scalar(top.offset);
  }
  f.mark_ghosts_filled();
}

/// Value-returning form of fill_ghosts.
template <typename Scalar>
Field<Scalar> with_ghosts(Field<Scalar> f) {
  fill_ghosts(f);
  return f;
}

/// Evaluate fn(r, z) at interior cell centres.
template <typename Scalar, typename Fn>
Field<Scalar> sample(const MeridianGrid<Scalar>& g, Fn&& fn, AxisParity parity = AxisParity::even,
                     BoundarySet bcs = {}) {
  Field<Scalar> f(g, parity, bcs);
  auto& a = f.data();
  for (Index j = 0; j < g.nz(); ++j)
    for (Index i = 0; i < g.nr(); ++i) a(i + 1, j + 1) = fn(g.r(i), g.z(j));
  return f;
}

/// Evaluate fn at interior and ghost cell centres and mark the ghosts filled.
/// Used by manufactured-solution studies to isolate stencil error from the
/// boundary closure.
template <typename Scalar, typename Fn>
Field<Scalar> sample_with_ghosts(const MeridianGrid<Scalar>& g, Fn&& fn,
                                 AxisParity parity = AxisParity::even) {
  Field<Scalar> f(g, parity);
  auto& a = f.data();
  for (Index j = -1; j <= g.nz(); ++j)
    for (Index i = -1; i <= g.nr(); ++i) a(i + 1, j + 1) = fn(g.r(i), g.z(j));
  f.mark_ghosts_filled();
  return f;
}

/// Pairwise summation over a contiguous range; fixed tree, so results are
/// bit-reproducible for a given length.
template <typename Scalar>
Scalar pairwise_sum(const Scalar* x, Index n) {
  if (n <= 8) {
    Scalar s = 0;
    for (Index k = 0; k < n; ++k) s += x[k];
    return s;
  }
  const Index half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

/// Sum of term(i, j) * r_i over interior cells, times dr dz. Reduction order:
/// pairwise along r within each z-row, then pairwise over the row sums.
template <typename Scalar, typename Term>
Scalar weighted_sum(const MeridianGrid<Scalar>& g, Term&& term) {
  std::vector<Scalar> row(static_cast<std::size_t>(g.nr()));
  std::vector<Scalar> rows(static_cast<std::size_t>(g.nz()));
  for (Index j = 0; j < g.nz(); ++j) {
    for (Index i = 0; i < g.nr(); ++i) row[static_cast<std::size_t>(i)] = term(i, j) * g.r(i);
    rows[static_cast<std::size_t>(j)] = pairwise_sum(row.data(), g.nr());
  }
  return pairwise_sum(rows.data(), g.nz()) * g.dr() * g.dz();
}

template <typename Scalar>
void require_finite(const Field<Scalar>& f) {
  if (!f.all_finite()) throw NonFiniteError("non-finite field");
}

/// (sum_ij |f_ij|^p w_ij)^(1/p), midpoint quadrature of the cylindrical L^p
/// norm (2 pi dropped).
template <typename Scalar>
Scalar weighted_lp_norm(const Field<Scalar>& f, double p) {
  if (!(p >= 1.0)) throw ConfigError("weighted_lp_norm requires p >= 1");
  require_finite(f);
  const auto& a = f.data();
  Scalar s;
  if (p == 2.0) {
    s = weighted_sum(f.grid(), [&](Index i, Index j) { return a(i + 1, j + 1) * a(i + 1, j + 1); });
    return std::sqrt(s);
  }
  if (p == 4.0) {
    s = weighted_sum(f.grid(), [&](Index i, Index j) {
      const Scalar v2 = a(i + 1, j + 1) * a(i + 1, j + 1);
      return v2 * v2;
    });
    return std::sqrt(std::sqrt(s));
  }
  s = weighted_sum(f.grid(),
                   [&](Index i, Index j) { return std::pow(std::abs(a(i + 1, j + 1)), Scalar(p)); });
  return std::pow(s, Scalar(1.0 / p));
}

/// Nodal sup over interior cells.
template <typename Scalar>
Scalar linf_norm(const Field<Scalar>& f) {
  require_finite(f);
  return f.interior().abs().maxCoeff();
}

/// sum_ij f_ij g_ij w_ij.
template <typename Scalar>
Scalar weighted_inner(const Field<Scalar>& f, const Field<Scalar>& g) {
  const auto& a = f.data();
  const auto& b = g.data();
  return weighted_sum(f.grid(), [&](Index i, Index j) { return a(i + 1, j + 1) * b(i + 1, j + 1); });
}

}  // namespace axisym
