#include "axisym/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "axisym/elliptic.hpp"
#include "axisym/operators.hpp"

namespace axisym {

double ConvergenceStudy::min_order() const {
  return orders.empty() ? 0.0 : *std::min_element(orders.begin(), orders.end());
}

double ConvergenceStudy::max_order() const {
  return orders.empty() ? 0.0 : *std::max_element(orders.begin(), orders.end());
}

namespace {

constexpr double kPi = std::numbers::pi;

using Fn = std::function<double(double, double)>;

double max_error(const ScalarField& got, const Grid& g, const Fn& exact) {
  double e = 0.0;
  for (Index j = 0; j < g.nz(); ++j)
    for (Index i = 0; i < g.nr(); ++i) e = std::max(e, std::abs(got(i, j) - exact(g.r(i), g.z(j))));
  return e;
}

double l2_error(const ScalarField& got, const Grid& g, const Fn& exact) {
  ScalarField d = sample(g, exact);
  d.interior() = got.interior() - d.interior();
  return weighted_lp_norm(d, 2.0);
}

// q2 = (1 - r^2) cos(pi z), q4 = (1 - r^2)^2 cos(pi z), and their derivatives.
double q2(double r, double z) { return (1 - r * r) * std::cos(kPi * z); }
double q4(double r, double z) { return (1 - r * r) * (1 - r * r) * std::cos(kPi * z); }
double q4_r(double r, double z) { return -4 * r * (1 - r * r) * std::cos(kPi * z); }
double q4_rr(double r, double z) { return (12 * r * r - 4) * std::cos(kPi * z); }
double q4_z(double r, double z) { return -kPi * (1 - r * r) * (1 - r * r) * std::sin(kPi * z); }
double q4_zz(double r, double z) { return -kPi * kPi * q4(r, z); }
double q4_rz(double r, double z) { return 4 * kPi * r * (1 - r * r) * std::sin(kPi * z); }

struct OperatorCase {
  std::string name;
  std::function<double(const Grid&)> error;
};

std::vector<OperatorCase> cases() {
  std::vector<OperatorCase> out;
  out.push_back({"ddr", [](const Grid& g) {
                   return max_error(ddr(sample_with_ghosts(g, q4)), g, q4_r);
                 }});
  out.push_back({"ddz", [](const Grid& g) {
                   return max_error(ddz(sample_with_ghosts(g, q4)), g, q4_z);
                 }});
  out.push_back({"laplacian_cyl", [](const Grid& g) {
                   // (1/r) d_r (r d_r) of (1 - r^2) is -4.
                   return max_error(laplacian_cyl(sample_with_ghosts(g, q2)), g, [](double r, double z) {
                     return (-4 - kPi * kPi * (1 - r * r)) * std::cos(kPi * z);
                   });
                 }});
  out.push_back({"l_omega", [](const Grid& g) {
                   return max_error(l_omega(sample_with_ghosts(g, q2)), g, [](double r, double z) {
                     return (-8 - kPi * kPi * (1 - r * r)) * std::cos(kPi * z);
                   });
                 }});
  out.push_back({"l_omega_flux", [](const Grid& g) {
                   const auto f = [](double r, double z) {
                     const double a = 1 - r * r;
                     return a * a * std::cos(kPi * z);
                   };
                   return max_error(l_omega_flux(sample_with_ghosts(g, f)), g, [](double r, double z) {
                     const double a = 1 - r * r;
                     return (-16 + 24 * r * r - kPi * kPi * a * a) * std::cos(kPi * z);
                   });
                 }});
  out.push_back({"advect", [](const Grid& g) {
                   const auto br = [](double r, double z) { return r * (1 - r * r) * std::sin(kPi * z); };
                   const auto bz = [](double r, double z) { return (1 - 2 * r * r) * std::cos(kPi * z); };
                   MeridianVector<double> b{sample_with_ghosts(g, br, AxisParity::odd),
                                            sample_with_ghosts(g, bz)};
                   return max_error(advect(b, sample_with_ghosts(g, q4)), g, [&](double r, double z) {
                     return br(r, z) * q4_r(r, z) + bz(r, z) * q4_z(r, z);
                   });
                 }});
  out.push_back({"hessian_rr", [](const Grid& g) {
                   return max_error(hessian_vr_over_r(sample_with_ghosts(g, q4)).rr, g, q4_rr);
                 }});
  out.push_back({"hessian_r_over", [](const Grid& g) {
                   return max_error(hessian_vr_over_r(sample_with_ghosts(g, q4)).r_over, g,
                                    [](double r, double z) { return q4_r(r, z) / r; });
                 }});
  out.push_back({"hessian_zz", [](const Grid& g) {
                   return max_error(hessian_vr_over_r(sample_with_ghosts(g, q4)).zz, g, q4_zz);
                 }});
  out.push_back({"hessian_rz", [](const Grid& g) {
                   return max_error(hessian_vr_over_r(sample_with_ghosts(g, q4)).rz, g, q4_rz);
                 }});
  return out;
}

// psi* = r^2 (1 - r^2)^2 sin^2(pi z), so chi* = (1 - r^2)^2 sin^2(pi z) and
// Omega = -(d_r^2 + (3/r) d_r + d_z^2) chi*.
double stream_route_error(const Grid& g) {
  const auto omega = [](double r, double z) {
    const double a = 1 - r * r;
    const double s = std::sin(kPi * z);
    const double radial = -4 * a + 8 * r * r - 12 * a;  // f'' + 3 f' / r for f = a^2
    return -(radial * s * s + a * a * 2 * kPi * kPi * std::cos(2 * kPi * z));
  };
  const ScalarField om = with_ghosts(sample(g, omega, AxisParity::even, stream_boundary_set()));
  const ScalarField psi = Reconstruction(g).solve_stream(om);
  return l2_error(psi, g, [](double r, double z) {
    const double s = std::sin(kPi * z);
    return r * r * (1 - r * r) * (1 - r * r) * s * s;
  });
}

// phi* = (1 - r^2) cos(pi z); L phi* = d_z Omega for
// Omega = -(1/pi) (8 + pi^2 (1 - r^2)) sin(pi z), which vanishes on the z sides.
double biot_route_error(const Grid& g) {
  const auto omega = [](double r, double z) {
    return -(8 + kPi * kPi * (1 - r * r)) * std::sin(kPi * z) / kPi;
  };
  const ScalarField om = with_ghosts(sample(g, omega, AxisParity::even, stream_boundary_set()));
  const ScalarField phi = Reconstruction(g).solve_vr_over_r(om);
  return max_error(phi, g, q2);
}

void fill_orders(ConvergenceStudy& s) {
  for (std::size_t k = 0; k + 1 < s.errors.size(); ++k) {
    const double ratio = static_cast<double>(s.sizes[k + 1]) / static_cast<double>(s.sizes[k]);
    s.orders.push_back(std::log(s.errors[k] / s.errors[k + 1]) / std::log(ratio));
  }
}

}  // namespace

std::vector<ConvergenceStudy> run_convergence_studies(const std::vector<Index>& sizes) {
  if (sizes.size() < 2) throw ConfigError("convergence studies need at least two resolutions");
  std::vector<ConvergenceStudy> out;
  for (const auto& c : cases()) {
    ConvergenceStudy s{c.name, "max", sizes, {}, {}};
    for (Index n : sizes) s.errors.push_back(c.error(Grid(n, n)));
    fill_orders(s);
    out.push_back(std::move(s));
  }
  ConvergenceStudy stream{"stream_route", "weighted_l2", sizes, {}, {}};
  ConvergenceStudy biot{"biot_savart_route", "max", sizes, {}, {}};
  for (Index n : sizes) {
    stream.errors.push_back(stream_route_error(Grid(n, n)));
    biot.errors.push_back(biot_route_error(Grid(n, n)));
  }
  fill_orders(stream);
  fill_orders(biot);
  out.push_back(std::move(stream));
  out.push_back(std::move(biot));
  return out;
}

}  // namespace axisym
