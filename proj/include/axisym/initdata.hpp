#pragma once

// Boundary-compatible, axis-regular initial data built from polynomials in r^2
// times trigonometric modes in z.

#include <cstdint>
#include <string>

#include "axisym/state.hpp"

namespace axisym {

enum class FamilyTag { poly_swirl, poly_vorticity, combined, swirl_free, random_smooth };

const char* family_name(FamilyTag tag);
/// Throws ConfigError on an unknown name.
FamilyTag parse_family(const std::string& name);

/// poly_swirl:     Gamma = A r^2 (R^2 - r^2)^2 cos(k pi z / H)
/// poly_vorticity: Omega = B (R^2 - r^2) sin(m pi z / H)
/// combined:       both; swirl_free: Omega only.
/// random_smooth:  seeded combinations of r^(2p) times the two profiles above
///                 over low z-modes, scaled by A and B.
struct DataFamily {
  FamilyTag tag = FamilyTag::combined;
  double A = 0.1;
  double B = 0.1;
  int k = 1;
  int m = 1;
  std::uint64_t seed = 0;
};

/// Analytic profiles on a domain of extent (R, H).
double gamma_profile(const DataFamily& fam, double R, double H, double r, double z);
double omega_profile(const DataFamily& fam, double R, double H, double r, double z);

FlowState make_initial(const DataFamily& fam, const Grid& grid);

/// Data of `grid` pulled through v -> lambda v(lambda x) onto the grid with
/// extents (R/lambda, H/lambda) and the same cell counts:
/// Gamma_l(r, z) = Gamma(lambda r, lambda z), Omega_l = lambda^3 Omega(lambda r, lambda z).
FlowState rescaled(const DataFamily& fam, const Grid& grid, double lambda);

}  // namespace axisym
