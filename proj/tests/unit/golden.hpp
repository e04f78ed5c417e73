#pragma once

// Values produced by tests/oracles/constants_oracle.py (mpmath, 40 digits)
// and frozen here. Regenerate with that script; never edit by hand.

namespace golden {

inline constexpr double C1 = 706.43670312774291491;
inline constexpr double C3 = 4.4142135623730950488;
inline constexpr double CP_bound = 0.71176254341717705848;

// Gamma0 = r^2 (1 - r^2)^2 cos(pi z) on the unit cylinder.
inline constexpr double gamma0_l4 = 0.073470531259778780889;
inline constexpr double v0_l4_pow4 = 0.0020833333333333333333;
inline constexpr double smallness_gamma_only = 44.078602360030952066;

// Omega0 = (1 - r^2) sin(pi z).
inline constexpr double omega0_l2_sq = 0.083333333333333333333;

// stable_dt at rest, nr = nz = 64, unit cylinder, cfl 0.4:
// 0.4 * min(h^2 / 4, h * (h / 2) / 2) with h = 1/64.
inline constexpr double stable_dt_64 = 2.44140625e-05;

}  // namespace golden
