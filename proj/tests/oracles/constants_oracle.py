#!/usr/bin/env python3
"""Independent high-precision evaluation of the golden values frozen in the tests.

Run: python3 tests/oracles/constants_oracle.py
Every printed value is reproduced verbatim in tests/unit/golden.hpp.
"""
from mpmath import mp, mpf, sqrt, pi, quad, cos, beta

mp.dps = 40

# Regularity constants.
C1 = (1 + sqrt(2)) * 2 * sqrt(pi) * mpf(536) ** mpf("0.25") * (57452 * (1 + 5 / pi**2) + 60) ** mpf("0.25")
C3 = sqrt((2 + 3 / sqrt(2)) ** 2 + mpf(5) / 2)
CP = sqrt(5) / pi

# Gamma0 = r^2 (1 - r^2)^2 cos(pi z) on the unit cylinder, measure r dr dz.
def l4_pow4(f):
    return quad(lambda r: quad(lambda z: f(r, z) ** 4 * r, [0, 1]), [0, 1])

gamma = lambda r, z: r**2 * (1 - r**2) ** 2 * cos(pi * z)
V = lambda r, z: gamma(r, z) / r ** mpf("1.5")

g4 = l4_pow4(gamma)
v4 = l4_pow4(V)
# Closed forms via Beta functions: int_0^1 cos^4 = 3/8.
g4_beta = beta(5, 9) / 2 * mpf(3) / 8
v4_beta = beta(2, 9) / 2 * mpf(3) / 8
assert abs(g4 - g4_beta) < mpf(10) ** -30
assert abs(v4 - v4_beta) < mpf(10) ** -30

gamma_l4 = g4 ** mpf("0.25")
S_gamma_only = 9 * C1 * sqrt(C3) / 4 * (v4 / 2) ** mpf("0.25") * gamma_l4

# Omega0 = (1 - r^2) sin(pi z): ||Omega0||_2^2 = (1/6)(1/2) = 1/12.
omega_l2_sq = quad(lambda r: quad(lambda z: ((1 - r**2) * mp.sin(pi * z)) ** 2 * r, [0, 1]), [0, 1])

for name, value in [
    ("C1", C1),
    ("C3", C3),
    ("CP_bound", CP),
    ("gamma0_l4", gamma_l4),
    ("v0_l4_pow4", v4),
    ("smallness_gamma_only", S_gamma_only),
    ("omega0_l2_sq", omega_l2_sq),
]:
    print(f"{name} = {mp.nstr(value, 20)}")
