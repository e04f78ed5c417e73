#include "axisym/initdata.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace axisym {

const char* family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::poly_swirl: return "poly_swirl";
    case FamilyTag::poly_vorticity: return "poly_vorticity";
    case FamilyTag::combined: return "combined";
    case FamilyTag::swirl_free: return "swirl_free";
    case FamilyTag::random_smooth: return "random_smooth";
  }
  return "?";
}

FamilyTag parse_family(const std::string& name) {
  for (FamilyTag t : {FamilyTag::poly_swirl, FamilyTag::poly_vorticity, FamilyTag::combined,
                      FamilyTag::swirl_free, FamilyTag::random_smooth})
    if (name == family_name(t)) return t;
  throw ConfigError("unknown initial-data family '" + name + "'");
}

namespace {

constexpr int kRadialTerms = 2;  // r^(2p), p = 0, 1
constexpr int kModes = 3;

// Gamma: z-modes 0..2 (cos); Omega: z-modes 1..3 (sin).
struct RandomCoefficients {
  std::array<std::array<double, kModes>, kRadialTerms> gamma{};
  std::array<std::array<double, kModes>, kRadialTerms> omega{};
};

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

RandomCoefficients draw(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomCoefficients c;
  for (auto* table : {&c.gamma, &c.omega})
    for (int p = 0; p < kRadialTerms; ++p)
      for (int q = 0; q < kModes; ++q)
        (*table)[p][q] = (2.0 * unit_uniform(rng) - 1.0) * std::ldexp(1.0, -(p + q));
  return c;
}

bool has_swirl(FamilyTag t) {
  return t == FamilyTag::poly_swirl || t == FamilyTag::combined || t == FamilyTag::random_smooth;
}

bool has_vorticity(FamilyTag t) { return t != FamilyTag::poly_swirl; }

void validate(const DataFamily& fam) {
  if (!std::isfinite(fam.A) || !std::isfinite(fam.B)) throw ConfigError("non-finite amplitude");
  if (fam.k < 0 || fam.m < 1) throw ConfigError("wavenumbers must satisfy k >= 0, m >= 1");
}

struct Profiles {
  explicit Profiles(const DataFamily& f) : fam(f) {
    validate(f);
    if (f.tag == FamilyTag::random_smooth) coeffs = draw(f.seed);
  }

  double gamma(double R, double H, double r, double z) const {
    if (!has_swirl(fam.tag)) return 0.0;
    const double a = R * R - r * r;
    const double base = r * r * a * a;
    const double kz = std::numbers::pi * z / H;
    if (fam.tag != FamilyTag::random_smooth) return fam.A * base * std::cos(fam.k * kz);
    const double s2 = (r / R) * (r / R);
    double acc = 0.0, rp = 1.0;
    for (int p = 0; p < kRadialTerms; ++p, rp *= s2)
      for (int q = 0; q < kModes; ++q) acc += coeffs.gamma[p][q] * rp * std::cos(q * kz);
    return fam.A * base * acc;
  }

  double omega(double R, double H, double r, double z) const {
    if (!has_vorticity(fam.tag)) return 0.0;
    const double base = R * R - r * r;
    const double kz = std::numbers::pi * z / H;
    if (fam.tag != FamilyTag::random_smooth) return fam.B * base * std::sin(fam.m * kz);
    const double s2 = (r / R) * (r / R);
    double acc = 0.0, rp = 1.0;
    for (int p = 0; p < kRadialTerms; ++p, rp *= s2)
      for (int q = 0; q < kModes; ++q) acc += coeffs.omega[p][q] * rp * std::sin((q + 1) * kz);
    return fam.B * base * acc;
  }

  DataFamily fam;
  RandomCoefficients coeffs;
};

FlowState build(const Profiles& prof, const Grid& base, const Grid& target, double lambda) {
  const double l3 = lambda * lambda * lambda;
  const double R = base.R(), H = base.H();
  const ScalarField gamma =
      sample(target, [&](double r, double z) { return prof.gamma(R, H, lambda * r, lambda * z); });
  const ScalarField omega = sample(
      target, [&](double r, double z) { return l3 * prof.omega(R, H, lambda * r, lambda * z); });
  if (!gamma.all_finite() || !omega.all_finite())
    throw ConfigError("initial-data parameters produce non-finite values");
  return FlowState(0.0, gamma, omega);
}

}  // namespace

double gamma_profile(const DataFamily& fam, double R, double H, double r, double z) {
  return Profiles(fam).gamma(R, H, r, z);
}

double omega_profile(const DataFamily& fam, double R, double H, double r, double z) {
  return Profiles(fam).omega(R, H, r, z);
}

FlowState make_initial(const DataFamily& fam, const Grid& grid) {
  return build(Profiles(fam), grid, grid, 1.0);
}

FlowState rescaled(const DataFamily& fam, const Grid& grid, double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("rescaling factor must be positive");
  if (lambda == 1.0) return make_initial(fam, grid);
  const Grid target(grid.nr(), grid.nz(), grid.R() / lambda, grid.H() / lambda);
  return build(Profiles(fam), grid, target, lambda);
}

}  // namespace axisym
