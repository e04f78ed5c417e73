#include <doctest.h>

#include <cmath>

#include "axisym/initdata.hpp"
#include "golden.hpp"

using namespace axisym;
using doctest::Approx;

TEST_CASE("family names round-trip") {
  for (FamilyTag t : {FamilyTag::poly_swirl, FamilyTag::poly_vorticity, FamilyTag::combined, FamilyTag::swirl_free,
                      FamilyTag::random_smooth})
    CHECK(parse_family(family_name(t)) == t);
  CHECK_THROWS_AS(parse_family("vortex_ring"), ConfigError);
}

TEST_CASE("swirl-free data with zero amplitude is the rest state") {
  DataFamily f;
  f.tag = FamilyTag::swirl_free;
  f.B = 0.0;
  const FlowState s = make_initial(f, Grid(16, 16));
  CHECK(linf_norm(s.gamma()) == 0.0);
  CHECK(linf_norm(s.omega()) == 0.0);
}

TEST_CASE("poly_swirl L4 norm matches the quadrature oracle") {
  DataFamily f;
  f.tag = FamilyTag::poly_swirl;
  f.A = 1.0;
  const FlowState s = make_initial(f, Grid(128, 128));
  CHECK(weighted_lp_norm(s.gamma(), 4.0) == Approx(golden::gamma0_l4).epsilon(1e-6));
  CHECK(linf_norm(s.omega()) == 0.0);
}

TEST_CASE("profiles are compatible with the boundary conditions") {
  DataFamily f;
  f.tag = FamilyTag::combined;
  f.A = f.B = 1.0;
  for (Index n : {32, 64}) {
    const Grid g(n, n);
    const double dr = g.dr();
    // Double root at r = R: the centred face derivative is O(dr^2).
    double dgamma = 0.0;
    for (Index j = 0; j < n; ++j)
      dgamma = std::max(dgamma, std::abs(gamma_profile(f, 1, 1, 1 + dr / 2, g.z(j)) -
                                         gamma_profile(f, 1, 1, 1 - dr / 2, g.z(j))) / dr);
    CHECK(dgamma <= 4 * dr * dr);
    CHECK(omega_profile(f, 1, 1, 1.0, 0.3) == Approx(0.0).scale(1.0));
    CHECK(omega_profile(f, 1, 1, 0.4, 0.0) == 0.0);
  }
}

TEST_CASE("generated ghosts are consistent and refilling changes nothing") {
  DataFamily f;
  f.tag = FamilyTag::random_smooth;
  f.seed = 3;
  f.A = f.B = 1.0;
  const Grid g(48, 40);
  const FlowState s = make_initial(f, g);
  ScalarField gamma = s.gamma(), omega = s.omega();
  fill_ghosts(gamma);
  fill_ghosts(omega);
  CHECK((gamma.data() == s.gamma().data()).all());
  CHECK((omega.data() == s.omega().data()).all());
  // Ghosts approximate the smooth extension of the profile.
  const auto& G = s.gamma().data();
  double worst = 0.0;
  for (Index j = 0; j < g.nz(); ++j) {
    worst = std::max(worst, std::abs(G(g.nr() + 1, j + 1) - gamma_profile(f, 1, 1, g.r(g.nr()), g.z(j))));
    worst = std::max(worst, std::abs(G(0, j + 1) - gamma_profile(f, 1, 1, g.r(-1), g.z(j))));
  }
  CHECK(worst <= 10 * g.h2());
}

TEST_CASE("amplitudes enter linearly") {
  DataFamily f;
  f.A = 0.3;
  f.B = -0.7;
  const Grid g(20, 20);
  const FlowState base = make_initial(f, g);
  DataFamily f4 = f;
  f4.A *= 4;
  f4.B *= 4;
  const FlowState scaled = make_initial(f4, g);
  CHECK((scaled.gamma().interior() == 4.0 * base.gamma().interior()).all());
  CHECK((scaled.omega().interior() == 4.0 * base.omega().interior()).all());
}

TEST_CASE("random_smooth is reproducible from its seed") {
  DataFamily f;
  f.tag = FamilyTag::random_smooth;
  f.seed = 11;
  const Grid g(16, 16);
  const FlowState a = make_initial(f, g), b = make_initial(f, g);
  CHECK((a.omega().interior() == b.omega().interior()).all());
  f.seed = 12;
  const FlowState c = make_initial(f, g);
  CHECK_FALSE((a.omega().interior() == c.omega().interior()).all());
}

TEST_CASE("rescaling") {
  DataFamily f;
  f.tag = FamilyTag::combined;
  const Grid g(64, 64);
  const FlowState one = rescaled(f, g, 1.0);
  const FlowState base = make_initial(f, g);
  CHECK((one.gamma().interior() == base.gamma().interior()).all());
  CHECK((one.omega().interior() == base.omega().interior()).all());

  const double lambda = 2.0;
  const FlowState s = rescaled(f, g, lambda);
  CHECK(s.grid().R() == 0.5);
  CHECK(s.grid().nr() == 64);
  // ||Gamma_l||_4 = lambda^(-3/4) ||Gamma||_4; ||Omega_l||_2^(1/2) = lambda^(3/4) ||Omega||_2^(1/2).
  CHECK(weighted_lp_norm(s.gamma(), 4.0) / weighted_lp_norm(base.gamma(), 4.0) ==
        Approx(std::pow(lambda, -0.75)).epsilon(1e-2));
  CHECK(std::sqrt(weighted_lp_norm(s.omega(), 2.0) / weighted_lp_norm(base.omega(), 2.0)) ==
        Approx(std::pow(lambda, 0.75)).epsilon(1e-2));
  CHECK_THROWS_AS(rescaled(f, g, 0.0), ConfigError);
}

TEST_CASE("invalid parameters are rejected") {
  DataFamily f;
  f.A = INFINITY;
  CHECK_THROWS_AS(make_initial(f, Grid(8, 8)), ConfigError);
  f.A = 1.0;
  f.m = 0;
  CHECK_THROWS_AS(make_initial(f, Grid(8, 8)), ConfigError);
}
