#include <doctest.h>

#include <cmath>
#include <numbers>

#include "axisym/dynamics.hpp"
#include "golden.hpp"

using namespace axisym;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

FlowState state_from(const Grid& g, double (*gamma)(double, double), double (*omega)(double, double),
                     const Reconstruction& rec) {
  FlowState s(0.0, sample(g, gamma), sample(g, omega));
  s.refresh(rec);
  return s;
}

double zero(double, double) { return 0.0; }
double small_omega(double r, double z) { return 1e-2 * (1 - r * r) * std::sin(kPi * z); }
double small_gamma(double r, double z) { return 1e-2 * r * r * (1 - r * r) * (1 - r * r) * std::cos(kPi * z); }
}  // namespace

TEST_CASE("right-hand sides of the rest state vanish") {
  const Grid g(16, 16);
  const Reconstruction rec(g);
  const FlowState s = state_from(g, zero, zero, rec);
  CHECK(linf_norm(rhs_gamma(s)) == 0.0);
  CHECK(linf_norm(rhs_omega(s)) == 0.0);
}

TEST_CASE("right-hand sides read b from a fresh cache") {
  const Grid g(8, 8);
  const FlowState s(0.0, sample(g, small_gamma), sample(g, small_omega));
  CHECK_THROWS_AS(rhs_gamma(s), InternalError);
  CHECK_THROWS_AS(rhs_omega(s), InternalError);
  DynamicsOptions diffusion;
  diffusion.diffusion_only = true;
  CHECK_NOTHROW(rhs_gamma(s, diffusion));
}

TEST_CASE("radial terms cancel on Gamma = r^2 g(z) at rest") {
  const Grid g(64, 64);
  const Reconstruction rec(g);
  const FlowState s = state_from(
      g, [](double r, double z) { return r * r * std::cos(kPi * z); }, zero, rec);
  const ScalarField rhs = rhs_gamma(s);
  // Exclude the last column, where the Neumann ghost does not match r^2.
  double err = 0.0;
  for (Index j = 0; j < g.nz(); ++j)
    for (Index i = 0; i + 1 < g.nr(); ++i)
      err = std::max(err, std::abs(rhs(i, j) + kPi * kPi * g.r(i) * g.r(i) * std::cos(kPi * g.z(j))));
  CHECK(err <= 2 * g.dz() * g.dz() * kPi * kPi * kPi * kPi);
}

TEST_CASE("rhs_gamma is additive in Gamma at fixed velocity") {
  const Grid g(32, 32);
  const Reconstruction rec(g);
  const ScalarField om = sample(g, small_omega);
  const ScalarField g1 = sample(g, small_gamma);
  const ScalarField g2 = sample(g, [](double r, double z) { return r * r * (1 - r * r) * (1 - r * r) * z * z * (3 - 2 * z); });
  ScalarField sum(g);
  sum.interior() = g1.interior() + g2.interior();
  FlowState a(0.0, g1, om), b(0.0, g2, om), c(0.0, sum, om);
  a.refresh(rec);
  b.refresh(rec);
  c.refresh(rec);
  ScalarField diff(g);
  diff.interior() = rhs_gamma(c).interior() - rhs_gamma(a).interior() - rhs_gamma(b).interior();
  CHECK(linf_norm(diff) <= 1e-12 * linf_norm(rhs_gamma(c)));
}

TEST_CASE("Omega source from the swirl") {
  const Grid g(32, 32);
  const Reconstruction rec(g);
  const FlowState rest = state_from(g, zero, small_omega, rec);
  const FlowState flat = state_from(
      g, [](double r, double) { return r * r * (1 - r * r) * (1 - r * r); }, small_omega, rec);
  CHECK((rhs_omega(flat).interior() == rhs_omega(rest).interior()).all());

  // Gamma = r^2 z: d_z(Gamma^2) / r^4 = 2 z away from the z-ghosts.
  const FlowState tilted = state_from(g, [](double r, double z) { return r * r * z; }, small_omega, rec);
  const ScalarField a = rhs_omega(tilted), b = rhs_omega(rest);
  double err = 0.0;
  for (Index j = 1; j + 1 < g.nz(); ++j)
    for (Index i = 0; i < g.nr(); ++i) err = std::max(err, std::abs(a(i, j) - b(i, j) - 2 * g.z(j)));
  CHECK(err <= 1e-9);
}

TEST_CASE("a step of the rest state or of zero length changes nothing but t") {
  const Grid g(16, 16);
  const Reconstruction rec(g);
  const FlowState rest = state_from(g, zero, zero, rec);
  const FlowState next = step(rest, 1e-4, rec);
  CHECK(next.time() == Approx(1e-4));
  CHECK(linf_norm(next.gamma()) == 0.0);
  CHECK(linf_norm(next.omega()) == 0.0);

  const FlowState s = state_from(g, small_gamma, small_omega, rec);
  const FlowState same = step(s, 0.0, rec);
  CHECK(same.time() == s.time());
  CHECK((same.gamma().interior() == s.gamma().interior()).all());
  CHECK((same.omega().interior() == s.omega().interior()).all());
}

TEST_CASE("swirl-free diffusion strictly decreases ||Omega||_2") {
  const Grid g(32, 32);
  const Reconstruction rec(g);
  FlowState s = state_from(g, zero, small_omega, rec);
  double prev = weighted_lp_norm(s.omega(), 2.0);
  for (int k = 0; k < 20; ++k) {
    s = step(s, stable_dt(s, 0.4), rec);
    const double now = weighted_lp_norm(s.omega(), 2.0);
    CHECK(now < prev);
    prev = now;
    CHECK(linf_norm(s.gamma()) == 0.0);
  }
}

TEST_CASE("stable time step") {
  const Grid g(64, 64);
  const Reconstruction rec(g);
  const FlowState rest = state_from(g, zero, zero, rec);
  CHECK(stable_dt(rest, 0.4) == Approx(golden::stable_dt_64).epsilon(1e-14));
  const Grid fine(128, 128);
  const Reconstruction rec_fine(fine);
  CHECK(stable_dt(state_from(fine, zero, zero, rec_fine), 0.4) == Approx(golden::stable_dt_64 / 4).epsilon(1e-14));

  // A fast flow is limited by advection.
  const FlowState fast = state_from(g, zero, [](double r, double z) { return 1e6 * (1 - r * r) * std::sin(kPi * z); }, rec);
  const double vz = linf_norm(fast.derived().velocity.z), vr = linf_norm(fast.derived().velocity.r);
  REQUIRE(vz > 100.0);
  const double advective = 0.4 * std::min(g.dz() / vz, g.dr() / vr);
  CHECK(advective < golden::stable_dt_64);
  CHECK(stable_dt(fast, 0.4) == Approx(advective).epsilon(1e-14));
  CHECK(std::isfinite(stable_dt(fast, 0.4)));
}

TEST_CASE("run emits records at t = 0, every cadence steps and at T") {
  SimConfig c;
  c.nr = c.nz = 16;
  c.dt = 1e-4;
  c.T = 1e-3;
  c.cadence = 3;
  std::vector<double> times;
  const RunResult r = run(c, [&](const FlowState& s, std::int64_t) { times.push_back(s.time()); });
  CHECK(r.steps == 10);
  CHECK(static_cast<std::int64_t>(times.size()) == emitted_record_count(r.steps, c.cadence));
  CHECK(times.size() == 5);
  CHECK(times.front() == 0.0);
  CHECK(times.back() == c.T);
  CHECK(r.final_state.time() == c.T);

  c.T = 0.0;
  times.clear();
  const RunResult z = run(c, [&](const FlowState& s, std::int64_t) { times.push_back(s.time()); });
  CHECK(z.steps == 0);
  CHECK(times.size() == 1);
  CHECK(emitted_record_count(0, 3) == 1);
  CHECK(emitted_record_count(9, 3) == 4);
}

TEST_CASE("rounding in the accumulated time does not add a sliver step") {
  SimConfig c;
  c.nr = c.nz = 8;
  c.diffusion_only = true;
  c.dt = 1e-4;
  c.T = 0.1;
  const RunResult r = run(c);
  CHECK(r.steps == 1000);
  CHECK(r.dt_min == Approx(1e-4).epsilon(1e-9));
  CHECK(r.final_state.time() == c.T);
}

TEST_CASE("swirl stays zero and runs are deterministic") {
  SimConfig c;
  c.nr = c.nz = 24;
  c.T = 2e-3;
  c.init.tag = FamilyTag::swirl_free;
  c.init.B = 1.0;
  const RunResult a = run(c);
  CHECK(linf_norm(a.final_state.gamma()) == 0.0);
  CHECK(weighted_lp_norm(a.final_state.omega(), 2.0) < weighted_lp_norm(make_initial(c.init, c.grid()).omega(), 2.0));

  c.init.tag = FamilyTag::combined;
  const RunResult b1 = run(c), b2 = run(c);
  CHECK((b1.final_state.gamma().interior() == b2.final_state.gamma().interior()).all());
  CHECK((b1.final_state.omega().interior() == b2.final_state.omega().interior()).all());
  CHECK(b1.steps == b2.steps);
}

TEST_CASE("diffusion-only Gamma obeys the maximum principle step by step") {
  SimConfig c;
  c.nr = c.nz = 32;
  c.T = 5e-3;
  c.init.tag = FamilyTag::poly_swirl;
  c.init.A = 1.0;
  c.diffusion_only = true;
  c.cadence = 1;
  std::vector<double> l2, sup;
  const RunResult r = run(c, [&](const FlowState& s, std::int64_t) {
    l2.push_back(weighted_lp_norm(s.gamma(), 2.0));
    sup.push_back(linf_norm(s.gamma()));
  });
  const double eps = 10 * (r.dt_max + 2 * c.grid().h2());
  for (std::size_t k = 0; k + 1 < l2.size(); ++k) {
    CHECK(l2[k + 1] <= l2[k] * (1 + eps));
    CHECK(sup[k + 1] <= sup[k] * (1 + eps));
  }
}

TEST_CASE("an unstable step size is reported as blow-up") {
  SimConfig c;
  c.nr = c.nz = 16;
  c.dt = 0.05;
  c.T = 50.0;
  c.init.A = c.init.B = 1.0;
  try {
    (void)run(c);
    FAIL("expected BlowupError");
  } catch (const BlowupError& e) {
    CHECK(e.time() > 0.0);
    CHECK((e.field() == "Gamma" || e.field() == "Omega"));
  }
}

TEST_CASE("configuration validation") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  c.cfl = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.cfl = 0.4;
  c.T = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
