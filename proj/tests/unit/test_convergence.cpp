#include <doctest.h>

#include "axisym/convergence.hpp"

using namespace axisym;

TEST_CASE("every discrete operator converges at second order") {
  const auto studies = run_convergence_studies({16, 32, 64});
  CHECK(studies.size() == 12);
  for (const ConvergenceStudy& s : studies) {
    INFO(s.name);
    CHECK(s.orders.size() == 2);
    CHECK(s.min_order() >= 1.8);
    CHECK(s.max_order() <= 2.3);
  }
}
