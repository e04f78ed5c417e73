#pragma once

// Manufactured-solution order studies for the stencil operators and both
// velocity-reconstruction routes on the unit cylinder. Operator studies fill
// ghosts from the exact function, so only the interior stencil is measured.

#include <string>
#include <vector>

#include "axisym/grid.hpp"

namespace axisym {

struct ConvergenceStudy {
  std::string name;
  std::string norm;  // "max" or "weighted_l2"
  std::vector<Index> sizes;
  std::vector<double> errors;
  std::vector<double> orders;  // log2(e_k / e_{k+1}); one fewer than sizes

  double min_order() const;
  double max_order() const;
};

/// Every study on nr = nz = n for each n in `sizes` (successive doublings).
std::vector<ConvergenceStudy> run_convergence_studies(const std::vector<Index>& sizes = {32, 64, 128});

}  // namespace axisym
