#pragma once

#include <Eigen/Dense>
#include <vector>

namespace permgen::detail {

struct LpFeasibility {
  bool feasible = false;
  /// L1 norm of A x - b at the phase-one optimum.
  double residual = 0.0;
  std::vector<double> solution;
};

/// Phase-one simplex for {x >= 0 : A x = b}. Dense tableau with Bland's rule;
/// intended for the small systems produced by hull-membership queries.
LpFeasibility find_nonnegative_solution(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                        double tol);

}  // namespace permgen::detail
