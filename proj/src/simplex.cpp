#include "simplex.hpp"

#include <cmath>
#include <limits>

namespace permgen::detail {

LpFeasibility find_nonnegative_solution(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                        double tol) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const Eigen::Index cols = n + m + 1;  // structural, artificial, rhs
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, cols);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));

  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    t(i, cols - 1) = sign * b(i);
    basis[static_cast<std::size_t>(i)] = n + i;
  }
  // Objective row holds reduced costs of min sum(artificials).
  for (Eigen::Index i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (Eigen::Index i = 0; i < m; ++i) t(m, n + i) = 0.0;

  const double pivot_eps = 1e-12;
  const long max_iter = 50 * (m + n) + 1000;
  for (long iter = 0; iter < max_iter; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (t(m, j) < -pivot_eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double coef = t(i, enter);
      if (coef <= pivot_eps) continue;
      const double ratio = t(i, cols - 1) / coef;
      if (ratio < best - 1e-15 ||
          (std::abs(ratio - best) <= 1e-15 && leave >= 0 &&
           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen in phase one

    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  LpFeasibility out;
  out.solution.assign(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = basis[static_cast<std::size_t>(i)];
    if (j < n) out.solution[static_cast<std::size_t>(j)] = std::max(0.0, t(i, cols - 1));
  }
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(out.solution.data(), n);
  out.residual = (a * x - b).lpNorm<1>();
  out.feasible = out.residual <= tol;
  return out;
}

}  // namespace permgen::detail
