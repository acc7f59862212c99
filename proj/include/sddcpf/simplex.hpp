#pragma once

#include <Eigen/Dense>

namespace sddcpf {

enum class LpStatus { optimal, max_iterations, infeasible, unbounded };

struct LpResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  LpStatus status = LpStatus::optimal;
  int iterations = 0;
};

/// Dense two-phase revised simplex for
///     min c^T x   s.t.  A x = b,  x >= 0.
/// Deterministic pivot rules: Dantzig entering (lowest index on ties)
/// with a Bland fallback after a run of degenerate steps; leaving by
/// ratio test with lowest-basic-index tie break.
LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                  const Eigen::VectorXd& b, int max_iterations = 20000);

}  // namespace sddcpf
