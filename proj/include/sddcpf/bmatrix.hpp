#pragma once

#include <Eigen/Dense>

#include "sddcpf/case_io.hpp"

namespace sddcpf {

/// Weighted-Laplacian susceptance matrix: symmetric, rows sum to zero,
/// diagonal nonnegative, off-diagonal nonpositive.
struct SusceptanceMatrix {
  Eigen::MatrixXd entries;
  int dimension = 0;
};

using StateVector = Eigen::VectorXd;      // bus voltage angles, radians
using InjectionVector = Eigen::VectorXd;  // bus active power, per-unit

/// B_ii = sum of 1/X over in-service lines at i, B_ij = -1/X_ij (parallel
/// lines sum), zero elsewhere.
SusceptanceMatrix build_b(const NetworkCase& net);

/// p = B * delta.
InjectionVector injections(const SusceptanceMatrix& b, const StateVector& state);

/// Per in-service branch flow (delta_i - delta_j) / X_ij, from->to sign.
Eigen::VectorXd line_flows(const NetworkCase& net, const StateVector& state);

}  // namespace sddcpf
