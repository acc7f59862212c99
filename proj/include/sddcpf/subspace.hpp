#pragma once

#include <Eigen/Dense>

#include "sddcpf/bmatrix.hpp"

namespace sddcpf {

class EmptyComplementError : public std::runtime_error {
 public:
  explicit EmptyComplementError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical-rank split of a symmetric PSD matrix. q spans the columns
/// kept as signal (singular value > tau * sigma_1), q_perp the rest.
struct SubspaceBasis {
  Eigen::MatrixXd q;                 // n x rank
  Eigen::MatrixXd q_perp;            // n x (n - rank)
  Eigen::VectorXd singular_values;   // length n, nonincreasing
  int rank = 0;
  double tau = 0.0;

  int dimension() const { return static_cast<int>(singular_values.size()); }
  int complement_dimension() const { return dimension() - rank; }
};

struct CoherenceReport {
  double mu_b = 0.0;
  Eigen::VectorXd per_row_norms;  // ||q_perp^T e_i||_2 per row
};

struct RecoveryCondition {
  int sparsity_k = 0;
  double constant_c = 1.0;
  double failure_prob = 0.05;
  bool satisfied = false;
};

/// Full spectral decomposition with relative rank threshold tau in (0,1).
/// Throws std::invalid_argument on bad tau or non-finite input. An empty
/// complement (rank == n) is returned as-is; downstream operations that
/// need q_perp raise EmptyComplementError.
SubspaceBasis decompose(const SusceptanceMatrix& b, double tau = 1e-6);

CoherenceReport coherence(const SubspaceBasis& basis);

/// Advisory check: (n - rank) >= c * k * mu_B * log(n / failure_prob).
RecoveryCondition check_recovery_bound(const SubspaceBasis& basis, int k, double c = 1.0,
                                       double failure_prob = 0.05);

}  // namespace sddcpf
