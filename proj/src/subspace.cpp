#include "sddcpf/subspace.hpp"

#include <cmath>
#include <stdexcept>

namespace sddcpf {

SubspaceBasis decompose(const SusceptanceMatrix& b, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("rank threshold tau must lie in (0, 1)");
  }
  if (!b.entries.allFinite()) {
    throw std::invalid_argument("susceptance matrix has non-finite entries");
  }
  const int n = b.dimension;

  // B is symmetric PSD, so its eigendecomposition is its SVD.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b.entries);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }

  SubspaceBasis basis;
  basis.tau = tau;
  basis.singular_values.resize(n);
  Eigen::MatrixXd u(n, n);
  for (int i = 0; i < n; ++i) {  // ascending -> descending, magnitudes
    basis.singular_values[i] = std::abs(eig.eigenvalues()[n - 1 - i]);
    u.col(i) = eig.eigenvectors().col(n - 1 - i);
  }
  const double sigma1 = n > 0 ? basis.singular_values[0] : 0.0;
  int rank = 0;
  while (rank < n && basis.singular_values[rank] > tau * sigma1) ++rank;
  basis.rank = rank;
  basis.q = u.leftCols(rank);
  basis.q_perp = u.rightCols(n - rank);
  return basis;
}

CoherenceReport coherence(const SubspaceBasis& basis) {
  const int n = basis.dimension();
  const int m = basis.complement_dimension();
  if (m < 1) throw EmptyComplementError("coherence undefined: complement basis is empty");
  CoherenceReport report;
  report.per_row_norms = basis.q_perp.rowwise().norm();
  report.mu_b = report.per_row_norms.maxCoeff() * static_cast<double>(n) / m;
  return report;
}

RecoveryCondition check_recovery_bound(const SubspaceBasis& basis, int k, double c,
                                       double failure_prob) {
  if (k < 0) throw std::invalid_argument("sparsity k must be nonnegative");
  if (!(c > 0.0)) throw std::invalid_argument("constant c must be positive");
  if (!(failure_prob > 0.0 && failure_prob < 1.0)) {
    throw std::invalid_argument("failure probability must lie in (0, 1)");
  }
  const auto report = coherence(basis);
  const double rhs =
      c * k * report.mu_b * std::log(static_cast<double>(basis.dimension()) / failure_prob);
  RecoveryCondition cond;
  cond.sparsity_k = k;
  cond.constant_c = c;
  cond.failure_prob = failure_prob;
  cond.satisfied = static_cast<double>(basis.complement_dimension()) >= rhs;
  return cond;
}

}  // namespace sddcpf
