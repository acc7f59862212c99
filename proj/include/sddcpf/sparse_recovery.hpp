#pragma once

#include <vector>

#include "sddcpf/simplex.hpp"
#include "sddcpf/subspace.hpp"

namespace sddcpf {

enum class SolverStatus { optimal, max_iterations, infeasible };

struct NoiseEstimate {
  Eigen::VectorXd epsilon_hat;
  double objective = 0.0;  // ||epsilon_hat||_1
  SolverStatus solver_status = SolverStatus::optimal;
};

enum class EstimatorMethod { lse, l1 };

struct CoefficientEstimate {
  Eigen::VectorXd a_hat;
  EstimatorMethod method = EstimatorMethod::lse;
};

struct FlaggedSupport {
  std::vector<int> indices;  // sorted dense bus indices with |eps_hat| >= theta
  double threshold_theta = 0.0;
};

inline double feasibility_tolerance(const Eigen::VectorXd& rhs) {
  return 1e-8 * (1.0 + rhs.lpNorm<Eigen::Infinity>());
}

/// min ||e||_1  s.t.  q_perp^T e = q_perp^T p, via the u-v LP split.
NoiseEstimate l1_detect(const SubspaceBasis& basis, const InjectionVector& p);

/// a_hat = q^T p (orthonormal least squares).
CoefficientEstimate lse(const SubspaceBasis& basis, const InjectionVector& p);

/// l1 regression: epsilon_hat from l1_detect, a_hat = q^T (p - epsilon_hat).
std::pair<CoefficientEstimate, NoiseEstimate> l1_regress(const SubspaceBasis& basis,
                                                         const InjectionVector& p);

FlaggedSupport flag_support(const NoiseEstimate& est, double theta);

/// Minimum-norm solve of B delta ~= p_clean through the stored spectrum,
/// re-referenced so each component's slack bus (or its lowest-index bus
/// when no slack is present) has angle zero.
StateVector recover_state(const NetworkCase& net, const SubspaceBasis& basis,
                          const InjectionVector& p_clean);

}  // namespace sddcpf
