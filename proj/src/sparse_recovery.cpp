#include "sddcpf/sparse_recovery.hpp"

#include <algorithm>
#include <cmath>

#include "sddcpf/case_io.hpp"

namespace sddcpf {

NoiseEstimate l1_detect(const SubspaceBasis& basis, const InjectionVector& p) {
  const int n = basis.dimension();
  const int m = basis.complement_dimension();
  if (m < 1) throw EmptyComplementError("l1_detect needs a nonempty complement basis");
  if (p.size() != n) throw std::invalid_argument("measurement dimension mismatch");
  if (!p.allFinite()) throw std::invalid_argument("measurement vector has non-finite entries");

  const Eigen::VectorXd y = basis.q_perp.transpose() * p;

  // the LP is solved on a unit-scale rhs so the pivot path, and with it the
  // recovered support, is invariant under measurement rescaling
  const double scale = y.lpNorm<Eigen::Infinity>();
  const Eigen::VectorXd y_unit = scale > 0.0 ? (y / scale).eval() : y;

  // split epsilon = u - v, u,v >= 0, minimize the coordinate total
  Eigen::MatrixXd lp_a(m, 2 * n);
  lp_a.leftCols(n) = basis.q_perp.transpose();
  lp_a.rightCols(n) = -basis.q_perp.transpose();
  const auto lp = solve_lp(Eigen::VectorXd::Ones(2 * n), lp_a, y_unit);

  NoiseEstimate est;
  est.epsilon_hat = (scale > 0.0 ? scale : 1.0) * (lp.x.head(n) - lp.x.tail(n));
  est.objective = est.epsilon_hat.lpNorm<1>();
  switch (lp.status) {
    case LpStatus::optimal:
      est.solver_status = SolverStatus::optimal;
      break;
    case LpStatus::max_iterations:
      est.solver_status = SolverStatus::max_iterations;
      break;
    default:
      est.solver_status = SolverStatus::infeasible;
      break;
  }
  return est;
}

CoefficientEstimate lse(const SubspaceBasis& basis, const InjectionVector& p) {
  if (p.size() != basis.dimension()) throw std::invalid_argument("measurement dimension mismatch");
  CoefficientEstimate est;
  est.method = EstimatorMethod::lse;
  est.a_hat = basis.q.transpose() * p;
  return est;
}

std::pair<CoefficientEstimate, NoiseEstimate> l1_regress(const SubspaceBasis& basis,
                                                         const InjectionVector& p) {
  NoiseEstimate noise = l1_detect(basis, p);
  CoefficientEstimate est;
  est.method = EstimatorMethod::l1;
  est.a_hat = basis.q.transpose() * (p - noise.epsilon_hat);
  return {std::move(est), std::move(noise)};
}

FlaggedSupport flag_support(const NoiseEstimate& est, double theta) {
  if (theta < 0.0) throw std::invalid_argument("threshold theta must be nonnegative");
  FlaggedSupport support;
  support.threshold_theta = theta;
  for (int i = 0; i < est.epsilon_hat.size(); ++i) {
    if (std::abs(est.epsilon_hat[i]) >= theta) support.indices.push_back(i);
  }
  return support;
}

StateVector recover_state(const NetworkCase& net, const SubspaceBasis& basis,
                          const InjectionVector& p_clean) {
  const int n = basis.dimension();
  if (p_clean.size() != n || net.bus_count() != n) {
    throw std::invalid_argument("dimension mismatch in recover_state");
  }
  // minimum-norm pseudoinverse through the kept spectrum (B symmetric PSD)
  StateVector delta = StateVector::Zero(n);
  const Eigen::VectorXd coeff = basis.q.transpose() * p_clean;
  for (int i = 0; i < basis.rank; ++i) {
    delta += basis.q.col(i) * (coeff[i] / basis.singular_values[i]);
  }

  const auto comp = connected_components(net);
  const int n_comp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<int> reference(n_comp, -1);
  for (int i = 0; i < n; ++i) {
    if (reference[comp[i]] < 0) reference[comp[i]] = i;  // lowest index fallback
  }
  for (const auto& bus : net.buses) {
    if (bus.bus_kind == BusKind::slack) reference[comp[bus.dense_index]] = bus.dense_index;
  }
  std::vector<double> shift(n_comp, 0.0);
  for (int c = 0; c < n_comp; ++c) shift[c] = delta[reference[c]];
  for (int i = 0; i < n; ++i) delta[i] -= shift[comp[i]];
  return delta;
}

}  // namespace sddcpf
