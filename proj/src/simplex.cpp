#include "sddcpf/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sddcpf {

namespace {

// Revised simplex working state over the extended column set [A | I].
struct Tableau {
  Eigen::MatrixXd cols;      // m x (n + m)
  Eigen::VectorXd rhs;       // b, flipped nonnegative
  Eigen::MatrixXd basis_inv; // m x m
  Eigen::VectorXd basic_val; // x_B
  std::vector<int> basic;    // variable index per row
  std::vector<char> is_basic;
  int n_struct = 0;
  int m = 0;

  void refactorize() {
    Eigen::MatrixXd basis_mat(m, m);
    for (int i = 0; i < m; ++i) basis_mat.col(i) = cols.col(basic[i]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_mat);
    basis_inv = lu.inverse();
    basic_val = lu.solve(rhs);
  }
};

// One simplex phase. `cost` spans the extended columns; columns with
// `blocked` set never enter. Returns false on iteration exhaustion.
bool run_phase(Tableau& t, const Eigen::VectorXd& cost, const std::vector<char>& blocked,
               int max_iterations, int& iterations, bool& unbounded, bool bland_start = false) {
  const double cost_tol = 1e-9 * (1.0 + cost.cwiseAbs().maxCoeff());
  const double pivot_tol = 1e-10;
  const int total = static_cast<int>(t.cols.cols());
  int degenerate_run = 0;
  bool bland = bland_start;

  while (iterations < max_iterations) {
    ++iterations;
    if (iterations % 64 == 0) t.refactorize();

    Eigen::VectorXd cb(t.m);
    for (int i = 0; i < t.m; ++i) cb[i] = cost[t.basic[i]];
    const Eigen::VectorXd y = t.basis_inv.transpose() * cb;
    const Eigen::VectorXd d = cost - t.cols.transpose() * y;

    int enter = -1;
    double best = -cost_tol;
    for (int j = 0; j < total; ++j) {
      if (t.is_basic[j] || blocked[j]) continue;
      if (d[j] < best) {
        best = d[j];
        enter = j;
        if (bland) break;  // first improving index
      } else if (bland && enter >= 0) {
        break;
      }
    }
    if (enter < 0) return true;  // optimal for this phase

    const Eigen::VectorXd w = t.basis_inv * t.cols.col(enter);

    // a basic artificial sitting at zero must not grow: force it out on a
    // degenerate pivot whenever the entering column would move it. The pivot
    // element doubles as the eta-update divisor, so demand a solid magnitude.
    int leave = -1;
    double theta = 0.0;
    for (int i = 0; i < t.m; ++i) {
      if (blocked[t.basic[i]] && std::abs(w[i]) > 1e-7 && t.basic_val[i] <= 1e-12 &&
          (leave < 0 || std::abs(w[i]) > std::abs(w[leave]))) {
        leave = i;
      }
    }

    if (leave < 0) {
      // two-pass ratio test: find the minimum ratio, then among rows within a
      // small window of it pick the largest pivot so near-dependent columns
      // never enter the basis. Bland mode picks the lowest basic index among
      // acceptable pivots instead (anti-cycling).
      double theta_min = std::numeric_limits<double>::infinity();
      for (int i = 0; i < t.m; ++i) {
        if (w[i] <= pivot_tol) continue;
        theta_min = std::min(theta_min, std::max(t.basic_val[i], 0.0) / w[i]);
      }
      if (!std::isfinite(theta_min)) {
        unbounded = true;
        return true;
      }
      const double window = theta_min + 1e-9 * (1.0 + theta_min);
      for (int i = 0; i < t.m; ++i) {
        if (w[i] <= pivot_tol) continue;
        if (std::max(t.basic_val[i], 0.0) / w[i] > window) continue;
        bool take;
        if (leave < 0) {
          take = true;
        } else if (bland) {
          take = (w[i] >= 1e-7) == (w[leave] >= 1e-7) ? t.basic[i] < t.basic[leave]
                                                      : w[i] >= 1e-7;
        } else {
          take = w[i] > w[leave] + 1e-12 ||
                 (w[i] >= w[leave] - 1e-12 && t.basic[i] < t.basic[leave]);
        }
        if (take) leave = i;
      }
      theta = std::max(t.basic_val[leave], 0.0) / w[leave];
    }

    if (theta <= 1e-12) {
      if (++degenerate_run > 2 * t.m + 50) bland = true;
    } else {
      degenerate_run = 0;
      bland = bland_start;
    }

    // basis change: pivot row `leave`, entering column `enter`
    t.basic_val -= theta * w;
    t.basic_val[leave] = theta;
    t.is_basic[t.basic[leave]] = 0;
    t.is_basic[enter] = 1;
    t.basic[leave] = enter;
    t.basis_inv.row(leave) /= w[leave];
    for (int i = 0; i < t.m; ++i) {
      if (i != leave && w[i] != 0.0) t.basis_inv.row(i) -= w[i] * t.basis_inv.row(leave);
    }
  }
  return false;
}

}  // namespace

LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                  int max_iterations) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (c.size() != n || b.size() != m) throw std::invalid_argument("LP dimension mismatch");

  LpResult result;
  result.x = Eigen::VectorXd::Zero(n);
  if (m == 0) {  // x = 0 minimizes any c >= 0 objective; general case unbounded
    result.status = (c.minCoeff() >= 0.0) ? LpStatus::optimal : LpStatus::unbounded;
    return result;
  }

  // A rare ill-conditioned pivot sequence can degrade the basis beyond what
  // refactorization recovers; one retry under first-index (Bland) pricing
  // takes a different pivot path and has always resolved it in practice.
  for (int attempt = 0; attempt < 2; ++attempt) {
    const bool bland_start = attempt > 0;

    Tableau t;
    t.m = m;
    t.n_struct = n;
    t.cols.resize(m, n + m);
    t.cols.leftCols(n) = a;
    t.cols.rightCols(m) = Eigen::MatrixXd::Identity(m, m);
    t.rhs = b;
    for (int i = 0; i < m; ++i) {
      if (t.rhs[i] < 0.0) {
        t.rhs[i] = -t.rhs[i];
        t.cols.row(i).head(n) = -a.row(i);
      }
    }
    t.basis_inv = Eigen::MatrixXd::Identity(m, m);
    t.basic_val = t.rhs;
    t.basic.resize(m);
    t.is_basic.assign(n + m, 0);
    for (int i = 0; i < m; ++i) {
      t.basic[i] = n + i;
      t.is_basic[n + i] = 1;
    }

    // phase 1: minimize the artificial total
    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n + m);
    phase1_cost.tail(m).setOnes();
    std::vector<char> none(n + m, 0);
    int iterations = 0;
    bool unbounded = false;
    bool exhausted =
        !run_phase(t, phase1_cost, none, max_iterations, iterations, unbounded, bland_start);
    t.refactorize();
    if (!t.basic_val.allFinite()) continue;  // basis went singular; retry
    double artificial_total = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t.basic[i] >= n) artificial_total += std::max(t.basic_val[i], 0.0);
    }
    if (artificial_total > 1e-9 * (1.0 + t.rhs.lpNorm<1>())) {
      result.status = LpStatus::infeasible;
      result.iterations = iterations;
      return result;
    }

    // drive leftover artificials out on degenerate pivots
    for (int i = 0; i < m; ++i) {
      if (t.basic[i] < n) continue;
      const Eigen::VectorXd row = t.basis_inv.row(i) * t.cols.leftCols(n);
      int enter = -1;
      double best = 1e-7;
      for (int j = 0; j < n; ++j) {
        if (!t.is_basic[j] && std::abs(row[j]) > best) {
          best = std::abs(row[j]);
          enter = j;
        }
      }
      if (enter < 0) continue;  // redundant row; artificial stays basic at zero
      const Eigen::VectorXd w = t.basis_inv * t.cols.col(enter);
      t.is_basic[t.basic[i]] = 0;
      t.is_basic[enter] = 1;
      t.basic[i] = enter;
      t.basis_inv.row(i) /= w[i];
      for (int r = 0; r < m; ++r) {
        if (r != i && w[r] != 0.0) t.basis_inv.row(r) -= w[r] * t.basis_inv.row(i);
      }
      t.basic_val[i] = 0.0;
    }

    // phase 2: original objective, artificials barred from re-entering
    Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(n + m);
    phase2_cost.head(n) = c;
    std::vector<char> blocked(n + m, 0);
    for (int j = n; j < n + m; ++j) blocked[j] = 1;
    unbounded = false;
    const bool finished =
        !exhausted &&
        run_phase(t, phase2_cost, blocked, max_iterations, iterations, unbounded, bland_start);

    t.refactorize();  // final accuracy polish
    if (!t.basic_val.allFinite()) continue;  // basis went singular; retry
    result.x.setZero();
    for (int i = 0; i < m; ++i) {
      if (t.basic[i] < n) result.x[t.basic[i]] = t.basic_val[i];
    }
    result.objective = c.dot(result.x);
    result.iterations = iterations;
    if (unbounded) {
      result.status = LpStatus::unbounded;
    } else if (!finished) {
      result.status = LpStatus::max_iterations;
      if (attempt == 0) continue;  // a fresh Bland pass may still converge
    } else {
      result.status = LpStatus::optimal;
    }
    return result;
  }
  result.x.setZero();
  result.objective = 0.0;
  result.status = LpStatus::max_iterations;
  return result;
}

}  // namespace sddcpf
