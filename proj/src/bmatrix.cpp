#include "sddcpf/bmatrix.hpp"

#include <stdexcept>

namespace sddcpf {

SusceptanceMatrix build_b(const NetworkCase& net) {
  const int n = net.bus_count();
  SusceptanceMatrix b;
  b.dimension = n;
  b.entries = Eigen::MatrixXd::Zero(n, n);
  for (const auto& br : net.branches) {
    if (!br.in_service) continue;
    const double w = 1.0 / br.reactance_x;
    b.entries(br.from_bus, br.from_bus) += w;
    b.entries(br.to_bus, br.to_bus) += w;
    b.entries(br.from_bus, br.to_bus) -= w;
    b.entries(br.to_bus, br.from_bus) -= w;
  }
  return b;
}

InjectionVector injections(const SusceptanceMatrix& b, const StateVector& state) {
  if (state.size() != b.dimension) {
    throw std::invalid_argument("state dimension " + std::to_string(state.size()) +
                                " does not match B dimension " + std::to_string(b.dimension));
  }
  return b.entries * state;
}

Eigen::VectorXd line_flows(const NetworkCase& net, const StateVector& state) {
  if (state.size() != net.bus_count()) {
    throw std::invalid_argument("state dimension does not match bus count");
  }
  Eigen::VectorXd flows(static_cast<Eigen::Index>(net.branches.size()));
  Eigen::Index k = 0;
  for (const auto& br : net.branches) {
    flows[k++] = br.in_service ? (state[br.from_bus] - state[br.to_bus]) / br.reactance_x : 0.0;
  }
  return flows;
}

}  // namespace sddcpf
