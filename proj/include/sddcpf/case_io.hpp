#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sddcpf {

/// Raised for malformed case files and validation failures.
class CaseFormatError : public std::runtime_error {
 public:
  explicit CaseFormatError(const std::string& what) : std::runtime_error(what) {}
};

enum class BusKind { slack, generator, load };

struct Bus {
  int external_id = 0;   // label from the file, possibly non-contiguous
  int dense_index = 0;   // 0-based contiguous index, file order
  BusKind bus_kind = BusKind::load;
  double base_angle = 0.0;  // radians
};

struct Branch {
  int from_bus = 0;  // dense index
  int to_bus = 0;    // dense index
  double reactance_x = 0.0;   // per-unit, > 0 while in service
  double resistance_r = 0.0;  // parsed, unused by the DC model
  bool in_service = true;
};

struct NetworkCase {
  std::string name;
  std::vector<Bus> buses;
  std::vector<Branch> branches;  // in-service only after parsing
  bool has_base_angles = true;

  int bus_count() const { return static_cast<int>(buses.size()); }
};

/// Parse MATPOWER-style text (mpc.bus / mpc.branch matrix blocks).
NetworkCase parse_case(const std::string& source_text, const std::string& name = "case");

/// Parse the simplified CSV pair (bus table + branch table).
NetworkCase parse_case_csv(const std::string& bus_text, const std::string& branch_text,
                           const std::string& name = "case");

/// Load from disk. Paths ending in .csv name the bus table; the branch
/// table is the sibling file with the last "bus" replaced by "branch".
/// Anything else is read as MATPOWER text.
NetworkCase load_case(const std::string& path);

/// Serialize back to MATPOWER text; re-parsing yields an identical model.
std::string write_case(const NetworkCase& net);

/// Component id per dense bus index, induced by in-service branches.
/// Ids are 0-based, assigned in order of first appearance.
std::vector<int> connected_components(const NetworkCase& net);

int component_count(const NetworkCase& net);

}  // namespace sddcpf
