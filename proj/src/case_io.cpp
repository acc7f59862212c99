#include "sddcpf/case_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace sddcpf {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string strip_comment(const std::string& line) {
  auto pos = line.find('%');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<double> parse_row(const std::string& line, int line_no) {
  std::vector<double> fields;
  std::string cleaned = line;
  for (char& ch : cleaned) {
    if (ch == ';' || ch == ',' || ch == '\t') ch = ' ';
  }
  std::istringstream in(cleaned);
  std::string tok;
  while (in >> tok) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == nullptr || *end != '\0') {
      throw CaseFormatError("malformed table row at line " + std::to_string(line_no) +
                            ": bad number '" + tok + "'");
    }
    fields.push_back(v);
  }
  return fields;
}

// Rows of the matrix assigned to `mpc.<block>`, one row per line.
std::vector<std::vector<double>> matrix_block(const std::string& text, const std::string& block) {
  const std::string key = "mpc." + block;
  auto pos = text.find(key);
  while (pos != std::string::npos) {
    auto eq = text.find_first_not_of(" \t", pos + key.size());
    if (eq != std::string::npos && text[eq] == '=') break;
    pos = text.find(key, pos + 1);
  }
  if (pos == std::string::npos) throw CaseFormatError("missing mpc." + block + " block");
  auto open = text.find('[', pos);
  auto close = text.find(']', open);
  if (open == std::string::npos || close == std::string::npos) {
    throw CaseFormatError("unterminated mpc." + block + " block");
  }
  int line_no = 1 + static_cast<int>(std::count(text.begin(), text.begin() + open, '\n'));
  std::vector<std::vector<double>> rows;
  std::istringstream body(text.substr(open + 1, close - open - 1));
  std::string line;
  while (std::getline(body, line)) {
    ++line_no;
    auto fields = parse_row(strip_comment(line), line_no);
    if (!fields.empty()) rows.push_back(std::move(fields));
  }
  return rows;
}

BusKind kind_from_code(int code, int line_hint) {
  switch (code) {
    case 1:
    case 4:  // isolated buses are treated as plain loads
      return BusKind::load;
    case 2:
      return BusKind::generator;
    case 3:
      return BusKind::slack;
    default:
      throw CaseFormatError("unsupported bus type code " + std::to_string(code) + " for bus " +
                            std::to_string(line_hint));
  }
}

NetworkCase assemble(std::vector<Bus> buses,
                     const std::vector<std::array<double, 5>>& raw_branches,
                     std::string name, bool has_angles) {
  NetworkCase net;
  net.name = std::move(name);
  net.has_base_angles = has_angles;

  std::unordered_map<int, int> dense;
  for (auto& bus : buses) {
    bus.dense_index = static_cast<int>(dense.size());
    if (!dense.emplace(bus.external_id, bus.dense_index).second) {
      throw CaseFormatError("duplicate bus id " + std::to_string(bus.external_id));
    }
  }
  net.buses = std::move(buses);

  for (const auto& row : raw_branches) {
    const int from_ext = static_cast<int>(row[0]);
    const int to_ext = static_cast<int>(row[1]);
    const bool in_service = row[4] != 0.0;
    if (!in_service) continue;  // dropped; their buses stay in the model
    auto fit = dense.find(from_ext);
    auto tit = dense.find(to_ext);
    if (fit == dense.end() || tit == dense.end()) {
      throw CaseFormatError("unknown bus " +
                            std::to_string(fit == dense.end() ? from_ext : to_ext) +
                            " referenced by branch");
    }
    Branch br;
    br.from_bus = fit->second;
    br.to_bus = tit->second;
    br.resistance_r = row[2];
    br.reactance_x = row[3];
    br.in_service = true;
    if (br.from_bus == br.to_bus) {
      throw CaseFormatError("branch connects bus " + std::to_string(from_ext) + " to itself");
    }
    if (!(br.reactance_x > 0.0)) {
      throw CaseFormatError("non-positive reactance on in-service branch " +
                            std::to_string(from_ext) + "-" + std::to_string(to_ext));
    }
    net.branches.push_back(br);
  }

  // slack validation: at least one overall, at most one per component
  const auto comp = connected_components(net);
  std::vector<int> slack_in_comp(net.buses.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1, 0);
  int total_slack = 0;
  for (const auto& bus : net.buses) {
    if (bus.bus_kind == BusKind::slack) {
      ++total_slack;
      if (++slack_in_comp[comp[bus.dense_index]] > 1) {
        throw CaseFormatError("multiple slack buses in one connected component");
      }
    }
  }
  if (total_slack == 0) throw CaseFormatError("case has no slack bus");
  return net;
}

}  // namespace

NetworkCase parse_case(const std::string& source_text, const std::string& name) {
  const auto bus_rows = matrix_block(source_text, "bus");
  const auto branch_rows = matrix_block(source_text, "branch");

  std::vector<Bus> buses;
  for (const auto& row : bus_rows) {
    if (row.size() < 9) {
      throw CaseFormatError("bus row needs at least 9 columns, got " +
                            std::to_string(row.size()));
    }
    Bus bus;
    bus.external_id = static_cast<int>(row[0]);
    bus.bus_kind = kind_from_code(static_cast<int>(row[1]), bus.external_id);
    bus.base_angle = row[8] * kDegToRad;  // VA column, degrees
    buses.push_back(bus);
  }

  std::vector<std::array<double, 5>> raw;
  for (const auto& row : branch_rows) {
    if (row.size() < 11) {
      throw CaseFormatError("branch row needs at least 11 columns, got " +
                            std::to_string(row.size()));
    }
    raw.push_back({row[0], row[1], row[2], row[3], row[10]});
  }
  return assemble(std::move(buses), raw, name, /*has_angles=*/true);
}

NetworkCase parse_case_csv(const std::string& bus_text, const std::string& branch_text,
                           const std::string& name) {
  auto rows_of = [](const std::string& text, std::size_t min_fields, std::size_t max_fields,
                    const char* what) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      if (line_no == 1 && line.find_first_of("abcdefghijklmnopqrstuvwxyz") != std::string::npos) {
        continue;  // header line
      }
      auto fields = parse_row(line, line_no);
      if (fields.size() < min_fields || fields.size() > max_fields) {
        throw CaseFormatError(std::string("malformed ") + what + " row at line " +
                              std::to_string(line_no));
      }
      rows.push_back(std::move(fields));
    }
    return rows;
  };

  bool has_angles = true;
  std::vector<Bus> buses;
  for (const auto& row : rows_of(bus_text, 2, 3, "bus.csv")) {
    Bus bus;
    bus.external_id = static_cast<int>(row[0]);
    bus.bus_kind = kind_from_code(static_cast<int>(row[1]), bus.external_id);
    if (row.size() == 3) {
      bus.base_angle = row[2] * kDegToRad;
    } else {
      has_angles = false;
    }
    buses.push_back(bus);
  }

  std::vector<std::array<double, 5>> raw;
  for (const auto& row : rows_of(branch_text, 5, 5, "branch.csv")) {
    raw.push_back({row[0], row[1], row[2], row[3], row[4]});
  }
  return assemble(std::move(buses), raw, name, has_angles);
}

NetworkCase load_case(const std::string& path) {
  auto read = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw CaseFormatError("cannot open case file: " + p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  };

  auto base = path.find_last_of("/\\");
  std::string stem = base == std::string::npos ? path : path.substr(base + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);

  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    auto pos = path.rfind("bus");
    if (pos == std::string::npos) {
      throw CaseFormatError("csv case path must name the bus table (…bus.csv): " + path);
    }
    std::string branch_path = path.substr(0, pos) + "branch" + path.substr(pos + 3);
    return parse_case_csv(read(path), read(branch_path), stem);
  }
  return parse_case(read(path), stem);
}

std::string write_case(const NetworkCase& net) {
  std::ostringstream out;
  out << "function mpc = " << (net.name.empty() ? "case" : net.name) << "\n";
  out << "mpc.version = '2';\n";
  out << "mpc.baseMVA = 100;\n";
  out << "mpc.bus = [\n";
  char buf[64];
  for (const auto& bus : net.buses) {
    int code = bus.bus_kind == BusKind::slack ? 3 : bus.bus_kind == BusKind::generator ? 2 : 1;
    std::snprintf(buf, sizeof buf, "%.17g", bus.base_angle / kDegToRad);
    out << '\t' << bus.external_id << '\t' << code << "\t0\t0\t0\t0\t1\t1\t" << buf
        << "\t0\t1\t1.1\t0.9;\n";
  }
  out << "];\n";
  out << "mpc.branch = [\n";
  for (const auto& br : net.branches) {
    std::snprintf(buf, sizeof buf, "%.17g", br.resistance_r);
    out << '\t' << net.buses[br.from_bus].external_id << '\t' << net.buses[br.to_bus].external_id
        << '\t' << buf;
    std::snprintf(buf, sizeof buf, "%.17g", br.reactance_x);
    out << '\t' << buf << "\t0\t0\t0\t0\t0\t0\t" << (br.in_service ? 1 : 0) << "\t-360\t360;\n";
  }
  out << "];\n";
  return out.str();
}

std::vector<int> connected_components(const NetworkCase& net) {
  const int n = net.bus_count();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& br : net.branches) {
    if (!br.in_service) continue;
    int a = find(br.from_bus), b = find(br.to_bus);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    if (label[root] < 0) label[root] = next++;
    out[i] = label[root];
  }
  return out;
}

int component_count(const NetworkCase& net) {
  const auto comp = connected_components(net);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

}  // namespace sddcpf
