#include <doctest.h>

#include <cmath>
#include <numbers>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "sddcpf/case_io.hpp"

using namespace sddcpf;

namespace {

const char* kTinyCase = R"(function mpc = tiny
mpc.version = '2';
mpc.baseMVA = 100;
% two buses, one line
mpc.bus = [
	1	3	0	0	0	0	1	1	1.5	0	1	1.1	0.9;
	2	1	0	0	0	0	1	1	-2.25	0	1	1.1	0.9;
];
mpc.branch = [
	1	2	0.01	0.5	0	0	0	0	0	0	1	-360	360;
];
)";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int count_rows(const std::string& text, const std::string& block) {
  auto open = text.find('[', text.find("mpc." + block));
  auto close = text.find(']', open);
  std::istringstream body(text.substr(open + 1, close - open - 1));
  std::string line;
  int rows = 0;
  while (std::getline(body, line)) {
    auto cut = line.find('%');
    if (cut != std::string::npos) line = line.substr(0, cut);
    if (line.find_first_not_of(" \t\r") != std::string::npos) ++rows;
  }
  return rows;
}

}  // namespace

TEST_CASE("minimal matpower text parses") {
  const auto net = parse_case(kTinyCase, "tiny");
  REQUIRE(net.bus_count() == 2);
  REQUIRE(net.branches.size() == 1);
  CHECK(net.name == "tiny");
  CHECK(net.has_base_angles);
  CHECK(net.buses[0].external_id == 1);
  CHECK(net.buses[0].bus_kind == BusKind::slack);
  CHECK(net.buses[1].bus_kind == BusKind::load);
  CHECK(net.buses[0].base_angle == doctest::Approx(1.5 * std::numbers::pi / 180.0).epsilon(1e-14));
  CHECK(net.buses[1].base_angle == doctest::Approx(-2.25 * std::numbers::pi / 180.0).epsilon(1e-14));
  CHECK(net.branches[0].from_bus == 0);
  CHECK(net.branches[0].to_bus == 1);
  CHECK(net.branches[0].reactance_x == 0.5);
  CHECK(net.branches[0].resistance_r == 0.01);
}

TEST_CASE("out-of-service branches are dropped, buses kept") {
  std::string text = kTinyCase;
  auto pos = text.find("360;\n");
  text.insert(pos + 5, "\t1\t2\t0.0\t0.25\t0\t0\t0\t0\t0\t0\t0\t-360\t360;\n");
  const auto net = parse_case(text);
  CHECK(net.bus_count() == 2);
  CHECK(net.branches.size() == 1);
  CHECK(net.branches[0].reactance_x == 0.5);
}

TEST_CASE("parse errors carry a reason") {
  auto swap = [](std::string text, const std::string& from, const std::string& to) {
    text.replace(text.find(from), from.size(), to);
    return text;
  };
  CHECK_THROWS_WITH_AS(parse_case(swap(kTinyCase, "\t1\t2\t0.01", "\t1\t9\t0.01")),
                       doctest::Contains("unknown bus"), CaseFormatError);
  CHECK_THROWS_WITH_AS(parse_case(swap(kTinyCase, "\t2\t1\t0", "\t1\t1\t0")),
                       doctest::Contains("duplicate bus id"), CaseFormatError);
  CHECK_THROWS_WITH_AS(parse_case(swap(kTinyCase, "\t1\t2\t0.01", "\t2\t2\t0.01")),
                       doctest::Contains("itself"), CaseFormatError);
  CHECK_THROWS_WITH_AS(parse_case(swap(kTinyCase, "0.5", "-0.5")),
                       doctest::Contains("non-positive reactance"), CaseFormatError);
  CHECK_THROWS_WITH_AS(parse_case(swap(kTinyCase, "\t1\t3\t0", "\t1\t1\t0")),
                       doctest::Contains("no slack bus"), CaseFormatError);
  CHECK_THROWS_WITH_AS(parse_case(swap(kTinyCase, "\t2\t1\t0", "\t2\t3\t0")),
                       doctest::Contains("multiple slack"), CaseFormatError);
  CHECK_THROWS_WITH_AS(parse_case(swap(kTinyCase, "0.5", "abc")),
                       doctest::Contains("bad number"), CaseFormatError);
  CHECK_THROWS_AS(parse_case("function mpc = x\n"), CaseFormatError);
}

TEST_CASE("write/parse round trip preserves the model") {
  const auto net = load_case(std::string(SDDCPF_DATA_DIR) + "/case118.m");
  const auto again = parse_case(write_case(net), net.name);
  REQUIRE(again.bus_count() == net.bus_count());
  REQUIRE(again.branches.size() == net.branches.size());
  for (int i = 0; i < net.bus_count(); ++i) {
    CHECK(again.buses[i].external_id == net.buses[i].external_id);
    CHECK(again.buses[i].bus_kind == net.buses[i].bus_kind);
    CHECK(std::abs(again.buses[i].base_angle - net.buses[i].base_angle) < 1e-15);
  }
  for (std::size_t i = 0; i < net.branches.size(); ++i) {
    CHECK(again.branches[i].from_bus == net.branches[i].from_bus);
    CHECK(again.branches[i].to_bus == net.branches[i].to_bus);
    CHECK(again.branches[i].reactance_x == net.branches[i].reactance_x);
  }
}

TEST_CASE("bundled fixtures match their own row counts") {
  for (const char* name : {"case118", "case300"}) {
    const std::string text = read_file(std::string(SDDCPF_DATA_DIR) + "/" + name + ".m");
    const auto net = parse_case(text, name);
    CHECK(net.bus_count() == count_rows(text, "bus"));
    // one branch row in each fixture is flagged out of service
    CHECK(static_cast<int>(net.branches.size()) == count_rows(text, "branch") - 1);
  }
  CHECK(load_case(std::string(SDDCPF_DATA_DIR) + "/case118.m").bus_count() == 118);
  CHECK(load_case(std::string(SDDCPF_DATA_DIR) + "/case300.m").bus_count() == 300);
}

TEST_CASE("csv pair parses with and without the angle column") {
  const std::string branch = "from,to,r,x,status\n1,2,0.0,0.5,1\n2,3,0.0,0.25,1\n";
  const auto with = parse_case_csv("id,type,va\n1,3,1.5\n2,1,0\n3,2,-3\n", branch);
  CHECK(with.has_base_angles);
  CHECK(with.bus_count() == 3);
  CHECK(with.buses[0].base_angle == doctest::Approx(1.5 * std::numbers::pi / 180.0).epsilon(1e-14));

  const auto bare = parse_case_csv("id,type\n1,3\n2,1\n3,2\n", branch);
  CHECK_FALSE(bare.has_base_angles);
  CHECK(bare.buses[1].base_angle == 0.0);
  CHECK(bare.branches.size() == 2);
}

TEST_CASE("components agree with the bfs oracle") {
  Rng rng(20260823);
  for (int it = 0; it < 50; ++it) {
    const int n = 2 + static_cast<int>(rng.next() % 11);
    const int parts = 1 + static_cast<int>(rng.next() % 3);
    const auto net = oracle::random_network(rng, n, parts);
    const auto got = connected_components(net);
    const auto want = oracle::bfs_components(net);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
    CHECK(component_count(net) == 1 + *std::max_element(want.begin(), want.end()));
  }
}
