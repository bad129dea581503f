#include <unistd.h>

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "json.hpp"

#include "ebit/asymptotic.hpp"
#include "ebit/errors.hpp"
#include "ebit/locc.hpp"
#include "ebit/serialize.hpp"
#include "ebit/state.hpp"

using namespace ebit;
using nlohmann::json;

namespace {

// Fresh scratch directory per test run; removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("ebit_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  static inline int counter = 0;
};

}  // namespace

TEST_CASE("format_real renders twelve fixed digits") {
  CHECK(format_real(1.0) == "1.000000000000");
  CHECK(format_real(0.0) == "0.000000000000");
  CHECK(format_real(0.8112781244591328) == "0.811278124459");
  CHECK(format_real(-0.25) == "-0.250000000000");
}

TEST_CASE("state json roundtrip preserves amplitudes") {
  const BipartiteState s = random_state(3, 4, RngSpec{21, 5});
  const json j = state_to_json(s);
  CHECK(j.at("dim_a") == 3);
  CHECK(j.at("dim_b") == 4);
  CHECK(j.at("amps").size() == 12);
  const BipartiteState back = state_from_json(j);
  CHECK((back.amps() - s.amps()).norm() < 1e-15);
}

TEST_CASE("state file roundtrip") {
  TempDir dir;
  const BipartiteState s = singlet();
  save_state(s, dir.file("s.json"));
  const BipartiteState back = load_state(dir.file("s.json"));
  CHECK(fidelity(s, back) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("loader renormalizes tiny norm drift") {
  json j = state_to_json(singlet());
  for (auto& pair : j["amps"]) {
    pair[0] = pair[0].get<double>() * (1.0 + 1e-8);
    pair[1] = pair[1].get<double>() * (1.0 + 1e-8);
  }
  const BipartiteState s = state_from_json(j);
  CHECK(std::abs(s.amps().norm() - 1.0) < 1e-12);
}

TEST_CASE("loader rejects norm deviations past the bound") {
  json j = state_to_json(singlet());
  for (auto& pair : j["amps"]) {
    pair[0] = pair[0].get<double>() * 1.001;
    pair[1] = pair[1].get<double>() * 1.001;
  }
  CHECK_THROWS_AS(state_from_json(j), InvariantError);
}

TEST_CASE("state loader flags structural problems as parse errors") {
  const json good = state_to_json(singlet());

  json missing = good;
  missing.erase("amps");
  CHECK_THROWS_AS(state_from_json(missing), ParseError);

  json short_amps = good;
  short_amps["amps"].erase(3);
  CHECK_THROWS_AS(state_from_json(short_amps), ParseError);

  json bad_entry = good;
  bad_entry["amps"][0] = "x";
  CHECK_THROWS_AS(state_from_json(bad_entry), ParseError);

  json bad_dim = good;
  bad_dim["dim_a"] = 0;
  CHECK_THROWS_AS(state_from_json(bad_dim), ParseError);
}

TEST_CASE("load_state propagates file and syntax failures as ParseError") {
  TempDir dir;
  CHECK_THROWS_AS(load_state(dir.file("absent.json")), ParseError);
  write_text_file(dir.file("broken.json"), "{nope");
  CHECK_THROWS_AS(load_state(dir.file("broken.json")), ParseError);
}

TEST_CASE("protocol json roundtrip is dump-stable") {
  const Protocol p = random_protocol(3, 2, 3, RngSpec{8, 2});
  const json j = protocol_to_json(p);
  const json j2 = protocol_to_json(protocol_from_json(j));
  CHECK(j.dump() == j2.dump());
}

TEST_CASE("handcrafted conditioned protocol survives the file roundtrip") {
  Eigen::MatrixXcd z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  Protocol p;
  p.steps.push_back({LocalOperation::measurement(Side::A, {p0, p1}), {}});
  p.steps.push_back({LocalOperation::unitary(Side::B, z), {"1"}});

  TempDir dir;
  save_protocol(p, dir.file("p.json"));
  const Protocol back = load_protocol(dir.file("p.json"));
  REQUIRE(back.steps.size() == 2);
  CHECK(back.steps[0].op.kind() == LocalOperation::Kind::Measurement);
  CHECK(back.steps[0].when.empty());
  CHECK(back.steps[1].op.side() == Side::B);
  CHECK(back.steps[1].when == std::vector<std::string>{"1"});
  CHECK(protocol_to_json(back).dump() == protocol_to_json(p).dump());
}

TEST_CASE("protocol loader rejects malformed steps") {
  const json base = protocol_to_json(random_protocol(2, 2, 1, RngSpec{8, 3}));

  json bad_side = base;
  bad_side[0]["side"] = "C";
  CHECK_THROWS_AS(protocol_from_json(bad_side), ParseError);

  json bad_kind = base;
  bad_kind[0]["kind"] = "teleport";
  CHECK_THROWS_AS(protocol_from_json(bad_kind), ParseError);

  json not_array = json::object();
  CHECK_THROWS_AS(protocol_from_json(not_array), ParseError);

  json jagged;
  jagged = json::array();
  jagged.push_back({{"side", "A"},
                    {"kind", "unitary"},
                    {"matrix", json::array({json::array({1.0, 0.0}),
                                            json::array({0.0, 0.0}),
                                            json::array({0.0, 0.0})})}});
  CHECK_THROWS_AS(protocol_from_json(jagged), ParseError);
}

TEST_CASE("protocol loader enforces operator invariants") {
  json steps = json::array();
  steps.push_back({{"side", "A"},
                   {"kind", "unitary"},
                   {"matrix", json::array({json::array({2.0, 0.0}),
                                           json::array({0.0, 0.0}),
                                           json::array({0.0, 0.0}),
                                           json::array({1.0, 0.0})})}});
  CHECK_THROWS_AS(protocol_from_json(steps), InvariantError);
}

TEST_CASE("ratio csv matches the fixed layout") {
  const auto rows = ratio_table(TwoTermSource(0.5), {1});
  CHECK(ratio_to_csv(rows) ==
        "k,per_copy_ebits,gap_ebits\n1,0.000000000000,1.000000000000\n");
}

TEST_CASE("dilution csv carries the fixed header") {
  const auto points = dilution_curve(TwoTermSource(0.25), 10, {0.0, 1.0});
  const std::string csv = dilution_to_csv(points);
  CHECK(csv.rfind("n,rate,fidelity\n", 0) == 0);
  CHECK(csv.find("10,0.000000000000,") != std::string::npos);
}

TEST_CASE("yields csv leaves std_error blank for exact rows") {
  const std::vector<YieldEstimate> rows = {
      concentrate_exact(TwoTermSource(0.5), 2)};
  const std::string csv = yields_to_csv(rows);
  CHECK(csv.rfind(
            "k,expected_ebits,per_copy_ebits,gap_ebits,"
            "whole_singlets_per_copy,method,std_error\n",
            0) == 0);
  CHECK(csv.find("exact,\n") != std::string::npos);
}

TEST_CASE("text file helpers classify failures") {
  TempDir dir;
  CHECK_THROWS_AS(read_text_file(dir.file("missing.txt")), ParseError);
  CHECK_THROWS_AS(write_text_file(dir.file("no/such/dir/out.txt"), "x"),
                  IoError);
  write_text_file(dir.file("t.txt"), "payload");
  CHECK(read_text_file(dir.file("t.txt")) == "payload");
}
