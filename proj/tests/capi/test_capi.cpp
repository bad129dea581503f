// Exercises the shared library strictly through its C surface.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"

#include "ebit/ebit.h"

namespace {

constexpr double kH25 = 0.81127812445913283;
const double kInvSqrt2 = std::sqrt(0.5);

// Owns a char* produced by the library.
struct CStr {
  char* s = nullptr;
  ~CStr() { ebit_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

struct StateGuard {
  ebit_state* s = nullptr;
  ~StateGuard() { ebit_state_free(s); }
};

struct ProtocolGuard {
  ebit_protocol* p = nullptr;
  ~ProtocolGuard() { ebit_protocol_free(p); }
};

struct EnsembleGuard {
  ebit_ensemble* e = nullptr;
  ~EnsembleGuard() { ebit_ensemble_free(e); }
};

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("ebit_capi_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("version and status names") {
  REQUIRE(ebit_version() != nullptr);
  CHECK(std::strlen(ebit_version()) > 0);
  CHECK(std::string(ebit_status_name(EBIT_OK)) == "ok");
  CHECK(std::string(ebit_status_name(EBIT_ERR_PARSE)) == "parse");
  CHECK(std::string(ebit_status_name(EBIT_ERR_INVARIANT)) == "invariant");
}

TEST_CASE("singlet entropy is one ebit") {
  StateGuard s;
  REQUIRE(ebit_state_singlet(&s.s) == EBIT_OK);
  double e = -1.0;
  REQUIRE(ebit_entropy(s.s, &e) == EBIT_OK);
  CHECK(std::abs(e - 1.0) < 1e-12);
}

TEST_CASE("two-term state reproduces the binary entropy") {
  StateGuard s;
  REQUIRE(ebit_state_two_term(0.25, &s.s) == EBIT_OK);
  double e = 0.0;
  REQUIRE(ebit_entropy(s.s, &e) == EBIT_OK);
  CHECK(std::abs(e - kH25) < 1e-12);
}

TEST_CASE("create, dims and amplitude readback") {
  const double amps[8] = {kInvSqrt2, 0.0, 0.0, 0.0, 0.0, 0.0, kInvSqrt2, 0.0};
  StateGuard s;
  REQUIRE(ebit_state_create(2, 2, amps, &s.s) == EBIT_OK);
  int64_t da = 0, db = 0;
  REQUIRE(ebit_state_dims(s.s, &da, &db) == EBIT_OK);
  CHECK(da == 2);
  CHECK(db == 2);
  double back[8] = {0};
  REQUIRE(ebit_state_amplitudes(s.s, back) == EBIT_OK);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(back[i] - amps[i]) < 1e-12);
}

TEST_CASE("bad norm reports an invariant failure with a message") {
  const double amps[8] = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0};
  ebit_state* out = nullptr;
  CHECK(ebit_state_create(2, 2, amps, &out) == EBIT_ERR_INVARIANT);
  CHECK(out == nullptr);
  CHECK(std::strlen(ebit_last_error()) > 0);
}

TEST_CASE("null outputs and bad parameters are invalid arguments") {
  CHECK(ebit_state_singlet(nullptr) == EBIT_ERR_INVALID_ARGUMENT);
  ebit_state* out = nullptr;
  CHECK(ebit_state_two_term(1.5, &out) == EBIT_ERR_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  double e = 0.0;
  CHECK(ebit_entropy(nullptr, &e) == EBIT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("entropy is additive over tensor products") {
  StateGuard a, b, both;
  REQUIRE(ebit_state_singlet(&a.s) == EBIT_OK);
  REQUIRE(ebit_state_two_term(0.25, &b.s) == EBIT_OK);
  REQUIRE(ebit_state_tensor(a.s, b.s, &both.s) == EBIT_OK);
  double ea = 0, eb = 0, eab = 0;
  REQUIRE(ebit_entropy(a.s, &ea) == EBIT_OK);
  REQUIRE(ebit_entropy(b.s, &eb) == EBIT_OK);
  REQUIRE(ebit_entropy(both.s, &eab) == EBIT_OK);
  CHECK(std::abs(eab - (ea + eb)) < 1e-9);
}

TEST_CASE("state json roundtrip through the C surface") {
  StateGuard s;
  REQUIRE(ebit_state_random(3, 2, 19, 4, &s.s) == EBIT_OK);
  CStr js;
  REQUIRE(ebit_state_to_json(s.s, &js.s) == EBIT_OK);
  StateGuard back;
  REQUIRE(ebit_state_from_json(js.s, &back.s) == EBIT_OK);
  double f = 0.0;
  REQUIRE(ebit_state_fidelity(s.s, back.s, &f) == EBIT_OK);
  CHECK(std::abs(f - 1.0) < 1e-12);

  ebit_state* bad = nullptr;
  CHECK(ebit_state_from_json("{broken", &bad) == EBIT_ERR_PARSE);
  CHECK(bad == nullptr);
}

TEST_CASE("state file roundtrip") {
  const std::string path = temp_path("state.json");
  StateGuard s;
  REQUIRE(ebit_state_two_term(0.3, &s.s) == EBIT_OK);
  REQUIRE(ebit_state_save(s.s, path.c_str()) == EBIT_OK);
  StateGuard back;
  REQUIRE(ebit_state_load(path.c_str(), &back.s) == EBIT_OK);
  double f = 0.0;
  REQUIRE(ebit_state_fidelity(s.s, back.s, &f) == EBIT_OK);
  CHECK(std::abs(f - 1.0) < 1e-12);
  CHECK(ebit_state_load("/nonexistent/state.json", &back.s) == EBIT_ERR_PARSE);
}

TEST_CASE("schmidt data for the singlet") {
  StateGuard s;
  REQUIRE(ebit_state_singlet(&s.s) == EBIT_OK);
  int64_t rank = 0;
  REQUIRE(ebit_schmidt_rank(s.s, &rank) == EBIT_OK);
  CHECK(rank == 2);
  double coeffs[2] = {0, 0};
  int64_t count = 0;
  REQUIRE(ebit_schmidt_coeffs(s.s, coeffs, &count) == EBIT_OK);
  CHECK(count == 2);
  CHECK(std::abs(coeffs[0] - kInvSqrt2) < 1e-12);
  CHECK(std::abs(coeffs[1] - kInvSqrt2) < 1e-12);
  CStr js;
  REQUIRE(ebit_schmidt_json(s.s, &js.s) == EBIT_OK);
  CHECK(js.str().find("\"rank\"") != std::string::npos);
}

TEST_CASE("protocol run yields a normalized ensemble") {
  StateGuard s;
  REQUIRE(ebit_state_random(3, 3, 5, 0, &s.s) == EBIT_OK);
  ProtocolGuard p;
  REQUIRE(ebit_protocol_random(3, 3, 3, 5, 1, &p.p) == EBIT_OK);
  EnsembleGuard e;
  REQUIRE(ebit_protocol_run(s.s, p.p, &e.e) == EBIT_OK);
  int64_t n = 0;
  REQUIRE(ebit_ensemble_size(e.e, &n) == EBIT_OK);
  REQUIRE(n >= 1);
  double total = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    double pr = 0.0;
    REQUIRE(ebit_ensemble_prob(e.e, i, &pr) == EBIT_OK);
    total += pr;
    StateGuard branch;
    REQUIRE(ebit_ensemble_state(e.e, i, &branch.s) == EBIT_OK);
  }
  CHECK(std::abs(total - 1.0) < 1e-9);
  double pr = 0.0;
  CHECK(ebit_ensemble_prob(e.e, n, &pr) == EBIT_ERR_INVALID_ARGUMENT);

  ebit_monotonicity_result r;
  REQUIRE(ebit_monotonicity_check(s.s, p.p, &r) == EBIT_OK);
  CHECK(r.satisfied == 1);
  double avg = 0.0;
  REQUIRE(ebit_ensemble_average_entanglement(e.e, &avg) == EBIT_OK);
  CHECK(std::abs(avg - r.after_avg) < 1e-12);
  CHECK(std::abs((r.before - r.after_avg) - r.slack) < 1e-12);
}

TEST_CASE("protocol json rejects unknown kinds") {
  ebit_protocol* out = nullptr;
  CHECK(ebit_protocol_from_json(
            "[{\"side\":\"A\",\"kind\":\"teleport\",\"matrix\":[[1,0]]}]",
            &out) == EBIT_ERR_PARSE);
  CHECK(out == nullptr);
}

TEST_CASE("protocol json and file roundtrip") {
  ProtocolGuard p;
  REQUIRE(ebit_protocol_random(2, 2, 2, 42, 0, &p.p) == EBIT_OK);
  CStr js;
  REQUIRE(ebit_protocol_to_json(p.p, &js.s) == EBIT_OK);
  ProtocolGuard back;
  REQUIRE(ebit_protocol_from_json(js.s, &back.p) == EBIT_OK);
  CStr js2;
  REQUIRE(ebit_protocol_to_json(back.p, &js2.s) == EBIT_OK);
  CHECK(js.str() == js2.str());

  const std::string path = temp_path("protocol.json");
  REQUIRE(ebit_protocol_save(p.p, path.c_str()) == EBIT_OK);
  ProtocolGuard loaded;
  REQUIRE(ebit_protocol_load(path.c_str(), &loaded.p) == EBIT_OK);
}

TEST_CASE("monotonicity sweep finds no violations") {
  const int64_t dims[4] = {2, 2, 3, 2};
  ebit_sweep_summary summary;
  char* dump = nullptr;
  REQUIRE(ebit_monotonicity_sweep(100, dims, 2, 3, 11, &summary, &dump) ==
          EBIT_OK);
  CHECK(summary.trials == 100);
  CHECK(summary.satisfied == 100);
  CHECK(summary.has_violation == 0);
  CHECK(dump == nullptr);
}

TEST_CASE("exact concentration matches the frozen yield") {
  double h = 0.0;
  REQUIRE(ebit_source_entropy(0.25, &h) == EBIT_OK);
  CHECK(std::abs(h - kH25) < 1e-12);

  ebit_yield y;
  REQUIRE(ebit_concentrate_exact(0.25, 10, &y) == EBIT_OK);
  CHECK(y.k == 10);
  CHECK(std::abs(y.expected_ebits - 5.639394476014246) < 1e-12);
  CHECK(std::abs(y.per_copy - y.expected_ebits / 10.0) < 1e-12);
  CHECK(std::abs(y.gap - (h - y.per_copy)) < 1e-12);
  CHECK(y.std_error < 0.0);

  ebit_yield m;
  REQUIRE(ebit_concentrate_sample(0.25, 10, 500, 7, 0, &m) == EBIT_OK);
  CHECK(m.std_error >= 0.0);
  ebit_yield m2;
  REQUIRE(ebit_concentrate_sample(0.25, 10, 500, 7, 0, &m2) == EBIT_OK);
  CHECK(m.expected_ebits == m2.expected_ebits);
}

TEST_CASE("tables carry fixed headers and exact first rows") {
  const uint64_t ks[3] = {1, 2, 4};
  CStr table;
  REQUIRE(ebit_concentrate_table(0.25, ks, 3, 0, 0, EBIT_FORMAT_CSV,
                                 &table.s) == EBIT_OK);
  CHECK(table.str().rfind("k,expected_ebits,per_copy_ebits,gap_ebits,"
                          "whole_singlets_per_copy,method,std_error\n",
                          0) == 0);

  const uint64_t one[1] = {1};
  CStr ratio;
  REQUIRE(ebit_ratio_table(0.5, one, 1, EBIT_FORMAT_CSV, &ratio.s) == EBIT_OK);
  CHECK(ratio.str() ==
        "k,per_copy_ebits,gap_ebits\n1,0.000000000000,1.000000000000\n");

  const uint64_t unsorted[2] = {4, 2};
  char* bad = nullptr;
  CHECK(ebit_ratio_table(0.5, unsorted, 2, EBIT_FORMAT_CSV, &bad) ==
        EBIT_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
}

TEST_CASE("dilution above the entropy rate is near-faithful") {
  double h = 0.0;
  REQUIRE(ebit_source_entropy(0.25, &h) == EBIT_OK);
  double f = 0.0;
  REQUIRE(ebit_dilution_fidelity(0.25, 100, h + 0.1, &f) == EBIT_OK);
  CHECK(f >= 0.9);
  CHECK(f <= 1.0);

  const double rates[2] = {h - 0.1, h + 0.1};
  CStr curve;
  REQUIRE(ebit_dilution_curve(0.25, 100, rates, 2, EBIT_FORMAT_CSV,
                              &curve.s) == EBIT_OK);
  CHECK(curve.str().rfind("n,rate,fidelity\n", 0) == 0);
}

TEST_CASE("uniqueness report crowns entropy deterministically") {
  CStr report, name;
  REQUIRE(ebit_uniqueness_report(7, 0, 40, &report.s, &name.s) == EBIT_OK);
  CHECK(name.str() == "entropy");
  CHECK(report.str().find("\"entropy\"") != std::string::npos);
  CStr report2;
  REQUIRE(ebit_uniqueness_report(7, 0, 40, &report2.s, nullptr) == EBIT_OK);
  CHECK(report.str() == report2.str());
}
