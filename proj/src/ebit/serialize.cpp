#include "ebit/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "ebit/errors.hpp"

namespace ebit {

namespace {

using nlohmann::json;

json complex_to_pair(const std::complex<double>& z) {
  return json::array({z.real(), z.imag()});
}

std::complex<double> pair_to_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_flat(const Eigen::MatrixXcd& m) {
  json arr = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      arr.push_back(complex_to_pair(m(r, c)));
    }
  }
  return arr;
}

// Square matrix from a flat row-major [re, im] list.
Eigen::MatrixXcd flat_to_square(const json& arr) {
  if (!arr.is_array() || arr.empty()) {
    throw ParseError("expected a non-empty flat matrix array");
  }
  const auto len = static_cast<Eigen::Index>(arr.size());
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(len))));
  if (dim * dim != len) {
    throw ParseError("flat matrix length is not a perfect square");
  }
  Eigen::MatrixXcd m(dim, dim);
  Eigen::Index i = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = pair_to_complex(arr[static_cast<std::size_t>(i++)]);
    }
  }
  return m;
}

json rng_to_json(const RngSpec& spec) {
  return json{{"seed", spec.seed}, {"stream", spec.stream}};
}

json counterexample_to_json(const Counterexample& ce) {
  json j;
  j["axiom"] = ce.axiom;
  j["trial"] = ce.trial;
  j["rng"] = rng_to_json(ce.rng);
  j["expected"] = ce.expected;
  j["observed"] = ce.observed;
  if (ce.state) j["state"] = state_to_json(*ce.state);
  if (ce.state_b) j["state_b"] = state_to_json(*ce.state_b);
  if (ce.protocol) j["protocol"] = protocol_to_json(*ce.protocol);
  if (ce.source_p) j["source_p"] = *ce.source_p;
  if (ce.copies_k) j["copies_k"] = *ce.copies_k;
  return j;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  return buf;
}

json state_to_json(const BipartiteState& s) {
  json amps = json::array();
  for (Eigen::Index a = 0; a < s.dim_a(); ++a) {
    for (Eigen::Index b = 0; b < s.dim_b(); ++b) {
      amps.push_back(complex_to_pair(s.amps()(a, b)));
    }
  }
  return json{{"dim_a", s.dim_a()}, {"dim_b", s.dim_b()}, {"amps", std::move(amps)}};
}

BipartiteState state_from_json(const json& j) {
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  Eigen::MatrixXcd amps;
  try {
    dim_a = j.at("dim_a").get<Eigen::Index>();
    dim_b = j.at("dim_b").get<Eigen::Index>();
    if (dim_a < 1 || dim_b < 1) {
      throw ParseError("state dims must be >= 1");
    }
    if (dim_a > kDimensionCap / dim_b) {
      throw CapacityError("state exceeds the amplitude cap");
    }
    const json& arr = j.at("amps");
    if (!arr.is_array() ||
        static_cast<Eigen::Index>(arr.size()) != dim_a * dim_b) {
      throw ParseError("amps length must equal dim_a*dim_b");
    }
    amps.resize(dim_a, dim_b);
    std::size_t i = 0;
    for (Eigen::Index a = 0; a < dim_a; ++a) {
      for (Eigen::Index b = 0; b < dim_b; ++b) {
        amps(a, b) = pair_to_complex(arr[i++]);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed state JSON: ") + e.what());
  }
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > tol::loader_norm) {
    throw InvariantError("state norm deviates from 1 beyond the loader bound");
  }
  return BipartiteState::make_normalized(std::move(amps));
}

BipartiteState load_state(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed state JSON: ") + e.what());
  }
  return state_from_json(j);
}

void save_state(const BipartiteState& s, const std::string& path) {
  write_text_file(path, state_to_json(s).dump(2) + "\n");
}

json protocol_to_json(const Protocol& p) {
  json steps = json::array();
  for (const ProtocolStep& step : p.steps) {
    json js;
    js["side"] = step.op.side() == Side::A ? "A" : "B";
    if (step.op.kind() == LocalOperation::Kind::Unitary) {
      js["kind"] = "unitary";
      js["matrix"] = matrix_to_flat(step.op.unitary_matrix());
    } else {
      js["kind"] = "measurement";
      json kraus = json::array();
      for (const Eigen::MatrixXcd& k : step.op.kraus_ops()) {
        kraus.push_back(matrix_to_flat(k));
      }
      js["kraus"] = std::move(kraus);
    }
    if (!step.when.empty()) {
      js["when"] = step.when;
    }
    steps.push_back(std::move(js));
  }
  return steps;
}

Protocol protocol_from_json(const json& j) {
  if (!j.is_array()) {
    throw ParseError("protocol JSON must be an array of steps");
  }
  Protocol p;
  try {
    for (const json& js : j) {
      const std::string side_str = js.at("side").get<std::string>();
      if (side_str != "A" && side_str != "B") {
        throw ParseError("step side must be \"A\" or \"B\"");
      }
      const Side side = side_str == "A" ? Side::A : Side::B;
      const std::string kind = js.at("kind").get<std::string>();
      std::vector<std::string> when;
      if (js.contains("when")) {
        when = js.at("when").get<std::vector<std::string>>();
      }
      if (kind == "unitary") {
        p.steps.push_back(ProtocolStep{
            LocalOperation::unitary(side, flat_to_square(js.at("matrix"))),
            std::move(when)});
      } else if (kind == "measurement") {
        const json& arr = js.at("kraus");
        if (!arr.is_array() || arr.empty()) {
          throw ParseError("kraus must be a non-empty array of matrices");
        }
        std::vector<Eigen::MatrixXcd> kraus;
        kraus.reserve(arr.size());
        for (const json& km : arr) {
          kraus.push_back(flat_to_square(km));
        }
        p.steps.push_back(ProtocolStep{
            LocalOperation::measurement(side, std::move(kraus)),
            std::move(when)});
      } else {
        throw ParseError("step kind must be \"unitary\" or \"measurement\"");
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed protocol JSON: ") + e.what());
  }
  return p;
}

Protocol load_protocol(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed protocol JSON: ") + e.what());
  }
  return protocol_from_json(j);
}

void save_protocol(const Protocol& p, const std::string& path) {
  write_text_file(path, protocol_to_json(p).dump(2) + "\n");
}

json report_to_json(const MeasureReport& report) {
  json records = json::array();
  for (const MeasureRecord& rec : report.records) {
    json jr;
    jr["name"] = rec.name;
    jr["builtin"] = rec.builtin;
    jr["passes_unitary_invariance"] = rec.passes_unitary_invariance;
    jr["passes_monotonicity"] = rec.passes_monotonicity;
    jr["passes_additivity"] = rec.passes_additivity;
    jr["passes_unit_norm"] = rec.passes_unit_norm;
    jr["passes_asymptotic"] = rec.passes_asymptotic;
    json ces = json::array();
    for (const Counterexample& ce : rec.counterexamples) {
      ces.push_back(counterexample_to_json(ce));
    }
    jr["counterexamples"] = std::move(ces);
    records.push_back(std::move(jr));
  }
  return records;
}

json sweep_violation_to_json(const SweepViolation& v) {
  const BipartiteState state = random_state(v.dim_a, v.dim_b, v.state_rng);
  const Protocol proto = random_protocol(v.dim_a, v.dim_b, v.depth, v.protocol_rng);
  json j;
  j["trial"] = v.trial;
  j["dim_a"] = v.dim_a;
  j["dim_b"] = v.dim_b;
  j["depth"] = v.depth;
  j["state_rng"] = rng_to_json(v.state_rng);
  j["protocol_rng"] = rng_to_json(v.protocol_rng);
  j["before"] = v.report.before;
  j["after_avg"] = v.report.after_avg;
  j["slack"] = v.report.slack;
  j["branch_probs"] = v.report.branch_probs;
  j["branch_ebits"] = v.report.branch_ebits;
  j["state"] = state_to_json(state);
  j["protocol"] = protocol_to_json(proto);
  return j;
}

json ratio_to_json(const std::vector<RatioRow>& rows) {
  json arr = json::array();
  for (const RatioRow& r : rows) {
    arr.push_back(json{{"k", r.copies_k},
                       {"per_copy_ebits", r.per_copy},
                       {"gap_ebits", r.gap}});
  }
  return arr;
}

std::string ratio_to_csv(const std::vector<RatioRow>& rows) {
  std::ostringstream out;
  out << "k,per_copy_ebits,gap_ebits\n";
  for (const RatioRow& r : rows) {
    out << r.copies_k << ',' << format_real(r.per_copy) << ','
        << format_real(r.gap) << '\n';
  }
  return out.str();
}

json dilution_to_json(const std::vector<RateFidelityPoint>& points) {
  json arr = json::array();
  for (const RateFidelityPoint& pt : points) {
    arr.push_back(json{{"n", pt.copies_n},
                       {"rate", pt.rate},
                       {"fidelity", pt.fidelity}});
  }
  return arr;
}

std::string dilution_to_csv(const std::vector<RateFidelityPoint>& points) {
  std::ostringstream out;
  out << "n,rate,fidelity\n";
  for (const RateFidelityPoint& pt : points) {
    out << pt.copies_n << ',' << format_real(pt.rate) << ','
        << format_real(pt.fidelity) << '\n';
  }
  return out.str();
}

json yields_to_json(const std::vector<YieldEstimate>& rows) {
  json arr = json::array();
  for (const YieldEstimate& y : rows) {
    json j{{"k", y.copies_k},
           {"expected_ebits", y.expected_ebits},
           {"per_copy_ebits", y.per_copy},
           {"gap_ebits", y.gap},
           {"whole_singlets_per_copy", y.whole_singlets_per_copy},
           {"method", y.method == YieldMethod::Exact ? "exact" : "monte_carlo"}};
    if (y.std_error) j["std_error"] = *y.std_error;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string yields_to_csv(const std::vector<YieldEstimate>& rows) {
  std::ostringstream out;
  out << "k,expected_ebits,per_copy_ebits,gap_ebits,whole_singlets_per_copy,"
         "method,std_error\n";
  for (const YieldEstimate& y : rows) {
    out << y.copies_k << ',' << format_real(y.expected_ebits) << ','
        << format_real(y.per_copy) << ',' << format_real(y.gap) << ','
        << format_real(y.whole_singlets_per_copy) << ','
        << (y.method == YieldMethod::Exact ? "exact" : "monte_carlo") << ',';
    if (y.std_error) out << format_real(*y.std_error);
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot read file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw ParseError("cannot read file: " + path);
  }
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write file: " + path);
  }
  out << content;
  out.flush();
  if (!out.good()) {
    throw IoError("cannot write file: " + path);
  }
}

}  // namespace ebit
