// Command-line front end.  All domain work goes through the C API in
// ebit/ebit.h; this file owns argument parsing, RunConfig merging and
// output plumbing only.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ebit/ebit.h"

namespace {

using nlohmann::json;

// Thrown by helpers after printing a diagnostic; unwinds to main.
struct ExitWith {
  int code;
};

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  return buf;
}

// Exit codes: 0 success, 1 property violation found, 2 invalid input,
// 3 invariant violation in data, 4 I/O failure.
int status_exit_code(ebit_status st) {
  switch (st) {
    case EBIT_OK:
      return 0;
    case EBIT_ERR_INVALID_ARGUMENT:
    case EBIT_ERR_SHAPE:
    case EBIT_ERR_CAPACITY:
    case EBIT_ERR_PARSE:
    case EBIT_ERR_PROTOCOL:
      return 2;
    case EBIT_ERR_INVARIANT:
    case EBIT_ERR_COMPUTE:
    case EBIT_ERR_INTERNAL:
      return 3;
    case EBIT_ERR_IO:
      return 4;
  }
  return 3;
}

int fail(ebit_status st) {
  std::fprintf(stderr, "ebit: %s: %s\n", ebit_status_name(st),
               ebit_last_error());
  return status_exit_code(st);
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { ebit_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct StateHandle {
  ebit_state* ptr = nullptr;
  ~StateHandle() { ebit_state_free(ptr); }
};

// Writes to out_path, or stdout when out_path is empty.
int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f) {
    std::fprintf(stderr, "ebit: cannot write file: %s\n", out_path.c_str());
    return 4;
  }
  f << text;
  f.flush();
  if (!f.good()) {
    std::fprintf(stderr, "ebit: cannot write file: %s\n", out_path.c_str());
    return 4;
  }
  return 0;
}

uint64_t parse_u64_or_exit(const std::string& text, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text[0] == '-') {
    std::fprintf(stderr, "ebit: %s is not an unsigned integer: %s\n", what,
                 text.c_str());
    throw ExitWith{2};
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<uint64_t> parse_k_list(const std::string& text) {
  std::vector<uint64_t> ks;
  for (const std::string& part : split(text, ',')) {
    ks.push_back(parse_u64_or_exit(part, "--k entry"));
  }
  return ks;
}

double parse_real_or_exit(const std::string& text, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) {
    std::fprintf(stderr, "ebit: %s is not a number: %s\n", what, text.c_str());
    throw ExitWith{2};
  }
  return v;
}

// start:stop:step (inclusive) or a comma-separated list.
std::vector<double> parse_rates(const std::string& text) {
  std::vector<double> rates;
  if (text.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3) {
      std::fprintf(stderr, "ebit: --rates wants start:stop:step, got %s\n",
                   text.c_str());
      throw ExitWith{2};
    }
    const double start = parse_real_or_exit(parts[0], "--rates start");
    const double stop = parse_real_or_exit(parts[1], "--rates stop");
    const double step = parse_real_or_exit(parts[2], "--rates step");
    if (step <= 0.0 || stop < start) {
      std::fprintf(stderr,
                   "ebit: --rates needs step > 0 and stop >= start\n");
      throw ExitWith{2};
    }
    for (double r = start; r <= stop + step * 1e-9; r += step) {
      rates.push_back(r);
    }
  } else {
    for (const std::string& part : split(text, ',')) {
      rates.push_back(parse_real_or_exit(part, "--rates entry"));
    }
  }
  return rates;
}

void parse_dims(const std::string& text, int64_t& dim_a, int64_t& dim_b) {
  const std::size_t at = text.find_first_of("xX");
  if (at == std::string::npos || at == 0 || at + 1 >= text.size()) {
    std::fprintf(stderr, "ebit: --dims wants AxB, got %s\n", text.c_str());
    throw ExitWith{2};
  }
  dim_a = static_cast<int64_t>(
      parse_u64_or_exit(text.substr(0, at), "--dims A"));
  dim_b = static_cast<int64_t>(
      parse_u64_or_exit(text.substr(at + 1), "--dims B"));
}

json load_config(const std::string& path, const std::string& command) {
  if (path.empty()) return json::object();
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "ebit: cannot read config: %s\n", path.c_str());
    throw ExitWith{2};
  }
  json cfg;
  try {
    f >> cfg;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "ebit: malformed config %s: %s\n", path.c_str(),
                 e.what());
    throw ExitWith{2};
  }
  if (!cfg.is_object()) {
    std::fprintf(stderr, "ebit: config must be a JSON object\n");
    throw ExitWith{2};
  }
  if (cfg.contains("command") && cfg["command"] != command) {
    std::fprintf(stderr, "ebit: config is for command %s, not %s\n",
                 cfg["command"].dump().c_str(), command.c_str());
    throw ExitWith{2};
  }
  return cfg;
}

// Flags override config values; config fills in anything left at default.
template <typename T>
void merge(const CLI::Option* opt, const json& cfg, const char* key, T& value) {
  if (opt->count() > 0 || !cfg.contains(key)) return;
  try {
    value = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    std::fprintf(stderr, "ebit: config key %s: %s\n", key, e.what());
    throw ExitWith{2};
  }
}

// Accepts a number, an array of numbers, or a list string for "k".
void merge_k(const CLI::Option* opt, const json& cfg, std::string& k_text) {
  if (opt->count() > 0 || !cfg.contains("k")) return;
  const json& v = cfg.at("k");
  if (v.is_number_unsigned() || v.is_number_integer()) {
    k_text = std::to_string(v.get<uint64_t>());
  } else if (v.is_array()) {
    k_text.clear();
    for (const json& e : v) {
      if (!k_text.empty()) k_text += ',';
      k_text += std::to_string(e.get<uint64_t>());
    }
  } else if (v.is_string()) {
    k_text = v.get<std::string>();
  } else {
    std::fprintf(stderr, "ebit: config key k must be int, list or string\n");
    throw ExitWith{2};
  }
}

void merge_rates(const CLI::Option* opt, const json& cfg,
                 std::string& rates_text, std::vector<double>& rates_list) {
  if (opt->count() > 0 || !cfg.contains("rates")) return;
  const json& v = cfg.at("rates");
  if (v.is_string()) {
    rates_text = v.get<std::string>();
  } else if (v.is_array()) {
    rates_text.clear();
    rates_list = v.get<std::vector<double>>();
  } else {
    std::fprintf(stderr, "ebit: config key rates must be string or list\n");
    throw ExitWith{2};
  }
}

uint64_t resolve_seed(const CLI::Option* opt, uint64_t flag_value,
                      const json& cfg) {
  if (opt->count() > 0) return flag_value;
  if (cfg.contains("seed")) {
    try {
      return cfg.at("seed").get<uint64_t>();
    } catch (const json::exception& e) {
      std::fprintf(stderr, "ebit: config key seed: %s\n", e.what());
      throw ExitWith{2};
    }
  }
  if (const char* env = std::getenv("EBIT_SEED")) {
    return parse_u64_or_exit(env, "EBIT_SEED");
  }
  return 0;
}

ebit_format to_format(const std::string& name) {
  return name == "json" ? EBIT_FORMAT_JSON : EBIT_FORMAT_CSV;
}

int run_entropy(const std::string& state_path) {
  StateHandle s;
  ebit_status st = ebit_state_load(state_path.c_str(), &s.ptr);
  if (st != EBIT_OK) return fail(st);
  double ebits = 0.0;
  st = ebit_entropy(s.ptr, &ebits);
  if (st != EBIT_OK) return fail(st);
  std::printf("%s\n", format_real(ebits).c_str());
  return 0;
}

int run_schmidt(const std::string& state_path, const std::string& format,
                const std::string& out_path) {
  StateHandle s;
  ebit_status st = ebit_state_load(state_path.c_str(), &s.ptr);
  if (st != EBIT_OK) return fail(st);
  if (to_format(format) == EBIT_FORMAT_JSON) {
    OwnedString text;
    st = ebit_schmidt_json(s.ptr, &text.ptr);
    if (st != EBIT_OK) return fail(st);
    return emit(text.str() + "\n", out_path);
  }
  int64_t da = 0;
  int64_t db = 0;
  st = ebit_state_dims(s.ptr, &da, &db);
  if (st != EBIT_OK) return fail(st);
  std::vector<double> coeffs(static_cast<std::size_t>(da < db ? da : db));
  int64_t count = 0;
  st = ebit_schmidt_coeffs(s.ptr, coeffs.data(), &count);
  if (st != EBIT_OK) return fail(st);
  std::string text = "index,coeff\n";
  for (int64_t i = 0; i < count; ++i) {
    text += std::to_string(i) + ',' +
            format_real(coeffs[static_cast<std::size_t>(i)]) + '\n';
  }
  return emit(text, out_path);
}

int run_concentrate(double p, const std::string& k_text, uint64_t trials,
                    uint64_t seed, const std::string& format,
                    const std::string& out_path) {
  const std::vector<uint64_t> ks = parse_k_list(k_text);
  OwnedString text;
  const ebit_status st = ebit_concentrate_table(
      p, ks.data(), ks.size(), trials, seed, to_format(format), &text.ptr);
  if (st != EBIT_OK) return fail(st);
  std::string body = text.str();
  if (to_format(format) == EBIT_FORMAT_JSON) body += '\n';
  return emit(body, out_path);
}

int run_dilute(double p, uint64_t n, const std::vector<double>& rates,
               const std::string& format, const std::string& out_path) {
  OwnedString text;
  const ebit_status st = ebit_dilution_curve(
      p, n, rates.data(), rates.size(), to_format(format), &text.ptr);
  if (st != EBIT_OK) return fail(st);
  std::string body = text.str();
  if (to_format(format) == EBIT_FORMAT_JSON) body += '\n';
  return emit(body, out_path);
}

int run_ratio(double p, const std::string& k_text, const std::string& format,
              const std::string& out_path) {
  const std::vector<uint64_t> ks = parse_k_list(k_text);
  OwnedString text;
  const ebit_status st =
      ebit_ratio_table(p, ks.data(), ks.size(), to_format(format), &text.ptr);
  if (st != EBIT_OK) return fail(st);
  std::string body = text.str();
  if (to_format(format) == EBIT_FORMAT_JSON) body += '\n';
  return emit(body, out_path);
}

int run_monotone(uint64_t trials, const std::string& dims, int depth,
                 uint64_t seed, const std::string& out_path) {
  int64_t pair[2] = {0, 0};
  parse_dims(dims, pair[0], pair[1]);
  ebit_sweep_summary summary{};
  OwnedString violation;
  const ebit_status st = ebit_monotonicity_sweep(trials, pair, 1, depth, seed,
                                                 &summary, &violation.ptr);
  if (st != EBIT_OK) return fail(st);
  std::printf("%" PRIu64 "/%" PRIu64 " satisfied\n", summary.satisfied,
              summary.trials);
  if (!summary.has_violation) return 0;
  const std::string path =
      out_path.empty() ? "monotonicity_violation.json" : out_path;
  const int rc = emit(violation.str() + "\n", path);
  if (rc != 0) return rc;
  std::fprintf(stderr,
               "ebit: monotonicity violated at trial %" PRIu64
               "; dump written to %s\n",
               summary.violation_trial, path.c_str());
  return 1;
}

int run_measures(uint64_t seed, uint64_t trials, const std::string& out_path) {
  if (out_path.empty()) {
    std::fprintf(stderr, "ebit: measures requires --out <path>\n");
    return 2;
  }
  OwnedString report;
  OwnedString name;
  const ebit_status st =
      ebit_uniqueness_report(seed, 0, trials, &report.ptr, &name.ptr);
  if (st != EBIT_OK) return fail(st);
  const int rc = emit(report.str(), out_path);
  if (rc != 0) return rc;
  std::printf("unique: %s\n", name.str().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement toolkit for bipartite pure states"};
  app.require_subcommand(1);
  int rc = 0;

  const std::string format_hint = "csv|json (default csv)";

  // entropy
  std::string en_state, en_config;
  auto* entropy = app.add_subcommand(
      "entropy", "entropy of entanglement of a state file, in ebits");
  auto* en_state_opt =
      entropy->add_option("--state", en_state, "state JSON path");
  entropy->add_option("--config", en_config, "RunConfig JSON path");
  entropy->callback([&] {
    const json cfg = load_config(en_config, "entropy");
    merge(en_state_opt, cfg, "state", en_state);
    if (en_state.empty()) {
      std::fprintf(stderr, "ebit: entropy requires --state <path>\n");
      throw ExitWith{2};
    }
    rc = run_entropy(en_state);
  });

  // schmidt
  std::string sc_state, sc_format = "csv", sc_out, sc_config;
  auto* schmidt = app.add_subcommand(
      "schmidt", "Schmidt coefficients and rank of a state file");
  auto* sc_state_opt =
      schmidt->add_option("--state", sc_state, "state JSON path");
  auto* sc_format_opt = schmidt->add_option("--format", sc_format, format_hint)
                            ->check(CLI::IsMember({"csv", "json"}));
  auto* sc_out_opt =
      schmidt->add_option("--out", sc_out, "output path (default stdout)");
  schmidt->add_option("--config", sc_config, "RunConfig JSON path");
  schmidt->callback([&] {
    const json cfg = load_config(sc_config, "schmidt");
    merge(sc_state_opt, cfg, "state", sc_state);
    merge(sc_format_opt, cfg, "format", sc_format);
    merge(sc_out_opt, cfg, "output_path", sc_out);
    if (sc_state.empty()) {
      std::fprintf(stderr, "ebit: schmidt requires --state <path>\n");
      throw ExitWith{2};
    }
    rc = run_schmidt(sc_state, sc_format, sc_out);
  });

  // concentrate
  double co_p = 0.5;
  std::string co_k = "1", co_format = "csv", co_out, co_config;
  uint64_t co_trials = 0, co_seed = 0;
  auto* concentrate = app.add_subcommand(
      "concentrate",
      "ebit yield of the collective measurement on k copies (exact, or "
      "sampled with --trials)");
  auto* co_p_opt = concentrate->add_option(
      "--p", co_p, "squared leading Schmidt coefficient in [0,1]");
  auto* co_k_opt = concentrate->add_option(
      "--k", co_k, "copy count or comma list, ascending");
  auto* co_trials_opt = concentrate->add_option(
      "--trials", co_trials, "Monte Carlo trials (0 = exact)");
  auto* co_seed_opt = concentrate->add_option("--seed", co_seed, "RNG seed");
  auto* co_format_opt =
      concentrate->add_option("--format", co_format, format_hint)
          ->check(CLI::IsMember({"csv", "json"}));
  auto* co_out_opt = concentrate->add_option("--out", co_out,
                                             "output path (default stdout)");
  concentrate->add_option("--config", co_config, "RunConfig JSON path");
  concentrate->callback([&] {
    const json cfg = load_config(co_config, "concentrate");
    merge(co_p_opt, cfg, "p", co_p);
    merge_k(co_k_opt, cfg, co_k);
    merge(co_trials_opt, cfg, "trials", co_trials);
    merge(co_format_opt, cfg, "format", co_format);
    merge(co_out_opt, cfg, "output_path", co_out);
    const uint64_t seed = resolve_seed(co_seed_opt, co_seed, cfg);
    rc = run_concentrate(co_p, co_k, co_trials, seed, co_format, co_out);
  });

  // dilute
  double di_p = 0.5;
  uint64_t di_n = 1;
  std::string di_rates, di_format = "csv", di_out, di_config;
  auto* dilute = app.add_subcommand(
      "dilute",
      "fidelity of greedy typical-subspace dilution at target rates");
  auto* di_p_opt = dilute->add_option(
      "--p", di_p, "squared leading Schmidt coefficient in [0,1]");
  auto* di_n_opt = dilute->add_option("--n", di_n, "copy count");
  auto* di_rates_opt = dilute->add_option(
      "--rates", di_rates, "start:stop:step or comma list of rates");
  auto* di_format_opt = dilute->add_option("--format", di_format, format_hint)
                            ->check(CLI::IsMember({"csv", "json"}));
  auto* di_out_opt =
      dilute->add_option("--out", di_out, "output path (default stdout)");
  dilute->add_option("--config", di_config, "RunConfig JSON path");
  dilute->callback([&] {
    const json cfg = load_config(di_config, "dilute");
    merge(di_p_opt, cfg, "p", di_p);
    merge(di_n_opt, cfg, "n", di_n);
    std::vector<double> rates;
    merge_rates(di_rates_opt, cfg, di_rates, rates);
    merge(di_format_opt, cfg, "format", di_format);
    merge(di_out_opt, cfg, "output_path", di_out);
    if (rates.empty()) {
      if (di_rates.empty()) {
        std::fprintf(stderr, "ebit: dilute requires --rates\n");
        throw ExitWith{2};
      }
      rates = parse_rates(di_rates);
    }
    rc = run_dilute(di_p, di_n, rates, di_format, di_out);
  });

  // monotone
  uint64_t mo_trials = 100, mo_seed = 0;
  std::string mo_dims = "2x2", mo_out, mo_config;
  int mo_depth = 4;
  auto* monotone = app.add_subcommand(
      "monotone",
      "random-protocol sweep checking average entanglement never rises");
  auto* mo_trials_opt =
      monotone->add_option("--trials", mo_trials, "number of trials");
  auto* mo_dims_opt =
      monotone->add_option("--dims", mo_dims, "state dimensions AxB");
  auto* mo_depth_opt =
      monotone->add_option("--depth", mo_depth, "maximum protocol depth");
  auto* mo_seed_opt = monotone->add_option("--seed", mo_seed, "RNG seed");
  auto* mo_out_opt = monotone->add_option(
      "--out", mo_out,
      "violation dump path (default monotonicity_violation.json)");
  monotone->add_option("--config", mo_config, "RunConfig JSON path");
  monotone->callback([&] {
    const json cfg = load_config(mo_config, "monotone");
    merge(mo_trials_opt, cfg, "trials", mo_trials);
    merge(mo_dims_opt, cfg, "dims", mo_dims);
    merge(mo_depth_opt, cfg, "depth", mo_depth);
    merge(mo_out_opt, cfg, "output_path", mo_out);
    const uint64_t seed = resolve_seed(mo_seed_opt, mo_seed, cfg);
    rc = run_monotone(mo_trials, mo_dims, mo_depth, seed, mo_out);
  });

  // measures
  uint64_t me_seed = 0, me_trials = 200;
  std::string me_out, me_config;
  auto* measures = app.add_subcommand(
      "measures",
      "axiom pass/fail matrix for the builtin candidate measures");
  auto* me_seed_opt = measures->add_option("--seed", me_seed, "RNG seed");
  auto* me_trials_opt =
      measures->add_option("--trials", me_trials, "trials per sweep axiom");
  auto* me_out_opt =
      measures->add_option("--out", me_out, "report path (required)");
  measures->add_option("--config", me_config, "RunConfig JSON path");
  measures->callback([&] {
    const json cfg = load_config(me_config, "measures");
    merge(me_trials_opt, cfg, "trials", me_trials);
    merge(me_out_opt, cfg, "output_path", me_out);
    const uint64_t seed = resolve_seed(me_seed_opt, me_seed, cfg);
    rc = run_measures(seed, me_trials, me_out);
  });

  // ratio
  double ra_p = 0.5;
  std::string ra_k = "1", ra_format = "csv", ra_out, ra_config;
  auto* ratio = app.add_subcommand(
      "ratio", "per-copy yield and gap to source entropy over k values");
  auto* ra_p_opt = ratio->add_option(
      "--p", ra_p, "squared leading Schmidt coefficient in [0,1]");
  auto* ra_k_opt =
      ratio->add_option("--k", ra_k, "copy count or comma list, ascending");
  auto* ra_format_opt = ratio->add_option("--format", ra_format, format_hint)
                            ->check(CLI::IsMember({"csv", "json"}));
  auto* ra_out_opt =
      ratio->add_option("--out", ra_out, "output path (default stdout)");
  ratio->add_option("--config", ra_config, "RunConfig JSON path");
  ratio->callback([&] {
    const json cfg = load_config(ra_config, "ratio");
    merge(ra_p_opt, cfg, "p", ra_p);
    merge_k(ra_k_opt, cfg, ra_k);
    merge(ra_format_opt, cfg, "format", ra_format);
    merge(ra_out_opt, cfg, "output_path", ra_out);
    rc = run_ratio(ra_p, ra_k, ra_format, ra_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ExitWith& e) {
    return e.code;
  }
  return rc;
}
