#include "ebit/ebit.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "ebit/asymptotic.hpp"
#include "ebit/errors.hpp"
#include "ebit/locc.hpp"
#include "ebit/measures.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/serialize.hpp"
#include "ebit/state.hpp"

struct ebit_state {
  ebit::BipartiteState value;
};
struct ebit_protocol {
  ebit::Protocol value;
};
struct ebit_ensemble {
  ebit::Ensemble value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* msg) {
  if (!cond) throw ebit::InvalidArgumentError(msg);
}

// Single exception-to-status boundary; no exception may cross the ABI.
template <typename Fn>
ebit_status guarded(Fn&& fn) {
  try {
    fn();
    return EBIT_OK;
  } catch (const ebit::ShapeError& e) {
    g_last_error = e.what();
    return EBIT_ERR_SHAPE;
  } catch (const ebit::InvalidArgumentError& e) {
    g_last_error = e.what();
    return EBIT_ERR_INVALID_ARGUMENT;
  } catch (const ebit::InvariantError& e) {
    g_last_error = e.what();
    return EBIT_ERR_INVARIANT;
  } catch (const ebit::CapacityError& e) {
    g_last_error = e.what();
    return EBIT_ERR_CAPACITY;
  } catch (const ebit::ParseError& e) {
    g_last_error = e.what();
    return EBIT_ERR_PARSE;
  } catch (const ebit::IoError& e) {
    g_last_error = e.what();
    return EBIT_ERR_IO;
  } catch (const ebit::ComputeError& e) {
    g_last_error = e.what();
    return EBIT_ERR_COMPUTE;
  } catch (const ebit::ProtocolError& e) {
    g_last_error = e.what();
    return EBIT_ERR_PROTOCOL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EBIT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return EBIT_ERR_INTERNAL;
  }
}

ebit::TwoTermSource make_source(double p) { return ebit::TwoTermSource(p); }

std::vector<std::uint64_t> copy_ks(const uint64_t* ks, size_t k_count) {
  require(ks != nullptr && k_count > 0, "k list must be non-empty");
  return std::vector<std::uint64_t>(ks, ks + k_count);
}

void fill_yield(const ebit::YieldEstimate& est, ebit_yield* out) {
  out->k = est.copies_k;
  out->expected_ebits = est.expected_ebits;
  out->per_copy = est.per_copy;
  out->gap = est.gap;
  out->whole_singlets_per_copy = est.whole_singlets_per_copy;
  out->std_error = est.std_error ? *est.std_error : -1.0;
}

}  // namespace

extern "C" {

const char* ebit_version(void) { return "0.1.0"; }

const char* ebit_status_name(ebit_status status) {
  switch (status) {
    case EBIT_OK:
      return "ok";
    case EBIT_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case EBIT_ERR_SHAPE:
      return "shape";
    case EBIT_ERR_INVARIANT:
      return "invariant";
    case EBIT_ERR_CAPACITY:
      return "capacity";
    case EBIT_ERR_PARSE:
      return "parse";
    case EBIT_ERR_IO:
      return "io";
    case EBIT_ERR_COMPUTE:
      return "compute";
    case EBIT_ERR_PROTOCOL:
      return "protocol";
    case EBIT_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* ebit_last_error(void) { return g_last_error.c_str(); }

void ebit_string_free(char* s) { std::free(s); }

ebit_status ebit_state_create(int64_t dim_a, int64_t dim_b, const double* re_im,
                              ebit_state** out) {
  return guarded([&] {
    require(re_im != nullptr && out != nullptr, "null pointer argument");
    require(dim_a >= 1 && dim_b >= 1, "dims must be >= 1");
    if (dim_a > ebit::kDimensionCap / dim_b) {
      throw ebit::CapacityError("state exceeds the amplitude cap");
    }
    Eigen::MatrixXcd m(dim_a, dim_b);
    size_t i = 0;
    for (Eigen::Index a = 0; a < dim_a; ++a) {
      for (Eigen::Index b = 0; b < dim_b; ++b) {
        m(a, b) = std::complex<double>(re_im[2 * i], re_im[2 * i + 1]);
        ++i;
      }
    }
    if (std::abs(m.norm() - 1.0) > ebit::tol::loader_norm) {
      throw ebit::InvariantError(
          "state norm deviates from 1 beyond the loader bound");
    }
    *out = new ebit_state{ebit::BipartiteState::make_normalized(std::move(m))};
  });
}

ebit_status ebit_state_singlet(ebit_state** out) {
  return guarded([&] {
    require(out != nullptr, "null pointer argument");
    *out = new ebit_state{ebit::singlet()};
  });
}

ebit_status ebit_state_two_term(double p, ebit_state** out) {
  return guarded([&] {
    require(out != nullptr, "null pointer argument");
    *out = new ebit_state{ebit::two_term_state(p)};
  });
}

ebit_status ebit_state_basis(int64_t dim_a, int64_t dim_b, int64_t a, int64_t b,
                             ebit_state** out) {
  return guarded([&] {
    require(out != nullptr, "null pointer argument");
    *out = new ebit_state{ebit::basis_state(dim_a, dim_b, a, b)};
  });
}

ebit_status ebit_state_random(int64_t dim_a, int64_t dim_b, uint64_t seed,
                              uint64_t stream, ebit_state** out) {
  return guarded([&] {
    require(out != nullptr, "null pointer argument");
    *out = new ebit_state{
        ebit::random_state(dim_a, dim_b, ebit::RngSpec{seed, stream})};
  });
}

ebit_status ebit_state_tensor(const ebit_state* s1, const ebit_state* s2,
                              ebit_state** out) {
  return guarded([&] {
    require(s1 != nullptr && s2 != nullptr && out != nullptr,
            "null pointer argument");
    *out = new ebit_state{ebit::tensor_product(s1->value, s2->value)};
  });
}

ebit_status ebit_state_dims(const ebit_state* s, int64_t* dim_a,
                            int64_t* dim_b) {
  return guarded([&] {
    require(s != nullptr && dim_a != nullptr && dim_b != nullptr,
            "null pointer argument");
    *dim_a = s->value.dim_a();
    *dim_b = s->value.dim_b();
  });
}

ebit_status ebit_state_amplitudes(const ebit_state* s, double* re_im) {
  return guarded([&] {
    require(s != nullptr && re_im != nullptr, "null pointer argument");
    size_t i = 0;
    const Eigen::MatrixXcd& m = s->value.amps();
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
      for (Eigen::Index b = 0; b < m.cols(); ++b) {
        re_im[2 * i] = m(a, b).real();
        re_im[2 * i + 1] = m(a, b).imag();
        ++i;
      }
    }
  });
}

ebit_status ebit_state_fidelity(const ebit_state* s1, const ebit_state* s2,
                                double* out) {
  return guarded([&] {
    require(s1 != nullptr && s2 != nullptr && out != nullptr,
            "null pointer argument");
    *out = ebit::fidelity(s1->value, s2->value);
  });
}

ebit_status ebit_state_from_json(const char* json_text, ebit_state** out) {
  return guarded([&] {
    require(json_text != nullptr && out != nullptr, "null pointer argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
      throw ebit::ParseError(std::string("malformed state JSON: ") + e.what());
    }
    *out = new ebit_state{ebit::state_from_json(j)};
  });
}

ebit_status ebit_state_to_json(const ebit_state* s, char** json_out) {
  return guarded([&] {
    require(s != nullptr && json_out != nullptr, "null pointer argument");
    *json_out = dup_string(ebit::state_to_json(s->value).dump(2));
  });
}

ebit_status ebit_state_load(const char* path, ebit_state** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null pointer argument");
    *out = new ebit_state{ebit::load_state(path)};
  });
}

ebit_status ebit_state_save(const ebit_state* s, const char* path) {
  return guarded([&] {
    require(s != nullptr && path != nullptr, "null pointer argument");
    ebit::save_state(s->value, path);
  });
}

void ebit_state_free(ebit_state* s) { delete s; }

ebit_status ebit_entropy(const ebit_state* s, double* ebits) {
  return guarded([&] {
    require(s != nullptr && ebits != nullptr, "null pointer argument");
    *ebits = ebit::entropy_of_entanglement(s->value).ebits;
  });
}

ebit_status ebit_schmidt_rank(const ebit_state* s, int64_t* rank) {
  return guarded([&] {
    require(s != nullptr && rank != nullptr, "null pointer argument");
    *rank = ebit::schmidt_decompose(s->value).rank;
  });
}

ebit_status ebit_schmidt_coeffs(const ebit_state* s, double* coeffs,
                                int64_t* count) {
  return guarded([&] {
    require(s != nullptr && coeffs != nullptr && count != nullptr,
            "null pointer argument");
    const ebit::SchmidtForm form = ebit::schmidt_decompose(s->value);
    for (size_t i = 0; i < form.coeffs.size(); ++i) {
      coeffs[i] = form.coeffs[i];
    }
    *count = static_cast<int64_t>(form.coeffs.size());
  });
}

ebit_status ebit_schmidt_json(const ebit_state* s, char** json_out) {
  return guarded([&] {
    require(s != nullptr && json_out != nullptr, "null pointer argument");
    const ebit::SchmidtForm form = ebit::schmidt_decompose(s->value);
    nlohmann::json j{{"rank", form.rank}, {"coeffs", form.coeffs}};
    *json_out = dup_string(j.dump(2));
  });
}

ebit_status ebit_protocol_from_json(const char* json_text,
                                    ebit_protocol** out) {
  return guarded([&] {
    require(json_text != nullptr && out != nullptr, "null pointer argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
      throw ebit::ParseError(std::string("malformed protocol JSON: ") +
                             e.what());
    }
    *out = new ebit_protocol{ebit::protocol_from_json(j)};
  });
}

ebit_status ebit_protocol_to_json(const ebit_protocol* p, char** json_out) {
  return guarded([&] {
    require(p != nullptr && json_out != nullptr, "null pointer argument");
    *json_out = dup_string(ebit::protocol_to_json(p->value).dump(2));
  });
}

ebit_status ebit_protocol_load(const char* path, ebit_protocol** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null pointer argument");
    *out = new ebit_protocol{ebit::load_protocol(path)};
  });
}

ebit_status ebit_protocol_save(const ebit_protocol* p, const char* path) {
  return guarded([&] {
    require(p != nullptr && path != nullptr, "null pointer argument");
    ebit::save_protocol(p->value, path);
  });
}

ebit_status ebit_protocol_random(int64_t dim_a, int64_t dim_b, int depth,
                                 uint64_t seed, uint64_t stream,
                                 ebit_protocol** out) {
  return guarded([&] {
    require(out != nullptr, "null pointer argument");
    *out = new ebit_protocol{ebit::random_protocol(
        dim_a, dim_b, depth, ebit::RngSpec{seed, stream})};
  });
}

void ebit_protocol_free(ebit_protocol* p) { delete p; }

ebit_status ebit_protocol_run(const ebit_state* s, const ebit_protocol* p,
                              ebit_ensemble** out) {
  return guarded([&] {
    require(s != nullptr && p != nullptr && out != nullptr,
            "null pointer argument");
    *out = new ebit_ensemble{ebit::run_protocol(s->value, p->value)};
  });
}

ebit_status ebit_ensemble_size(const ebit_ensemble* e, int64_t* count) {
  return guarded([&] {
    require(e != nullptr && count != nullptr, "null pointer argument");
    *count = static_cast<int64_t>(e->value.branches.size());
  });
}

ebit_status ebit_ensemble_prob(const ebit_ensemble* e, int64_t index,
                               double* prob) {
  return guarded([&] {
    require(e != nullptr && prob != nullptr, "null pointer argument");
    require(index >= 0 &&
                index < static_cast<int64_t>(e->value.branches.size()),
            "branch index out of range");
    *prob = e->value.branches[static_cast<size_t>(index)].prob;
  });
}

ebit_status ebit_ensemble_state(const ebit_ensemble* e, int64_t index,
                                ebit_state** out) {
  return guarded([&] {
    require(e != nullptr && out != nullptr, "null pointer argument");
    require(index >= 0 &&
                index < static_cast<int64_t>(e->value.branches.size()),
            "branch index out of range");
    *out = new ebit_state{e->value.branches[static_cast<size_t>(index)].state};
  });
}

ebit_status ebit_ensemble_average_entanglement(const ebit_ensemble* e,
                                               double* ebits) {
  return guarded([&] {
    require(e != nullptr && ebits != nullptr, "null pointer argument");
    *ebits = ebit::average_entanglement(e->value);
  });
}

void ebit_ensemble_free(ebit_ensemble* e) { delete e; }

ebit_status ebit_monotonicity_check(const ebit_state* s, const ebit_protocol* p,
                                    ebit_monotonicity_result* out) {
  return guarded([&] {
    require(s != nullptr && p != nullptr && out != nullptr,
            "null pointer argument");
    const ebit::MonotonicityReport rep =
        ebit::monotonicity_check(s->value, p->value);
    out->before = rep.before;
    out->after_avg = rep.after_avg;
    out->satisfied = rep.satisfied ? 1 : 0;
    out->slack = rep.slack;
  });
}

ebit_status ebit_monotonicity_sweep(uint64_t trials, const int64_t* dim_pairs,
                                    size_t pair_count, int max_depth,
                                    uint64_t seed, ebit_sweep_summary* out,
                                    char** violation_json) {
  return guarded([&] {
    require(dim_pairs != nullptr && pair_count > 0 && out != nullptr,
            "null pointer argument");
    ebit::SweepOptions opts;
    opts.trials = trials;
    opts.max_depth = max_depth;
    opts.seed = seed;
    for (size_t i = 0; i < pair_count; ++i) {
      opts.dims_choices.emplace_back(
          static_cast<Eigen::Index>(dim_pairs[2 * i]),
          static_cast<Eigen::Index>(dim_pairs[2 * i + 1]));
    }
    const ebit::SweepResult result = ebit::monotonicity_sweep(opts);
    out->trials = result.trials;
    out->satisfied = result.satisfied;
    out->has_violation = result.first_violation ? 1 : 0;
    out->violation_trial =
        result.first_violation ? result.first_violation->trial : 0;
    if (violation_json != nullptr) {
      *violation_json =
          result.first_violation
              ? dup_string(
                    ebit::sweep_violation_to_json(*result.first_violation)
                        .dump(2))
              : nullptr;
    }
  });
}

ebit_status ebit_source_entropy(double p, double* bits) {
  return guarded([&] {
    require(bits != nullptr, "null pointer argument");
    *bits = make_source(p).entropy();
  });
}

ebit_status ebit_concentrate_exact(double p, uint64_t k, ebit_yield* out) {
  return guarded([&] {
    require(out != nullptr, "null pointer argument");
    fill_yield(ebit::concentrate_exact(make_source(p), k), out);
  });
}

ebit_status ebit_concentrate_sample(double p, uint64_t k, uint64_t trials,
                                    uint64_t seed, uint64_t stream,
                                    ebit_yield* out) {
  return guarded([&] {
    require(out != nullptr, "null pointer argument");
    fill_yield(ebit::concentrate_sample(make_source(p), k, trials,
                                        ebit::RngSpec{seed, stream}),
               out);
  });
}

ebit_status ebit_concentrate_table(double p, const uint64_t* ks, size_t k_count,
                                   uint64_t trials, uint64_t seed,
                                   ebit_format format, char** out) {
  return guarded([&] {
    require(out != nullptr, "null pointer argument");
    const ebit::TwoTermSource src = make_source(p);
    std::vector<ebit::YieldEstimate> rows;
    std::uint64_t stream = 0;
    for (std::uint64_t k : copy_ks(ks, k_count)) {
      rows.push_back(trials == 0
                         ? ebit::concentrate_exact(src, k)
                         : ebit::concentrate_sample(
                               src, k, trials, ebit::RngSpec{seed, stream}));
      ++stream;
    }
    *out = dup_string(format == EBIT_FORMAT_JSON
                          ? ebit::yields_to_json(rows).dump(2)
                          : ebit::yields_to_csv(rows));
  });
}

ebit_status ebit_ratio_table(double p, const uint64_t* ks, size_t k_count,
                             ebit_format format, char** out) {
  return guarded([&] {
    require(out != nullptr, "null pointer argument");
    const std::vector<ebit::RatioRow> rows =
        ebit::ratio_table(make_source(p), copy_ks(ks, k_count));
    *out = dup_string(format == EBIT_FORMAT_JSON
                          ? ebit::ratio_to_json(rows).dump(2)
                          : ebit::ratio_to_csv(rows));
  });
}

ebit_status ebit_dilution_fidelity(double p, uint64_t n, double rate,
                                   double* fidelity) {
  return guarded([&] {
    require(fidelity != nullptr, "null pointer argument");
    *fidelity = ebit::dilution_fidelity(make_source(p), n, rate);
  });
}

ebit_status ebit_dilution_curve(double p, uint64_t n, const double* rates,
                                size_t rate_count, ebit_format format,
                                char** out) {
  return guarded([&] {
    require(rates != nullptr && rate_count > 0 && out != nullptr,
            "null pointer argument");
    const std::vector<double> rs(rates, rates + rate_count);
    const std::vector<ebit::RateFidelityPoint> points =
        ebit::dilution_curve(make_source(p), n, rs);
    *out = dup_string(format == EBIT_FORMAT_JSON
                          ? ebit::dilution_to_json(points).dump(2)
                          : ebit::dilution_to_csv(points));
  });
}

ebit_status ebit_uniqueness_report(uint64_t seed, uint64_t stream,
                                   uint64_t trials, char** report_json,
                                   char** unique_name) {
  return guarded([&] {
    require(report_json != nullptr, "null pointer argument");
    const ebit::MeasureReport report =
        ebit::uniqueness_report(ebit::RngSpec{seed, stream}, {}, trials);
    *report_json = dup_string(ebit::report_to_json(report).dump(2) + "\n");
    if (unique_name != nullptr) {
      std::string name;
      for (const ebit::MeasureRecord& rec : report.records) {
        if (rec.builtin && rec.passes_all()) {
          name = rec.name;
          break;
        }
      }
      *unique_name = dup_string(name);
    }
  });
}

} /* extern "C" */
