#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ebit/rng.hpp"
#include "ebit/state.hpp"

namespace ebit {

// Largest k accepted by the combinatorial concentration routines.
inline constexpr std::uint64_t kConcentrationBudget = 1'000'000;

// A 2x2 pure source parameterized by one squared Schmidt coefficient;
// local unitaries reduce any 2x2 pure state to this form.
struct TwoTermSource {
  explicit TwoTermSource(double p_in);
  double p;

  // Binary entropy H(p) in bits.
  double entropy() const;
};

enum class YieldMethod { Exact, MonteCarlo };

// Outcome of concentrating k copies collectively: expected ebits extracted,
// the per-copy rate, and its gap to the source entropy.  A rank-D
// maximally entangled block is counted as log2(D) ebits; the
// whole-singlets column applies floor(log2 D) instead.
struct YieldEstimate {
  std::uint64_t copies_k = 0;
  double expected_ebits = 0.0;
  double per_copy = 0.0;
  double gap = 0.0;
  double whole_singlets_per_copy = 0.0;
  YieldMethod method = YieldMethod::Exact;
  std::optional<double> std_error;
};

struct RateFidelityPoint {
  std::uint64_t copies_n = 0;
  double rate = 0.0;
  double fidelity = 0.0;
};

struct RatioRow {
  std::uint64_t copies_k = 0;
  double per_copy = 0.0;
  double gap = 0.0;
};

// One Hamming-weight outcome of the explicit-state oracle.
struct OracleOutcome {
  std::uint64_t weight = 0;
  double prob = 0.0;
  double block_entropy = 0.0;
};

// log2 of the binomial coefficient; exact integer arithmetic up to k = 64,
// log-gamma beyond.
double log2_binomial(std::uint64_t k, std::uint64_t m);

// Binomial(k, p) weight-class distribution, evaluated in log space:
// prob(m) = C(k,m) p^m (1-p)^(k-m).
std::vector<std::pair<std::uint64_t, double>> hamming_distribution(
    const TwoTermSource& src, std::uint64_t k);

// Expected yield of the collective Hamming-weight measurement on k copies:
// sum_m prob(m) log2 C(k,m).
YieldEstimate concentrate_exact(const TwoTermSource& src, std::uint64_t k,
                                std::uint64_t budget = kConcentrationBudget);

// Monte Carlo counterpart: samples m ~ Binomial(k, p) per trial and
// averages log2 C(k,m); std_error is the standard error of expected_ebits.
YieldEstimate concentrate_sample(const TwoTermSource& src, std::uint64_t k,
                                 std::uint64_t trials, RngSpec rng);

// Brute-force check at small k: builds the explicit k-copy state, projects
// the A side onto each Hamming-weight class (weights counted in the
// leading Schmidt component after rotating to Schmidt form), and returns
// outcome probabilities with the entanglement of each post-measurement
// block.  Outcomes of negligible probability are omitted.
std::vector<OracleOutcome> oracle_concentrate(const BipartiteState& state,
                                              std::uint64_t k);

// Fidelity reachable at a target rate by greedy typical-subspace
// truncation: visit weight classes in decreasing probability order (ties:
// smaller |m - n p|, then smaller m) and retain each class iff the
// retained log-dimension per copy stays within the rate.
double dilution_fidelity(const TwoTermSource& src, std::uint64_t n, double rate);

std::vector<RateFidelityPoint> dilution_curve(const TwoTermSource& src,
                                              std::uint64_t n,
                                              const std::vector<double>& rates);

// Convergence table for ascending k values: per-copy yield and its gap to
// the source entropy.
std::vector<RatioRow> ratio_table(const TwoTermSource& src,
                                  const std::vector<std::uint64_t>& k_values);

}  // namespace ebit
