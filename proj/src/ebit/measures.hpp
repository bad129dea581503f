#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ebit/locc.hpp"
#include "ebit/rng.hpp"
#include "ebit/state.hpp"

namespace ebit {

// A scalar entanglement functional under test.  expected_unit is the
// value the candidate actually takes on the singlet, which need not be 1.
struct CandidateMeasure {
  std::string name;
  std::function<double(const BipartiteState&)> eval;
  double expected_unit = 1.0;
};

// Replayable witness of one failed axiom check.  The offending inputs are
// embedded (states, protocol) so the violation can be reproduced without
// rerunning the sweep; rng and trial identify where the sweep found it.
struct Counterexample {
  std::string axiom;
  RngSpec rng;
  std::uint64_t trial = 0;
  std::optional<BipartiteState> state;
  std::optional<BipartiteState> state_b;
  std::optional<Protocol> protocol;
  std::optional<double> source_p;
  std::optional<std::uint64_t> copies_k;
  double expected = 0.0;
  double observed = 0.0;
};

struct MeasureRecord {
  std::string name;
  bool builtin = true;
  bool passes_unitary_invariance = false;
  bool passes_monotonicity = false;
  bool passes_additivity = false;
  bool passes_unit_norm = false;
  bool passes_asymptotic = false;
  // First witness per failed axiom, in check order.
  std::vector<Counterexample> counterexamples;

  bool passes_all() const {
    return passes_unitary_invariance && passes_monotonicity &&
           passes_additivity && passes_unit_norm && passes_asymptotic;
  }
};

struct MeasureReport {
  RngSpec rng;
  std::uint64_t trials = 0;
  std::vector<MeasureRecord> records;
};

inline constexpr std::uint64_t kDefaultMeasureTrials = 200;

// Exactly: entropy, log_rank, linear_entropy, entropy_squared, exp_entropy.
std::vector<CandidateMeasure> builtin_candidates();

// Runs the five axiom checks against one candidate.  Inputs for trial t
// are derived from fixed stream offsets of `rng`, so every candidate sees
// the same states, unitaries and protocols.  Failures are data: the record
// carries the first counterexample per failed axiom.
MeasureRecord axiom_suite(const CandidateMeasure& c, RngSpec rng,
                          std::uint64_t trials);

// Full pass/fail matrix for the builtins plus any extra candidates.
// Throws InvariantError unless exactly the entropy candidate passes all
// axioms among the builtins; extras never affect that assertion.
MeasureReport uniqueness_report(RngSpec rng,
                                const std::vector<CandidateMeasure>& extra = {},
                                std::uint64_t trials = kDefaultMeasureTrials);

}  // namespace ebit
