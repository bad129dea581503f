#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ebit/rng.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/state.hpp"

namespace ebit {

// One local operation on a single side.  Locality is structural: there is
// no representable operation that couples A and B indices.
class LocalOperation {
 public:
  enum class Kind { Unitary, Measurement };

  // Requires U^dag U = I within `tolerance`.
  static LocalOperation unitary(Side side, Eigen::MatrixXcd u,
                                double tolerance = tol::unitary);

  // Requires sum_i K_i^dag K_i = I within `tolerance`.
  static LocalOperation measurement(Side side, std::vector<Eigen::MatrixXcd> kraus,
                                    double tolerance = tol::kraus_complete);

  Side side() const { return side_; }
  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  const Eigen::MatrixXcd& unitary_matrix() const;
  const std::vector<Eigen::MatrixXcd>& kraus_ops() const;

 private:
  LocalOperation(Side side, Kind kind, Eigen::Index dim)
      : side_(side), kind_(kind), dim_(dim) {}
  Side side_;
  Kind kind_;
  Eigen::Index dim_;
  Eigen::MatrixXcd unitary_;
  std::vector<Eigen::MatrixXcd> kraus_;
};

// Probabilistic branch of a measurement or protocol run.  The transcript
// records classical outcome labels in step order.
struct Branch {
  double prob;
  BipartiteState state;
  std::vector<std::string> transcript;
};

struct Ensemble {
  std::vector<Branch> branches;
};

// A step applies to every branch whose transcript starts with `when`
// (empty = unconditional).  Conditioning later steps on earlier outcomes is
// how classical communication enters; there is no separate message channel.
struct ProtocolStep {
  LocalOperation op;
  std::vector<std::string> when;
};

struct Protocol {
  std::vector<ProtocolStep> steps;
};

// amps <- U amps (side A) or amps U^T (side B); norm preserved.
BipartiteState apply_unitary(const BipartiteState& s, const LocalOperation& op);

// Branch i carries prob |K_i psi|^2 and the renormalized post-measurement
// state.  Branches below the pruning threshold are dropped and the
// remaining mass renormalized.
Ensemble apply_measurement(const BipartiteState& s, const LocalOperation& op);

// Depth-first expansion of the protocol's decision tree.  A conditioned
// step whose key matches no live branch is a protocol-definition error.
Ensemble run_protocol(const BipartiteState& s, const Protocol& p);

// sum_i p_i * entropy_of_entanglement(state_i), in ebits.
double average_entanglement(const Ensemble& e);

// Average-entanglement comparison before/after a protocol; per-branch
// values are retained for inspection.
struct MonotonicityReport {
  double before = 0.0;
  double after_avg = 0.0;
  bool satisfied = false;
  double slack = 0.0;
  std::vector<double> branch_probs;
  std::vector<double> branch_ebits;
};

MonotonicityReport monotonicity_check(const BipartiteState& s, const Protocol& p);

// Unconditional protocol of `depth` steps on alternating sides (the first
// side is drawn at random); each step is a Haar-random unitary or a
// complete random Kraus pair with equal probability.
Protocol random_protocol(Eigen::Index dim_a, Eigen::Index dim_b, int depth,
                         RngSpec spec);

// Seeded monotonicity fuzzing.  Trial t derives its state from stream 4t+1
// and its protocol from stream 4t+2, so trials are order-independent.
struct SweepOptions {
  std::uint64_t trials = 0;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> dims_choices;
  int max_depth = 4;
  std::uint64_t seed = 0;
};

struct SweepViolation {
  std::uint64_t trial = 0;
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  int depth = 0;
  RngSpec state_rng;
  RngSpec protocol_rng;
  MonotonicityReport report;
};

struct SweepResult {
  std::uint64_t trials = 0;
  std::uint64_t satisfied = 0;
  std::optional<SweepViolation> first_violation;
};

SweepResult monotonicity_sweep(const SweepOptions& options);

}  // namespace ebit
