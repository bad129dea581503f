#include "ebit/locc.hpp"

#include <cmath>
#include <string>

#include "ebit/errors.hpp"

namespace ebit {

namespace {

void check_side_dim(const BipartiteState& s, const LocalOperation& op) {
  const Eigen::Index side_dim = op.side() == Side::A ? s.dim_a() : s.dim_b();
  if (op.dim() != side_dim) {
    throw ShapeError("operation dimension " + std::to_string(op.dim()) +
                     " does not match side dimension " + std::to_string(side_dim));
  }
}

Eigen::MatrixXcd apply_on_side(const Eigen::MatrixXcd& amps, Side side,
                               const Eigen::MatrixXcd& m) {
  if (side == Side::A) {
    return m * amps;
  }
  return amps * m.transpose();
}

// Expand one branch through a measurement, pruning tiny outcomes and
// renormalizing the conditional mass.
void expand_branch(const Branch& parent, const LocalOperation& op,
                   std::vector<Branch>& out) {
  const auto& kraus = op.kraus_ops();
  std::vector<Branch> children;
  children.reserve(kraus.size());
  double kept_mass = 0.0;
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    Eigen::MatrixXcd post = apply_on_side(parent.state.amps(), op.side(), kraus[i]);
    const double prob = post.squaredNorm();
    if (prob < tol::branch_prune) {
      continue;
    }
    kept_mass += prob;
    Branch child{prob, BipartiteState::make_normalized(std::move(post)),
                 parent.transcript};
    child.transcript.push_back(std::to_string(i));
    children.push_back(std::move(child));
  }
  for (auto& child : children) {
    child.prob = parent.prob * (child.prob / kept_mass);
    out.push_back(std::move(child));
  }
}

}  // namespace

LocalOperation LocalOperation::unitary(Side side, Eigen::MatrixXcd u,
                                       double tolerance) {
  if (u.rows() != u.cols() || u.rows() < 1) {
    throw InvalidArgumentError("unitary must be square and nonempty");
  }
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  const Eigen::MatrixXcd identity =
      Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if ((gram - identity).cwiseAbs().maxCoeff() > tolerance) {
    throw InvariantError("matrix is not unitary within tolerance");
  }
  LocalOperation op(side, Kind::Unitary, u.rows());
  op.unitary_ = std::move(u);
  return op;
}

LocalOperation LocalOperation::measurement(Side side,
                                           std::vector<Eigen::MatrixXcd> kraus,
                                           double tolerance) {
  if (kraus.empty()) {
    throw InvalidArgumentError("measurement needs at least one Kraus operator");
  }
  const Eigen::Index dim = kraus.front().rows();
  if (dim < 1) {
    throw InvalidArgumentError("Kraus operators must be nonempty");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& k : kraus) {
    if (k.rows() != dim || k.cols() != dim) {
      throw ShapeError("Kraus operators must share one square dimension");
    }
    sum += k.adjoint() * k;
  }
  if ((sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() >
      tolerance) {
    throw InvariantError("Kraus set is not complete within tolerance");
  }
  LocalOperation op(side, Kind::Measurement, dim);
  op.kraus_ = std::move(kraus);
  return op;
}

const Eigen::MatrixXcd& LocalOperation::unitary_matrix() const {
  if (kind_ != Kind::Unitary) {
    throw InvalidArgumentError("operation is not a unitary");
  }
  return unitary_;
}

const std::vector<Eigen::MatrixXcd>& LocalOperation::kraus_ops() const {
  if (kind_ != Kind::Measurement) {
    throw InvalidArgumentError("operation is not a measurement");
  }
  return kraus_;
}

BipartiteState apply_unitary(const BipartiteState& s, const LocalOperation& op) {
  if (op.kind() != LocalOperation::Kind::Unitary) {
    throw InvalidArgumentError("apply_unitary requires a unitary operation");
  }
  check_side_dim(s, op);
  return BipartiteState::make_normalized(
      apply_on_side(s.amps(), op.side(), op.unitary_matrix()));
}

Ensemble apply_measurement(const BipartiteState& s, const LocalOperation& op) {
  if (op.kind() != LocalOperation::Kind::Measurement) {
    throw InvalidArgumentError("apply_measurement requires a measurement");
  }
  check_side_dim(s, op);
  Ensemble out;
  expand_branch(Branch{1.0, s, {}}, op, out.branches);
  return out;
}

Ensemble run_protocol(const BipartiteState& s, const Protocol& p) {
  Ensemble current;
  current.branches.push_back(Branch{1.0, s, {}});
  for (std::size_t step_index = 0; step_index < p.steps.size(); ++step_index) {
    const ProtocolStep& step = p.steps[step_index];
    Ensemble next;
    next.branches.reserve(current.branches.size());
    bool matched = false;
    for (Branch& branch : current.branches) {
      const bool applies =
          step.when.empty() ||
          (step.when.size() <= branch.transcript.size() &&
           std::equal(step.when.begin(), step.when.end(), branch.transcript.begin()));
      if (!applies) {
        next.branches.push_back(std::move(branch));
        continue;
      }
      matched = true;
      check_side_dim(branch.state, step.op);
      if (step.op.kind() == LocalOperation::Kind::Unitary) {
        branch.state = apply_unitary(branch.state, step.op);
        next.branches.push_back(std::move(branch));
      } else {
        expand_branch(branch, step.op, next.branches);
      }
    }
    if (!step.when.empty() && !matched) {
      throw ProtocolError("step " + std::to_string(step_index) +
                          " conditions on a transcript no branch can reach");
    }
    current = std::move(next);
  }
  return current;
}

double average_entanglement(const Ensemble& e) {
  double avg = 0.0;
  for (const Branch& branch : e.branches) {
    avg += branch.prob * entropy_of_entanglement(branch.state).ebits;
  }
  return avg;
}

MonotonicityReport monotonicity_check(const BipartiteState& s, const Protocol& p) {
  MonotonicityReport report;
  report.before = entropy_of_entanglement(s).ebits;
  const Ensemble ensemble = run_protocol(s, p);
  report.branch_probs.reserve(ensemble.branches.size());
  report.branch_ebits.reserve(ensemble.branches.size());
  double after = 0.0;
  for (const Branch& branch : ensemble.branches) {
    const double e = entropy_of_entanglement(branch.state).ebits;
    report.branch_probs.push_back(branch.prob);
    report.branch_ebits.push_back(e);
    after += branch.prob * e;
  }
  report.after_avg = after;
  report.satisfied = after <= report.before + tol::monotonicity;
  report.slack = report.before - after;
  return report;
}

Protocol random_protocol(Eigen::Index dim_a, Eigen::Index dim_b, int depth,
                         RngSpec spec) {
  if (depth < 0) {
    throw InvalidArgumentError("random_protocol: depth must be >= 0");
  }
  if (dim_a < 1 || dim_b < 1) {
    throw InvalidArgumentError("random_protocol: dims must be >= 1");
  }
  Rng rng(spec);
  Protocol protocol;
  protocol.steps.reserve(static_cast<std::size_t>(depth));
  Side side = rng.uniform_u64(2) == 0 ? Side::A : Side::B;
  for (int i = 0; i < depth; ++i) {
    const Eigen::Index dim = side == Side::A ? dim_a : dim_b;
    const bool make_unitary = rng.uniform_u64(2) == 0;
    if (make_unitary) {
      protocol.steps.push_back(
          ProtocolStep{LocalOperation::unitary(side, rng.haar_unitary(dim)), {}});
    } else {
      auto [k0, k1] = rng.random_kraus_pair(dim);
      protocol.steps.push_back(ProtocolStep{
          LocalOperation::measurement(side, {std::move(k0), std::move(k1)}), {}});
    }
    side = side == Side::A ? Side::B : Side::A;
  }
  return protocol;
}

SweepResult monotonicity_sweep(const SweepOptions& options) {
  if (options.trials < 1) {
    throw InvalidArgumentError("monotonicity_sweep: trials must be >= 1");
  }
  if (options.dims_choices.empty()) {
    throw InvalidArgumentError("monotonicity_sweep: no dimension choices");
  }
  if (options.max_depth < 0) {
    throw InvalidArgumentError("monotonicity_sweep: max_depth must be >= 0");
  }
  SweepResult result;
  result.trials = options.trials;
  for (std::uint64_t t = 0; t < options.trials; ++t) {
    Rng meta(RngSpec{options.seed, 4 * t});
    const auto& dims =
        options.dims_choices[meta.uniform_u64(options.dims_choices.size())];
    const int depth =
        options.max_depth == 0
            ? 0
            : static_cast<int>(1 + meta.uniform_u64(
                                       static_cast<std::uint64_t>(options.max_depth)));
    const RngSpec state_rng{options.seed, 4 * t + 1};
    const RngSpec protocol_rng{options.seed, 4 * t + 2};
    const BipartiteState state = random_state(dims.first, dims.second, state_rng);
    const Protocol protocol =
        random_protocol(dims.first, dims.second, depth, protocol_rng);
    MonotonicityReport report = monotonicity_check(state, protocol);
    if (report.satisfied) {
      ++result.satisfied;
    } else if (!result.first_violation) {
      result.first_violation = SweepViolation{
          t, dims.first, dims.second, depth, state_rng, protocol_rng,
          std::move(report)};
    }
  }
  return result;
}

}  // namespace ebit
