#include "ebit/measures.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "ebit/asymptotic.hpp"
#include "ebit/errors.hpp"
#include "ebit/schmidt.hpp"

namespace ebit {

namespace {

constexpr double kEqualityTol = 1e-9;
constexpr double kAsymptoticTol = 0.03;
constexpr std::uint64_t kAsymptoticK = 1000;

// Stream bases keep the per-check input sequences disjoint; trial inputs
// sit at base + small multiples of the trial index, so trials are
// order-independent and identical for every candidate.
constexpr std::uint64_t kUnitaryStreamBase = 1'000'000;
constexpr std::uint64_t kMonotonicityStreamBase = 2'000'000;
constexpr std::uint64_t kAdditivityStreamBase = 3'000'000;

constexpr std::array<std::pair<Eigen::Index, Eigen::Index>, 8> kDimsCycle = {{
    {2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}, {4, 2}, {3, 4}, {4, 4},
}};

bool check_unitary_invariance(const CandidateMeasure& c, RngSpec base,
                              std::uint64_t trials, MeasureRecord& rec) {
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto [da, db] = kDimsCycle[t % kDimsCycle.size()];
    const RngSpec state_spec{base.seed, base.stream + kUnitaryStreamBase + 2 * t};
    const RngSpec gate_spec{base.seed,
                            base.stream + kUnitaryStreamBase + 2 * t + 1};
    const BipartiteState s = random_state(da, db, state_spec);
    Rng gates(gate_spec);
    const BipartiteState rotated = apply_unitary(
        apply_unitary(s, LocalOperation::unitary(Side::A, gates.haar_unitary(da))),
        LocalOperation::unitary(Side::B, gates.haar_unitary(db)));
    const double before = c.eval(s);
    const double after = c.eval(rotated);
    if (std::abs(after - before) > kEqualityTol) {
      Counterexample ce;
      ce.axiom = "unitary_invariance";
      ce.rng = state_spec;
      ce.trial = t;
      ce.state = s;
      ce.state_b = rotated;
      ce.expected = before;
      ce.observed = after;
      rec.counterexamples.push_back(std::move(ce));
      return false;
    }
  }
  return true;
}

bool check_monotonicity(const CandidateMeasure& c, RngSpec base,
                        std::uint64_t trials, MeasureRecord& rec) {
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto [da, db] = kDimsCycle[t % kDimsCycle.size()];
    const int depth = 1 + static_cast<int>(t % 4);
    const RngSpec state_spec{base.seed,
                             base.stream + kMonotonicityStreamBase + 2 * t};
    const RngSpec proto_spec{base.seed,
                             base.stream + kMonotonicityStreamBase + 2 * t + 1};
    const BipartiteState s = random_state(da, db, state_spec);
    const Protocol proto = random_protocol(da, db, depth, proto_spec);
    const Ensemble after = run_protocol(s, proto);
    const double before = c.eval(s);
    double avg = 0.0;
    for (const Branch& b : after.branches) {
      avg += b.prob * c.eval(b.state);
    }
    if (avg > before + kEqualityTol) {
      Counterexample ce;
      ce.axiom = "monotonicity";
      ce.rng = proto_spec;
      ce.trial = t;
      ce.state = s;
      ce.protocol = proto;
      ce.expected = before;
      ce.observed = avg;
      rec.counterexamples.push_back(std::move(ce));
      return false;
    }
  }
  return true;
}

bool check_additivity(const CandidateMeasure& c, RngSpec base,
                      std::uint64_t trials, MeasureRecord& rec) {
  for (std::uint64_t t = 0; t < trials; ++t) {
    // Trial 0 is the canonical pair; singlet (x) singlet separates the
    // superlinear rivals by forced arithmetic.
    BipartiteState s1 = singlet();
    BipartiteState s2 = singlet();
    if (t > 0) {
      const auto [da1, db1] = kDimsCycle[t % kDimsCycle.size()];
      const auto [da2, db2] = kDimsCycle[(t + 3) % kDimsCycle.size()];
      s1 = random_state(
          da1, db1,
          RngSpec{base.seed, base.stream + kAdditivityStreamBase + 2 * t});
      s2 = random_state(
          da2, db2,
          RngSpec{base.seed, base.stream + kAdditivityStreamBase + 2 * t + 1});
    }
    const double parts = c.eval(s1) + c.eval(s2);
    const double joint = c.eval(tensor_product(s1, s2));
    if (std::abs(joint - parts) > kEqualityTol) {
      Counterexample ce;
      ce.axiom = "additivity";
      ce.rng = RngSpec{base.seed, base.stream + kAdditivityStreamBase + 2 * t};
      ce.trial = t;
      ce.state = s1;
      ce.state_b = s2;
      ce.expected = parts;
      ce.observed = joint;
      rec.counterexamples.push_back(std::move(ce));
      return false;
    }
  }
  return true;
}

bool check_unit_norm(const CandidateMeasure& c, RngSpec base,
                     MeasureRecord& rec) {
  const BipartiteState s = singlet();
  const double observed = c.eval(s);
  if (std::abs(observed - 1.0) > kEqualityTol) {
    Counterexample ce;
    ce.axiom = "unit_norm";
    ce.rng = base;
    ce.state = s;
    ce.expected = 1.0;
    ce.observed = observed;
    rec.counterexamples.push_back(std::move(ce));
    return false;
  }
  return true;
}

bool check_asymptotic(const CandidateMeasure& c, RngSpec base,
                      MeasureRecord& rec) {
  for (double p : {0.25, 0.5}) {
    const TwoTermSource src(p);
    const double per_copy = concentrate_exact(src, kAsymptoticK).per_copy;
    const BipartiteState s = two_term_state(p);
    const double observed = c.eval(s);
    if (std::abs(observed - per_copy) > kAsymptoticTol) {
      Counterexample ce;
      ce.axiom = "asymptotic";
      ce.rng = base;
      ce.state = s;
      ce.source_p = p;
      ce.copies_k = kAsymptoticK;
      ce.expected = per_copy;
      ce.observed = observed;
      rec.counterexamples.push_back(std::move(ce));
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<CandidateMeasure> builtin_candidates() {
  std::vector<CandidateMeasure> out;
  out.push_back({"entropy",
                 [](const BipartiteState& s) {
                   return entropy_of_entanglement(s).ebits;
                 },
                 1.0});
  out.push_back({"log_rank",
                 [](const BipartiteState& s) {
                   return std::log2(
                       static_cast<double>(schmidt_decompose(s).rank));
                 },
                 1.0});
  out.push_back({"linear_entropy",
                 [](const BipartiteState& s) {
                   const DensityOperator rho = partial_trace(s, Side::A);
                   return 1.0 - (rho.mat() * rho.mat()).trace().real();
                 },
                 0.5});
  out.push_back({"entropy_squared",
                 [](const BipartiteState& s) {
                   const double e = entropy_of_entanglement(s).ebits;
                   return e * e;
                 },
                 1.0});
  out.push_back({"exp_entropy",
                 [](const BipartiteState& s) {
                   const double e = entropy_of_entanglement(s).ebits;
                   return std::exp2(e) - 1.0;
                 },
                 1.0});
  return out;
}

MeasureRecord axiom_suite(const CandidateMeasure& c, RngSpec rng,
                          std::uint64_t trials) {
  if (trials < 1) {
    throw InvalidArgumentError("axiom_suite: trials must be >= 1");
  }
  MeasureRecord rec;
  rec.name = c.name;
  rec.passes_unitary_invariance = check_unitary_invariance(c, rng, trials, rec);
  rec.passes_monotonicity = check_monotonicity(c, rng, trials, rec);
  rec.passes_additivity = check_additivity(c, rng, trials, rec);
  rec.passes_unit_norm = check_unit_norm(c, rng, rec);
  rec.passes_asymptotic = check_asymptotic(c, rng, rec);
  return rec;
}

MeasureReport uniqueness_report(RngSpec rng,
                                const std::vector<CandidateMeasure>& extra,
                                std::uint64_t trials) {
  MeasureReport report;
  report.rng = rng;
  report.trials = trials;
  std::uint64_t builtin_all_pass = 0;
  bool entropy_all_pass = false;
  for (const CandidateMeasure& c : builtin_candidates()) {
    MeasureRecord rec = axiom_suite(c, rng, trials);
    rec.builtin = true;
    if (rec.passes_all()) {
      ++builtin_all_pass;
      if (rec.name == "entropy") entropy_all_pass = true;
    }
    report.records.push_back(std::move(rec));
  }
  for (const CandidateMeasure& c : extra) {
    MeasureRecord rec = axiom_suite(c, rng, trials);
    rec.builtin = false;
    report.records.push_back(std::move(rec));
  }
  if (!entropy_all_pass || builtin_all_pass != 1) {
    throw InvariantError(
        "uniqueness_report: the entropy candidate must be the sole "
        "all-pass builtin");
  }
  return report;
}

}  // namespace ebit
