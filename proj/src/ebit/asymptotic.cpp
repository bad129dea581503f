#include "ebit/asymptotic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ebit/errors.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/tolerances.hpp"

namespace ebit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

// Exact C(k,m) for k <= 64; C(64,32) still fits in 64 bits.
std::uint64_t binomial_exact(std::uint64_t k, std::uint64_t m) {
  if (m > k - m) m = k - m;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= m; ++i) {
    c = c * (k - m + i) / i;
  }
  return static_cast<std::uint64_t>(c);
}

// Natural log of C(k,m).  The inner sum is grouped so the m <-> k-m
// symmetry is preserved bit for bit, which keeps genuinely tied weight
// classes tied in floating point.
double ln_binomial(std::uint64_t k, std::uint64_t m) {
  if (m > k) {
    throw InvalidArgumentError("ln_binomial: m exceeds k");
  }
  if (k <= 64) {
    return std::log(static_cast<double>(binomial_exact(k, m)));
  }
  return std::lgamma(static_cast<double>(k) + 1.0) -
         (std::lgamma(static_cast<double>(m) + 1.0) +
          std::lgamma(static_cast<double>(k - m) + 1.0));
}

constexpr double kLn2 = 0.6931471805599453;

// ln of the Binomial(k, p) mass at m, -inf at impossible outcomes.
double ln_binomial_prob(std::uint64_t k, std::uint64_t m, double p) {
  if (p <= 0.0) return m == 0 ? 0.0 : kNegInf;
  if (p >= 1.0) return m == k ? 0.0 : kNegInf;
  const double lp = std::log(p);
  const double lq = std::log(1.0 - p);
  return ln_binomial(k, m) + static_cast<double>(m) * lp +
         static_cast<double>(k - m) * lq;
}

double log2_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

std::uint64_t sample_binomial(Rng& rng, std::uint64_t k, double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return k;
  const double u = rng.uniform();
  std::uint64_t mode = static_cast<std::uint64_t>(
      std::floor((static_cast<double>(k) + 1.0) * p));
  if (mode > k) mode = k;
  double cum = std::exp(ln_binomial_prob(k, mode, p));
  if (u <= cum) return mode;
  // Expand outward from the mode with pmf ratio recurrences.
  const double odds = p / (1.0 - p);
  double p_hi = cum;
  double p_lo = cum;
  std::uint64_t hi = mode;
  std::uint64_t lo = mode;
  while (lo > 0 || hi < k) {
    if (hi < k) {
      p_hi *= static_cast<double>(k - hi) / static_cast<double>(hi + 1) * odds;
      ++hi;
      cum += p_hi;
      if (u <= cum) return hi;
    }
    if (lo > 0) {
      p_lo *= static_cast<double>(lo) / static_cast<double>(k - lo + 1) / odds;
      --lo;
      cum += p_lo;
      if (u <= cum) return lo;
    }
  }
  return mode;  // residual rounding mass
}

}  // namespace

TwoTermSource::TwoTermSource(double p_in) : p(p_in) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgumentError("TwoTermSource: p must lie in [0, 1]");
  }
}

double TwoTermSource::entropy() const { return binary_entropy(p); }

double log2_binomial(std::uint64_t k, std::uint64_t m) {
  return ln_binomial(k, m) / kLn2;
}

std::vector<std::pair<std::uint64_t, double>> hamming_distribution(
    const TwoTermSource& src, std::uint64_t k) {
  if (k < 1) {
    throw InvalidArgumentError("hamming_distribution: k must be >= 1");
  }
  std::vector<std::pair<std::uint64_t, double>> dist;
  dist.reserve(k + 1);
  for (std::uint64_t m = 0; m <= k; ++m) {
    const double lnp = ln_binomial_prob(k, m, src.p);
    dist.emplace_back(m, lnp == kNegInf ? 0.0 : std::exp(lnp));
  }
  return dist;
}

YieldEstimate concentrate_exact(const TwoTermSource& src, std::uint64_t k,
                                std::uint64_t budget) {
  if (k < 1) {
    throw InvalidArgumentError("concentrate_exact: k must be >= 1");
  }
  if (k > budget) {
    throw CapacityError("concentrate_exact: k exceeds the combinatorics budget");
  }
  double expected = 0.0;
  double whole = 0.0;
  for (std::uint64_t m = 0; m <= k; ++m) {
    const double lnp = ln_binomial_prob(k, m, src.p);
    if (lnp == kNegInf) continue;
    const double prob = std::exp(lnp);
    const double bits = log2_binomial(k, m);
    expected += prob * bits;
    whole += prob * std::floor(bits + 1e-9);
  }
  YieldEstimate est;
  est.copies_k = k;
  est.expected_ebits = expected;
  est.per_copy = expected / static_cast<double>(k);
  est.gap = src.entropy() - est.per_copy;
  est.whole_singlets_per_copy = whole / static_cast<double>(k);
  est.method = YieldMethod::Exact;
  return est;
}

YieldEstimate concentrate_sample(const TwoTermSource& src, std::uint64_t k,
                                 std::uint64_t trials, RngSpec spec) {
  if (k < 1) {
    throw InvalidArgumentError("concentrate_sample: k must be >= 1");
  }
  if (trials < 1) {
    throw InvalidArgumentError("concentrate_sample: trials must be >= 1");
  }
  Rng rng(spec);
  double sum = 0.0;
  double sum_sq = 0.0;
  double whole = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t m = sample_binomial(rng, k, src.p);
    const double bits = log2_binomial(k, m);
    sum += bits;
    sum_sq += bits * bits;
    whole += std::floor(bits + 1e-9);
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  YieldEstimate est;
  est.copies_k = k;
  est.expected_ebits = mean;
  est.per_copy = mean / static_cast<double>(k);
  est.gap = src.entropy() - est.per_copy;
  est.whole_singlets_per_copy = whole / n / static_cast<double>(k);
  est.method = YieldMethod::MonteCarlo;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
  } else {
    est.std_error = 0.0;
  }
  return est;
}

std::vector<OracleOutcome> oracle_concentrate(const BipartiteState& state,
                                              std::uint64_t k) {
  if (state.dim_a() != 2 || state.dim_b() != 2) {
    throw ShapeError("oracle_concentrate: source must be a 2x2 state");
  }
  if (k < 1 || k > 10) {
    throw CapacityError("oracle_concentrate: k must lie in [1, 10]");
  }
  // Rotate to Schmidt form first; the Hamming weight counts copies living
  // in the leading Schmidt component.
  const SchmidtForm form = schmidt_decompose(state);
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
  diag(0, 0) = form.coeffs[0];
  diag(1, 1) = form.coeffs[1];
  const BipartiteState base = BipartiteState::make_normalized(std::move(diag));

  BipartiteState power = base;
  for (std::uint64_t copy = 1; copy < k; ++copy) {
    power = tensor_product(power, base);
  }

  const Eigen::Index dim = power.dim_a();
  std::vector<OracleOutcome> outcomes;
  for (std::uint64_t m = 0; m <= k; ++m) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index a = 0; a < dim; ++a) {
      const std::uint64_t heavy =
          k - std::popcount(static_cast<std::uint64_t>(a));
      if (heavy == m) rows.push_back(a);
    }
    Eigen::MatrixXcd block(static_cast<Eigen::Index>(rows.size()),
                           power.dim_b());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      block.row(static_cast<Eigen::Index>(r)) = power.amps().row(rows[r]);
    }
    const double prob = block.squaredNorm();
    if (prob < tol::branch_prune) continue;
    const BipartiteState post = BipartiteState::make_normalized(std::move(block));
    const double entropy = vn_entropy(partial_trace(post, Side::A));
    outcomes.push_back(OracleOutcome{m, prob, entropy});
  }
  return outcomes;
}

double dilution_fidelity(const TwoTermSource& src, std::uint64_t n, double rate) {
  if (n < 1) {
    throw InvalidArgumentError("dilution_fidelity: n must be >= 1");
  }
  if (!(rate >= 0.0)) {
    throw InvalidArgumentError("dilution_fidelity: rate must be >= 0");
  }
  struct WeightClass {
    std::uint64_t m;
    double prob;
    double log2_dim;
    double mode_distance;
  };
  std::vector<WeightClass> classes;
  classes.reserve(n + 1);
  for (std::uint64_t m = 0; m <= n; ++m) {
    const double lnp = ln_binomial_prob(n, m, src.p);
    classes.push_back(WeightClass{
        m, lnp == kNegInf ? 0.0 : std::exp(lnp), log2_binomial(n, m),
        std::abs(static_cast<double>(m) - static_cast<double>(n) * src.p)});
  }
  std::sort(classes.begin(), classes.end(),
            [](const WeightClass& x, const WeightClass& y) {
              if (x.prob != y.prob) return x.prob > y.prob;
              if (x.mode_distance != y.mode_distance)
                return x.mode_distance < y.mode_distance;
              return x.m < y.m;
            });
  const double budget = rate * static_cast<double>(n);
  double retained_log2_dim = kNegInf;
  double mass = 0.0;
  for (const WeightClass& wc : classes) {
    const double with_class = log2_add(retained_log2_dim, wc.log2_dim);
    if (with_class <= budget + 1e-9) {
      retained_log2_dim = with_class;
      mass += wc.prob;
    }
  }
  return std::min(mass, 1.0);
}

std::vector<RateFidelityPoint> dilution_curve(const TwoTermSource& src,
                                              std::uint64_t n,
                                              const std::vector<double>& rates) {
  std::vector<RateFidelityPoint> points;
  points.reserve(rates.size());
  for (double rate : rates) {
    points.push_back(RateFidelityPoint{n, rate, dilution_fidelity(src, n, rate)});
  }
  return points;
}

std::vector<RatioRow> ratio_table(const TwoTermSource& src,
                                  const std::vector<std::uint64_t>& k_values) {
  if (!std::is_sorted(k_values.begin(), k_values.end())) {
    throw InvalidArgumentError("ratio_table: k values must be ascending");
  }
  std::vector<RatioRow> rows;
  rows.reserve(k_values.size());
  for (std::uint64_t k : k_values) {
    const YieldEstimate est = concentrate_exact(src, k);
    rows.push_back(RatioRow{k, est.per_copy, est.gap});
  }
  return rows;
}

}  // namespace ebit
