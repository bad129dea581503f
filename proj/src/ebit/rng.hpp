#pragma once

#include <complex>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

namespace ebit {

// Counter-based randomness: every randomized operation takes an RngSpec and
// an identical (seed, stream_index) pair always yields the identical
// sequence.  Sweeps assign one stream per trial so serial and parallel
// execution agree.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Deterministic generator over an RngSpec.  The uniform and Gaussian
// transforms are spelled out here rather than taken from <random>
// distributions, whose algorithms the standard leaves unspecified.
class Rng {
 public:
  explicit Rng(RngSpec spec);

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();

  // Uniform integer in [0, bound), bound >= 1. Rejection sampled.
  std::uint64_t uniform_u64(std::uint64_t bound);

  // Standard normal via Box-Muller; second value of each pair is cached.
  double normal();

  // Re + i*Im with independent standard normal parts (rotation invariant).
  std::complex<double> complex_normal();

  Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

  // Haar-distributed unitary: QR of a Gaussian matrix with the R-diagonal
  // phase ambiguity fixed.
  Eigen::MatrixXcd haar_unitary(Eigen::Index dim);

  // Complete two-outcome Kraus set {K0, K1} obtained by splitting a random
  // isometry dim -> 2*dim into its top and bottom blocks, so that
  // K0^dag K0 + K1^dag K1 = I holds by construction.
  std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> random_kraus_pair(Eigen::Index dim);

 private:
  std::uint64_t state_[4];
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace ebit
