#include "ebit/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ebit/errors.hpp"

namespace ebit {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(RngSpec spec) {
  std::uint64_t sm = mix64(spec.seed + 0x9E3779B97F4A7C15ULL) ^
                     mix64(spec.stream + 0x3C6EF372FE94F82AULL);
  bool all_zero = true;
  for (auto& word : state_) {
    sm += 0x9E3779B97F4A7C15ULL;
    word = mix64(sm);
    all_zero = all_zero && word == 0;
  }
  if (all_zero) {
    state_[0] = 1;  // xoshiro forbids the all-zero state
  }
}

// xoshiro256**
std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_u64(std::uint64_t bound) {
  if (bound == 0) {
    throw InvalidArgumentError("uniform_u64: bound must be positive");
  }
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max % bound + 1) % bound;  // 2^64 mod bound
  while (true) {
    const std::uint64_t x = next_u64();
    if (rem == 0 || x <= max - rem) {
      return x % bound;
    }
  }
}

double Rng::normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  have_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::complex<double> Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Eigen::MatrixXcd Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(r, c) = complex_normal();
    }
  }
  return out;
}

Eigen::MatrixXcd Rng::haar_unitary(Eigen::Index dim) {
  if (dim < 1) {
    throw InvalidArgumentError("haar_unitary: dim must be >= 1");
  }
  const Eigen::MatrixXcd g = gaussian_matrix(dim, dim);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::complex<double> rii = r(i, i);
    const double mag = std::abs(rii);
    q.col(i) *= mag > 0.0 ? rii / mag : std::complex<double>(1.0, 0.0);
  }
  return q;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> Rng::random_kraus_pair(Eigen::Index dim) {
  const Eigen::MatrixXcd u = haar_unitary(2 * dim);
  const Eigen::MatrixXcd isometry = u.leftCols(dim);
  return {isometry.topRows(dim), isometry.bottomRows(dim)};
}

}  // namespace ebit
