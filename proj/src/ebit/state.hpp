#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "ebit/rng.hpp"
#include "ebit/tolerances.hpp"

namespace ebit {

// Largest total amplitude count any construction may produce.  Explicit
// multi-copy states are oracle-scale only; the asymptotic module works
// combinatorially instead.
inline constexpr std::int64_t kDimensionCap = std::int64_t{1} << 20;

// Normalized pure state of an A/B pair, stored as the dense dim_a x dim_b
// complex amplitude matrix M with |psi> = sum_{a,b} M(a,b) |a>|b>.
//
// Composite-index flattening convention, used everywhere: when two A sides
// of dimensions d1, d2 are combined, the joint index is a1*d2 + a2 (first
// factor major); likewise on the B side.
class BipartiteState {
 public:
  // Validates the norm against `norm_tol` (default 1e-12).
  static BipartiteState make(Eigen::MatrixXcd amps, double norm_tol = tol::norm);

  // Rescales to unit norm; rejects the zero matrix.
  static BipartiteState make_normalized(Eigen::MatrixXcd amps);

  Eigen::Index dim_a() const { return amps_.rows(); }
  Eigen::Index dim_b() const { return amps_.cols(); }
  const Eigen::MatrixXcd& amps() const { return amps_; }

 private:
  explicit BipartiteState(Eigen::MatrixXcd amps) : amps_(std::move(amps)) {}
  Eigen::MatrixXcd amps_;
};

// Unit-trace Hermitian PSD operator.
class DensityOperator {
 public:
  // Validates Hermiticity (1e-12), trace (1e-12) and the eigenvalue floor
  // (-1e-10).
  static DensityOperator make(Eigen::MatrixXcd mat);

  // For results that are PSD by construction (e.g. M M^dag); skips the
  // eigenvalue scan but still checks Hermiticity and trace.
  static DensityOperator make_unchecked_psd(Eigen::MatrixXcd mat);

  Eigen::Index dim() const { return mat_.rows(); }
  const Eigen::MatrixXcd& mat() const { return mat_; }

 private:
  explicit DensityOperator(Eigen::MatrixXcd mat) : mat_(std::move(mat)) {}
  Eigen::MatrixXcd mat_;
};

enum class Side { A, B };

// |S> = (|01> - |10>)/sqrt(2)
BipartiteState singlet();

// |a>|b> in dim_a x dim_b
BipartiteState basis_state(Eigen::Index dim_a, Eigen::Index dim_b,
                           Eigen::Index a, Eigen::Index b);

// sqrt(p)|00> + sqrt(1-p)|11>; the canonical two-term Schmidt state.
BipartiteState two_term_state(double p);

// Kronecker combination of independent pairs: the A side of the result is
// A1 (x) A2 and likewise for B, under the flattening convention above.
// Throws CapacityError when the output would exceed kDimensionCap
// amplitudes.
BipartiteState tensor_product(const BipartiteState& s1, const BipartiteState& s2,
                              std::int64_t dimension_cap = kDimensionCap);

// Reduced density operator: side A yields M M^dag, side B yields M^dag M.
DensityOperator partial_trace(const BipartiteState& s, Side side);

// |<s1|s2>|^2; dims must match.
double fidelity(const BipartiteState& s1, const BipartiteState& s2);

// Rotation-invariant random state: i.i.d. standard complex Gaussian
// amplitudes, normalized. Deterministic in the RngSpec.
BipartiteState random_state(Eigen::Index dim_a, Eigen::Index dim_b, RngSpec rng);

}  // namespace ebit
