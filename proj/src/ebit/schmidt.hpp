#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ebit/state.hpp"
#include "ebit/tolerances.hpp"

namespace ebit {

// Schmidt decomposition of an amplitude matrix M:
//   M = basis_a * diag(coeffs) * basis_b^T
// with unitary local bases and coefficients sorted descending.  Among equal
// coefficients the basis choice follows the underlying factorization;
// nothing downstream may depend on it (the entropy does not).
struct SchmidtForm {
  std::vector<double> coeffs;
  Eigen::MatrixXcd basis_a;
  Eigen::MatrixXcd basis_b;
  Eigen::Index rank = 0;
};

// Entanglement in ebits; one ebit is the entanglement of one singlet.
struct EntanglementValue {
  double ebits = 0.0;
};

SchmidtForm schmidt_decompose(const BipartiteState& s,
                              double rank_tolerance = tol::schmidt_rank);

// -sum p log2 p with 0 log 0 = 0.  Entries must be >= -1e-12 and sum to 1
// within 1e-9; they are clamped into [0, 1] before evaluation.
double shannon_entropy(const std::vector<double>& probs);

// Shannon entropy of the squared Schmidt coefficients; equals the von
// Neumann entropy of either reduced density operator.
EntanglementValue entropy_of_entanglement(const BipartiteState& s);

// -sum lambda log2 lambda over the spectrum.  Eigenvalues in [-1e-10, 0)
// are clamped to zero; anything lower is an error, not noise.
double vn_entropy(const DensityOperator& rho);

}  // namespace ebit
