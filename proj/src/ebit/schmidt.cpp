#include "ebit/schmidt.hpp"

#include <cmath>
#include <string>

#include "ebit/errors.hpp"

namespace ebit {

namespace {

double entropy_of_probability(double p) {
  return p > 0.0 ? -p * std::log2(p) : 0.0;
}

}  // namespace

SchmidtForm schmidt_decompose(const BipartiteState& s, double rank_tolerance) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s.amps(),
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw ComputeError("SVD failed to converge in schmidt_decompose");
  }
  SchmidtForm form;
  const auto& sv = svd.singularValues();
  form.coeffs.assign(sv.data(), sv.data() + sv.size());
  form.basis_a = svd.matrixU();
  // Eigen factors M = U S V^adjoint; the stored convention is
  // M = basis_a diag basis_b^T, so basis_b is the conjugate of V.
  form.basis_b = svd.matrixV().conjugate();
  form.rank = 0;
  for (double c : form.coeffs) {
    if (c > rank_tolerance) {
      ++form.rank;
    }
  }
  return form;
}

double shannon_entropy(const std::vector<double>& probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (p < tol::prob_floor) {
      throw InvariantError("shannon_entropy: probability below -1e-12");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::prob_sum) {
    throw InvariantError("shannon_entropy: probabilities sum to " +
                         std::to_string(sum) + ", not 1 within 1e-9");
  }
  double h = 0.0;
  for (double p : probs) {
    const double clamped = std::min(std::max(p, 0.0), 1.0);
    h += entropy_of_probability(clamped);
  }
  return h;
}

EntanglementValue entropy_of_entanglement(const BipartiteState& s) {
  // Only the singular values are needed here.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s.amps());
  if (svd.info() != Eigen::Success) {
    throw ComputeError("SVD failed to converge in entropy_of_entanglement");
  }
  const auto& sv = svd.singularValues();
  std::vector<double> probs(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    probs[static_cast<std::size_t>(i)] = sv(i) * sv(i);
  }
  return EntanglementValue{shannon_entropy(probs)};
}

double vn_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.mat(),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ComputeError("eigendecomposition failed in vn_entropy");
  }
  double h = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    double lambda = solver.eigenvalues()(i);
    if (lambda < 0.0) {
      if (lambda < tol::psd_floor) {
        throw InvariantError("vn_entropy: eigenvalue below -1e-10");
      }
      lambda = 0.0;
    }
    h += entropy_of_probability(std::min(lambda, 1.0));
  }
  return std::max(h, 0.0);
}

}  // namespace ebit
