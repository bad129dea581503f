#include "ebit/state.hpp"

#include <cmath>
#include <string>

#include "ebit/errors.hpp"

namespace ebit {

namespace {

void check_dims(Eigen::Index dim_a, Eigen::Index dim_b) {
  if (dim_a < 1 || dim_b < 1) {
    throw InvalidArgumentError("state dimensions must be >= 1");
  }
}

}  // namespace

BipartiteState BipartiteState::make(Eigen::MatrixXcd amps, double norm_tol) {
  check_dims(amps.rows(), amps.cols());
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > norm_tol) {
    throw InvariantError("state norm " + std::to_string(norm) +
                         " deviates from 1 beyond tolerance");
  }
  return BipartiteState(std::move(amps));
}

BipartiteState BipartiteState::make_normalized(Eigen::MatrixXcd amps) {
  check_dims(amps.rows(), amps.cols());
  const double norm = amps.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvariantError("cannot normalize a zero or non-finite amplitude matrix");
  }
  amps /= norm;
  return BipartiteState(std::move(amps));
}

DensityOperator DensityOperator::make(Eigen::MatrixXcd mat) {
  DensityOperator rho = make_unchecked_psd(std::move(mat));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.mat(),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ComputeError("eigenvalue scan failed while validating density operator");
  }
  if (solver.eigenvalues().minCoeff() < tol::psd_floor) {
    throw InvariantError("density operator has an eigenvalue below -1e-10");
  }
  return rho;
}

DensityOperator DensityOperator::make_unchecked_psd(Eigen::MatrixXcd mat) {
  if (mat.rows() != mat.cols() || mat.rows() < 1) {
    throw InvalidArgumentError("density operator must be square and nonempty");
  }
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > tol::hermitian) {
    throw InvariantError("density operator is not Hermitian within 1e-12");
  }
  if (std::abs(mat.trace().real() - 1.0) > tol::trace ||
      std::abs(mat.trace().imag()) > tol::trace) {
    throw InvariantError("density operator trace deviates from 1 beyond 1e-12");
  }
  return DensityOperator(std::move(mat));
}

BipartiteState singlet() {
  Eigen::MatrixXcd amps(2, 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  amps << 0.0, inv_sqrt2, -inv_sqrt2, 0.0;
  return BipartiteState::make_normalized(std::move(amps));
}

BipartiteState basis_state(Eigen::Index dim_a, Eigen::Index dim_b,
                           Eigen::Index a, Eigen::Index b) {
  check_dims(dim_a, dim_b);
  if (a < 0 || a >= dim_a || b < 0 || b >= dim_b) {
    throw InvalidArgumentError("basis index out of range");
  }
  Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(dim_a, dim_b);
  amps(a, b) = 1.0;
  return BipartiteState::make(std::move(amps));
}

BipartiteState two_term_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgumentError("two_term_state: p must lie in [0, 1]");
  }
  Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(2, 2);
  amps(0, 0) = std::sqrt(p);
  amps(1, 1) = std::sqrt(1.0 - p);
  return BipartiteState::make_normalized(std::move(amps));
}

BipartiteState tensor_product(const BipartiteState& s1, const BipartiteState& s2,
                              std::int64_t dimension_cap) {
  const std::int64_t da = static_cast<std::int64_t>(s1.dim_a()) * s2.dim_a();
  const std::int64_t db = static_cast<std::int64_t>(s1.dim_b()) * s2.dim_b();
  if (da <= 0 || db <= 0 || da > dimension_cap || db > dimension_cap ||
      da > dimension_cap / db) {
    throw CapacityError("tensor product exceeds the amplitude-count cap");
  }
  Eigen::MatrixXcd amps(da, db);
  const Eigen::Index da2 = s2.dim_a();
  const Eigen::Index db2 = s2.dim_b();
  for (Eigen::Index a1 = 0; a1 < s1.dim_a(); ++a1) {
    for (Eigen::Index b1 = 0; b1 < s1.dim_b(); ++b1) {
      amps.block(a1 * da2, b1 * db2, da2, db2) = s1.amps()(a1, b1) * s2.amps();
    }
  }
  return BipartiteState::make_normalized(std::move(amps));
}

DensityOperator partial_trace(const BipartiteState& s, Side side) {
  const Eigen::MatrixXcd& m = s.amps();
  Eigen::MatrixXcd rho;
  if (side == Side::A) {
    rho = m * m.adjoint();
  } else {
    rho = m.adjoint() * m;
  }
  // symmetrize away rounding before validation
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();
  return DensityOperator::make_unchecked_psd(std::move(rho));
}

double fidelity(const BipartiteState& s1, const BipartiteState& s2) {
  if (s1.dim_a() != s2.dim_a() || s1.dim_b() != s2.dim_b()) {
    throw ShapeError("fidelity: state dimensions do not match");
  }
  const std::complex<double> overlap = (s1.amps().conjugate().cwiseProduct(s2.amps())).sum();
  return std::norm(overlap);
}

BipartiteState random_state(Eigen::Index dim_a, Eigen::Index dim_b, RngSpec spec) {
  check_dims(dim_a, dim_b);
  Rng rng(spec);
  return BipartiteState::make_normalized(rng.gaussian_matrix(dim_a, dim_b));
}

}  // namespace ebit
