#include <cmath>
#include <vector>

#include "doctest.h"

#include "ebit/errors.hpp"
#include "ebit/locc.hpp"
#include "ebit/rng.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/state.hpp"

using namespace ebit;

namespace {
// Binary entropy of 1/4, from an independent high-precision evaluation.
const double kH25 = 0.81127812445913283;
}

TEST_CASE("unit values: singlet is one ebit, products are zero") {
  CHECK(std::abs(entropy_of_entanglement(singlet()).ebits - 1.0) < 1e-12);
  CHECK(std::abs(entropy_of_entanglement(basis_state(2, 2, 0, 0)).ebits) <
        1e-12);
  CHECK(std::abs(entropy_of_entanglement(basis_state(5, 3, 4, 2)).ebits) <
        1e-12);
}

TEST_CASE("two-term state carries the binary entropy") {
  CHECK(std::abs(entropy_of_entanglement(two_term_state(0.25)).ebits - kH25) <
        1e-12);
  CHECK(std::abs(entropy_of_entanglement(two_term_state(0.5)).ebits - 1.0) <
        1e-12);
  CHECK(std::abs(entropy_of_entanglement(two_term_state(0.0)).ebits) < 1e-12);
}

TEST_CASE("schmidt_decompose reconstructs the amplitude matrix") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    const BipartiteState s = random_state(2 + t % 4, 2 + (t + 2) % 4,
                                          RngSpec{17, t});
    const SchmidtForm form = schmidt_decompose(s);
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(s.dim_a(), s.dim_b());
    for (Eigen::Index i = 0;
         i < static_cast<Eigen::Index>(form.coeffs.size()); ++i) {
      diag(i, i) = form.coeffs[static_cast<std::size_t>(i)];
    }
    const Eigen::MatrixXcd rebuilt =
        form.basis_a * diag * form.basis_b.transpose();
    CHECK((rebuilt - s.amps()).norm() < 1e-10);
    // Bases are unitary.
    CHECK((form.basis_a.adjoint() * form.basis_a -
           Eigen::MatrixXcd::Identity(s.dim_a(), s.dim_a()))
              .norm() < 1e-10);
    CHECK((form.basis_b.adjoint() * form.basis_b -
           Eigen::MatrixXcd::Identity(s.dim_b(), s.dim_b()))
              .norm() < 1e-10);
  }
}

TEST_CASE("schmidt coefficients are descending and square-sum to one") {
  const BipartiteState s = random_state(5, 7, RngSpec{23, 0});
  const SchmidtForm form = schmidt_decompose(s);
  CHECK(form.coeffs.size() == 5);
  double sum = 0.0;
  for (std::size_t i = 0; i < form.coeffs.size(); ++i) {
    if (i > 0) CHECK(form.coeffs[i] <= form.coeffs[i - 1]);
    sum += form.coeffs[i] * form.coeffs[i];
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("schmidt rank") {
  CHECK(schmidt_decompose(basis_state(4, 4, 1, 2)).rank == 1);
  CHECK(schmidt_decompose(singlet()).rank == 2);
  CHECK(schmidt_decompose(two_term_state(1.0)).rank == 1);
  CHECK(schmidt_decompose(random_state(3, 5, RngSpec{5, 5})).rank == 3);
}

TEST_CASE("SVD entropy equals partial-trace eigenvalue entropy") {
  for (std::uint64_t t = 0; t < 25; ++t) {
    const BipartiteState s =
        random_state(2 + t % 7, 2 + (3 * t) % 7, RngSpec{29, t});
    const double via_svd = entropy_of_entanglement(s).ebits;
    const double via_trace = vn_entropy(partial_trace(s, Side::A));
    CHECK(std::abs(via_svd - via_trace) < 1e-10);
  }
}

TEST_CASE("entropy is invariant under local unitaries") {
  Rng rng(RngSpec{31, 0});
  for (std::uint64_t t = 0; t < 10; ++t) {
    const BipartiteState s = random_state(4, 3, RngSpec{31, 100 + t});
    const BipartiteState rotated = apply_unitary(
        apply_unitary(s, LocalOperation::unitary(Side::A, rng.haar_unitary(4))),
        LocalOperation::unitary(Side::B, rng.haar_unitary(3)));
    CHECK(std::abs(entropy_of_entanglement(rotated).ebits -
                   entropy_of_entanglement(s).ebits) < 1e-10);
  }
}

TEST_CASE("shannon_entropy") {
  CHECK(shannon_entropy({0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(shannon_entropy({1.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(shannon_entropy({0.5, 0.5, 0.5}), InvariantError);
  CHECK_THROWS_AS(shannon_entropy({1.5, -0.5}), InvariantError);
  // Tiny negatives are rounding noise, not errors.
  CHECK(shannon_entropy({1.0 + 5e-13, -5e-13}) >= 0.0);
}

TEST_CASE("vn_entropy of the maximally mixed qubit is one bit") {
  const DensityOperator rho =
      DensityOperator::make(Eigen::MatrixXcd::Identity(2, 2) * 0.5);
  CHECK(std::abs(vn_entropy(rho) - 1.0) < 1e-12);
}
