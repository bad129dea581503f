#include <cmath>
#include <complex>

#include "doctest.h"

#include "ebit/errors.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/state.hpp"

using namespace ebit;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("singlet amplitudes") {
  const BipartiteState s = singlet();
  CHECK(s.dim_a() == 2);
  CHECK(s.dim_b() == 2);
  CHECK(s.amps()(0, 0) == std::complex<double>(0, 0));
  CHECK(s.amps()(0, 1).real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(s.amps()(1, 0).real() == doctest::Approx(-kInvSqrt2).epsilon(1e-15));
  CHECK(s.amps()(1, 1) == std::complex<double>(0, 0));
  CHECK(s.amps().norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("basis_state places a single unit amplitude") {
  const BipartiteState s = basis_state(3, 4, 2, 1);
  CHECK(s.dim_a() == 3);
  CHECK(s.dim_b() == 4);
  CHECK(s.amps()(2, 1) == std::complex<double>(1, 0));
  CHECK(s.amps().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(basis_state(2, 2, 2, 0), InvalidArgumentError);
  CHECK_THROWS_AS(basis_state(2, 2, 0, -1), InvalidArgumentError);
}

TEST_CASE("two_term_state is the diagonal sqrt(p), sqrt(1-p)") {
  const BipartiteState s = two_term_state(0.25);
  CHECK(s.amps()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.amps()(1, 1).real() ==
        doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(std::abs(s.amps()(0, 1)) == 0.0);
  CHECK(std::abs(s.amps()(1, 0)) == 0.0);
  CHECK_THROWS_AS(two_term_state(-0.1), InvalidArgumentError);
  CHECK_THROWS_AS(two_term_state(1.1), InvalidArgumentError);
}

TEST_CASE("make validates the norm, make_normalized rescales") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 0.9;
  CHECK_THROWS_AS(BipartiteState::make(m), InvariantError);
  const BipartiteState s = BipartiteState::make_normalized(m);
  CHECK(s.amps()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(BipartiteState::make_normalized(Eigen::MatrixXcd::Zero(2, 2)),
                  InvariantError);
}

TEST_CASE("tensor_product combines independent pairs") {
  const BipartiteState s1 = two_term_state(0.25);
  const BipartiteState s2 = basis_state(3, 2, 1, 0);
  const BipartiteState joint = tensor_product(s1, s2);
  CHECK(joint.dim_a() == 6);
  CHECK(joint.dim_b() == 4);
  // (a1, b1) = (0, 0) and (a2, b2) = (1, 0) land at (0*3+1, 0*2+0).
  CHECK(joint.amps()(1, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(joint.amps()(4, 2).real() ==
        doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
  CHECK(joint.amps().norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("tensor_product rejects states beyond the amplitude cap") {
  const BipartiteState big = basis_state(1 << 10, 1 << 10, 0, 0);
  CHECK_THROWS_AS(tensor_product(big, basis_state(2, 1, 0, 0)), CapacityError);
}

TEST_CASE("partial_trace of the singlet is maximally mixed") {
  for (Side side : {Side::A, Side::B}) {
    const DensityOperator rho = partial_trace(singlet(), side);
    CHECK(rho.dim() == 2);
    CHECK(std::abs(rho.mat()(0, 0).real() - 0.5) < 1e-14);
    CHECK(std::abs(rho.mat()(1, 1).real() - 0.5) < 1e-14);
    CHECK(std::abs(rho.mat()(0, 1)) < 1e-14);
    CHECK(std::abs(rho.mat().trace().real() - 1.0) < 1e-14);
  }
}

TEST_CASE("both marginals carry the same spectrum entropy") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const BipartiteState s = random_state(3 + t % 3, 2 + t % 4, RngSpec{91, t});
    const double ha = vn_entropy(partial_trace(s, Side::A));
    const double hb = vn_entropy(partial_trace(s, Side::B));
    CHECK(std::abs(ha - hb) < 1e-10);
  }
}

TEST_CASE("fidelity") {
  CHECK(fidelity(singlet(), singlet()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(basis_state(2, 2, 0, 0), basis_state(2, 2, 1, 1)) ==
        doctest::Approx(0.0));
  // Global phase must not matter.
  Eigen::MatrixXcd m = singlet().amps() * std::complex<double>(0, 1);
  CHECK(fidelity(singlet(), BipartiteState::make(m)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(fidelity(singlet(), basis_state(3, 2, 0, 0)), ShapeError);
}

TEST_CASE("random_state is deterministic in the RngSpec") {
  const BipartiteState a = random_state(4, 5, RngSpec{7, 3});
  const BipartiteState b = random_state(4, 5, RngSpec{7, 3});
  const BipartiteState c = random_state(4, 5, RngSpec{7, 4});
  CHECK((a.amps() - b.amps()).norm() == 0.0);
  CHECK((a.amps() - c.amps()).norm() > 1e-3);
  CHECK(a.amps().norm() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(random_state(0, 2, RngSpec{1, 0}), InvalidArgumentError);
}
