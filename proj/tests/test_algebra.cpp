#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "edlab/algebra.hpp"
#include "edlab/rng.hpp"
#include "oracles.hpp"

using namespace edlab;

namespace {

AlgebraElement random_element(Rng& rng, const AlgebraPtr& algebra) {
  std::vector<cmat> blocks;
  for (const BlockSpec& b : algebra->blocks()) blocks.push_back(ginibre(rng, b.dim, b.dim));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraPtr random_test_algebra(Rng& rng, int dim_max) {
  const std::vector<std::vector<BlockSpec>> pool = {
      {{2, 1}},         {{3, 1}},         {{2, 2}},         {{2, 1}, {1, 1}},
      {{2, 1}, {2, 1}}, {{1, 2}, {2, 1}}, {{2, 2}, {1, 1}}, {{3, 1}, {1, 2}},
  };
  std::vector<std::vector<BlockSpec>> ok;
  for (const auto& blocks : pool) {
    int ambient = 0;
    for (const BlockSpec& b : blocks) ambient += b.dim * b.multiplicity;
    if (ambient <= dim_max) ok.push_back(blocks);
  }
  const auto& blocks = ok[rng.uniform_int(0, int(ok.size()) - 1)];
  int ambient = 0;
  for (const BlockSpec& b : blocks) ambient += b.dim * b.multiplicity;
  cmat u;
  if (rng.uniform() < 0.5) u = random_unitary(rng, ambient);
  return VonNeumannAlgebra::make(blocks, u);
}

}  // namespace

TEST_CASE("algebra construction and validation") {
  AlgebraPtr full4 = VonNeumannAlgebra::full(4);
  CHECK(full4->ambient_dim() == 4);
  CHECK(full4->hs_dim() == 16);
  CHECK(full4->is_full());

  AlgebraPtr m2in4 = VonNeumannAlgebra::make({BlockSpec{2, 2}});
  CHECK(m2in4->ambient_dim() == 4);
  CHECK(m2in4->hs_dim() == 4);
  CHECK_FALSE(m2in4->is_full());

  CHECK_THROWS_AS(VonNeumannAlgebra::make({}), ValidationError);
  CHECK_THROWS_AS(VonNeumannAlgebra::make({BlockSpec{0, 1}}), ValidationError);
  CHECK_THROWS_AS(VonNeumannAlgebra::make({BlockSpec{2, 1}}, identity(3)), DimensionError);
  CHECK_THROWS_AS(VonNeumannAlgebra::make({BlockSpec{2, 1}}, 2.0 * identity(2)),
                  ValidationError);
}

TEST_CASE("embed on the two-qubit subalgebra") {
  AlgebraPtr m2in4 = VonNeumannAlgebra::make({BlockSpec{2, 2}});
  const AlgebraElement sx(m2in4, {pauli_x()});
  CHECK(oracles::max_abs_diff(embed(sx), tensor_product(pauli_x(), identity(2))) < 1e-15);
  CHECK(oracles::max_abs_diff(embed(AlgebraElement::identity(m2in4)), identity(4)) < 1e-15);
}

TEST_CASE("embed is a unital star-homomorphism") {
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraPtr algebra = random_test_algebra(rng, 6);
    const AlgebraElement x = random_element(rng, algebra);
    const AlgebraElement y = random_element(rng, algebra);
    CHECK((embed(x) * embed(y) - embed(x * y)).norm() <
          1e-11 * std::max(1.0, embed(x).norm() * embed(y).norm()));
    CHECK((embed(x).adjoint() - embed(x.adjoint())).norm() < 1e-12);
    CHECK((embed(AlgebraElement::identity(algebra)) - identity(algebra->ambient_dim()))
              .norm() < 1e-12);
  }
}

TEST_CASE("conditional expectation fixes embedded elements and is idempotent") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraPtr algebra = random_test_algebra(rng, 6);
    const int d = algebra->ambient_dim();

    const AlgebraElement x = random_element(rng, algebra);
    const AlgebraElement back = conditional_expectation(algebra, embed(x));
    CHECK((back - x).frobenius() < 1e-11 * std::max(1.0, x.frobenius()));

    const cmat ambient = ginibre(rng, d, d);
    const AlgebraElement once = conditional_expectation(algebra, ambient);
    const AlgebraElement twice = conditional_expectation(algebra, embed(once));
    CHECK((once - twice).frobenius() < 1e-11 * std::max(1.0, once.frobenius()));
  }
}

TEST_CASE("conditional expectation of cross terms vanishes") {
  AlgebraPtr m2in4 = VonNeumannAlgebra::make({BlockSpec{2, 2}});
  // sigma_x (x) sigma_z has a traceless multiplicity factor.
  const AlgebraElement ce =
      conditional_expectation(m2in4, tensor_product(pauli_x(), pauli_z()));
  CHECK(ce.frobenius() < 1e-14);
}

TEST_CASE("conditional expectation is unital and completely positive") {
  Rng rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    AlgebraPtr algebra = random_test_algebra(rng, 8);
    const int d = algebra->ambient_dim();
    CHECK((embed(conditional_expectation(algebra, identity(d))) - identity(d)).norm() <
          1e-11);

    // Choi matrix of X -> embed(CE(X)) on the ambient space.
    cmat choi = cmat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        cmat unit = cmat::Zero(d, d);
        unit(i, j) = 1.0;
        const cmat img = embed(conditional_expectation(algebra, unit));
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) choi(i * d + k, j * d + l) = img(k, l);
      }
    }
    SpectralDecomposition sd = spectral_decompose(choi, 1e-8);
    CHECK(sd.eigenvalues.minCoeff() > -1e-9 * std::max(1.0, sd.eigenvalues.maxCoeff()));
  }
}

TEST_CASE("contains") {
  AlgebraPtr m2in4 = VonNeumannAlgebra::make({BlockSpec{2, 2}});
  CHECK(contains(m2in4, tensor_product(pauli_x(), identity(2)), 1e-9));
  CHECK_FALSE(contains(m2in4, tensor_product(pauli_x(), pauli_x()), 1e-9));

  AlgebraPtr full4 = VonNeumannAlgebra::full(4);
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(contains(full4, ginibre(rng, 4, 4), 1e-9));
  }

  // Embedded elements are always contained; the verdict is covariant under a
  // joint change of basis.
  for (int trial = 0; trial < 10; ++trial) {
    AlgebraPtr algebra = random_test_algebra(rng, 6);
    const int d = algebra->ambient_dim();
    const AlgebraElement x = random_element(rng, algebra);
    CHECK(contains(algebra, embed(x), 1e-9));

    const cmat v = random_unitary(rng, d);
    const cmat rotated_basis = v * algebra->basis_change();
    AlgebraPtr conjugated = VonNeumannAlgebra::make(algebra->blocks(), rotated_basis);
    const cmat probe = ginibre(rng, d, d);
    CHECK(contains(algebra, probe, 1e-9) ==
          contains(conjugated, v * probe * v.adjoint(), 1e-9));
  }
}

TEST_CASE("restrict_state on the singlet") {
  AlgebraPtr m2in4 = VonNeumannAlgebra::make({BlockSpec{2, 2}});
  cvec psi = cvec::Zero(4);
  psi[1] = 1 / std::sqrt(2.0);
  psi[2] = -1 / std::sqrt(2.0);
  NormalState rho = restrict_state(m2in4, cmat(psi * psi.adjoint()));
  CHECK(oracles::max_abs_diff(rho.densities()[0], 0.5 * identity(2)) < 1e-14);
}

TEST_CASE("restrict_state duality with embed") {
  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraPtr algebra = random_test_algebra(rng, 6);
    const int d = algebra->ambient_dim();
    const cmat ambient_density = random_density(rng, d);
    NormalState rho = restrict_state(algebra, ambient_density);
    for (int probe = 0; probe < 20; ++probe) {
      const AlgebraElement x = random_element(rng, algebra);
      const cplx via_state = state_expectation(rho, x);
      const cplx via_trace = (ambient_density * embed(x)).trace();
      CHECK(std::abs(via_state - via_trace) < 1e-10);
    }
  }

  // Full algebra: restriction is the density itself.
  AlgebraPtr full3 = VonNeumannAlgebra::full(3);
  const cmat d3 = random_density(rng, 3);
  NormalState rho3 = restrict_state(full3, d3);
  CHECK(oracles::max_abs_diff(rho3.densities()[0], d3) < 1e-14);

  CHECK_THROWS_AS(restrict_state(full3, cmat(2.0 * d3)), ValidationError);
}

TEST_CASE("state expectations") {
  AlgebraPtr m2 = VonNeumannAlgebra::full(2);
  NormalState mixed(m2, {0.5 * identity(2)});
  CHECK(std::abs(state_expectation(mixed, AlgebraElement::identity(m2)) - 1.0) < 1e-14);
  CHECK(std::abs(state_expectation(mixed, AlgebraElement(m2, {pauli_z()}))) < 1e-14);

  cmat up = cmat::Zero(2, 2);
  up(0, 0) = 1;
  NormalState zup(m2, {up});
  CHECK(state_expectation(zup, AlgebraElement(m2, {pauli_z()})).real() ==
        doctest::Approx(1.0));

  // The canonical ambient extension pairs identically.
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    AlgebraPtr algebra = random_test_algebra(rng, 6);
    NormalState rho = restrict_state(algebra, random_density(rng, algebra->ambient_dim()));
    const cmat ext = rho.ambient_extension();
    CHECK(std::abs(ext.trace().real() - 1.0) < 1e-10);
    const AlgebraElement x = random_element(rng, algebra);
    CHECK(std::abs(state_expectation(rho, x) - (ext * embed(x)).trace()) < 1e-10);
  }
}

TEST_CASE("state validation") {
  AlgebraPtr m2 = VonNeumannAlgebra::full(2);
  CHECK_THROWS_AS(NormalState(m2, {identity(2)}), ValidationError);  // trace 2
  cmat neg = cmat::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(NormalState(m2, {neg}), ValidationError);
  CHECK_THROWS_AS(NormalState(m2, {cmat::Zero(3, 3)}), DimensionError);

  // Rank-deficient blocks are allowed.
  AlgebraPtr two_blocks = VonNeumannAlgebra::make({BlockSpec{2, 1}, BlockSpec{2, 1}});
  cmat pure = cmat::Zero(2, 2);
  pure(0, 0) = 1;
  NormalState degenerate(two_blocks, {pure, cmat::Zero(2, 2)});
  CHECK(std::abs(state_expectation(degenerate, AlgebraElement::identity(two_blocks)).real() -
                 1.0) < 1e-14);
}

TEST_CASE("element arithmetic") {
  AlgebraPtr algebra = VonNeumannAlgebra::make({BlockSpec{2, 1}, BlockSpec{1, 1}});
  Rng rng(59);
  const AlgebraElement x = random_element(rng, algebra);
  const AlgebraElement y = random_element(rng, algebra);
  CHECK(((x + y) - y - x).frobenius() < 1e-14);
  CHECK((x * AlgebraElement::identity(algebra) - x).frobenius() < 1e-14);
  const AlgebraElement shifted = x + cplx(2.5, 0);
  CHECK(((shifted - cplx(2.5, 0)) - x).frobenius() < 1e-14);
  CHECK((x.adjoint().adjoint() - x).frobenius() < 1e-14);
  CHECK_FALSE(x.is_hermitian());
  CHECK((cplx(0.5, 0) * (x + x.adjoint())).is_hermitian());

  AlgebraPtr other = VonNeumannAlgebra::full(3);
  CHECK_THROWS_AS(x + AlgebraElement::identity(other), DimensionError);
}
