#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "edlab/matrix_ops.hpp"
#include "edlab/rng.hpp"
#include "oracles.hpp"

using namespace edlab;

TEST_CASE("adjoint") {
  CHECK(oracles::max_abs_diff(adjoint(identity(2)), identity(2)) == 0.0);
  CHECK(oracles::max_abs_diff(adjoint(pauli_y()), pauli_y()) < 1e-15);

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const cmat x = ginibre(rng, 4, 3);
    CHECK(oracles::max_abs_diff(adjoint(adjoint(x)), x) == 0.0);
    CHECK(oracles::max_abs_diff(adjoint(x), oracles::to_eigen(oracles::naive_adjoint(
                                                oracles::from_eigen(x)))) < 1e-15);
  }
}

TEST_CASE("commutator of pauli matrices") {
  // [sigma_x, sigma_y] = 2i sigma_z
  const cmat c = commutator(pauli_x(), pauli_y());
  CHECK(oracles::max_abs_diff(c, cplx(0, 2) * pauli_z()) < 1e-15);

  const cmat self = commutator(pauli_z(), pauli_z());
  CHECK(self.norm() == 0.0);

  // [sigma_y, sigma_z] against a hand-multiplied oracle.
  const cmat yz = commutator(pauli_y(), pauli_z());
  const cmat expect = oracles::to_eigen(oracles::naive_commutator(
      oracles::from_eigen(pauli_y()), oracles::from_eigen(pauli_z())));
  CHECK(oracles::max_abs_diff(yz, expect) < 1e-15);
  CHECK(oracles::max_abs_diff(yz, cplx(0, 2) * pauli_x()) < 1e-15);
}

TEST_CASE("commutator anti-hermiticity and errors") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(2, 5);
    const cmat a = random_hermitian(rng, n);
    const cmat b = random_hermitian(rng, n);
    const cmat c = commutator(a, b);
    CHECK((c + c.adjoint()).norm() < 1e-10);
  }
  CHECK_THROWS_AS(commutator(identity(2), identity(3)), DimensionError);
}

TEST_CASE("tensor product") {
  CHECK(oracles::max_abs_diff(tensor_product(identity(2), identity(2)), identity(4)) == 0.0);

  // sigma_x (x) 1 as used for the two-qubit embedding.
  cmat expect = cmat::Zero(4, 4);
  expect(0, 2) = expect(1, 3) = expect(2, 0) = expect(3, 1) = 1;
  CHECK(oracles::max_abs_diff(tensor_product(pauli_x(), identity(2)), expect) == 0.0);

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const cmat x = ginibre(rng, 3, 3);
    const cmat y = ginibre(rng, 2, 2);
    const cmat t = tensor_product(x, y);
    CHECK(std::abs(t.trace() - x.trace() * y.trace()) < 1e-12);
    CHECK(oracles::max_abs_diff(
              t, oracles::to_eigen(oracles::naive_kron(oracles::from_eigen(x),
                                                       oracles::from_eigen(y)))) < 1e-14);
  }
}

TEST_CASE("partial trace") {
  Rng rng(3);
  const cmat rho = random_density(rng, 2);
  const cmat sigma = random_density(rng, 3);
  const cmat prod = tensor_product(rho, sigma);
  CHECK(oracles::max_abs_diff(partial_trace(prod, 2, 3, 2), rho) < 1e-14);
  CHECK(oracles::max_abs_diff(partial_trace(prod, 2, 3, 1), sigma) < 1e-14);

  // Singlet marginal is maximally mixed.
  cvec psi = cvec::Zero(4);
  psi[1] = 1 / std::sqrt(2.0);
  psi[2] = -1 / std::sqrt(2.0);
  const cmat singlet = psi * psi.adjoint();
  CHECK(oracles::max_abs_diff(partial_trace(singlet, 2, 2, 2), 0.5 * identity(2)) < 1e-15);

  for (int trial = 0; trial < 10; ++trial) {
    cmat g = ginibre(rng, 4, 4);
    cmat psd = g * g.adjoint();
    CHECK(std::abs(partial_trace(psd, 2, 2, 1).trace() - psd.trace()) < 1e-12);
    CHECK(std::abs(partial_trace(psd, 2, 2, 2).trace() - psd.trace()) < 1e-12);
  }
  CHECK_THROWS_AS(partial_trace(identity(6), 2, 2, 1), DimensionError);
  CHECK_THROWS_AS(partial_trace(identity(4), 2, 2, 3), DimensionError);
}

TEST_CASE("spectral decomposition") {
  const SpectralDecomposition sz = spectral_decompose(pauli_z());
  CHECK(sz.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(sz.eigenvalues[1] == doctest::Approx(-1.0));

  const SpectralDecomposition id5 = spectral_decompose(identity(5));
  for (int i = 0; i < 5; ++i) CHECK(id5.eigenvalues[i] == doctest::Approx(1.0));

  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const cmat h = random_hermitian(rng, n);
    const SpectralDecomposition sd = spectral_decompose(h);
    const cmat rebuilt =
        sd.eigenvectors * sd.eigenvalues.asDiagonal() * sd.eigenvectors.adjoint();
    CHECK((rebuilt - h).norm() < 1e-10 * std::max(1.0, h.norm()));
    CHECK((sd.eigenvectors.adjoint() * sd.eigenvectors - identity(n)).norm() < 1e-10);
    for (int i = 1; i < n; ++i) CHECK(sd.eigenvalues[i - 1] >= sd.eigenvalues[i]);
  }

  cmat skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_THROWS_AS(spectral_decompose(skew), ValidationError);
}

TEST_CASE("psd sqrt") {
  CHECK(oracles::max_abs_diff(psd_sqrt(identity(3)), identity(3)) < 1e-12);

  cmat proj = cmat::Zero(2, 2);
  proj(0, 0) = 1;
  CHECK(oracles::max_abs_diff(psd_sqrt(proj), proj) < 1e-12);

  cmat d49 = cmat::Zero(2, 2);
  d49(0, 0) = 4;
  d49(1, 1) = 9;
  cmat d23 = cmat::Zero(2, 2);
  d23(0, 0) = 2;
  d23(1, 1) = 3;
  CHECK(oracles::max_abs_diff(psd_sqrt(d49), d23) < 1e-12);

  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const int rank = rng.uniform_int(1, n);
    const cmat p = 3.7 * random_density(rng, n, rank);
    const cmat root = psd_sqrt(p);
    CHECK((root * root - p).norm() < 1e-9 * std::max(1.0, p.norm()));
    CHECK((root - root.adjoint()).norm() < 1e-10);
  }

  cmat neg = cmat::Zero(2, 2);
  neg(0, 0) = 1;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(psd_sqrt(neg), ValidationError);
}

TEST_CASE("trace norm") {
  CHECK(trace_norm(pauli_z()) == doctest::Approx(2.0));
  CHECK(trace_norm(cmat::Zero(3, 3)) == 0.0);
  CHECK_THROWS_AS(trace_norm(cmat::Zero(2, 3)), DimensionError);

  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(2, 5);
    const cmat x = ginibre(rng, n, n);
    const cmat u = random_unitary(rng, n);
    const cmat v = random_unitary(rng, n);
    CHECK(trace_norm(u * x * v) == doctest::Approx(trace_norm(x)).epsilon(1e-10));
    // Dual-norm bound against random unitary contractions.
    CHECK(trace_norm(x) >= std::abs((x * u).trace()) - 1e-10);
  }

  // Self-adjoint input: sum of |eigenvalues|.
  for (int trial = 0; trial < 10; ++trial) {
    const cmat h = random_hermitian(rng, 4);
    const SpectralDecomposition sd = spectral_decompose(h);
    CHECK(trace_norm(h) == doctest::Approx(sd.eigenvalues.cwiseAbs().sum()).epsilon(1e-11));
  }
}

TEST_CASE("operator abs") {
  SignAbs sz = operator_abs(pauli_z());
  CHECK(oracles::max_abs_diff(sz.sign, pauli_z()) < 1e-12);
  CHECK(oracles::max_abs_diff(sz.abs, identity(2)) < 1e-12);

  cmat d(3, 3);
  d.setZero();
  d(0, 0) = 3;
  d(2, 2) = -2;
  SignAbs sd = operator_abs(d);
  cmat sign_expect = cmat::Zero(3, 3);
  sign_expect(0, 0) = 1;
  sign_expect(2, 2) = -1;
  cmat abs_expect = cmat::Zero(3, 3);
  abs_expect(0, 0) = 3;
  abs_expect(2, 2) = 2;
  CHECK(oracles::max_abs_diff(sd.sign, sign_expect) < 1e-12);
  CHECK(oracles::max_abs_diff(sd.abs, abs_expect) < 1e-12);

  SignAbs zero = operator_abs(cmat::Zero(2, 2));
  CHECK(zero.sign.norm() == 0.0);
  CHECK(zero.abs.norm() == 0.0);

  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const cmat h = random_hermitian(rng, n);
    SignAbs sa = operator_abs(h);
    CHECK((sa.sign * sa.abs - h).norm() < 1e-9 * std::max(1.0, h.norm()));
    CHECK((sa.sign - sa.sign.adjoint()).norm() < 1e-10);
    // sign^2 is the support projection: idempotent and acts as identity on h.
    const cmat supp = sa.sign * sa.sign;
    CHECK((supp * supp - supp).norm() < 1e-9);
    CHECK((supp * h - h).norm() < 1e-9 * std::max(1.0, h.norm()));
    const SpectralDecomposition sdec = spectral_decompose(sa.abs);
    CHECK(sdec.eigenvalues.minCoeff() > -1e-12);
  }
}

TEST_CASE("hermitian matrix wrapper") {
  cmat nearly = pauli_x();
  nearly(0, 1) += cplx(0, 1e-12);
  HermitianMatrix h(nearly);
  CHECK(h.symmetrization_delta() < 1e-11);
  CHECK((h.matrix() - h.matrix().adjoint()).norm() == 0.0);

  cmat off = pauli_x();
  off(0, 1) += cplx(0, 1e-3);
  CHECK_THROWS_AS(HermitianMatrix{off}, ValidationError);
  CHECK_THROWS_AS(HermitianMatrix{cmat::Zero(2, 3)}, DimensionError);
}
