#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "edlab/rng.hpp"
#include "edlab/standard_form.hpp"
#include "oracles.hpp"

using namespace edlab;

namespace {

AlgebraPtr two_block_algebra() {
  return VonNeumannAlgebra::make({BlockSpec{2, 1}, BlockSpec{2, 2}});
}

HsVector random_hs_vector(Rng& rng, const AlgebraPtr& algebra) {
  HsVector v{algebra, {}};
  for (const BlockSpec& b : algebra->blocks()) v.blocks.push_back(ginibre(rng, b.dim, b.dim));
  return v;
}

AlgebraElement random_element(Rng& rng, const AlgebraPtr& algebra) {
  std::vector<cmat> blocks;
  for (const BlockSpec& b : algebra->blocks()) blocks.push_back(ginibre(rng, b.dim, b.dim));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement random_hermitian_element(Rng& rng, const AlgebraPtr& algebra) {
  std::vector<cmat> blocks;
  for (const BlockSpec& b : algebra->blocks()) blocks.push_back(random_hermitian(rng, b.dim));
  return AlgebraElement(algebra, std::move(blocks));
}

NormalState random_state_for(Rng& rng, const AlgebraPtr& algebra) {
  std::vector<cmat> densities;
  double total = 0;
  std::vector<double> w;
  for (int k = 0; k < algebra->block_count(); ++k) {
    w.push_back(rng.uniform(0.1, 1.0));
    total += w.back();
  }
  for (int k = 0; k < algebra->block_count(); ++k) {
    const int n = algebra->blocks()[k].dim;
    densities.push_back((w[k] / total) * random_density(rng, n));
  }
  return NormalState(algebra, std::move(densities));
}

cmat zup_density() {
  cmat up = cmat::Zero(2, 2);
  up(0, 0) = 1;
  return up;
}

}  // namespace

TEST_CASE("modular conjugation is an anti-linear isometric involution") {
  Rng rng(61);
  AlgebraPtr algebra = two_block_algebra();
  for (int trial = 0; trial < 20; ++trial) {
    const HsVector v = random_hs_vector(rng, algebra);
    const HsVector w = random_hs_vector(rng, algebra);
    CHECK(hs_norm(modular_conjugate(modular_conjugate(v)) - v) < 1e-14);
    CHECK(hs_norm(modular_conjugate(v)) == doctest::Approx(hs_norm(v)).epsilon(1e-12));
    // Anti-linearity.
    const cplx alpha(0.3, -1.2);
    CHECK(hs_norm(modular_conjugate(alpha * v) -
                  std::conj(alpha) * modular_conjugate(v)) < 1e-12);
    // <Jv|Jw> = conj(<v|w>).
    CHECK(std::abs(hs_inner(modular_conjugate(v), modular_conjugate(w)) -
                   std::conj(hs_inner(v, w))) < 1e-12);
  }
}

TEST_CASE("positive cone properties") {
  Rng rng(67);
  AlgebraPtr algebra = two_block_algebra();
  for (int trial = 0; trial < 20; ++trial) {
    // Cone vectors: blockwise PSD.
    HsVector xi{algebra, {}};
    HsVector eta{algebra, {}};
    for (const BlockSpec& b : algebra->blocks()) {
      xi.blocks.push_back(psd_sqrt(random_density(rng, b.dim)));
      eta.blocks.push_back(psd_sqrt(random_density(rng, b.dim)));
    }
    CHECK(in_positive_cone(xi, 1e-9));
    // J fixes the cone.
    CHECK(hs_norm(modular_conjugate(xi) - xi) < 1e-12);
    // Self-duality spot check: <xi|eta> >= 0.
    CHECK(hs_inner(xi, eta).real() > -1e-12);
    CHECK(std::abs(hs_inner(xi, eta).imag()) < 1e-12);
    // x J x J maps the cone into itself.
    const AlgebraElement x = random_element(rng, algebra);
    const HsVector moved = left_action(x, right_action_via_j(x, xi));
    CHECK(in_positive_cone(moved, 1e-9));
  }
}

TEST_CASE("left and right actions commute and obey the conjugation identity") {
  Rng rng(71);
  AlgebraPtr algebra = two_block_algebra();
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraElement x = random_element(rng, algebra);
    const AlgebraElement y = random_element(rng, algebra);
    const HsVector v = random_hs_vector(rng, algebra);

    CHECK(hs_norm(left_action(AlgebraElement::identity(algebra), v) - v) < 1e-14);

    // [pi(x), J pi(y) J] = 0.
    const HsVector lr = left_action(x, right_action_via_j(y, v));
    const HsVector rl = right_action_via_j(y, left_action(x, v));
    CHECK(hs_norm(lr - rl) < 1e-10 * std::max(1.0, hs_norm(lr)));

    // J(pi(x) v) = (J pi(x) J)(J v).
    const HsVector lhs = modular_conjugate(left_action(x, v));
    const HsVector rhs = right_action_via_j(x, modular_conjugate(v));
    CHECK(hs_norm(lhs - rhs) < 1e-12 * std::max(1.0, hs_norm(lhs)));
  }
}

TEST_CASE("standard form space coordinates") {
  AlgebraPtr algebra = two_block_algebra();
  StandardFormSpace space(algebra);
  CHECK(space.dim() == 8);
  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const HsVector v = random_hs_vector(rng, algebra);
    const HsVector w = random_hs_vector(rng, algebra);
    const cvec vc = space.coordinates(v);
    CHECK(hs_norm(space.from_coordinates(vc) - v) < 1e-14);
    CHECK(std::abs(vc.dot(space.coordinates(w)) - hs_inner(v, w)) < 1e-12);

    const AlgebraElement x = random_element(rng, algebra);
    const cvec via_matrix = space.left_mult_matrix(x) * vc;
    CHECK((via_matrix - space.coordinates(left_action(x, v))).norm() < 1e-12);
  }
}

TEST_CASE("gns vector") {
  AlgebraPtr m2 = VonNeumannAlgebra::full(2);

  NormalState mixed(m2, {0.5 * identity(2)});
  const HsVector xi_mixed = gns_vector(mixed);
  CHECK(oracles::max_abs_diff(xi_mixed.blocks[0], identity(2) / std::sqrt(2.0)) < 1e-14);

  NormalState zup(m2, {zup_density()});
  const HsVector xi_pure = gns_vector(zup);
  CHECK(oracles::max_abs_diff(xi_pure.blocks[0], zup_density()) < 1e-14);

  Rng rng(79);
  AlgebraPtr algebra = two_block_algebra();
  for (int trial = 0; trial < 20; ++trial) {
    NormalState rho = random_state_for(rng, algebra);
    const HsVector xi = gns_vector(rho);
    CHECK(in_positive_cone(xi, 1e-9));
    CHECK(hs_norm(xi) == doctest::Approx(1.0).epsilon(1e-9));
    for (int probe = 0; probe < 5; ++probe) {
      const AlgebraElement x = random_element(rng, algebra);
      const cplx via_vector = hs_inner(xi, left_action(x, xi));
      CHECK(std::abs(via_vector - state_expectation(rho, x)) < 1e-10);
    }
  }
}

TEST_CASE("commutator functional") {
  AlgebraPtr m2 = VonNeumannAlgebra::full(2);
  const AlgebraElement sx(m2, {pauli_x()});
  const AlgebraElement sy(m2, {pauli_y()});

  // A = B gives the zero functional.
  NormalState mixed(m2, {0.5 * identity(2)});
  NormalFunctional zero = commutator_functional(sx, sx, mixed);
  CHECK(functional_norm(zero) < 1e-14);

  // (sigma_x, sigma_y, tr/2): density sqrt(1/2) * 2 sigma_z * sqrt(1/2) = sigma_z.
  NormalFunctional omega = commutator_functional(sx, sy, mixed);
  CHECK(omega.is_hermitian());
  CHECK(oracles::max_abs_diff(omega.densities[0], pauli_z()) < 1e-14);

  // Standard-form identity omega(x) = <xi | x J C J xi> with C = -i[A,B].
  Rng rng(83);
  AlgebraPtr algebra = two_block_algebra();
  for (int trial = 0; trial < 15; ++trial) {
    const AlgebraElement a = random_hermitian_element(rng, algebra);
    const AlgebraElement b = random_hermitian_element(rng, algebra);
    NormalState rho = random_state_for(rng, algebra);
    NormalFunctional w = commutator_functional(a, b, rho);
    CHECK(w.is_hermitian());
    const HsVector xi = gns_vector(rho);
    AlgebraElement c = cplx(0, -1) * (a * b - b * a);
    for (int probe = 0; probe < 5; ++probe) {
      const AlgebraElement x = random_element(rng, algebra);
      const cplx direct = apply(w, x);
      const cplx via_form = hs_inner(xi, left_action(x, right_action_via_j(c, xi)));
      CHECK(std::abs(direct - via_form) < 1e-10);
    }
  }
  CHECK_THROWS_AS(commutator_functional(random_element(rng, algebra),
                                        random_hermitian_element(rng, algebra),
                                        random_state_for(rng, algebra)),
                  ValidationError);
}

TEST_CASE("functional norm") {
  AlgebraPtr m2 = VonNeumannAlgebra::full(2);
  CHECK(functional_norm(NormalFunctional{m2, {cmat::Zero(2, 2)}}) == 0.0);
  CHECK(functional_norm(NormalFunctional{m2, {pauli_z()}}) == doctest::Approx(2.0));

  Rng rng(89);
  AlgebraPtr algebra = two_block_algebra();
  for (int trial = 0; trial < 20; ++trial) {
    NormalFunctional omega{algebra, {}};
    for (const BlockSpec& b : algebra->blocks()) {
      omega.densities.push_back(random_hermitian(rng, b.dim));
    }
    const double norm = functional_norm(omega);
    CHECK(norm >= std::abs(apply(omega, AlgebraElement::identity(algebra))) - 1e-10);
    // Dual-norm property sampled over unit-ball elements x = u (contractions).
    for (int probe = 0; probe < 5; ++probe) {
      std::vector<cmat> ublocks;
      for (const BlockSpec& b : algebra->blocks())
        ublocks.push_back(random_unitary(rng, b.dim));
      CHECK(norm >= std::abs(apply(omega, AlgebraElement(algebra, ublocks))) - 1e-10);
    }
  }
}

TEST_CASE("polar decomposition") {
  AlgebraPtr m2 = VonNeumannAlgebra::full(2);

  PolarDecomposition sz = polar_decompose(NormalFunctional{m2, {pauli_z()}});
  CHECK(oracles::max_abs_diff(sz.isometry.block(0), pauli_z()) < 1e-12);
  CHECK(oracles::max_abs_diff(sz.absolute_value.densities[0], identity(2)) < 1e-12);

  PolarDecomposition zero = polar_decompose(NormalFunctional{m2, {cmat::Zero(2, 2)}});
  CHECK(zero.isometry.frobenius() == 0.0);
  CHECK(functional_norm(zero.absolute_value) == 0.0);

  Rng rng(97);
  AlgebraPtr algebra = two_block_algebra();
  for (int trial = 0; trial < 25; ++trial) {
    NormalFunctional omega{algebra, {}};
    for (const BlockSpec& b : algebra->blocks()) {
      omega.densities.push_back(random_hermitian(rng, b.dim));
    }
    PolarDecomposition pd = polar_decompose(omega);
    CHECK(pd.isometry.is_hermitian(1e-9));

    // omega(x) = |omega|(x W) on random probes.
    for (int probe = 0; probe < 20; ++probe) {
      const AlgebraElement x = random_element(rng, algebra);
      CHECK(std::abs(apply(omega, x) - apply(pd.absolute_value, x * pd.isometry)) <
            1e-9 * std::max(1.0, std::abs(apply(omega, x))));
    }

    // W^dag W equals the support projection of |omega|.
    const AlgebraElement wsq = pd.isometry.adjoint() * pd.isometry;
    for (int k = 0; k < algebra->block_count(); ++k) {
      SignAbs sa = operator_abs(pd.absolute_value.densities[k]);
      CHECK(oracles::max_abs_diff(wsq.block(k), sa.sign * sa.sign) < 1e-9);
    }

    // |omega|(1) = ||omega||.
    CHECK(apply(pd.absolute_value, AlgebraElement::identity(algebra)).real() ==
          doctest::Approx(functional_norm(omega)).epsilon(1e-9));
  }

  // Non-hermitian functionals use the operator polar decomposition.
  for (int trial = 0; trial < 10; ++trial) {
    NormalFunctional omega{algebra, {}};
    for (const BlockSpec& b : algebra->blocks()) {
      omega.densities.push_back(ginibre(rng, b.dim, b.dim));
    }
    PolarDecomposition pd = polar_decompose(omega);
    for (int probe = 0; probe < 10; ++probe) {
      const AlgebraElement x = random_element(rng, algebra);
      CHECK(std::abs(apply(omega, x) - apply(pd.absolute_value, x * pd.isometry)) < 1e-9);
    }
  }
}

TEST_CASE("c bound and d bound on qubit scenarios") {
  AlgebraPtr m2 = VonNeumannAlgebra::full(2);
  const AlgebraElement sx(m2, {pauli_x()});
  const AlgebraElement sy(m2, {pauli_y()});
  NormalState zup(m2, {zup_density()});
  NormalState mixed(m2, {0.5 * identity(2)});

  CHECK(c_bound(sx, sy, zup) == doctest::Approx(1.0));
  CHECK(c_bound(sx, sx, zup) == 0.0);
  CHECK(d_bound(sx, sy, mixed) == doctest::Approx(1.0));
  CHECK(d_bound(sx, sy, zup) == doctest::Approx(1.0));
  // Direct trace-norm route agrees.
  CHECK(d_bound_trace_oracle(sx, sy, zup_density()) == doctest::Approx(1.0));
  CHECK(d_bound_trace_oracle(sx, sx, cmat(0.5 * identity(2))) == 0.0);
}

TEST_CASE("example 1.1 algebra dependence") {
  cvec psi = cvec::Zero(4);
  psi[1] = 1 / std::sqrt(2.0);
  psi[2] = -1 / std::sqrt(2.0);
  const cmat singlet = psi * psi.adjoint();

  AlgebraPtr m4 = VonNeumannAlgebra::full(4);
  const AlgebraElement sx1(m4, {tensor_product(pauli_x(), identity(2))});
  const AlgebraElement sy1(m4, {tensor_product(pauli_y(), identity(2))});
  NormalState omega_psi = restrict_state(m4, singlet);
  const double d_large = d_bound(sx1, sy1, omega_psi);
  CHECK(d_large < 1e-12);
  CHECK(c_bound(sx1, sy1, omega_psi) < 1e-12);

  AlgebraPtr m2in4 = VonNeumannAlgebra::make({BlockSpec{2, 2}});
  const AlgebraElement sx(m2in4, {pauli_x()});
  const AlgebraElement sy(m2in4, {pauli_y()});
  NormalState restricted = restrict_state(m2in4, singlet);
  const double d_small = d_bound(sx, sy, restricted);
  CHECK(d_small == doctest::Approx(1.0));

  // Restricting the algebra strictly increased the bound.
  CHECK(d_small > d_large + 0.5);
}

TEST_CASE("bound ordering on random scenarios") {
  Rng rng(101);
  AlgebraPtr algebra = two_block_algebra();
  for (int trial = 0; trial < 30; ++trial) {
    const AlgebraElement a = random_hermitian_element(rng, algebra);
    const AlgebraElement b = random_hermitian_element(rng, algebra);
    NormalState rho = random_state_for(rng, algebra);
    const double c = c_bound(a, b, rho);
    const double d = d_bound(a, b, rho);
    const double sa = std::sqrt(std::max(
        0.0, state_expectation(rho, a * a).real() -
                 std::pow(state_expectation(rho, a).real(), 2)));
    const double sb = std::sqrt(std::max(
        0.0, state_expectation(rho, b * b).real() -
                 std::pow(state_expectation(rho, b).real(), 2)));
    CHECK(d >= c - 1e-10);
    CHECK(d <= sa * sb + 1e-9);
    CHECK(sa * sb >= c - 1e-10);  // Robertson-type bound
  }
}

TEST_CASE("d bound agrees with the trace-norm oracle on full algebras") {
  Rng rng(103);
  AlgebraPtr m3 = VonNeumannAlgebra::full(3);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraElement a(m3, {random_hermitian(rng, 3)});
    const AlgebraElement b(m3, {random_hermitian(rng, 3)});
    const cmat density = random_density(rng, 3);
    NormalState rho = restrict_state(m3, density);
    CHECK(std::abs(d_bound(a, b, rho) - d_bound_trace_oracle(a, b, density)) < 1e-9);
  }
  // The oracle rejects non-full algebras.
  AlgebraPtr m2in4 = VonNeumannAlgebra::make({BlockSpec{2, 2}});
  const AlgebraElement sx(m2in4, {pauli_x()});
  CHECK_THROWS_AS(d_bound_trace_oracle(sx, sx, cmat(identity(4) / 4.0)), ValidationError);
}

TEST_CASE("polar round trip reconstructs the commutator functional") {
  Rng rng(107);
  AlgebraPtr algebra = two_block_algebra();
  for (int trial = 0; trial < 10; ++trial) {
    const AlgebraElement a = random_hermitian_element(rng, algebra);
    const AlgebraElement b = random_hermitian_element(rng, algebra);
    NormalState rho = random_state_for(rng, algebra);
    NormalFunctional omega = commutator_functional(a, b, rho);
    PolarDecomposition pd = polar_decompose(omega);
    for (int probe = 0; probe < 20; ++probe) {
      const AlgebraElement x = random_element(rng, algebra);
      CHECK(std::abs(apply(omega, x) - apply(pd.absolute_value, x * pd.isometry)) < 1e-9);
    }
    // ||omega|| via the polar data matches the spectral route.
    CHECK(apply(pd.absolute_value, AlgebraElement::identity(algebra)).real() ==
          doctest::Approx(functional_norm(omega)).epsilon(1e-9));
  }
}
