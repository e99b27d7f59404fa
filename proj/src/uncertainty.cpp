#include "edlab/uncertainty.hpp"

#include <algorithm>
#include <cmath>

namespace edlab {

namespace {

double clamp_nonneg(double v, double tol, const char* who) {
  if (v < -tol) {
    throw ValidationError(std::string(who) + ": pairing " + std::to_string(v) +
                          " negative beyond tolerance; instrument inconsistent");
  }
  return std::max(v, 0.0);
}

double real_expectation(const NormalState& rho, const AlgebraElement& x) {
  return state_expectation(rho, x).real();
}

}  // namespace

double std_dev(const AlgebraElement& a, const NormalState& rho) {
  if (!a.is_hermitian()) throw ValidationError("std_dev: observable not self-adjoint");
  const double mean = real_expectation(rho, a);
  const double second = real_expectation(rho, a * a);
  return std::sqrt(std::max(second - mean * mean, 0.0));
}

AlgebraElement noise_operator(const AlgebraElement& a, const KrausInstrument& instr) {
  if (!a.is_hermitian()) throw ValidationError("noise_operator: observable not self-adjoint");
  if (instr.outcomes().arity() != 1) {
    throw DimensionError("noise_operator: requires a one-dimensional instrument");
  }
  const AlgebraElement m1 = instr.moment_operator(1);
  const AlgebraElement m2 = instr.moment_operator(2);
  return m2 - a * m1 - m1 * a + a * a;
}

double error(const AlgebraElement& a, const NormalState& rho, const KrausInstrument& instr) {
  const double v = real_expectation(rho, noise_operator(a, instr));
  return std::sqrt(clamp_nonneg(v, 1e-10, "error"));
}

double disturbance(const AlgebraElement& b, const NormalState& rho,
                   const KrausInstrument& instr) {
  if (!b.is_hermitian()) throw ValidationError("disturbance: observable not self-adjoint");
  if (instr.outcomes().arity() != 1) {
    throw DimensionError("disturbance: requires a one-dimensional instrument");
  }
  const AlgebraElement cb = instr.dual_apply_all(b);
  const AlgebraElement cb2 = instr.dual_apply_all(b * b);
  const AlgebraElement op = cb2 - b * cb - cb * b + b * b;
  const double v = real_expectation(rho, op);
  return std::sqrt(clamp_nonneg(v, 1e-10, "disturbance"));
}

namespace {

double process_moment(const MeasuringProcess& mp, const NormalState& rho,
                      const cmat& conjugated_minus_target) {
  const cmat rho_amb = rho.ambient_extension();
  const cmat joint = tensor_product(rho_amb, mp.probe_state);
  const cmat& noise = conjugated_minus_target;
  return (joint * noise * noise).trace().real();
}

}  // namespace

double error_via_process(const AlgebraElement& a, const NormalState& rho,
                         const MeasuringProcess& mp) {
  if (!a.is_hermitian()) throw ValidationError("error_via_process: observable not self-adjoint");
  if (mp.outcomes.arity() != 1) {
    throw DimensionError("error_via_process: requires one-dimensional outcomes");
  }
  const int d = a.algebra()->ambient_dim();
  validate_measuring_process(mp, d);
  cmat f1 = cmat::Zero(mp.probe_dim, mp.probe_dim);
  for (int s = 0; s < mp.outcomes.size(); ++s) {
    f1 += mp.outcomes.label(s) * mp.meter_projections[s];
  }
  const cmat meter = mp.unitary.adjoint() * tensor_product(cmat::Identity(d, d), f1) *
                     mp.unitary;
  const cmat noise = meter - tensor_product(embed(a), cmat::Identity(mp.probe_dim, mp.probe_dim));
  const double v = process_moment(mp, rho, noise);
  return std::sqrt(clamp_nonneg(v, 1e-10, "error_via_process"));
}

double disturbance_via_process(const AlgebraElement& b, const NormalState& rho,
                               const MeasuringProcess& mp) {
  if (!b.is_hermitian()) {
    throw ValidationError("disturbance_via_process: observable not self-adjoint");
  }
  const int d = b.algebra()->ambient_dim();
  validate_measuring_process(mp, d);
  const cmat big_b = tensor_product(embed(b), cmat::Identity(mp.probe_dim, mp.probe_dim));
  const cmat noise = mp.unitary.adjoint() * big_b * mp.unitary - big_b;
  const double v = process_moment(mp, rho, noise);
  return std::sqrt(clamp_nonneg(v, 1e-10, "disturbance_via_process"));
}

double error_via_dilation(const AlgebraElement& a, const NormalState& rho,
                          const MinimalDilation& dil) {
  const StandardFormSpace& sp = dil.space();
  const cvec xi = sp.coordinates(gns_vector(rho));
  const cvec moved = dil.label_moment(0) * (dil.isometry() * xi) -
                     dil.isometry() * (sp.left_mult_matrix(a) * xi);
  return moved.norm();
}

double disturbance_via_dilation(const AlgebraElement& b, const NormalState& rho,
                                const MinimalDilation& dil) {
  const StandardFormSpace& sp = dil.space();
  const cvec xi = sp.coordinates(gns_vector(rho));
  const cvec moved = dil.representation(b) * (dil.isometry() * xi) -
                     dil.isometry() * (sp.left_mult_matrix(b) * xi);
  return moved.norm();
}

double ozawa_margin(double eps, double eta, double sigma_a, double sigma_b, double bound) {
  return eps * eta + eps * sigma_b + sigma_a * eta - bound;
}

double branciard_margin(double eps, double eta, double sigma_a, double sigma_b,
                        double bound) {
  const double radicand =
      std::max(sigma_a * sigma_a * sigma_b * sigma_b - bound * bound, 0.0);
  return eps * eps * sigma_b * sigma_b + sigma_a * sigma_a * eta * eta +
         2.0 * eps * eta * std::sqrt(radicand) - bound * bound;
}

double check_ozawa(const AlgebraElement& a, const AlgebraElement& b, const NormalState& rho,
                   const KrausInstrument& instr) {
  return ozawa_margin(error(a, rho, instr), disturbance(b, rho, instr), std_dev(a, rho),
                      std_dev(b, rho), c_bound(a, b, rho));
}

double check_branciard(const AlgebraElement& a, const AlgebraElement& b,
                       const NormalState& rho, const KrausInstrument& instr) {
  return branciard_margin(error(a, rho, instr), disturbance(b, rho, instr), std_dev(a, rho),
                          std_dev(b, rho), c_bound(a, b, rho));
}

double check_strengthened(const AlgebraElement& a, const AlgebraElement& b,
                          const NormalState& rho, const KrausInstrument& instr) {
  return branciard_margin(error(a, rho, instr), disturbance(b, rho, instr), std_dev(a, rho),
                          std_dev(b, rho), d_bound(a, b, rho));
}

double heisenberg_product_deficit(const AlgebraElement& a, const AlgebraElement& b,
                                  const NormalState& rho, const KrausInstrument& instr) {
  return error(a, rho, instr) * disturbance(b, rho, instr) - c_bound(a, b, rho);
}

double branciard_geometric(const rvec& a, const rvec& b, const rvec& m, const rvec& n) {
  if (a.size() != b.size() || a.size() != m.size() || a.size() != n.size()) {
    throw DimensionError("branciard_geometric: vectors must share one dimension");
  }
  const double mn = m.dot(n);
  if (std::abs(mn) > 1e-10 * std::max(1.0, m.norm() * n.norm())) {
    throw ValidationError("branciard_geometric: m and n are not orthogonal");
  }
  const double ab = a.dot(b);
  const double am = (a - m).norm();
  const double bn = (b - n).norm();
  const double radicand =
      std::max(a.squaredNorm() * b.squaredNorm() - ab * ab, 0.0);
  return am * am * b.squaredNorm() + a.squaredNorm() * bn * bn +
         2.0 * am * bn * std::sqrt(radicand) - ab * ab;
}

double real_inner(const cvec& x, const cvec& y) { return x.dot(y).real(); }

rvec realify(const cvec& x) {
  rvec out(2 * x.size());
  out.head(x.size()) = x.real();
  out.tail(x.size()) = x.imag();
  return out;
}

ProofVectors proof_vectors(const AlgebraElement& a, const AlgebraElement& b,
                           const NormalState& rho, const KrausInstrument& instr) {
  return proof_vectors(a, b, rho, instr, minimal_dilation(instr));
}

ProofVectors proof_vectors(const AlgebraElement& a, const AlgebraElement& b,
                           const NormalState& rho, const KrausInstrument& instr,
                           const MinimalDilation& dil) {
  if (instr.outcomes().arity() != 1) {
    throw DimensionError("proof_vectors: requires a one-dimensional instrument");
  }
  const StandardFormSpace& sp = dil.space();
  const HsVector xi = gns_vector(rho);
  const AlgebraElement w =
      polar_decompose(commutator_functional(a, b, rho)).isometry;
  const HsVector jw = modular_conjugate(left_action(w, xi));  // J W xi

  const double alpha = state_expectation(rho, a).real();
  const double beta = state_expectation(rho, b).real();
  const cvec jw_coord = sp.coordinates(jw);
  const cvec xi_coord = sp.coordinates(xi);  // J xi = xi in the cone
  const cmat& v = dil.isometry();
  const cplx minus_i(0, -1);

  ProofVectors out;
  out.a = v * sp.coordinates(left_action(a - cplx(alpha, 0), jw));
  out.b = minus_i * (v * sp.coordinates(left_action(b - cplx(beta, 0), xi)));
  out.m = dil.label_moment(0) * (v * jw_coord) - alpha * (v * jw_coord);
  out.n = minus_i * (dil.representation(b) * (v * xi_coord) - beta * (v * xi_coord));
  return out;
}

std::pair<double, double> simultaneous_errors(const AlgebraElement& a,
                                              const AlgebraElement& b,
                                              const NormalState& rho,
                                              const KrausInstrument& instr2d) {
  if (instr2d.outcomes().arity() != 2) {
    throw DimensionError("simultaneous_errors: requires a two-dimensional instrument");
  }
  if (!a.is_hermitian() || !b.is_hermitian()) {
    throw ValidationError("simultaneous_errors: observables must be self-adjoint");
  }
  auto marginal_error = [&](const AlgebraElement& obs, int axis) {
    const AlgebraElement m1 = instr2d.moment_operator(1, axis);
    const AlgebraElement m2 = instr2d.moment_operator(2, axis);
    const AlgebraElement noise = m2 - obs * m1 - m1 * obs + obs * obs;
    const double v = state_expectation(rho, noise).real();
    return std::sqrt(clamp_nonneg(v, 1e-10, "simultaneous_errors"));
  };
  return {marginal_error(a, 0), marginal_error(b, 1)};
}

double check_simultaneous(const AlgebraElement& a, const AlgebraElement& b,
                          const NormalState& rho, const KrausInstrument& instr2d) {
  const auto [eps_a, eps_b] = simultaneous_errors(a, b, rho, instr2d);
  return branciard_margin(eps_a, eps_b, std_dev(a, rho), std_dev(b, rho),
                          d_bound(a, b, rho));
}

double appleby_error(const AlgebraElement& a, const KrausInstrument& instr) {
  const AlgebraElement noise = noise_operator(a, instr);
  double top = 0.0;
  for (int k = 0; k < noise.algebra()->block_count(); ++k) {
    SpectralDecomposition sd = spectral_decompose(noise.block(k));
    if (sd.eigenvalues.size() > 0) top = std::max(top, sd.eigenvalues.maxCoeff());
  }
  return std::sqrt(std::max(top, 0.0));
}

}  // namespace edlab
