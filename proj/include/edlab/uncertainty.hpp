#pragma once
// Measurement-uncertainty quantities and relation checkers: standard
// deviations, noise-operator errors, disturbances, the commutator bounds'
// consumers, geometric inequality margins, and the dilation-level vector
// construction behind the strengthened relation.

#include <utility>

#include "edlab/instrument.hpp"

namespace edlab {

/// sqrt(rho(A^2) - rho(A)^2).
double std_dev(const AlgebraElement& a, const NormalState& rho);

/// N = Pi^(2) - A Pi^(1) - Pi^(1) A + A^2 for a 1-D instrument.
AlgebraElement noise_operator(const AlgebraElement& a, const KrausInstrument& instr);

/// eps(A, rho; I) = sqrt(<rho, N>). Slightly negative pairings within
/// tolerance are clamped to zero; anything further is an error.
double error(const AlgebraElement& a, const NormalState& rho, const KrausInstrument& instr);

/// eta(B, rho; I) = sqrt(<rho, I(B^2,S) - B I(B,S) - I(B,S) B + B^2>).
double disturbance(const AlgebraElement& b, const NormalState& rho,
                   const KrausInstrument& instr);

/// Error and disturbance evaluated on a measuring-process model:
/// <rho~ (x) sigma, (U^dag (1 (x) F^(1)) U - A (x) 1)^2> and the analogue with
/// B (x) 1 conjugated by U.
double error_via_process(const AlgebraElement& a, const NormalState& rho,
                         const MeasuringProcess& mp);
double disturbance_via_process(const AlgebraElement& b, const NormalState& rho,
                               const MeasuringProcess& mp);

/// Cross-route evaluation through a minimal dilation:
/// eps = |(E^(1) V - V A) xi_rho|, eta = |(pi(B) V - V B) xi_rho|.
double error_via_dilation(const AlgebraElement& a, const NormalState& rho,
                          const MinimalDilation& dil);
double disturbance_via_dilation(const AlgebraElement& b, const NormalState& rho,
                                const MinimalDilation& dil);

/// eps*eta + eps*sigma_b + sigma_a*eta - bound.
double ozawa_margin(double eps, double eta, double sigma_a, double sigma_b, double bound);

/// eps^2 sigma_b^2 + sigma_a^2 eta^2
///   + 2 eps eta sqrt(sigma_a^2 sigma_b^2 - bound^2) - bound^2.
double branciard_margin(double eps, double eta, double sigma_a, double sigma_b, double bound);

double check_ozawa(const AlgebraElement& a, const AlgebraElement& b, const NormalState& rho,
                   const KrausInstrument& instr);
double check_branciard(const AlgebraElement& a, const AlgebraElement& b,
                       const NormalState& rho, const KrausInstrument& instr);
/// Branciard-form margin with the stronger functional-norm bound.
double check_strengthened(const AlgebraElement& a, const AlgebraElement& b,
                          const NormalState& rho, const KrausInstrument& instr);

/// eps(A) eta(B) - C_AB; negative values witness failure of the naive
/// product relation.
double heisenberg_product_deficit(const AlgebraElement& a, const AlgebraElement& b,
                                  const NormalState& rho, const KrausInstrument& instr);

/// Margin of the four-vector geometric inequality for real vectors with
/// m orthogonal to n (within 1e-10; the caller orthogonalizes).
double branciard_geometric(const rvec& a, const rvec& b, const rvec& m, const rvec& n);

double real_inner(const cvec& x, const cvec& y);
/// Complex-to-real embedding preserving the real inner product.
rvec realify(const cvec& x);

/// The dilation-space vectors of the strengthened relation's proof:
///   a = V (A - rho(A)) J W xi_rho      m = (E^(1) - rho(A)) V J W xi_rho
///   b = -i V (B - rho(B)) J xi_rho     n = -i (pi(B) - rho(B)) V J xi_rho
/// with W the polar isometry of the commutator functional.
struct ProofVectors {
  cvec a, b, m, n;
};

ProofVectors proof_vectors(const AlgebraElement& a, const AlgebraElement& b,
                           const NormalState& rho, const KrausInstrument& instr);
ProofVectors proof_vectors(const AlgebraElement& a, const AlgebraElement& b,
                           const NormalState& rho, const KrausInstrument& instr,
                           const MinimalDilation& dil);

/// Errors of A (from the x marginal) and B (from the y marginal) of a 2-D
/// instrument, and the corresponding joint-measurement margin.
std::pair<double, double> simultaneous_errors(const AlgebraElement& a,
                                              const AlgebraElement& b,
                                              const NormalState& rho,
                                              const KrausInstrument& instr2d);
double check_simultaneous(const AlgebraElement& a, const AlgebraElement& b,
                          const NormalState& rho, const KrausInstrument& instr2d);

/// State-independent error sup_rho eps(A, rho): the noise-operator pairing is
/// affine in rho, so the supremum is the largest eigenvalue across blocks.
double appleby_error(const AlgebraElement& a, const KrausInstrument& instr);

}  // namespace edlab
