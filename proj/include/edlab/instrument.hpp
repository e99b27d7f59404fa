#pragma once
// CP instruments with finite outcome sets over a block algebra: dual and
// predual maps, POVMs and outcome moments, measuring-process models, and
// minimal Stinespring-type dilations over the standard-form space.

#include <array>
#include <cstdint>
#include <vector>

#include "edlab/standard_form.hpp"

namespace edlab {

/// Finite set of distinct real labels (arity 1) or label pairs (arity 2).
class OutcomeSpace {
 public:
  static OutcomeSpace line(std::vector<double> labels);
  static OutcomeSpace plane(std::vector<std::array<double, 2>> labels);

  int arity() const { return arity_; }
  int size() const { return static_cast<int>(labels_.size()); }
  double label(int i) const;
  const std::array<double, 2>& pair_label(int i) const { return labels_[i]; }
  double component(int i, int axis) const { return labels_[i][axis]; }
  std::vector<int> all() const;
  bool same_labels(const OutcomeSpace& other) const;

 private:
  OutcomeSpace(int arity, std::vector<std::array<double, 2>> labels);
  int arity_;
  std::vector<std::array<double, 2>> labels_;  // second entry unused at arity 1
};

/// Unnormalized outcome of a predual map: block densities whose total trace
/// is the outcome probability.
struct WeightedState {
  AlgebraPtr algebra;
  std::vector<cmat> densities;
  double weight() const;
};

/// CP instrument stored through ambient Kraus operators plus the algebra it
/// acts on. Construction enforces completeness and the subset condition
/// (every dual map sends the algebra into itself).
class KrausInstrument {
 public:
  KrausInstrument(AlgebraPtr algebra, OutcomeSpace outcomes,
                  std::vector<std::vector<cmat>> kraus, double tol = kHermitianTol);

  const AlgebraPtr& algebra() const { return algebra_; }
  const OutcomeSpace& outcomes() const { return outcomes_; }
  const std::vector<std::vector<cmat>>& kraus() const { return kraus_; }
  double tolerance() const { return tol_; }

  /// Dual map x -> sum_{s in subset, j} K^dag embed(x) K, returned in block
  /// form. Throws if the ambient result leaves the algebra beyond tolerance.
  AlgebraElement dual_apply(const AlgebraElement& x, const std::vector<int>& subset) const;
  AlgebraElement dual_apply_all(const AlgebraElement& x) const;

  /// Predual map on states; the result trace is the outcome probability.
  WeightedState predual_apply(const NormalState& rho, const std::vector<int>& subset) const;

  double outcome_probability(const NormalState& rho, const std::vector<int>& subset) const;

  /// Normalized post-measurement state; falls back to the full-set channel
  /// when the subset has probability zero.
  NormalState post_state(const NormalState& rho, const std::vector<int>& subset) const;

  /// Probability of first observing an outcome in `subset`, then finding the
  /// observable m in the spectral window [lo, hi].
  double joint_probability(const NormalState& rho, const AlgebraElement& m, double lo,
                           double hi, const std::vector<int>& subset) const;

  /// Effects Pi(s) = dual map of the identity at each single outcome.
  std::vector<AlgebraElement> povm() const;

  /// sum_s s^n Pi(s) for one-dimensional outcome spaces.
  AlgebraElement moment_operator(int n) const;
  /// Marginal moment over one axis of a two-dimensional outcome space.
  AlgebraElement moment_operator(int n, int axis) const;

 private:
  AlgebraPtr algebra_;
  OutcomeSpace outcomes_;
  std::vector<std::vector<cmat>> kraus_;
  double tol_;
};

/// Probability that the observable m lies in [lo, hi] in the given state.
double spectral_window_probability(const NormalState& rho, const AlgebraElement& m,
                                   double lo, double hi);

/// Indirect measurement model: probe state, meter PVM with real labels, and
/// a coupling unitary on system (x) probe.
struct MeasuringProcess {
  int probe_dim = 0;
  cmat probe_state;
  OutcomeSpace outcomes = OutcomeSpace::line({0.0});
  std::vector<cmat> meter_projections;
  cmat unitary;
};

/// Shape/PVM/unitarity validation; throws on violation.
void validate_measuring_process(const MeasuringProcess& mp, int system_dim);

/// The instrument x -> (id (x) sigma)[U^dag (x (x) F(s)) U], realized through
/// the Kraus family sqrt(p_l) (1 (x) <f_j|) U (1 (x) |e_l>). Throws when the
/// process does not define an instrument for the given algebra (subset
/// condition failure).
KrausInstrument instrument_from_measuring_process(const MeasuringProcess& mp,
                                                  const AlgebraPtr& algebra);

/// Dual maps agree on a spanning set of (element, outcome) pairs.
bool statistically_equivalent(const KrausInstrument& a, const KrausInstrument& b, double tol);
bool statistically_equivalent(const MeasuringProcess& a, const MeasuringProcess& b,
                              const AlgebraPtr& algebra, double tol);

/// 1-D instrument obtained by merging outcomes along one axis (0 = x, 1 = y)
/// of a 2-D instrument. Labels keep first-occurrence order.
KrausInstrument marginal_instrument(const KrausInstrument& instr, int axis);

/// Minimal dilation (K, E, pi, V) of an instrument over the standard-form
/// space: reconstruction I(x, {s}) = V^dag pi(x) E(s) V with E commuting with
/// pi and the span of pi(M) E(S) V H exhausting K.
class MinimalDilation {
 public:
  const StandardFormSpace& space() const { return space_; }
  int dim() const { return dim_; }
  int outcome_count() const { return static_cast<int>(ranks_.size()); }
  int rank(int s) const { return ranks_[s]; }
  int offset(int s) const { return offsets_[s]; }
  const cmat& isometry() const { return isometry_; }  // dim x hs_dim

  /// pi(x) on the dilation space.
  cmat representation(const AlgebraElement& x) const;
  /// E(s): projection onto the outcome-s summand.
  cmat pvm(int s) const;
  /// sum_s label(s) E(s) for 1-D outcomes (axis ignored), or the marginal
  /// label moment for 2-D outcomes.
  cmat label_moment(int axis = 0) const;

  friend MinimalDilation minimal_dilation(const KrausInstrument& instr);

 private:
  explicit MinimalDilation(StandardFormSpace space) : space_(std::move(space)) {}
  StandardFormSpace space_;
  OutcomeSpace outcomes_ = OutcomeSpace::line({0.0});
  int dim_ = 0;
  std::vector<int> ranks_, offsets_;
  std::vector<cmat> basis_;  // per outcome: kept Gram eigenvectors (Ph x r)
  std::vector<rvec> eigs_;   // per outcome: kept Gram eigenvalues
  cmat isometry_;
};

MinimalDilation minimal_dilation(const KrausInstrument& instr);

// --- builders -------------------------------------------------------------

/// Projective instrument of a self-adjoint element: spectral projections with
/// eigenvalue labels (degenerate eigenvalues merged across blocks).
KrausInstrument projective_instrument(const AlgebraElement& a);

/// Single-outcome instrument whose channel is the identity.
KrausInstrument trivial_instrument(const AlgebraPtr& algebra, double label);

/// Two-output instrument running `first` then `second`; outcome pairs carry
/// (first label, second label).
KrausInstrument sequential_instrument(const KrausInstrument& first,
                                      const KrausInstrument& second);

/// Deterministic random instrument with the given outcome count and Kraus
/// rank per outcome; arity 2 gives pair labels. Valid for the algebra by
/// construction.
KrausInstrument random_instrument(uint64_t seed, const AlgebraPtr& algebra, int n_outcomes,
                                  int kraus_rank, int arity = 1);

NormalState random_state(uint64_t seed, const AlgebraPtr& algebra);

AlgebraElement random_observable(uint64_t seed, const AlgebraPtr& algebra, double norm_bound);

/// Random block algebra with ambient dimension <= dim_max; when
/// allow_subalgebras is set the pool includes multi-block structures,
/// multiplicities > 1, and random basis changes.
AlgebraPtr random_algebra(uint64_t seed, int dim_max, bool allow_subalgebras);

}  // namespace edlab
