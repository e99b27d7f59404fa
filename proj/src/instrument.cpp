#include "edlab/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "edlab/rng.hpp"

namespace edlab {

namespace {

// Blockwise matrix units in the coordinate order of StandardFormSpace:
// index off_k + col*n_k + row corresponds to e_{row,col} in block k.
std::vector<AlgebraElement> matrix_units(const AlgebraPtr& algebra) {
  std::vector<AlgebraElement> units;
  for (int k = 0; k < algebra->block_count(); ++k) {
    const int n = algebra->blocks()[k].dim;
    for (int col = 0; col < n; ++col) {
      for (int row = 0; row < n; ++row) {
        AlgebraElement u = AlgebraElement::zero(algebra);
        std::vector<cmat> blocks = u.blocks();
        blocks[k](row, col) = 1.0;
        units.push_back(AlgebraElement(algebra, std::move(blocks)));
      }
    }
  }
  return units;
}

}  // namespace

OutcomeSpace::OutcomeSpace(int arity, std::vector<std::array<double, 2>> labels)
    : arity_(arity), labels_(std::move(labels)) {
  if (labels_.empty()) throw ValidationError("outcome space: no labels");
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (!std::isfinite(labels_[i][0]) || !std::isfinite(labels_[i][1])) {
      throw ValidationError("outcome space: non-finite label");
    }
    for (size_t j = 0; j < i; ++j) {
      const bool same = arity_ == 1 ? labels_[i][0] == labels_[j][0]
                                    : labels_[i] == labels_[j];
      if (same) throw ValidationError("outcome space: labels must be distinct");
    }
  }
}

OutcomeSpace OutcomeSpace::line(std::vector<double> labels) {
  std::vector<std::array<double, 2>> pairs;
  pairs.reserve(labels.size());
  for (double l : labels) pairs.push_back({l, 0.0});
  return OutcomeSpace(1, std::move(pairs));
}

OutcomeSpace OutcomeSpace::plane(std::vector<std::array<double, 2>> labels) {
  return OutcomeSpace(2, std::move(labels));
}

double OutcomeSpace::label(int i) const {
  if (arity_ != 1) throw DimensionError("outcome space: scalar label on 2-D space");
  return labels_[i][0];
}

std::vector<int> OutcomeSpace::all() const {
  std::vector<int> idx(labels_.size());
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

bool OutcomeSpace::same_labels(const OutcomeSpace& other) const {
  if (arity_ != other.arity_ || labels_.size() != other.labels_.size()) return false;
  for (size_t i = 0; i < labels_.size(); ++i) {
    for (int ax = 0; ax < arity_; ++ax) {
      const double a = labels_[i][ax], b = other.labels_[i][ax];
      if (std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)})) return false;
    }
  }
  return true;
}

double WeightedState::weight() const {
  double w = 0;
  for (const cmat& d : densities) w += d.trace().real();
  return w;
}

KrausInstrument::KrausInstrument(AlgebraPtr algebra, OutcomeSpace outcomes,
                                 std::vector<std::vector<cmat>> kraus, double tol)
    : algebra_(std::move(algebra)),
      outcomes_(std::move(outcomes)),
      kraus_(std::move(kraus)),
      tol_(tol) {
  if (!algebra_) throw ValidationError("instrument: null algebra");
  if (static_cast<int>(kraus_.size()) != outcomes_.size()) {
    throw DimensionError("instrument: one Kraus list per outcome required");
  }
  const int d = algebra_->ambient_dim();
  cmat total = cmat::Zero(d, d);
  for (const auto& list : kraus_) {
    for (const cmat& k : list) {
      if (k.rows() != d || k.cols() != d) {
        throw DimensionError("instrument: Kraus operator has wrong shape");
      }
      if (!all_finite(k)) throw ValidationError("instrument: non-finite Kraus operator");
      total += k.adjoint() * k;
    }
  }
  const double defect = (total - cmat::Identity(d, d)).norm();
  if (defect > tol_ * std::max(1.0, std::sqrt(double(d)))) {
    throw ValidationError("instrument: completeness defect " + std::to_string(defect));
  }
  // Subset condition: every dual map must send the algebra into itself.
  const std::vector<AlgebraElement> units = matrix_units(algebra_);
  for (int s = 0; s < outcomes_.size(); ++s) {
    for (const AlgebraElement& u : units) {
      (void)dual_apply(u, {s});
    }
  }
}

AlgebraElement KrausInstrument::dual_apply(const AlgebraElement& x,
                                           const std::vector<int>& subset) const {
  if (!compatible(x.algebra(), algebra_)) {
    throw DimensionError("dual_apply: algebra mismatch");
  }
  const int d = algebra_->ambient_dim();
  const cmat ambient_x = embed(x);
  cmat out = cmat::Zero(d, d);
  for (int s : subset) {
    if (s < 0 || s >= outcomes_.size()) throw DimensionError("dual_apply: bad outcome index");
    for (const cmat& k : kraus_[s]) out += k.adjoint() * ambient_x * k;
  }
  AlgebraElement result = conditional_expectation(algebra_, out);
  const double defect = (embed(result) - out).norm();
  if (defect > tol_ * std::max(1.0, out.norm())) {
    throw ValidationError("dual_apply: image leaves the algebra (defect " +
                          std::to_string(defect) + "); instrument ill-formed for this algebra");
  }
  return result;
}

AlgebraElement KrausInstrument::dual_apply_all(const AlgebraElement& x) const {
  return dual_apply(x, outcomes_.all());
}

WeightedState KrausInstrument::predual_apply(const NormalState& rho,
                                             const std::vector<int>& subset) const {
  if (!compatible(rho.algebra(), algebra_)) {
    throw DimensionError("predual_apply: algebra mismatch");
  }
  const int d = algebra_->ambient_dim();
  const cmat ambient_rho = rho.ambient_extension();
  cmat out = cmat::Zero(d, d);
  for (int s : subset) {
    if (s < 0 || s >= outcomes_.size())
      throw DimensionError("predual_apply: bad outcome index");
    for (const cmat& k : kraus_[s]) out += k * ambient_rho * k.adjoint();
  }
  return WeightedState{algebra_, restrict_functional(algebra_, out)};
}

double KrausInstrument::outcome_probability(const NormalState& rho,
                                            const std::vector<int>& subset) const {
  const double w = predual_apply(rho, subset).weight();
  return std::clamp(w, 0.0, 1.0);
}

NormalState KrausInstrument::post_state(const NormalState& rho,
                                        const std::vector<int>& subset) const {
  WeightedState w = predual_apply(rho, subset);
  const double p = w.weight();
  if (p < 1e-12) {
    // Zero-probability branch: the full-set channel output.
    WeightedState full = predual_apply(rho, outcomes_.all());
    std::vector<cmat> densities = full.densities;
    const double t = full.weight();
    for (cmat& dk : densities) dk /= t;
    return NormalState(algebra_, std::move(densities));
  }
  std::vector<cmat> densities = w.densities;
  for (cmat& dk : densities) dk /= p;
  return NormalState(algebra_, std::move(densities));
}

double KrausInstrument::joint_probability(const NormalState& rho, const AlgebraElement& m,
                                          double lo, double hi,
                                          const std::vector<int>& subset) const {
  if (!m.is_hermitian()) throw ValidationError("joint_probability: observable not self-adjoint");
  // <predual(rho, subset), window projection>; equals Pr{subset} times the
  // conditional spectral probability in the post state.
  WeightedState w = predual_apply(rho, subset);
  cplx total = 0;
  for (int k = 0; k < algebra_->block_count(); ++k) {
    SpectralDecomposition sd = spectral_decompose(m.block(k));
    for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
      if (sd.eigenvalues[i] < lo || sd.eigenvalues[i] > hi) continue;
      const cvec v = sd.eigenvectors.col(i);
      total += (v.adjoint() * w.densities[k] * v)(0, 0);
    }
  }
  return std::clamp(total.real(), 0.0, 1.0);
}

std::vector<AlgebraElement> KrausInstrument::povm() const {
  std::vector<AlgebraElement> effects;
  const AlgebraElement one = AlgebraElement::identity(algebra_);
  for (int s = 0; s < outcomes_.size(); ++s) effects.push_back(dual_apply(one, {s}));
  return effects;
}

AlgebraElement KrausInstrument::moment_operator(int n) const {
  if (outcomes_.arity() != 1) {
    throw DimensionError("moment_operator: outcome space is not one-dimensional");
  }
  return moment_operator(n, 0);
}

AlgebraElement KrausInstrument::moment_operator(int n, int axis) const {
  if (axis < 0 || axis >= outcomes_.arity()) {
    throw DimensionError("moment_operator: bad axis for this outcome space");
  }
  if (n < 0) throw ValidationError("moment_operator: negative power");
  std::vector<AlgebraElement> effects = povm();
  AlgebraElement out = AlgebraElement::zero(algebra_);
  for (int s = 0; s < outcomes_.size(); ++s) {
    out += std::pow(outcomes_.component(s, axis), n) * effects[s];
  }
  return out;
}

double spectral_window_probability(const NormalState& rho, const AlgebraElement& m,
                                   double lo, double hi) {
  if (!m.is_hermitian()) {
    throw ValidationError("spectral_window_probability: observable not self-adjoint");
  }
  if (!compatible(rho.algebra(), m.algebra())) {
    throw DimensionError("spectral_window_probability: algebra mismatch");
  }
  cplx total = 0;
  for (int k = 0; k < m.algebra()->block_count(); ++k) {
    SpectralDecomposition sd = spectral_decompose(m.block(k));
    for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
      if (sd.eigenvalues[i] < lo || sd.eigenvalues[i] > hi) continue;
      const cvec v = sd.eigenvectors.col(i);
      total += (v.adjoint() * rho.densities()[k] * v)(0, 0);
    }
  }
  return std::clamp(total.real(), 0.0, 1.0);
}

void validate_measuring_process(const MeasuringProcess& mp, int system_dim) {
  if (mp.probe_dim <= 0) throw ValidationError("measuring process: probe_dim must be positive");
  const int kdim = mp.probe_dim;
  if (mp.probe_state.rows() != kdim || mp.probe_state.cols() != kdim) {
    throw DimensionError("measuring process: probe state has wrong shape");
  }
  if (std::abs(mp.probe_state.trace().real() - 1.0) > 1e-9) {
    throw ValidationError("measuring process: probe state trace != 1");
  }
  SpectralDecomposition sd = spectral_decompose(mp.probe_state);
  if (sd.eigenvalues.minCoeff() < -1e-9) {
    throw ValidationError("measuring process: probe state not PSD");
  }
  if (static_cast<int>(mp.meter_projections.size()) != mp.outcomes.size()) {
    throw DimensionError("measuring process: one meter projection per outcome required");
  }
  cmat sum = cmat::Zero(kdim, kdim);
  for (size_t s = 0; s < mp.meter_projections.size(); ++s) {
    const cmat& f = mp.meter_projections[s];
    if (f.rows() != kdim || f.cols() != kdim) {
      throw DimensionError("measuring process: meter projection has wrong shape");
    }
    if ((f - f.adjoint()).norm() > 1e-9 * std::max(1.0, f.norm()) ||
        (f * f - f).norm() > 1e-9 * std::max(1.0, f.norm())) {
      throw ValidationError("measuring process: meter element is not a projection");
    }
    for (size_t t = 0; t < s; ++t) {
      if ((f * mp.meter_projections[t]).norm() > 1e-9) {
        throw ValidationError("measuring process: meter projections not orthogonal");
      }
    }
    sum += f;
  }
  if ((sum - cmat::Identity(kdim, kdim)).norm() > 1e-9 * std::sqrt(double(kdim))) {
    throw ValidationError("measuring process: meter projections do not sum to identity");
  }
  const int total = system_dim * kdim;
  if (total > kMaxDim) {
    throw ValidationError("measuring process: system x probe dimension exceeds maximum");
  }
  if (mp.unitary.rows() != total || mp.unitary.cols() != total) {
    throw DimensionError("measuring process: unitary has wrong shape");
  }
  if ((mp.unitary.adjoint() * mp.unitary - cmat::Identity(total, total)).norm() >
      1e-10 * std::sqrt(double(total))) {
    throw ValidationError("measuring process: coupling operator is not unitary");
  }
}

KrausInstrument instrument_from_measuring_process(const MeasuringProcess& mp,
                                                  const AlgebraPtr& algebra) {
  const int d = algebra->ambient_dim();
  validate_measuring_process(mp, d);
  const int kdim = mp.probe_dim;
  SpectralDecomposition probe = spectral_decompose(mp.probe_state);

  std::vector<std::vector<cmat>> kraus(mp.outcomes.size());
  for (int s = 0; s < mp.outcomes.size(); ++s) {
    SpectralDecomposition f = spectral_decompose(mp.meter_projections[s]);
    for (Eigen::Index l = 0; l < probe.eigenvalues.size(); ++l) {
      const double p = probe.eigenvalues[l];
      if (p <= 1e-12) continue;
      const cvec e = probe.eigenvectors.col(l);
      for (Eigen::Index j = 0; j < f.eigenvalues.size(); ++j) {
        if (f.eigenvalues[j] < 0.5) continue;  // range basis of the projection
        const cvec fv = f.eigenvectors.col(j);
        // sqrt(p) (1 (x) <f|) U (1 (x) |e>)
        cmat k = cmat::Zero(d, d);
        for (int i = 0; i < d; ++i) {
          for (int i2 = 0; i2 < d; ++i2) {
            cplx sum = 0;
            for (int a = 0; a < kdim; ++a) {
              for (int b = 0; b < kdim; ++b) {
                sum += std::conj(fv[a]) * mp.unitary(i * kdim + a, i2 * kdim + b) * e[b];
              }
            }
            k(i, i2) = sum;
          }
        }
        kraus[s].push_back(std::sqrt(p) * k);
      }
    }
  }
  return KrausInstrument(algebra, mp.outcomes, std::move(kraus));
}

bool statistically_equivalent(const KrausInstrument& a, const KrausInstrument& b,
                              double tol) {
  if (!compatible(a.algebra(), b.algebra())) {
    throw DimensionError("statistically_equivalent: algebra mismatch");
  }
  if (!a.outcomes().same_labels(b.outcomes())) {
    throw ValidationError("statistically_equivalent: outcome spaces differ");
  }
  const std::vector<AlgebraElement> units = matrix_units(a.algebra());
  for (int s = 0; s < a.outcomes().size(); ++s) {
    for (const AlgebraElement& u : units) {
      const AlgebraElement da = a.dual_apply(u, {s});
      const AlgebraElement db = b.dual_apply(u, {s});
      if ((da - db).frobenius() > tol * std::max(1.0, da.frobenius())) return false;
    }
  }
  return true;
}

bool statistically_equivalent(const MeasuringProcess& a, const MeasuringProcess& b,
                              const AlgebraPtr& algebra, double tol) {
  return statistically_equivalent(instrument_from_measuring_process(a, algebra),
                                  instrument_from_measuring_process(b, algebra), tol);
}

KrausInstrument marginal_instrument(const KrausInstrument& instr, int axis) {
  if (instr.outcomes().arity() != 2) {
    throw DimensionError("marginal_instrument: requires a two-dimensional outcome space");
  }
  if (axis != 0 && axis != 1) throw DimensionError("marginal_instrument: axis must be 0 or 1");
  std::vector<double> labels;
  std::vector<std::vector<cmat>> kraus;
  for (int s = 0; s < instr.outcomes().size(); ++s) {
    const double l = instr.outcomes().component(s, axis);
    auto it = std::find(labels.begin(), labels.end(), l);
    size_t pos;
    if (it == labels.end()) {
      labels.push_back(l);
      kraus.emplace_back();
      pos = labels.size() - 1;
    } else {
      pos = static_cast<size_t>(it - labels.begin());
    }
    for (const cmat& k : instr.kraus()[s]) kraus[pos].push_back(k);
  }
  return KrausInstrument(instr.algebra(), OutcomeSpace::line(std::move(labels)),
                         std::move(kraus), instr.tolerance());
}

// --- minimal dilation -------------------------------------------------------

cmat MinimalDilation::representation(const AlgebraElement& x) const {
  const cmat lmat = space_.left_mult_matrix(x);
  const int h = space_.dim();
  cmat out = cmat::Zero(dim_, dim_);
  for (size_t s = 0; s < basis_.size(); ++s) {
    const int r = ranks_[s];
    if (r == 0) continue;
    const cmat& q = basis_[s];  // (h*h) x r
    // Apply kron(L, I_h) to each kept eigenvector via the reshape trick.
    cmat kq(q.rows(), r);
    for (int c = 0; c < r; ++c) {
      Eigen::Map<const cmat> m(q.col(c).data(), h, h);  // row i, column p
      cmat moved = m * lmat.transpose();
      kq.col(c) = Eigen::Map<const cvec>(moved.data(), h * h);
    }
    cmat compressed = q.adjoint() * kq;  // r x r
    for (int rr = 0; rr < r; ++rr) {
      for (int cc = 0; cc < r; ++cc) {
        compressed(rr, cc) *= std::sqrt(eigs_[s][rr] / eigs_[s][cc]);
      }
    }
    out.block(offsets_[s], offsets_[s], r, r) = compressed;
  }
  return out;
}

cmat MinimalDilation::pvm(int s) const {
  cmat out = cmat::Zero(dim_, dim_);
  out.block(offsets_[s], offsets_[s], ranks_[s], ranks_[s]) =
      cmat::Identity(ranks_[s], ranks_[s]);
  return out;
}

cmat MinimalDilation::label_moment(int axis) const {
  if (axis < 0 || axis >= outcomes_.arity()) {
    throw DimensionError("label_moment: bad axis for this outcome space");
  }
  cmat out = cmat::Zero(dim_, dim_);
  for (size_t s = 0; s < ranks_.size(); ++s) {
    out.block(offsets_[s], offsets_[s], ranks_[s], ranks_[s]) =
        outcomes_.component(static_cast<int>(s), axis) *
        cmat::Identity(ranks_[s], ranks_[s]);
  }
  return out;
}

MinimalDilation minimal_dilation(const KrausInstrument& instr) {
  const AlgebraPtr& algebra = instr.algebra();
  StandardFormSpace space(algebra);
  const int h = space.dim();
  const int n_out = instr.outcomes().size();
  const std::vector<AlgebraElement> units = matrix_units(algebra);

  // Gram matrix of the sesquilinear form <u (x) xi, v (x) eta> =
  // <xi| pi(I(u^dag v, {s})) eta> on (matrix units of M) x (HS units).
  // The form is block diagonal over outcomes. Coefficient index: p*h + i.
  std::vector<cmat> grams(n_out);
  std::vector<Eigen::SelfAdjointEigenSolver<cmat>> eigs(n_out);
  double max_eig = 0;
  for (int s = 0; s < n_out; ++s) {
    // Images of all matrix units under the outcome-s dual map.
    std::vector<AlgebraElement> img;
    img.reserve(units.size());
    for (const AlgebraElement& u : units) img.push_back(instr.dual_apply(u, {s}));

    cmat g = cmat::Zero(h * h, h * h);
    for (int k = 0; k < algebra->block_count(); ++k) {
      const int n = algebra->blocks()[k].dim;
      const int uoff = space.block_coord_offset(k);
      for (int a = 0; a < n; ++a) {       // shared row of e_{a,b}^dag e_{a,d}
        for (int b = 0; b < n; ++b) {
          for (int dd = 0; dd < n; ++dd) {
            // e_{a,b}^dag e_{a,d} = e_{b,d} in block k.
            const AlgebraElement& z = img[uoff + dd * n + b];
            const int p = uoff + b * n + a;
            const int q = uoff + dd * n + a;
            for (int k2 = 0; k2 < algebra->block_count(); ++k2) {
              const int n2 = algebra->blocks()[k2].dim;
              const int ioff = space.block_coord_offset(k2);
              const cmat& zb = z.block(k2);
              for (int beta = 0; beta < n2; ++beta) {  // shared column index
                for (int alpha = 0; alpha < n2; ++alpha) {
                  for (int gamma = 0; gamma < n2; ++gamma) {
                    g(p * h + ioff + beta * n2 + alpha,
                      q * h + ioff + beta * n2 + gamma) = zb(alpha, gamma);
                  }
                }
              }
            }
          }
        }
      }
    }
    grams[s] = 0.5 * (g + g.adjoint());
    eigs[s].compute(grams[s]);
    if (eigs[s].info() != Eigen::Success) {
      throw Error("minimal_dilation: Gram eigendecomposition failed");
    }
    if (eigs[s].eigenvalues().size() > 0) {
      max_eig = std::max(max_eig, eigs[s].eigenvalues().maxCoeff());
    }
  }
  const double cutoff = kZeroEigenTol * std::max(max_eig, 1e-300);

  MinimalDilation dil(std::move(space));
  dil.outcomes_ = instr.outcomes();
  for (int s = 0; s < n_out; ++s) {
    const rvec& vals = eigs[s].eigenvalues();
    std::vector<int> kept;
    for (Eigen::Index i = vals.size() - 1; i >= 0; --i) {  // descending
      if (vals[i] > cutoff) kept.push_back(static_cast<int>(i));
    }
    const int r = static_cast<int>(kept.size());
    cmat q(h * h, r);
    rvec lam(r);
    for (int c = 0; c < r; ++c) {
      q.col(c) = eigs[s].eigenvectors().col(kept[c]);
      lam[c] = vals[kept[c]];
    }
    dil.offsets_.push_back(dil.dim_);
    dil.ranks_.push_back(r);
    dil.basis_.push_back(std::move(q));
    dil.eigs_.push_back(std::move(lam));
    dil.dim_ += r;
  }

  // Isometry V: xi_j -> class of 1 (x) xi_j; coordinates sqrt(lam) Q^dag c.
  cvec idc = cvec::Zero(h);
  {
    const StandardFormSpace& sp = dil.space_;
    HsVector one_vec{algebra, {}};
    for (const BlockSpec& b : algebra->blocks())
      one_vec.blocks.push_back(cmat::Identity(b.dim, b.dim));
    idc = sp.coordinates(one_vec);
  }
  dil.isometry_ = cmat::Zero(dil.dim_, h);
  for (int s = 0; s < n_out; ++s) {
    const int r = dil.ranks_[s];
    if (r == 0) continue;
    const cmat& q = dil.basis_[s];
    for (int j = 0; j < h; ++j) {
      for (int c = 0; c < r; ++c) {
        cplx sum = 0;
        for (int p = 0; p < h; ++p) {
          if (idc[p] == cplx(0, 0)) continue;
          sum += std::conj(q(p * h + j, c)) * idc[p];
        }
        dil.isometry_(dil.offsets_[s] + c, j) = std::sqrt(dil.eigs_[s][c]) * sum;
      }
    }
  }
  return dil;
}

// --- builders ---------------------------------------------------------------

KrausInstrument projective_instrument(const AlgebraElement& a) {
  if (!a.is_hermitian()) {
    throw ValidationError("projective_instrument: observable must be self-adjoint");
  }
  const AlgebraPtr& algebra = a.algebra();
  struct Eigenpair {
    double value;
    int block;
    cvec vector;
  };
  std::vector<Eigenpair> pairs;
  double scale = 1.0;
  for (int k = 0; k < algebra->block_count(); ++k) {
    SpectralDecomposition sd = spectral_decompose(a.block(k));
    for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
      pairs.push_back({sd.eigenvalues[i], k, sd.eigenvectors.col(i)});
      scale = std::max(scale, std::abs(sd.eigenvalues[i]));
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Eigenpair& x, const Eigenpair& y) { return x.value > y.value; });

  std::vector<double> labels;
  std::vector<std::vector<cmat>> kraus;
  size_t i = 0;
  while (i < pairs.size()) {
    size_t j = i;
    while (j + 1 < pairs.size() && pairs[i].value - pairs[j + 1].value <= 1e-8 * scale) ++j;
    AlgebraElement proj = AlgebraElement::zero(algebra);
    std::vector<cmat> blocks = proj.blocks();
    double label = 0;
    for (size_t t = i; t <= j; ++t) {
      blocks[pairs[t].block] += pairs[t].vector * pairs[t].vector.adjoint();
      label += pairs[t].value;
    }
    label /= double(j - i + 1);
    labels.push_back(label);
    kraus.push_back({embed(AlgebraElement(algebra, std::move(blocks)))});
    i = j + 1;
  }
  return KrausInstrument(algebra, OutcomeSpace::line(std::move(labels)), std::move(kraus));
}

KrausInstrument trivial_instrument(const AlgebraPtr& algebra, double label) {
  const int d = algebra->ambient_dim();
  return KrausInstrument(algebra, OutcomeSpace::line({label}), {{cmat::Identity(d, d)}});
}

KrausInstrument sequential_instrument(const KrausInstrument& first,
                                      const KrausInstrument& second) {
  if (!compatible(first.algebra(), second.algebra())) {
    throw DimensionError("sequential_instrument: algebra mismatch");
  }
  if (first.outcomes().arity() != 1 || second.outcomes().arity() != 1) {
    throw DimensionError("sequential_instrument: factors must be one-dimensional");
  }
  std::vector<std::array<double, 2>> labels;
  std::vector<std::vector<cmat>> kraus;
  for (int s = 0; s < first.outcomes().size(); ++s) {
    for (int t = 0; t < second.outcomes().size(); ++t) {
      labels.push_back({first.outcomes().label(s), second.outcomes().label(t)});
      std::vector<cmat> list;
      for (const cmat& k2 : second.kraus()[t]) {
        for (const cmat& k1 : first.kraus()[s]) list.push_back(k2 * k1);
      }
      kraus.push_back(std::move(list));
    }
  }
  return KrausInstrument(first.algebra(), OutcomeSpace::plane(std::move(labels)),
                         std::move(kraus));
}

namespace {

std::vector<double> distinct_labels(Rng& rng, int n) {
  std::vector<double> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = -2.0 + 4.0 * (i + 0.2 + 0.6 * rng.uniform()) / n;
  }
  return labels;
}

}  // namespace

KrausInstrument random_instrument(uint64_t seed, const AlgebraPtr& algebra, int n_outcomes,
                                  int kraus_rank, int arity) {
  if (n_outcomes < 1 || kraus_rank < 1) {
    throw ValidationError("random_instrument: need at least one outcome and one Kraus term");
  }
  Rng rng(seed);

  OutcomeSpace outcomes = OutcomeSpace::line({0.0});
  if (arity == 1) {
    outcomes = OutcomeSpace::line(distinct_labels(rng, n_outcomes));
  } else if (arity == 2) {
    const int nx = static_cast<int>(std::ceil(std::sqrt(double(n_outcomes))));
    const int ny = (n_outcomes + nx - 1) / nx;
    const std::vector<double> xs = distinct_labels(rng, nx);
    const std::vector<double> ys = distinct_labels(rng, ny);
    std::vector<std::array<double, 2>> pairs;
    for (int i = 0; i < n_outcomes; ++i) pairs.push_back({xs[i % nx], ys[i / nx]});
    outcomes = OutcomeSpace::plane(std::move(pairs));
  } else {
    throw ValidationError("random_instrument: arity must be 1 or 2");
  }

  const int nblocks = algebra->block_count();
  // One factor per Kraus term: block-supported A (x) R with R a scaled
  // isometry on the multiplicity factors, so dual maps stay in the algebra.
  struct Factor {
    int outcome, source, target;
    cmat a;  // n_target x n_source
    cmat r;  // m_target x m_source, isometry columns
  };
  std::vector<Factor> factors;
  auto add_factor = [&](int outcome, int source, int target) {
    const BlockSpec& bs = algebra->blocks()[source];
    const BlockSpec& bt = algebra->blocks()[target];
    Factor f;
    f.outcome = outcome;
    f.source = source;
    f.target = target;
    f.a = ginibre(rng, bt.dim, bs.dim);
    f.r = random_unitary(rng, bt.multiplicity).leftCols(bs.multiplicity);
    factors.push_back(std::move(f));
  };
  for (int s = 0; s < n_outcomes; ++s) {
    for (int j = 0; j < kraus_rank; ++j) {
      const int source = rng.uniform_int(0, nblocks - 1);
      std::vector<int> targets;
      for (int k = 0; k < nblocks; ++k) {
        if (algebra->blocks()[k].multiplicity >= algebra->blocks()[source].multiplicity) {
          targets.push_back(k);
        }
      }
      add_factor(s, source, targets[rng.uniform_int(0, int(targets.size()) - 1)]);
    }
  }
  // Every block must appear as a source so the normalization is invertible.
  for (int l = 0; l < nblocks; ++l) {
    bool seen = false;
    for (const Factor& f : factors) seen = seen || f.source == l;
    if (!seen) add_factor(l % n_outcomes, l, l);
  }

  // Normalize per source block: sum over factors of A^dag A = 1.
  std::vector<cmat> norms(nblocks);
  for (int l = 0; l < nblocks; ++l) {
    norms[l] = cmat::Zero(algebra->blocks()[l].dim, algebra->blocks()[l].dim);
  }
  for (const Factor& f : factors) norms[f.source] += f.a.adjoint() * f.a;
  for (int l = 0; l < nblocks; ++l) {
    SpectralDecomposition sd = spectral_decompose(norms[l]);
    if (sd.eigenvalues.minCoeff() <= 1e-9 * std::max(1.0, sd.eigenvalues.maxCoeff())) {
      // Degenerate draw; re-derive deterministically.
      return random_instrument(derive_seed(seed, 0x5eedULL), algebra, n_outcomes, kraus_rank,
                               arity);
    }
    rvec inv_root = sd.eigenvalues.cwiseSqrt().cwiseInverse();
    norms[l] = sd.eigenvectors * inv_root.asDiagonal() * sd.eigenvectors.adjoint();
  }

  const int d = algebra->ambient_dim();
  const cmat& u = algebra->basis_change();
  std::vector<std::vector<cmat>> kraus(n_outcomes);
  for (const Factor& f : factors) {
    const BlockSpec& bs = algebra->blocks()[f.source];
    const BlockSpec& bt = algebra->blocks()[f.target];
    cmat block = cmat::Zero(d, d);
    block.block(algebra->block_offset(f.target), algebra->block_offset(f.source),
                bt.dim * bt.multiplicity, bs.dim * bs.multiplicity) =
        tensor_product(f.a * norms[f.source], f.r);
    kraus[f.outcome].push_back(u * block * u.adjoint());
  }
  return KrausInstrument(algebra, std::move(outcomes), std::move(kraus));
}

NormalState random_state(uint64_t seed, const AlgebraPtr& algebra) {
  Rng rng(seed);
  const int nblocks = algebra->block_count();
  std::vector<cmat> densities;
  if (rng.uniform() < 0.3) {
    // Pure state supported in a single block.
    const int b = rng.uniform_int(0, nblocks - 1);
    for (int k = 0; k < nblocks; ++k) {
      const int n = algebra->blocks()[k].dim;
      if (k != b) {
        densities.push_back(cmat::Zero(n, n));
        continue;
      }
      cvec v = ginibre(rng, n, 1).col(0);
      v /= v.norm();
      densities.push_back(v * v.adjoint());
    }
    return NormalState(algebra, std::move(densities));
  }
  std::vector<double> weights(nblocks);
  double total = 0;
  for (int k = 0; k < nblocks; ++k) {
    weights[k] = rng.uniform(0.1, 1.0);
    total += weights[k];
  }
  for (int k = 0; k < nblocks; ++k) {
    const int n = algebra->blocks()[k].dim;
    const int rank = rng.uniform_int(1, n);
    cmat dmat = random_density(rng, n, rank);
    densities.push_back((weights[k] / total) * dmat);
  }
  return NormalState(algebra, std::move(densities));
}

AlgebraElement random_observable(uint64_t seed, const AlgebraPtr& algebra,
                                 double norm_bound) {
  Rng rng(seed);
  std::vector<cmat> blocks;
  double max_abs = 0;
  for (const BlockSpec& b : algebra->blocks()) {
    cmat hmat = random_hermitian(rng, b.dim);
    SpectralDecomposition sd = spectral_decompose(hmat);
    max_abs = std::max(max_abs, sd.eigenvalues.cwiseAbs().maxCoeff());
    blocks.push_back(std::move(hmat));
  }
  const double target = norm_bound * rng.uniform(0.3, 1.0);
  const double scale = max_abs > 1e-12 ? target / max_abs : 1.0;
  for (cmat& b : blocks) b *= scale;
  return AlgebraElement(algebra, std::move(blocks));
}

namespace {

void enumerate_structures(int dim_max, int remaining, int max_first,
                          std::vector<BlockSpec>& current,
                          std::vector<std::vector<BlockSpec>>& out) {
  if (!current.empty()) out.push_back(current);
  if (current.size() >= 3) return;
  for (int n = std::min(max_first, remaining); n >= 1; --n) {
    for (int m = 1; n * m <= remaining; ++m) {
      current.push_back({n, m});
      enumerate_structures(dim_max, remaining - n * m, n, current, out);
      current.pop_back();
    }
  }
}

}  // namespace

AlgebraPtr random_algebra(uint64_t seed, int dim_max, bool allow_subalgebras) {
  Rng rng(seed);
  std::vector<std::vector<BlockSpec>> pool;
  if (!allow_subalgebras) {
    for (int n = 2; n <= dim_max; ++n) pool.push_back({BlockSpec{n, 1}});
  } else {
    std::vector<BlockSpec> current;
    std::vector<std::vector<BlockSpec>> all;
    enumerate_structures(dim_max, dim_max, dim_max, current, all);
    for (const auto& blocks : all) {
      int ambient = 0;
      for (const BlockSpec& b : blocks) ambient += b.dim * b.multiplicity;
      if (ambient >= 2) pool.push_back(blocks);
    }
  }
  const std::vector<BlockSpec>& blocks = pool[rng.uniform_int(0, int(pool.size()) - 1)];
  int ambient = 0;
  for (const BlockSpec& b : blocks) ambient += b.dim * b.multiplicity;
  cmat basis_change;
  if (rng.uniform() < 0.5) basis_change = random_unitary(rng, ambient);
  return VonNeumannAlgebra::make(blocks, basis_change);
}

}  // namespace edlab
