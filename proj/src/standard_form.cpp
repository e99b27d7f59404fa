#include "edlab/standard_form.hpp"

#include <cmath>
#include <utility>

namespace edlab {

namespace {

void require_same(const AlgebraPtr& a, const AlgebraPtr& b, const char* who) {
  if (!compatible(a, b)) throw DimensionError(std::string(who) + ": algebra mismatch");
}

void require_shape(const HsVector& v, const char* who) {
  if (!v.algebra) throw ValidationError(std::string(who) + ": null algebra");
  if (static_cast<int>(v.blocks.size()) != v.algebra->block_count()) {
    throw DimensionError(std::string(who) + ": block count mismatch");
  }
  for (int k = 0; k < v.algebra->block_count(); ++k) {
    const int n = v.algebra->blocks()[k].dim;
    if (v.blocks[k].rows() != n || v.blocks[k].cols() != n) {
      throw DimensionError(std::string(who) + ": block shape mismatch");
    }
  }
}

}  // namespace

cplx hs_inner(const HsVector& a, const HsVector& b) {
  require_shape(a, "hs_inner");
  require_shape(b, "hs_inner");
  require_same(a.algebra, b.algebra, "hs_inner");
  cplx s = 0;
  for (size_t k = 0; k < a.blocks.size(); ++k) {
    s += (a.blocks[k].adjoint() * b.blocks[k]).trace();
  }
  return s;
}

double hs_norm(const HsVector& a) { return std::sqrt(std::abs(hs_inner(a, a).real())); }

HsVector operator+(const HsVector& a, const HsVector& b) {
  require_same(a.algebra, b.algebra, "hs sum");
  HsVector out{a.algebra, {}};
  for (size_t k = 0; k < a.blocks.size(); ++k) out.blocks.push_back(a.blocks[k] + b.blocks[k]);
  return out;
}

HsVector operator-(const HsVector& a, const HsVector& b) {
  require_same(a.algebra, b.algebra, "hs difference");
  HsVector out{a.algebra, {}};
  for (size_t k = 0; k < a.blocks.size(); ++k) out.blocks.push_back(a.blocks[k] - b.blocks[k]);
  return out;
}

HsVector operator*(cplx scalar, const HsVector& a) {
  HsVector out{a.algebra, {}};
  for (const cmat& b : a.blocks) out.blocks.push_back(scalar * b);
  return out;
}

HsVector modular_conjugate(const HsVector& a) {
  require_shape(a, "modular_conjugate");
  HsVector out{a.algebra, {}};
  for (const cmat& b : a.blocks) out.blocks.push_back(b.adjoint());
  return out;
}

bool in_positive_cone(const HsVector& a, double tol) {
  require_shape(a, "in_positive_cone");
  for (const cmat& b : a.blocks) {
    if ((b - b.adjoint()).norm() > tol * std::max(1.0, b.norm())) return false;
    SpectralDecomposition sd = spectral_decompose(0.5 * (b + b.adjoint()), 1.0);
    if (sd.eigenvalues.size() > 0 &&
        sd.eigenvalues.minCoeff() < -tol * std::max(1.0, b.norm()))
      return false;
  }
  return true;
}

HsVector left_action(const AlgebraElement& x, const HsVector& xi) {
  require_shape(xi, "left_action");
  require_same(x.algebra(), xi.algebra, "left_action");
  HsVector out{xi.algebra, {}};
  for (size_t k = 0; k < xi.blocks.size(); ++k) out.blocks.push_back(x.block(k) * xi.blocks[k]);
  return out;
}

HsVector right_action_via_j(const AlgebraElement& x, const HsVector& xi) {
  require_shape(xi, "right_action_via_j");
  require_same(x.algebra(), xi.algebra, "right_action_via_j");
  HsVector out{xi.algebra, {}};
  for (size_t k = 0; k < xi.blocks.size(); ++k)
    out.blocks.push_back(xi.blocks[k] * x.block(k).adjoint());
  return out;
}

StandardFormSpace::StandardFormSpace(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  int off = 0;
  for (const BlockSpec& b : algebra_->blocks()) {
    offsets_.push_back(off);
    off += b.dim * b.dim;
  }
}

cvec StandardFormSpace::coordinates(const HsVector& v) const {
  require_shape(v, "coordinates");
  require_same(v.algebra, algebra_, "coordinates");
  cvec out(dim());
  for (int k = 0; k < algebra_->block_count(); ++k) {
    const int n = algebra_->blocks()[k].dim;
    out.segment(offsets_[k], n * n) =
        Eigen::Map<const cvec>(v.blocks[k].data(), n * n);  // column-major
  }
  return out;
}

HsVector StandardFormSpace::from_coordinates(const cvec& c) const {
  if (c.size() != dim()) throw DimensionError("from_coordinates: wrong length");
  HsVector out{algebra_, {}};
  for (int k = 0; k < algebra_->block_count(); ++k) {
    const int n = algebra_->blocks()[k].dim;
    cmat b(n, n);
    Eigen::Map<cvec>(b.data(), n * n) = c.segment(offsets_[k], n * n);
    out.blocks.push_back(std::move(b));
  }
  return out;
}

cmat StandardFormSpace::left_mult_matrix(const AlgebraElement& x) const {
  require_same(x.algebra(), algebra_, "left_mult_matrix");
  cmat out = cmat::Zero(dim(), dim());
  for (int k = 0; k < algebra_->block_count(); ++k) {
    const int n = algebra_->blocks()[k].dim;
    // vec(x M) = (1 (x) x) vec(M) for column-major vec.
    out.block(offsets_[k], offsets_[k], n * n, n * n) =
        tensor_product(cmat::Identity(n, n), x.block(k));
  }
  return out;
}

HsVector gns_vector(const NormalState& rho) {
  HsVector out{rho.algebra(), {}};
  for (const cmat& d : rho.densities()) out.blocks.push_back(psd_sqrt(d));
  return out;
}

bool NormalFunctional::is_hermitian(double tol) const {
  for (const cmat& t : densities) {
    if ((t - t.adjoint()).norm() > tol * std::max(1.0, t.norm())) return false;
  }
  return true;
}

cplx apply(const NormalFunctional& omega, const AlgebraElement& x) {
  require_same(omega.algebra, x.algebra(), "functional apply");
  cplx s = 0;
  for (int k = 0; k < x.algebra()->block_count(); ++k) {
    s += (x.block(k) * omega.densities[k]).trace();
  }
  return s;
}

NormalFunctional commutator_functional(const AlgebraElement& a, const AlgebraElement& b,
                                       const NormalState& rho) {
  require_same(a.algebra(), rho.algebra(), "commutator_functional");
  require_same(b.algebra(), rho.algebra(), "commutator_functional");
  if (!a.is_hermitian() || !b.is_hermitian()) {
    throw ValidationError("commutator_functional: observables must be self-adjoint");
  }
  NormalFunctional out{rho.algebra(), {}};
  for (int k = 0; k < rho.algebra()->block_count(); ++k) {
    const cmat c = cplx(0, -1) * commutator(a.block(k), b.block(k));
    const cmat root = psd_sqrt(rho.densities()[k]);
    out.densities.push_back(root * c * root);
  }
  return out;
}

double functional_norm(const NormalFunctional& omega) {
  double s = 0;
  for (const cmat& t : omega.densities) s += trace_norm(t);
  return s;
}

PolarDecomposition polar_decompose(const NormalFunctional& omega) {
  std::vector<cmat> w_blocks, abs_blocks;
  if (omega.is_hermitian()) {
    for (const cmat& t : omega.densities) {
      SignAbs sa = operator_abs(t);
      w_blocks.push_back(sa.sign);
      abs_blocks.push_back(sa.abs);
    }
  } else {
    // General polar decomposition T = W |T| via SVD with a rank cutoff, so
    // W^dag W is the support projection of |T|.
    for (const cmat& t : omega.densities) {
      Eigen::JacobiSVD<cmat> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const rvec& s = svd.singularValues();
      const double cutoff = kZeroEigenTol * std::max(1.0, s.size() ? s.maxCoeff() : 0.0);
      rvec kept = s;
      cmat u = svd.matrixU();
      for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] <= cutoff) {
          kept[i] = 0.0;
          u.col(i).setZero();
        }
      }
      w_blocks.push_back(u * svd.matrixV().adjoint());
      abs_blocks.push_back(svd.matrixV() * kept.asDiagonal() * svd.matrixV().adjoint());
    }
  }
  return PolarDecomposition{AlgebraElement(omega.algebra, std::move(w_blocks)),
                            NormalFunctional{omega.algebra, std::move(abs_blocks)}};
}

double c_bound(const AlgebraElement& a, const AlgebraElement& b, const NormalState& rho) {
  require_same(a.algebra(), rho.algebra(), "c_bound");
  require_same(b.algebra(), rho.algebra(), "c_bound");
  if (!a.is_hermitian() || !b.is_hermitian()) {
    throw ValidationError("c_bound: observables must be self-adjoint");
  }
  cplx s = 0;
  for (int k = 0; k < rho.algebra()->block_count(); ++k) {
    const cmat c = cplx(0, -1) * commutator(a.block(k), b.block(k));
    s += (rho.densities()[k] * c).trace();
  }
  return 0.5 * std::abs(s.real());
}

double d_bound(const AlgebraElement& a, const AlgebraElement& b, const NormalState& rho) {
  return 0.5 * functional_norm(commutator_functional(a, b, rho));
}

double d_bound_trace_oracle(const AlgebraElement& a, const AlgebraElement& b,
                            const cmat& ambient_density) {
  if (!a.algebra()->is_full()) {
    throw ValidationError("d_bound_trace_oracle: requires a full matrix algebra");
  }
  require_same(a.algebra(), b.algebra(), "d_bound_trace_oracle");
  const cmat c = cplx(0, -1) * commutator(embed(a), embed(b));
  const cmat root = psd_sqrt(ambient_density);
  return 0.5 * trace_norm(root * c * root);
}

}  // namespace edlab
