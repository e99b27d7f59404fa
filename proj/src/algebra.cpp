#include "edlab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace edlab {

namespace {

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const char* who) {
  if (!compatible(a, b)) {
    throw DimensionError(std::string(who) + ": algebra mismatch");
  }
}

}  // namespace

VonNeumannAlgebra::VonNeumannAlgebra(std::vector<BlockSpec> blocks, cmat basis_change)
    : blocks_(std::move(blocks)), basis_change_(std::move(basis_change)) {
  if (blocks_.empty()) throw ValidationError("algebra: no blocks");
  for (const BlockSpec& b : blocks_) {
    if (b.dim <= 0 || b.multiplicity <= 0) {
      throw ValidationError("algebra: block dims and multiplicities must be positive");
    }
    offsets_.push_back(ambient_dim_);
    ambient_dim_ += b.dim * b.multiplicity;
    hs_dim_ += b.dim * b.dim;
  }
  if (ambient_dim_ > kMaxDim) {
    throw ValidationError("algebra: ambient dimension " + std::to_string(ambient_dim_) +
                          " exceeds supported maximum " + std::to_string(kMaxDim));
  }
  if (basis_change_.size() == 0) {
    basis_change_ = cmat::Identity(ambient_dim_, ambient_dim_);
  }
  if (basis_change_.rows() != ambient_dim_ || basis_change_.cols() != ambient_dim_) {
    throw DimensionError("algebra: basis change must be ambient_dim square");
  }
  const double unitarity =
      (basis_change_.adjoint() * basis_change_ - cmat::Identity(ambient_dim_, ambient_dim_))
          .norm();
  if (unitarity > 1e-10 * std::max(1.0, std::sqrt(double(ambient_dim_)))) {
    throw ValidationError("algebra: basis change is not unitary, defect " +
                          std::to_string(unitarity));
  }
}

AlgebraPtr VonNeumannAlgebra::full(int n) {
  return make({BlockSpec{n, 1}});
}

AlgebraPtr VonNeumannAlgebra::make(std::vector<BlockSpec> blocks, cmat basis_change) {
  return AlgebraPtr(new VonNeumannAlgebra(std::move(blocks), std::move(basis_change)));
}

bool VonNeumannAlgebra::is_full() const {
  return blocks_.size() == 1 && blocks_[0].multiplicity == 1;
}

bool compatible(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a || !b) return false;
  if (a == b) return true;
  if (a->block_count() != b->block_count()) return false;
  for (int k = 0; k < a->block_count(); ++k) {
    if (a->blocks()[k].dim != b->blocks()[k].dim ||
        a->blocks()[k].multiplicity != b->blocks()[k].multiplicity)
      return false;
  }
  return (a->basis_change() - b->basis_change()).norm() <= 1e-12 * a->ambient_dim();
}

AlgebraElement::AlgebraElement(AlgebraPtr algebra, std::vector<cmat> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (!algebra_) throw ValidationError("element: null algebra");
  if (static_cast<int>(blocks_.size()) != algebra_->block_count()) {
    throw DimensionError("element: block count mismatch");
  }
  for (int k = 0; k < algebra_->block_count(); ++k) {
    const int n = algebra_->blocks()[k].dim;
    if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
      throw DimensionError("element: block " + std::to_string(k) + " is not " +
                           std::to_string(n) + "x" + std::to_string(n));
    }
    if (!all_finite(blocks_[k])) throw ValidationError("element: non-finite entries");
  }
}

AlgebraElement AlgebraElement::identity(const AlgebraPtr& algebra) {
  std::vector<cmat> blocks;
  for (const BlockSpec& b : algebra->blocks()) blocks.push_back(cmat::Identity(b.dim, b.dim));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::zero(const AlgebraPtr& algebra) {
  std::vector<cmat> blocks;
  for (const BlockSpec& b : algebra->blocks()) blocks.push_back(cmat::Zero(b.dim, b.dim));
  return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<cmat> blocks;
  for (const cmat& b : blocks_) blocks.push_back(b.adjoint());
  return AlgebraElement(algebra_, std::move(blocks));
}

bool AlgebraElement::is_hermitian(double tol) const {
  for (const cmat& b : blocks_) {
    if ((b - b.adjoint()).norm() > tol * std::max(1.0, b.norm())) return false;
  }
  return true;
}

double AlgebraElement::frobenius() const {
  double s = 0;
  for (const cmat& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same_algebra(algebra_, rhs.algebra_, "element sum");
  for (size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += rhs.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same_algebra(algebra_, rhs.algebra_, "element difference");
  for (size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= rhs.blocks_[k];
  return *this;
}

AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) {
  lhs += rhs;
  return lhs;
}

AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) {
  lhs -= rhs;
  return lhs;
}

AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  require_same_algebra(lhs.algebra(), rhs.algebra(), "element product");
  std::vector<cmat> blocks;
  for (int k = 0; k < lhs.algebra()->block_count(); ++k) {
    blocks.push_back(lhs.block(k) * rhs.block(k));
  }
  return AlgebraElement(lhs.algebra(), std::move(blocks));
}

AlgebraElement operator*(cplx scalar, const AlgebraElement& x) {
  std::vector<cmat> blocks;
  for (const cmat& b : x.blocks()) blocks.push_back(scalar * b);
  return AlgebraElement(x.algebra(), std::move(blocks));
}

AlgebraElement operator+(const AlgebraElement& x, cplx scalar) {
  std::vector<cmat> blocks;
  for (const cmat& b : x.blocks())
    blocks.push_back(b + scalar * cmat::Identity(b.rows(), b.cols()));
  return AlgebraElement(x.algebra(), std::move(blocks));
}

AlgebraElement operator-(const AlgebraElement& x, cplx scalar) { return x + (-scalar); }

NormalState::NormalState(AlgebraPtr algebra, std::vector<cmat> block_densities, double tol)
    : algebra_(std::move(algebra)), densities_(std::move(block_densities)) {
  if (!algebra_) throw ValidationError("state: null algebra");
  if (static_cast<int>(densities_.size()) != algebra_->block_count()) {
    throw DimensionError("state: block count mismatch");
  }
  double total = 0;
  for (int k = 0; k < algebra_->block_count(); ++k) {
    const int n = algebra_->blocks()[k].dim;
    const cmat& d = densities_[k];
    if (d.rows() != n || d.cols() != n) {
      throw DimensionError("state: density block " + std::to_string(k) + " has wrong shape");
    }
    SpectralDecomposition sd = spectral_decompose(d, tol);
    const double scale = std::max(1.0, d.norm());
    if (sd.eigenvalues.size() > 0 && sd.eigenvalues.minCoeff() < -tol * scale) {
      throw ValidationError("state: density block " + std::to_string(k) +
                            " is not PSD (min eigenvalue " +
                            std::to_string(sd.eigenvalues.minCoeff()) + ")");
    }
    total += d.trace().real();
  }
  if (std::abs(total - 1.0) > tol) {
    throw ValidationError("state: total trace " + std::to_string(total) + " != 1");
  }
}

cmat NormalState::ambient_extension() const {
  const int d = algebra_->ambient_dim();
  cmat block = cmat::Zero(d, d);
  for (int k = 0; k < algebra_->block_count(); ++k) {
    const BlockSpec& b = algebra_->blocks()[k];
    const cmat piece =
        tensor_product(densities_[k], cmat::Identity(b.multiplicity, b.multiplicity) /
                                          double(b.multiplicity));
    block.block(algebra_->block_offset(k), algebra_->block_offset(k), b.dim * b.multiplicity,
                b.dim * b.multiplicity) = piece;
  }
  const cmat& u = algebra_->basis_change();
  return u * block * u.adjoint();
}

cmat embed(const AlgebraElement& x) {
  const AlgebraPtr& alg = x.algebra();
  const int d = alg->ambient_dim();
  cmat block = cmat::Zero(d, d);
  for (int k = 0; k < alg->block_count(); ++k) {
    const BlockSpec& b = alg->blocks()[k];
    block.block(alg->block_offset(k), alg->block_offset(k), b.dim * b.multiplicity,
                b.dim * b.multiplicity) =
        tensor_product(x.block(k), cmat::Identity(b.multiplicity, b.multiplicity));
  }
  const cmat& u = alg->basis_change();
  return u * block * u.adjoint();
}

AlgebraElement conditional_expectation(const AlgebraPtr& algebra, const cmat& ambient) {
  const int d = algebra->ambient_dim();
  if (ambient.rows() != d || ambient.cols() != d) {
    throw DimensionError("conditional_expectation: ambient matrix has wrong shape");
  }
  const cmat& u = algebra->basis_change();
  const cmat y = u.adjoint() * ambient * u;
  std::vector<cmat> blocks;
  for (int k = 0; k < algebra->block_count(); ++k) {
    const BlockSpec& b = algebra->blocks()[k];
    const cmat sub =
        y.block(algebra->block_offset(k), algebra->block_offset(k), b.dim * b.multiplicity,
                b.dim * b.multiplicity);
    blocks.push_back(partial_trace(sub, b.dim, b.multiplicity, 2) / double(b.multiplicity));
  }
  return AlgebraElement(algebra, std::move(blocks));
}

bool contains(const AlgebraPtr& algebra, const cmat& ambient, double tol) {
  const int d = algebra->ambient_dim();
  if (ambient.rows() != d || ambient.cols() != d) {
    throw DimensionError("contains: ambient matrix has wrong shape");
  }
  const cmat back = embed(conditional_expectation(algebra, ambient));
  return (back - ambient).norm() <= tol * std::max(1.0, ambient.norm());
}

std::vector<cmat> restrict_functional(const AlgebraPtr& algebra, const cmat& ambient) {
  const int d = algebra->ambient_dim();
  if (ambient.rows() != d || ambient.cols() != d) {
    throw DimensionError("restrict_functional: ambient matrix has wrong shape");
  }
  const cmat& u = algebra->basis_change();
  const cmat y = u.adjoint() * ambient * u;
  std::vector<cmat> blocks;
  for (int k = 0; k < algebra->block_count(); ++k) {
    const BlockSpec& b = algebra->blocks()[k];
    const cmat sub =
        y.block(algebra->block_offset(k), algebra->block_offset(k), b.dim * b.multiplicity,
                b.dim * b.multiplicity);
    // Tr[ambient * embed(x)] = sum_k Tr[ptrace_2(Y_kk) x_k].
    blocks.push_back(partial_trace(sub, b.dim, b.multiplicity, 2));
  }
  return blocks;
}

NormalState restrict_state(const AlgebraPtr& algebra, const cmat& ambient_density) {
  const double tr = ambient_density.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    throw ValidationError("restrict_state: ambient density trace " + std::to_string(tr));
  }
  SpectralDecomposition sd = spectral_decompose(ambient_density, kHermitianTol);
  if (sd.eigenvalues.size() > 0 && sd.eigenvalues.minCoeff() < -1e-9) {
    throw ValidationError("restrict_state: ambient density not PSD");
  }
  return NormalState(algebra, restrict_functional(algebra, ambient_density));
}

cplx state_expectation(const NormalState& state, const AlgebraElement& x) {
  require_same_algebra(state.algebra(), x.algebra(), "state_expectation");
  cplx s = 0;
  for (int k = 0; k < x.algebra()->block_count(); ++k) {
    s += (state.densities()[k] * x.block(k)).trace();
  }
  return s;
}

}  // namespace edlab
