#pragma once
// Finite-dimensional von Neumann algebras realized as block algebras
// sum_k M_{n_k} (x) 1_{m_k} inside an ambient matrix space, together with
// their elements, normal states, and the conditional expectation used as a
// membership test.
//
// Only atomic (finite-dimensional) algebras exist in this model; phenomena
// tied to non-atomic algebras (instruments without a measuring-process
// realization, conditional expectations onto continuous spectra) are out of
// reach by construction.

#include <memory>
#include <vector>

#include "edlab/matrix_ops.hpp"

namespace edlab {

struct BlockSpec {
  int dim;           // n_k
  int multiplicity;  // m_k
};

class VonNeumannAlgebra;
using AlgebraPtr = std::shared_ptr<const VonNeumannAlgebra>;

class VonNeumannAlgebra {
 public:
  /// Full matrix algebra M_n.
  static AlgebraPtr full(int n);

  /// Block algebra with an optional unitary change of basis from the
  /// canonical block ordering to the ambient space. Empty matrix = identity.
  static AlgebraPtr make(std::vector<BlockSpec> blocks, cmat basis_change = cmat());

  const std::vector<BlockSpec>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int ambient_dim() const { return ambient_dim_; }
  /// Dimension of the blockwise Hilbert-Schmidt space, sum_k n_k^2.
  int hs_dim() const { return hs_dim_; }
  const cmat& basis_change() const { return basis_change_; }
  bool is_full() const;
  /// Ambient offset of block k in the canonical block ordering.
  int block_offset(int k) const { return offsets_[k]; }

 private:
  VonNeumannAlgebra(std::vector<BlockSpec> blocks, cmat basis_change);
  std::vector<BlockSpec> blocks_;
  std::vector<int> offsets_;
  int ambient_dim_ = 0;
  int hs_dim_ = 0;
  cmat basis_change_;
};

/// True when the two handles denote the same algebra (same object or equal
/// block structure and basis change).
bool compatible(const AlgebraPtr& a, const AlgebraPtr& b);

class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, std::vector<cmat> blocks);
  static AlgebraElement identity(const AlgebraPtr& algebra);
  static AlgebraElement zero(const AlgebraPtr& algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<cmat>& blocks() const { return blocks_; }
  const cmat& block(int k) const { return blocks_[k]; }

  AlgebraElement adjoint() const;
  bool is_hermitian(double tol = kHermitianTol) const;
  double frobenius() const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);

 private:
  AlgebraPtr algebra_;
  std::vector<cmat> blocks_;
};

AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs);
AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs);
AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs);
AlgebraElement operator*(cplx scalar, const AlgebraElement& x);
/// x + c*1 and x - c*1.
AlgebraElement operator+(const AlgebraElement& x, cplx scalar);
AlgebraElement operator-(const AlgebraElement& x, cplx scalar);

/// Normal state as a tuple of PSD block densities with total trace one.
/// The pairing is <rho, x> = sum_k Tr[D_k x_k].
class NormalState {
 public:
  NormalState(AlgebraPtr algebra, std::vector<cmat> block_densities,
              double tol = kHermitianTol);
  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<cmat>& densities() const { return densities_; }
  /// Canonical ambient density extending the state: D_k (x) 1_{m_k}/m_k in
  /// each block, rotated by the basis change.
  cmat ambient_extension() const;

 private:
  AlgebraPtr algebra_;
  std::vector<cmat> densities_;
};

/// Ambient representation U (sum_k x_k (x) 1_{m_k}) U^dag.
cmat embed(const AlgebraElement& x);

/// Trace-compatible conditional expectation onto the algebra: blockwise
/// normalized partial trace over each multiplicity factor. Idempotent and
/// unital; fixes embedded elements exactly.
AlgebraElement conditional_expectation(const AlgebraPtr& algebra, const cmat& ambient);

/// Membership test: the conditional expectation reproduces the input within
/// tol (relative Frobenius).
bool contains(const AlgebraPtr& algebra, const cmat& ambient, double tol);

/// Restriction of an ambient density to a normal state on the algebra.
NormalState restrict_state(const AlgebraPtr& algebra, const cmat& ambient_density);

/// Restriction of an arbitrary ambient operator to functional block densities
/// (no positivity or trace normalization): the unique blocks T_k with
/// Tr[ambient * embed(x)] = sum_k Tr[T_k x_k].
std::vector<cmat> restrict_functional(const AlgebraPtr& algebra, const cmat& ambient);

cplx state_expectation(const NormalState& state, const AlgebraElement& x);

}  // namespace edlab
