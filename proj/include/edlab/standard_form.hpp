#pragma once
// Standard form of a block algebra on its blockwise Hilbert-Schmidt space:
// vectors are tuples of n_k x n_k matrices with <xi|eta> = sum_k Tr[xi_k^dag eta_k],
// the modular conjugation J is the blockwise adjoint, and the positive cone is
// the set of blockwise-PSD tuples. GNS vectors, normal functionals with their
// polar decompositions, and the commutator bounds live here.

#include "edlab/algebra.hpp"

namespace edlab {

/// Element of the blockwise Hilbert-Schmidt space over an algebra.
struct HsVector {
  AlgebraPtr algebra;
  std::vector<cmat> blocks;
};

cplx hs_inner(const HsVector& a, const HsVector& b);
double hs_norm(const HsVector& a);
HsVector operator+(const HsVector& a, const HsVector& b);
HsVector operator-(const HsVector& a, const HsVector& b);
HsVector operator*(cplx scalar, const HsVector& a);

/// Modular conjugation J: blockwise adjoint (anti-linear, J^2 = 1).
HsVector modular_conjugate(const HsVector& a);

/// Positive cone membership: every block PSD within tol.
bool in_positive_cone(const HsVector& a, double tol);

/// pi(x) xi: blockwise left multiplication.
HsVector left_action(const AlgebraElement& x, const HsVector& xi);

/// J pi(x) J xi: blockwise right multiplication by x_k^dag.
HsVector right_action_via_j(const AlgebraElement& x, const HsVector& xi);

/// Flat coordinates on the Hilbert-Schmidt space (blockwise column-major),
/// and left multiplication as an explicit matrix. Used by the dilation code.
class StandardFormSpace {
 public:
  explicit StandardFormSpace(AlgebraPtr algebra);
  const AlgebraPtr& algebra() const { return algebra_; }
  int dim() const { return algebra_->hs_dim(); }
  cvec coordinates(const HsVector& v) const;
  HsVector from_coordinates(const cvec& c) const;
  cmat left_mult_matrix(const AlgebraElement& x) const;
  int block_coord_offset(int k) const { return offsets_[k]; }

 private:
  AlgebraPtr algebra_;
  std::vector<int> offsets_;
};

/// The unique cone vector implementing a normal state: blocks sqrt(D_k).
HsVector gns_vector(const NormalState& rho);

/// Normal functional omega(x) = sum_k Tr[x_k T_k].
struct NormalFunctional {
  AlgebraPtr algebra;
  std::vector<cmat> densities;
  bool is_hermitian(double tol = kHermitianTol) const;
};

cplx apply(const NormalFunctional& omega, const AlgebraElement& x);

/// omega_{A,B,rho}(x) = <xi_rho| x J(-i[A,B])J xi_rho>, block densities
/// sqrt(D_k) C_k sqrt(D_k) with C = -i[A,B]. Hermitian by construction.
NormalFunctional commutator_functional(const AlgebraElement& a, const AlgebraElement& b,
                                       const NormalState& rho);

/// Functional norm sum_k Tr|T_k| (computed spectrally).
double functional_norm(const NormalFunctional& omega);

/// omega(x) = |omega|(x W) with W a partial isometry in the algebra and
/// W^dag W the support projection of |omega|; W is self-adjoint when omega is
/// hermitian.
struct PolarDecomposition {
  AlgebraElement isometry;          // W
  NormalFunctional absolute_value;  // |omega|
};

PolarDecomposition polar_decompose(const NormalFunctional& omega);

/// C_{A,B,rho} = |<rho, -i[A,B]>| / 2.
double c_bound(const AlgebraElement& a, const AlgebraElement& b, const NormalState& rho);

/// D_{A,B,rho} = ||omega_{A,B,rho}|| / 2. Always >= c_bound.
double d_bound(const AlgebraElement& a, const AlgebraElement& b, const NormalState& rho);

/// Independent route for full matrix algebras:
/// Tr|sqrt(rho) (-i[A,B]) sqrt(rho)| / 2 on the ambient space.
double d_bound_trace_oracle(const AlgebraElement& a, const AlgebraElement& b,
                            const cmat& ambient_density);

}  // namespace edlab
