#pragma once
// Dense complex-matrix primitives: adjoints, commutators, Kronecker products,
// partial traces, Hermitian spectral calculus, trace norms. Everything here is
// a pure function of its inputs; matrices are plain Eigen values.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace edlab {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DimensionError : public Error {
 public:
  using Error::Error;
};
class ValidationError : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};
class ResolveError : public Error {
 public:
  using Error::Error;
};

// Default relative tolerance for "is Hermitian" checks.
inline constexpr double kHermitianTol = 1e-9;
// Eigenvalues within this relative band of zero are treated as exactly zero
// when forming sign operators and support projections.
inline constexpr double kZeroEigenTol = 1e-10;
// Desk-scale guard; ambient spaces beyond this are rejected at construction.
inline constexpr int kMaxDim = 64;

double frobenius(const cmat& m);
bool all_finite(const cmat& m);

cmat identity(int n);
cmat pauli_x();
cmat pauli_y();
cmat pauli_z();

/// Conjugate transpose.
cmat adjoint(const cmat& m);

/// ab - ba. Anti-Hermitian whenever a and b are Hermitian.
cmat commutator(const cmat& a, const cmat& b);

/// Kronecker product; dimensions multiply.
cmat tensor_product(const cmat& a, const cmat& b);

/// Trace over factor 1 or 2 of a (d1*d2)-dimensional square matrix.
/// The total trace is preserved.
cmat partial_trace(const cmat& x, int d1, int d2, int which);

/// A square matrix asserted Hermitian within a relative tolerance.
/// The stored matrix is the symmetrization (m + m^dag)/2; the symmetrization
/// delta is kept so callers can report it.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const cmat& m, double tol = kHermitianTol);
  const cmat& matrix() const { return mat_; }
  double tolerance() const { return tol_; }
  double symmetrization_delta() const { return delta_; }

 private:
  cmat mat_;
  double tol_;
  double delta_;
};

struct SpectralDecomposition {
  rvec eigenvalues;   // real, descending
  cmat eigenvectors;  // unitary; column i pairs with eigenvalues[i]
};

SpectralDecomposition spectral_decompose(const HermitianMatrix& h);
SpectralDecomposition spectral_decompose(const cmat& m, double tol = kHermitianTol);

/// PSD square root. Eigenvalues in [-tol*scale, 0) are clamped to zero;
/// anything more negative is an error.
cmat psd_sqrt(const cmat& p, double tol = kHermitianTol);

/// Sum of singular values. For self-adjoint input this is the sum of
/// absolute eigenvalues.
double trace_norm(const cmat& t);

struct SignAbs {
  cmat sign;  // self-adjoint, eigenvalues in {-1, 0, +1}
  cmat abs;   // PSD; sign * abs reconstructs the input
};

/// Spectral sign/absolute-value pair of a self-adjoint matrix. Eigenvalues
/// within kZeroEigenTol*scale of zero map to sign 0, so sign^2 is the support
/// projection.
SignAbs operator_abs(const cmat& t, double tol = kHermitianTol);

}  // namespace edlab
