#include "edlab/matrix_ops.hpp"

#include <algorithm>
#include <cmath>

namespace edlab {

namespace {

void require_square(const cmat& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(who) + ": matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

}  // namespace

double frobenius(const cmat& m) { return m.norm(); }

bool all_finite(const cmat& m) { return m.allFinite(); }

cmat identity(int n) { return cmat::Identity(n, n); }

cmat pauli_x() {
  cmat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

cmat pauli_y() {
  cmat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

cmat pauli_z() {
  cmat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

cmat adjoint(const cmat& m) { return m.adjoint(); }

cmat commutator(const cmat& a, const cmat& b) {
  require_square(a, "commutator");
  require_square(b, "commutator");
  if (a.rows() != b.rows()) {
    throw DimensionError("commutator: dimension mismatch " +
                         std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()));
  }
  return a * b - b * a;
}

cmat tensor_product(const cmat& a, const cmat& b) {
  cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

cmat partial_trace(const cmat& x, int d1, int d2, int which) {
  require_square(x, "partial_trace");
  if (d1 <= 0 || d2 <= 0 ||
      x.rows() != static_cast<Eigen::Index>(d1) * d2) {
    throw DimensionError("partial_trace: matrix dim " +
                         std::to_string(x.rows()) + " != " +
                         std::to_string(d1) + "*" + std::to_string(d2));
  }
  if (which != 1 && which != 2) {
    throw DimensionError("partial_trace: factor index must be 1 or 2");
  }
  // Composite index (a, b) -> a*d2 + b.
  if (which == 2) {
    cmat out = cmat::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k)
          out(i, j) += x(i * d2 + k, j * d2 + k);
    return out;
  }
  cmat out = cmat::Zero(d2, d2);
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      for (int k = 0; k < d1; ++k)
        out(i, j) += x(k * d2 + i, k * d2 + j);
  return out;
}

HermitianMatrix::HermitianMatrix(const cmat& m, double tol) : tol_(tol) {
  require_square(m, "HermitianMatrix");
  if (!all_finite(m)) throw ValidationError("HermitianMatrix: non-finite entries");
  delta_ = (m - m.adjoint()).norm();
  const double scale = std::max(1.0, m.norm());
  if (delta_ > tol * scale) {
    throw ValidationError("HermitianMatrix: not Hermitian, |M - M^dag| = " +
                          std::to_string(delta_) + " exceeds tolerance " +
                          std::to_string(tol * scale));
  }
  mat_ = 0.5 * (m + m.adjoint());
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<cmat> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error("spectral_decompose: eigensolver failed");
  }
  const Eigen::Index n = h.matrix().rows();
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  (void)n;
  return out;
}

SpectralDecomposition spectral_decompose(const cmat& m, double tol) {
  return spectral_decompose(HermitianMatrix(m, tol));
}

cmat psd_sqrt(const cmat& p, double tol) {
  SpectralDecomposition sd = spectral_decompose(p, tol);
  const double scale =
      sd.eigenvalues.size() == 0 ? 1.0 : std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
  rvec roots(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const double lam = sd.eigenvalues[i];
    if (lam < -tol * scale) {
      throw ValidationError("psd_sqrt: negative eigenvalue " + std::to_string(lam));
    }
    roots[i] = lam > 0 ? std::sqrt(lam) : 0.0;
  }
  return sd.eigenvectors * roots.asDiagonal() * sd.eigenvectors.adjoint();
}

double trace_norm(const cmat& t) {
  require_square(t, "trace_norm");
  if (t.rows() == 0) return 0.0;
  Eigen::JacobiSVD<cmat> svd(t);
  return svd.singularValues().sum();
}

SignAbs operator_abs(const cmat& t, double tol) {
  SpectralDecomposition sd = spectral_decompose(t, tol);
  const Eigen::Index n = sd.eigenvalues.size();
  const double scale = n == 0 ? 1.0 : std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
  rvec sign(n), mag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = sd.eigenvalues[i];
    if (std::abs(lam) <= kZeroEigenTol * scale) {
      sign[i] = 0.0;
      mag[i] = 0.0;
    } else {
      sign[i] = lam > 0 ? 1.0 : -1.0;
      mag[i] = std::abs(lam);
    }
  }
  SignAbs out;
  out.sign = sd.eigenvectors * sign.asDiagonal() * sd.eigenvectors.adjoint();
  out.abs = sd.eigenvectors * mag.asDiagonal() * sd.eigenvectors.adjoint();
  return out;
}

}  // namespace edlab
