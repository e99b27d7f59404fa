#pragma once
// Test-only oracles, independent of the library's computation paths:
// hand-rolled complex matrix arithmetic over nested vectors plus seeded
// generators for test data.

#include <complex>
#include <vector>

#include "edlab/matrix_ops.hpp"
#include "edlab/rng.hpp"

namespace oracles {

using cd = std::complex<double>;
using naive_mat = std::vector<std::vector<cd>>;

inline naive_mat from_eigen(const edlab::cmat& m) {
  naive_mat out(m.rows(), std::vector<cd>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline edlab::cmat to_eigen(const naive_mat& m) {
  edlab::cmat out(m.size(), m[0].size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[0].size(); ++j) out(i, j) = m[i][j];
  return out;
}

inline naive_mat naive_mult(const naive_mat& a, const naive_mat& b) {
  const size_t n = a.size(), k = b.size(), m = b[0].size();
  naive_mat out(n, std::vector<cd>(m, cd(0, 0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      for (size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline naive_mat naive_sub(const naive_mat& a, const naive_mat& b) {
  naive_mat out = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) out[i][j] -= b[i][j];
  return out;
}

inline naive_mat naive_commutator(const naive_mat& a, const naive_mat& b) {
  return naive_sub(naive_mult(a, b), naive_mult(b, a));
}

inline cd naive_trace(const naive_mat& a) {
  cd t(0, 0);
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

inline naive_mat naive_adjoint(const naive_mat& a) {
  naive_mat out(a[0].size(), std::vector<cd>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) out[j][i] = std::conj(a[i][j]);
  return out;
}

inline naive_mat naive_kron(const naive_mat& a, const naive_mat& b) {
  const size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
  naive_mat out(ar * br, std::vector<cd>(ac * bc));
  for (size_t i = 0; i < ar; ++i)
    for (size_t j = 0; j < ac; ++j)
      for (size_t k = 0; k < br; ++k)
        for (size_t l = 0; l < bc; ++l) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
  return out;
}

inline double max_abs_diff(const edlab::cmat& a, const edlab::cmat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace oracles
