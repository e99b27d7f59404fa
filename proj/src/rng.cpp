#include "edlab/rng.hpp"

namespace edlab {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t seed, uint64_t index) {
  uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64(state);
  return splitmix64(state);
}

cmat ginibre(Rng& rng, int rows, int cols) {
  cmat g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.cnormal();
  return g;
}

cmat random_unitary(Rng& rng, int n) {
  cmat g = ginibre(rng, n, n);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix phases so the distribution is Haar.
  for (int i = 0; i < n; ++i) {
    cplx d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= (a > 0 ? d / a : cplx(1, 0));
  }
  return q;
}

cmat random_hermitian(Rng& rng, int n) {
  cmat g = ginibre(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

cmat random_density(Rng& rng, int n, int rank) {
  if (rank <= 0 || rank > n) rank = n;
  cmat g = ginibre(rng, n, rank);
  cmat d = g * g.adjoint();
  return d / d.trace().real();
}

}  // namespace edlab
