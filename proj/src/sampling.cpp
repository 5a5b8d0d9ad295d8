#include "galilax/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "galilax/errors.hpp"
#include "galilax/normal_form.hpp"

namespace galilax {

Matrix Sampler::gaussian(Eigen::Index rows, Eigen::Index cols) {
  Matrix out(rows, cols);
  // Column-major fill keeps the draw order independent of Eigen internals.
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = normal();
  return out;
}

Matrix Sampler::orthogonal(int n) {
  const Matrix g = gaussian(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  return q;
}

Matrix Sampler::symplectic(int m) {
  const Matrix id = Matrix::Identity(m, m);
  auto sym = [&] {
    Matrix s = gaussian(m, m);
    return Matrix(0.25 * (s + s.transpose()));
  };
  Matrix upper = Matrix::Identity(2 * m, 2 * m);
  upper.topRightCorner(m, m) = sym();
  Matrix lower = Matrix::Identity(2 * m, 2 * m);
  lower.bottomLeftCorner(m, m) = sym();
  Matrix a = id + 0.3 * gaussian(m, m);
  while (std::abs(a.determinant()) < 0.2) {
    note_rejection();
    a = id + 0.3 * gaussian(m, m);
  }
  Matrix diag = Matrix::Zero(2 * m, 2 * m);
  diag.topLeftCorner(m, m) = a;
  diag.bottomRightCorner(m, m) = a.inverse().transpose();
  return upper * diag * lower;
}

CenteredState random_state(Sampler& rng, int d, int m) { return CenteredState(rng.gaussian(d, 2 * m)); }

PhaseState random_collision_free(Sampler& rng, const MassSystem& sys, double min_separation) {
  const int d = sys.dimension();
  const int n = sys.bodies();
  while (true) {
    PhaseState s{rng.gaussian(d, n), rng.gaussian(d, n)};
    const Matrix r2 = squared_distances(s.q);
    double closest = INFINITY;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) closest = std::min(closest, r2(a, b));
    if (closest >= min_separation * min_separation) return remove_center_of_mass(sys, s);
    rng.note_rejection();
  }
}

PlantedXu planted_xu(Sampler& rng, int d, int m, int p, int q) {
  if (2 * p + q > d || p + q > m) throw InvalidInput("planted signature does not fit the shape");
  PlantedXu out;
  out.p = p;
  out.q = q;
  // Distinct values with a clear gap: a descending ladder with jitter.
  for (int j = 0; j < p; ++j) out.sigma.push_back(0.6 + 0.5 * (p - j) + 0.2 * rng.uniform(0.0, 1.0));
  const Matrix dm = xu_pattern(d, m, p, q, out.sigma);
  const Matrix qm = rng.orthogonal(d);
  const Matrix t = rng.symplectic(m);
  out.z = CenteredState(qm * dm * symplectic_inverse(t));
  return out;
}

}  // namespace galilax
