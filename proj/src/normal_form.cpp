#include "galilax/normal_form.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "galilax/errors.hpp"

namespace galilax {

namespace {

struct RankCut {
  int rank = 0;
  RankMargin margin;
};

// Values above tol * scale count; scale defaults to the largest value.
RankCut rank_cut(const Vector& s, double tol, double scale = 0.0) {
  RankCut out;
  if (s.size() == 0) return out;
  if (!(scale > 0.0)) scale = s(0);
  if (scale == 0.0) return out;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * scale) ++out.rank;
  if (out.rank > 0) out.margin.smallest_kept = s(out.rank - 1) / scale;
  if (out.rank < s.size()) out.margin.largest_dropped = s(out.rank) / scale;
  return out;
}

// Orthonormal vectors u_j, v_j with u_j^T A v_j = s_j > 0 (descending) for an
// antisymmetric A, and an orthonormal basis of the complement (ker A).
struct CanonicalPairs {
  Matrix u;
  Matrix v;
  std::vector<double> s;
  Matrix kernel;
};

CanonicalPairs canonical_pairs(const Matrix& a, int count) {
  const auto k = a.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a.transpose() * a);
  const Matrix& vecs = eig.eigenvectors();

  std::vector<Vector> us, vs;
  std::vector<double> ss;
  auto orthogonalize = [&](Vector x) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < us.size(); ++j) {
        x -= us[j].dot(x) * us[j];
        x -= vs[j].dot(x) * vs[j];
      }
    }
    return x;
  };
  for (Eigen::Index i = k - 1; i >= k - 2 * count && static_cast<int>(ss.size()) < count; --i) {
    Vector v = orthogonalize(vecs.col(i));
    if (v.norm() < 1e-3) continue;
    v.normalize();
    Vector u = orthogonalize(a * v);
    u.normalize();
    v = orthogonalize(v - u.dot(v) * u).normalized();
    us.push_back(u);
    vs.push_back(v);
    ss.push_back(u.dot(a * v));
  }
  if (static_cast<int>(ss.size()) != count)
    throw DecompositionFailure("could not isolate the invariant planes of an antisymmetric matrix",
                               static_cast<double>(count - static_cast<int>(ss.size())));

  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return ss[x] > ss[y]; });

  CanonicalPairs out;
  out.u.resize(k, count);
  out.v.resize(k, count);
  for (int j = 0; j < count; ++j) {
    out.u.col(j) = us[order[j]];
    out.v.col(j) = vs[order[j]];
    out.s.push_back(ss[order[j]]);
  }
  out.kernel = vecs.leftCols(k - 2 * count);
  return out;
}

double omega(const Vector& a, const Vector& b, const Matrix& j) { return a.dot(j * b); }

// Removes the component of x along the hyperbolic pair (e, f), omega(e, f) = 1.
void project_off_pair(Vector& x, const Vector& e, const Vector& f, const Matrix& j) {
  const double xf = omega(x, f, j);
  const double xe = omega(x, e, j);
  x += -xf * e + xe * f;
}

}  // namespace

LSpectrum invariants_from_l(const Matrix& l, double tol, double scale) {
  if (l.rows() != l.cols()) throw InvalidInput("angular momentum must be square");
  if (antisymmetry_defect(l) > 1e-10 * std::max(1.0, l.norm())) throw InvalidInput("L must be antisymmetric");
  const Vector s = singular_values(l);
  const RankCut cut = rank_cut(s, tol, scale);
  if (cut.rank % 2 != 0)
    throw ToleranceInconsistency("antisymmetric matrix has odd numerical rank " + std::to_string(cut.rank));
  LSpectrum out;
  out.p = cut.rank / 2;
  out.margin = cut.margin;
  for (int j = 0; j < out.p; ++j) out.omega_sq.push_back(0.5 * (s(2 * j) + s(2 * j + 1)));
  return out;
}

SignatureReport invariants_from_z(const CenteredState& z, double tol) {
  const int d = z.dimension();
  const int m = z.half_size();
  const Vector zs = singular_values(z.z());
  const double top = zs.size() ? zs(0) : 0.0;
  // L is quadratic in Z, so its threshold is measured against sigma_max(Z)^2.
  const LSpectrum ls = invariants_from_l(angular_momentum(z).l, tol, top * top);
  const RankCut zcut = rank_cut(zs, tol);

  SignatureReport out;
  out.signature.m = m;
  out.signature.p = ls.p;
  out.signature.q = zcut.rank - 2 * ls.p;
  out.signature.omega_sq = ls.omega_sq;
  out.l_margin = ls.margin;
  out.z_margin = zcut.margin;

  const int p = out.signature.p;
  const int q = out.signature.q;
  if (q < 0 || 2 * p > d || q > std::min(d - 2 * p, m - p) || 2 * p + q > std::min(d, 2 * m))
    throw ToleranceInconsistency("rank decisions give (p, q) = (" + std::to_string(p) + ", " + std::to_string(q) +
                                 ") outside the admissible range");
  return out;
}

SignatureReport invariants_from_gram(const Matrix& g, double tol) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0 || g.rows() == 0)
    throw InvalidInput("Gram matrix must be square with even size");
  if (symmetry_defect(g) > 1e-10 * std::max(1.0, g.norm())) throw InvalidInput("Gram matrix must be symmetric");
  const int m = static_cast<int>(g.rows() / 2);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (g + g.transpose()));
  const Vector& ev = eig.eigenvalues();
  const double top = std::max(0.0, ev.maxCoeff());
  if (ev.minCoeff() < -tol * top - 1e-300) throw InvalidInput("Gram matrix is not positive semidefinite");

  // Square-root factor Z' (rows sqrt(lambda_i) v_i^T) with Z'^T Z' = G.
  Matrix zp = Matrix::Zero(g.rows(), g.cols());
  Vector descending(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Eigen::Index src = ev.size() - 1 - i;
    const double lambda = std::max(0.0, ev(src));
    descending(i) = lambda;
    zp.row(i) = std::sqrt(lambda) * eig.eigenvectors().col(src).transpose();
  }
  // Rank decisions on the scale of G itself, matching those made on Z. The
  // factor is truncated to that rank: rows from round-off eigenvalues carry
  // sqrt(eps) entries that would otherwise show up in L'.
  const RankCut gcut = rank_cut(descending, tol);
  zp.bottomRows(zp.rows() - gcut.rank).setZero();
  const LSpectrum ls = invariants_from_l(zp * symplectic_j(m) * zp.transpose(), tol, descending(0));

  SignatureReport out;
  out.signature.m = m;
  out.signature.p = ls.p;
  out.signature.q = gcut.rank - 2 * ls.p;
  out.signature.omega_sq = ls.omega_sq;
  out.l_margin = ls.margin;
  out.z_margin = gcut.margin;
  if (out.signature.q < 0 || out.signature.p + out.signature.q > m)
    throw ToleranceInconsistency("rank decisions on G give (p, q) = (" + std::to_string(out.signature.p) + ", " +
                                 std::to_string(out.signature.q) + ")");
  return out;
}

SignatureReport invariants_from_k(const Matrix& k, double tol) {
  return invariants_from_gram(GramElement::from_lax(k).g(), tol);
}

void validate_signature(const InvariantSignature& sig, int m) {
  if (sig.p < 0 || sig.q < 0 || sig.p + sig.q > m)
    throw InvalidInput("signature needs p, q >= 0 and p + q <= m");
  if (static_cast<int>(sig.omega_sq.size()) != sig.p) throw InvalidInput("need exactly p spectral invariants");
  for (std::size_t j = 0; j < sig.omega_sq.size(); ++j) {
    if (!(sig.omega_sq[j] > 0.0)) throw InvalidInput("spectral invariants must be positive");
    if (j > 0 && sig.omega_sq[j] > sig.omega_sq[j - 1]) throw InvalidInput("spectral invariants must be descending");
  }
}

GramElement normal_form_matrix(const InvariantSignature& sig, int m) {
  validate_signature(sig, m);
  Matrix g = Matrix::Zero(2 * m, 2 * m);
  for (int j = 0; j < sig.p; ++j) g(j, j) = g(m + j, m + j) = sig.omega_sq[j];
  for (int j = sig.p; j < sig.p + sig.q; ++j) g(m + j, m + j) = 1.0;
  return GramElement(std::move(g));
}

Matrix xu_pattern(int d, int m, int p, int q, const std::vector<double>& sigma) {
  if (2 * p + q > d || p + q > m || static_cast<int>(sigma.size()) != p)
    throw InvalidInput("permuted diagonal does not fit a " + std::to_string(d) + " x " + std::to_string(2 * m) +
                       " matrix");
  Matrix dm = Matrix::Zero(d, 2 * m);
  for (int j = 0; j < p; ++j) {
    dm(j, j) = sigma[j];
    dm(p + q + j, m + j) = sigma[j];
  }
  for (int k = 0; k < q; ++k) dm(p + k, p + k) = 1.0;
  return dm;
}

XuFactorization xu_decompose(const CenteredState& state, double tol) {
  const Matrix& z = state.z();
  const int d = state.dimension();
  const int m = state.half_size();
  const Matrix j = symplectic_j(m);
  const InvariantSignature sig = invariants_from_z(state, tol).signature;
  const int p = sig.p;
  const int q = sig.q;

  // Orthogonal frame adapted to L: invariant planes (u_j, v_j), then ker L.
  const Matrix l = z * j * z.transpose();
  const CanonicalPairs planes = canonical_pairs(0.5 * (l - l.transpose()), p);

  // Inside ker L, rotate so the first q rows of the projected Z carry its rank.
  Matrix kernel = planes.kernel;
  std::vector<Vector> nil_rows;
  if (kernel.cols() > 0) {
    const Matrix projected = kernel.transpose() * z;
    Eigen::JacobiSVD<Matrix> svd(projected, Eigen::ComputeFullU | Eigen::ComputeFullV);
    kernel = kernel * svd.matrixU();
    for (int k = 0; k < q; ++k) nil_rows.push_back(svd.singularValues()(k) * svd.matrixV().col(k));
  }

  // Rows of T^{-1}: x-slots and y-slots of a symplectic basis.
  std::vector<Vector> xs, ys;
  std::vector<double> sigma;
  for (int i = 0; i < p; ++i) {
    const double s = std::sqrt(planes.s[i]);
    sigma.push_back(s);
    xs.push_back(z.transpose() * planes.u.col(i) / s);
    ys.push_back(z.transpose() * planes.v.col(i) / s);
  }

  // Partners f_k for the isotropic rows e_k: start from -J e_k, strip the
  // hyperbolic planes, solve omega(e_k, f_l) = delta_kl, then make the f's isotropic.
  if (q > 0) {
    Matrix c(2 * m, q);
    for (int k = 0; k < q; ++k) {
      Vector ck = -j * nil_rows[k];
      for (int i = 0; i < p; ++i) project_off_pair(ck, xs[i], ys[i], j);
      c.col(k) = ck;
    }
    Matrix e(2 * m, q);
    for (int k = 0; k < q; ++k) e.col(k) = nil_rows[k];
    const Matrix gamma = e.transpose() * j * c;
    Matrix f = c * gamma.inverse();
    const Matrix ff = f.transpose() * j * f;
    f += 0.5 * e * ff;
    for (int k = 0; k < q; ++k) {
      xs.push_back(nil_rows[k]);
      ys.push_back(f.col(k));
    }
  }

  // Remaining symplectic complement: project the standard basis off every
  // pair so far, take an orthonormal basis B, and split the restricted form.
  const int rest = m - p - q;
  if (rest > 0) {
    Matrix pool = Matrix::Identity(2 * m, 2 * m);
    for (int c = 0; c < 2 * m; ++c) {
      Vector x = pool.col(c);
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < xs.size(); ++i) project_off_pair(x, xs[i], ys[i], j);
      pool.col(c) = x;
    }
    Eigen::JacobiSVD<Matrix> svd(pool, Eigen::ComputeFullU);
    const Matrix b = svd.matrixU().leftCols(2 * rest);
    const Matrix omega_b = b.transpose() * j * b;
    const CanonicalPairs sub = canonical_pairs(0.5 * (omega_b - omega_b.transpose()), rest);
    for (int i = 0; i < rest; ++i) {
      const double s = std::sqrt(sub.s[i]);
      xs.push_back(b * sub.u.col(i) / s);
      ys.push_back(b * sub.v.col(i) / s);
    }
  }

  Matrix t_inv(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    t_inv.row(i) = xs[i].transpose();
    t_inv.row(m + i) = ys[i].transpose();
  }

  // Q columns follow the row layout of D: u's, first q kernel directions, v's, rest.
  Matrix qm(d, d);
  int col = 0;
  for (int i = 0; i < p; ++i) qm.col(col++) = planes.u.col(i);
  for (int k = 0; k < q; ++k) qm.col(col++) = kernel.col(k);
  for (int i = 0; i < p; ++i) qm.col(col++) = planes.v.col(i);
  for (Eigen::Index k = q; k < kernel.cols(); ++k) qm.col(col++) = kernel.col(k);
  if (d - 2 * p - q > 0 && qm.determinant() < 0.0) qm.col(d - 1) *= -1.0;

  XuFactorization out;
  out.q = std::move(qm);
  out.d = xu_pattern(d, m, p, q, sigma);
  out.t = t_inv.partialPivLu().inverse();
  out.p = p;
  out.nilpotent = q;
  out.sigma = std::move(sigma);
  const double zn = z.norm();
  out.reconstruction_residual = (z - out.q * out.d * t_inv).norm() / (zn > 0.0 ? zn : 1.0);
  out.symplectic_defect = symplectic_defect(out.t);
  out.orthogonality_defect = (out.q.transpose() * out.q - Matrix::Identity(d, d)).norm();
  if (out.reconstruction_residual > 1e-8)
    throw DecompositionFailure("factorization does not reproduce Z", out.reconstruction_residual);
  if (out.symplectic_defect > 1e-8) throw DecompositionFailure("T is not symplectic", out.symplectic_defect);
  return out;
}

}  // namespace galilax
