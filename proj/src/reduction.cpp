#include "galilax/reduction.hpp"

#include <Eigen/Eigenvalues>

#include "galilax/errors.hpp"

namespace galilax {

GramElement::GramElement(Matrix g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols() || g_.rows() == 0 || g_.rows() % 2 != 0)
    throw InvalidInput("Gram element must be square with even size");
  if (max_abs(g_ - g_.transpose()) > 1e-12 * std::max(1.0, max_abs(g_)))
    throw InvalidInput("Gram element must be symmetric");
  k_ = symplectic_j(half_size()) * g_;
}

GramElement GramElement::from_lax(const Matrix& k) {
  if (k.rows() != k.cols() || k.rows() % 2 != 0) throw InvalidInput("Lax matrix must be square with even size");
  Matrix g = -symplectic_j(static_cast<int>(k.rows() / 2)) * k;
  return GramElement(0.5 * (g + g.transpose()));
}

GramElement gram(const CenteredState& z) { return GramElement(z.z().transpose() * z.z()); }

AngularMomentum angular_momentum(const CenteredState& z) {
  return {z.z() * symplectic_j(z.half_size()) * z.z().transpose()};
}

AngularMomentum angular_momentum_wedges(const CenteredState& z) {
  const Matrix x = z.x();
  const Matrix y = z.y();
  Matrix l = Matrix::Zero(z.dimension(), z.dimension());
  for (int i = 0; i < z.half_size(); ++i) l += x.col(i) * y.col(i).transpose() - y.col(i) * x.col(i).transpose();
  return {l};
}

SpectralTraces spectral_traces(const CenteredState& z, int kMax) {
  return {power_traces(angular_momentum(z).l, kMax), power_traces(gram(z).k(), kMax)};
}

ConeMembership cone_membership(const Matrix& g, int d, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  ConeMembership out{ConeVerdict::inside, 0, ev.size() ? ev.minCoeff() : 0.0};
  if (scale == 0.0) {
    out.verdict = d == 0 ? ConeVerdict::inside : ConeVerdict::boundary;
    return out;
  }
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol * scale) ++out.rank;
  if (out.min_eigenvalue < -tol * scale || out.rank > d)
    out.verdict = ConeVerdict::outside;
  else
    out.verdict = out.rank == std::min<Eigen::Index>(d, ev.size()) ? ConeVerdict::inside : ConeVerdict::boundary;
  return out;
}

}  // namespace galilax
