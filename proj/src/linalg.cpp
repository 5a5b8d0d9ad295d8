#include "galilax/linalg.hpp"

#include <vector>

namespace galilax {

Matrix symplectic_j(int m) {
  Matrix j = Matrix::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m).setIdentity();
  j.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return j;
}

Vector singular_values(const Matrix& a) {
  if (a.size() == 0) return Vector();
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

int numerical_rank(const Matrix& a, double tol) {
  const Vector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = tol * s(0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double symplectic_defect(const Matrix& t) {
  const Matrix j = symplectic_j(static_cast<int>(t.rows() / 2));
  return (t.transpose() * j * t - j).norm();
}

double antisymmetry_defect(const Matrix& a) { return (a + a.transpose()).norm(); }

double symmetry_defect(const Matrix& a) { return (a - a.transpose()).norm(); }

Matrix symplectic_inverse(const Matrix& t) {
  const Matrix j = symplectic_j(static_cast<int>(t.rows() / 2));
  return -j * t.transpose() * j;
}

std::vector<double> power_traces(const Matrix& a, int kMax) {
  std::vector<double> out;
  out.reserve(kMax);
  Matrix power = Matrix::Identity(a.rows(), a.cols());
  for (int k = 1; k <= kMax; ++k) {
    power = power * a;
    out.push_back(power.trace());
  }
  return out;
}

}  // namespace galilax
