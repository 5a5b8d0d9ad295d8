#include "galilax/forces.hpp"

#include <cmath>
#include <sstream>

#include "galilax/errors.hpp"

namespace galilax {

namespace {

constexpr double kCollisionFraction = 1e-12;

void check_collisions(const Matrix& r2) {
  const double scale_sq = r2.maxCoeff();
  const double cut_sq = kCollisionFraction * kCollisionFraction * scale_sq;
  for (Eigen::Index a = 0; a < r2.rows(); ++a)
    for (Eigen::Index b = a + 1; b < r2.cols(); ++b)
      if (r2(a, b) <= cut_sq) throw SingularityError(static_cast<int>(a), static_cast<int>(b));
}

}  // namespace

Potential Potential::newtonian(double g, double softening) {
  Potential pot = homogeneous(1.0, g, softening);
  pot.kind_ = Kind::newtonian_gravity;
  return pot;
}

Potential Potential::homogeneous(double exponent, double coupling, double softening) {
  if (!std::isfinite(exponent) || !std::isfinite(coupling) || !(softening >= 0.0))
    throw InvalidInput("potential parameters must be finite with non-negative softening");
  Potential pot;
  pot.kind_ = Kind::homogeneous;
  pot.exponent_ = exponent;
  pot.coupling_ = coupling;
  pot.softening_ = softening;
  return pot;
}

Potential Potential::custom(Evaluator evaluator, bool singular, std::string label) {
  if (!evaluator) throw InvalidInput("custom potential needs an evaluator");
  Potential pot;
  pot.kind_ = Kind::custom;
  pot.custom_ = std::move(evaluator);
  pot.custom_singular_ = singular;
  pot.label_ = std::move(label);
  return pot;
}

bool Potential::singular_at_collision() const {
  if (kind_ == Kind::custom) return custom_singular_;
  return exponent_ > 0.0 && coupling_ != 0.0 && softening_ == 0.0;
}

std::string Potential::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::newtonian_gravity:
      os << "newtonian(G=" << coupling_ << ", eps=" << softening_ << ")";
      break;
    case Kind::homogeneous:
      os << "homogeneous(alpha=" << exponent_ << ", c=" << coupling_ << ", eps=" << softening_ << ")";
      break;
    case Kind::custom:
      os << label_;
      break;
  }
  return os.str();
}

PotentialValue Potential::evaluate(const Matrix& r2, const std::vector<double>& masses) const {
  const auto n = r2.rows();
  if (r2.cols() != n || static_cast<Eigen::Index>(masses.size()) != n)
    throw InvalidInput("squared-distance table must be n x n");
  if (singular_at_collision()) check_collisions(r2);
  if (kind_ == Kind::custom) {
    PotentialValue v = custom_(r2, masses);
    if (v.dw.rows() != n || v.dw.cols() != n) throw InvalidInput("custom potential returned a mis-shaped gradient");
    return v;
  }
  PotentialValue v;
  v.dw = Matrix::Zero(n, n);
  const double eps2 = softening_ * softening_;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const double c = coupling_ * masses[a] * masses[b];
      if (c == 0.0) continue;
      const double s = r2(a, b) + eps2;
      const double term = c * std::pow(s, -0.5 * exponent_);
      v.w += term;
      v.dw(a, b) = v.dw(b, a) = -0.5 * exponent_ * term / s;
    }
  }
  return v;
}

Matrix squared_distances(const Matrix& q) {
  const auto n = q.cols();
  Matrix r2 = Matrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b) r2(a, b) = r2(b, a) = (q.col(a) - q.col(b)).squaredNorm();
  return r2;
}

Matrix squared_distances_from_gram(const JacobiBasis& basis, const Matrix& b) {
  const int n = basis.bodies();
  const int m = basis.reduced_size();
  if (b.rows() != m || b.cols() != m) throw InvalidInput("small Gram matrix must be (n-1) x (n-1)");
  const Matrix tt = basis.truncated();
  Matrix r2 = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = a + 1; c < n; ++c) {
      const Vector delta = tt.col(a) - tt.col(c);
      r2(a, c) = r2(c, a) = delta.dot(b * delta);
    }
  }
  return r2;
}

Matrix small_gram(const CenteredState& z) {
  const Matrix x = z.x();
  return x.transpose() * x;
}

WintnerConley wintner_conley_full(const MassSystem& sys, const Matrix& q, const Potential& pot) {
  if (q.rows() != sys.dimension() || q.cols() != sys.bodies())
    throw InvalidInput("configuration must be d x n");
  const PotentialValue v = pot.evaluate(squared_distances(q), sys.masses());
  const int n = sys.bodies();
  Matrix a = 2.0 * v.dw;
  for (int i = 0; i < n; ++i) {
    a(i, i) = 0.0;
    a(i, i) = -a.row(i).sum();
  }
  return {std::move(a), WintnerConley::Gauge::full};
}

WintnerConley wintner_conley_reduced(const MassSystem& sys, const JacobiBasis& basis, const Matrix& b,
                                     const Potential& pot) {
  if (basis.bodies() != sys.bodies()) throw InvalidInput("basis does not match the mass system");
  const PotentialValue v = pot.evaluate(squared_distances_from_gram(basis, b), sys.masses());
  const int n = sys.bodies();
  const int m = sys.reduced_size();
  const Matrix tt = basis.truncated();
  // grad_X r_ab^2 = 2 X delta delta^T, so A~ = -2 sum_{a<b} (dW/dr_ab^2) delta delta^T.
  Matrix a_red = Matrix::Zero(m, m);
  for (int a = 0; a < n; ++a) {
    for (int c = a + 1; c < n; ++c) {
      if (v.dw(a, c) == 0.0) continue;
      const Vector delta = tt.col(a) - tt.col(c);
      a_red.noalias() -= 2.0 * v.dw(a, c) * delta * delta.transpose();
    }
  }
  return {std::move(a_red), WintnerConley::Gauge::reduced};
}

LaxGenerator assemble_p(const Matrix& a_reduced, const Matrix& reduced_mass) {
  const auto m = a_reduced.rows();
  if (a_reduced.cols() != m || reduced_mass.rows() != m || reduced_mass.cols() != m)
    throw InvalidInput("A~ and M~ must both be (n-1) x (n-1)");
  const double scale = std::max(1.0, max_abs(a_reduced));
  if (max_abs(a_reduced - a_reduced.transpose()) > 1e-12 * scale) throw InvalidInput("A~ is not symmetric");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(reduced_mass(i, i) > 0.0)) throw InvalidInput("M~ must have a positive diagonal");
    for (Eigen::Index j = 0; j < m; ++j)
      if (i != j && reduced_mass(i, j) != 0.0) throw InvalidInput("M~ must be diagonal");
  }
  Matrix s = Matrix::Zero(2 * m, 2 * m);
  s.topLeftCorner(m, m) = reduced_mass.diagonal().cwiseInverse().asDiagonal();
  s.bottomRightCorner(m, m) = 0.5 * (a_reduced + a_reduced.transpose());
  return {symplectic_j(static_cast<int>(m)) * s};
}

double force_function(const MassSystem& sys, const JacobiBasis& basis, const Matrix& b, const Potential& pot) {
  return pot.evaluate(squared_distances_from_gram(basis, b), sys.masses()).w;
}

double energy(const MassSystem& sys, const JacobiBasis& basis, const CenteredState& z, const Potential& pot) {
  return kinetic_energy(basis, z) - force_function(sys, basis, small_gram(z), pot);
}

double energy_from_gram(const MassSystem& sys, const JacobiBasis& basis, const Matrix& g, const Potential& pot) {
  const int m = basis.reduced_size();
  if (g.rows() != 2 * m || g.cols() != 2 * m) throw InvalidInput("Gram matrix must be (2n-2) x (2n-2)");
  const double kinetic = 0.5 * (basis.reduced_mass_inverse() * g.bottomRightCorner(m, m)).trace();
  return kinetic - force_function(sys, basis, g.topLeftCorner(m, m), pot);
}

}  // namespace galilax
