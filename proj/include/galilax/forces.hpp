#pragma once

// Potentials written as functions of squared mutual distances, the
// Wintner-Conley matrices A (label space) and A~ (Jacobi space), and the
// Lax generator P = J S.
//
// Sign convention: U is the force function (negative potential energy) and
//   grad U(q) = -q A,   grad U(X) = -X A~(b),
// so A_ab = 2 dW/dr_ab^2 off the diagonal and, for Newtonian gravity,
// A_ab = -G m_a m_b / r_ab^3. With this convention Xdot = Y M~^{-1},
// Ydot = -X A~ and Zdot = -Z P with P = J diag(M~^{-1}, A~).

#include <functional>
#include <string>
#include <vector>

#include "galilax/configuration.hpp"
#include "galilax/linalg.hpp"

namespace galilax {

/// W together with dW/dr_ab^2, stored as a symmetric n x n table with zero
/// diagonal (each unordered pair is one variable).
struct PotentialValue {
  double w = 0.0;
  Matrix dw;
};

class Potential {
 public:
  enum class Kind { newtonian_gravity, homogeneous, custom };

  using Evaluator = std::function<PotentialValue(const Matrix& r2, const std::vector<double>& masses)>;

  /// U = sum_{a<b} G m_a m_b / sqrt(r_ab^2 + eps^2).
  static Potential newtonian(double g = 1.0, double softening = 0.0);
  /// U = sum_{a<b} c m_a m_b (r_ab^2 + eps^2)^{-alpha/2}. alpha = 0 is pairwise constant.
  static Potential homogeneous(double exponent, double coupling, double softening = 0.0);
  /// Free particles: U = 0, hence A = 0.
  static Potential none() { return homogeneous(0.0, 0.0); }
  /// Caller-supplied W; `singular` enables the collision check.
  static Potential custom(Evaluator evaluator, bool singular, std::string label = "custom");

  Kind kind() const { return kind_; }
  double coupling() const { return coupling_; }
  double exponent() const { return exponent_; }
  double softening() const { return softening_; }
  bool singular_at_collision() const;
  std::string describe() const;

  /// Throws SingularityError when a pair is closer than 1e-12 times the
  /// system length scale and the potential is singular there.
  PotentialValue evaluate(const Matrix& r2, const std::vector<double>& masses) const;

 private:
  Kind kind_ = Kind::homogeneous;
  double coupling_ = 0.0;
  double exponent_ = 0.0;
  double softening_ = 0.0;
  bool custom_singular_ = false;
  std::string label_;
  Evaluator custom_;
};

struct WintnerConley {
  enum class Gauge { full, reduced };
  Matrix a;
  Gauge gauge;
};

/// P = J S with S = diag(M~^{-1}, A~); an element of sp(2n-2).
struct LaxGenerator {
  Matrix p;
};

/// r_ab^2 = |q_a - q_b|^2 for a d x n configuration.
Matrix squared_distances(const Matrix& q);

/// r_ab^2 recovered linearly from the small Gram matrix b = X^T X.
Matrix squared_distances_from_gram(const JacobiBasis& basis, const Matrix& b);

/// b = X^T X.
Matrix small_gram(const CenteredState& z);

/// Full gauge: grad U(q) = -q A, rows and columns of A sum to zero.
WintnerConley wintner_conley_full(const MassSystem& sys, const Matrix& q, const Potential& pot);

/// Reduced gauge, computed from b alone: grad U(X) = -X A~(b). Equals the
/// leading (n-1) x (n-1) block of T A T^T.
WintnerConley wintner_conley_reduced(const MassSystem& sys, const JacobiBasis& basis, const Matrix& b,
                                     const Potential& pot);

/// Throws InvalidInput when A~ is not symmetric or M~ is not positive diagonal.
LaxGenerator assemble_p(const Matrix& a_reduced, const Matrix& reduced_mass);

/// W~(b): the force function U as a function of the small Gram matrix.
double force_function(const MassSystem& sys, const JacobiBasis& basis, const Matrix& b, const Potential& pot);

/// H = 1/2 trace(Y M~^{-1} Y^T) - W~(b).
double energy(const MassSystem& sys, const JacobiBasis& basis, const CenteredState& z, const Potential& pot);

/// The same Hamiltonian read off a Gram matrix G = Z^T Z.
double energy_from_gram(const MassSystem& sys, const JacobiBasis& basis, const Matrix& g, const Potential& pot);

}  // namespace galilax
