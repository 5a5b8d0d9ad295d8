#pragma once

// Masses, the mass metric on label space, Jacobi bases, and the
// translation/boost reduction from inertial phase space to the centered
// d x (2n-2) matrix Z = (X, Y).

#include <vector>

#include "galilax/linalg.hpp"

namespace galilax {

class MassSystem {
 public:
  /// Throws InvalidInput unless n >= 2, d >= 1 and every mass is positive.
  MassSystem(std::vector<double> masses, int dimension);

  int bodies() const { return static_cast<int>(masses_.size()); }
  int dimension() const { return dimension_; }
  /// Half-size of the centered phase space, n - 1.
  int reduced_size() const { return bodies() - 1; }
  const std::vector<double>& masses() const { return masses_; }
  double total_mass() const;
  /// M = diag(m_1, ..., m_n).
  Matrix mass_matrix() const;

 private:
  std::vector<double> masses_;
  int dimension_;
};

/// Positions and momenta in the inertial frame, both d x n (one column per body).
struct PhaseState {
  Matrix q;
  Matrix p;
};

/// Rows E_a of T form a mass-orthogonal basis of label space; the last row
/// is proportional to (1, ..., 1).
struct JacobiBasis {
  Matrix t;
  std::vector<double> reduced_masses;  // diagonal of T M T^T, first n-1 entries
  double last_mass;                    // (T M T^T)_{nn}
  bool normalized;

  int bodies() const { return static_cast<int>(t.rows()); }
  int reduced_size() const { return bodies() - 1; }
  /// M~ = diag(reduced_masses).
  Matrix reduced_mass_matrix() const;
  Matrix reduced_mass_inverse() const;
  /// First n-1 rows of T; maps centered Jacobi coordinates back to labels.
  Matrix truncated() const { return t.topRows(reduced_size()); }
};

/// Centered phase point Z = (X_1..X_{n-1}, Y_1..Y_{n-1}).
class CenteredState {
 public:
  CenteredState() = default;
  /// Throws InvalidInput if Z has an odd or zero column count.
  explicit CenteredState(Matrix z);
  CenteredState(const Matrix& x, const Matrix& y);

  const Matrix& z() const { return z_; }
  int dimension() const { return static_cast<int>(z_.rows()); }
  int half_size() const { return static_cast<int>(z_.cols() / 2); }
  Matrix x() const { return z_.leftCols(half_size()); }
  Matrix y() const { return z_.rightCols(half_size()); }

 private:
  Matrix z_;
};

/// <u, v>_M = sum_a m_a u_a v_a.
double mass_inner_product(const MassSystem& sys, const Vector& u, const Vector& v);

/// Sequential Jacobi vectors: X_k is built from body k+1 and the partial
/// center of mass of bodies 1..k. Normalized bases satisfy T M T^T = I.
JacobiBasis build_jacobi_basis(const MassSystem& sys, bool normalized = true);

/// Removes center of mass and total momentum, then expands in the basis.
CenteredState center(const MassSystem& sys, const PhaseState& state, const JacobiBasis& basis);

/// The unique state with zero center of mass and zero total momentum that
/// centers to Z.
PhaseState reconstruct(const MassSystem& sys, const JacobiBasis& basis, const CenteredState& z);

/// Subtracts the center of mass from q and m_a * (mean velocity) from p.
PhaseState remove_center_of_mass(const MassSystem& sys, const PhaseState& state);

/// 1/2 sum_a |p_a|^2 / m_a.
double kinetic_energy(const MassSystem& sys, const PhaseState& state);

/// 1/2 trace(Y M~^{-1} Y^T).
double kinetic_energy(const JacobiBasis& basis, const CenteredState& z);

}  // namespace galilax
