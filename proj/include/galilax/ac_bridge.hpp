#pragma once

// Block form of the reduced equations in the variables of Albouy and
// Chenciner, G = (b, c+r; c-r, d), and the mass-weighted ("hat") version of
// the Lax equation on the full 2n-sized algebra.
//
// Factor convention: A~ here is the symmetric Wintner-Conley matrix of
// forces.hpp; Albouy-Chenciner's force matrix corresponds to A~ M~^{-1}
// up to a factor -2. No conversion is applied anywhere else.

#include "galilax/configuration.hpp"
#include "galilax/dynamics.hpp"
#include "galilax/forces.hpp"
#include "galilax/linalg.hpp"

namespace galilax {

struct BlockGram {
  Matrix b;  // X^T X
  Matrix c;  // symmetric part of X^T Y
  Matrix d;  // Y^T Y
  Matrix r;  // antisymmetric part of X^T Y

  Matrix assemble() const;
};

/// Throws InvalidInput for odd or non-square G.
BlockGram split_blocks(const Matrix& g);

/// Gdot written block by block:
///   ( (c+r)M~^{-1} + M~^{-1}(c-r)    M~^{-1} d - b A~          )
///   ( d M~^{-1} - A~ b               -A~(c+r) - (c-r)A~        )
Matrix nrel_rhs(const Matrix& g, const Matrix& a_reduced, const Matrix& reduced_mass);

/// The same derivative from the Lax form, Gdot = -J [P, J G].
Matrix lax_gram_rhs(const Matrix& g, const Matrix& a_reduced, const Matrix& reduced_mass);

struct HatState {
  Matrix q_hat;  // q M^{1/2}
  Matrix p_hat;  // p M^{-1/2}
  Matrix a_hat;  // M^{-1/2} A M^{-1/2}
  Vector w;      // (sqrt m_1, ..., sqrt m_n)
  Matrix g_hat;  // Zhat^T Zhat, 2n x 2n
  Matrix k_hat;  // J G^
  Matrix p_gen;  // P^ = J diag(I, A^)

  /// Gdot^ and Kdot^ = [P^, K^].
  Matrix lax_rhs() const;
  /// (w, w): lies in the kernel of G^ for centered states.
  Vector kernel_vector() const;
  BlockGram blocks() const { return split_blocks(g_hat); }
  /// Rdot = 1/2 [A^, B] for the antisymmetric part R of the top-right block.
  Matrix r_rate() const;
};

/// Throws InvalidInput unless the state has zero center of mass and total
/// momentum (relative 1e-10).
HatState hat_transform(const MassSystem& sys, const PhaseState& state, const Potential& pot);

struct EquivalenceReport {
  double residual = 0.0;           // max entry of |Lax - block form|
  double top_left_residual = 0.0;  // max entry of |Gdot_11 - 2c|, meaningful when M~ = I
  bool unit_mass = false;          // M~ = I
  bool pass = false;               // residual <= 1e-10
};

/// Evaluates both right-hand sides at Z; the Lax side is built through the
/// dynamics module.
EquivalenceReport verify_equivalence(const CenteredState& z, const ReducedProblem& problem);

}  // namespace galilax
