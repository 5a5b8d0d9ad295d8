#pragma once

// Numerical invariants (p, q) and spectral invariants omega_j^2 of a point of
// symm_+(2n-2), the normal-form quadratic Hamiltonian
//   lambda = 1/2 sum_{j<=p} omega_j^2 (x_j^2 + y_j^2) + 1/2 sum_{p<j<=p+q} y_j^2,
// and a constructive factorization Z = Q D T^{-1} with Q orthogonal, T
// symplectic and D a permuted diagonal.

#include <vector>

#include "galilax/configuration.hpp"
#include "galilax/linalg.hpp"
#include "galilax/reduction.hpp"

namespace galilax {

/// How clear-cut a rank decision was, relative to the largest singular value.
struct RankMargin {
  double smallest_kept = 0.0;    // 0 when nothing was kept
  double largest_dropped = 0.0;  // 0 when nothing was dropped
};

struct InvariantSignature {
  int p = 0;
  int q = 0;
  std::vector<double> omega_sq;  // p positive values, descending
  int m = 0;                     // half-size n - 1

  int motion_rank() const { return 2 * p + q; }
  bool operator==(const InvariantSignature&) const = default;
};

/// Signature plus the margins behind its rank decisions.
struct SignatureReport {
  InvariantSignature signature;
  RankMargin l_margin;
  RankMargin z_margin;
};

struct LSpectrum {
  int p = 0;
  std::vector<double> omega_sq;
  RankMargin margin;
};

/// p = rank(L)/2 and omega_j^2 = the singular values of L, one per pair.
/// Singular values above tol * scale count (scale <= 0: the largest one).
/// Throws ToleranceInconsistency if the numerical rank is odd.
LSpectrum invariants_from_l(const Matrix& l, double tol = kRankTol, double scale = 0.0);

/// p and omega^2 from L = Z J Z^T, q = rank(Z) - 2p. Throws
/// ToleranceInconsistency when the result violates
///   p <= d/2, q <= min(d - 2p, m - p), 2p + q <= min(d, 2m).
SignatureReport invariants_from_z(const CenteredState& z, double tol = kRankTol);

/// Invariants of a positive semidefinite G, via a square-root factor Z' with
/// Z'^T Z' = G. Throws InvalidInput when G is not PSD.
SignatureReport invariants_from_gram(const Matrix& g, double tol = kRankTol);

/// Same, for K = J G.
SignatureReport invariants_from_k(const Matrix& k, double tol = kRankTol);

/// Checks p + q <= m and the omega list; throws InvalidInput.
void validate_signature(const InvariantSignature& sig, int m);

/// Matrix of the normal-form quadratic form in the y-variant.
GramElement normal_form_matrix(const InvariantSignature& sig, int m);

struct XuFactorization {
  Matrix q;  // d x d orthogonal
  Matrix d;  // d x 2m permuted diagonal
  Matrix t;  // 2m x 2m symplectic
  int p = 0;
  int nilpotent = 0;           // q of the signature
  std::vector<double> sigma;   // diagonal of Sigma; sigma_j^2 = omega_j^2
  double reconstruction_residual = 0.0;  // ||Z - Q D T^{-1}|| / ||Z||
  double symplectic_defect = 0.0;        // ||T^T J T - J||
  double orthogonality_defect = 0.0;     // ||Q^T Q - I||
};

/// D with Sigma at (j, j) and (p+q+j, m+j), identity at (p+k, p+k).
Matrix xu_pattern(int d, int m, int p, int q, const std::vector<double>& sigma);

/// Throws DecompositionFailure if the reconstruction residual exceeds 1e-8
/// or the symplectic defect exceeds 1e-8.
XuFactorization xu_decompose(const CenteredState& z, double tol = kRankTol);

}  // namespace galilax
