#pragma once

// The dual pair of momentum maps on centered phase space:
//   G(Z) = Z^T Z   (quotient by O(d), momentum map of Sp(2n-2))
//   L(Z) = Z J Z^T (quotient by Sp(2n-2), momentum map of O(d))
// and the Lax image K = J G.

#include <vector>

#include "galilax/configuration.hpp"
#include "galilax/linalg.hpp"

namespace galilax {

class GramElement {
 public:
  /// Throws InvalidInput unless G is square of even size and symmetric to 1e-12 (relative).
  explicit GramElement(Matrix g);
  /// Builds G = -J K from a Lax matrix.
  static GramElement from_lax(const Matrix& k);

  const Matrix& g() const { return g_; }
  const Matrix& k() const { return k_; }
  int half_size() const { return static_cast<int>(g_.rows() / 2); }

 private:
  Matrix g_;
  Matrix k_;
};

struct AngularMomentum {
  Matrix l;
  /// Frobenius norm; equals sqrt(-trace L^2).
  double norm() const { return l.norm(); }
};

GramElement gram(const CenteredState& z);

/// L = Z J Z^T.
AngularMomentum angular_momentum(const CenteredState& z);

/// L = sum_i X_i Y_i^T - Y_i X_i^T, the same quantity summed column by column.
AngularMomentum angular_momentum_wedges(const CenteredState& z);

struct SpectralTraces {
  std::vector<double> l;  // trace L^k, k = 1..kMax
  std::vector<double> k;  // trace K^k
};

SpectralTraces spectral_traces(const CenteredState& z, int kMax);

enum class ConeVerdict { inside, boundary, outside };

struct ConeMembership {
  ConeVerdict verdict;
  int rank;              // numerical rank of G
  double min_eigenvalue;
};

/// Classifies G against symm_+(2n-2; d): PSD with the maximal rank
/// min(d, 2n-2) is inside, PSD with lower rank r is on the boundary stratum r, anything with an
/// eigenvalue below -tol * sigma_max (or rank above d) is outside.
ConeMembership cone_membership(const Matrix& g, int d, double tol = kRankTol);

}  // namespace galilax
