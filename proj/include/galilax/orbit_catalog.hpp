#pragma once

// Coadjoint orbits of Sp(2m) through the positive semidefinite normal forms:
// dimensions, identity components of isotropy groups, closure strata, and
// the singularity data of the spatial reduced space.

#include <string>
#include <vector>

#include "galilax/normal_form.hpp"

namespace galilax {

struct IsotropyFactor {
  enum class Kind { so, u, sp, torus, real, symm, heis, pairing };
  Kind kind;
  int a = 0;
  int b = 0;  // second index of P_{a,b}

  /// Dimension of the named group.
  int dimension() const;
  std::string name() const;
};

struct IsotropyDescriptor {
  std::vector<IsotropyFactor> factors;
  std::string name;  // "unclassified" when the composed name was not confirmed
  int dimension = 0;
  bool classified = true;
};

struct OrbitDescriptor {
  InvariantSignature signature;
  std::vector<int> multiplicities;  // sizes of the groups of equal omega^2
  int dimension = 0;
  int isotropy_dim = 0;
  IsotropyDescriptor isotropy;
  bool closed = false;   // q == 0
  int motion_dim = 0;    // 2p + q
  bool generic = false;  // dimension == 2 m^2
};

/// Sizes of the groups of equal values (relative tolerance) in a descending list.
std::vector<int> frequency_multiplicities(const std::vector<double>& omega_sq, double rel_tol = 1e-9);

/// dim O = m(2m+1) - dim g_lambda with the isotropy identity component
/// composed from elliptic factors (SO(2) or U(k) per frequency group) and the
/// nilpotent/zero part. Names are confirmed against the null-space oracle;
/// disagreement yields "unclassified" with the numeric dimension. Throws
/// UnsupportedCase when the oracle is out of reach (m > 12) and the
/// signature lies outside the closed-form families.
OrbitDescriptor orbit_dimension(const InvariantSignature& sig, int m);

/// dim {S symmetric : [J S, J G] = 0}.
int isotropy_dimension_numeric(const Matrix& g, double tol = kRankTol);

/// Closed-form isotropy dimension from the factor list, without the oracle.
int isotropy_dimension_formula(const InvariantSignature& sig, int m, const std::vector<int>& multiplicities);

/// The generic orbit dimension 2 m^2.
inline int generic_orbit_dimension(int m) { return 2 * m * m; }

/// (p, q', omega^2) for q' = q, q-1, ..., 0.
std::vector<InvariantSignature> closure_strata(const InvariantSignature& sig);

struct ZeroMomentumStratum {
  int rank;
  std::string normal_form;
};

struct SpatialReductionReport {
  int n = 0;
  int reduced_dim = 0;        // 6n - 10
  int cone_link_dim = 0;      // l = 2n - 5
  int planar_codim = 0;       // l + 1 = 2(n - 2)
  int smooth_factor_dim = 0;  // s = 4n - 6
  std::string cone_link;      // "RP^l"
  std::string local_model;    // "Cone(RP^l) x R^s"
  std::vector<ZeroMomentumStratum> zero_momentum_strata;
  std::string rotation_cover;
};

/// Throws InvalidInput for n < 3.
SpatialReductionReport spatial_reduction_report(int n);

struct TableRow {
  std::string p_label;  // "2 (nondeg.)" etc.
  int q = 0;
  std::string isotropy;
  int dimension = 0;
  int d = 0;
  OrbitDescriptor orbit;
};

/// Catalog rows for n = 3 (all nonzero PSD types) and n = 4 (d <= 3).
/// Throws InvalidInput for other n.
std::vector<TableRow> catalog_table(int n);

/// Tab-separated rendering, UTF-8, newline terminated; stable byte for byte.
std::string render_table(int n);

}  // namespace galilax
