#pragma once

// Seeded random inputs for property checks and the verify suites.

#include <cstdint>
#include <random>
#include <vector>

#include "galilax/configuration.hpp"
#include "galilax/dynamics.hpp"
#include "galilax/linalg.hpp"

namespace galilax {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double normal() { return gauss_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  Matrix gaussian(Eigen::Index rows, Eigen::Index cols);
  /// Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix).
  Matrix orthogonal(int n);
  /// Product of symplectic shears and a block-diagonal factor, kept well conditioned.
  Matrix symplectic(int m);

  void note_rejection() { ++rejections_; }
  long rejections() const { return rejections_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
  long rejections_ = 0;
};

/// Gaussian d x 2m matrix.
CenteredState random_state(Sampler& rng, int d, int m);

/// Masses in [0.5, 2], Gaussian positions and momenta; resamples (counting
/// rejections) until every pair is at least min_separation apart.
PhaseState random_collision_free(Sampler& rng, const MassSystem& sys, double min_separation = 0.3);

struct PlantedXu {
  CenteredState z;
  int p = 0;
  int q = 0;
  std::vector<double> sigma;  // descending, pairwise separated
};

/// Z = Q D T^{-1} with random orthogonal Q, symplectic T and prescribed (p, q).
PlantedXu planted_xu(Sampler& rng, int d, int m, int p, int q);

}  // namespace galilax
