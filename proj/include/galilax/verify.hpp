#pragma once

// Seeded verification suites shared by the CLI and the test binaries.

#include <cstdint>
#include <string>
#include <vector>

namespace galilax {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  double max_residual = 0.0;  // suite-specific, already scaled to its threshold's units
  double threshold = 0.0;
  long rejections = 0;
  std::string detail;  // first failure, if any

  bool pass() const { return failures == 0; }
};

/// trace L^k vs trace K^k, k = 1..6, over random Z with (d, n) in {2,3,4} x {2..5}.
SuiteResult verify_spectral(std::uint64_t seed, int trials);
/// Casimir closed form tr K^{2l} = 2 (-1)^l sum (omega_j^2)^{2l}, and their
/// conservation, measured against ||K||^{2l}, along short Lax-flow segments
/// of random 3-body problems.
SuiteResult verify_casimir(std::uint64_t seed, int trials);
/// Lax form vs block form of Gdot on random admissible states with M~ = I.
SuiteResult verify_ac_equivalence(std::uint64_t seed, int trials);
/// Plant-and-recover for the Xu factorization (d <= 4, n <= 5).
SuiteResult verify_xu_roundtrip(std::uint64_t seed, int trials);

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();
/// Throws InvalidInput for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int trials);

}  // namespace galilax
