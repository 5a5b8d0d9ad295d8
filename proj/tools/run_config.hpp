#pragma once

// JSON run configuration for the command-line tool.
//
// {
//   "masses": [1, 1], "dimension": 2,
//   "potential": {"kind": "newtonian", "G": 1, "softening": 0},
//   "positions": [[-0.5, 0], [0.5, 0]], "momenta": [[0, -0.7], [0, 0.7]],
//   "normalized": true,
//   "integrator": {"method": "rk45", "step": 1e-3, "rel_tol": 1e-10, "abs_tol": 1e-10,
//                  "max_steps": 50000000, "output_interval": 0.1},
//   "t_end": 10, "mode": "Z"
// }
//
// A state may instead be given directly as "z": d rows of 2(n-1) entries
// (Jacobi coordinates X then momenta Y); positions/momenta then are optional.

#include <optional>
#include <string>

#include "galilax/dynamics.hpp"

namespace galilax::cli {

struct RunConfig {
  MassSystem system{{1.0, 1.0}, 1};
  Potential potential = Potential::newtonian();
  bool normalized = true;
  std::optional<PhaseState> state;
  std::optional<Matrix> z;
  IntegratorConfig integrator;
  double t_end = 0.0;
  SimulationMode mode = SimulationMode::z;

  ReducedProblem problem() const { return ReducedProblem(system, potential, normalized); }
  /// Centered state from "z" or from positions/momenta. Throws InvalidInput if neither was given.
  CenteredState initial_state() const;
};

/// Throws InvalidInput on malformed files or values.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// "Z", "K" or "both" (case-insensitive).
SimulationMode parse_mode(const std::string& s);
std::string mode_name(SimulationMode m);

}  // namespace galilax::cli
