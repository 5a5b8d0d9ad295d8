#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "galilax/errors.hpp"

namespace galilax::cli {

using nlohmann::json;

namespace {

Matrix read_rows(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) throw InvalidInput(std::string(what) + " must be a non-empty list of rows");
  const std::size_t cols = rows.front().size();
  Matrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols)
      throw InvalidInput(std::string(what) + " rows must all have the same length");
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j].get<double>();
  }
  return out;
}

Potential read_potential(const json& p) {
  const std::string kind = p.value("kind", "newtonian");
  const double soft = p.value("softening", 0.0);
  if (kind == "newtonian") return Potential::newtonian(p.value("G", 1.0), soft);
  if (kind == "homogeneous") return Potential::homogeneous(p.at("exponent").get<double>(), p.value("coupling", 1.0), soft);
  if (kind == "none") return Potential::none();
  throw InvalidInput("unknown potential kind '" + kind + "'");
}

IntegratorConfig read_integrator(const json& j) {
  IntegratorConfig c;
  const std::string method = j.value("method", "rk45");
  if (method == "rk45")
    c.method = IntegratorConfig::Method::rk45_adaptive;
  else if (method == "rk4")
    c.method = IntegratorConfig::Method::rk4_fixed;
  else
    throw InvalidInput("unknown integrator method '" + method + "'");
  c.step = j.value("step", c.step);
  c.rel_tol = j.value("rel_tol", c.rel_tol);
  c.abs_tol = j.value("abs_tol", c.abs_tol);
  c.min_step = j.value("min_step", c.min_step);
  c.max_steps = j.value("max_steps", c.max_steps);
  c.output_interval = j.value("output_interval", c.output_interval);
  c.validate();
  return c;
}

}  // namespace

CenteredState RunConfig::initial_state() const {
  if (z) return CenteredState(*z);
  if (!state) throw InvalidInput("configuration has neither positions/momenta nor z");
  return center(system, *state, build_jacobi_basis(system, normalized));
}

SimulationMode parse_mode(const std::string& s) {
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "z") return SimulationMode::z;
  if (lower == "k") return SimulationMode::k;
  if (lower == "both") return SimulationMode::both;
  throw InvalidInput("mode must be Z, K or both");
}

std::string mode_name(SimulationMode m) {
  switch (m) {
    case SimulationMode::z: return "Z";
    case SimulationMode::k: return "K";
    case SimulationMode::both: return "both";
  }
  return "?";
}

RunConfig parse_run_config(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunConfig c;
    const auto masses = j.at("masses").get<std::vector<double>>();
    const int d = j.at("dimension").get<int>();
    c.system = MassSystem(masses, d);
    if (j.contains("potential")) c.potential = read_potential(j.at("potential"));
    c.normalized = j.value("normalized", true);
    if (j.contains("positions") || j.contains("momenta")) {
      // One row per body in the file; columns are bodies internally.
      const Matrix q = read_rows(j.at("positions"), "positions").transpose();
      const Matrix p = read_rows(j.at("momenta"), "momenta").transpose();
      if (q.cols() != c.system.bodies() || q.rows() != d || p.cols() != q.cols() || p.rows() != q.rows())
        throw InvalidInput("positions and momenta need one row of length dimension per body");
      c.state = PhaseState{q, p};
    }
    if (j.contains("z")) {
      Matrix z = read_rows(j.at("z"), "z");
      if (z.rows() != d || z.cols() != 2 * c.system.reduced_size())
        throw InvalidInput("z must have dimension rows and 2(n-1) columns");
      c.z = std::move(z);
    }
    if (j.contains("integrator")) c.integrator = read_integrator(j.at("integrator"));
    c.t_end = j.value("t_end", 0.0);
    if (!(c.t_end >= 0.0)) throw InvalidInput("t_end must be non-negative");
    if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
    return c;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("configuration: ") + e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read configuration file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace galilax::cli
