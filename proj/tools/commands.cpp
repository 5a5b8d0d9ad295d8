#include "commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "galilax/errors.hpp"
#include "galilax/normal_form.hpp"
#include "galilax/orbit_catalog.hpp"
#include "galilax/verify.hpp"
#include "run_config.hpp"

namespace galilax::cli {

namespace {

// %.17g round-trips doubles and is locale independent for our purposes.
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string signature_label(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

void write_matrix_row(std::ostream& os, double t, const Matrix& a) {
  os << num(t);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) os << '\t' << num(a(i, j));
  os << '\n';
}

void write_matrix_header(std::ostream& os, const char* prefix, Eigen::Index rows, Eigen::Index cols) {
  os << "t";
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) os << '\t' << prefix << i << '_' << j;
  os << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path.string());
  return f;
}

}  // namespace

LogLevel log_level_from_env() {
  const char* v = std::getenv("GALILAX_LOG");
  if (!v) return LogLevel::warn;
  const std::string s(v);
  if (s == "error" || s == "0") return LogLevel::error;
  if (s == "info" || s == "2") return LogLevel::info;
  if (s == "debug" || s == "3") return LogLevel::debug;
  return LogLevel::warn;
}

void Logger::log(LogLevel level, const std::string& msg) const {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (static_cast<int>(level) <= static_cast<int>(level_))
    *sink_ << "[galilax " << names[static_cast<int>(level)] << "] " << msg << '\n';
}

int cmd_simulate(const Options& o, std::ostream& out, const Logger& log) {
  RunConfig cfg = load_run_config(o.config);
  if (o.mode) cfg.mode = parse_mode(*o.mode);
  const ReducedProblem problem = cfg.problem();
  const CenteredState z0 = cfg.initial_state();
  log.info("simulating n = " + std::to_string(problem.system.bodies()) + ", d = " +
           std::to_string(problem.system.dimension()) + ", mode " + mode_name(cfg.mode) + ", t_end = " +
           short_num(cfg.t_end) + ", potential " + problem.potential.describe());

  const Trajectory traj = simulate(problem, z0, cfg.t_end, cfg.integrator, cfg.mode);

  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
  std::filesystem::create_directories(dir);
  {
    std::ofstream f = open_output(dir / "trajectory.tsv");
    const Sample& s0 = traj.samples.front();
    if (s0.z)
      write_matrix_header(f, "z", s0.z->z().rows(), s0.z->z().cols());
    else
      write_matrix_header(f, "k", s0.k->rows(), s0.k->cols());
    for (const auto& s : traj.samples) write_matrix_row(f, s.t, s.z ? s.z->z() : *s.k);
  }
  const int m = problem.half_size();
  const bool both = cfg.mode == SimulationMode::both;
  {
    std::ofstream f = open_output(dir / "diagnostics.tsv");
    f << "t\tenergy\tL_norm";
    for (int l = 1; l <= m; ++l) f << "\ttrK" << 2 * l;
    if (both) f << "\tlax_residual";
    f << '\n';
    for (const auto& s : traj.samples) {
      f << num(s.t) << '\t' << num(s.diagnostics.energy) << '\t' << num(s.diagnostics.angular_momentum_norm);
      for (double c : s.diagnostics.casimirs) f << '\t' << num(c);
      if (both) f << '\t' << num(s.diagnostics.lax_residual.value_or(0.0));
      f << '\n';
    }
  }

  auto energy = [](const Sample& s) { return s.diagnostics.energy; };
  auto lnorm = [](const Sample& s) { return s.diagnostics.angular_momentum_norm; };
  out << "samples " << traj.samples.size() << "\n";
  out << "energy drift " << short_num(traj.max_relative_drift(energy)) << "\n";
  out << "|L| drift " << short_num(traj.max_relative_drift(lnorm, 1e-300)) << "\n";
  if (both) {
    double worst = 0.0;
    for (const auto& s : traj.samples) worst = std::max(worst, s.diagnostics.lax_residual.value_or(0.0));
    out << "max lax residual " << short_num(worst) << "\n";
  }
  out << "wrote " << (dir / "trajectory.tsv").string() << " and " << (dir / "diagnostics.tsv").string() << "\n";
  return kOk;
}

int cmd_invariants(const Options& o, std::ostream& out, const Logger& log) {
  const RunConfig cfg = load_run_config(o.config);
  const CenteredState z = cfg.initial_state();
  log.debug("state is " + std::to_string(z.dimension()) + " x " + std::to_string(2 * z.half_size()));
  const SignatureReport rep = invariants_from_z(z, o.tol);
  const InvariantSignature& s = rep.signature;
  out << "(p,q) = " << signature_label(s.p, s.q) << "\n";
  out << "omega^2 =";
  for (double w : s.omega_sq) out << ' ' << num(w);
  out << "\n";
  out << "motion rank = " << s.motion_rank() << "\n";
  out << "L rank margin: kept " << short_num(rep.l_margin.smallest_kept) << ", dropped "
      << short_num(rep.l_margin.largest_dropped) << "\n";
  out << "Z rank margin: kept " << short_num(rep.z_margin.smallest_kept) << ", dropped "
      << short_num(rep.z_margin.largest_dropped) << "\n";
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out, const Logger&) {
  InvariantSignature sig{o.p, o.q, o.omega, o.m};
  std::sort(sig.omega_sq.begin(), sig.omega_sq.end(), std::greater<>());
  const OrbitDescriptor orbit = orbit_dimension(sig, o.m);
  out << "signature " << signature_label(sig.p, sig.q) << ", m = " << o.m << "\n";
  out << "omega^2 =";
  for (double w : orbit.signature.omega_sq) out << ' ' << short_num(w);
  out << "\n";
  out << "dimension " << orbit.dimension << (orbit.generic ? " (generic)" : "") << "\n";
  out << "isotropy " << orbit.isotropy.name << " (dim " << orbit.isotropy_dim << ")\n";
  out << "motion dimension d = " << orbit.motion_dim << "\n";
  out << "closed " << (orbit.closed ? "yes" : "no") << "\n";
  out << "closure strata";
  for (const auto& s : closure_strata(orbit.signature)) out << ' ' << signature_label(s.p, s.q);
  out << "\n";
  return kOk;
}

int cmd_tables(const Options& o, std::ostream& out, const Logger& log) {
  if (o.spatial) {
    const SpatialReductionReport r = spatial_reduction_report(o.n);
    out << "n " << r.n << "\n";
    out << "reduced dimension " << r.reduced_dim << "\n";
    out << "planar stratum codimension " << r.planar_codim << "\n";
    out << "local model " << r.local_model << "\n";
    out << "smooth factor dimension " << r.smooth_factor_dim << "\n";
    out << "zero angular momentum strata";
    for (const auto& s : r.zero_momentum_strata) out << " [rank " << s.rank << ": " << s.normal_form << "]";
    out << "\n";
    out << "SO(3) quotient: " << r.rotation_cover << "\n";
    return kOk;
  }
  const std::string table = render_table(o.n);
  out << table;
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    const auto path = std::filesystem::path(o.out) / ("table_n" + std::to_string(o.n) + ".txt");
    std::ofstream f = open_output(path);
    f << table;
    log.info("wrote " + path.string());
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, const Logger& log) {
  std::vector<std::string> suites;
  if (o.suite.empty() || o.suite == "all")
    suites = suite_names();
  else
    suites = {o.suite};
  bool ok = true;
  for (const auto& name : suites) {
    log.info("running " + name + " with seed " + std::to_string(o.seed));
    const SuiteResult r = run_suite(name, o.seed, o.trials);
    out << r.name << ": " << (r.pass() ? "PASS" : "FAIL") << " (trials " << r.trials << ", failures " << r.failures
        << ", max residual " << short_num(r.max_residual) << ", threshold " << short_num(r.threshold)
        << ", rejections " << r.rejections << ")\n";
    if (!r.pass()) {
      out << "  first failure: " << r.detail << "\n";
      ok = false;
    }
  }
  return ok ? kOk : kVerifyFailed;
}

int run_guarded(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const SingularityError& e) {
    err << "integration failure: " << e.what() << "\n";
    return kIntegrationFailure;
  } catch (const IntegrationFailure& e) {
    err << "integration failure: " << e.what() << "\n";
    return kIntegrationFailure;
  } catch (const ConsistencyError& e) {
    err << "integration failure: " << e.what() << "\n";
    return kIntegrationFailure;
  } catch (const UnsupportedCase& e) {
    err << "unsupported case: " << e.what() << "\n";
    return kInputError;
  } catch (const DecompositionFailure& e) {
    err << "decomposition failure: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace galilax::cli
