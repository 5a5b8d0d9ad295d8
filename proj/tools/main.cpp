#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

using namespace galilax::cli;

int main(int argc, char** argv) {
  CLI::App app{"galilax: reduced n-body dynamics, Lax form, invariants and coadjoint orbits"};
  app.require_subcommand(1);
  Options o;
  std::string mode;
  const Logger log(log_level_from_env(), std::cerr);

  auto* sim = app.add_subcommand("simulate", "integrate a configuration and write trajectory/diagnostics tables");
  sim->add_option("--config", o.config, "JSON run configuration")->required();
  sim->add_option("--out", o.out, "output directory (default: current directory)");
  sim->add_option("--mode", mode, "Z, K or both (overrides the file)")->check(CLI::IsMember({"Z", "K", "both", "z", "k"}));

  auto* inv = app.add_subcommand("invariants", "numerical and spectral invariants of a state");
  inv->add_option("--config", o.config, "JSON configuration holding the state")->required();
  inv->add_option("--tol", o.tol, "relative rank threshold");

  auto* cls = app.add_subcommand("classify", "coadjoint orbit of a normal form");
  cls->add_option("--m", o.m, "half-size n - 1")->required();
  cls->add_option("--p", o.p, "number of frequency pairs")->required();
  cls->add_option("--q", o.q, "number of nilpotent blocks")->required();
  cls->add_option("--omega", o.omega, "spectral invariants omega_j^2");

  auto* tab = app.add_subcommand("tables", "orbit catalog for n = 3 or 4, or spatial reduction data");
  tab->add_option("n", o.n, "number of bodies")->required();
  tab->add_option("--out", o.out, "also write table_n<N>.txt into this directory");
  tab->add_flag("--spatial", o.spatial, "print the spatial reduced-space singularity report instead");

  auto* ver = app.add_subcommand("verify", "seeded verification suites");
  ver->add_option("suite", o.suite, "spectral, casimir, ac-equivalence, xu-roundtrip or all");
  ver->add_option("--seed", o.seed, "random seed");
  ver->add_option("--trials", o.trials, "number of trials")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (!mode.empty()) o.mode = mode;

  return run_guarded(
      [&]() {
        if (*sim) return cmd_simulate(o, std::cout, log);
        if (*inv) return cmd_invariants(o, std::cout, log);
        if (*cls) return cmd_classify(o, std::cout, log);
        if (*tab) return cmd_tables(o, std::cout, log);
        return cmd_verify(o, std::cout, log);
      },
      std::cerr);
}
