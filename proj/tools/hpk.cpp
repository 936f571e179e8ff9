// hpk: batch front end for the orthogonal-polynomial engine.
//
//   hpk <command> [--A x --B1 x --B2 x --t1 x --t2 x | --config file.json]
//       --nmax N --bits B --out path --format json|csv [--jobs J]

#include <CLI11.hpp>
#include <iostream>

#include "hpk/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hankel determinants and ladder identities for jump-discontinuous Gaussian weights"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> A, B1, B2, t1, t2, s, mode, out, format;
  std::optional<int> nmax, guard, jobs;
  std::optional<long> bits;
  std::vector<std::string> grid;
  std::vector<int> ns;
  bool no_limits = false;

  for (const char* name : {"tabulate", "verify", "asymptotics", "series", "oracle"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    sub->add_option("--A", A);
    sub->add_option("--B1", B1);
    sub->add_option("--B2", B2);
    sub->add_option("--t1", t1);
    sub->add_option("--t2", t2);
    sub->add_option("--nmax", nmax, "largest n");
    sub->add_option("--bits", bits, "target precision in bits (default max(256, 10*nmax) or $HPK_BITS)");
    sub->add_option("--guard", guard, "guard digits for tolerances");
    sub->add_option("--out", out, "output path (default stdout)");
    sub->add_option("--format", format, "json or csv");
    sub->add_option("--jobs", jobs, "worker threads (default: logical cores)");
    sub->add_option("--t-grid", grid, "grid points: t1 or t1:t2");
    sub->add_option("--ns", ns, "n values (verify, asymptotics)")->delimiter(',');
    sub->add_option("--s", s, "double-scaling variable (asymptotics)");
    sub->add_option("--mode", mode, "fixed_t, double_scaling or both (asymptotics)");
    sub->add_flag("--no-limits", no_limits, "skip the large-n trend checks in verify");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  hpk::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = hpk::load_config_file(config_path);
    cfg.command = hpk::parse_command(app.get_subcommands().front()->get_name());
    if (A) cfg.A = *A;
    if (B1) cfg.B1 = *B1;
    if (B2) cfg.B2 = *B2;
    if (t1) cfg.t1 = *t1;
    if (t2) cfg.t2 = *t2;
    if (nmax) cfg.n_max = *nmax;
    if (bits) cfg.bits = *bits;
    if (guard) cfg.guard_digits = *guard;
    if (out) cfg.output_path = *out;
    if (format) cfg.format = hpk::parse_format(*format);
    if (jobs) cfg.jobs = *jobs;
    if (s) cfg.s = *s;
    if (mode) cfg.mode = *mode;
    if (!ns.empty()) cfg.ns = ns;
    if (no_limits) cfg.limits = false;
    if (!grid.empty()) {
      cfg.t_grid.clear();
      for (const auto& g : grid) {
        auto colon = g.find(':');
        if (colon == std::string::npos) cfg.t_grid.push_back({g, std::nullopt});
        else cfg.t_grid.push_back({g.substr(0, colon), g.substr(colon + 1)});
      }
    }
  } catch (const hpk::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
  return hpk::run(cfg);
}
