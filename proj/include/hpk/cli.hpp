#pragma once

// Batch front end: run configuration, the five commands, and report rendering.
// tools/hpk.cpp only parses flags into a RunConfig and calls run().

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hpk/asymptotics.hpp"
#include "hpk/identities.hpp"
#include "hpk/parallel.hpp"

namespace hpk {

enum class Command { kTabulate, kVerify, kAsymptotics, kSeries, kOracle };
enum class OutputFormat { kJson, kCsv };

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const char* to_string(Command c) {
  switch (c) {
    case Command::kTabulate: return "tabulate";
    case Command::kVerify: return "verify";
    case Command::kAsymptotics: return "asymptotics";
    case Command::kSeries: return "series";
    case Command::kOracle: return "oracle";
  }
  return "?";
}

inline Command parse_command(const std::string& s) {
  for (Command c : {Command::kTabulate, Command::kVerify, Command::kAsymptotics, Command::kSeries, Command::kOracle}) {
    if (s == to_string(c)) return c;
  }
  throw ConfigError("unknown command '" + s + "'");
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::kJson;
  if (s == "csv") return OutputFormat::kCsv;
  throw ConfigError("unknown format '" + s + "' (json or csv)");
}

/// One evaluation point: t1, and t2 for two-jump weights.
struct GridPoint {
  std::string t1;
  std::optional<std::string> t2;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Reals are kept as decimal text so that a config round-trips exactly and is read at the run's precision.
struct RunConfig {
  Command command = Command::kVerify;
  std::string A = "1", B1 = "0", B2 = "0", t1 = "0", t2 = "0";
  int n_max = 10;
  std::vector<GridPoint> t_grid;  // empty: the single point (t1, t2)
  long bits = 0;                  // 0: policy default
  int guard_digits = 12;
  std::string output_path;        // empty: stdout
  OutputFormat format = OutputFormat::kJson;
  int jobs = 0;                   // 0: logical cores
  std::vector<int> ns;            // verify: n values (default 1..n_max); asymptotics: n list
  std::string s = "6";            // asymptotics: double-scaling variable
  std::string mode = "both";      // asymptotics: fixed_t | double_scaling | both
  bool limits = true;             // verify: include the large-n trend checks

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// max(256, 10 n_max), unless HPK_BITS is set.
inline long default_bits(int n_max) {
  if (const char* env = std::getenv("HPK_BITS"); env && *env) {
    try {
      std::size_t used = 0;
      long b = std::stol(env, &used);
      if (used == std::string(env).size()) return b;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("HPK_BITS is not an integer: '") + env + "'");
  }
  return std::max(256L, 10L * n_max);
}

inline long effective_bits(const RunConfig& c) { return c.bits > 0 ? c.bits : default_bits(c.n_max); }
inline int effective_jobs(const RunConfig& c) { return c.jobs > 0 ? c.jobs : default_jobs(); }

inline PrecisionContext context_of(const RunConfig& c) { return {effective_bits(c), c.guard_digits}; }

inline Real parse_real(const std::string& text, long bits, const char* what) {
  try {
    return Real(text, bits);
  } catch (const std::invalid_argument&) {
    throw ConfigError(std::string(what) + ": not a decimal number: '" + text + "'");
  }
}

/// The weight at grid point p (or at the configured (t1, t2) when p is null).
inline WeightSpec weight_of(const RunConfig& c, const GridPoint* p = nullptr) {
  long bits = effective_bits(c);
  WeightSpec w;
  w.A = parse_real(c.A, bits, "A");
  w.B1 = parse_real(c.B1, bits, "B1");
  w.B2 = parse_real(c.B2, bits, "B2");
  w.t1 = parse_real(p ? p->t1 : c.t1, bits, "t1");
  w.t2 = parse_real(p && p->t2 ? *p->t2 : c.t2, bits, "t2");
  return w;
}

inline std::vector<GridPoint> grid_of(const RunConfig& c) {
  if (!c.t_grid.empty()) return c.t_grid;
  bool two_jump = !parse_real(c.B2, 64, "B2").is_zero();
  return {{c.t1, two_jump ? std::optional<std::string>(c.t2) : std::nullopt}};
}

/// Rejects anything run() could not execute; the message names the violated constraint.
inline void validate(const RunConfig& c) {
  if (c.n_max < 0) throw ConfigError("n_max must be >= 0");
  if (c.guard_digits <= 0) throw ConfigError("guard_digits must be positive");
  if (c.jobs < 0) throw ConfigError("jobs must be >= 0");
  try {
    validate(context_of(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (int n : c.ns) {
    if (n < 1) throw ConfigError("ns entries must be >= 1");
  }
  if (c.command == Command::kAsymptotics && c.mode != "fixed_t" && c.mode != "double_scaling" && c.mode != "both") {
    throw ConfigError("mode must be fixed_t, double_scaling or both");
  }
  for (const GridPoint& p : grid_of(c)) {
    try {
      validate(weight_of(c, &p));
    } catch (const InvalidWeight& e) {
      throw ConfigError(e.what());
    }
  }
  parse_real(c.s, effective_bits(c), "s");
}

using Json = nlohmann::ordered_json;

inline Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["A"] = c.A;
  j["B1"] = c.B1;
  j["B2"] = c.B2;
  j["t1"] = c.t1;
  j["t2"] = c.t2;
  j["n_max"] = c.n_max;
  Json grid = Json::array();
  for (const auto& p : c.t_grid) {
    Json e = Json::array({p.t1});
    if (p.t2) e.push_back(*p.t2);
    grid.push_back(e);
  }
  j["t_grid"] = grid;
  j["bits"] = c.bits;
  j["guard_digits"] = c.guard_digits;
  j["out"] = c.output_path;
  j["format"] = c.format == OutputFormat::kJson ? "json" : "csv";
  j["jobs"] = c.jobs;
  j["ns"] = c.ns;
  j["s"] = c.s;
  j["mode"] = c.mode;
  j["limits"] = c.limits;
  return j;
}

namespace detail {

inline std::string real_text(const Json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    // JSON numbers are binary doubles; keep the shortest text that reads back the same.
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw ConfigError(std::string(key) + ": expected a number or decimal string");
}

}  // namespace detail

/// Applies the keys present in j on top of c. Unknown keys are an error.
inline void apply_json(RunConfig& c, const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "command") c.command = parse_command(v.get<std::string>());
      else if (key == "A") c.A = detail::real_text(v, "A");
      else if (key == "B1") c.B1 = detail::real_text(v, "B1");
      else if (key == "B2") c.B2 = detail::real_text(v, "B2");
      else if (key == "t1") c.t1 = detail::real_text(v, "t1");
      else if (key == "t2") c.t2 = detail::real_text(v, "t2");
      else if (key == "n_max") c.n_max = v.get<int>();
      else if (key == "t_grid") {
        c.t_grid.clear();
        for (const auto& e : v) {
          if (e.is_array()) {
            if (e.empty() || e.size() > 2) throw ConfigError("t_grid entries must be [t1] or [t1, t2]");
            GridPoint p{detail::real_text(e[0], "t_grid"), std::nullopt};
            if (e.size() == 2) p.t2 = detail::real_text(e[1], "t_grid");
            c.t_grid.push_back(p);
          } else {
            c.t_grid.push_back({detail::real_text(e, "t_grid"), std::nullopt});
          }
        }
      } else if (key == "bits") c.bits = v.get<long>();
      else if (key == "guard_digits") c.guard_digits = v.get<int>();
      else if (key == "out") c.output_path = v.get<std::string>();
      else if (key == "format") c.format = parse_format(v.get<std::string>());
      else if (key == "jobs") c.jobs = v.get<int>();
      else if (key == "ns") c.ns = v.get<std::vector<int>>();
      else if (key == "s") c.s = detail::real_text(v, "s");
      else if (key == "mode") c.mode = v.get<std::string>();
      else if (key == "limits") c.limits = v.get<bool>();
      else throw ConfigError("unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

inline RunConfig config_from_json(const Json& j) {
  RunConfig c;
  apply_json(c, j);
  return c;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return config_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

/// A rendered report: a header and rows of text cells (identical payload for JSON and CSV),
/// plus free-form JSON sections and the pass/fail outcome.
struct Report {
  std::string kind;  // "rows" or "reports"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Json extra = Json::object();
  int checks = 0;
  int failures = 0;
  std::vector<std::string> failed;
  std::vector<std::string> notes;  // lines echoed to stderr (e.g. series verdicts)

  std::string summary() const {
    if (checks == 0) return "NO CHECKS";
    if (failures == 0) return "PASS " + std::to_string(checks) + "/" + std::to_string(checks);
    return "FAIL " + std::to_string(failures) + "/" + std::to_string(checks);
  }
};

namespace detail {

inline std::string cell(const Real& x, int digits) { return x.to_string(digits); }

inline void add_check(Report& rep, bool ok, const std::string& what) {
  ++rep.checks;
  if (!ok) {
    ++rep.failures;
    rep.failed.push_back(what);
  }
}

inline std::string grid_text(const GridPoint& p) { return p.t2 ? p.t1 + "," + *p.t2 : p.t1; }

}  // namespace detail

/// Per-n recurrence and ladder data at every grid point.
inline Report run_tabulate(const RunConfig& c) {
  const PrecisionContext ctx = context_of(c);
  const int digits = ctx.render_digits();
  auto grid = grid_of(c);
  Report rep;
  rep.kind = "rows";
  rep.columns = {"t1", "t2", "n", "alpha", "beta", "h", "R1", "r1", "R2", "r2", "sigma", "logD"};
  std::vector<std::vector<std::vector<std::string>>> per_point(grid.size());
  parallel_for(static_cast<int>(grid.size()), effective_jobs(c), [&](int i) {
    WeightSpec w = weight_of(c, &grid[i]);
    OrthoSystem sys = build_system(w, c.n_max, ctx);
    AuxDouble aux = aux_double_from_definitions(sys);
    std::string t2 = w.single_jump() ? "" : grid[i].t2.value_or(c.t2);
    for (int n = 0; n <= c.n_max; ++n) {
      per_point[i].push_back({grid[i].t1, t2, std::to_string(n), detail::cell(sys.alpha[n], digits),
                              detail::cell(sys.beta[n], digits), detail::cell(sys.h[n], digits),
                              detail::cell(aux.R1[n], digits), detail::cell(aux.r1[n], digits),
                              detail::cell(aux.R2[n], digits), detail::cell(aux.r2[n], digits),
                              detail::cell(aux.sigma[n], digits), detail::cell(sys.logD[n], digits)});
    }
  });
  for (auto& block : per_point) {
    for (auto& row : block) rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// The identity suite at every grid point.
inline Report run_verify(const RunConfig& c) {
  const PrecisionContext ctx = context_of(c);
  auto grid = grid_of(c);
  SuiteOptions opts;
  opts.ns.clear();
  if (c.ns.empty()) {
    for (int n = 1; n <= c.n_max; ++n) opts.ns.push_back(n);
  } else {
    opts.ns = c.ns;
  }
  opts.limits = c.limits;
  opts.scaled_pde = c.limits;
  Report rep;
  rep.kind = "reports";
  rep.columns = {"point", "id", "label", "n", "t", "residual", "tolerance", "class", "status", "reason"};
  std::vector<std::vector<IdentityReport>> results(grid.size());
  parallel_for(static_cast<int>(grid.size()), effective_jobs(c),
               [&](int i) { results[i] = run_suite(weight_of(c, &grid[i]), ctx, opts); });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (const auto& r : results[i]) {
      rep.rows.push_back({detail::grid_text(grid[i]), to_string(r.id), r.label, std::to_string(r.n),
                          detail::join_reals(r.t, 17), r.residual.to_string(6), r.tolerance.to_string(6),
                          to_string(r.cls), to_string(r.status), r.reason});
      detail::add_check(rep, r.pass(),
                        std::string(to_string(r.id)) + " " + r.label + " n=" + std::to_string(r.n) + " at " +
                            detail::grid_text(grid[i]));
    }
  }
  return rep;
}

/// Fixed-t large-n and double-scaling comparisons.
inline Report run_asymptotics(const RunConfig& c) {
  const PrecisionContext ctx = context_of(c);
  const int digits = 12;
  std::vector<int> ns = c.ns.empty() ? std::vector<int>{64, 256, 1024} : c.ns;
  Report rep;
  rep.kind = "rows";
  rep.columns = {"kind", "point", "n", "engine", "approx1", "approx2", "approx3", "err1", "err2", "err3"};
  Json fits = Json::array();
  if (c.mode == "fixed_t" || c.mode == "both") {
    for (const GridPoint& p : grid_of(c)) {
      WeightSpec w = weight_of(c, &p);
      LargeNReport L = numeric_large_n_fixed_t(w, ns, w.t1, ctx);
      for (const auto& r : L.records) {
        rep.rows.push_back({"R_fixed_t", p.t1, std::to_string(r.n), r.R.to_string(digits), r.series.to_string(digits),
                            "", "", r.err.to_string(6), "", ""});
      }
      bool ok = std::abs(L.exponent + 3) <= 0.5;
      fits.push_back({{"kind", "R_fixed_t"}, {"point", p.t1}, {"exponent", L.exponent}, {"expected", -3.0},
                      {"status", ok ? "PASS" : "FAIL"}});
      detail::add_check(rep, ok, "fixed-t decay exponent at t=" + p.t1);
    }
  }
  if (c.mode == "double_scaling" || c.mode == "both") {
    WeightSpec w = weight_of(c);
    Real s = parse_real(c.s, ctx.bits, "s");
    ScalingReport D = numeric_double_scaling(w, ns, s, ctx, effective_jobs(c));
    for (const auto& r : D.records) {
      auto push = [&](const char* kind, const Real& engine, const std::array<Real, 3>& ap,
                      const std::array<Real, 3>& er) {
        rep.rows.push_back({kind, c.s, std::to_string(r.n), engine.to_string(digits), ap[0].to_string(digits),
                            ap[1].to_string(digits), ap[2].to_string(digits), er[0].to_string(6), er[1].to_string(6),
                            er[2].to_string(6)});
      };
      push("R_scaling", r.R, r.R_approx, r.R_err);
      push("r_scaling", r.r, r.r_approx, r.r_err);
      push("sigma_scaling", r.sigma, r.sigma_approx, r.sigma_err);
    }
    double expected = -7.0 / 6.0;
    bool ok = std::abs(D.R_exponent - expected) <= 0.25 * std::abs(expected);
    fits.push_back({{"kind", "R_scaling"}, {"point", c.s}, {"exponent", D.R_exponent}, {"expected", expected},
                    {"status", ok ? "PASS" : "FAIL"}});
    fits.push_back({{"kind", "r_scaling"}, {"point", c.s}, {"exponent", D.r_exponent}});
    fits.push_back({{"kind", "sigma_scaling"}, {"point", c.s}, {"exponent", D.sigma_exponent}});
    detail::add_check(rep, ok, "double-scaling R_n decay exponent at s=" + c.s);
    const auto& last = D.records.back();
    bool lead_ok = last.lead_rel <= Real(1e-2);
    detail::add_check(rep, lead_ok, "n^{1/6} R_n vs v1(s) at n=" + std::to_string(last.n));
    rep.extra["v"] = {{"v1", D.v.v1.to_string(digits)}, {"v2", D.v.v2.to_string(digits)},
                      {"v3", D.v.v3.to_string(digits)}};
  }
  rep.extra["fits"] = fits;
  return rep;
}

/// Derived series in canonical form, verdicts against the printed tables, and ODE residual checks.
inline Report run_series(const RunConfig&) {
  Report rep;
  rep.kind = "rows";
  rep.columns = {"name", "series", "verdict"};
  AlgebraicSeries ex1 = derive_large_n_series(1, 7), ex2 = derive_large_n_series(-1, 7);
  ScalingSeries sc = derive_scaling_series(13);
  std::vector<std::pair<AlgebraicSeries, GoldenTable>> items{
      {ex1, golden::ex(1)}, {ex2, golden::ex(-1)}, {sc.v1, golden::us1()}, {sc.v2, golden::vs1()}, {sc.v3, golden::ws1()}};
  for (const auto& [series, table] : items) {
    GoldenMatch m = compare_with_golden(series, table);
    rep.rows.push_back({table.name, series.to_string(), m.verdict()});
    rep.notes.push_back(m.verdict());
    for (const auto& mm : m.mismatches) rep.notes.push_back("  " + mm);
    detail::add_check(rep, m.exact(), m.verdict());
  }
  SeriesBundle b;
  b.R = ex1;
  b.v1 = sc.v1;
  b.v2 = sc.v2;
  b.v3 = sc.v3;
  for (SeriesOde ode : {SeriesOde::kSodLargeN, SeriesOde::kUS, SeriesOde::kVS, SeriesOde::kWS, SeriesOde::kP34}) {
    AlgebraicSeries res = series_ode_residual(b, ode);
    bool zero = res.is_zero_through(res.trunc() - 1);
    std::string verdict = std::string("(") + to_string(ode) + ") residual: " +
                          (zero ? "ZERO" : "NONZERO") + " through " + res.power_text(res.trunc() - 1);
    rep.rows.push_back({std::string("residual_") + to_string(ode), res.to_string(), verdict});
    rep.notes.push_back(verdict);
    detail::add_check(rep, zero, verdict);
  }
  return rep;
}

/// Engine against the determinant oracle (n <= 29) and the quadrature oracle (n <= 3).
inline Report run_oracle(const RunConfig& c) {
  const PrecisionContext ctx = context_of(c);
  const Real tol = tolerance(ctx);
  const int n_top = std::min(c.n_max, kOracleMaxN - 1);
  Report rep;
  rep.kind = "rows";
  rep.columns = {"point", "quantity", "n", "engine", "oracle", "rel_delta", "status"};
  for (const GridPoint& p : grid_of(c)) {
    WeightSpec w = weight_of(c, &p);
    OrthoSystem sys = build_system(w, n_top, ctx, BuildMethod::kCholesky);
    OracleRecurrence orc = recurrence_oracle(w, n_top, ctx);
    PrecisionScope scope(sys.working_bits);
    auto row = [&](const char* q, int n, const Real& engine, const Real& oracle) {
      Real gap = relative_gap(engine, oracle);
      bool ok = gap <= tol;
      rep.rows.push_back({detail::grid_text(p), q, std::to_string(n), engine.to_string(ctx.render_digits()),
                          oracle.to_string(ctx.render_digits()), gap.to_string(4), ok ? "PASS" : "FAIL"});
      detail::add_check(rep, ok, std::string(q) + " n=" + std::to_string(n) + " at " + detail::grid_text(p));
    };
    for (int n = 0; n <= n_top; ++n) {
      row("h", n, sys.h[n], orc.h[n]);
      row("alpha", n, sys.alpha[n], orc.alpha[n]);
      if (n > 0) row("beta", n, sys.beta[n], orc.beta[n]);
    }
    WeightSpec gauss;
    OracleRecurrence g = recurrence_oracle(gauss, std::min(2, n_top), ctx);
    for (int n = 1; n <= std::min(3, n_top + 1); ++n) {
      Real ratio = orc.D[n] / g.D[n];
      Real quad(expectation_oracle(w, n));
      Real gap = relative_gap(ratio, quad);
      bool ok = gap <= Real(1e-8);
      rep.rows.push_back({detail::grid_text(p), "D_ratio", std::to_string(n), ratio.to_string(17), quad.to_string(17),
                          gap.to_string(4), ok ? "PASS" : "FAIL"});
      detail::add_check(rep, ok, "expectation n=" + std::to_string(n) + " at " + detail::grid_text(p));
    }
  }
  return rep;
}

inline Report execute(const RunConfig& c) {
  switch (c.command) {
    case Command::kTabulate: return run_tabulate(c);
    case Command::kVerify: return run_verify(c);
    case Command::kAsymptotics: return run_asymptotics(c);
    case Command::kSeries: return run_series(c);
    case Command::kOracle: return run_oracle(c);
  }
  throw ConfigError("unknown command");
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string render(const RunConfig& c, const Report& rep) {
  if (c.format == OutputFormat::kCsv) {
    std::string out;
    for (std::size_t i = 0; i < rep.columns.size(); ++i) out += (i ? "," : "") + csv_escape(rep.columns[i]);
    out += "\n";
    for (const auto& row : rep.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(row[i]);
      out += "\n";
    }
    return out;
  }
  Json j;
  Json cfg = to_json(c);
  cfg["effective_bits"] = effective_bits(c);
  j["config"] = cfg;
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < rep.columns.size(); ++i) o[rep.columns[i]] = row[i];
    rows.push_back(o);
  }
  j[rep.kind] = rows;
  for (const auto& [k, v] : rep.extra.items()) j[k] = v;
  j["summary"] = {{"result", rep.summary()}, {"checks", rep.checks}, {"failures", rep.failed}};
  return j.dump(2) + "\n";
}

/// Writes via a temporary file in the same directory and renames it into place.
inline void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output path '" + path + "'");
    out << text;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw ConfigError("write failed for '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move output into '" + path + "': " + ec.message());
  }
}

/// 0 when every check passes, 1 on any failure, 2 on a configuration error.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    validate(c);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  }
  Report rep;
  try {
    rep = execute(c);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  std::string text = render(c, rep);
  try {
    if (c.output_path.empty()) {
      out << text;
    } else {
      write_atomic(c.output_path, text);
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& line : rep.notes) err << line << "\n";
  if (c.command == Command::kVerify && rep.failures == 0) err << rep.summary() << "\n";
  if (rep.failures > 0) {
    err << rep.summary() << "\n";
    for (const auto& f : rep.failed) err << "  failed: " << f << "\n";
  }
  return rep.failures == 0 ? 0 : 1;
}

}  // namespace hpk
