#include "cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tropica/diagram.hpp"
#include "tropica/dynamics.hpp"
#include "tropica/exact.hpp"
#include "tropica/format.hpp"
#include "tropica/spectral.hpp"
#include "tropica/traffic_model.hpp"

namespace tropica::cli {

namespace {

// Raised for bad flag values discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return format_number(v); }

void print_vector(std::ostream& out, const std::vector<double>& v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << fmt(v[i]);
  out << ']';
}

void print_params(std::ostream& out, const DerivedParams& p) {
  out << "d=" << fmt(p.d) << "\n"
      << "r=" << fmt(p.r) << "\n"
      << "rho=" << fmt(p.rho) << "\n"
      << "d1=" << fmt(p.d1) << "\n"
      << "d2=" << fmt(p.d2) << "\n"
      << "b_n=" << fmt(p.b_n) << " bbar_n=" << fmt(p.bbar_n) << "\n"
      << "b_m=" << fmt(p.b_m) << " bbar_m=" << fmt(p.bbar_m) << "\n";
}

void print_region(std::ostream& out, const RegionLabel& region) {
  out << "region=" << to_string(region.label) << " [" << fmt(region.lo) << ", " << fmt(region.hi)
      << (region.label == Region::F ? "]" : ")") << "\n";
}

Regime parse_regime(const std::string& s) {
  for (Regime r : kAllRegimes)
    if (to_string(r) == s) return r;
  throw UsageError("unknown regime \"" + s + "\" (expected R1..R4)");
}

// --- validate --------------------------------------------------------------

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  TrafficConfig config;
  try {
    config = load_config_unvalidated(path);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    // density documents route through allocate, which checks n, m and d
    err << "invalid: " << e.what() << "\n";
    return kVerificationFailed;
  }
  out << "config: n=" << config.n << " m=" << config.m
      << " convention=" << to_string(config.convention) << "\n";
  const auto violations = validate(config);
  if (!violations.empty()) {
    out << "status: invalid\n";
    for (const Violation& v : violations) out << "violation: " << v.message << "\n";
    return kVerificationFailed;
  }
  out << "status: valid\n";
  print_params(out, derive(config));
  return kOk;
}

// --- eigen -----------------------------------------------------------------

int cmd_eigen(const std::string& path, bool full, bool verify, double tol, std::ostream& out) {
  const TrafficConfig config = load_config(path);
  const DerivedParams params = derive(config);
  out << "n=" << config.n << " m=" << config.m << " d=" << fmt(params.d) << " r=" << fmt(params.r)
      << " d1=" << fmt(params.d1) << " d2=" << fmt(params.d2) << "\n";
  print_region(out, classify_region(params));

  bool ok = true;
  for (const EigenValue& e : eigen_set(params)) {
    const ReducedEigenpair pair = reduced_eigenvector(params, e.regime);
    out << "lambda=" << fmt(pair.lambda) << " regime=" << to_string(pair.regime)
        << " x1=" << fmt(pair.x1) << " xn=" << fmt(pair.xn) << " xn1=" << fmt(pair.xn1)
        << " xnm=" << fmt(pair.xnm) << "\n";
    if (!full && !verify) continue;
    const FullEigenpair extended = extend_full(params, pair);
    if (full) {
      out << "  x=";
      print_vector(out, extended.x);
      out << "\n";
    }
    if (verify) {
      const double rs = residual_S(params, pair);
      const double rss = residual_SS(params, pair.lambda, extended.x);
      const double rev = residual_EV(params, pair.lambda, extended.x);
      out << "  residual_S=" << fmt(rs) << " residual_SS=" << fmt(rss) << " residual_EV=" << fmt(rev);
      bool pass = rs <= tol && rss <= tol && rev <= tol;
      const ZTransform zt = z_transform(pair, config.m);
      if (zt.lambda_positive) {
        const double rsz = residual_SZ(params, pair.lambda, zt.z);
        out << " residual_SZ=" << fmt(rsz);
        pass = pass && rsz <= tol;
      }
      out << (pass ? " ok" : " FAIL") << "\n";
      ok = ok && pass;
    }
  }
  if (verify) out << "status: " << (ok ? "verified" : "residual above tolerance " + fmt(tol)) << "\n";
  return ok ? kOk : kVerificationFailed;
}

// --- simulate --------------------------------------------------------------

struct SimulateOptions {
  std::string config_path;
  std::size_t steps = 100;
  std::string init = "zero";
  std::string state_path;
  std::optional<std::size_t> window;
  std::string out_path;
  std::string regime;
};

int cmd_simulate(const SimulateOptions& opt, double tol, std::ostream& out, std::ostream& err) {
  const TrafficConfig config = load_config(opt.config_path);
  const DerivedParams params = derive(config);

  StateVector x0;
  std::optional<ReducedEigenpair> eigen;
  if (opt.init == "zero") {
    x0.x.assign(config.size(), 0.0);
  } else if (opt.init == "file") {
    if (opt.state_path.empty()) throw UsageError("--init file needs --state FILE");
    x0.x = read_vector_file(opt.state_path);
    if (x0.x.size() != config.size()) {
      throw UsageError("state file has " + std::to_string(x0.x.size()) + " entries, expected " +
                       std::to_string(config.size()));
    }
  } else if (opt.init == "eigen") {
    const Regime regime =
        opt.regime.empty() ? eigen_set(params).front().regime : parse_regime(opt.regime);
    eigen = reduced_eigenvector(params, regime);
    x0.x = extend_full(params, *eigen).x;
  } else {
    throw UsageError("--init must be eigen, zero or file");
  }

  const std::size_t window = opt.window.value_or(opt.steps >= 2 ? opt.steps / 2 : opt.steps);
  if (opt.window && (*opt.window == 0 || *opt.window > opt.steps)) {
    throw UsageError("--window must be in [1, steps]");
  }

  std::unique_ptr<std::ofstream> file;
  if (!opt.out_path.empty()) {
    file = std::make_unique<std::ofstream>(opt.out_path);
    if (!*file) throw UsageError("cannot write " + opt.out_path);
  }
  std::ostream& csv = file ? *file : out;
  std::ostream& summary = file ? out : err;

  Trajectory tail{config, {}};
  std::deque<StateVector> recent;
  write_trajectory_csv_header(csv, config.size());
  simulate_each(config, x0, opt.steps, [&](const StateVector& s) {
    write_trajectory_csv_row(csv, s);
    recent.push_back(s);
    if (recent.size() > window + 1) recent.pop_front();
  });
  tail.states.assign(recent.begin(), recent.end());

  summary << "steps=" << opt.steps << " init=" << opt.init
          << " convention=" << to_string(config.convention) << "\n";
  if (window >= 1 && window < tail.states.size()) {
    const GrowthEstimate g = growth_rate(tail, window);
    summary << "growth window=" << window << " min=" << fmt(g.min) << " mean=" << fmt(g.mean)
            << " max=" << fmt(g.max) << "\n";
  } else {
    summary << "growth: trajectory too short for a window\n";
  }

  if (!eigen) return kOk;
  summary << "lambda=" << fmt(eigen->lambda) << " regime=" << to_string(eigen->regime) << "\n";
  if (config.convention != Convention::EV) {
    summary << "linearity: skipped (requires EV convention)\n";
    return kOk;
  }
  const double rounded = linearity_check(config, FullEigenpair{eigen->lambda, x0.x}, opt.steps);
  const double exact =
      exact::linearity_deviation(config, eigen->regime, opt.steps).convert_to<double>();
  summary << "linearity deviation exact=" << fmt(exact) << " double=" << fmt(rounded) << "\n";
  const bool pass = exact <= tol;
  summary << "status: " << (pass ? "linear" : "deviation above tolerance " + fmt(tol)) << "\n";
  return pass ? kOk : kVerificationFailed;
}

// --- sweep -----------------------------------------------------------------

int cmd_sweep(std::size_t n, std::size_t m, std::size_t points, const std::string& convention,
              const std::string& out_path, std::ostream& out) {
  if (points < 2) throw UsageError("--points must be at least 2");
  if (n < 2 || m < 2) throw UsageError("--n and --m must be at least 2");
  const auto rows = sweep(n, m, points, convention_from_string(convention));
  if (out_path.empty()) {
    write_sweep_csv(out, rows);
  } else {
    std::ofstream file(out_path);
    if (!file) throw UsageError("cannot write " + out_path);
    write_sweep_csv(file, rows);
  }
  return kOk;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const std::string& path, double lambda, const std::string& x_path,
               const std::string& system, double tol, std::ostream& out) {
  const TrafficConfig config = load_config(path);
  const DerivedParams params = derive(config);
  const std::vector<double> x = read_vector_file(x_path);
  const std::size_t n = config.n;
  const std::size_t big = config.size();

  double residual = 0.0;
  if (system == "EV" || system == "SS") {
    if (x.size() != big) {
      throw DimensionMismatch("system " + system + " needs " + std::to_string(big) +
                              " entries, got " + std::to_string(x.size()));
    }
    residual = system == "EV" ? residual_EV(params, lambda, x) : residual_SS(params, lambda, x);
  } else if (system == "S") {
    ReducedEigenpair pair{lambda, 0, 0, 0, 0, Regime::R1};
    if (x.size() == 4) {
      pair.x1 = x[0], pair.xn = x[1], pair.xn1 = x[2], pair.xnm = x[3];
    } else if (x.size() == big) {
      pair.x1 = x[0], pair.xn = x[n - 1], pair.xn1 = x[n], pair.xnm = x[big - 1];
    } else {
      throw DimensionMismatch("system S needs 4 or " + std::to_string(big) + " entries, got " +
                              std::to_string(x.size()));
    }
    residual = residual_S(params, pair);
  } else if (system == "SZ") {
    if (x.size() != 4) {
      throw DimensionMismatch("system SZ needs 4 entries (z_1, z_n, z_{n+1}, z_{n+m}), got " +
                              std::to_string(x.size()));
    }
    residual = residual_SZ(params, lambda, ZVector{x[0], x[1], x[2], x[3]});
    if (!(lambda > 0.0)) out << "note: lambda <= 0, (S) and (SZ) are not equivalent here\n";
  } else {
    throw UsageError("--system must be EV, SS, S or SZ");
  }
  const bool pass = residual <= tol;
  out << "system=" << system << " lambda=" << fmt(lambda) << " residual=" << fmt(residual)
      << " tol=" << fmt(tol) << "\n"
      << "status: " << (pass ? "ok" : "fail") << "\n";
  return pass ? kOk : kVerificationFailed;
}

}  // namespace

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open vector file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<double> values;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed vector file: ") + e.what());
    }
    for (const auto& v : doc) {
      if (!v.is_number()) throw ParseError("vector file entries must be numbers");
      values.push_back(v.get<double>());
    }
    return values;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    pos = text.find_first_not_of(" \t\r\n,", pos);
    if (pos == std::string::npos) break;
    const auto end = text.find_first_of(" \t\r\n,", pos);
    const std::string token = text.substr(pos, end == std::string::npos ? end : end - pos);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
      throw ParseError("bad number \"" + token + "\" in vector file");
    }
    values.push_back(v);
    pos = end;
  }
  return values;
}

double resolve_tolerance(const double* flag_value) {
  if (flag_value) return *flag_value;
  if (const char* env = std::getenv("TROPICA_TOL"); env && *env) {
    const std::string text(env);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(v >= 0.0) || !std::isfinite(v)) {
      throw UsageError("TROPICA_TOL must be a non-negative decimal, got \"" + text + "\"");
    }
    return v;
  }
  return kDefaultTolerance;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Min-plus eigen-analysis of a two-road junction traffic model", "tropica"};
  app.require_subcommand(1);
  double tol_flag = 0.0;
  auto* tol_opt = app.add_option("--tol", tol_flag, "verification tolerance (overrides TROPICA_TOL)");

  std::string config_path;

  auto* validate_cmd = app.add_subcommand("validate", "check a config and print derived quantities");
  validate_cmd->add_option("config", config_path, "config file (JSON)")->required();

  bool full = false;
  bool verify = false;
  auto* eigen_cmd = app.add_subcommand("eigen", "eigenvalues, regimes and eigenvectors");
  eigen_cmd->add_option("config", config_path, "config file (JSON)")->required();
  eigen_cmd->add_flag("--full", full, "print the full (n+m)-vectors");
  eigen_cmd->add_flag("--verify", verify, "print residuals and fail above tolerance");

  SimulateOptions sim;
  std::size_t window_value = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "run the dynamics and write a trajectory CSV");
  sim_cmd->add_option("config", sim.config_path, "config file (JSON)")->required();
  sim_cmd->add_option("--steps", sim.steps, "number of steps");
  sim_cmd->add_option("--init", sim.init, "initial state: eigen, zero or file")
      ->check(CLI::IsMember({"eigen", "zero", "file"}));
  sim_cmd->add_option("--state", sim.state_path, "initial state vector file for --init file");
  auto* window_opt = sim_cmd->add_option("--window", window_value, "growth-rate window");
  sim_cmd->add_option("--out", sim.out_path, "trajectory CSV path (default stdout)");
  sim_cmd->add_option("--regime", sim.regime, "eigenvector regime for --init eigen (R1..R4)");

  std::size_t sweep_n = 0, sweep_m = 0, points = 0;
  std::string convention = "EV";
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "fundamental diagram over densities in [0, 1]");
  sweep_cmd->add_option("--n", sweep_n, "road 1 size")->required();
  sweep_cmd->add_option("--m", sweep_m, "road 2 size")->required();
  sweep_cmd->add_option("--points", points, "number of density samples")->required();
  sweep_cmd->add_option("--convention", convention, "EV or DS")->check(CLI::IsMember({"EV", "DS"}));
  sweep_cmd->add_option("--out", sweep_out, "CSV path (default stdout)");

  double lambda = 0.0;
  std::string x_path;
  std::string system = "EV";
  auto* verify_cmd = app.add_subcommand("verify", "residual of a user-supplied (lambda, x)");
  verify_cmd->add_option("config", config_path, "config file (JSON)")->required();
  verify_cmd->add_option("--lambda", lambda, "eigenvalue")->required();
  verify_cmd->add_option("--x", x_path, "vector file")->required();
  verify_cmd->add_option("--system", system, "EV, SS, S or SZ")
      ->check(CLI::IsMember({"EV", "SS", "S", "SZ"}));

  // CLI11 wants argv order with the program name first, last-to-first.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    const double tol = resolve_tolerance(tol_opt->count() ? &tol_flag : nullptr);
    if (validate_cmd->parsed()) return cmd_validate(config_path, out, err);
    if (eigen_cmd->parsed()) return cmd_eigen(config_path, full, verify, tol, out);
    if (sim_cmd->parsed()) {
      if (window_opt->count()) sim.window = window_value;
      return cmd_simulate(sim, tol, out, err);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_n, sweep_m, points, convention, sweep_out, out);
    if (verify_cmd->parsed()) return cmd_verify(config_path, lambda, x_path, system, tol, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
  return kUsageError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace tropica::cli
