#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "opseller/oracle.hpp"
#include "opseller/rationing_sim.hpp"
#include "opseller/sweep.hpp"
#include "opseller/welfare.hpp"

namespace opseller::cli {

namespace {

using nlohmann::ordered_json;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  GameParams params;
  std::string rationing = "intensity";
  std::string out_path;
  std::string precision = "short";
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;

  // best-response
  std::string p_M = "4";
  double q_M = 0.0;

  // sweep
  std::string axis_x;
  std::string axis_y;
  std::vector<std::string> columns;

  // simulate
  double p_low = 6.0;
  int q_low = 1;
  double p_eval = 7.0;

  // verify
  int samples = 200;
  int grid = 500;
};

Precision precision_of(const Options& o) { return o.precision == "full" ? Precision::Full : Precision::Short; }

double rounded(double v, Precision precision) { return std::stod(format_number(v, precision)); }

ordered_json number(double v, Precision precision) {
  if (!std::isfinite(v)) return nullptr;
  return rounded(v, precision);
}

ordered_json price_json(const Price& p, Precision precision) {
  if (p.is_abstain()) return "abstain";
  return number(p.value(), precision);
}

ordered_json optional_json(const std::optional<double>& v, Precision precision) {
  if (!v) return nullptr;
  return number(*v, precision);
}

ordered_json params_json(const GameParams& p, Precision precision) {
  ordered_json j;
  j["theta"] = number(p.theta, precision);
  j["alpha"] = number(p.alpha, precision);
  j["k"] = number(p.k, precision);
  j["c_M"] = number(p.c_M, precision);
  j["c_I"] = number(p.c_I, precision);
  j["gamma"] = number(p.gamma, precision);
  j["rationing"] = std::string(to_string(p.rationing));
  return j;
}

Price parse_price(const std::string& text) {
  if (text == "abstain") return Price::abstain();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidInput("price must be a number or 'abstain', got '" + text + "'");
  }
  if (used != text.size()) throw InvalidInput("price must be a number or 'abstain', got '" + text + "'");
  return Price::at(v);
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoFailure("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoFailure("failed writing '" + path + "'");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

int cmd_equilibrium(const Options& o, std::ostream& out, const Hooks& hooks) {
  const Precision pr = precision_of(o);
  const EquilibriumResult r = hooks.solver(o.params, SolverConfig{});
  ordered_json j;
  j["regime"] = std::string(to_string(r.regime));
  j["p_M"] = price_json(r.action_M.price, pr);
  j["q_M"] = number(r.action_M.quantity, pr);
  j["p_I"] = price_json(r.response_I.action.price, pr);
  j["q_I"] = number(r.response_I.action.quantity, pr);
  j["strategy_I"] = std::string(to_string(r.response_I.strategy));
  j["u_M"] = number(r.u_M, pr);
  j["u_I"] = number(r.u_I, pr);
  j["cs"] = optional_json(r.cs, pr);
  j["welfare"] = optional_json(r.welfare, pr);
  j["params"] = params_json(o.params, pr);
  write_text(j.dump(2) + "\n", o.out_path, out);
  return kOk;
}

int cmd_best_response(const Options& o, std::ostream& out, const Hooks& hooks) {
  const Precision pr = precision_of(o);
  const Price p_M = parse_price(o.p_M);
  const Action action_M{p_M, o.q_M};
  action_M.validate();
  const BestResponse br = hooks.best_response(p_M, o.q_M, o.params);
  const UtilityReport u = utilities(action_M, br.action, o.params);
  const KeyPrices kp = key_prices(o.params);

  ordered_json j;
  j["strategy"] = std::string(to_string(br.strategy));
  j["p_I"] = price_json(br.action.price, pr);
  j["q_I"] = number(br.action.quantity, pr);
  j["u_I"] = number(u.u_I, pr);
  j["u_M"] = number(u.u_M, pr);
  j["demonopolized"] = br.demonopolized;
  j["p0"] = number(kp.p0, pr);
  j["p_star_I"] = price_json(kp.p_star_I, pr);
  ordered_json t = nullptr;
  if (!p_M.is_abstain() && !kp.independent_priced_out(o.params.theta) && p_M.value() <= o.params.theta) {
    const Thresholds th = thresholds(p_M.value(), o.params, o.q_M);
    t = ordered_json::object();
    t["q_dagger"] = th.q_dagger ? number(*th.q_dagger, pr) : ordered_json(nullptr);
    t["q_ddagger"] = number(th.q_ddagger, pr);
    t["p_wait"] = number(th.p_wait, pr);
  }
  j["thresholds"] = t;
  j["params"] = params_json(o.params, pr);
  write_text(j.dump(2) + "\n", o.out_path, out);
  return kOk;
}

int cmd_welfare(const Options& o, std::ostream& out, const Hooks& hooks) {
  const Precision pr = precision_of(o);
  const EquilibriumResult r = hooks.solver(o.params, SolverConfig{});
  ordered_json j;
  j["regime"] = std::string(to_string(r.regime));
  j["u_M"] = number(r.u_M, pr);
  j["u_I"] = number(r.u_I, pr);
  const char* keys[] = {"cs", "welfare", "cs_baseline", "u_M_baseline", "u_I_baseline", "welfare_baseline",
                        "delta_cs", "delta_ps", "welfare_gain"};
  for (const char* key : keys) j[key] = nullptr;
  if (consumer_surplus_defined(o.params)) {
    const WelfareReport w = welfare_report(r, o.params);
    j["cs"] = number(w.cs, pr);
    j["welfare"] = number(w.welfare, pr);
    j["cs_baseline"] = number(w.cs_baseline, pr);
    j["u_M_baseline"] = number(w.u_M_baseline, pr);
    j["u_I_baseline"] = number(w.u_I_baseline, pr);
    j["welfare_baseline"] = number(w.welfare_baseline, pr);
    j["delta_cs"] = number(w.cs - w.cs_baseline, pr);
    j["delta_ps"] = number(w.u_I - w.u_I_baseline, pr);
    j["welfare_gain"] = number(w.welfare - w.welfare_baseline, pr);
  }
  j["params"] = params_json(o.params, pr);
  write_text(j.dump(2) + "\n", o.out_path, out);
  return kOk;
}

int cmd_sweep(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  if (o.axis_x.empty()) throw InvalidInput("sweep needs --x name:min:max:points");
  SweepSpec spec;
  spec.x = Axis::parse(o.axis_x);
  if (!o.axis_y.empty()) spec.y = Axis::parse(o.axis_y);
  spec.fixed = o.params;
  spec.columns = o.columns;
  const std::vector<SweepCell> cells = run_sweep(spec);

  std::ostringstream csv;
  write_sweep_csv(csv, spec, cells, precision_of(o));
  write_text(csv.str(), o.out_path, out);
  if (!o.out_path.empty()) {
    ordered_json meta;
    meta["command"] = "sweep";
    meta["arguments"] = args;
    meta["generated_at"] = utc_timestamp();
    meta["rows"] = cells.size();
    meta["axis_x"] = o.axis_x;
    meta["axis_y"] = o.axis_y.empty() ? ordered_json(nullptr) : ordered_json(o.axis_y);
    meta["precision"] = o.precision;
    meta["fixed"] = params_json(o.params, Precision::Full);
    write_text(meta.dump(2) + "\n", o.out_path + ".meta.json", out);
  }
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Precision pr = precision_of(o);
  const SimConfig cfg = SimConfig::from_params(o.params, o.p_low, o.q_low, o.p_eval, o.trials, o.seed);
  const SimResult r = simulate_arrivals(cfg);
  ordered_json j;
  j["theta"] = cfg.theta_int;
  j["p_low"] = number(cfg.p_low, pr);
  j["q_low"] = cfg.q_low;
  j["p_eval"] = number(cfg.p_eval, pr);
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["mc_mean"] = number(r.mc_mean, pr);
  j["mc_stderr"] = number(r.mc_stderr, pr);
  j["closed_form"] = number(r.closed_form, pr);
  j["proportional_value"] = number(r.proportional_value, pr);
  write_text(j.dump(2) + "\n", o.out_path, out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  if (o.samples < 1) throw InvalidInput("verify: --samples must be >= 1");
  const GameParams& params = o.params;
  const OracleConfig oc{o.grid, o.grid, true};
  const double bound = discretization_bound(params, oc);
  // Label comparisons are skipped within a few grid cells of a threshold.
  const double width = 4.0 * params.theta / (o.grid - 1) / std::max(params.gamma, 0.25);

  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double br_gap = -kInf;
  int mismatches = 0;
  bool ok = true;
  for (int i = 0; i < o.samples; ++i) {
    const bool m_abstains = unit(rng) < 0.1;
    const double p = unit(rng) * params.theta;
    const double q = unit(rng) * demand(p, params);
    const Action action_M = m_abstains ? Action::abstain() : Action::at(p, q);

    const BestResponse closed = hooks.best_response(action_M.price, action_M.quantity, params);
    const BestResponse grid = oracle_best_response(action_M.price, action_M.quantity, params, oc);
    const double closed_u = utilities(action_M, closed.action, params).u_I;
    const double gap = grid.utility - closed_u;
    br_gap = std::max(br_gap, gap);
    const bool label_checked = m_abstains || !near_threshold(p, q, params, width);
    if (gap > bound || (label_checked && closed.strategy != grid.strategy)) {
      ok = false;
      if (closed.strategy != grid.strategy) ++mismatches;
      err << "mismatch at p_M=" << (m_abstains ? std::string("abstain") : format_number(p, Precision::Full))
          << " q_M=" << format_number(action_M.quantity, Precision::Full) << ": closed-form "
          << to_string(closed.strategy) << " u_I=" << format_number(closed_u, Precision::Full) << ", oracle "
          << to_string(grid.strategy) << " u_I=" << format_number(grid.utility, Precision::Full) << '\n';
    }
  }

  const EquilibriumResult solved = hooks.solver(params, SolverConfig{});
  const EquilibriumResult brute = oracle_equilibrium(params, oc);
  const double eq_gap = std::abs(solved.u_M - brute.u_M);
  if (eq_gap > bound) {
    ok = false;
    err << "equilibrium mismatch: solver u_M=" << format_number(solved.u_M, Precision::Full)
        << " oracle u_M=" << format_number(brute.u_M, Precision::Full) << '\n';
  }

  out << "best_response samples=" << o.samples << " max_utility_gap=" << format_number(br_gap, Precision::Short)
      << " label_mismatches=" << mismatches << '\n';
  out << "equilibrium solver_u_M=" << format_number(solved.u_M, Precision::Short)
      << " oracle_u_M=" << format_number(brute.u_M, Precision::Short)
      << " utility_gap=" << format_number(eq_gap, Precision::Short) << '\n';
  out << "discretization_bound=" << format_number(bound, Precision::Short) << " grid=" << o.grid << '\n';
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  CLI::App app{"Operator-as-seller pricing game solver", "opseller"};
  app.set_config("--config", "", "Flat key=value file; command-line flags override its values");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  GameParams& p = o.params;
  app.add_option("--theta", p.theta, "Maximum willingness to pay")->capture_default_str();
  app.add_option("--alpha", p.alpha, "Referral fee")->capture_default_str();
  app.add_option("--k", p.k, "Operator's per-unit customer-experience benefit")->capture_default_str();
  app.add_option("--cm", p.c_M, "Operator's unit cost")->capture_default_str();
  app.add_option("--ci", p.c_I, "Independent seller's unit cost")->capture_default_str();
  app.add_option("--gamma", p.gamma, "Substitutability in [0, 1]")->capture_default_str();
  app.add_option("--rationing", o.rationing, "intensity or proportional")
      ->check(CLI::IsMember({"intensity", "proportional"}))
      ->capture_default_str();
  app.add_option("--out", o.out_path, "Output file (default: stdout)");
  app.add_option("--precision", o.precision, "short (6 significant digits) or full")
      ->check(CLI::IsMember({"short", "full"}))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  app.add_option("--trials", o.trials, "Monte-Carlo trials")->capture_default_str();
  app.add_option("--pm", o.p_M, "Operator price, or 'abstain'")->capture_default_str();
  app.add_option("--qm", o.q_M, "Operator inventory")->capture_default_str();
  app.add_option("--x", o.axis_x, "Sweep axis name:min:max:points, e.g. ci:0:10:200");
  app.add_option("--y", o.axis_y, "Second sweep axis (outer loop)");
  app.add_option("--columns", o.columns, "CSV columns to keep")->delimiter(',');
  app.add_option("--p-low", o.p_low, "Lower price in the arrival simulation")->capture_default_str();
  app.add_option("--q-low", o.q_low, "Units stocked at the lower price")->capture_default_str();
  app.add_option("--p-eval", o.p_eval, "Price at which residual demand is measured")->capture_default_str();
  app.add_option("--samples", o.samples, "Best-response samples for verify")->capture_default_str();
  app.add_option("--grid", o.grid, "Oracle grid points per dimension for verify")->capture_default_str();

  auto* eq = app.add_subcommand("equilibrium", "Solve the game and print the equilibrium as JSON");
  auto* br = app.add_subcommand("best-response", "Independent seller's reply to --pm/--qm");
  auto* sw = app.add_subcommand("sweep", "Equilibrium over a parameter grid, written as CSV");
  auto* vf = app.add_subcommand("verify", "Compare the solver against brute-force grid search");
  auto* sim = app.add_subcommand("simulate", "Random-arrival simulation of residual demand");
  auto* wf = app.add_subcommand("welfare", "Consumer surplus and welfare against the sole-seller benchmark");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    p.rationing = parse_rationing(o.rationing);
    p.validate();
    if (eq->parsed()) return cmd_equilibrium(o, out, hooks);
    if (br->parsed()) return cmd_best_response(o, out, hooks);
    if (sw->parsed()) return cmd_sweep(o, args, out);
    if (vf->parsed()) return cmd_verify(o, out, err, hooks);
    if (sim->parsed()) return cmd_simulate(o, out);
    if (wf->parsed()) return cmd_welfare(o, out, hooks);
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const UnsupportedConfiguration& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  err << "error: no subcommand\n";
  return kBadInput;
}

}  // namespace opseller::cli
