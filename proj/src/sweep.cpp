#include "opseller/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace opseller {

namespace {

void assign(GameParams& p, SweepParam which, double v) {
  switch (which) {
    case SweepParam::c_M: p.c_M = v; break;
    case SweepParam::c_I: p.c_I = v; break;
    case SweepParam::alpha: p.alpha = v; break;
    case SweepParam::k: p.k = v; break;
    case SweepParam::theta: p.theta = v; break;
    case SweepParam::gamma: p.gamma = v; break;
  }
}

GameParams cell_params(const SweepSpec& spec, int ix, int iy) {
  GameParams p = spec.fixed;
  assign(p, spec.x.param, spec.x.at(ix));
  if (spec.y) assign(p, spec.y->param, spec.y->at(iy));
  return p;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("axis: cannot parse " + what + " '" + s + "'");
  }
  if (used != s.size()) throw InvalidInput("axis: cannot parse " + what + " '" + s + "'");
  return v;
}

std::string price_cell(const Price& p, Precision precision) {
  return p.is_abstain() ? "abstain" : format_number(p.value(), precision);
}

std::string column_value(const std::string& col, const SweepCell& c, Precision precision) {
  const GameParams& p = c.params;
  const EquilibriumResult& r = c.result;
  if (col == "c_M") return format_number(p.c_M, precision);
  if (col == "c_I") return format_number(p.c_I, precision);
  if (col == "alpha") return format_number(p.alpha, precision);
  if (col == "k") return format_number(p.k, precision);
  if (col == "theta") return format_number(p.theta, precision);
  if (col == "gamma") return format_number(p.gamma, precision);
  if (col == "rationing") return std::string(to_string(p.rationing));
  if (col == "regime") return std::string(to_string(r.regime));
  if (col == "p_M") return price_cell(r.action_M.price, precision);
  if (col == "q_M") return format_number(r.action_M.quantity, precision);
  if (col == "p_I") return price_cell(r.response_I.action.price, precision);
  if (col == "q_I") return format_number(r.response_I.action.quantity, precision);
  if (col == "u_M") return format_number(r.u_M, precision);
  if (col == "u_I") return format_number(r.u_I, precision);
  if (col == "cs") return r.cs ? format_number(*r.cs, precision) : std::string();
  if (col == "welfare") return r.welfare ? format_number(*r.welfare, precision) : std::string();
  throw InvalidInput("unknown column '" + col + "'");
}

std::vector<std::string> selected_columns(const SweepSpec& spec) {
  if (!spec.columns.empty()) return spec.columns;
  return {std::begin(kSweepColumns), std::end(kSweepColumns)};
}

}  // namespace

SweepParam parse_sweep_param(const std::string& name) {
  if (name == "c_M" || name == "cm") return SweepParam::c_M;
  if (name == "c_I" || name == "ci") return SweepParam::c_I;
  if (name == "alpha") return SweepParam::alpha;
  if (name == "k") return SweepParam::k;
  if (name == "theta") return SweepParam::theta;
  if (name == "gamma") return SweepParam::gamma;
  throw InvalidInput("unknown sweep parameter '" + name + "'");
}

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::c_M: return "c_M";
    case SweepParam::c_I: return "c_I";
    case SweepParam::alpha: return "alpha";
    case SweepParam::k: return "k";
    case SweepParam::theta: return "theta";
    case SweepParam::gamma: return "gamma";
  }
  return "?";
}

double Axis::at(int i) const {
  if (i == points - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(points - 1);
}

Axis Axis::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 4) throw InvalidInput("axis must look like name:min:max:points, got '" + text + "'");
  Axis a;
  a.param = parse_sweep_param(parts[0]);
  a.min = parse_double(parts[1], "min");
  a.max = parse_double(parts[2], "max");
  const double n = parse_double(parts[3], "points");
  if (!(n >= 2.0 && n <= 1e7) || n != std::floor(n)) throw InvalidInput("axis: points must be an integer >= 2");
  a.points = static_cast<int>(n);
  return a;
}

void SweepSpec::validate() const {
  for (const Axis* a : {&x, y ? &*y : nullptr}) {
    if (a == nullptr) continue;
    if (a->points < 2) throw InvalidInput("sweep: each axis needs at least 2 points");
    if (!(a->min <= a->max)) throw InvalidInput("sweep: axis min must not exceed max");
  }
  if (y && x.param == y->param) throw InvalidInput("sweep: axis parameters must differ");
  const int y_last = y ? y->points - 1 : 0;
  solver.validate();
  // Parameter validity is checked at the corners; every axis is linear,
  // so the interior lies inside the same box.
  for (const int ix : {0, x.points - 1}) {
    for (const int iy : {0, y_last}) cell_params(*this, ix, iy).validate();
  }
  for (const std::string& c : columns) {
    if (std::find(std::begin(kSweepColumns), std::end(kSweepColumns), c) == std::end(kSweepColumns)) {
      throw InvalidInput("sweep: unknown column '" + c + "'");
    }
  }
}

std::vector<SweepCell> run_sweep(const SweepSpec& spec, Execution exec) {
  spec.validate();
  const int nx = spec.x.points;
  const std::int64_t total = static_cast<std::int64_t>(nx) * (spec.y ? spec.y->points : 1);
  std::vector<SweepCell> cells(static_cast<std::size_t>(total));
  auto solve_cell = [&](std::int64_t i) {
    SweepCell& c = cells[static_cast<std::size_t>(i)];
    c.params = cell_params(spec, static_cast<int>(i % nx), static_cast<int>(i / nx));
    c.result = solve_equilibrium(c.params, spec.solver);
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < total; ++i) solve_cell(i);
  } else {
    for (std::int64_t i = 0; i < total; ++i) solve_cell(i);
  }
  return cells;
}

std::string format_number(double v, Precision precision) {
  char buf[40];
  std::snprintf(buf, sizeof buf, precision == Precision::Full ? "%.17g" : "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepCell>& cells,
                     Precision precision) {
  const std::vector<std::string> cols = selected_columns(spec);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const SweepCell& c : cells) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << column_value(cols[i], c, precision);
    out << '\n';
  }
}

}  // namespace opseller
