// Command-line driver: analyze node sets, minimize projector norms and
// absorption coefficients, reproduce the reference tables, and sample the
// Lebesgue curve.  Every command wraps its result in a RunRecord envelope
// (see docs/runrecord.schema.json); numbers are printed as decimal strings
// so output stays exact regardless of the working precision.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "simplex_interp/analysis.hpp"
#include "simplex_interp/basis.hpp"
#include "simplex_interp/errors.hpp"
#include "simplex_interp/nodes.hpp"
#include "simplex_interp/optimize.hpp"
#include "simplex_interp/scalar.hpp"
#include "simplex_interp/version.hpp"

namespace si = simplex_interp;
using si::Real;
using json = nlohmann::ordered_json;

namespace {

struct GlobalOptions {
  unsigned precision_bits = 256;
  std::string format = "json";
  int digits = 15;
  bool quiet = false;
};

struct NodeSourceOptions {
  std::string node_csv;
  bool regular = false;
  bool chebyshev = false;
};

std::string render(const Real& v, int digits) {
  if (v.is_zero()) return "0";  // normalize -0
  return v.str(static_cast<std::streamsize>(digits));
}

std::string source_name(const NodeSourceOptions& src) {
  if (src.regular) return "regular";
  if (src.chebyshev) return "chebyshev";
  return "explicit";
}

si::NodeSet<Real> resolve_nodes(int k, const NodeSourceOptions& src) {
  const int sources = (src.node_csv.empty() ? 0 : 1) + (src.regular ? 1 : 0) +
                      (src.chebyshev ? 1 : 0);
  if (sources != 1) {
    throw si::InputError(
        "exactly one node source is required: --nodes, --regular, or --chebyshev");
  }
  if (src.regular) return si::regular_nodes<Real>(k);
  if (src.chebyshev) return si::chebyshev_nodes<Real>(k);

  std::vector<Real> pts;
  std::stringstream ss(src.node_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw si::InputError("empty value in --nodes list");
    tok = tok.substr(b, e - b + 1);
    try {
      pts.emplace_back(tok);
    } catch (const std::exception&) {
      throw si::InputError("could not parse node value '" + tok + "'");
    }
  }
  if (static_cast<int>(pts.size()) != k + 1) {
    throw si::InputError("--nodes must supply exactly k+1 = " + std::to_string(k + 1) +
                         " values, got " + std::to_string(pts.size()));
  }
  return si::validate(std::move(pts));
}

json nodes_json(const si::NodeSet<Real>& nodes, int digits) {
  json a = json::array();
  for (int i = 0; i < nodes.count(); ++i) a.push_back(render(nodes.points[i], digits));
  return a;
}

using CsvRows = std::vector<std::pair<std::string, std::string>>;

void write_field_csv(std::ostream& os, const CsvRows& rows) {
  os << "field,value\n";
  for (const auto& [field, value] : rows) os << field << "," << value << "\n";
}

// Prints the RunRecord (JSON) or the bare payload (CSV) and passes the
// command's exit code through.
class Emitter {
 public:
  Emitter(const GlobalOptions& g, std::string command)
      : g_(g),
        command_(std::move(command)),
        start_(std::chrono::steady_clock::now()) {}

  int finish(json inputs, json outputs,
             const std::function<void(std::ostream&)>& write_csv, int code) const {
    if (g_.format == "csv") {
      write_csv(std::cout);
    } else {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
      json rec;
      rec["command"] = command_;
      rec["inputs"] = std::move(inputs);
      rec["outputs"] = std::move(outputs);
      rec["precision_bits"] = g_.precision_bits;
      rec["wall_time_ms"] = ms;
      rec["artifact_version"] = si::artifact_version;
      std::cout << rec.dump(2) << "\n";
    }
    if (!g_.quiet) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
      std::cerr << "simplex-interp: " << command_ << " finished in " << ms << " ms\n";
    }
    return code;
  }

 private:
  const GlobalOptions& g_;
  std::string command_;
  std::chrono::steady_clock::time_point start_;
};

json global_inputs(const GlobalOptions& g) {
  json j;
  j["format"] = g.format;
  j["digits"] = g.digits;
  return j;
}

int run_analyze(const GlobalOptions& g, int k, const NodeSourceOptions& src) {
  const Emitter em(g, "analyze");
  const si::NodeSet<Real> nodes = resolve_nodes(k, src);
  const si::LagrangeBasis<Real> basis = si::build(nodes);
  const si::AnalysisReport<Real> rep = si::analyze(basis);
  const int d = nodes.count();

  json inputs = global_inputs(g);
  inputs["k"] = k;
  inputs["source"] = source_name(src);
  if (!src.node_csv.empty()) inputs["nodes_arg"] = src.node_csv;

  json out;
  out["nodes"] = nodes_json(nodes, g.digits);

  json norm;
  norm["value"] = render(rep.norm.value, g.digits);
  json witnesses = json::array();
  for (const auto& w : rep.norm.witnesses) {
    json jw;
    jw["x"] = render(w.x, g.digits);
    json coords = json::array();
    for (int j = 0; j < d; ++j) coords.push_back(render(w.coords[j], g.digits));
    jw["coords"] = coords;
    witnesses.push_back(std::move(jw));
  }
  norm["witnesses"] = std::move(witnesses);
  out["norm"] = std::move(norm);

  json xi;
  xi["value"] = render(rep.xi.value, g.digits);
  xi["contained"] = rep.xi.contained;
  xi["worst_index"] = rep.xi.worst_index;
  xi["worst_point"] = render(rep.xi.worst_point, g.digits);
  out["xi"] = std::move(xi);

  json one_point;
  one_point["exists"] = rep.one_point.exists;
  if (rep.one_point.exists) {
    one_point["x_star"] = render(*rep.one_point.x_star, g.digits);
    one_point["negative_index"] = *rep.one_point.negative_index;
  }
  out["one_point"] = std::move(one_point);

  json ineq;
  ineq["lower"] = render(rep.inequalities.lower, g.digits);
  ineq["xi"] = render(rep.inequalities.xi, g.digits);
  ineq["upper"] = render(rep.inequalities.upper, g.digits);
  ineq["right_equality"] = rep.inequalities.right_equality;
  if (rep.inequalities.ratio) ineq["ratio"] = render(*rep.inequalities.ratio, g.digits);
  out["inequalities"] = std::move(ineq);

  const auto csv = [&](std::ostream& os) {
    CsvRows rows;
    rows.emplace_back("k", std::to_string(k));
    for (int i = 0; i < d; ++i)
      rows.emplace_back("node" + std::to_string(i + 1), render(nodes.points[i], g.digits));
    rows.emplace_back("norm", render(rep.norm.value, g.digits));
    for (std::size_t wi = 0; wi < rep.norm.witnesses.size(); ++wi) {
      const auto& w = rep.norm.witnesses[wi];
      const std::string tag = "witness" + std::to_string(wi + 1);
      rows.emplace_back(tag + "_x", render(w.x, g.digits));
      for (int j = 0; j < d; ++j)
        rows.emplace_back(tag + "_coord" + std::to_string(j + 1), render(w.coords[j], g.digits));
    }
    rows.emplace_back("xi", render(rep.xi.value, g.digits));
    rows.emplace_back("xi_contained", rep.xi.contained ? "true" : "false");
    rows.emplace_back("xi_worst_index", std::to_string(rep.xi.worst_index));
    rows.emplace_back("xi_worst_point", render(rep.xi.worst_point, g.digits));
    rows.emplace_back("one_point_exists", rep.one_point.exists ? "true" : "false");
    if (rep.one_point.exists) {
      rows.emplace_back("one_point_x_star", render(*rep.one_point.x_star, g.digits));
      rows.emplace_back("one_point_negative_index",
                        std::to_string(*rep.one_point.negative_index));
    }
    rows.emplace_back("lower", render(rep.inequalities.lower, g.digits));
    rows.emplace_back("upper", render(rep.inequalities.upper, g.digits));
    rows.emplace_back("right_equality", rep.inequalities.right_equality ? "true" : "false");
    if (rep.inequalities.ratio)
      rows.emplace_back("ratio", render(*rep.inequalities.ratio, g.digits));
    write_field_csv(os, rows);
  };

  return em.finish(std::move(inputs), std::move(out), csv, 0);
}

int run_minimize(const GlobalOptions& g, const si::OptimizerConfig<Real>& cfg,
                 const std::string& objective_name) {
  const Emitter em(g, "minimize");
  const si::OptimizationResult<Real> result = si::minimize(cfg);

  json inputs = global_inputs(g);
  inputs["k"] = cfg.k;
  inputs["objective"] = objective_name;
  inputs["starts"] = cfg.starts;
  inputs["max_iters"] = cfg.max_iters;
  inputs["tol"] = render(cfg.tol, g.digits);
  inputs["seed"] = cfg.rng_seed;
  inputs["symmetric"] = cfg.symmetric;
  inputs["fix_endpoints"] = cfg.fix_endpoints;

  json out;
  out["objective"] = objective_name;
  out["best_nodes"] = nodes_json(result.best_nodes, g.digits);
  out["best_value"] = render(result.best_value, g.digits);
  out["evaluations"] = result.evaluations;
  out["converged"] = result.converged;
  json history = json::array();
  for (const auto& [iteration, value] : result.history) {
    json h;
    h["iteration"] = iteration;
    h["value"] = render(value, g.digits);
    history.push_back(std::move(h));
  }
  out["history"] = std::move(history);

  const auto csv = [&](std::ostream& os) {
    CsvRows rows;
    rows.emplace_back("objective", objective_name);
    rows.emplace_back("best_value", render(result.best_value, g.digits));
    rows.emplace_back("converged", result.converged ? "true" : "false");
    rows.emplace_back("evaluations", std::to_string(result.evaluations));
    for (int i = 0; i < result.best_nodes.count(); ++i)
      rows.emplace_back("node" + std::to_string(i + 1),
                        render(result.best_nodes.points[i], g.digits));
    for (const auto& [iteration, value] : result.history)
      rows.emplace_back("history_" + std::to_string(iteration), render(value, g.digits));
    write_field_csv(os, rows);
  };

  return em.finish(std::move(inputs), std::move(out), csv, result.converged ? 0 : 3);
}

int run_tables(const GlobalOptions& g, int table, int kmax) {
  const Emitter em(g, "tables");
  si::TableId id;
  switch (table) {
    case 1: id = si::TableId::Theta; break;
    case 2: id = si::TableId::XiMin; break;
    case 3: id = si::TableId::Regular; break;
    case 4: id = si::TableId::Chebyshev; break;
    default:
      throw si::InputError("unknown table " + std::to_string(table) +
                           " (expected 1, 2, 3, or 4)");
  }
  const si::TableArtifact<Real> art = si::reproduce_table<Real>(id, kmax);

  json inputs = global_inputs(g);
  inputs["table"] = table;
  inputs["kmax"] = kmax;

  json rows = json::array();
  for (const auto& row : art.rows) {
    json r;
    r["k"] = row.k;
    r["value"] = render(row.value, g.digits);
    r["companion"] = render(row.companion, g.digits);
    r["abs_det"] = render(row.abs_det, g.digits);
    rows.push_back(std::move(r));
  }
  json out;
  out["table"] = table;
  out["rows"] = std::move(rows);

  const auto csv = [&](std::ostream& os) {
    os << "k,value,companion,abs_det\n";
    for (const auto& row : art.rows) {
      os << row.k << "," << render(row.value, g.digits) << ","
         << render(row.companion, g.digits) << "," << render(row.abs_det, g.digits)
         << "\n";
    }
  };

  return em.finish(std::move(inputs), std::move(out), csv, 0);
}

int run_curve(const GlobalOptions& g, int k, const NodeSourceOptions& src, int samples) {
  const Emitter em(g, "curve");
  if (samples < 2) throw si::InputError("--samples must be at least 2");
  const si::NodeSet<Real> nodes = resolve_nodes(k, src);
  const si::LagrangeBasis<Real> basis = si::build(nodes);
  const int d = nodes.count();

  json inputs = global_inputs(g);
  inputs["k"] = k;
  inputs["source"] = source_name(src);
  if (!src.node_csv.empty()) inputs["nodes_arg"] = src.node_csv;
  inputs["samples"] = samples;

  struct Row {
    Real x;
    std::vector<Real> t;
    Eigen::Matrix<Real, Eigen::Dynamic, 1> lambda;
    Real sum_abs;
  };
  std::vector<Row> table(samples);
  for (int i = 0; i < samples; ++i) {
    Row& row = table[i];
    row.x = Real(2 * i) / Real(samples - 1) - Real(1);
    row.t.resize(k);
    Real power = row.x;
    for (int p = 0; p < k; ++p) {
      row.t[p] = power;
      power *= row.x;
    }
    row.lambda = si::barycentric_coords(basis, row.x);
    row.sum_abs = Real(0);
    for (int j = 0; j < d; ++j) row.sum_abs += abs(row.lambda[j]);
  }

  json rows = json::array();
  for (const Row& row : table) {
    json r;
    r["x"] = render(row.x, g.digits);
    json t = json::array();
    for (const Real& v : row.t) t.push_back(render(v, g.digits));
    r["t"] = std::move(t);
    json lambda = json::array();
    for (int j = 0; j < d; ++j) lambda.push_back(render(row.lambda[j], g.digits));
    r["lambda"] = std::move(lambda);
    r["sum_abs"] = render(row.sum_abs, g.digits);
    rows.push_back(std::move(r));
  }
  json out;
  out["nodes"] = nodes_json(nodes, g.digits);
  out["samples"] = samples;
  out["rows"] = std::move(rows);

  const auto csv = [&](std::ostream& os) {
    os << "x";
    for (int p = 1; p <= k; ++p) os << ",t" << p;
    for (int j = 1; j <= d; ++j) os << ",lambda" << j;
    os << ",sum_abs\n";
    for (const Row& row : table) {
      os << render(row.x, g.digits);
      for (const Real& v : row.t) os << "," << render(v, g.digits);
      for (int j = 0; j < d; ++j) os << "," << render(row.lambda[j], g.digits);
      os << "," << render(row.sum_abs, g.digits) << "\n";
    }
  };

  return em.finish(std::move(inputs), std::move(out), csv, 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "simplex-interp: interpolation-projector norms, absorption coefficients, "
      "and node-set optimization on [-1, 1]"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--precision-bits", g.precision_bits, "Working precision in bits")
      ->envname("SIMPLEX_INTERP_PRECISION_BITS")
      ->check(CLI::Range(8u, 65536u))
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--digits", g.digits, "Significant digits for printed numbers")
      ->check(CLI::Range(1, 200))
      ->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Suppress progress output on stderr");

  int a_k = 0;
  NodeSourceOptions a_src;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Norm, absorption coefficient, 1-point certificate, and bounds");
  analyze->add_option("-k,--degree", a_k, "Interpolation degree")->required();
  analyze->add_option("--nodes", a_src.node_csv, "Comma-separated list of k+1 nodes");
  analyze->add_flag("--regular", a_src.regular, "Use equispaced nodes");
  analyze->add_flag("--chebyshev", a_src.chebyshev, "Use extended Chebyshev nodes");

  int m_k = 0;
  std::string m_objective = "norm";
  int m_starts = 64;
  int m_max_iters = 2000;
  double m_tol = 1e-10;
  std::uint64_t m_seed = 20240901u;
  bool m_asymmetric = false;
  bool m_free_endpoints = false;
  CLI::App* minimize =
      app.add_subcommand("minimize", "Search for norm- or xi-minimal node sets");
  minimize->add_option("-k,--degree", m_k, "Interpolation degree")->required();
  minimize->add_option("--objective", m_objective, "Objective to minimize")
      ->check(CLI::IsMember({"norm", "xi"}))
      ->capture_default_str();
  minimize->add_option("--starts", m_starts, "Number of multistart restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  minimize->add_option("--max-iters", m_max_iters, "Iteration cap per local search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  minimize->add_option("--tol", m_tol, "Convergence tolerance")->capture_default_str();
  minimize->add_option("--seed", m_seed, "Deterministic RNG seed")->capture_default_str();
  minimize->add_flag("--asymmetric", m_asymmetric,
                     "Search general node sets instead of symmetric ones");
  minimize->add_flag("--free-endpoints", m_free_endpoints,
                     "Do not pin the extreme nodes to -1 and 1");

  int t_table = 0;
  int t_kmax = 0;
  CLI::App* tables = app.add_subcommand("tables", "Reproduce the reference tables");
  tables->add_option("--table", t_table, "Table number (1-4)")->required();
  tables->add_option("--kmax", t_kmax, "Largest degree (0 = table default)");

  int c_k = 0;
  int c_samples = 201;
  NodeSourceOptions c_src;
  CLI::App* curve =
      app.add_subcommand("curve", "Sample barycentric coordinates along the curve");
  curve->add_option("-k,--degree", c_k, "Interpolation degree")->required();
  curve->add_option("--nodes", c_src.node_csv, "Comma-separated list of k+1 nodes");
  curve->add_flag("--regular", c_src.regular, "Use equispaced nodes");
  curve->add_flag("--chebyshev", c_src.chebyshev, "Use extended Chebyshev nodes");
  curve->add_option("--samples", c_samples, "Number of equispaced sample points")
      ->capture_default_str();

  // Allow global flags (e.g. --format) to appear after the subcommand name.
  for (CLI::App* sub : {analyze, minimize, tables, curve}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit cleanly; bad arguments exit 2
  }

  si::set_precision_bits(g.precision_bits);

  try {
    if (*analyze) return run_analyze(g, a_k, a_src);
    if (*minimize) {
      si::OptimizerConfig<Real> cfg;
      cfg.k = m_k;
      cfg.objective = (m_objective == "xi") ? si::Objective::Xi : si::Objective::Norm;
      cfg.symmetric = !m_asymmetric;
      cfg.fix_endpoints = !m_free_endpoints;
      cfg.starts = m_starts;
      cfg.max_iters = m_max_iters;
      cfg.tol = Real(m_tol);
      cfg.rng_seed = m_seed;
      return run_minimize(g, cfg, m_objective);
    }
    if (*tables) return run_tables(g, t_table, t_kmax);
    if (*curve) return run_curve(g, c_k, c_src, c_samples);
  } catch (const si::SingularSystem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const si::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
