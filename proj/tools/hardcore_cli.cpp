// Command-line front door for the hardcore-model verification toolkit.
//
// Subcommands: fixed-point, si-verify, lb-convergence, saw-verify, mix,
// proof-check. Every run emits one JSON record {command, params, seed,
// version, duration_ms, result}; tabular payloads can be emitted as CSV
// instead. Exit code 0 means every asserted bound passed, 1 means at least
// one violation, 2 means a usage or size-guard error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hardcore/exact.hpp"
#include "hardcore/glauber.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/graph_gen.hpp"
#include "hardcore/saw.hpp"
#include "hardcore/tree.hpp"
#include "hardcore/uniqueness.hpp"
#include "hardcore/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using json = nlohmann::ordered_json;
using namespace hardcore;

namespace {

struct CommonOpts {
  std::string seed_text;
  int threads = 0;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts* common) {
  cmd->add_option("--seed", common->seed_text, "64-bit seed, decimal or 0x-hex");
  cmd->add_option("--threads", common->threads, "worker threads (0 = library default)");
  cmd->add_option("--out", common->out_path, "write the record to this file instead of stdout");
  cmd->add_option("--format", common->format, "json or csv (csv only for tabular payloads)")
      ->check(CLI::IsMember({"json", "csv"}));
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t pos = 0;
  int base = 10;
  std::string body = text;
  if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) {
    base = 16;
    body = body.substr(2);
  }
  std::uint64_t value = std::stoull(body, &pos, base);
  if (pos != body.size()) throw CLI::ValidationError("--seed", "not a valid 64-bit seed");
  return value;
}

struct Emitter {
  std::string command;
  json params = json::object();
  std::optional<std::uint64_t> seed;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  explicit Emitter(const CommonOpts& common) {
    if (!common.seed_text.empty()) seed = parse_seed(common.seed_text);
  }

  int write(const CommonOpts& common, const json& result, const std::string& csv, bool pass) {
    json record;
    record["command"] = command;
    record["params"] = params;
    if (seed)
      record["seed"] = *seed;
    else
      record["seed"] = nullptr;
    record["version"] = kVersion;
    record["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - started)
                                .count();
    record["result"] = result;

    std::string payload;
    if (common.format == "csv") {
      if (csv.empty())
        throw CLI::ValidationError("--format", "csv is not available for this subcommand");
      payload = csv;
    } else {
      payload = record.dump(2) + "\n";
    }
    if (common.out_path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(common.out_path);
      if (!out) throw std::runtime_error("cannot open output file: " + common.out_path);
      out << payload;
    }
    return pass ? 0 : 1;
  }
};

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

// fugacity resolution shared by the graph-reading subcommands
struct FugacityOpts {
  double lambda = -1.0;
  double delta = -1.0;
  int degree_override = 0;
};

void add_fugacity(CLI::App* cmd, FugacityOpts* f) {
  auto* l = cmd->add_option("--lambda", f->lambda, "fugacity > 0");
  auto* d = cmd->add_option("--delta", f->delta,
                            "slack in (0,1]; resolves lambda = (1-delta)*lambda_c(Delta)");
  cmd->add_option("--degree", f->degree_override,
                  "Delta used for lambda_c resolution and bounds (default: measured, min 3)");
  l->excludes(d);
  d->excludes(l);
}

int effective_degree(const Graph& g, int override_degree) {
  if (override_degree > 0) return std::max(override_degree, 3);
  return std::max(g.max_degree(), 3);
}

double resolve_lambda(const Graph& g, const FugacityOpts& f, json* params) {
  int Delta = effective_degree(g, f.degree_override);
  double lambda;
  if (f.lambda > 0) {
    lambda = f.lambda;
  } else if (f.delta >= 0) {
    if (f.delta > 1) throw CLI::ValidationError("--delta", "must lie in [0,1]");
    lambda = (1.0 - f.delta) * critical_fugacity(Delta);
  } else {
    throw CLI::ValidationError("fugacity", "one of --lambda / --delta is required");
  }
  (*params)["lambda"] = lambda;
  (*params)["degree_for_bounds"] = Delta;
  return lambda;
}

json pinning_to_json(const Pinning& p) {
  json out = json::array();
  for (auto [v, val] : p.assignments()) out.push_back(json{{"vertex", v}, {"value", val}});
  return out;
}

// ---------------------------------------------------------------- fixed-point

int cmd_fixed_point(const CommonOpts& common, int Delta, double delta) {
  Emitter em(common);
  em.command = "fixed-point";
  em.params = {{"Delta", Delta}, {"delta", delta}};
  apply_threads(common.threads);

  auto params = params_from_slack(Delta, delta);
  auto fp = fixed_point(params.d, params.lambda);
  json result;
  result["lambda_c"] = params.lambda_c;
  result["lambda"] = params.lambda;
  result["d"] = params.d;
  result["x_hat"] = fp.x_hat;
  result["residual"] = fp.residual;
  result["bisection_steps"] = fp.iterations;
  if (delta > 0 && delta < 1) {
    auto si = si_upper_constant(params);
    result["si_exact"] = si.exact;
    result["si_closed_form"] = si.closed_form;
    result["x_hat_upper_bound"] = fixed_point_upper_bound(params.d, delta);
    result["slack_roundtrip"] = slack_of_fixed_point(params.d, fp.x_hat);
  } else {
    result["si_exact"] = nullptr;  // diverges at delta = 0
    result["si_closed_form"] = nullptr;
  }
  return em.write(common, result, "", true);
}

// ------------------------------------------------------------------ si-verify

int cmd_si_verify_graph(const CommonOpts& common, const std::string& path,
                        const FugacityOpts& fug) {
  Emitter em(common);
  em.command = "si-verify";
  em.params = {{"mode", "graph"}, {"graph", path}};
  apply_threads(common.threads);

  Graph g = load_graph_file(path);
  double lambda = resolve_lambda(g, fug, &em.params);
  int Delta = effective_degree(g, fug.degree_override);

  auto worst = worst_pinning_si(g, lambda);
  json result;
  result["n"] = g.num_vertices();
  result["max_degree"] = g.max_degree();
  result["worst_inf_norm"] = worst.report.inf_norm;
  result["worst_eigenvalue"] = worst.report.max_eigenvalue;
  result["witness_pinning"] = pinning_to_json(worst.witness_inf_norm);
  result["pinnings_scanned"] = worst.pinnings_scanned;

  bool pass = true;
  double lc = critical_fugacity(Delta);
  if (lambda <= lc) {
    auto params = params_from_fugacity(Delta, lambda);
    if (params.delta > 0) {
      auto si = si_upper_constant(params);
      result["bound"] = si.exact;
      result["bound_closed_form"] = si.closed_form;
      pass = worst.report.inf_norm <= si.exact + 1e-9;
      result["pass"] = pass;
      if (!pass)
        result["failures"] = json::array({json{{"check", "inf_norm <= bound"},
                                               {"observed", worst.report.inf_norm},
                                               {"bound", si.exact}}});
    } else {
      result["bound"] = nullptr;  // critical point: no finite subcritical bound
      result["pass"] = true;
    }
  } else {
    result["bound"] = nullptr;  // supercritical fugacity: theory does not apply
    result["bound_applicable"] = false;
    result["pass"] = true;
  }
  return em.write(common, result, "", pass);
}

int cmd_si_verify_tree_sweep(const CommonOpts& common, int d, int max_n,
                             const FugacityOpts& fug) {
  Emitter em(common);
  em.command = "si-verify";
  em.params = {{"mode", "tree-sweep"}, {"d", d}, {"max_n", max_n}};
  apply_threads(common.threads);

  HardcoreParams params{};
  if (fug.delta >= 0)
    params = params_from_slack(d + 1, fug.delta);
  else if (fug.lambda > 0)
    params = params_from_fugacity(d + 1, fug.lambda);
  else
    throw CLI::ValidationError("si-verify", "tree sweep needs --delta or --lambda");
  em.params["delta"] = params.delta;
  double x_hat = fixed_point(d, params.lambda).x_hat;
  const double bound_children = 1.0 / (1.0 - d * x_hat);
  const double bound_degree = (1.0 + x_hat) / (1.0 - d * x_hat);
  em.params["lambda"] = params.lambda;

  auto sweep = [&](const std::vector<RootedTree>& trees) {
    double worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
#endif
    for (std::size_t i = 0; i < trees.size(); ++i)
      worst = std::max(worst, root_influence_sum(trees[i], params.lambda).phi);
    return worst;
  };

  auto children_family = enumerate_rooted_trees(max_n, d);
  auto degree_family = enumerate_rooted_trees(max_n, d, d + 1);
  double worst_children = sweep(children_family);
  double worst_degree = sweep(degree_family);

  bool pass_children = worst_children <= bound_children + 1e-10;
  bool pass_degree = worst_degree <= bound_degree + 1e-10;
  json result;
  result["x_hat"] = x_hat;
  result["children_family"] = {{"trees", children_family.size()},
                               {"max_phi", worst_children},
                               {"bound", bound_children},
                               {"pass", pass_children}};
  result["degree_family"] = {{"trees", degree_family.size()},
                             {"max_phi", worst_degree},
                             {"bound", bound_degree},
                             {"pass", pass_degree}};
  bool pass = pass_children && pass_degree;
  result["pass"] = pass;
  return em.write(common, result, "", pass);
}

// ------------------------------------------------------------- lb-convergence

int cmd_lb_convergence(const CommonOpts& common, int Delta, double delta, int h_max) {
  Emitter em(common);
  em.command = "lb-convergence";
  em.params = {{"Delta", Delta}, {"delta", delta}, {"h_max", h_max}};
  apply_threads(common.threads);

  auto params = params_from_slack(Delta, delta);
  double x_hat = fixed_point(params.d, params.lambda).x_hat;
  double limit = (1.0 + x_hat) / (1.0 - params.d * x_hat);

  json rows = json::array();
  std::ostringstream csv;
  csv << "h,phi,phi_built_tree,gap_to_limit\n";
  for (int h = 1; h <= h_max; ++h) {
    double phi = truncated_influence_series(Delta, h, params.lambda).phi;
    std::optional<double> built;
    if (truncated_tree_size(Delta, h) <= 100000)
      built = root_influence_sum(build_truncated_regular_tree(Delta, h), params.lambda).phi;
    json row = {{"h", h}, {"phi", phi}};
    row["phi_built_tree"] = built ? json(*built) : json(nullptr);
    row["gap_to_limit"] = limit - phi;
    rows.push_back(row);
    csv << h << "," << std::setprecision(17) << phi << ",";
    if (built)
      csv << *built;
    else
      csv << "";
    csv << "," << (limit - phi) << "\n";
  }
  json result;
  result["lambda"] = params.lambda;
  result["x_hat"] = x_hat;
  result["limit"] = limit;
  result["rows"] = rows;
  return em.write(common, result, csv.str(), true);
}

// ----------------------------------------------------------------- saw-verify

int cmd_saw_verify(const CommonOpts& common, int max_n, int max_degree,
                   std::vector<double> lambdas) {
  Emitter em(common);
  em.command = "saw-verify";
  em.params = {{"max_n", max_n}, {"max_degree", max_degree}, {"lambda", lambdas}};
  apply_threads(common.threads);
  if (lambdas.empty()) lambdas = {0.5, 1.0, 4.0};

  struct Case {
    const Graph* g;
    int root;
    double lambda;
    bool acyclic;
  };
  std::vector<Graph> graphs;
  for (int n = 1; n <= max_n; ++n)
    for (Graph& g : enumerate_graphs(n, max_degree, true)) graphs.push_back(std::move(g));
  std::vector<Case> cases;
  for (const Graph& g : graphs) {
    bool acyclic = g.num_edges() == g.num_vertices() - 1;
    for (double lambda : lambdas)
      for (int u = 0; u < g.num_vertices(); ++u) cases.push_back({&g, u, lambda, acyclic});
  }

  std::vector<std::pair<std::size_t, json>> violations;  // keyed for deterministic order
  double min_slack = std::numeric_limits<double>::infinity();
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<std::pair<std::size_t, json>> local;
    double local_min = std::numeric_limits<double>::infinity();
#ifdef _OPENMP
#pragma omp for schedule(dynamic) nowait
#endif
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const Case& c = cases[i];
      auto rep = verify_saw_domination(*c.g, c.lambda, c.root);
      double slack = rep.tree_sum - rep.graph_row_sum;
      local_min = std::min(local_min, slack);
      bool bad = !rep.dominated || (c.acyclic && std::fabs(slack) > 1e-12);
      if (bad)
        local.emplace_back(i, json{{"graph", serialize_graph(*c.g)},
                                   {"root", c.root},
                                   {"lambda", c.lambda},
                                   {"graph_row_sum", rep.graph_row_sum},
                                   {"tree_sum", rep.tree_sum}});
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    {
      violations.insert(violations.end(), local.begin(), local.end());
      min_slack = std::min(min_slack, local_min);
    }
  }
  std::sort(violations.begin(), violations.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  json result;
  result["graphs"] = graphs.size();
  result["cases"] = cases.size();
  result["min_domination_slack"] = min_slack;
  json vio = json::array();
  for (const auto& [idx, v] : violations) {
    (void)idx;
    vio.push_back(v);
  }
  result["violations"] = vio;
  bool pass = violations.empty();
  result["pass"] = pass;
  return em.write(common, result, "", pass);
}

// ------------------------------------------------------------------------ mix

Configuration greedy_independent_set(const Graph& g) {
  Configuration c(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    bool blocked = false;
    for (int w : g.neighbors(v))
      if (w < v && c.test(w)) blocked = true;
    if (!blocked) c.set(v, true);
  }
  return c;
}

int cmd_mix(const CommonOpts& common, const std::string& path, const FugacityOpts& fug,
            bool exact, std::int64_t horizon, int reps, const std::string& trajectory_path) {
  Emitter em(common);
  em.command = "mix";
  em.params = {{"graph", path}, {"mode", exact ? "exact" : "simulate"}};
  apply_threads(common.threads);

  Graph g = load_graph_file(path);
  double lambda = resolve_lambda(g, fug, &em.params);
  json result;
  result["n"] = g.num_vertices();
  result["max_degree"] = g.max_degree();
  if (g.max_degree() >= 3) {
    result["theoretical_exponent"] = mixing_exponent(g.max_degree());
    auto rho = 2.0 * (1.0 + 2.0 / (g.max_degree() - 2));
    if (static_cast<double>(g.num_vertices()) >= rho * 24.0 / 23.0) {
      auto mb = mixing_bound(g.max_degree(), g.num_vertices());
      result["log_exp_integral_closed"] = mb.log_bound_closed;
      result["log_exp_integral_quadrature"] = mb.log_bound_quadrature;
    }
  } else {
    result["theoretical_exponent"] = nullptr;  // exponent formula needs Delta >= 3
  }

  std::string csv;
  if (exact) {
    TransitionMatrix m;
    try {
      m = transition_matrix(g, lambda);
    } catch (const SizeLimitError& e) {
      throw SizeLimitError(std::string(e.what()) + "; rerun with --simulate");
    }
    auto mix = exact_mixing_time(m);
    auto spec = spectral_quantities(m);
    result["states"] = m.dim;
    result["t_mix"] = mix.t_mix;
    result["worst_tv"] = mix.worst_tv;
    result["second_eigenvalue_modulus"] = spec.second_modulus;
  } else {
    if (!em.seed) throw CLI::ValidationError("--seed", "simulation requires an explicit seed");
    std::vector<Configuration> starts{Configuration(g.num_vertices()),
                                      greedy_independent_set(g)};
    auto curve = empirical_tv_curve(g, lambda, starts, reps, horizon, *em.seed);
    result["heuristic"] = curve.heuristic;
    result["note"] = "occupancy-discrepancy proxy between coupled chains; not a TV bound";
    result["reps"] = reps;
    json pts = json::array();
    std::ostringstream csvs;
    csvs << "t,proxy,half_width\n";
    for (const auto& pt : curve.points) {
      pts.push_back(json{{"t", pt.t}, {"proxy", pt.proxy}, {"half_width", pt.half_width}});
      csvs << pt.t << "," << std::setprecision(17) << pt.proxy << "," << pt.half_width << "\n";
    }
    result["curve"] = pts;
    csv = csvs.str();
    if (!trajectory_path.empty()) {
      std::vector<StepRecord> traj;
      run_chain(g, lambda, starts[0], horizon, mix_seed(*em.seed, 0), &traj);
      std::ofstream out(trajectory_path);
      if (!out) throw std::runtime_error("cannot open trajectory file: " + trajectory_path);
      out << trajectory_csv(traj);
    }
  }
  return em.write(common, result, csv, true);
}

// ---------------------------------------------------------------- proof-check

int cmd_proof_check(const CommonOpts& common, int d, double delta, int grid) {
  Emitter em(common);
  em.command = "proof-check";
  em.params = {{"d", d}, {"delta", delta}, {"grid", grid}};
  apply_threads(common.threads);
  if (!(delta > 0.0 && delta < 1.0))
    throw CLI::ValidationError("--delta", "must lie in (0,1); f diverges at delta = 0");

  auto params = params_from_slack(d + 1, delta);
  double x_hat = fixed_point(d, params.lambda).x_hat;
  double f_at_hat = proof_functions(d, params.lambda, x_hat).f;
  double g_at_hat = proof_functions(d, params.lambda, x_hat).g;

  double max_validity = -std::numeric_limits<double>::infinity();
  double argmax_f = 0.0, max_f = -std::numeric_limits<double>::infinity();
  double min_g = std::numeric_limits<double>::infinity();
  double max_identity_residual = 0.0;
  for (int i = 0; i <= grid; ++i) {
    double x = static_cast<double>(i) / grid;
    auto pf = proof_functions(d, params.lambda, x);
    max_validity = std::max(max_validity, pf.validity_lhs);
    if (pf.f > max_f) {
      max_f = pf.f;
      argmax_f = x;
    }
    min_g = std::min(min_g, pf.g);
    if (x < 1.0)
      max_identity_residual = std::max(
          max_identity_residual, std::fabs(1.0 / pf.f - (1.0 - d * params.lambda / pf.g)));
  }

  bool validity_ok = max_validity < 1.0;
  bool argmax_ok = std::fabs(argmax_f - x_hat) <= 1.5 / grid;
  bool identity_ok = max_identity_residual <= 1e-12;
  bool f_max_ok = max_f <= f_at_hat + 1e-9;
  bool g_min_ok = min_g >= g_at_hat - 1e-9;
  bool pass = validity_ok && argmax_ok && identity_ok && f_max_ok && g_min_ok;

  json result;
  result["lambda"] = params.lambda;
  result["x_hat"] = x_hat;
  result["max_validity_lhs"] = max_validity;
  result["argmax_f"] = argmax_f;
  result["f_at_x_hat"] = f_at_hat;
  result["max_identity_residual"] = max_identity_residual;
  result["checks"] = {{"validity_below_one", validity_ok},
                      {"argmax_f_at_x_hat", argmax_ok},
                      {"reciprocal_identity", identity_ok},
                      {"f_maximized_at_x_hat", f_max_ok},
                      {"g_minimized_at_x_hat", g_min_ok}};
  result["pass"] = pass;
  if (!pass) {
    json fails = json::array();
    for (auto& [k, v] : result["checks"].items())
      if (!v.get<bool>()) fails.push_back(k);
    result["failures"] = fails;
  }
  return em.write(common, result, "", pass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hardcore model toolkit: exact oracles, tree recursions, SAW trees, Glauber dynamics"};
  app.require_subcommand(1);

  CommonOpts common;

  // fixed-point
  auto* fp = app.add_subcommand("fixed-point", "tree-recursion fixed point and SI constants");
  int fp_delta_cap = 3;
  double fp_slack = 0.0;
  fp->add_option("--Delta", fp_delta_cap, "maximum degree, >= 3")->required()->check(CLI::Range(3, 1000));
  fp->add_option("--delta", fp_slack, "slack in [0,1]")->required()->check(CLI::Range(0.0, 1.0));
  add_common(fp, &common);

  // si-verify
  auto* sv = app.add_subcommand("si-verify", "worst-pinning scan or exhaustive tree sweep");
  std::string sv_graph;
  bool sv_tree_sweep = false;
  int sv_d = 2, sv_max_n = 10;
  FugacityOpts sv_fug;
  sv->add_option("--graph", sv_graph, "edge-list file");
  sv->add_flag("--tree-sweep", sv_tree_sweep, "sweep all bounded-degree rooted trees instead");
  sv->add_option("--d", sv_d, "children bound d for the tree sweep")->check(CLI::Range(2, 8));
  sv->add_option("--max-n", sv_max_n, "tree sweep size cap")->check(CLI::Range(1, 14));
  add_fugacity(sv, &sv_fug);
  add_common(sv, &common);

  // lb-convergence
  auto* lb = app.add_subcommand("lb-convergence", "Phi(T_{Delta,h}) series vs the optimal constant");
  int lb_delta_cap = 3, lb_h_max = 8;
  double lb_slack = 0.75;
  lb->add_option("--Delta", lb_delta_cap)->required()->check(CLI::Range(3, 1000));
  lb->add_option("--delta", lb_slack)->required()->check(CLI::Range(0.0, 1.0));
  lb->add_option("--h-max", lb_h_max)->required()->check(CLI::Range(1, 100000));
  add_common(lb, &common);

  // saw-verify
  auto* saw = app.add_subcommand("saw-verify", "exhaustive SAW-tree domination sweep");
  int saw_max_n = 7, saw_max_degree = 3;
  std::vector<double> saw_lambdas;
  saw->add_option("--max-n", saw_max_n)->check(CLI::Range(1, 10));
  saw->add_option("--max-degree", saw_max_degree)->check(CLI::Range(1, 9));
  saw->add_option("--lambda", saw_lambdas, "fugacities to sweep (repeatable)");
  add_common(saw, &common);

  // mix
  auto* mix = app.add_subcommand("mix", "exact mixing time or heuristic convergence curve");
  std::string mix_graph, mix_traj;
  bool mix_exact = false, mix_sim = false;
  std::int64_t mix_horizon = 1000;
  int mix_reps = 64;
  FugacityOpts mix_fug;
  mix->add_option("--graph", mix_graph)->required();
  auto* fe = mix->add_flag("--exact", mix_exact, "dense transition-matrix computation");
  auto* fs = mix->add_flag("--simulate", mix_sim, "labeled heuristic proxy curve");
  fe->excludes(fs);
  fs->excludes(fe);
  mix->add_option("--horizon", mix_horizon, "steps for --simulate")->check(CLI::Range(0, 100000000));
  mix->add_option("--reps", mix_reps, "replicas for --simulate")->check(CLI::Range(1, 1000000));
  mix->add_option("--trajectory", mix_traj, "dump one replica trajectory CSV here");
  add_fugacity(mix, &mix_fug);
  add_common(mix, &common);

  // proof-check
  auto* pc = app.add_subcommand("proof-check", "grid checks of the f/g/h proof functions");
  int pc_d = 2, pc_grid = 10000;
  double pc_delta = 0.75;
  pc->add_option("--d", pc_d)->required()->check(CLI::Range(2, 999));
  pc->add_option("--delta", pc_delta)->required();
  pc->add_option("--grid", pc_grid)->check(CLI::Range(10, 100000000));
  add_common(pc, &common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message or help text
    return code == 0 ? 0 : 2;
  }

  try {
    if (fp->parsed()) return cmd_fixed_point(common, fp_delta_cap, fp_slack);
    if (sv->parsed()) {
      if (sv_tree_sweep && !sv_graph.empty())
        throw CLI::ValidationError("si-verify", "--graph and --tree-sweep are exclusive");
      if (!sv_tree_sweep && sv_graph.empty())
        throw CLI::ValidationError("si-verify", "pass --graph FILE or --tree-sweep");
      if (sv_tree_sweep) return cmd_si_verify_tree_sweep(common, sv_d, sv_max_n, sv_fug);
      return cmd_si_verify_graph(common, sv_graph, sv_fug);
    }
    if (lb->parsed()) return cmd_lb_convergence(common, lb_delta_cap, lb_slack, lb_h_max);
    if (saw->parsed()) return cmd_saw_verify(common, saw_max_n, saw_max_degree, saw_lambdas);
    if (mix->parsed()) {
      if (mix_exact == mix_sim)
        throw CLI::ValidationError("mix", "pass exactly one of --exact / --simulate");
      return cmd_mix(common, mix_graph, mix_fug, mix_exact, mix_horizon, mix_reps, mix_traj);
    }
    if (pc->parsed()) return cmd_proof_check(common, pc_d, pc_delta, pc_grid);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeLimitError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
