#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "copnum/bounds.hpp"
#include "copnum/error.hpp"
#include "copnum/game.hpp"
#include "copnum/generators.hpp"
#include "copnum/graph_io.hpp"
#include "copnum/harness.hpp"
#include "copnum/policies.hpp"
#include "copnum/random.hpp"
#include "copnum/spectral.hpp"
#include "copnum/strategies.hpp"
#include "copnum/verify/criteria.hpp"

using json = nlohmann::json;
using namespace copnum;

namespace {

enum Exit : int { kOk = 0, kCriterionFailed = 1, kConfigError = 2, kBudgetExceeded = 3 };

struct Global {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::string format;  // empty: the subcommand default
  std::string out;
};

// Writes to --out when given, otherwise stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open " + path + " for writing");
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

json girth_json(const std::optional<std::uint32_t>& g) { return g ? json(*g) : json("inf"); }

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Vertex>(v));
    } catch (const std::exception&) {
      throw ConfigError("bad vertex '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

json row_json(const std::string& graph, const std::string& mode, const TrialRow& r) {
  return {{"graph", graph},
          {"mode", mode},
          {"epsilon", r.epsilon},
          {"trial", r.trial},
          {"seed", r.seed},
          {"size_C", r.size_c},
          {"start", r.start},
          {"ev_holds", r.ev_holds},
          {"matching_saturated", r.matching_saturated ? json(*r.matching_saturated) : json(nullptr)},
          {"captured", r.captured},
          {"cop_moves", r.cop_moves}};
}

// ---------------------------------------------------------------------------

int cmd_generate(const Global& gl, const std::string& source) {
  const Graph g = load_graph_source(source);
  const auto gd = girth(g);
  json side = {{"source", source},
               {"n", g.order()},
               {"m", g.size()},
               {"d", g.is_regular() ? json(g.max_degree()) : json(nullptr)},
               {"min_degree", g.min_degree()},
               {"max_degree", g.max_degree()},
               {"girth", girth_json(gd.girth)},
               {"connected", g.is_connected()},
               {"bipartite", g.is_bipartite()},
               {"lambda2", g.order() >= 2 ? json(lambda2(g).value) : json(nullptr)}};
  if (gl.out.empty()) {
    if (gl.format == "json") {
      side["graph"] = json::parse(to_graph_json(g));
      std::cout << side.dump(2) << "\n";
    } else {
      std::cout << to_edge_list(g);
    }
    return kOk;
  }
  {
    Sink sink(gl.out);
    sink.get() << (gl.format == "json" ? to_graph_json(g) : to_edge_list(g));
  }
  Sink meta(gl.out + ".meta.json");
  meta.get() << side.dump(2) << "\n";
  return kOk;
}

int cmd_girth(const Global& gl, const std::string& source) {
  const Graph g = load_graph_source(source);
  const auto gd = girth(g);
  Sink sink(gl.out);
  if (gl.format == "csv") {
    sink.get() << "girth,t,r\n" << (gd.girth ? std::to_string(*gd.girth) : "inf") << "," << gd.t << "," << gd.r
               << "\n";
  } else {
    sink.get() << json({{"girth", girth_json(gd.girth)}, {"t", gd.t}, {"r", gd.r}}).dump() << "\n";
  }
  return kOk;
}

int cmd_copnumber(const Global& gl, const std::string& source, std::size_t k_max) {
  const Graph g = load_graph_source(source);
  SolverOptions opts;
  if (gl.budget) opts.state_budget = *gl.budget;
  const auto c = cop_number_exact(g, k_max, opts);
  json j = {{"n", g.order()}, {"k_max", k_max}};
  if (c.value) {
    j["cop_number"] = *c.value;
    j["capture_time"] = capture_time(g, *c.value, opts);
  } else {
    j["cop_number"] = nullptr;
    j["note"] = "greater than k_max";
  }
  Sink sink(gl.out);
  if (gl.format == "csv") {
    sink.get() << "n,k_max,cop_number,capture_time\n"
               << g.order() << "," << k_max << "," << (c.value ? std::to_string(*c.value) : "") << ","
               << (c.value ? j["capture_time"].dump() : "") << "\n";
  } else {
    sink.get() << j.dump() << "\n";
  }
  return kOk;
}

struct SimulateArgs {
  std::string graph;
  std::string cops = "thm1";
  std::string placement;
  double epsilon = 1.0;
  bool clamp = false;
  std::string robber = "greedy";
  std::optional<std::uint32_t> max_turns;
  std::size_t k = 1;
};

int cmd_simulate(const Global& gl, const SimulateArgs& a) {
  const Graph g = load_graph_source(a.graph);
  const auto gd = girth(g);
  std::vector<Vertex> start;
  std::uint32_t bound = 0;
  std::unique_ptr<WinTable> table;
  std::unique_ptr<CopController> controller;

  if (a.cops == "thm1" || a.cops == "thm2") {
    const StrategyMode mode = parse_strategy_mode(a.cops);
    std::uint32_t t = 0;
    try {
      t = strategy_radius(g, gd, mode);
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
    bound = 2 * t + 1;
    if (a.placement.empty()) {
      try {
        start = sample_cop_set(g, gd, mode, a.epsilon, gl.seed, SampleOptions{a.clamp, true}).cops;
      } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
      }
    }
    if (mode == StrategyMode::Theorem1) {
      controller = std::make_unique<Theorem1Controller>(g, t);
    } else {
      controller = std::make_unique<Theorem2Controller>(g, t);
    }
  } else if (a.cops == "optimal") {
    SolverOptions opts;
    if (gl.budget) opts.state_budget = *gl.budget;
    table = std::make_unique<WinTable>(solve_k_cops(g, a.k, opts));
    if (a.placement.empty()) {
      auto best = table->best_placement();
      if (!best) throw ConfigError(std::to_string(a.k) + " cops cannot win on this graph");
      start = *best;
      bound = *table->placement_capture_time(start);
    }
    controller = std::make_unique<OptimalCops>(*table);
  } else if (a.cops == "chase") {
    controller = std::make_unique<ChaseCops>();
  } else if (a.cops == "stationary") {
    controller = std::make_unique<StationaryCops>();
  } else {
    throw ConfigError("unknown cop policy '" + a.cops + "' (thm1, thm2, optimal, chase, stationary)");
  }
  if (!a.placement.empty()) start = parse_vertex_list(a.placement);
  if (start.empty()) throw ConfigError("no cops placed");
  for (Vertex c : start) {
    if (!g.contains(c)) throw ConfigError("cop vertex " + std::to_string(c) + " out of range");
  }
  if (bound == 0) bound = static_cast<std::uint32_t>(g.order());
  const std::uint32_t turns = a.max_turns.value_or(bound);

  validate_robber_spec(a.robber);
  auto robber = make_robber(a.robber, *controller, mix64(gl.seed));
  const Outcome out = simulate(g, *controller, *robber, start, turns);

  Sink sink(gl.out);
  for (std::size_t i = 0; i < out.trace.size(); ++i) {
    const auto& c = out.trace[i];
    sink.get() << json({{"ply", i},
                        {"to_move", c.turn == Turn::Cops ? "cops" : "robber"},
                        {"cops", c.cops},
                        {"robber", c.robber}})
                      .dump()
               << "\n";
  }
  const char* forfeit = out.forfeit == Forfeit::Cops ? "cops" : out.forfeit == Forfeit::Robber ? "robber" : nullptr;
  sink.get() << json({{"result", out.captured ? "captured" : "escaped"},
                      {"cop_moves", out.cop_moves},
                      {"max_turns", turns},
                      {"forfeit", forfeit ? json(forfeit) : json(nullptr)},
                      {"cops", a.cops},
                      {"robber", robber->name()}})
                    .dump()
             << "\n";
  return kOk;
}

void print_estimate(const ExperimentConfig& cfg, const Graph& g) {
  if (cfg.mode != "thm1" && cfg.mode != "thm2") return;
  const auto gd = girth(g);
  const StrategyMode mode = parse_strategy_mode(cfg.mode);
  const std::uint32_t t = strategy_radius(g, gd, mode);
  TrialSetup setup{g, gd, mode, t, cfg.robber, cfg.max_turns.value_or(2 * t + 1),
                   SampleOptions{cfg.clamp, cfg.epsilon_floor}};
  const auto begin = std::chrono::steady_clock::now();
  (void)run_trial(setup, cfg.epsilon_grid.front(), 0, trial_seed(cfg.master_seed, 0));
  const double one = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  const double total = static_cast<double>(cfg.trials) * static_cast<double>(cfg.epsilon_grid.size());
  std::fprintf(stderr, "copnum: %.0f trials on n = %zu, about %.1fs single-threaded\n", total, g.order(),
               one * total);
}

int cmd_strategy(const Global& gl, ExperimentConfig cfg) {
  cfg.master_seed = gl.seed;
  const Graph g = load_graph_source(cfg.graph);
  print_estimate(cfg, g);
  const auto report = run_experiment(cfg, g);
  Sink sink(gl.out);
  if (gl.format == "csv") {
    write_csv(report, sink.get());
    return kOk;
  }
  for (const auto& r : report.rows) sink.get() << row_json(cfg.graph, cfg.mode, r).dump() << "\n";
  return kOk;
}

int cmd_spectral(const Global& gl, const std::string& source, double alpha, double slack, const std::string& phi_mode,
                 std::uint64_t samples) {
  const Graph g = load_graph_source(source);
  IsoOptions io;
  io.seed = gl.seed;
  io.samples = samples;
  if (gl.budget) io.budget = *gl.budget;
  if (phi_mode == "exact") io.mode = PhiMode::Exact;
  else if (phi_mode == "sampled") io.mode = PhiMode::Sampled;
  else if (phi_mode != "auto") throw ConfigError("--phi must be auto, exact or sampled");
  if (!(alpha > 0 && alpha < 1)) throw ConfigError("--alpha must lie in (0, 1)");

  const auto l2 = lambda2(g);
  const auto rep = lemma5_report(g, alpha, slack, io);
  json j = {{"n", rep.n},
            {"d", rep.d},
            {"lambda2", l2.value},
            {"lambda2_residual", l2.residual},
            {"lambda2_iterations", l2.iterations},
            {"alpha", rep.alpha},
            {"slack", rep.slack},
            {"phi_k", rep.k},
            {"phi", rep.phi.value()},
            {"phi_boundary", rep.phi.boundary},
            {"phi_size", rep.phi.size},
            {"phi_set", rep.phi.set},
            {"phi_provenance", rep.phi_exact ? "exact" : "sampled_upper_bound"},
            {"rhs", rep.rhs ? json(*rep.rhs) : json(nullptr)},
            {"status", std::string(to_string(rep.status))},
            {"notes", rep.notes}};
  Sink sink(gl.out);
  sink.get() << j.dump(2) << "\n";
  return kOk;
}

struct BoundsArgs {
  std::string graph;
  std::optional<std::uint64_t> n;
  std::optional<std::uint32_t> delta;
  std::optional<std::uint32_t> girth;
  std::optional<std::uint32_t> d;
  std::optional<std::uint64_t> q;
  double epsilon = 1.0;
};

int cmd_bounds(const Global& gl, const BoundsArgs& a) {
  BoundsInput in;
  in.epsilon = a.epsilon;
  if (!a.graph.empty()) {
    const Graph g = load_graph_source(a.graph);
    in.n = g.order();
    in.delta = static_cast<std::uint32_t>(g.min_degree());
    in.d = static_cast<std::uint32_t>(g.max_degree());
    in.girth = girth(g).girth;
  }
  if (a.n) in.n = *a.n;
  if (a.delta) in.delta = *a.delta;
  if (a.d) in.d = *a.d;
  if (a.girth) in.girth = *a.girth;
  in.q = a.q;
  if (in.girth && *in.girth < 3) throw ConfigError("girth must be at least 3");
  BoundEvaluation b;
  try {
    b = evaluate_bounds(in);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  auto opt = [](const auto& x) { return x ? json(*x) : json(nullptr); };
  json j = {{"n", in.n},
            {"delta", in.delta},
            {"girth", girth_json(in.girth)},
            {"d", in.d},
            {"q", opt(in.q)},
            {"epsilon", in.epsilon},
            {"frankl_lower", b.frankl_lower},
            {"frankl_ceiling", b.frankl_ceiling},
            {"thm1_upper_coeff", opt(b.thm1_upper_coeff)},
            {"thm1_upper", opt(b.thm1_upper)},
            {"cage_a", b.cage_a ? json({{"num", b.cage_a->num}, {"den", b.cage_a->den}}) : json(nullptr)},
            {"cage_upper", opt(b.cage_upper)},
            {"expected_cops", b.expected_cops},
            {"chernoff_k", b.chernoff_k},
            {"chernoff_tail", b.chernoff_tail}};
  Sink sink(gl.out);
  sink.get() << j.dump(2) << "\n";
  return kOk;
}

int cmd_experiment(const Global& gl, const std::string& config_path, ExperimentConfig flags, bool seed_given,
                   bool min_density) {
  ExperimentConfig cfg = flags;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config " + config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = parse_experiment_config(ss.str());
    cfg.threads = flags.threads;
  }
  if (seed_given) cfg.master_seed = gl.seed;
  if (!gl.out.empty()) cfg.output = gl.out;
  validate(cfg);
  const Graph g = load_graph_source(cfg.graph);
  print_estimate(cfg, g);

  if (min_density) {
    const auto est = estimate_min_cop_density(cfg, g);
    json j = {{"graph", cfg.graph},
              {"mode", cfg.mode},
              {"threshold", cfg.success_threshold},
              {"epsilon", est.epsilon},
              {"mean_size_C", est.mean_size},
              {"capture_rate", est.capture.rate},
              {"capture_lo", est.capture.lo},
              {"capture_hi", est.capture.hi},
              {"terminal_point", est.appended_terminal},
              {"master_seed", cfg.master_seed}};
    Sink sink(cfg.output);
    sink.get() << j.dump(2) << "\n";
    return kOk;
  }
  const auto report = run_experiment(cfg, g);
  Sink sink(cfg.output);
  if (gl.format == "json") write_json(report, sink.get());
  else write_csv(report, sink.get());
  return kOk;
}

int cmd_regress(const Global& gl, const std::string& ids_text, bool quick) {
  auto options = verify::default_criteria_options();
  if (gl.budget) options.state_budget = *gl.budget;
  if (quick) {
    options.max_enumerated_order = 6;
    options.thm1_seeds = 50;
    options.thm2_seeds = 3;
    options.thm2_starts_per_seed = 2;
    options.lemma4_instances = 100;
    options.chernoff_seeds = 100;
  }
  std::vector<int> ids = verify::criterion_ids();
  if (!ids_text.empty()) {
    ids.clear();
    for (Vertex v : parse_vertex_list(ids_text)) ids.push_back(static_cast<int>(v));
  }
  const auto results = verify::run_criteria(ids, options);
  bool failed = false;
  Sink sink(gl.out);
  for (const auto& r : results) {
    if (gl.format == "json") {
      sink.get() << json({{"id", r.id},
                          {"title", r.title},
                          {"status", std::string(verify::to_string(r.status))},
                          {"seconds", r.seconds},
                          {"detail", r.detail}})
                        .dump()
                 << "\n";
    } else {
      sink.get() << verify::format_result(r) << "\n";
    }
    sink.get().flush();
    failed = failed || r.status == verify::Status::Fail;
  }
  return failed ? kCriterionFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"copnum: cops and robbers on high-girth graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  auto* seed_opt = app.add_option("--seed", gl.seed, "master seed")->capture_default_str();
  app.add_option("--budget", gl.budget, "state / subset budget for exact computations");
  app.add_option("--format", gl.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", gl.out, "output path (default stdout)");

  std::string graph;
  auto* generate = app.add_subcommand("generate", "build a graph; writes an edge list and a .meta.json sidecar");
  generate->add_option("graph", graph, "named:<name> | lps:p,q | random:d,n,g,seed | file:<path>")->required();

  auto* girth_cmd = app.add_subcommand("girth", "girth and its 4t + 3 + r decomposition");
  girth_cmd->add_option("graph", graph)->required();

  std::size_t k_max = 4;
  auto* copnumber = app.add_subcommand("copnumber", "exact cop number by retrograde analysis");
  copnumber->add_option("graph", graph)->required();
  copnumber->add_option("--k-max", k_max)->capture_default_str();

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "play one game; JSON-lines trace");
  simulate_cmd->add_option("graph", sim.graph)->required();
  simulate_cmd->add_option("--cops", sim.cops, "thm1 | thm2 | optimal | chase | stationary")->capture_default_str();
  simulate_cmd->add_option("--placement", sim.placement, "comma-separated cop vertices");
  simulate_cmd->add_option("--epsilon", sim.epsilon, "density parameter for thm1/thm2")->capture_default_str();
  simulate_cmd->add_flag("--clamp", sim.clamp, "cap the density at 1");
  simulate_cmd->add_option("--robber", sim.robber, "greedy | random | lookahead[:depth|full] | optimal")
      ->capture_default_str();
  simulate_cmd->add_option("--max-turns", sim.max_turns);
  simulate_cmd->add_option("-k", sim.k, "cops for --cops optimal")->capture_default_str();

  ExperimentConfig strat;
  auto* strategy = app.add_subcommand("strategy", "randomized strategy trials; one JSON record per trial");
  strategy->add_option("graph", strat.graph)->required();
  strategy->add_option("--mode", strat.mode)->check(CLI::IsMember({"thm1", "thm2"}))->capture_default_str();
  strategy->add_option("--epsilon", strat.epsilon_grid, "one or more increasing values")->capture_default_str();
  strategy->add_option("--trials", strat.trials)->capture_default_str();
  strategy->add_option("--robber", strat.robber)->capture_default_str();
  strategy->add_option("--max-turns", strat.max_turns);
  strategy->add_flag("--clamp", strat.clamp);
  strategy->add_flag("!--no-epsilon-floor", strat.epsilon_floor);
  strategy->add_option("--threads", strat.threads);

  double alpha = 0.5;
  double slack = 1.0;
  std::string phi_mode = "auto";
  std::uint64_t samples = 100'000;
  auto* spectral = app.add_subcommand("spectral", "lambda2, isoperimetric profile and the spectral Phi bound");
  spectral->add_option("graph", graph)->required();
  spectral->add_option("--alpha", alpha)->capture_default_str();
  spectral->add_option("--slack", slack)->capture_default_str();
  spectral->add_option("--phi", phi_mode, "auto | exact | sampled")->capture_default_str();
  spectral->add_option("--samples", samples)->capture_default_str();

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "closed-form cop number bounds");
  bounds->add_option("--graph", ba.graph, "read n, delta, d and girth from a graph");
  bounds->add_option("--n", ba.n);
  bounds->add_option("--delta", ba.delta);
  bounds->add_option("--girth", ba.girth);
  bounds->add_option("--d", ba.d);
  bounds->add_option("--q", ba.q, "odd prime power with d <= q");
  bounds->add_option("--epsilon", ba.epsilon)->capture_default_str();

  ExperimentConfig exp;
  std::string config_path;
  bool min_density = false;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiment from a JSON config or flags");
  experiment->add_option("--config", config_path, "JSON file with ExperimentConfig fields");
  experiment->add_option("--graph", exp.graph);
  experiment->add_option("--mode", exp.mode)->capture_default_str();
  experiment->add_option("--epsilon", exp.epsilon_grid)->capture_default_str();
  experiment->add_option("--trials", exp.trials)->capture_default_str();
  experiment->add_option("--robber", exp.robber)->capture_default_str();
  experiment->add_option("--threshold", exp.success_threshold)->capture_default_str();
  experiment->add_option("--max-turns", exp.max_turns);
  experiment->add_flag("--clamp", exp.clamp);
  experiment->add_flag("!--no-epsilon-floor", exp.epsilon_floor);
  experiment->add_option("--k-max", exp.k_max)->capture_default_str();
  experiment->add_option("--threads", exp.threads);
  experiment->add_flag("--min-density", min_density, "report the smallest grid epsilon meeting --threshold");

  std::string ids;
  bool quick = false;
  auto* regress = app.add_subcommand("regress", "run the acceptance criteria; exit 1 on any failure");
  regress->add_option("--criteria", ids, "comma-separated ids (default all)");
  regress->add_flag("--quick", quick, "reduced sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*generate) return cmd_generate(gl, graph);
    if (*girth_cmd) return cmd_girth(gl, graph);
    if (*copnumber) return cmd_copnumber(gl, graph, k_max);
    if (*simulate_cmd) return cmd_simulate(gl, sim);
    if (*strategy) return cmd_strategy(gl, strat);
    if (*spectral) return cmd_spectral(gl, graph, alpha, slack, phi_mode, samples);
    if (*bounds) return cmd_bounds(gl, ba);
    if (*experiment) {
      if (config_path.empty() && exp.graph.empty()) throw ConfigError("experiment needs --config or --graph");
      if (config_path.empty()) exp.master_seed = gl.seed;
      return cmd_experiment(gl, config_path, exp, seed_opt->count() > 0, min_density);
    }
    if (*regress) return cmd_regress(gl, ids, quick);
  } catch (const BudgetExceeded& e) {
    std::cerr << "copnum: budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const Error& e) {
    std::cerr << "copnum: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "copnum: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
