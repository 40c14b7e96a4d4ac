#include "copnum/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "copnum/error.hpp"
#include "copnum/game.hpp"
#include "copnum/generators.hpp"
#include "copnum/graph_io.hpp"
#include "copnum/parallel.hpp"
#include "copnum/policies.hpp"
#include "copnum/random.hpp"

namespace copnum {

using nlohmann::json;

namespace {

std::vector<std::uint64_t> parse_uints(std::string_view text, std::size_t count, std::string_view what) {
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto token = text.substr(0, comma);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ConfigError("bad number '" + std::string(token) + "' in " + std::string(what));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.size() != count) {
    throw ConfigError(std::string(what) + " expects " + std::to_string(count) + " comma-separated values");
  }
  return out;
}

}  // namespace

Graph load_graph_source(std::string_view source) {
  auto colon = source.find(':');
  std::string_view scheme = colon == std::string_view::npos ? "named" : source.substr(0, colon);
  std::string_view arg = colon == std::string_view::npos ? source : source.substr(colon + 1);
  try {
    if (scheme == "named") return named_graph(arg);
    if (scheme == "lps") {
      auto v = parse_uints(arg, 2, "lps:<p>,<q>");
      return lps_graph({static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1])}).graph;
    }
    if (scheme == "file") return load_graph_file(std::string(arg));
    if (scheme == "random") {
      auto v = parse_uints(arg, 4, "random:<d>,<n>,<g_min>,<seed>");
      return random_regular_girth(static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1]),
                                  static_cast<std::uint32_t>(v[2]), v[3]);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("graph source '" + std::string(source) + "': " + e.what());
  }
  throw ConfigError("unknown graph source scheme '" + std::string(scheme) +
                    "' (expected named | lps | file | random)");
}

// ---------------------------------------------------------------------------

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& key = it.key();
      const auto& v = it.value();
      if (key == "graph") c.graph = v.get<std::string>();
      else if (key == "mode") c.mode = v.get<std::string>();
      else if (key == "epsilon_grid") c.epsilon_grid = v.get<std::vector<double>>();
      else if (key == "trials") c.trials = v.get<std::uint32_t>();
      else if (key == "robber") c.robber = v.get<std::string>();
      else if (key == "master_seed") c.master_seed = v.get<std::uint64_t>();
      else if (key == "success_threshold") c.success_threshold = v.get<double>();
      else if (key == "output") c.output = v.get<std::string>();
      else if (key == "max_turns") c.max_turns = v.is_null() ? std::nullopt : std::optional(v.get<std::uint32_t>());
      else if (key == "clamp") c.clamp = v.get<bool>();
      else if (key == "epsilon_floor") c.epsilon_floor = v.get<bool>();
      else if (key == "k_max") c.k_max = v.get<std::uint32_t>();
      else if (key == "state_budget") c.state_budget = v.get<std::uint64_t>();
      else if (key == "threads") c.threads = v.get<std::size_t>();
      else throw ConfigError("unknown config field '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  return c;
}

std::string experiment_config_json(const ExperimentConfig& c) {
  json j;
  j["graph"] = c.graph;
  j["mode"] = c.mode;
  j["epsilon_grid"] = c.epsilon_grid;
  j["trials"] = c.trials;
  j["robber"] = c.robber;
  j["master_seed"] = c.master_seed;
  j["success_threshold"] = c.success_threshold;
  j["output"] = c.output;
  j["max_turns"] = c.max_turns ? json(*c.max_turns) : json(nullptr);
  j["clamp"] = c.clamp;
  j["epsilon_floor"] = c.epsilon_floor;
  j["k_max"] = c.k_max;
  j["state_budget"] = c.state_budget;
  return j.dump(2);
}

void validate(const ExperimentConfig& c) {
  if (c.graph.empty()) throw ConfigError("config needs a graph source");
  if (c.mode != "thm1" && c.mode != "thm2" && c.mode != "exact" && c.mode != "bounds") {
    throw ConfigError("unknown mode '" + c.mode + "' (expected thm1 | thm2 | exact | bounds)");
  }
  if (c.trials == 0) throw ConfigError("trials must be at least 1");
  if (c.epsilon_grid.empty()) throw ConfigError("epsilon grid is empty");
  for (std::size_t i = 0; i < c.epsilon_grid.size(); ++i) {
    if (!(c.epsilon_grid[i] > 0) || !std::isfinite(c.epsilon_grid[i])) {
      throw ConfigError("epsilon values must be positive and finite");
    }
    if (i > 0 && !(c.epsilon_grid[i] > c.epsilon_grid[i - 1])) {
      throw ConfigError("epsilon grid must be strictly increasing");
    }
  }
  if (!(c.success_threshold >= 0 && c.success_threshold <= 1)) {
    throw ConfigError("success threshold must lie in [0, 1]");
  }
  validate_robber_spec(c.robber);
  if (c.mode == "exact" && c.k_max == 0) throw ConfigError("k_max must be at least 1");
}

RateEstimate wilson(std::uint64_t successes, std::uint64_t trials, double z) {
  RateEstimate r;
  r.successes = successes;
  r.trials = trials;
  if (trials == 0) return r;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  r.rate = p;
  r.lo = std::max(0.0, center - half);
  r.hi = std::min(1.0, center + half);
  return r;
}

// ---------------------------------------------------------------------------

TrialResult run_trial(const TrialSetup& s, double epsilon, std::uint32_t trial, std::uint64_t seed) {
  const Graph& g = s.graph;
  TrialResult res;
  res.cops = sample_cop_set(g, s.girth, s.mode, epsilon, seed, s.sample);
  const auto& cops = res.cops.cops;
  res.bad.assign(g.order(), 0);

  std::vector<std::size_t> badness(g.order(), 0);
  std::vector<std::uint8_t> saturated;
  if (s.mode == StrategyMode::Theorem1) {
    for (Vertex v = 0; v < g.order(); ++v) {
      badness[v] = theorem1_coverage(g, v, cops, s.t).uncovered.size();
    }
  } else {
    saturated.assign(g.order(), 0);
    CopNeighborhoods near(g, cops, s.t + 1);
    for (Vertex v = 0; v < g.order(); ++v) {
      auto inst = build_hv(g, v, s.t, near);
      auto m = saturating_matching(inst);
      saturated[v] = m.saturating();
      badness[v] = inst.frontier.size() - m.size;
    }
  }
  std::optional<Vertex> worst;
  for (Vertex v = 0; v < g.order(); ++v) {
    res.bad[v] = badness[v] > 0;
    if (badness[v] > 0 && (!worst || badness[v] > badness[*worst])) worst = v;
  }

  std::unique_ptr<CopController> controller;
  if (s.mode == StrategyMode::Theorem1) {
    controller = std::make_unique<Theorem1Controller>(g, s.t);
  } else {
    controller = std::make_unique<Theorem2Controller>(g, s.t);
  }
  auto robber = make_robber(s.robber, *controller, mix64(seed));
  std::unique_ptr<RobberController> forced;
  if (worst) forced = std::make_unique<ForcedStartRobber>(*robber, *worst);
  const RobberController& adversary = forced ? *forced : *robber;

  const Outcome out = simulate(g, *controller, adversary, cops, s.max_turns);

  auto& row = res.row;
  row.epsilon = epsilon;
  row.trial = trial;
  row.seed = seed;
  row.size_c = cops.size();
  row.start = out.trace.empty() ? 0 : out.trace.front().robber;
  row.ev_holds = !out.trace.empty() && res.bad[row.start];
  if (s.mode == StrategyMode::Theorem2 && !out.trace.empty()) row.matching_saturated = saturated[row.start] != 0;
  row.captured = out.cops_win();
  row.cop_moves = out.cop_moves;
  return res;
}

namespace {

EpsilonSummary summarize(const Graph& g, double epsilon, std::uint32_t capture_bound,
                         const std::vector<TrialResult>& results) {
  EpsilonSummary s;
  s.epsilon = epsilon;
  const std::size_t n = g.order();
  s.bad_event_frequency.assign(n, 0.0);
  std::uint64_t captured = 0;
  std::uint64_t any_bad = 0;
  double total_size = 0;
  for (const auto& r : results) {
    s.p_used = r.cops.p_used;
    s.clamped = r.cops.clamped;
    total_size += static_cast<double>(r.row.size_c);
    if (r.row.captured) {
      ++captured;
      ++s.capture_histogram[r.row.cop_moves];
      if (r.row.cop_moves > capture_bound) ++s.captures_over_bound;
    }
    bool some = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (r.bad[v]) {
        s.bad_event_frequency[v] += 1.0;
        some = true;
      }
    }
    any_bad += some;
  }
  const double trials = static_cast<double>(results.size());
  for (double& f : s.bad_event_frequency) f /= trials;
  s.capture = wilson(captured, results.size());
  s.any_bad_event = wilson(any_bad, results.size());
  s.mean_size = total_size / trials;
  s.expected_size = static_cast<double>(n) * s.p_used;
  s.chernoff_k = std::pow(s.expected_size, kChernoffExponent);
  s.chernoff_bound = chernoff_tail(s.expected_size, s.chernoff_k);
  std::uint64_t exceed = 0;
  for (const auto& r : results) {
    if (static_cast<double>(r.row.size_c) >= s.expected_size + s.chernoff_k) ++exceed;
  }
  s.chernoff_exceed_fraction = static_cast<double>(exceed) / trials;
  return s;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const Graph g = load_graph_source(config.graph);
  return run_experiment(config, g);
}

ExperimentReport run_experiment(const ExperimentConfig& config, const Graph& g) {
  validate(config);
  if (!g.is_connected()) throw ConfigError("experiments need a connected graph");
  ExperimentReport report;
  report.config = config;
  report.n = g.order();
  const auto gd = girth(g);
  report.girth = gd.girth;

  if (config.mode == "exact") {
    SolverOptions opts;
    opts.state_budget = config.state_budget;
    ExactSummary ex;
    ex.k_max = config.k_max;
    auto c = cop_number_exact(g, config.k_max, opts);
    if (c.value) {
      ex.cop_number = static_cast<std::uint32_t>(*c.value);
      ex.capture_time = capture_time(g, *c.value, opts);
    }
    report.exact = ex;
    return report;
  }
  if (config.mode == "bounds") {
    BoundsInput in;
    in.n = g.order();
    in.delta = static_cast<std::uint32_t>(g.min_degree());
    in.girth = gd.girth;
    in.d = static_cast<std::uint32_t>(g.max_degree());
    in.epsilon = config.epsilon_grid.front();
    report.bounds = evaluate_bounds(in);
    return report;
  }

  const StrategyMode mode = parse_strategy_mode(config.mode);
  std::uint32_t t = 0;
  try {
    t = strategy_radius(g, gd, mode);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  report.t = t;
  report.capture_bound = 2 * t + 1;
  report.max_turns = config.max_turns.value_or(report.capture_bound);

  TrialSetup setup{g, gd, mode, t, config.robber, report.max_turns,
                   SampleOptions{config.clamp, config.epsilon_floor}};
  // Reject infeasible densities before running any trial.
  for (double eps : config.epsilon_grid) {
    try {
      (void)sample_cop_set(g, gd, mode, eps, 0, setup.sample);
    } catch (const PreconditionError& e) {
      throw ConfigError("epsilon " + format_double(eps) + ": " + e.what());
    }
  }

  for (double eps : config.epsilon_grid) {
    std::vector<TrialResult> results(config.trials);
    parallel_for(
        config.trials,
        [&](std::size_t i) {
          const auto trial = static_cast<std::uint32_t>(i);
          results[i] = run_trial(setup, eps, trial, trial_seed(config.master_seed, trial));
        },
        config.threads);
    report.summary.push_back(summarize(g, eps, report.capture_bound, results));
    for (auto& r : results) report.rows.push_back(r.row);
  }
  return report;
}

// ---------------------------------------------------------------------------

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << report.config.graph << ',' << report.config.mode << ',' << format_double(r.epsilon) << ','
        << r.trial << ',' << r.seed << ',' << r.size_c << ',' << (r.ev_holds ? 1 : 0) << ','
        << (r.matching_saturated ? (*r.matching_saturated ? "1" : "0") : "") << ',' << (r.captured ? 1 : 0)
        << ',' << r.cop_moves << '\n';
  }
}

namespace {

json rate_json(const RateEstimate& r) {
  return {{"successes", r.successes}, {"trials", r.trials}, {"rate", r.rate}, {"wilson_lo", r.lo},
          {"wilson_hi", r.hi}};
}

}  // namespace

void write_json(const ExperimentReport& report, std::ostream& out) {
  json j;
  j["config"] = json::parse(experiment_config_json(report.config));
  j["n"] = report.n;
  j["girth"] = report.girth ? json(*report.girth) : json("inf");
  if (report.exact) {
    const auto& e = *report.exact;
    j["exact"] = {{"k_max", e.k_max},
                  {"cop_number", e.cop_number ? json(*e.cop_number) : json(nullptr)},
                  {"capture_time", e.capture_time ? json(*e.capture_time) : json(nullptr)}};
  }
  if (report.bounds) {
    const auto& b = *report.bounds;
    j["bounds"] = {{"frankl_lower", b.frankl_lower},
                   {"frankl_ceiling", b.frankl_ceiling},
                   {"thm1_upper_coeff", b.thm1_upper_coeff ? json(*b.thm1_upper_coeff) : json(nullptr)},
                   {"thm1_upper", b.thm1_upper ? json(*b.thm1_upper) : json(nullptr)},
                   {"expected_cops", b.expected_cops},
                   {"chernoff_k", b.chernoff_k},
                   {"chernoff_tail", b.chernoff_tail}};
  }
  if (!report.summary.empty()) {
    j["t"] = report.t;
    j["capture_bound"] = report.capture_bound;
    j["max_turns"] = report.max_turns;
    json rows = json::array();
    for (const auto& s : report.summary) {
      json hist = json::object();
      for (const auto& [moves, count] : s.capture_histogram) hist[std::to_string(moves)] = count;
      rows.push_back({{"epsilon", s.epsilon},
                      {"p_used", s.p_used},
                      {"clamped", s.clamped},
                      {"capture", rate_json(s.capture)},
                      {"mean_size_C", s.mean_size},
                      {"expected_size_C", s.expected_size},
                      {"chernoff_k", s.chernoff_k},
                      {"chernoff_bound", s.chernoff_bound},
                      {"chernoff_exceed_fraction", s.chernoff_exceed_fraction},
                      {"any_bad_event", rate_json(s.any_bad_event)},
                      {"bad_event_frequency", s.bad_event_frequency},
                      {"capture_histogram", hist},
                      {"captures_over_bound", s.captures_over_bound}});
    }
    j["summary"] = rows;
    json trials = json::array();
    for (const auto& r : report.rows) {
      trials.push_back({{"epsilon", r.epsilon},
                        {"trial", r.trial},
                        {"seed", r.seed},
                        {"size_C", r.size_c},
                        {"start", r.start},
                        {"ev_holds", r.ev_holds},
                        {"matching_saturated", r.matching_saturated ? json(*r.matching_saturated) : json(nullptr)},
                        {"captured", r.captured},
                        {"cop_moves", r.cop_moves}});
    }
    j["trials"] = trials;
  }
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

double epsilon_for_full_density(const Graph& g, StrategyMode mode, std::uint32_t t) {
  const double ti = static_cast<double>(t);
  if (mode == StrategyMode::Theorem1) return std::pow(static_cast<double>(g.min_degree()), ti);
  const double d = static_cast<double>(g.max_degree());
  return std::pow(d / 4.0, ti - 1.0) / (4.0 * ti);
}

DensityEstimate estimate_min_cop_density(const ExperimentConfig& config, const Graph& g) {
  validate(config);
  const StrategyMode mode = parse_strategy_mode(config.mode);
  const auto gd = girth(g);
  std::uint32_t t = 0;
  try {
    t = strategy_radius(g, gd, mode);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  ExperimentConfig cfg = config;
  cfg.clamp = true;
  const double terminal = epsilon_for_full_density(g, mode, t);
  bool appended = false;
  if (terminal > cfg.epsilon_grid.back()) {
    cfg.epsilon_grid.push_back(terminal);
    appended = true;
  }
  DensityEstimate est;
  est.report = run_experiment(cfg, g);
  const auto& summary = est.report.summary;
  std::size_t pick = summary.size() - 1;
  for (std::size_t i = 0; i < summary.size(); ++i) {
    if (summary[i].capture.rate >= cfg.success_threshold) {
      pick = i;
      break;
    }
  }
  est.epsilon = summary[pick].epsilon;
  est.mean_size = summary[pick].mean_size;
  est.capture = summary[pick].capture;
  est.appended_terminal = appended && pick + 1 == summary.size();
  return est;
}

}  // namespace copnum
