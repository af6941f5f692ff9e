#include "pinctl/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pinctl/pinctl.hpp"

namespace pinctl::cli {

namespace {

using nlohmann::ordered_json;

// Options shared by every subcommand; each subcommand binds only what it uses.
struct Options {
  std::string graph;
  std::string pins;
  double gain = 100.0;
  double c = 1.0;
  double k = 10.0;
  std::optional<std::size_t> m;
  std::optional<double> target_mu;
  std::string mode = "greedy";
  double dt = 1e-4;
  double t_end = 5.0;
  double v_ref = 380.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string m_range;
  std::string modes = "greedy,optimal";
};

std::uint64_t subset_budget() {
  const char* env = std::getenv("PINCTL_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultSubsetBudget;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::InvalidArgument, std::string("PINCTL_BUDGET must be a nonnegative integer, got '") + env + "'");
  }
  return v;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

std::size_t parse_count(const std::string& text, const char* what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::Parse, std::string("invalid ") + what + " '" + text + "'");
  }
  return v;
}

/// "1,3,14" (1-based), "all", or "" / "none" for the empty set.
NodeSet parse_pins(const std::string& text, std::size_t n) {
  const std::string t = trim(text);
  if (t.empty() || t == "none") return {};
  if (t == "all") {
    NodeSet all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<NodeId> nodes;
  for (const std::string& part : split(t, ',')) {
    const std::size_t label = parse_count(part, "pin label");
    if (label < 1 || label > n) {
      throw Error(ErrorCode::IndexOutOfRange, "pin " + part + " outside 1.." + std::to_string(n));
    }
    nodes.push_back(label - 1);
  }
  return make_node_set(nodes, n);
}

ordered_json labels(std::span<const NodeId> nodes) {
  ordered_json a = ordered_json::array();
  for (NodeId v : nodes) a.push_back(v + 1);
  return a;
}

ordered_json report_json(const BoundsReport& r) {
  ordered_json j;
  j["pins"] = labels(r.pins);
  j["gain"] = r.gain;
  j["mu_l"] = r.mu_l;
  j["mu_exact"] = r.mu_exact ? ordered_json(*r.mu_exact) : ordered_json(nullptr);
  j["mu_u"] = r.mu_u;
  j["k"] = r.depth;
  j["mean_dist"] = r.mean_dist;
  j["objective"] = r.objective();
  return j;
}

ordered_json manifest(const std::string& command, ordered_json parameters, const Options& o,
                      const std::vector<std::string>& outputs) {
  ordered_json j;
  j["command"] = command;
  j["parameters"] = std::move(parameters);
  j["seed"] = o.seed;
  j["outputs"] = outputs;
  j["version"] = PINCTL_VERSION;
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

// Prints the document and, with --out, also saves it there.
void emit_json(ordered_json doc, const Options& o, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (!o.out.empty()) write_file(o.out, text);
  out << text;
}

std::vector<std::string> outputs_of(const Options& o) {
  return o.out.empty() ? std::vector<std::string>{} : std::vector<std::string>{o.out};
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---------------------------------------------------------------------------

void cmd_bounds(const Options& o, std::ostream& out) {
  const Graph g = load_graph_file(o.graph);
  const NodeSet pins = parse_pins(o.pins, g.size());
  if (!(std::isfinite(o.c) && o.c > 0.0)) throw Error(ErrorCode::InvalidArgument, "coupling strength c must be positive");
  if (!pins.empty() && pins.size() == g.size()) {
    throw Error(ErrorCode::FullSet, "every node is pinned: lambda_min(cL + gI) is exactly g = " + num(o.gain) +
                                        "; the bounds do not apply");
  }
  // lambda(cL + gZ) = c lambda(L + (g/c) Z), so every bound scales the same way.
  BoundsReport r = bounds_report(g, pins, o.gain / o.c);
  r.gain = o.gain;
  r.mu_l *= o.c;
  r.mu_u *= o.c;
  if (r.mu_exact) *r.mu_exact *= o.c;

  ordered_json doc = report_json(r);
  doc["c"] = o.c;
  ordered_json params{{"graph", o.graph}, {"pins", o.pins}, {"gain", o.gain}, {"c", o.c}};
  doc["manifest"] = manifest("bounds", std::move(params), o, outputs_of(o));
  emit_json(std::move(doc), o, out);
}

SelectionResult select_by_mode(const Graph& g, const std::string& mode, std::size_t m, double gain) {
  if (mode == "greedy") {
    if (m == g.size()) {
      // Greedy needs a remainder to score; the only full set is every node.
      SelectionResult r = optimal_select(g, m, gain, 1);
      r.method = "greedy";
      r.evaluations = 0;
      return r;
    }
    return greedy_select(g, m, gain);
  }
  if (mode == "optimal") return optimal_select(g, m, gain, subset_budget());
  return baseline_select(g, m, parse_baseline(mode), gain);
}

void cmd_select(const Options& o, std::ostream& out) {
  if (o.m.has_value() == o.target_mu.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --m and --target-mu");
  }
  const Graph g = load_graph_file(o.graph);
  SelectionResult r;
  if (o.target_mu) {
    if (o.mode != "greedy") throw Error(ErrorCode::InvalidArgument, "--target-mu is only supported with --mode greedy");
    r = target_select(g, *o.target_mu, o.gain);
  } else {
    if (*o.m < 1 || *o.m > g.size()) {
      throw Error(ErrorCode::InvalidArgument, "--m must lie in 1.." + std::to_string(g.size()));
    }
    r = select_by_mode(g, o.mode, *o.m, o.gain);
  }

  ordered_json doc;
  doc["method"] = r.method;
  doc["pins"] = labels(r.pins);
  doc["pin_set"] = labels(r.pin_set());
  doc["scores"] = r.scores;
  doc["evaluations"] = r.evaluations;
  doc["lambda_min"] = r.lambda_min;
  doc["gain"] = r.gain;
  doc["report"] = r.report ? report_json(*r.report) : ordered_json(nullptr);
  ordered_json params{{"graph", o.graph}, {"mode", o.mode}, {"gain", o.gain}};
  params["m"] = o.m ? ordered_json(*o.m) : ordered_json(nullptr);
  params["target_mu"] = o.target_mu ? ordered_json(*o.target_mu) : ordered_json(nullptr);
  doc["manifest"] = manifest("select", std::move(params), o, outputs_of(o));
  emit_json(std::move(doc), o, out);
}

void cmd_simulate(const Options& o, std::ostream& out) {
  const Graph g = load_graph_file(o.graph);
  SimConfig cfg;
  cfg.k = o.k;
  cfg.g = o.gain;
  cfg.v_ref = o.v_ref;
  cfg.dt = o.dt;
  cfg.t_end = o.t_end;
  cfg.pins = parse_pins(o.pins, g.size());
  cfg.e0 = default_initial_error(g.size(), o.seed);

  const Trace tr = simulate_secondary(g, cfg);
  const RelayCheck relay = relay_check(tr, cfg.v_ref);
  if (!o.out.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, tr);
    write_file(o.out, csv.str());
  }

  const double lam = lambda_min_pinned(g, PinningPlan::uniform(g.size(), cfg.pins, cfg.effective_gain()), 1.0);
  ordered_json doc;
  doc["pins"] = labels(cfg.pins);
  doc["k"] = cfg.k;
  doc["gain"] = cfg.g;
  doc["effective_gain"] = cfg.effective_gain();
  doc["lambda_min"] = lam;
  doc["predicted_rate"] = cfg.k * lam;
  doc["rate"] = tr.rate;
  doc["samples"] = tr.times.size();
  doc["initial_norm"] = tr.norms.front();
  doc["final_norm"] = tr.norms.back();
  doc["relay"] = {
      {"trip", relay.trip},
      {"settle_time", std::isfinite(relay.settle_time) ? ordered_json(relay.settle_time) : ordered_json(nullptr)},
      {"deadline", kRelayDeadline},
      {"band", {kRelayLow * cfg.v_ref, kRelayHigh * cfg.v_ref}},
  };
  ordered_json params{{"graph", o.graph}, {"pins", o.pins}, {"k", o.k},         {"gain", o.gain},
                      {"v_ref", o.v_ref}, {"dt", o.dt},     {"t_end", o.t_end}, {"out", o.out}};
  doc["manifest"] = manifest("simulate", std::move(params), o, outputs_of(o));
  out << doc.dump(2) << "\n";
}

void cmd_sweep(const Options& o, std::ostream& out) {
  const Graph g = load_graph_file(o.graph);
  const std::size_t n = g.size();
  std::size_t lo = 1;
  std::size_t hi = n;
  if (!o.m_range.empty()) {
    const auto parts = split(o.m_range, ':');
    if (parts.size() == 1) {
      lo = hi = parse_count(parts[0], "--m-range");
    } else if (parts.size() == 2) {
      lo = parse_count(parts[0], "--m-range start");
      hi = parse_count(parts[1], "--m-range end");
    } else {
      throw Error(ErrorCode::Parse, "--m-range must look like A:B, got '" + o.m_range + "'");
    }
  }
  if (lo < 1 || hi > n || lo > hi) {
    throw Error(ErrorCode::InvalidArgument, "--m-range must satisfy 1 <= A <= B <= " + std::to_string(n));
  }
  const auto modes = split(o.modes, ',');
  for (const auto& mode : modes) {
    if (mode != "greedy" && mode != "optimal") parse_baseline(mode);
  }

  std::ostringstream csv;
  csv << "m,mode,mu_l,mu_exact,mu_u\n";
  for (std::size_t m = lo; m <= hi; ++m) {
    for (const auto& mode : modes) {
      if (m == n) {
        csv << m << ',' << mode << ',' << num(o.gain) << ',' << num(o.gain) << ',' << num(o.gain) << '\n';
        continue;
      }
      const SelectionResult r = select_by_mode(g, mode, m, o.gain);
      csv << m << ',' << mode << ',' << num(r.report->mu_l) << ',' << num(r.lambda_min) << ','
          << num(r.report->mu_u) << '\n';
    }
  }

  if (o.out.empty()) {
    out << csv.str();
    return;
  }
  write_file(o.out, csv.str());
  ordered_json params{{"graph", o.graph}, {"gain", o.gain}, {"m_range", std::to_string(lo) + ":" + std::to_string(hi)},
                      {"modes", o.modes}};
  out << manifest("sweep", std::move(params), o, outputs_of(o)).dump(2) << "\n";
}

void cmd_table(const Options& o, std::ostream& out) {
  const Graph g = load_graph_file(o.graph);
  const std::size_t m = o.m.value_or(1);
  if (m < 1 || m >= g.size()) throw Error(ErrorCode::InvalidArgument, "--m must lie in 1.." + std::to_string(g.size() - 1));

  ordered_json rows = ordered_json::array();
  for (const char* mode : {"optimal", "greedy", "highest-degree", "lowest-degree", "closeness", "betweenness"}) {
    const SelectionResult r = select_by_mode(g, mode, m, o.gain);
    ordered_json row;
    row["method"] = mode;
    row["pins"] = labels(r.pin_set());
    row["mu_l"] = r.report->mu_l;
    row["mu_exact"] = r.lambda_min;
    row["mu_u"] = r.report->mu_u;
    row["mean_dist"] = r.report->mean_dist;
    row["f"] = r.report->objective();
    row["evaluations"] = r.evaluations;
    rows.push_back(std::move(row));
  }
  ordered_json doc;
  doc["m"] = m;
  doc["gain"] = o.gain;
  doc["rows"] = std::move(rows);
  ordered_json params{{"graph", o.graph}, {"m", m}, {"gain", o.gain}};
  doc["manifest"] = manifest("table", std::move(params), o, outputs_of(o));
  emit_json(std::move(doc), o, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Pinning-control analysis: connectivity bounds, pin selection and voltage simulation", "pinctl"};
  app.set_version_flag("--version", PINCTL_VERSION);
  app.require_subcommand(1);

  auto graph = [&](CLI::App* s) { s->add_option("--graph", o.graph, "Graph JSON document")->required(); };
  auto gain = [&](CLI::App* s) { s->add_option("--gain", o.gain, "Pinning gain g")->capture_default_str(); };
  auto seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "Seed for randomised defaults")->capture_default_str(); };
  auto outp = [&](CLI::App* s, const char* what) { s->add_option("--out", o.out, what); };

  CLI::App* bounds = app.add_subcommand("bounds", "Bounds on lambda_min(cL + gZ) for a pinning set");
  graph(bounds);
  bounds->add_option("--pins", o.pins, "1-based comma list, or 'all'")->required();
  gain(bounds);
  bounds->add_option("--c", o.c, "Coupling strength")->capture_default_str();
  seed(bounds);
  outp(bounds, "Also write the JSON report here");

  CLI::App* select = app.add_subcommand("select", "Choose a pinning set");
  graph(select);
  select->add_option("--mode", o.mode, "greedy|optimal|highest-degree|lowest-degree|closeness|betweenness")
      ->capture_default_str();
  select->add_option("--m", o.m, "Number of pins");
  select->add_option("--target-mu", o.target_mu, "Target lambda_min (greedy only)");
  gain(select);
  seed(select);
  outp(select, "Also write the JSON result here");

  CLI::App* simulate = app.add_subcommand("simulate", "Secondary voltage control simulation");
  graph(simulate);
  simulate->add_option("--pins", o.pins, "1-based comma list, 'all' or 'none'");
  simulate->add_option("--k", o.k, "Distributed controller gain")->capture_default_str();
  gain(simulate);
  simulate->add_option("--v-ref", o.v_ref, "Reference voltage (V rms)")->capture_default_str();
  simulate->add_option("--dt", o.dt, "RK4 step (s)")->capture_default_str();
  simulate->add_option("--t-end", o.t_end, "Horizon (s)")->capture_default_str();
  seed(simulate);
  outp(simulate, "Trace CSV path");

  CLI::App* sweep = app.add_subcommand("sweep", "Bounds and exact values across pin counts");
  graph(sweep);
  gain(sweep);
  sweep->add_option("--m-range", o.m_range, "A:B (default 1:N)");
  sweep->add_option("--modes", o.modes, "Comma list of selection modes")->capture_default_str();
  seed(sweep);
  outp(sweep, "CSV path (default stdout)");

  CLI::App* table = app.add_subcommand("table", "Compare every selection method at one pin count");
  graph(table);
  table->add_option("--m", o.m, "Number of pins (default 1)");
  gain(table);
  seed(table);
  outp(table, "Also write the JSON table here");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*bounds) cmd_bounds(o, out);
    if (*select) cmd_select(o, out);
    if (*simulate) cmd_simulate(o, out);
    if (*sweep) cmd_sweep(o, out);
    if (*table) cmd_table(o, out);
  } catch (const Error& e) {
    err << "pinctl: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pinctl::cli
