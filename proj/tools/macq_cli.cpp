// macq: command-line front end for the Q-game simulator, tree analyzer,
// bounds tables, exact oracle and discrepancy report.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <macq/macq.hpp>

namespace {

using namespace macq;

/// Bad flags or values: exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

struct Options {
  int n = 0;
  int d = 0;
  std::string strategy = "tree";
  std::string adversary;
  std::string live;
  std::string format;
  std::string out;
  std::size_t round_cap = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
  // bounds / report grids
  int n_max = 0;
  int d_max = 0;
  // tree
  bool normalize = false;
  bool export_graph = false;
  // oracle
  bool print_tree = false;
  int oracle_max_n = 6;
  int oracle_max_d = 3;
};

StationId station_cap() {
  const char* env = std::getenv("MACQ_MAX_N");
  if (env == nullptr || *env == '\0') return kDefaultStationCap;
  try {
    std::size_t used = 0;
    int cap = std::stoi(env, &used);
    if (used != std::string(env).size() || cap < 1) throw std::invalid_argument("cap");
    return cap;
  } catch (const std::exception&) {
    throw UsageError(std::string("MACQ_MAX_N must be a positive integer, got '") + env + "'");
  }
}

GameConfig make_config(const Options& o) {
  try {
    return GameConfig(o.n, o.d, station_cap());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::size_t round_cap(const Options& o, const GameConfig& config) {
  return o.round_cap > 0 ? o.round_cap : default_round_cap(config);
}

Strategy pick_strategy(const Options& o) {
  auto s = strategy_by_name(o.strategy);
  if (!s) throw UsageError("unknown strategy '" + o.strategy + "' (valid: " + join(strategy_names()) + ")");
  return *s;
}

StationSet parse_live(const std::string& text, const GameConfig& config) {
  StationSet live;
  StationId previous = 0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    StationId id = 0;
    try {
      id = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("--live: '" + item + "' is not a station id");
    if (id <= previous) throw UsageError("--live: ids must be strictly ascending");
    if (id > config.n) throw UsageError("--live: id " + std::to_string(id) + " exceeds n=" + std::to_string(config.n));
    live.insert(id);
    previous = id;
  }
  if (live.size() != static_cast<std::size_t>(config.d))
    throw UsageError("--live: expected " + std::to_string(config.d) + " ids, got " + std::to_string(live.size()));
  return live;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  std::string valid;
  for (const char* a : allowed) valid += (valid.empty() ? "" : ", ") + std::string(a);
  throw UsageError("unsupported --format '" + format + "' for this command (valid: " + valid + ")");
}

std::string simulate(const Options& o) {
  const GameConfig config = make_config(o);
  const Strategy strategy = pick_strategy(o);
  const std::size_t cap = round_cap(o, config);
  const std::string format = o.format.empty() ? "json-lines" : o.format;
  require_format(format, {"json-lines", "text"});
  GameResult result;
  if (!o.live.empty()) {
    if (!o.adversary.empty()) throw UsageError("--live and --adversary are mutually exclusive");
    result = run_fixed(strategy, config, parse_live(o.live, config), cap);
  } else {
    const std::string name = o.adversary.empty() ? "greedy" : o.adversary;
    auto adversary = adversary_by_name(name, cap);
    if (!adversary) throw UsageError("unknown adversary '" + name + "' (valid: " + join(adversary_names()) + ")");
    result = run_adversarial(strategy, *adversary, config, cap, o.budget);
  }
  if (format == "json-lines") return io::game_result_to_json(result).dump() + "\n";
  std::string out;
  for (std::size_t i = 0; i < result.transcript.size(); ++i) {
    const Round& r = result.transcript.rounds[i];
    out += "round " + std::to_string(i + 1) + " query=" + r.query.to_string() + " feedback=" + r.feedback.to_string() + "\n";
  }
  out += "rounds_used=" + std::to_string(result.rounds_used) + " completed=" + (result.completed ? "true" : "false") +
         " witness_live=" + result.witness_live.to_string() + "\n";
  return out;
}

std::string worst_case(const Options& o) {
  const GameConfig config = make_config(o);
  const Strategy strategy = pick_strategy(o);
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "csv", "json-lines"});
  WorstCase w = worst_case_rounds(strategy, config, round_cap(o, config), o.budget);
  if (format == "csv")
    return "strategy,n,d,max_rounds,argmax_live\n" + strategy.name + "," + std::to_string(config.n) + "," +
           std::to_string(config.d) + "," + std::to_string(w.max_rounds) + ",\"" + w.argmax_live.to_string() + "\"\n";
  if (format == "json-lines") {
    io::Json j;
    j["strategy"] = strategy.name;
    j["n"] = config.n;
    j["d"] = config.d;
    j["max_rounds"] = w.max_rounds;
    j["argmax_live"] = io::ids_to_json(w.argmax_live);
    return j.dump() + "\n";
  }
  return "max_rounds=" + std::to_string(w.max_rounds) + " argmax_live=" + w.argmax_live.to_string() + "\n";
}

std::string tree(const Options& o) {
  const GameConfig config = make_config(o);
  const Strategy strategy = pick_strategy(o);
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json-lines"});
  const std::size_t cap = round_cap(o, config);
  QTree t = o.normalize ? normalize(strategy, config, cap, o.budget) : build_tree(strategy, config, cap, o.budget);
  NormalFormReport r = check_normal_form(t);
  std::string black;
  for (const auto& [count, paths] : r.black_per_path) black += (black.empty() ? "" : ";") + std::to_string(count) + "x" + std::to_string(paths);
  std::string out;
  if (format == "json-lines") {
    io::Json j;
    j["strategy"] = strategy.name;
    j["normalized"] = o.normalize;
    j["n"] = config.n;
    j["d"] = config.d;
    j["max_depth"] = r.max_depth;
    j["leaf_count"] = r.leaf_count;
    io::Json hist = io::Json::object();
    for (const auto& [count, paths] : r.black_per_path) hist[std::to_string(count)] = paths;
    j["black_per_path"] = hist;
    j["repeated_transmitter_paths"] = r.repeated_transmitter_paths;
    j["property_holds"] = r.property_holds;
    out = j.dump() + "\n";
  } else {
    out = "strategy=" + strategy.name + (o.normalize ? "+normalized" : "") + " max_depth=" + std::to_string(r.max_depth) +
          " leaf_count=" + std::to_string(r.leaf_count) + " black_per_path=" + black +
          " repeated_transmitter_paths=" + std::to_string(r.repeated_transmitter_paths) +
          " property_holds=" + (r.property_holds ? "true" : "false") + "\n";
  }
  if (o.export_graph) out += export_graph(t);
  return out;
}

std::string bounds_table(const Options& o) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  require_format(format, {"csv"});
  std::vector<std::pair<int, int>> cells;
  if (o.n_max > 0) {
    int d_max = o.d_max > 0 ? o.d_max : o.n_max;
    for (int n = 2; n <= o.n_max; ++n)
      for (int d = 1; d <= std::min(n, d_max); ++d) cells.emplace_back(n, d);
  } else {
    const GameConfig config = make_config(o);
    cells.emplace_back(config.n, config.d);
  }
  std::string out = "n,d,info_lb,claimed_factorial,claimed_power,claimed_analytic\n";
  for (auto [n, d] : cells) {
    auto analytic = n >= 2 ? std::to_string(bounds::claimed_bound_analytic(n, d)) : std::string();
    out += std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(bounds::info_lower_bound(n, d)) + "," +
           std::to_string(bounds::claimed_bound_combinatorial(n, d, bounds::LabelFactor::Factorial)) + "," +
           std::to_string(bounds::claimed_bound_combinatorial(n, d, bounds::LabelFactor::Power)) + "," + analytic + "\n";
  }
  return out;
}

std::string oracle_cmd(const Options& o) {
  const GameConfig config = make_config(o);
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text"});
  oracle::OracleLimits limits;
  limits.max_n = o.oracle_max_n;
  limits.max_d = o.oracle_max_d;
  oracle::Solver solver(config, limits);
  std::string out = std::to_string(solver.optimal_rounds()) + "\n";
  if (o.print_tree) out += export_graph(solver.optimal_strategy_tree());
  return out;
}

std::string report_cmd(const Options& o) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  require_format(format, {"csv"});
  if (o.n_max < 2) throw UsageError("--n-max must be >= 2");
  oracle::OracleLimits limits;
  limits.max_n = o.oracle_max_n;
  limits.max_d = o.oracle_max_d;
  auto rows = report::generate_report(o.n_max, o.d_max > 0 ? o.d_max : o.n_max, limits);
  for (const auto& row : rows) {
    for (const auto& note : row.notes) std::cerr << "note: n=" << row.n << " d=" << row.d << " " << note << "\n";
  }
  return report::to_csv(rows);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + o.out);
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Deterministic conflict resolution on a multiple access channel"};
  app.require_subcommand(1);

  auto game_flags = [&](CLI::App* sub, bool need_nd) {
    auto* n = sub->add_option("--n", o.n, "number of stations")->check(CLI::PositiveNumber);
    auto* d = sub->add_option("--d", o.d, "number of live stations")->check(CLI::PositiveNumber);
    if (need_nd) {
      n->required();
      d->required();
    }
    sub->add_option("--format", o.format, "csv, json-lines or text");
    sub->add_option("--out", o.out, "write output to this file");
  };

  auto* simulate = app.add_subcommand("simulate", "play one game against a live set or an adversary");
  game_flags(simulate, true);
  simulate->add_option("--strategy", o.strategy, "linear or tree");
  simulate->add_option("--adversary", o.adversary, "greedy or exact");
  simulate->add_option("--live", o.live, "comma-separated ascending live station ids");
  simulate->add_option("--round-cap", o.round_cap, "round cap (default 4n+16)");
  simulate->add_option("--budget", o.budget, "candidate enumeration budget");

  auto* worst = app.add_subcommand("worst-case", "worst case of a strategy over all live sets");
  game_flags(worst, true);
  worst->add_option("--strategy", o.strategy, "linear or tree");
  worst->add_option("--round-cap", o.round_cap, "round cap (default 4n+16)");
  worst->add_option("--budget", o.budget, "live set enumeration budget");

  auto* tree_sub = app.add_subcommand("tree", "build a strategy's decision tree and check its normal form");
  game_flags(tree_sub, true);
  tree_sub->add_option("--strategy", o.strategy, "linear or tree");
  tree_sub->add_flag("--normalize", o.normalize, "normalize before checking");
  tree_sub->add_flag("--export", o.export_graph, "append the graph export");
  tree_sub->add_option("--round-cap", o.round_cap, "round cap (default 4n+16)");
  tree_sub->add_option("--budget", o.budget, "live set enumeration budget");

  auto* bounds_sub = app.add_subcommand("bounds", "counting bounds for one (n,d) or a grid");
  game_flags(bounds_sub, false);
  bounds_sub->add_option("--n-max", o.n_max, "grid over 2 <= n <= n-max");
  bounds_sub->add_option("--d-max", o.d_max, "grid over 1 <= d <= min(n, d-max)");

  auto* oracle_sub = app.add_subcommand("oracle", "exact optimal worst-case rounds f(n,d)");
  game_flags(oracle_sub, true);
  oracle_sub->add_flag("--tree", o.print_tree, "also print an optimal decision tree");
  oracle_sub->add_option("--oracle-max-n", o.oracle_max_n, "largest n the oracle accepts");
  oracle_sub->add_option("--oracle-max-d", o.oracle_max_d, "largest d the oracle accepts");

  auto* report_sub = app.add_subcommand("report", "discrepancy report CSV");
  report_sub->add_option("--n-max", o.n_max, "largest n")->required();
  report_sub->add_option("--d-max", o.d_max, "largest d");
  report_sub->add_option("--oracle-max-n", o.oracle_max_n, "largest n the oracle accepts");
  report_sub->add_option("--oracle-max-d", o.oracle_max_d, "largest d the oracle accepts");
  report_sub->add_option("--format", o.format, "csv");
  report_sub->add_option("--out", o.out, "write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::string text;
    if (simulate->parsed()) text = ::simulate(o);
    else if (worst->parsed()) text = worst_case(o);
    else if (tree_sub->parsed()) text = tree(o);
    else if (bounds_sub->parsed()) {
      if (o.n_max == 0 && (o.n == 0 || o.d == 0)) throw UsageError("bounds needs --n and --d, or --n-max");
      text = bounds_table(o);
    } else if (oracle_sub->parsed()) text = oracle_cmd(o);
    else text = report_cmd(o);
    emit(o, text);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
