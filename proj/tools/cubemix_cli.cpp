#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cubemix/canonical_index.hpp"
#include "cubemix/cube_model.hpp"
#include "cubemix/distribution_engine.hpp"
#include "cubemix/pair_graph.hpp"
#include "cubemix/unlink_time.hpp"
#include "cubemix/verify.hpp"

namespace {

using namespace cubemix;

struct Options {
  std::string cache_dir = ".cache";
  int jobs = int(std::max(1u, std::thread::hardware_concurrency()));
  std::string out;
  std::string format = "csv";
  std::string model = "corners";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  double epsilon = 1e-9;
  double threshold = 0.25;
  int tmax = 100;
  int a0 = 0;
  int b0 = 1;
  std::string semantics = "chain";
  std::string method = "exact";
};

void progress_to_stderr(const std::string& line) { std::cerr << "# " << line << '\n'; }

// writes to --out when given, stdout otherwise
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

UnlinkModel parse_model(const std::string& name) {
  if (name == "corners") return UnlinkModel::corners;
  if (name == "rubiks-all") return UnlinkModel::rubiks_all;
  throw std::invalid_argument("unknown model " + name);
}

EdgeSemantics parse_semantics(const std::string& name) {
  if (name == "chain") return EdgeSemantics::chain;
  if (name == "paper") return EdgeSemantics::paper_set;
  throw std::invalid_argument("unknown semantics " + name);
}

SolveMethod parse_method(const std::string& name) {
  if (name == "exact") return SolveMethod::exact;
  if (name == "iterate") return SolveMethod::iterate;
  throw std::invalid_argument("unknown method " + name);
}

MoveTables tables_from_cache(const Options& opt) {
  return MoveTables::load_or_build(std::filesystem::path(opt.cache_dir) / "pocket_move_tables.bin",
                                   opt.jobs, progress_to_stderr);
}

int run_mixing(const Options& opt) {
  const MoveTables tables = tables_from_cache(opt);
  const MixingReport report = mixing_time(tables, opt.threshold, opt.jobs, progress_to_stderr);
  std::cerr << "# tau=" << report.tau << '\n';
  Output out(opt.out);
  if (opt.format == "json")
    write_mixing_json(out.stream(), report, opt.threshold);
  else
    write_mixing_csv(out.stream(), report);
  return 0;
}

int run_unlink(const Options& opt, bool curve) {
  const UnlinkModel model = parse_model(opt.model);
  const TrialHistogram hist = run_trials(model, opt.trials, opt.seed, opt.jobs);
  Output out(opt.out);
  if (curve) {
    write_survival_csv(out.stream(), survival_curve(hist, opt.tmax));
  } else {
    const SurvivalCurve sc = survival_curve(hist, hist.max_t());
    write_stats_json(out.stream(), model, opt.seed, hist, heuristic_mixing_bound(sc, 0.25));
  }
  return 0;
}

int run_bound(const Options& opt) {
  const UnlinkModel model = parse_model(opt.model);
  const TrialHistogram hist = run_trials(model, opt.trials, opt.seed, opt.jobs);
  const int bound = heuristic_mixing_bound(survival_curve(hist, hist.max_t()), opt.threshold);
  nlohmann::json j;
  j["model"] = model_name(model);
  j["trials"] = opt.trials;
  j["seed"] = opt.seed;
  j["threshold"] = opt.threshold;
  j["heuristic_bound"] = bound;
  Output out(opt.out);
  out.stream() << j.dump(2) << '\n';
  return 0;
}

int run_pairgraph_one(const Options& opt) {
  const EdgeSemantics semantics = parse_semantics(opt.semantics);
  const SolveMethod method = parse_method(opt.method);
  const PairGraph g = PairGraph::build(opt.a0, opt.b0, semantics);
  std::cerr << "# graph vertices=" << g.vertex_count() << " sinks=" << g.sinks().size() << '\n';
  PairScan scan;
  scan.semantics = semantics;
  scan.method = method;
  PairScanRow row{opt.a0, opt.b0, order_probability(g, method, opt.epsilon)};
  if (!row.result.converged)
    throw std::runtime_error("mass spreading did not converge; raise --epsilon or iterations");
  scan.max_deviation = row.result.deviation;
  scan.rows.push_back(row);
  Output out(opt.out);
  if (opt.format == "json")
    write_scan_json(out.stream(), scan);
  else
    write_scan_csv(out.stream(), scan);
  return 0;
}

int run_pairgraph_scan(const Options& opt) {
  const PairScan scan =
      scan_all_pairs(parse_semantics(opt.semantics), parse_method(opt.method), opt.epsilon);
  for (const auto& row : scan.rows) {
    if (!row.result.converged)
      throw std::runtime_error("mass spreading did not converge; raise --epsilon or iterations");
  }
  std::cerr << "# max_deviation=" << scan.max_deviation << '\n';
  Output out(opt.out);
  if (opt.format == "json")
    write_scan_json(out.stream(), scan);
  else
    write_scan_csv(out.stream(), scan);
  return 0;
}

int run_pairgraph_mc(const Options& opt) {
  const OrderCheck check = monte_carlo_order_check(opt.a0, opt.b0, opt.trials, opt.seed);
  nlohmann::json j;
  j["a0"] = opt.a0;
  j["b0"] = opt.b0;
  j["trials"] = check.trials;
  j["seed"] = opt.seed;
  j["p_before"] = check.p_hat;
  j["stderr"] = check.se;
  j["mean_steps"] = check.mean_steps;
  j["stderr_steps"] = check.se_steps;
  Output out(opt.out);
  out.stream() << j.dump(2) << '\n';
  return 0;
}

int run_verify(const Options& opt) {
  Output out(opt.out);
  std::ostream& os = out.stream();
  bool all_ok = true;

  for (const CheckResult& check : model_invariant_checks()) {
    os << (check.pass ? "ok   " : "FAIL ") << check.name;
    if (!check.detail.empty()) os << " (" << check.detail << ")";
    os << '\n';
    all_ok = all_ok && check.pass;
  }

  const ReachabilityReport report = enumerate_reachable(progress_to_stderr);
  const bool count_ok = report.count == kCanonicalStateCount;
  os << (count_ok ? "ok   " : "FAIL ") << "reachable canonical states: " << report.count
     << " (expected " << kCanonicalStateCount << ")\n";
  os << "ok   max distance from solved: " << report.max_depth() << '\n';
  all_ok = all_ok && count_ok;

  os << (all_ok ? "PASS" : "FAIL") << " group verification\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scrambling analysis for the Pocket cube and Rubik's cube"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;

  app.add_option("--cache-dir", opt.cache_dir, "Directory for the move-table cache");
  app.add_option("--jobs", opt.jobs, "Worker threads (results are identical for any value)")
      ->check(CLI::Range(1, 256));

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "Write output to this file instead of stdout");
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto pick_format = [&](CLI::App* cmd, const char* preset) {
    if (cmd->count("--format") == 0) opt.format = preset;
  };

  CLI::App* mixing = app.add_subcommand("mixing", "Exact distance-to-uniform trace");
  mixing->require_subcommand(1);
  CLI::App* mixing_exact = mixing->add_subcommand(
      "exact-pocket", "Evolve the exact Pocket-cube distribution until d(t) <= threshold");
  mixing_exact->add_option("--threshold", opt.threshold, "Mixing threshold")
      ->check(CLI::Range(1e-12, 1.0));
  add_out(mixing_exact);

  CLI::App* unlink = app.add_subcommand("unlink", "Unlink stopping time T by simulation");
  unlink->require_subcommand(1);
  CLI::App* unlink_stats = unlink->add_subcommand("stats", "Trial summary (mean T, bound)");
  CLI::App* unlink_curve = unlink->add_subcommand("curve", "Survival curve P(t < T)");
  for (CLI::App* cmd : {unlink_stats, unlink_curve}) {
    cmd->add_option("--model", opt.model, "corners | rubiks-all")
        ->check(CLI::IsMember({"corners", "rubiks-all"}));
    cmd->add_option("--trials", opt.trials, "Trial count")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "Base seed; trial i uses substream (seed, i)");
    cmd->add_option("--tmax", opt.tmax, "Last t in the curve")->check(CLI::Range(0, 100000));
  }
  add_out(unlink_stats);
  add_out(unlink_curve);

  CLI::App* bound = app.add_subcommand("bound", "Heuristic mixing bounds from P(t < T)");
  CLI::App* bound_heuristic =
      bound->add_subcommand("heuristic", "Smallest t with empirical P(t < T) <= threshold");
  bound_heuristic->add_option("--model", opt.model, "corners | rubiks-all")
      ->check(CLI::IsMember({"corners", "rubiks-all"}));
  bound_heuristic->add_option("--trials", opt.trials, "Trial count")->check(CLI::PositiveNumber);
  bound_heuristic->add_option("--seed", opt.seed, "Base seed");
  bound_heuristic->add_option("--threshold", opt.threshold, "Crossing threshold")
      ->check(CLI::Range(1e-12, 1.0));
  add_out(bound_heuristic);

  CLI::App* pairgraph = app.add_subcommand("pairgraph", "Corner-order probabilities at time T");
  pairgraph->require_subcommand(1);
  CLI::App* pg_one = pairgraph->add_subcommand("one", "Single ordered pair (a0, b0)");
  CLI::App* pg_scan = pairgraph->add_subcommand("scan", "All 56 ordered pairs");
  CLI::App* pg_mc = pairgraph->add_subcommand("mc", "Monte Carlo cross-check of one pair");
  for (CLI::App* cmd : {pg_one, pg_scan}) {
    cmd->add_option("--semantics", opt.semantics, "chain | paper")
        ->check(CLI::IsMember({"chain", "paper"}));
    cmd->add_option("--method", opt.method, "exact | iterate")
        ->check(CLI::IsMember({"exact", "iterate"}));
    cmd->add_option("--epsilon", opt.epsilon, "Residual threshold for --method iterate")
        ->check(CLI::Range(1e-15, 0.5));
  }
  for (CLI::App* cmd : {pg_one, pg_mc}) {
    cmd->add_option("--a0", opt.a0, "Start slot of corner A (0..7)")->required()->check(CLI::Range(0, 7));
    cmd->add_option("--b0", opt.b0, "Start slot of corner B (0..7)")->required()->check(CLI::Range(0, 7));
  }
  pg_mc->add_option("--trials", opt.trials, "Trial count")->check(CLI::PositiveNumber);
  pg_mc->add_option("--seed", opt.seed, "Base seed");
  add_out(pg_one);
  add_out(pg_scan);
  add_out(pg_mc);

  CLI::App* verify = app.add_subcommand("verify", "Model invariants and state-space enumeration");
  CLI::App* verify_group = verify->add_subcommand("group", "BFS count plus invariant suite");
  verify_group->add_option("--out", opt.out, "Write output to this file instead of stdout");

  for (CLI::App* cmd : {mixing, mixing_exact, unlink, unlink_stats, unlink_curve, bound,
                        bound_heuristic, pairgraph, pg_one, pg_scan, pg_mc, verify, verify_group})
    cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (mixing_exact->parsed()) { pick_format(mixing_exact, "csv"); return run_mixing(opt); }
    if (unlink_stats->parsed()) { pick_format(unlink_stats, "json"); return run_unlink(opt, false); }
    if (unlink_curve->parsed()) { pick_format(unlink_curve, "csv"); return run_unlink(opt, true); }
    if (bound_heuristic->parsed()) { pick_format(bound_heuristic, "json"); return run_bound(opt); }
    if (pg_one->parsed()) { pick_format(pg_one, "csv"); return run_pairgraph_one(opt); }
    if (pg_scan->parsed()) { pick_format(pg_scan, "csv"); return run_pairgraph_scan(opt); }
    if (pg_mc->parsed()) { pick_format(pg_mc, "json"); return run_pairgraph_mc(opt); }
    if (verify_group->parsed()) return run_verify(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
