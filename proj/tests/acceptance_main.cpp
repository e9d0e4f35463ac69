// Acceptance suite: one line per criterion, "PASS k ..." or "FAIL k ...".
// Exit status is nonzero when any criterion fails. Optional argv[1] overrides
// the move-table cache location (default ./.cache/pocket_move_tables.bin).

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cubemix/canonical_index.hpp"
#include "cubemix/cube_model.hpp"
#include "cubemix/distribution_engine.hpp"
#include "cubemix/pair_graph.hpp"
#include "cubemix/rng.hpp"
#include "cubemix/unlink_time.hpp"
#include "cubemix/verify.hpp"

using namespace cubemix;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << ' ' << criterion << "  " << detail << std::endl;
  if (!pass) ++failures;
}

void progress(const std::string& line) { std::cerr << "# " << line << '\n'; }

std::string fmt(double v, int digits = 6) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path cache =
      argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::path(".cache");
  const MoveTables tables =
      MoveTables::load_or_build(cache / "pocket_move_tables.bin", 1, progress);

  // ---- 1: exact Pocket-cube mixing time --------------------------------
  MixingReport mixing;
  {
    mixing = mixing_time(tables, 0.25, 1, progress);
    const bool pass = mixing.tau == 19 && mixing.tv[19] <= 0.25 && mixing.tv[18] > 0.25;
    report(1, pass,
           "mixing time tau=" + std::to_string(mixing.tau) +
               " with d(18)=" + fmt(mixing.tv[18]) + " d(19)=" + fmt(mixing.tv[19]) +
               " (expected tau=19, d(19)<=0.25<d(18))");
  }

  // ---- 2: reachable-state count ----------------------------------------
  {
    const ReachabilityReport bfs = enumerate_reachable(progress);
    const bool pass = bfs.count == 3674160ULL;
    report(2, pass,
           "BFS reaches " + std::to_string(bfs.count) +
               " canonical states (expected 3674160 = 7!*3^6), max depth " +
               std::to_string(bfs.max_depth()));
  }

  // ---- 3-5: unlink-time statistics -------------------------------------
  const TrialHistogram corners = run_trials(UnlinkModel::corners, 100000, 1);
  const TrialHistogram all = run_trials(UnlinkModel::rubiks_all, 100000, 1);
  {
    const double mean = corners.mean();
    report(3, mean >= 26.5 && mean <= 27.5,
           "corners mean T = " + fmt(mean) + " +- " + fmt(corners.stderr_mean(), 3) +
               " over 100000 trials (expected in [26.5, 27.5])");
  }
  {
    const double mean = all.mean();
    report(4, mean >= 40.0 && mean <= 42.0,
           "all-cubies mean T = " + fmt(mean) + " +- " + fmt(all.stderr_mean(), 3) +
               " over 100000 trials (expected in [40, 42])");
  }
  {
    const int bc = heuristic_mixing_bound(survival_curve(corners, corners.max_t()), 0.25);
    const int ba = heuristic_mixing_bound(survival_curve(all, all.max_t()), 0.25);
    const bool pass = std::abs(bc - 31) <= 1 && std::abs(ba - 46) <= 1;
    report(5, pass,
           "heuristic bounds: corners " + std::to_string(bc) + " (expected 31 +- 1), all-cubies " +
               std::to_string(ba) + " (expected 46 +- 1)");
  }

  // ---- 6: refutation of the order conjecture ---------------------------
  {
    const PairScan paper = scan_all_pairs(EdgeSemantics::paper_set, SolveMethod::exact);
    const PairScan chain = scan_all_pairs(EdgeSemantics::chain, SolveMethod::exact);
    int worst_a = 0, worst_b = 1;
    double worst = -1;
    for (const auto& row : chain.rows) {
      if (row.result.deviation > worst) {
        worst = row.result.deviation;
        worst_a = row.a0;
        worst_b = row.b0;
      }
    }
    const OrderResult exact_worst =
        order_probability(PairGraph::build(worst_a, worst_b, EdgeSemantics::chain),
                          SolveMethod::exact);
    const OrderCheck mc = monte_carlo_order_check(worst_a, worst_b, 1000000, 1);
    const bool mc_ok = std::abs(mc.p_hat - exact_worst.p) <= 3.0 * mc.se;
    const bool pass = paper.max_deviation > 0.026 && chain.max_deviation > 1e-8 && mc_ok;
    report(6, pass,
           "max deviation from 1/2: paper-set " + fmt(paper.max_deviation) +
               " (> 0.026), chain " + fmt(chain.max_deviation) + " (> 1e-8); Monte Carlo at (" +
               std::to_string(worst_a) + "," + std::to_string(worst_b) + "): p_hat=" +
               fmt(mc.p_hat, 8) + " vs exact " + fmt(exact_worst.p, 8) + " within " +
               fmt(std::abs(mc.p_hat - exact_worst.p) / mc.se, 3) + " se (<= 3)");
  }

  // ---- 7: oracle equivalence over all pairs and semantics --------------
  {
    double worst_gap = 0.0, worst_sym = 0.0;
    for (EdgeSemantics sem : {EdgeSemantics::chain, EdgeSemantics::paper_set}) {
      std::map<std::pair<int, int>, double> p_of;
      for (int a0 = 0; a0 < 8; ++a0) {
        for (int b0 = 0; b0 < 8; ++b0) {
          if (a0 == b0) continue;
          const PairGraph g = PairGraph::build(a0, b0, sem);
          const Absorption abs = absorption_exact(g);
          const MassState iter = spread_mass(g, 1e-9);
          if (!iter.converged) worst_gap = 1.0;
          for (std::int32_t s : g.sinks())
            worst_gap = std::max(worst_gap, std::abs(iter.mass[s] - abs.probability[s]));
          p_of[{a0, b0}] = order_probability(g, SolveMethod::exact).p;
        }
      }
      for (const auto& [key, p] : p_of)
        worst_sym = std::max(worst_sym, std::abs(p + p_of.at({key.second, key.first}) - 1.0));
    }
    report(7, worst_gap < 1e-8 && worst_sym < 1e-9,
           "spread_mass(1e-9) vs exact absorption: max sink gap " + fmt(worst_gap, 3) +
               " (< 1e-8); exchange symmetry residual " + fmt(worst_sym, 3) + " (< 1e-9)");
  }

  // ---- 8: property suite ------------------------------------------------
  {
    std::vector<std::string> problems;

    for (const CheckResult& check : model_invariant_checks())
      if (!check.pass) problems.push_back(check.name);

    if (!tables.tables_are_permutations()) problems.push_back("move tables not bijective");

    // flag monotonicity along a fresh trajectory
    {
      Trajectory traj = Trajectory::solved(UnlinkModel::rubiks_all);
      UnlinkFlags flags(UnlinkModel::rubiks_all);
      int prev = 0;
      Rng rng(6021023);
      for (int t = 0; t < 300; ++t) {
        const Move m{Face(rng.below(6)), int(rng.below(3)) + 1};
        update_flags(traj, m, flags);
        traj.apply(m);
        if (flags.set_count() < prev) problems.push_back("flag monotonicity violated");
        prev = flags.set_count();
      }
    }

    // mass conservation during the mixing run (recorded by the engine)
    if (mixing.max_mass_error >= 1e-9) problems.push_back("mass conservation breached");

    // d(t) non-increasing and submultiplicative on the recorded trace
    for (std::size_t t = 1; t < mixing.tv.size(); ++t)
      if (mixing.tv[t] > mixing.tv[t - 1] + 1e-12) problems.push_back("d(t) not monotone");
    for (std::size_t s = 1; s + 1 < mixing.tv.size(); ++s)
      for (std::size_t t = 1; s + t < mixing.tv.size(); ++t)
        if (mixing.tv[s + t] > 2.0 * mixing.tv[s] * mixing.tv[t] + 1e-9)
          problems.push_back("submultiplicativity violated");

    // stationarity of uniform under one exact step
    {
      const std::uint32_t n = tables.size();
      ProbVector uniform(n, 1.0 / n), out;
      step(tables, uniform, out);
      double worst = 0.0;
      for (std::uint32_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(out[j] - 1.0 / n));
      if (worst >= 1e-12) problems.push_back("uniform not stationary");
    }

    // one- and two-step distributions against the brute-force move oracle
    {
      // brute force over raw states, independent of the move tables
      const std::uint32_t start = rank(PocketState::solved());
      std::map<std::uint32_t, double> brute1, brute2;
      for (int m1 = 0; m1 < kNumMoves; ++m1) {
        const PocketState s1 = apply_move(PocketState::solved(), move_from_index(m1));
        brute1[rank(canonicalize(s1).state)] += 1.0 / 18.0;
        for (int m2 = 0; m2 < kNumMoves; ++m2) {
          const PocketState s2 = apply_move(s1, move_from_index(m2));
          brute2[rank(canonicalize(s2).state)] += 1.0 / 324.0;
        }
      }
      // opposite-face turns of the Pocket cube are whole-cube rotations away
      // from each other, so the 18 one-move states collapse into 9 classes
      if (brute1.size() != 9) problems.push_back("one-move canonical class count");

      ProbVector p = point_mass(tables.size(), start), tmp;
      step(tables, p, tmp);
      p.swap(tmp);
      double worst1 = 0.0;
      for (std::uint32_t j = 0; j < tables.size(); ++j) {
        const auto it = brute1.find(j);
        worst1 = std::max(worst1, std::abs(p[j] - (it == brute1.end() ? 0.0 : it->second)));
      }
      step(tables, p, tmp);
      p.swap(tmp);
      double worst2 = 0.0;
      for (std::uint32_t j = 0; j < tables.size(); ++j) {
        const auto it = brute2.find(j);
        worst2 = std::max(worst2, std::abs(p[j] - (it == brute2.end() ? 0.0 : it->second)));
      }
      if (worst1 >= 1e-15) problems.push_back("one-step distribution mismatch");
      if (worst2 >= 1e-15) problems.push_back("two-step distribution mismatch");
    }

    std::string detail = "move-table bijections, 4x turn identity, opposite-face commutation, "
                         "flag monotonicity, mass conservation, uniform stationarity, "
                         "324-sequence two-step oracle";
    if (!problems.empty()) {
      detail = "violated:";
      for (const auto& p : problems) detail += " [" + p + "]";
    }
    report(8, problems.empty(), detail);
  }

  // ---- 9: determinism across runs and job counts -----------------------
  {
    bool pass = true;
    std::string detail;

    {
      const TrialHistogram a = run_trials(UnlinkModel::corners, 20000, 7, 1);
      const TrialHistogram b = run_trials(UnlinkModel::corners, 20000, 7, 3);
      std::ostringstream ja, jb;
      write_stats_json(ja, UnlinkModel::corners, 7, a,
                       heuristic_mixing_bound(survival_curve(a, a.max_t()), 0.25));
      write_stats_json(jb, UnlinkModel::corners, 7, b,
                       heuristic_mixing_bound(survival_curve(b, b.max_t()), 0.25));
      if (ja.str() != jb.str()) {
        pass = false;
        detail += " unlink stats differ across job counts;";
      }
    }

    {
      ProbVector p = point_mass(tables.size(), rank(PocketState::solved()));
      ProbVector q = p, t1, t2;
      for (int steps = 0; steps < 4; ++steps) {
        step(tables, p, t1, 1);
        step(tables, q, t2, 2);
        p.swap(t1);
        q.swap(t2);
      }
      for (std::uint32_t j = 0; j < tables.size(); ++j) {
        if (p[j] != q[j]) {
          pass = false;
          detail += " distribution step differs across job counts;";
          break;
        }
      }
    }

    {
      std::ostringstream a, b;
      write_scan_csv(a, scan_all_pairs(EdgeSemantics::paper_set, SolveMethod::iterate, 1e-9));
      write_scan_csv(b, scan_all_pairs(EdgeSemantics::paper_set, SolveMethod::iterate, 1e-9));
      if (a.str() != b.str()) {
        pass = false;
        detail += " pairgraph scan not reproducible;";
      }
    }

    report(9, pass,
           pass ? "identical outputs for repeated runs and any job count" : detail);
  }

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
