#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "cubemix/pair_graph.hpp"

using namespace cubemix;

namespace {

// independent reachability count: plain set-based BFS over (a, b, flags)
int reference_vertex_count(int a0, int b0, EdgeSemantics semantics) {
  using Key = std::tuple<int, int, int>;
  std::set<Key> seen;
  std::vector<Key> stack = {{a0, b0, 0}};
  auto flags_after = [](int a, int b, int flags, Face f) {
    const bool ina = corner_on_face(f, a), inb = corner_on_face(f, b);
    if (ina != inb) flags |= 1 << int(axis_of(f));
    return flags;
  };
  while (!stack.empty()) {
    const auto [a, b, fl] = stack.back();
    stack.pop_back();
    if (!seen.insert({a, b, fl}).second) continue;
    if (fl == 7) continue;
    for (int fi = 0; fi < kNumFaces; ++fi) {
      const Face f = Face(fi);
      const int nf = flags_after(a, b, fl, f);
      int aa = a, bb = b;
      const int reps = semantics == EdgeSemantics::chain ? 3 : 4;
      for (int q = 1; q <= reps; ++q) {
        aa = corner_image(f, aa);
        bb = corner_image(f, bb);
        stack.push_back({aa, bb, nf});
      }
      if (semantics == EdgeSemantics::chain && !corner_on_face(f, a) && !corner_on_face(f, b))
        stack.push_back({a, b, nf});
    }
  }
  return int(seen.size());
}

}  // namespace

TEST_CASE("graph construction") {
  SUBCASE("rejects a degenerate pair") {
    CHECK_THROWS_AS(PairGraph::build(3, 3, EdgeSemantics::chain), std::invalid_argument);
  }

  SUBCASE("chain out-weights sum to 18 on every non-sink vertex") {
    const PairGraph g = PairGraph::build(kDFR, kFRU, EdgeSemantics::chain);
    for (int v = 0; v < g.vertex_count(); ++v) {
      int total = 0;
      for (const auto& e : g.edges(v)) total += e.count;
      CHECK(total == g.out_total(v));
      CHECK(g.out_total(v) == (g.vertex(v).is_sink() ? 1 : 18));
    }
  }

  SUBCASE("sinks are exactly the fully-unlinked vertices with a unit self-loop") {
    for (EdgeSemantics sem : {EdgeSemantics::chain, EdgeSemantics::paper_set}) {
      const PairGraph g = PairGraph::build(kBDL, kFRU, sem);
      int sink_count = 0;
      for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.vertex(v).flags == 7) {
          ++sink_count;
          REQUIRE(g.edges(v).size() == 1);
          CHECK(g.edges(v)[0].to == v);
          CHECK(g.edges(v)[0].count == 1);
        }
      }
      CHECK(sink_count == int(g.sinks().size()));
      CHECK(sink_count > 0);
    }
  }

  SUBCASE("vertex count matches an independent BFS and stays within 448") {
    for (EdgeSemantics sem : {EdgeSemantics::chain, EdgeSemantics::paper_set}) {
      for (auto [a0, b0] : {std::pair{kDFR, kFRU}, {kBDL, kFRU}, {kBRU, kDFL}}) {
        const PairGraph g = PairGraph::build(a0, b0, sem);
        CHECK(g.vertex_count() == reference_vertex_count(a0, b0, sem));
        CHECK(g.vertex_count() <= 448);
      }
    }
  }

  SUBCASE("a pair away from B and L keeps a self-loop of weight >= 6/18") {
    // slots 0 (DFR) and 1 (FRU) touch neither B nor L
    const PairGraph g = PairGraph::build(kDFR, kFRU, EdgeSemantics::chain);
    int self = 0;
    for (const auto& e : g.edges(g.root()))
      if (e.to == g.root()) self += e.count;
    CHECK(self >= 6);
  }
}

TEST_CASE("mass spreading") {
  const PairGraph g = PairGraph::build(kDFR, kBLU, EdgeSemantics::chain);

  SUBCASE("total mass stays 1 and the residual is non-increasing") {
    MassState prev = spread_mass(g, 1e-3, 1);
    double total = 0;
    for (double m : prev.mass) total += m;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (int iters = 2; iters <= 64; iters *= 2) {
      const MassState next = spread_mass(g, 1e-12, iters);
      CHECK(next.residual <= prev.residual + 1e-15);
      prev = next;
    }
  }

  SUBCASE("epsilon stop reports convergence") {
    const MassState state = spread_mass(g, 1e-9);
    CHECK(state.converged);
    CHECK(state.residual < 1e-9);
    const MassState stuck = spread_mass(g, 1e-9, 3);
    CHECK(!stuck.converged);
  }

  SUBCASE("rejects a non-positive epsilon") {
    CHECK_THROWS_AS(spread_mass(g, 0.0), std::invalid_argument);
  }
}

TEST_CASE("exact absorption") {
  SUBCASE("probabilities sum to 1") {
    for (EdgeSemantics sem : {EdgeSemantics::chain, EdgeSemantics::paper_set}) {
      const PairGraph g = PairGraph::build(kDFR, kFRU, sem);
      const Absorption abs = absorption_exact(g);
      double total = 0;
      for (double p : abs.probability) total += p;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(abs.expected_steps > 3.0);
    }
  }

  SUBCASE("a root that is already a sink absorbs everything") {
    const PairGraph g = PairGraph::build(kDFR, kFRU, EdgeSemantics::chain, 7);
    CHECK(g.vertex_count() == 1);
    const Absorption abs = absorption_exact(g);
    CHECK(abs.probability[g.root()] == 1.0);
    CHECK(abs.expected_steps == 0.0);
  }

  SUBCASE("iterated spreading converges to the exact sink masses") {
    for (EdgeSemantics sem : {EdgeSemantics::chain, EdgeSemantics::paper_set}) {
      const PairGraph g = PairGraph::build(kBDL, kFRU, sem);
      const Absorption abs = absorption_exact(g);
      const MassState state = spread_mass(g, 1e-9);
      REQUIRE(state.converged);
      for (std::int32_t s : g.sinks())
        CHECK(std::abs(state.mass[s] - abs.probability[s]) < 1e-8);
    }
  }
}

TEST_CASE("order probabilities") {
  SUBCASE("exchange symmetry p(a,b) + p(b,a) = 1 for the exact method") {
    for (EdgeSemantics sem : {EdgeSemantics::chain, EdgeSemantics::paper_set}) {
      for (auto [a0, b0] : {std::pair{0, 1}, {2, 5}, {7, 1}, {3, 4}}) {
        const auto pab =
            order_probability(PairGraph::build(a0, b0, sem), SolveMethod::exact);
        const auto pba =
            order_probability(PairGraph::build(b0, a0, sem), SolveMethod::exact);
        CHECK(pab.p + pba.p == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(pab.z == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pab.deviation == doctest::Approx(pba.deviation).epsilon(1e-9));
      }
    }
  }

  SUBCASE("scan covers all 56 ordered pairs") {
    const PairScan scan = scan_all_pairs(EdgeSemantics::paper_set, SolveMethod::exact);
    CHECK(scan.rows.size() == 56);
    std::set<std::pair<int, int>> seen;
    for (const auto& row : scan.rows) seen.insert({row.a0, row.b0});
    CHECK(seen.size() == 56);
    // the appendix weighting misses 1/2 by more than 0.026 for some pairs
    CHECK(scan.max_deviation > 0.026);
    CHECK(scan.max_deviation == doctest::Approx(0.026875).epsilon(1e-3));
  }

  SUBCASE("chain semantics also deviates from 1/2, by less") {
    const PairScan scan = scan_all_pairs(EdgeSemantics::chain, SolveMethod::exact);
    CHECK(scan.max_deviation > 0.01);
    CHECK(scan.max_deviation < 0.02);
    CHECK(scan.max_deviation == doctest::Approx(0.012956).epsilon(1e-3));
  }

  SUBCASE("iterate method with tight epsilon matches exact") {
    const PairGraph g = PairGraph::build(7, 1, EdgeSemantics::chain);
    const OrderResult exact = order_probability(g, SolveMethod::exact);
    const OrderResult iter = order_probability(g, SolveMethod::iterate, 1e-9);
    CHECK(iter.converged);
    CHECK(iter.p == doctest::Approx(exact.p).epsilon(1e-7));
    CHECK(iter.ci_low <= exact.p);
    CHECK(iter.ci_high >= exact.p);
  }
}

TEST_CASE("monte carlo cross-check") {
  const PairGraph g = PairGraph::build(kDFR, kFRU, EdgeSemantics::chain);
  const OrderResult exact = order_probability(g, SolveMethod::exact);
  const Absorption abs = absorption_exact(g);
  const OrderCheck mc = monte_carlo_order_check(kDFR, kFRU, 40000, 12345);
  CHECK(std::abs(mc.p_hat - exact.p) <= 4.0 * mc.se);
  CHECK(std::abs(mc.mean_steps - abs.expected_steps) <= 4.0 * mc.se_steps);

  // distinct seeds agree within joint noise
  const OrderCheck mc2 = monte_carlo_order_check(kDFR, kFRU, 40000, 999);
  CHECK(std::abs(mc.p_hat - mc2.p_hat) <= 4.0 * std::sqrt(mc.se * mc.se + mc2.se * mc2.se));

  // same seed is reproducible
  const OrderCheck mc3 = monte_carlo_order_check(kDFR, kFRU, 40000, 12345);
  CHECK(mc.p_hat == mc3.p_hat);
  CHECK(mc.mean_steps == mc3.mean_steps);
}

TEST_CASE("writers") {
  const PairScan scan = scan_all_pairs(EdgeSemantics::chain, SolveMethod::exact);
  std::ostringstream a, b;
  write_scan_csv(a, scan);
  write_scan_csv(b, scan);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("a0,b0,semantics,method,z,p_before,deviation,ci_low,ci_high\n", 0) == 0);
  std::ostringstream j;
  write_scan_json(j, scan);
  CHECK(j.str().find("\"max_deviation\"") != std::string::npos);
}
