#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cubemix/cube_model.hpp"

namespace cubemix {

// Edge weighting of the pair graph.
//   chain:     each of the 18 moves contributes weight 1/18 to its successor
//              (multiplicities merged); faces touching neither position yield
//              self-loops.
//   paper_set: successors are the deduplicated set produced by letting each
//              face act 1..4 quarter turns with flags updated once per face;
//              mass is split uniformly over that set. The 4-quarter target
//              returns the positions with updated flags, so this differs from
//              the chain whenever flags change or successors collide.
enum class EdgeSemantics { chain, paper_set };

enum class SolveMethod { exact, iterate };

// Vertex of the pair graph: ordered positions of the two tracked corners plus
// the three axis-unlink flags packed as bits x|y<<1|z<<2. Sinks are exactly
// the vertices with flags == 7.
struct PairVertex {
  std::uint8_t a = 0;
  std::uint8_t b = 0;
  std::uint8_t flags = 0;

  bool is_sink() const { return flags == 7; }
  friend bool operator==(const PairVertex&, const PairVertex&) = default;
};

class PairGraph {
 public:
  struct Edge {
    std::int32_t to;
    std::int32_t count;  // weight = count / out_total(from)
  };

  // Reachable subgraph from (a0, b0, root_flags); vertices are discovered in
  // deterministic BFS order with the root at index 0. Sinks receive a unit
  // self-loop. Throws std::invalid_argument on a0 == b0 and std::logic_error
  // if some vertex cannot reach a sink.
  static PairGraph build(int a0, int b0, EdgeSemantics semantics,
                         std::uint8_t root_flags = 0);

  EdgeSemantics semantics() const { return semantics_; }
  int root() const { return 0; }
  int vertex_count() const { return int(vertices_.size()); }
  const PairVertex& vertex(int v) const { return vertices_[v]; }
  std::span<const Edge> edges(int v) const;
  int out_total(int v) const { return out_total_[v]; }
  const std::vector<std::int32_t>& sinks() const { return sinks_; }

 private:
  EdgeSemantics semantics_ = EdgeSemantics::chain;
  std::vector<PairVertex> vertices_;
  std::vector<std::int32_t> edge_begin_;  // CSR offsets, size vertex_count()+1
  std::vector<Edge> edge_list_;
  std::vector<std::int32_t> out_total_;
  std::vector<std::int32_t> sinks_;
};

struct MassState {
  std::vector<double> mass;  // per vertex
  double residual = 1.0;     // mass outside sinks
  int iterations = 0;
  bool converged = false;
};

// Step 4 of the refutation: start with mass 1 on the root and push every
// vertex's mass along its outgoing weighted edges until the mass outside the
// sinks drops below epsilon (or max_iters is hit, reported as non-converged).
MassState spread_mass(const PairGraph& g, double epsilon = 1e-9, int max_iters = 10000);

struct Absorption {
  std::vector<double> probability;  // per vertex; nonzero only on sinks
  double expected_steps = 0.0;      // expected moves until absorption
};

// Exact absorbing-chain solve: expected visits y solve (I-Q)^T y = e_root by
// dense Gaussian elimination with partial pivoting; sink s absorbs
// sum_v y[v] w(v->s). Sums to 1 up to roundoff.
Absorption absorption_exact(const PairGraph& g);

struct OrderResult {
  double z = 0.0;          // absorbed mass (1 for the exact method)
  double q = 0.0;          // absorbed mass on sinks with a < b
  double p = 0.0;          // q / z
  double ci_low = 0.0;     // conservative interval [q, q + (1-z)]
  double ci_high = 0.0;
  double deviation = 0.0;  // |p - 1/2|
  bool converged = true;
};

// Probability that the corner tracked from a0 sits before the one from b0 (in
// slot order) at the moment the pair becomes fully unlinked.
OrderResult order_probability(const PairGraph& g, SolveMethod method,
                              double epsilon = 1e-9, int max_iters = 10000);

struct PairScanRow {
  int a0;
  int b0;
  OrderResult result;
};

struct PairScan {
  EdgeSemantics semantics;
  SolveMethod method;
  std::vector<PairScanRow> rows;  // all 56 ordered pairs, lexicographic
  double max_deviation = 0.0;
};

PairScan scan_all_pairs(EdgeSemantics semantics, SolveMethod method,
                        double epsilon = 1e-9, int max_iters = 10000);

struct OrderCheck {
  double p_hat = 0.0;
  double se = 0.0;
  double mean_steps = 0.0;
  double se_steps = 0.0;
  std::uint64_t trials = 0;
};

// Direct simulation of the chain tracking two corners from (a0, b0); records
// whether a sits before b at the first fully-unlinked step. Independent of
// the graph machinery, so it serves as its oracle.
OrderCheck monte_carlo_order_check(int a0, int b0, std::uint64_t trials, std::uint64_t seed);

const char* semantics_name(EdgeSemantics semantics);
const char* method_name(SolveMethod method);

// CSV: "a0,b0,semantics,method,z,p_before,deviation,ci_low,ci_high"
void write_scan_csv(std::ostream& out, const PairScan& scan);
// JSON mirror with a top-level max_deviation field.
void write_scan_json(std::ostream& out, const PairScan& scan);

}  // namespace cubemix
