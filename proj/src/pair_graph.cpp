#include "cubemix/pair_graph.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cubemix/rng.hpp"

namespace cubemix {
namespace {

constexpr int kMaxVertices = 8 * 8 * 8;  // (a,b,flags) keys, a != b reachable

int vertex_key(int a, int b, int flags) { return (a * 8 + b) * 8 + flags; }

std::uint8_t flags_after_update(int a, int b, int flags, Face f) {
  const std::uint8_t mem = corner_members(f);
  const bool ina = (mem >> a) & 1;
  const bool inb = (mem >> b) & 1;
  if (ina != inb) flags |= 1 << int(axis_of(f));
  return std::uint8_t(flags);
}

struct SuccessorSet {
  // targets in deterministic first-encounter order with multiplicities
  std::vector<std::pair<int, int>> keyed;  // (vertex key, count)

  void add(int key, int count) {
    for (auto& [k, c] : keyed) {
      if (k == key) {
        c += count;
        return;
      }
    }
    keyed.emplace_back(key, count);
  }
};

SuccessorSet successors(const PairVertex& v, EdgeSemantics semantics) {
  SuccessorSet out;
  for (int fi = 0; fi < kNumFaces; ++fi) {
    const Face f = Face(fi);
    const std::uint8_t nf = flags_after_update(v.a, v.b, v.flags, f);
    const std::uint8_t mem = corner_members(f);
    const bool ina = (mem >> v.a) & 1;
    const bool inb = (mem >> v.b) & 1;
    if (semantics == EdgeSemantics::chain) {
      if (!ina && !inb) {
        out.add(vertex_key(v.a, v.b, nf), 3);  // all three quarter counts idle
      } else {
        int a = v.a, b = v.b;
        for (int q = 1; q <= 3; ++q) {
          a = corner_image(f, a);
          b = corner_image(f, b);
          out.add(vertex_key(a, b, nf), 1);
        }
      }
    } else {
      // set semantics: four quarter-turn targets per face, deduplicated; the
      // fourth returns the positions but keeps the updated flags
      int a = v.a, b = v.b;
      for (int q = 1; q <= 4; ++q) {
        a = corner_image(f, a);
        b = corner_image(f, b);
        out.add(vertex_key(a, b, nf), 0);
      }
    }
  }
  if (semantics == EdgeSemantics::paper_set)
    for (auto& [k, c] : out.keyed) c = 1;
  return out;
}

}  // namespace

PairGraph PairGraph::build(int a0, int b0, EdgeSemantics semantics, std::uint8_t root_flags) {
  if (a0 == b0) throw std::invalid_argument("PairGraph: the two corners must differ");
  if (a0 < 0 || a0 >= 8 || b0 < 0 || b0 >= 8)
    throw std::invalid_argument("PairGraph: corner slots must be in 0..7");

  PairGraph g;
  g.semantics_ = semantics;

  std::vector<std::int32_t> id_of(kMaxVertices, -1);
  auto intern = [&](int key) {
    if (id_of[key] < 0) {
      id_of[key] = std::int32_t(g.vertices_.size());
      g.vertices_.push_back(
          PairVertex{std::uint8_t(key >> 6 & 7), std::uint8_t(key >> 3 & 7), std::uint8_t(key & 7)});
    }
    return id_of[key];
  };

  intern(vertex_key(a0, b0, root_flags));
  g.edge_begin_.push_back(0);
  for (std::size_t v = 0; v < g.vertices_.size(); ++v) {
    const PairVertex vert = g.vertices_[v];
    if (vert.is_sink()) {
      g.edge_list_.push_back(Edge{std::int32_t(v), 1});
      g.out_total_.push_back(1);
      g.sinks_.push_back(std::int32_t(v));
    } else {
      const SuccessorSet succ = successors(vert, semantics);
      int total = 0;
      for (const auto& [key, count] : succ.keyed) {
        g.edge_list_.push_back(Edge{intern(key), count});
        total += count;
      }
      g.out_total_.push_back(total);
    }
    g.edge_begin_.push_back(std::int32_t(g.edge_list_.size()));
  }

  // every vertex must reach a sink, otherwise absorption is ill-posed
  std::vector<bool> reaches(g.vertices_.size(), false);
  for (std::int32_t s : g.sinks_) reaches[s] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < g.vertices_.size(); ++v) {
      if (reaches[v]) continue;
      for (const Edge& e : g.edges(int(v))) {
        if (reaches[e.to]) {
          reaches[v] = true;
          changed = true;
          break;
        }
      }
    }
  }
  for (bool r : reaches)
    if (!r) throw std::logic_error("PairGraph: vertex cannot reach any sink");
  return g;
}

std::span<const PairGraph::Edge> PairGraph::edges(int v) const {
  return {edge_list_.data() + edge_begin_[v],
          std::size_t(edge_begin_[v + 1] - edge_begin_[v])};
}

MassState spread_mass(const PairGraph& g, double epsilon, int max_iters) {
  if (epsilon <= 0) throw std::invalid_argument("spread_mass: epsilon must be positive");
  const int n = g.vertex_count();
  MassState state;
  state.mass.assign(n, 0.0);
  state.mass[g.root()] = 1.0;

  std::vector<double> next(n);
  auto residual = [&](const std::vector<double>& m) {
    double sinks = 0.0;
    for (std::int32_t s : g.sinks()) sinks += m[s];
    return 1.0 - sinks;
  };

  state.residual = residual(state.mass);
  while (state.residual >= epsilon && state.iterations < max_iters) {
    next.assign(n, 0.0);
    for (int v = 0; v < n; ++v) {
      if (state.mass[v] == 0.0) continue;
      const double share = state.mass[v] / double(g.out_total(v));
      for (const PairGraph::Edge& e : g.edges(v)) next[e.to] += share * double(e.count);
    }
    state.mass.swap(next);
    ++state.iterations;
    state.residual = residual(state.mass);
  }
  state.converged = state.residual < epsilon;
  return state;
}

Absorption absorption_exact(const PairGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::int32_t> trans_id(n, -1);
  std::vector<std::int32_t> trans;
  for (int v = 0; v < n; ++v) {
    if (!g.vertex(v).is_sink()) {
      trans_id[v] = std::int32_t(trans.size());
      trans.push_back(v);
    }
  }
  const int m = int(trans.size());

  Absorption out;
  out.probability.assign(n, 0.0);
  if (m == 0) {
    // the root itself is a sink
    out.probability[g.root()] = 1.0;
    return out;
  }

  // A = (I - Q)^T over transient vertices, rhs = e_root
  std::vector<double> a(std::size_t(m) * m, 0.0);
  std::vector<double> y(m, 0.0);
  for (int i = 0; i < m; ++i) a[std::size_t(i) * m + i] = 1.0;
  for (int ti = 0; ti < m; ++ti) {
    const int v = trans[ti];
    const double inv_total = 1.0 / double(g.out_total(v));
    for (const PairGraph::Edge& e : g.edges(v)) {
      const int tj = trans_id[e.to];
      if (tj >= 0) a[std::size_t(tj) * m + ti] -= double(e.count) * inv_total;
    }
  }
  if (trans_id[g.root()] < 0) {
    out.probability[g.root()] = 1.0;
    return out;
  }
  y[trans_id[g.root()]] = 1.0;

  // Gaussian elimination with partial pivoting
  for (int k = 0; k < m; ++k) {
    int pivot = k;
    for (int r = k + 1; r < m; ++r) {
      if (std::abs(a[std::size_t(r) * m + k]) > std::abs(a[std::size_t(pivot) * m + k])) pivot = r;
    }
    if (a[std::size_t(pivot) * m + k] == 0.0)
      throw std::logic_error("absorption_exact: singular system; graph build is broken");
    if (pivot != k) {
      for (int c = k; c < m; ++c)
        std::swap(a[std::size_t(pivot) * m + c], a[std::size_t(k) * m + c]);
      std::swap(y[pivot], y[k]);
    }
    const double inv = 1.0 / a[std::size_t(k) * m + k];
    for (int r = k + 1; r < m; ++r) {
      const double factor = a[std::size_t(r) * m + k] * inv;
      if (factor == 0.0) continue;
      for (int c = k + 1; c < m; ++c)
        a[std::size_t(r) * m + c] -= factor * a[std::size_t(k) * m + c];
      y[r] -= factor * y[k];
    }
  }
  for (int k = m - 1; k >= 0; --k) {
    double acc = y[k];
    for (int c = k + 1; c < m; ++c) acc -= a[std::size_t(k) * m + c] * y[c];
    y[k] = acc / a[std::size_t(k) * m + k];
  }

  // y holds expected visits; fold transient->sink edges
  for (int ti = 0; ti < m; ++ti) {
    const int v = trans[ti];
    out.expected_steps += y[ti];
    const double inv_total = 1.0 / double(g.out_total(v));
    for (const PairGraph::Edge& e : g.edges(v)) {
      if (g.vertex(e.to).is_sink())
        out.probability[e.to] += y[ti] * double(e.count) * inv_total;
    }
  }
  return out;
}

OrderResult order_probability(const PairGraph& g, SolveMethod method, double epsilon,
                              int max_iters) {
  OrderResult res;
  auto fold = [&](const std::vector<double>& sink_mass) {
    for (std::int32_t s : g.sinks()) {
      res.z += sink_mass[s];
      if (g.vertex(s).a < g.vertex(s).b) res.q += sink_mass[s];
    }
  };

  if (method == SolveMethod::exact) {
    fold(absorption_exact(g).probability);
    res.converged = true;
  } else {
    const MassState state = spread_mass(g, epsilon, max_iters);
    fold(state.mass);
    res.converged = state.converged;
  }
  res.p = res.q / res.z;
  res.ci_low = std::max(res.q, 0.0);
  res.ci_high = res.q + (1.0 - res.z);
  res.deviation = std::abs(res.p - 0.5);
  return res;
}

PairScan scan_all_pairs(EdgeSemantics semantics, SolveMethod method, double epsilon,
                        int max_iters) {
  PairScan scan;
  scan.semantics = semantics;
  scan.method = method;
  for (int a0 = 0; a0 < 8; ++a0) {
    for (int b0 = 0; b0 < 8; ++b0) {
      if (a0 == b0) continue;
      const PairGraph g = PairGraph::build(a0, b0, semantics);
      PairScanRow row{a0, b0, order_probability(g, method, epsilon, max_iters)};
      scan.max_deviation = std::max(scan.max_deviation, row.result.deviation);
      scan.rows.push_back(row);
    }
  }
  return scan;
}

OrderCheck monte_carlo_order_check(int a0, int b0, std::uint64_t trials, std::uint64_t seed) {
  if (a0 == b0 || a0 < 0 || a0 >= 8 || b0 < 0 || b0 >= 8)
    throw std::invalid_argument("monte_carlo_order_check: bad corner pair");
  if (trials < 1) throw std::invalid_argument("monte_carlo_order_check: trials must be >= 1");

  std::uint64_t before = 0;
  std::uint64_t steps_sum = 0;
  std::uint64_t steps_sq = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = Rng::substream(seed, i);
    int a = a0, b = b0, flags = 0;
    std::uint64_t t = 0;
    while (flags != 7) {
      const Face f = Face(rng.below(6));
      const int q = int(rng.below(3)) + 1;
      flags = flags_after_update(a, b, flags, f);
      for (int k = 0; k < q; ++k) {
        a = corner_image(f, a);
        b = corner_image(f, b);
      }
      ++t;
    }
    before += a < b;
    steps_sum += t;
    steps_sq += t * t;
  }

  OrderCheck check;
  check.trials = trials;
  check.p_hat = double(before) / double(trials);
  check.se = std::sqrt(check.p_hat * (1.0 - check.p_hat) / double(trials));
  check.mean_steps = double(steps_sum) / double(trials);
  const double var =
      (double(steps_sq) - double(trials) * check.mean_steps * check.mean_steps) /
      (double(trials) - 1.0);
  check.se_steps = std::sqrt(var / double(trials));
  return check;
}

const char* semantics_name(EdgeSemantics semantics) {
  return semantics == EdgeSemantics::chain ? "chain" : "paper";
}

const char* method_name(SolveMethod method) {
  return method == SolveMethod::exact ? "exact" : "iterate";
}

namespace {

void append_fields(std::ostream& out, const PairScanRow& row, const PairScan& scan) {
  char buf[40];
  out << row.a0 << ',' << row.b0 << ',' << semantics_name(scan.semantics) << ','
      << method_name(scan.method);
  for (double v : {row.result.z, row.result.p, row.result.deviation, row.result.ci_low,
                   row.result.ci_high}) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out << ',' << buf;
  }
  out << '\n';
}

}  // namespace

void write_scan_csv(std::ostream& out, const PairScan& scan) {
  out << "a0,b0,semantics,method,z,p_before,deviation,ci_low,ci_high\n";
  for (const PairScanRow& row : scan.rows) append_fields(out, row, scan);
}

void write_scan_json(std::ostream& out, const PairScan& scan) {
  nlohmann::json j;
  j["semantics"] = semantics_name(scan.semantics);
  j["method"] = method_name(scan.method);
  j["max_deviation"] = scan.max_deviation;
  j["rows"] = nlohmann::json::array();
  for (const PairScanRow& row : scan.rows) {
    j["rows"].push_back({{"a0", row.a0},
                         {"b0", row.b0},
                         {"z", row.result.z},
                         {"p_before", row.result.p},
                         {"deviation", row.result.deviation},
                         {"ci_low", row.result.ci_low},
                         {"ci_high", row.result.ci_high},
                         {"converged", row.result.converged}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace cubemix
