#include "cubemix/unlink_time.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "cubemix/rng.hpp"

namespace cubemix {
namespace {

struct PairList {
  std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
};

const PairList& pair_list(UnlinkModel model) {
  static const PairList corners = [] {
    PairList pl;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) pl.pairs.emplace_back(i, j);
    return pl;
  }();
  static const PairList all = [] {
    PairList pl;
    for (int i = 0; i < 20; ++i)
      for (int j = i + 1; j < 20; ++j) pl.pairs.emplace_back(i, j);
    return pl;
  }();
  return model == UnlinkModel::corners ? corners : all;
}

int simulate_with_rng(UnlinkModel model, Rng& rng, int step_cap) {
  Trajectory traj = Trajectory::solved(model);
  UnlinkFlags flags(model);
  for (int t = 1; t <= step_cap; ++t) {
    const Move m{Face(rng.below(6)), int(rng.below(3)) + 1};
    update_flags(traj, m, flags);
    traj.apply(m);
    if (flags.all_set()) return t;
  }
  throw std::runtime_error("simulate_T: step cap reached; T should be almost surely finite");
}

}  // namespace

int cubie_count(UnlinkModel model) { return model == UnlinkModel::corners ? 8 : 20; }

int pair_count(UnlinkModel model) {
  const int k = cubie_count(model);
  return k * (k - 1) / 2;
}

int pair_index(UnlinkModel model, int i, int j) {
  const int k = cubie_count(model);
  if (i == j || i < 0 || j < 0 || i >= k || j >= k)
    throw std::invalid_argument("pair_index: bad cubie pair");
  if (i > j) std::swap(i, j);
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

UnlinkFlags::UnlinkFlags(UnlinkModel model)
    : model_(model), remaining_(3 * pair_count(model)) {}

bool UnlinkFlags::test(int pair, Axis axis) const {
  return (bits_[int(axis)][pair >> 6] >> (pair & 63)) & 1;
}

void UnlinkFlags::set(int pair, Axis axis) {
  std::uint64_t& word = bits_[int(axis)][pair >> 6];
  const std::uint64_t bit = 1ULL << (pair & 63);
  if (!(word & bit)) {
    word |= bit;
    --remaining_;
  }
}

Trajectory Trajectory::solved(UnlinkModel model) {
  Trajectory t;
  t.model = model;
  for (int i = 0; i < kNumCornerSlots; ++i) t.corner_pos[i] = std::uint8_t(i);
  for (int i = 0; i < kNumEdgeSlots; ++i) t.edge_pos[i] = std::uint8_t(i);
  return t;
}

void Trajectory::apply(Move m) {
  for (int q = 0; q < m.quarters; ++q) {
    for (auto& slot : corner_pos) slot = std::uint8_t(corner_image(m.face, slot));
    if (model == UnlinkModel::rubiks_all)
      for (auto& slot : edge_pos) slot = std::uint8_t(edge_image(m.face, slot));
  }
}

void update_flags(const Trajectory& before_move, Move m, UnlinkFlags& flags) {
  if (before_move.model != flags.model_)
    throw std::invalid_argument("update_flags: model mismatch");
  const int axis = int(axis_of(m.face));
  const std::uint8_t cmem = corner_members(m.face);
  const std::uint16_t emem = edge_members(m.face);

  // on_face bit per cubie (corners 0..7, edges 8..19)
  std::uint32_t on = 0;
  for (int c = 0; c < 8; ++c) on |= std::uint32_t((cmem >> before_move.corner_pos[c]) & 1) << c;
  if (before_move.model == UnlinkModel::rubiks_all) {
    for (int e = 0; e < 12; ++e)
      on |= std::uint32_t((emem >> before_move.edge_pos[e]) & 1) << (8 + e);
  }

  const auto& pairs = pair_list(before_move.model).pairs;
  auto& words = flags.bits_[axis];
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (((on >> pairs[k].first) ^ (on >> pairs[k].second)) & 1) {
      const std::uint64_t bit = 1ULL << (k & 63);
      std::uint64_t& word = words[k >> 6];
      if (!(word & bit)) {
        word |= bit;
        --flags.remaining_;
      }
    }
  }
}

int simulate_T(UnlinkModel model, std::uint64_t seed, int step_cap) {
  Rng rng = Rng::substream(seed, 0);
  return simulate_with_rng(model, rng, step_cap);
}

double TrialHistogram::mean() const {
  double acc = 0.0;
  for (std::size_t t = 0; t < count.size(); ++t) acc += double(t) * double(count[t]);
  return acc / double(trials);
}

double TrialHistogram::stderr_mean() const {
  const double m = mean();
  double ss = 0.0;
  for (std::size_t t = 0; t < count.size(); ++t)
    ss += double(count[t]) * (double(t) - m) * (double(t) - m);
  return std::sqrt(ss / (double(trials) - 1.0) / double(trials));
}

TrialHistogram run_trials(UnlinkModel model, std::uint64_t trials, std::uint64_t seed,
                          int jobs, int step_cap) {
  if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& hist) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      Rng rng = Rng::substream(seed, i);
      const int t = simulate_with_rng(model, rng, step_cap);
      if (std::size_t(t) >= hist.size()) hist.resize(t + 1, 0);
      ++hist[t];
    }
  };

  TrialHistogram out;
  out.trials = trials;
  if (jobs <= 1) {
    run_range(0, trials, out.count);
  } else {
    std::vector<std::vector<std::uint64_t>> parts(jobs);
    std::vector<std::thread> workers;
    const std::uint64_t chunk = (trials + jobs - 1) / std::uint64_t(jobs);
    for (int w = 0; w < jobs; ++w) {
      const std::uint64_t lo = std::min(trials, std::uint64_t(w) * chunk);
      const std::uint64_t hi = std::min(trials, lo + chunk);
      if (lo < hi) workers.emplace_back(run_range, lo, hi, std::ref(parts[w]));
    }
    for (auto& t : workers) t.join();
    for (const auto& part : parts) {
      if (part.size() > out.count.size()) out.count.resize(part.size(), 0);
      for (std::size_t t = 0; t < part.size(); ++t) out.count[t] += part[t];
    }
  }
  return out;
}

SurvivalCurve survival_curve(const TrialHistogram& hist, int t_max) {
  SurvivalCurve curve;
  curve.trials = hist.trials;
  std::uint64_t greater = hist.trials;
  for (int t = 0; t <= t_max; ++t) {
    if (std::size_t(t) < hist.count.size()) greater -= hist.count[t];
    const double p = double(greater) / double(hist.trials);
    curve.p_greater.push_back(p);
    curve.se.push_back(std::sqrt(p * (1.0 - p) / double(hist.trials)));
  }
  return curve;
}

SurvivalCurve survival_curve(UnlinkModel model, std::uint64_t trials, std::uint64_t seed,
                             int t_max, int jobs) {
  return survival_curve(run_trials(model, trials, seed, jobs), t_max);
}

int heuristic_mixing_bound(const SurvivalCurve& curve, double threshold) {
  for (std::size_t t = 0; t < curve.p_greater.size(); ++t) {
    if (curve.p_greater[t] <= threshold) return int(t);
  }
  throw std::runtime_error("heuristic_mixing_bound: curve does not cross threshold; raise t_max");
}

const char* model_name(UnlinkModel model) {
  return model == UnlinkModel::corners ? "corners" : "rubiks-all";
}

void write_survival_csv(std::ostream& out, const SurvivalCurve& curve) {
  out << "t,p_t_less_T,stderr,trials\n";
  char pbuf[40], sbuf[40];
  for (std::size_t t = 0; t < curve.p_greater.size(); ++t) {
    std::snprintf(pbuf, sizeof(pbuf), "%.12g", curve.p_greater[t]);
    std::snprintf(sbuf, sizeof(sbuf), "%.12g", curve.se[t]);
    out << t << ',' << pbuf << ',' << sbuf << ',' << curve.trials << '\n';
  }
}

void write_stats_json(std::ostream& out, UnlinkModel model, std::uint64_t seed,
                      const TrialHistogram& hist, int heuristic_bound) {
  nlohmann::json j;
  j["model"] = model_name(model);
  j["trials"] = hist.trials;
  j["seed"] = seed;
  j["mean_T"] = hist.mean();
  j["stderr_T"] = hist.stderr_mean();
  j["heuristic_bound"] = heuristic_bound;
  out << j.dump(2) << '\n';
}

}  // namespace cubemix
