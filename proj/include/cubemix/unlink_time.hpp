#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cubemix/cube_model.hpp"

namespace cubemix {

// Which cubies take part in the pair bookkeeping: the 8 corners alone (the
// Pocket cube view) or all 20 movable cubies of the 3x3x3.
enum class UnlinkModel { corners, rubiks_all };

int cubie_count(UnlinkModel model);  // 8 or 20
int pair_count(UnlinkModel model);   // C(k,2): 28 or 190

// Unordered pair index for cubies i < j (corners 0..7, then edges 8..19).
int pair_index(UnlinkModel model, int i, int j);

// Bitset over (pair, axis). Bits are only ever set, never cleared, matching
// the monotone notion of "has been unlinked at some previous step".
class UnlinkFlags {
 public:
  explicit UnlinkFlags(UnlinkModel model);

  UnlinkModel model() const { return model_; }
  bool test(int pair, Axis axis) const;
  void set(int pair, Axis axis);
  bool all_set() const { return remaining_ == 0; }
  int set_count() const { return 3 * pair_count(model_) - remaining_; }

 private:
  friend void update_flags(const struct Trajectory&, Move, UnlinkFlags&);
  UnlinkModel model_;
  int remaining_;
  std::array<std::array<std::uint64_t, 3>, 3> bits_{};  // [axis][word]
};

// Chain trajectory state, tracked as cubie -> slot so the face-membership
// test per pair is a couple of bit probes.
struct Trajectory {
  UnlinkModel model;
  std::array<std::uint8_t, kNumCornerSlots> corner_pos{};  // cubie -> slot
  std::array<std::uint8_t, kNumEdgeSlots> edge_pos{};

  static Trajectory solved(UnlinkModel model);
  void apply(Move m);
};

// Flag pass for one move, evaluated on the positions *before* the move is
// applied: for every pair with exactly one cubie on the turned face, set that
// pair's bit for the face's axis. Any quarters value counts as a rotation.
void update_flags(const Trajectory& before_move, Move m, UnlinkFlags& flags);

// Runs the chain from solved until every (pair, axis) bit is set and returns
// the step count. A trajectory exceeding step_cap throws std::runtime_error:
// T is almost surely finite, so hitting the cap signals a broken RNG or flag
// update.
int simulate_T(UnlinkModel model, std::uint64_t seed, int step_cap = 10000);

struct TrialHistogram {
  std::vector<std::uint64_t> count;  // count[t] = trials with T == t
  std::uint64_t trials = 0;

  double mean() const;
  double stderr_mean() const;
  int max_t() const { return int(count.size()) - 1; }
};

// Seeded trials on independent substreams (seed, trial index). Aggregation is
// a histogram of integers, so the result is identical for any job count.
TrialHistogram run_trials(UnlinkModel model, std::uint64_t trials, std::uint64_t seed,
                          int jobs = 1, int step_cap = 10000);

struct SurvivalCurve {
  std::vector<double> p_greater;  // [t] = estimate of P(t < T)
  std::vector<double> se;         // binomial standard error
  std::uint64_t trials = 0;
};

SurvivalCurve survival_curve(const TrialHistogram& hist, int t_max);
SurvivalCurve survival_curve(UnlinkModel model, std::uint64_t trials, std::uint64_t seed,
                             int t_max, int jobs = 1);

// Smallest t with the survival estimate <= threshold. This is only a
// heuristic mixing bound: T is not a strong uniform time, so the inequality
// d(t) <= P(t < T) it would justify does not actually hold. Throws
// std::runtime_error if the curve never crosses within its range.
int heuristic_mixing_bound(const SurvivalCurve& curve, double threshold = 0.25);

const char* model_name(UnlinkModel model);

// CSV: "t,p_t_less_T,stderr,trials"
void write_survival_csv(std::ostream& out, const SurvivalCurve& curve);
// JSON: {model, trials, seed, mean_T, stderr_T, heuristic_bound}
void write_stats_json(std::ostream& out, UnlinkModel model, std::uint64_t seed,
                      const TrialHistogram& hist, int heuristic_bound);

}  // namespace cubemix
