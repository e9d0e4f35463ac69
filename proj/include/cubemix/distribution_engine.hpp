#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cubemix/canonical_index.hpp"

namespace cubemix {

// Dense probability vector over canonical indices.
using ProbVector = std::vector<double>;

ProbVector point_mass(std::uint32_t n, std::uint32_t index);

// One step of the projected chain: out[j] = (1/18) sum_m in[preimage of j
// under move m]. The preimage under (f,q) is read from the table of the
// inverse move (f,4-q), and the 18 terms are accumulated in canonical move
// order per destination, so the result is bitwise identical for any number of
// jobs.
void step(const MoveTables& tables, const ProbVector& in, ProbVector& out, int jobs = 1);

// Total variation distance to the uniform distribution: (1/2) sum |p - 1/N|.
double tv_distance(const ProbVector& p);

struct MixingReport {
  std::vector<double> tv;  // tv[t] = d(t), starting at t = 0
  int tau = -1;            // smallest t with d(t) <= threshold
  double max_mass_error = 0.0;  // max over steps of |sum p - 1|
};

// Evolves the point mass at canonical solved and records d(t) until it drops
// to `threshold` (1/4 by default).
MixingReport mixing_time(const MoveTables& tables, double threshold = 0.25, int jobs = 1,
                         const ProgressFn& progress = nullptr, int max_steps = 1000);

// CSV trace: header "t,tv_distance", distances with 12 significant digits.
void write_mixing_csv(std::ostream& out, const MixingReport& report);
void write_mixing_json(std::ostream& out, const MixingReport& report, double threshold);

}  // namespace cubemix
