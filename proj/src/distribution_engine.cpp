#include "cubemix/distribution_engine.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace cubemix {

ProbVector point_mass(std::uint32_t n, std::uint32_t index) {
  if (index >= n) throw std::invalid_argument("point_mass: index out of range");
  ProbVector p(n, 0.0);
  p[index] = 1.0;
  return p;
}

void step(const MoveTables& tables, const ProbVector& in, ProbVector& out, int jobs) {
  const std::uint32_t n = tables.size();
  if (in.size() != n) throw std::invalid_argument("step: vector size mismatch");
  out.resize(n);

  // Gather tables in canonical move order; entry mi reads the preimage of
  // move mi, i.e. the forward table of its inverse.
  const std::uint32_t* pre[kNumMoves];
  for (int mi = 0; mi < kNumMoves; ++mi)
    pre[mi] = tables.table(move_index(inverse(move_from_index(mi))));

  auto run = [&](std::uint32_t lo, std::uint32_t hi) {
    constexpr double kInv = 1.0 / kNumMoves;
    for (std::uint32_t j = lo; j < hi; ++j) {
      double acc = 0.0;
      for (int mi = 0; mi < kNumMoves; ++mi) acc += in[pre[mi][j]];
      out[j] = acc * kInv;
    }
  };

  if (jobs <= 1) {
    run(0, n);
  } else {
    std::vector<std::thread> workers;
    const std::uint32_t chunk = (n + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      const std::uint32_t lo = std::min(n, std::uint32_t(w) * chunk);
      const std::uint32_t hi = std::min(n, lo + chunk);
      if (lo < hi) workers.emplace_back(run, lo, hi);
    }
    for (auto& t : workers) t.join();
  }
}

double tv_distance(const ProbVector& p) {
  const double u = 1.0 / double(p.size());
  double acc = 0.0;
  for (double x : p) acc += std::abs(x - u);
  return 0.5 * acc;
}

namespace {

double mass_error(const ProbVector& p) {
  double sum = 0.0;
  for (double x : p) sum += x;
  return std::abs(sum - 1.0);
}

}  // namespace

MixingReport mixing_time(const MoveTables& tables, double threshold, int jobs,
                         const ProgressFn& progress, int max_steps) {
  MixingReport report;
  ProbVector p = point_mass(tables.size(), rank(PocketState::solved()));
  ProbVector scratch(tables.size());

  report.tv.push_back(tv_distance(p));
  for (int t = 1; report.tv.back() > threshold; ++t) {
    if (t > max_steps)
      throw std::runtime_error("mixing_time: threshold not reached within step budget");
    step(tables, p, scratch, jobs);
    p.swap(scratch);
    const double err = mass_error(p);
    if (err > report.max_mass_error) report.max_mass_error = err;
    if (err > 1e-9) throw std::logic_error("mixing_time: probability mass not conserved");
    report.tv.push_back(tv_distance(p));
    if (progress)
      progress("t=" + std::to_string(t) + " d(t)=" + std::to_string(report.tv.back()));
  }
  report.tau = int(report.tv.size()) - 1;
  return report;
}

void write_mixing_csv(std::ostream& out, const MixingReport& report) {
  out << "t,tv_distance\n";
  char buf[40];
  for (std::size_t t = 0; t < report.tv.size(); ++t) {
    std::snprintf(buf, sizeof(buf), "%.12g", report.tv[t]);
    out << t << ',' << buf << '\n';
  }
}

void write_mixing_json(std::ostream& out, const MixingReport& report, double threshold) {
  nlohmann::json j;
  j["threshold"] = threshold;
  j["tau"] = report.tau;
  j["trace"] = nlohmann::json::array();
  for (std::size_t t = 0; t < report.tv.size(); ++t)
    j["trace"].push_back({{"t", t}, {"tv_distance", report.tv[t]}});
  out << j.dump(2) << '\n';
}

}  // namespace cubemix
