#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cubemix/cube_model.hpp"

namespace cubemix {

// Number of Pocket cube states up to whole-cube rotation: 7! * 3^6. The BFS
// in enumerate_reachable() confirms that all of them are reachable.
inline constexpr std::uint32_t kCanonicalStateCount = 3674160;

using ProgressFn = std::function<void(const std::string&)>;

// A state is canonical when the reference cubie (home slot BDL) sits in slot
// BDL with twist 0. Exactly one of the 24 rotations of any state is
// canonical.
bool is_canonical(const PocketState& s);

struct Canonicalized {
  PocketState state;
  int rotation;  // index into rotation_group(); state == rotation * input
};
Canonicalized canonicalize(const PocketState& s);

// Mixed-radix bijection between canonical states and [0, kCanonicalStateCount):
// Lehmer rank of the 7 non-reference cubies times 3^6, plus the base-3 word of
// the first six twists. The seventh twist is implied by the mod-3 twist
// constraint and the reference cubie is pinned, so the encoding is dense.
// rank() throws std::invalid_argument on a non-canonical or twist-violating
// state (which only a corrupted caller can produce).
std::uint32_t rank(const PocketState& canonical);
PocketState unrank(std::uint32_t index);

struct ReachabilityReport {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> depth_histogram;  // [d] = states at distance d

  int max_depth() const { return int(depth_histogram.size()) - 1; }
};

// Breadth-first search from canonical solved under the 18 moves followed by
// canonicalization. Also verifies rank/unrank round-trips on every index it
// expands.
ReachabilityReport enumerate_reachable(const ProgressFn& progress = nullptr);

// Precomputed projected-chain tables: table(m)[i] is the canonical index
// reached from index i by move m. Each table is a permutation of the index
// space.
class MoveTables {
 public:
  MoveTables(std::uint32_t n, std::vector<std::uint32_t> flat);

  static MoveTables build(int jobs = 1, const ProgressFn& progress = nullptr);

  // Binary cache: magic "CMLX1", N as u64 LE, then 18 tables of N u32 LE in
  // move order (B,D,F,L,R,U) x (1,2,3). Rebuilds when missing or invalid.
  static MoveTables load_or_build(const std::filesystem::path& cache_file,
                                  int jobs = 1, const ProgressFn& progress = nullptr);
  static std::optional<MoveTables> load(const std::filesystem::path& cache_file);
  void save(const std::filesystem::path& cache_file) const;

  std::uint32_t size() const { return n_; }
  const std::uint32_t* table(int move) const { return flat_.data() + std::size_t(move) * n_; }
  std::uint32_t apply(int move, std::uint32_t index) const { return table(move)[index]; }

  // Occupancy check that every table is a bijection on [0, N).
  bool tables_are_permutations() const;

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> flat_;
};

}  // namespace cubemix
