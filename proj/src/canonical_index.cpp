#include "cubemix/canonical_index.hpp"

#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace cubemix {
namespace {

constexpr int kReferenceCubie = kBDL;
constexpr std::uint32_t kOriRadix = 729;  // 3^6
constexpr char kCacheMagic[5] = {'C', 'M', 'L', 'X', '1'};

constexpr std::uint32_t kFactorial[8] = {1, 1, 2, 6, 24, 120, 720, 5040};

// rotation index that sends the reference cubie home from (slot, twist)
struct CanonLookup {
  std::array<std::array<std::uint8_t, 3>, kNumCornerSlots> rot{};
};

CanonLookup build_canon_lookup() {
  CanonLookup lut;
  std::array<std::array<bool, 3>, kNumCornerSlots> filled{};
  const auto& group = rotation_group();
  for (int ri = 0; ri < kNumRotations; ++ri) {
    const auto& r = group[ri];
    for (int s = 0; s < kNumCornerSlots; ++s) {
      if (r.slot_map[s] != kReferenceCubie) continue;
      const int o = (3 - r.ori_delta[s]) % 3;
      if (filled[s][o]) throw std::logic_error("rotation group does not act freely");
      lut.rot[s][o] = std::uint8_t(ri);
      filled[s][o] = true;
    }
  }
  for (const auto& row : filled)
    for (bool f : row)
      if (!f) throw std::logic_error("rotation lookup incomplete");
  return lut;
}

const CanonLookup& canon_lookup() {
  static const CanonLookup lut = build_canon_lookup();
  return lut;
}

}  // namespace

bool is_canonical(const PocketState& s) {
  return s.cubie[kReferenceCubie] == kReferenceCubie && s.ori[kReferenceCubie] == 0;
}

Canonicalized canonicalize(const PocketState& s) {
  int slot = 0;
  while (s.cubie[slot] != kReferenceCubie) ++slot;
  const int ri = canon_lookup().rot[slot][s.ori[slot]];
  return Canonicalized{rotation_action(rotation_group()[ri], s), ri};
}

std::uint32_t rank(const PocketState& s) {
  if (!is_canonical(s)) throw std::invalid_argument("rank: state is not canonical");
  int twist = 0;
  for (int i = 0; i < kNumCornerSlots; ++i) twist += s.ori[i];
  if (twist % 3 != 0) throw std::invalid_argument("rank: twist constraint violated");

  std::uint32_t perm_rank = 0;
  for (int i = 0; i < 7; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 7; ++j) smaller += s.cubie[j] < s.cubie[i];
    perm_rank += std::uint32_t(smaller) * kFactorial[6 - i];
  }
  std::uint32_t ori_word = 0;
  for (int i = 0; i < 6; ++i) ori_word = ori_word * 3 + s.ori[i];
  return perm_rank * kOriRadix + ori_word;
}

PocketState unrank(std::uint32_t index) {
  if (index >= kCanonicalStateCount) throw std::invalid_argument("unrank: index out of range");
  std::uint32_t perm_rank = index / kOriRadix;
  std::uint32_t ori_word = index % kOriRadix;

  PocketState s;
  std::array<std::uint8_t, 7> avail = {0, 1, 2, 3, 4, 5, 6};
  int navail = 7;
  for (int i = 0; i < 7; ++i) {
    const std::uint32_t f = kFactorial[6 - i];
    const int k = int(perm_rank / f);
    perm_rank %= f;
    s.cubie[i] = avail[k];
    for (int j = k; j + 1 < navail; ++j) avail[j] = avail[j + 1];
    --navail;
  }
  s.cubie[7] = kReferenceCubie;

  int twist = 0;
  for (int i = 5; i >= 0; --i) {
    s.ori[i] = std::uint8_t(ori_word % 3);
    ori_word /= 3;
    twist += s.ori[i];
  }
  s.ori[6] = std::uint8_t((3 - twist % 3) % 3);
  s.ori[7] = 0;
  return s;
}

ReachabilityReport enumerate_reachable(const ProgressFn& progress) {
  // one byte per index: distance from solved, 0xFF = unseen
  std::vector<std::uint8_t> depth(kCanonicalStateCount, 0xFF);
  std::vector<std::uint32_t> frontier, next;
  ReachabilityReport report;

  const std::uint32_t start = rank(PocketState::solved());
  depth[start] = 0;
  frontier.push_back(start);
  report.count = 1;
  report.depth_histogram.push_back(1);

  int level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (std::uint32_t index : frontier) {
      const PocketState state = unrank(index);
      if (rank(state) != index) throw std::logic_error("rank/unrank round-trip failed");
      for (int mi = 0; mi < kNumMoves; ++mi) {
        const PocketState moved = apply_move(state, move_from_index(mi));
        const std::uint32_t j = rank(canonicalize(moved).state);
        if (depth[j] == 0xFF) {
          depth[j] = std::uint8_t(level);
          next.push_back(j);
        }
      }
    }
    if (!next.empty()) {
      report.count += next.size();
      report.depth_histogram.push_back(next.size());
      if (progress) {
        progress("bfs depth " + std::to_string(level) + ": " +
                 std::to_string(next.size()) + " new, " +
                 std::to_string(report.count) + " total");
      }
    }
    frontier.swap(next);
  }
  return report;
}

MoveTables::MoveTables(std::uint32_t n, std::vector<std::uint32_t> flat)
    : n_(n), flat_(std::move(flat)) {
  if (flat_.size() != std::size_t(kNumMoves) * n_)
    throw std::invalid_argument("MoveTables: bad table size");
}

MoveTables MoveTables::build(int jobs, const ProgressFn& progress) {
  const std::uint32_t n = kCanonicalStateCount;
  std::vector<std::uint32_t> flat(std::size_t(kNumMoves) * n);

  auto fill_range = [&](std::uint32_t lo, std::uint32_t hi) {
    for (std::uint32_t i = lo; i < hi; ++i) {
      const PocketState state = unrank(i);
      for (int mi = 0; mi < kNumMoves; ++mi) {
        const PocketState moved = apply_move(state, move_from_index(mi));
        flat[std::size_t(mi) * n + i] = rank(canonicalize(moved).state);
      }
    }
  };

  if (jobs <= 1) {
    for (std::uint32_t lo = 0; lo < n; lo += 1u << 18) {
      fill_range(lo, std::min(n, lo + (1u << 18)));
      if (progress && (lo >> 18) % 4 == 3)
        progress("move tables: " + std::to_string(std::min(n, lo + (1u << 18))) + "/" +
                 std::to_string(n));
    }
  } else {
    std::vector<std::thread> workers;
    const std::uint32_t chunk = (n + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      const std::uint32_t lo = std::min(n, std::uint32_t(w) * chunk);
      const std::uint32_t hi = std::min(n, lo + chunk);
      if (lo < hi) workers.emplace_back(fill_range, lo, hi);
    }
    for (auto& t : workers) t.join();
  }
  if (progress) progress("move tables: built");

  MoveTables tables(n, std::move(flat));
  if (!tables.tables_are_permutations())
    throw std::logic_error("move table build produced a non-bijective table");
  return tables;
}

bool MoveTables::tables_are_permutations() const {
  std::vector<bool> seen(n_);
  for (int mi = 0; mi < kNumMoves; ++mi) {
    seen.assign(n_, false);
    const std::uint32_t* t = table(mi);
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (t[i] >= n_ || seen[t[i]]) return false;
      seen[t[i]] = true;
    }
  }
  return true;
}

void MoveTables::save(const std::filesystem::path& cache_file) const {
  if (cache_file.has_parent_path()) std::filesystem::create_directories(cache_file.parent_path());
  const std::filesystem::path tmp = cache_file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out.write(kCacheMagic, sizeof(kCacheMagic));
    std::uint8_t header[8];
    std::uint64_t n = n_;
    for (int b = 0; b < 8; ++b) header[b] = std::uint8_t(n >> (8 * b));
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    std::vector<std::uint8_t> buf;
    buf.reserve(std::size_t(n_) * 4);
    for (int mi = 0; mi < kNumMoves; ++mi) {
      buf.clear();
      const std::uint32_t* t = table(mi);
      for (std::uint32_t i = 0; i < n_; ++i) {
        buf.push_back(std::uint8_t(t[i]));
        buf.push_back(std::uint8_t(t[i] >> 8));
        buf.push_back(std::uint8_t(t[i] >> 16));
        buf.push_back(std::uint8_t(t[i] >> 24));
      }
      out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
    }
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, cache_file);
}

std::optional<MoveTables> MoveTables::load(const std::filesystem::path& cache_file) {
  std::ifstream in(cache_file, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[5];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) return std::nullopt;
  std::uint8_t header[8];
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!in) return std::nullopt;
  std::uint64_t n = 0;
  for (int b = 7; b >= 0; --b) n = (n << 8) | header[b];
  if (n != kCanonicalStateCount) return std::nullopt;

  std::vector<std::uint32_t> flat(std::size_t(kNumMoves) * n);
  std::vector<std::uint8_t> buf(std::size_t(n) * 4);
  for (int mi = 0; mi < kNumMoves; ++mi) {
    in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
    if (!in) return std::nullopt;
    for (std::uint64_t i = 0; i < n; ++i) {
      flat[std::size_t(mi) * n + i] =
          std::uint32_t(buf[4 * i]) | std::uint32_t(buf[4 * i + 1]) << 8 |
          std::uint32_t(buf[4 * i + 2]) << 16 | std::uint32_t(buf[4 * i + 3]) << 24;
    }
  }
  if (in.get() != std::ifstream::traits_type::eof()) return std::nullopt;

  MoveTables tables(std::uint32_t(n), std::move(flat));
  if (!tables.tables_are_permutations()) return std::nullopt;
  return tables;
}

MoveTables MoveTables::load_or_build(const std::filesystem::path& cache_file, int jobs,
                                     const ProgressFn& progress) {
  if (auto cached = load(cache_file)) {
    if (progress) progress("move tables: loaded from " + cache_file.string());
    return std::move(*cached);
  }
  MoveTables tables = build(jobs, progress);
  tables.save(cache_file);
  if (progress) progress("move tables: cached to " + cache_file.string());
  return tables;
}

}  // namespace cubemix
