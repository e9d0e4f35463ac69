#include "cubemix/verify.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "cubemix/canonical_index.hpp"
#include "cubemix/cube_model.hpp"
#include "cubemix/rng.hpp"

namespace cubemix {
namespace {

PocketState random_state(Rng& rng) {
  PocketState s = PocketState::solved();
  // random reachable state via random moves, so the twist constraint holds
  for (int k = 0; k < 40; ++k)
    s = apply_move(s, Move{Face(rng.below(6)), int(rng.below(3)) + 1});
  return s;
}

std::multiset<std::uint32_t> successor_multiset(const PocketState& s) {
  std::multiset<std::uint32_t> out;
  for (int mi = 0; mi < kNumMoves; ++mi)
    out.insert(rank(canonicalize(apply_move(s, move_from_index(mi))).state));
  return out;
}

}  // namespace

std::vector<CheckResult> model_invariant_checks(std::uint64_t seed) {
  std::vector<CheckResult> results;
  auto add = [&](std::string name, bool pass, std::string detail = "") {
    results.push_back(CheckResult{std::move(name), pass, std::move(detail)});
  };
  Rng rng(seed);

  {
    bool ok = true;
    for (int fi = 0; fi < kNumFaces && ok; ++fi) {
      const Face f = Face(fi);
      std::array<bool, kNumCornerSlots> hit{};
      int moved = 0;
      for (int s = 0; s < kNumCornerSlots; ++s) {
        const int t = corner_image(f, s);
        ok = ok && !hit[t];
        hit[t] = true;
        if (t != s) ++moved;
        ok = ok && (corner_on_face(f, s) == (t != s));
      }
      ok = ok && moved == 4;
      // the 4 moved slots form a single 4-cycle
      int s0 = 0;
      while (!corner_on_face(f, s0)) ++s0;
      int s = s0, len = 0;
      do {
        s = corner_image(f, s);
        ++len;
      } while (s != s0 && len <= 8);
      ok = ok && len == 4;
    }
    add("corner table rows are 4-cycles on the face members", ok);
  }

  {
    // appendix sets: corners moved by F, L and U
    const std::set<int> bf = {kFLU, kFRU, kDFR, kDFL};
    const std::set<int> lr = {kFLU, kBLU, kBDL, kDFL};
    const std::set<int> du = {kFLU, kBLU, kBRU, kFRU};
    auto members_set = [](Face f) {
      std::set<int> out;
      for (int s = 0; s < kNumCornerSlots; ++s)
        if (corner_on_face(f, s)) out.insert(s);
      return out;
    };
    add("face members match the F/L/U corner sets",
        members_set(Face::F) == bf && members_set(Face::L) == lr && members_set(Face::U) == du);
  }

  {
    bool ok = true;
    for (int fi = 0; fi < kNumFaces; ++fi)
      for (int s = 0; s < kNumCornerSlots; ++s) {
        int t = s;
        for (int k = 0; k < 4; ++k) t = corner_image(Face(fi), t);
        ok = ok && t == s;
        t = s;
        for (int k = 0; k < 4; ++k) t = edge_image(Face(fi), t);
        ok = ok && t == s;
      }
    add("four quarter turns are the identity (corners and edges)", ok);
  }

  {
    bool ok = true;
    for (int fi = 0; fi < kNumFaces && ok; ++fi) {
      std::array<bool, kNumEdgeSlots> hit{};
      int moved = 0;
      for (int s = 0; s < kNumEdgeSlots; ++s) {
        const int t = edge_image(Face(fi), s);
        ok = ok && !hit[t];
        hit[t] = true;
        if (t != s) ++moved;
      }
      ok = ok && moved == 4;
    }
    add("edge table rows are permutations moving 4 slots", ok);
  }

  {
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
      const PocketState s = random_state(rng);
      for (auto [f, g] : {std::pair{Face::B, Face::F}, {Face::D, Face::U}, {Face::L, Face::R}}) {
        const int qf = int(rng.below(3)) + 1, qg = int(rng.below(3)) + 1;
        const PocketState fg = apply_move(apply_move(s, {f, qf}), {g, qg});
        const PocketState gf = apply_move(apply_move(s, {g, qg}), {f, qf});
        ok = ok && fg == gf;
      }
    }
    add("opposite-face moves commute", ok);
  }

  {
    bool ok = true;
    const auto& group = rotation_group();
    for (const auto& r : group) {
      for (int fi = 0; fi < kNumFaces; ++fi) {
        for (int s = 0; s < kNumCornerSlots; ++s) {
          // rho . M[f] == M[rho(f)] . rho on slots
          ok = ok && r.slot_map[corner_image(Face(fi), s)] ==
                         corner_image(Face(r.face_map[fi]), r.slot_map[s]);
        }
      }
    }
    add("conjugation: rho M[f] rho^-1 == M[rho(f)] for all 24 rotations", ok);
  }

  {
    const auto& group = rotation_group();
    bool ok = group.size() == kNumRotations;
    std::set<std::array<std::uint8_t, kNumCornerSlots>> slot_maps;
    std::set<std::pair<int, int>> ref_images;
    for (int i = 0; i < kNumRotations; ++i) {
      slot_maps.insert(group[i].slot_map);
      ref_images.insert({group[i].slot_map[kBDL], group[i].ori_delta[kBDL]});
      ok = ok && inverse_rotation(i) >= 0;
    }
    ok = ok && ref_images.size() == kNumRotations;  // simply transitive on (slot, twist)
    add("rotation group: 24 elements, free action on the reference cubie", ok,
        "distinct slot maps: " + std::to_string(slot_maps.size()));
  }

  {
    bool all_canonical_solved = true;
    std::vector<PocketState> seen;
    for (const auto& r : rotation_group()) {
      const PocketState rotated = rotation_action(r, PocketState::solved());
      if (std::find(seen.begin(), seen.end(), rotated) == seen.end()) seen.push_back(rotated);
      all_canonical_solved =
          all_canonical_solved && canonicalize(rotated).state == PocketState::solved();
    }
    add("orbit of solved: 24 distinct states, one canonical class",
        seen.size() == kNumRotations && all_canonical_solved);
  }

  {
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const PocketState s = random_state(rng);
      const auto& r = rotation_group()[rng.below(kNumRotations)];
      ok = successor_multiset(s) == successor_multiset(rotation_action(r, s));
    }
    add("lumping: canonical successor multiset is orbit-invariant", ok);
  }

  {
    bool ok = true;
    PocketState s = PocketState::solved();
    for (int k = 0; k < 300 && ok; ++k) {
      s = apply_move(s, Move{Face(rng.below(6)), int(rng.below(3)) + 1});
      int twist = 0;
      for (int i = 0; i < kNumCornerSlots; ++i) twist += s.ori[i];
      ok = twist % 3 == 0;
    }
    add("twist sum stays 0 mod 3 along trajectories", ok);
  }

  {
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
      const PocketState c = canonicalize(random_state(rng)).state;
      ok = unrank(rank(c)) == c;
    }
    add("rank/unrank round-trip on random reachable states", ok);
  }

  return results;
}

}  // namespace cubemix
