#include "cubemix/cube_model.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace cubemix {
namespace {

// Corner move table: kCornerMove[f][s] is the slot the cubie at slot s
// occupies after one quarter turn of face f. Rows are in face order B,D,F,L,
// R,U over columns DFR,FRU,BRU,BDR,FLU,DFL,BLU,BDL. All six turns are
// clockwise as seen from outside the turned face.
constexpr std::uint8_t kCornerMove[kNumFaces][kNumCornerSlots] = {
    {0, 1, 6, 2, 4, 5, 7, 3},  // B
    {3, 1, 2, 7, 4, 0, 6, 5},  // D
    {5, 0, 2, 3, 1, 4, 6, 7},  // F
    {0, 1, 2, 3, 5, 7, 4, 6},  // L
    {1, 2, 3, 0, 4, 5, 6, 7},  // R
    {0, 4, 1, 3, 6, 5, 2, 7},  // U
};

// Twist added to the cubie leaving slot s under one quarter turn of face f.
// U and D turns keep the U/D stickers on the U/D layer, so their deltas are
// zero; the other faces alternate 1/2 around their 4-cycle.
constexpr std::uint8_t kCornerOriDelta[kNumFaces][kNumCornerSlots] = {
    {0, 0, 2, 1, 0, 0, 1, 2},  // B
    {0, 0, 0, 0, 0, 0, 0, 0},  // D
    {2, 1, 0, 0, 2, 1, 0, 0},  // F
    {0, 0, 0, 0, 1, 2, 2, 1},  // L
    {1, 2, 1, 2, 0, 0, 0, 0},  // R
    {0, 0, 0, 0, 0, 0, 0, 0},  // U
};

// Edge move table over the 12 edge slots, numbered lexicographically by
// face-pair name: BD,BL,BR,BU,DF,DL,DR,FL,FR,FU,LU,RU = 0..11.
constexpr std::uint8_t kEdgeMove[kNumFaces][kNumEdgeSlots] = {
    {2, 0, 3, 1, 4, 5, 6, 7, 8, 9, 10, 11},   // B
    {5, 1, 2, 3, 6, 4, 0, 7, 8, 9, 10, 11},   // D
    {0, 1, 2, 3, 7, 5, 6, 9, 4, 8, 10, 11},   // F
    {0, 10, 2, 3, 4, 1, 6, 5, 8, 9, 7, 11},   // L
    {0, 1, 6, 3, 4, 5, 8, 7, 11, 9, 10, 2},   // R
    {0, 1, 2, 11, 4, 5, 6, 7, 8, 10, 3, 9},   // U
};

constexpr std::string_view kFaceNames[kNumFaces] = {"B", "D", "F", "L", "R", "U"};
constexpr std::string_view kCornerNames[kNumCornerSlots] = {
    "DFR", "FRU", "BRU", "BDR", "FLU", "DFL", "BLU", "BDL"};
constexpr std::string_view kEdgeNames[kNumEdgeSlots] = {
    "BD", "BL", "BR", "BU", "DF", "DL", "DR", "FL", "FR", "FU", "LU", "RU"};

constexpr std::uint8_t make_corner_members(int f) {
  std::uint8_t mask = 0;
  for (int s = 0; s < kNumCornerSlots; ++s) {
    if (kCornerMove[f][s] != s) mask |= std::uint8_t(1u << s);
  }
  return mask;
}

constexpr std::uint16_t make_edge_members(int f) {
  std::uint16_t mask = 0;
  for (int s = 0; s < kNumEdgeSlots; ++s) {
    if (kEdgeMove[f][s] != s) mask |= std::uint16_t(1u << s);
  }
  return mask;
}

constexpr std::uint8_t kCornerMembers[kNumFaces] = {
    make_corner_members(0), make_corner_members(1), make_corner_members(2),
    make_corner_members(3), make_corner_members(4), make_corner_members(5)};

constexpr std::uint16_t kEdgeMembers[kNumFaces] = {
    make_edge_members(0), make_edge_members(1), make_edge_members(2),
    make_edge_members(3), make_edge_members(4), make_edge_members(5)};

std::array<std::uint8_t, kNumFaces> face_map_from_slots(
    const std::array<std::uint8_t, kNumCornerSlots>& slot_map) {
  std::array<std::uint8_t, kNumFaces> fm{};
  for (int f = 0; f < kNumFaces; ++f) {
    std::uint8_t image = 0;
    for (int s = 0; s < kNumCornerSlots; ++s) {
      if ((kCornerMembers[f] >> s) & 1) image |= std::uint8_t(1u << slot_map[s]);
    }
    int found = -1;
    for (int g = 0; g < kNumFaces; ++g) {
      if (kCornerMembers[g] == image) found = g;
    }
    assert(found >= 0);
    fm[f] = std::uint8_t(found);
  }
  return fm;
}

CubeRotation compose(const CubeRotation& second, const CubeRotation& first) {
  CubeRotation r;
  for (int s = 0; s < kNumCornerSlots; ++s) {
    r.slot_map[s] = second.slot_map[first.slot_map[s]];
    r.ori_delta[s] =
        std::uint8_t((first.ori_delta[s] + second.ori_delta[first.slot_map[s]]) % 3);
  }
  r.face_map = face_map_from_slots(r.slot_map);
  return r;
}

// Whole-cube rotation about the axis of face f, turning in f's direction.
// On f's layer it acts like the f turn; on the opposite layer like the
// inverse turn of the opposite face.
CubeRotation rotation_about(Face f) {
  const int fi = int(f);
  const int oi = int(opposite(f));
  CubeRotation r;
  for (int s = 0; s < kNumCornerSlots; ++s) {
    if ((kCornerMembers[fi] >> s) & 1) {
      r.slot_map[s] = kCornerMove[fi][s];
      r.ori_delta[s] = kCornerOriDelta[fi][s];
    } else {
      int t = 0;
      while (kCornerMove[oi][t] != s) ++t;
      r.slot_map[s] = std::uint8_t(t);
      r.ori_delta[s] = std::uint8_t((3 - kCornerOriDelta[oi][t]) % 3);
    }
  }
  r.face_map = face_map_from_slots(r.slot_map);
  return r;
}

std::array<CubeRotation, kNumRotations> build_rotation_group() {
  std::vector<CubeRotation> group;
  CubeRotation identity;
  for (int s = 0; s < kNumCornerSlots; ++s) identity.slot_map[s] = std::uint8_t(s);
  identity.face_map = face_map_from_slots(identity.slot_map);
  group.push_back(identity);

  const CubeRotation gens[2] = {rotation_about(Face::U), rotation_about(Face::F)};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& g : gens) {
      CubeRotation next = compose(g, group[i]);
      bool known = false;
      for (const auto& r : group) known = known || r == next;
      if (!known) group.push_back(next);
    }
  }
  assert(group.size() == kNumRotations);

  std::array<CubeRotation, kNumRotations> out{};
  for (int i = 0; i < kNumRotations; ++i) out[i] = group[i];
  return out;
}

}  // namespace

Face opposite(Face f) {
  switch (f) {
    case Face::B: return Face::F;
    case Face::F: return Face::B;
    case Face::D: return Face::U;
    case Face::U: return Face::D;
    case Face::L: return Face::R;
    case Face::R: return Face::L;
  }
  throw std::invalid_argument("bad face");
}

Axis axis_of(Face f) {
  switch (f) {
    case Face::B:
    case Face::F: return Axis::X;
    case Face::L:
    case Face::R: return Axis::Y;
    case Face::D:
    case Face::U: return Axis::Z;
  }
  throw std::invalid_argument("bad face");
}

std::string_view face_name(Face f) { return kFaceNames[int(f)]; }
std::string_view corner_slot_name(int slot) { return kCornerNames[slot]; }
std::string_view edge_slot_name(int slot) { return kEdgeNames[slot]; }

int move_index(Move m) { return int(m.face) * 3 + (m.quarters - 1); }

Move move_from_index(int index) {
  return Move{Face(index / 3), index % 3 + 1};
}

Move inverse(Move m) { return Move{m.face, 4 - m.quarters}; }

int corner_image(Face f, int slot) { return kCornerMove[int(f)][slot]; }
int edge_image(Face f, int slot) { return kEdgeMove[int(f)][slot]; }

std::uint8_t corner_members(Face f) { return kCornerMembers[int(f)]; }
std::uint16_t edge_members(Face f) { return kEdgeMembers[int(f)]; }

PocketState PocketState::solved() {
  PocketState s;
  for (int i = 0; i < kNumCornerSlots; ++i) s.cubie[i] = std::uint8_t(i);
  return s;
}

RubiksPositions RubiksPositions::solved() {
  RubiksPositions s;
  for (int i = 0; i < kNumCornerSlots; ++i) s.corner[i] = std::uint8_t(i);
  for (int i = 0; i < kNumEdgeSlots; ++i) s.edge[i] = std::uint8_t(i);
  return s;
}

PocketState apply_move(const PocketState& s, Move m) {
  const auto* perm = kCornerMove[int(m.face)];
  const auto* delta = kCornerOriDelta[int(m.face)];
  PocketState cur = s;
  for (int q = 0; q < m.quarters; ++q) {
    PocketState next;
    for (int slot = 0; slot < kNumCornerSlots; ++slot) {
      next.cubie[perm[slot]] = cur.cubie[slot];
      next.ori[perm[slot]] = std::uint8_t((cur.ori[slot] + delta[slot]) % 3);
    }
    cur = next;
  }
  return cur;
}

RubiksPositions apply_move_positions(const RubiksPositions& s, Move m) {
  const auto* cperm = kCornerMove[int(m.face)];
  const auto* eperm = kEdgeMove[int(m.face)];
  RubiksPositions cur = s;
  for (int q = 0; q < m.quarters; ++q) {
    RubiksPositions next;
    for (int slot = 0; slot < kNumCornerSlots; ++slot) next.corner[cperm[slot]] = cur.corner[slot];
    for (int slot = 0; slot < kNumEdgeSlots; ++slot) next.edge[eperm[slot]] = cur.edge[slot];
    cur = next;
  }
  return cur;
}

const std::array<CubeRotation, kNumRotations>& rotation_group() {
  static const std::array<CubeRotation, kNumRotations> group = build_rotation_group();
  return group;
}

int rotation_index(const CubeRotation& r) {
  const auto& group = rotation_group();
  for (int i = 0; i < kNumRotations; ++i) {
    if (group[i] == r) return i;
  }
  throw std::invalid_argument("not a cube rotation");
}

int inverse_rotation(int index) {
  const auto& group = rotation_group();
  for (int i = 0; i < kNumRotations; ++i) {
    if (compose(group[i], group[index]) == group[0]) return i;
  }
  throw std::logic_error("rotation group is not closed under inverse");
}

int compose_rotations(int second, int first) {
  const auto& group = rotation_group();
  return rotation_index(compose(group[second], group[first]));
}

PocketState rotation_action(const CubeRotation& r, const PocketState& s) {
  PocketState out;
  for (int slot = 0; slot < kNumCornerSlots; ++slot) {
    out.cubie[r.slot_map[slot]] = s.cubie[slot];
    out.ori[r.slot_map[slot]] = std::uint8_t((s.ori[slot] + r.ori_delta[slot]) % 3);
  }
  return out;
}

}  // namespace cubemix
