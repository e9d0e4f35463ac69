#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace cubemix {

// Faces in fixed code order (Back, Down, Front, Left, Right, Up).
enum class Face : std::uint8_t { B = 0, D = 1, F = 2, L = 3, R = 4, U = 5 };

// Rotation axes. {B,F} faces are perpendicular to X, {L,R} to Y, {D,U} to Z.
enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline constexpr int kNumFaces = 6;
inline constexpr int kNumCornerSlots = 8;
inline constexpr int kNumEdgeSlots = 12;
inline constexpr int kNumMoves = 18;  // 6 faces x {1,2,3} quarter turns
inline constexpr int kNumRotations = 24;

// Corner slot labels. Each corner position is named by the three faces it
// belongs to: (DFR,FRU,BRU,BDR,FLU,DFL,BLU,BDL) = (0,...,7).
enum CornerSlot : std::uint8_t {
  kDFR = 0,
  kFRU = 1,
  kBRU = 2,
  kBDR = 3,
  kFLU = 4,
  kDFL = 5,
  kBLU = 6,
  kBDL = 7,
};

Face opposite(Face f);
Axis axis_of(Face f);

std::string_view face_name(Face f);
std::string_view corner_slot_name(int slot);
std::string_view edge_slot_name(int slot);

// A face turn by 1, 2 or 3 quarters. The scrambling chain draws the face and
// the quarter count independently and uniformly, so each of the 18 moves has
// probability 1/18.
struct Move {
  Face face;
  int quarters;  // in {1,2,3}

  friend bool operator==(const Move&, const Move&) = default;
};

// Moves in canonical order: (B,D,F,L,R,U) x (1,2,3) -> 0..17.
int move_index(Move m);
Move move_from_index(int index);
Move inverse(Move m);  // (f,q)^-1 = (f, 4-q)

// Slot occupied after one quarter turn of `f` by the cubie at `slot`.
int corner_image(Face f, int slot);
int edge_image(Face f, int slot);

// Bitmask of the 4 corner (edge) slots moved by a turn of `f`.
std::uint8_t corner_members(Face f);
std::uint16_t edge_members(Face f);

inline bool corner_on_face(Face f, int slot) {
  return (corner_members(f) >> slot) & 1;
}
inline bool edge_on_face(Face f, int slot) {
  return (edge_members(f) >> slot) & 1;
}

// Pocket cube state: cubie[s] is the cubie occupying slot s (cubies are
// labelled by their home slot), ori[s] is the twist of that cubie mod 3.
// Twist 0 means the cubie's home U/D sticker sits on the slot's U/D facelet;
// each +1 is one clockwise twist as seen from outside the corner.
struct PocketState {
  std::array<std::uint8_t, kNumCornerSlots> cubie{};
  std::array<std::uint8_t, kNumCornerSlots> ori{};

  static PocketState solved();
  friend bool operator==(const PocketState&, const PocketState&) = default;
};

// 3x3x3 positions only: corner[s] / edge[s] give the cubie occupying each
// slot. Orientations are omitted; pair unlinking depends only on positions.
struct RubiksPositions {
  std::array<std::uint8_t, kNumCornerSlots> corner{};
  std::array<std::uint8_t, kNumEdgeSlots> edge{};

  static RubiksPositions solved();
  friend bool operator==(const RubiksPositions&, const RubiksPositions&) = default;
};

PocketState apply_move(const PocketState& s, Move m);
RubiksPositions apply_move_positions(const RubiksPositions& s, Move m);

// One of the 24 rigid rotations of the whole cube, as its action on corner
// slots, corner twists, and face labels.
struct CubeRotation {
  std::array<std::uint8_t, kNumCornerSlots> slot_map{};
  std::array<std::uint8_t, kNumCornerSlots> ori_delta{};
  std::array<std::uint8_t, kNumFaces> face_map{};

  friend bool operator==(const CubeRotation&, const CubeRotation&) = default;
};

// The full rotation group; index 0 is the identity.
const std::array<CubeRotation, kNumRotations>& rotation_group();
int rotation_index(const CubeRotation& r);
int inverse_rotation(int index);
int compose_rotations(int second, int first);  // apply `first`, then `second`

PocketState rotation_action(const CubeRotation& r, const PocketState& s);

}  // namespace cubemix
