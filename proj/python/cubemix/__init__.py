"""Scrambling-chain analysis for the Pocket cube and Rubik's cube.

Thin Python layer over the C++ core: cube model, canonical indexing of the
Pocket cube modulo whole-cube rotations, exact distance-to-uniform traces,
unlink stopping-time simulation, and corner-order probabilities on the pair
graph.
"""

from ._cubemix import (
    CORNER_SLOTS,
    FACES,
    NUM_STATES,
    MoveTables,
    PocketState,
    RubiksPositions,
    canonicalize,
    corner_image,
    edge_image,
    enumerate_reachable,
    face_members,
    heuristic_mixing_bound,
    mixing_trace,
    model_invariant_checks,
    pair_order_mc,
    pair_order_probability,
    pair_scan,
    rank,
    simulate_T,
    survival_curve,
    unlink_trials,
    unrank,
)

__all__ = [
    "CORNER_SLOTS",
    "FACES",
    "NUM_STATES",
    "MoveTables",
    "PocketState",
    "RubiksPositions",
    "canonicalize",
    "corner_image",
    "edge_image",
    "enumerate_reachable",
    "face_members",
    "heuristic_mixing_bound",
    "mixing_trace",
    "model_invariant_checks",
    "pair_order_mc",
    "pair_order_probability",
    "pair_scan",
    "rank",
    "simulate_T",
    "survival_curve",
    "unlink_trials",
    "unrank",
]

__version__ = "0.1.0"
