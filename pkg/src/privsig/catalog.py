"""Ready-made example structures, grids, and problems.

Small constructors for the recurring benchmark objects: symmetric binary
signals, the strongest symmetric binary pair realized as a 4x4 block grid,
the two-bit product structure, threshold grids, and the rock-paper-scissors
designer problem.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ._num import as_fraction, is_exact
from .errors import ValidationError
from .games import DesignerProblem
from .structures import FiniteStructure, GridPartition, GridSet


def symmetric_binary_signal(accuracy, prior=Fraction(1, 2)) -> FiniteStructure:
    """One agent whose binary signal matches a binary state w.p. ``accuracy``.

    Exact when ``accuracy`` and ``prior`` are Fractions.
    """
    exact = is_exact(accuracy) and is_exact(prior)
    if exact:
        accuracy, prior = as_fraction(accuracy), as_fraction(prior)
    else:
        accuracy, prior = float(accuracy), float(prior)
    if not (0 <= accuracy <= 1) or not (0 < prior < 1):
        raise ValidationError("need accuracy in [0, 1] and an interior prior")
    entries = [
        (0, (0,), (1 - prior) * accuracy),
        (0, (1,), (1 - prior) * (1 - accuracy)),
        (1, (0,), prior * (1 - accuracy)),
        (1, (1,), prior * accuracy),
    ]
    return FiniteStructure.from_entries(2, (2,), entries, exact=exact)


def conditionally_iid_pair(accuracy, prior=Fraction(1, 2)) -> FiniteStructure:
    """Two conditionally independent symmetric binary signals.

    The standard example of signals that are *not* mutually independent:
    each signal moves beliefs about the other.
    """
    exact = is_exact(accuracy) and is_exact(prior)
    conv = as_fraction if exact else float
    r, p = conv(accuracy), conv(prior)
    entries = []
    for state, p_state in ((0, 1 - p), (1, p)):
        for v1 in (0, 1):
            for v2 in (0, 1):
                lik1 = r if v1 == state else 1 - r
                lik2 = r if v2 == state else 1 - r
                entries.append((state, (v1, v2), p_state * lik1 * lik2))
    return FiniteStructure.from_entries(2, (2, 2), entries, exact=exact)


def both_observe_state(prior=Fraction(1, 2)) -> FiniteStructure:
    """Both agents see the binary state exactly (maximally non-private)."""
    exact = is_exact(prior)
    p = as_fraction(prior) if exact else float(prior)
    entries = [(0, (0, 0), 1 - p), (1, (1, 1), p)]
    return FiniteStructure.from_entries(2, (2, 2), entries, exact=exact)


def two_bit_structure() -> FiniteStructure:
    """Four equally likely states; each agent observes one bit.

    Encodes the state as two independent fair bits with agent i seeing bit
    i: the canonical case where the per-agent informations exactly exhaust
    the prior entropy.
    """
    entries = []
    for b1 in (0, 1):
        for b2 in (0, 1):
            entries.append((2 * b1 + b2, (b1, b2), Fraction(1, 4)))
    return FiniteStructure.from_entries(4, (2, 2), entries, exact=True)


def quarter_three_quarter_blocks() -> GridPartition:
    """4x4 block partition where both agents' beliefs are 1/4 or 3/4.

    The strongest symmetric binary pair two mutually independent signals can
    support: the full upper-right quadrant plus one block in each remaining
    quadrant.
    """
    cells = np.zeros((4, 4), dtype=int)
    for i, j in [(2, 2), (2, 3), (3, 2), (3, 3), (0, 2), (1, 3), (2, 0), (3, 1)]:
        cells[i, j] = 1
    return GridPartition(cells)


def upper_triangle_grid(resolution: int) -> GridSet:
    """Cells with ``i + j >= R``: the grid sharpening of x1 + x2 > 1."""
    r = resolution
    return GridSet(np.fromfunction(lambda i, j: i + j >= r, (r, r)))


def majority_grid(resolution: int = 2) -> GridSet:
    """3-D cells where at least two coordinates lie in the upper half."""
    r = resolution
    half = r // 2
    return GridSet(np.fromfunction(
        lambda i, j, k: (i >= half).astype(int) + (j >= half) + (k >= half) >= 2,
        (r, r, r),
    ))


def rock_paper_scissors_problem() -> DesignerProblem:
    """Binary-state designer problem over rock-paper-scissors.

    Actions are ordered (rock, paper, scissors).  The designer earns 1 for
    each player choosing scissors in the high state or rock in the low
    state; the unique equilibrium pins recommendations to the uniform
    product distribution.
    """
    rock, paper, scissors = 0, 1, 2
    game = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
    low = [[(a1 == rock) + (a2 == rock) for a2 in range(3)] for a1 in range(3)]
    high = [[(a1 == scissors) + (a2 == scissors) for a2 in range(3)] for a1 in range(3)]
    return DesignerProblem(
        game=game,
        designer_payoffs=(low, high),
        prior=(Fraction(1, 2), Fraction(1, 2)),
    )


def matching_game():
    """Two agents each paid 1 for matching the binary state, -1 otherwise."""
    u = [[1, -1], [-1, 1]]
    return u, u
