"""Shared fixtures: random generators and benchmark objects for the tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from privsig import AtomicDist, FiniteStructure, GridPartition, GridSet
from privsig.structures import structure_from_grid


def random_atomic(rng, max_atoms=10, exact=False, mean_target=None):
    """Random belief distribution; optionally exact with denominator <= 64."""
    k = int(rng.integers(1, max_atoms + 1))
    if exact:
        denom = 64
        locs = sorted(rng.choice(denom + 1, size=k, replace=False).tolist())
        weights = rng.multinomial(denom, np.ones(k) / k)
        while (weights == 0).any():
            weights = rng.multinomial(denom, np.ones(k) / k)
        atoms = [
            (Fraction(int(x), denom), Fraction(int(w), denom))
            for x, w in zip(locs, weights)
        ]
    else:
        locs = np.sort(rng.random(k))
        weights = rng.dirichlet(np.ones(k))
        atoms = list(zip(locs.tolist(), weights.tolist()))
    dist = AtomicDist(atoms)
    if mean_target is not None:
        raise NotImplementedError
    return dist


def random_garble_dist(rng, dist, max_values=None):
    """A random mean-preserving contraction of ``dist`` (martingale merge)."""
    k = len(dist.atoms)
    n_new = int(rng.integers(1, (max_values or k) + 1))
    kernel = rng.dirichlet(np.ones(n_new), size=k)
    new = []
    for j in range(n_new):
        w = sum(float(dist.weights[i]) * kernel[i, j] for i in range(k))
        if w < 1e-12:
            continue
        loc = sum(
            float(dist.weights[i]) * kernel[i, j] * float(dist.locations[i])
            for i in range(k)
        ) / w
        new.append((min(max(loc, 0.0), 1.0), w))
    return AtomicDist(new)


def random_grid_partition(rng, m, n, resolution):
    cells = rng.integers(0, m, size=(resolution,) * n)
    return GridPartition(cells)


def random_private_structure(rng, m=2, n=2, resolution=4, exact=False):
    """Random private private perfect structure via a random grid partition."""
    return structure_from_grid(
        random_grid_partition(rng, m, n, resolution), exact=exact
    )


def random_stochastic_kernel(rng, n_old, n_new):
    return rng.dirichlet(np.ones(n_new), size=n_old)


def striped_three_state_partition(beta_rows: int, resolution: int) -> GridPartition:
    """Three-state partition: right half split in two, left half striped.

    The right half of the square carries state 1 below the midline and state
    2 above; the left half alternates state 0 / state 1 stripes of heights
    ``beta_rows`` and ``half - beta_rows``.  For any stripe height this is a
    partition of uniqueness, while its state-1 set alone stops being a set
    of uniqueness once the stripes are offset (beta_rows > 0).
    """
    r = resolution
    half = r // 2
    b = beta_rows
    if not (0 <= b <= half):
        raise ValueError("stripe height out of range")
    cells = np.zeros((r, r), dtype=int)
    for i in range(r):
        for j in range(r):
            if i >= half:
                cells[i, j] = 1 if j < half else 2
            elif j < b or half <= j < r - b:
                cells[i, j] = 0
            else:
                cells[i, j] = 1
    return GridPartition(cells)


def three_state_binary_signal() -> FiniteStructure:
    """Three states with prior (1/4, 1/2, 1/4) and one binary signal.

    The signal separates the extreme states and randomizes on the middle
    one, so the posteriors are (1/2, 1/2, 0) and (0, 1/2, 1/2).
    """
    q = Fraction(1, 4)
    entries = [
        (0, (0,), q),
        (1, (0,), q),
        (1, (1,), q),
        (2, (1,), q),
    ]
    return FiniteStructure.from_entries(3, (2,), entries, exact=True)


def staircase_grid(dist: AtomicDist, resolution: int) -> GridSet:
    """Binary grid with the margins of the frontier structure of ``dist``.

    Requires the atom locations and cumulative weights of ``dist`` to be
    multiples of 1/resolution.  Column blocks follow the atoms, row blocks
    the support gaps, and a cell is set when its atom index exceeds its gap
    index; the margins then reproduce the pair (dist, conjugate of dist).
    """
    r = resolution

    def cells_of(x):
        v = Fraction(x) * r
        if v.denominator != 1:
            raise ValueError(f"{x} is not aligned to 1/{r}")
        return int(v)

    col_blocks = [cells_of(w) for w in dist.weights]
    xs = list(dist.locations) + [1]
    prev = Fraction(0)
    row_blocks = []  # (gap index, height in cells)
    for j, x in enumerate(xs):
        hi = cells_of(Fraction(x) - prev)
        if hi:
            row_blocks.append((j, hi))
        prev = Fraction(x)
    cells = np.zeros((r, r), dtype=bool)
    i0 = 0
    for k, w in enumerate(col_blocks, start=1):
        j0 = 0
        for gap_idx, h in row_blocks:
            if k > gap_idx:
                cells[i0:i0 + w, j0:j0 + h] = True
            j0 += h
        i0 += w
    return GridSet(cells)


def modular_stripe_grid(col_cells, row_cells, q_cells, period) -> GridSet:
    """Binary grid from block sizes and per-block diagonal stripe counts.

    Block (v1, v2) spans ``col_cells[v1] x row_cells[v2]`` cells (both
    multiples of ``period``) and contains the cells with
    ``(i + j) mod period < q_cells[v1][v2]``; every line through a block
    meets the stripes in exactly ``q_cells/period`` of its cells, so the
    grid's margins reproduce the intended per-block conditional
    probabilities.
    """
    k = period
    if any(c % k for c in col_cells) or any(c % k for c in row_cells):
        raise ValueError("block sizes must be multiples of the period")
    size = sum(col_cells)
    if size != sum(row_cells):
        raise ValueError("grid must be square")
    cells = np.zeros((size, size), dtype=bool)
    i0 = 0
    for v1, w in enumerate(col_cells):
        j0 = 0
        for v2, h in enumerate(row_cells):
            q = q_cells[v1][v2]
            if not (0 <= q <= k):
                raise ValueError("stripe count out of range")
            for i in range(w):
                for j in range(h):
                    if (i + j) % k < q:
                        cells[i0 + i, j0 + j] = True
            j0 += h
        i0 += w
    return GridSet(cells)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
