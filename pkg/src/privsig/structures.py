"""Finite information structures and their unit-square representations.

The central object is :class:`FiniteStructure`, a dense joint probability
table over ``(state, signal_1, ..., signal_n)``.  The module computes Bayes
posteriors, tests signal independence ("private private"), perfection, and
Blackwell equivalence, and converts between tables and unit-square
representations: exact :class:`RegionSet` descriptions (axis-aligned
rectangles carrying diagonal fractional bands), and resolution-R grids
(:class:`GridSet` / :class:`GridPartition` / :class:`FuzzyGrid`).

Tables may hold floats or Fractions; rectangle and band geometry is always
exact rational arithmetic so that rasterized areas are closed-form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._num import as_fraction
from .beliefs import AtomicDist, dists_close
from .errors import PrivacyError, ValidationError

#: Signal values whose posteriors differ by at most this are one belief atom.
POSTERIOR_MERGE_TOL = 1e-10
#: Tolerance on probability-table normalization.
TABLE_TOL = 1e-12


# ---------------------------------------------------------------------------
# Posterior-belief distributions on the simplex (m >= 3 states)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplexDist:
    """Finite-support distribution of posterior vectors on the m-simplex.

    Atoms are ``(posterior_vector, weight)`` pairs, sorted lexicographically
    by vector.  Vectors must lie on the simplex within 1e-9 and weights must
    sum to 1 within 1e-12.
    """

    atoms: tuple

    def __init__(self, atoms):
        pairs = [(tuple(v), w) for v, w in atoms]
        if not pairs:
            raise ValidationError("a simplex distribution needs at least one atom")
        m = len(pairs[0][0])
        for vec, w in pairs:
            if len(vec) != m:
                raise ValidationError("posterior vectors have mixed lengths")
            if any(c < -1e-12 for c in vec):
                raise ValidationError(f"posterior {vec} has a negative entry")
            if abs(sum(vec) - 1) > 1e-9:
                raise ValidationError(f"posterior {vec} is off the simplex")
            if w < 0:
                raise ValidationError(f"negative weight {w}")
        pairs = [(v, w) for v, w in pairs if w > 1e-15]
        pairs.sort(key=lambda p: p[0])
        merged = []
        for vec, w in pairs:
            if merged and _vec_dist(vec, merged[-1][0]) <= POSTERIOR_MERGE_TOL:
                v0, w0 = merged[-1]
                merged[-1] = (
                    tuple((a * w0 + b * w) / (w0 + w) for a, b in zip(v0, vec)),
                    w0 + w,
                )
            else:
                merged.append((vec, w))
        total = sum(w for _, w in merged)
        if abs(total - 1) > TABLE_TOL:
            raise ValidationError(f"weights sum to {total}, expected 1")
        if total != 1:
            merged = [(v, w / total) for v, w in merged]
        object.__setattr__(self, "atoms", tuple(merged))

    @property
    def m(self) -> int:
        return len(self.atoms[0][0])

    def mean_posterior(self):
        """Barycenter of the atoms; equals the prior for Bayes posteriors."""
        m = self.m
        out = [0] * m
        for vec, w in self.atoms:
            for k in range(m):
                out[k] = out[k] + vec[k] * w
        return tuple(out)


def _vec_dist(a, b):
    return max(abs(x - y) for x, y in zip(a, b))


def simplex_dists_close(a: SimplexDist, b: SimplexDist, tol=1e-9) -> bool:
    """Atom-wise equality of two simplex distributions within ``tol``."""
    if a.m != b.m:
        return False
    events = sorted(
        [(v, w, 0) for v, w in a.atoms] + [(v, w, 1) for v, w in b.atoms]
    )
    wa = wb = 0
    prev = None
    for vec, w, side in events:
        if prev is not None and _vec_dist(vec, prev) > tol:
            if abs(wa - wb) > tol:
                return False
            wa = wb = 0
        if side == 0:
            wa = wa + w
        else:
            wb = wb + w
        prev = vec
    return abs(wa - wb) <= tol


# ---------------------------------------------------------------------------
# FiniteStructure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteStructure:
    """Joint probability table over (state, signal_1, ..., signal_n).

    ``pmf[k, v_1, ..., v_n]`` is the probability that the state equals ``k``
    and each agent ``i`` observes signal value ``v_i``.  Entries are
    nonnegative and sum to 1 within 1e-12; every state must have positive
    marginal probability (common full-support prior).  The table is frozen
    after construction; floats and Fractions are both supported.
    """

    pmf: np.ndarray

    def __init__(self, pmf):
        arr = np.asarray(pmf)
        if arr.dtype != object:
            arr = arr.astype(float)
        arr = arr.copy()
        if arr.ndim < 2:
            raise ValidationError("pmf needs a state axis and at least one signal axis")
        flat = arr.ravel()
        if any(v < 0 for v in flat.tolist()):
            raise ValidationError("pmf entries must be nonnegative")
        total = flat.sum()
        if abs(total - 1) > TABLE_TOL:
            raise ValidationError(f"pmf sums to {total}, expected 1")
        prior = arr.reshape(arr.shape[0], -1).sum(axis=1)
        if any(p <= 0 for p in prior.tolist()):
            raise ValidationError("every state needs positive prior probability")
        arr.setflags(write=False)
        object.__setattr__(self, "pmf", arr)

    @classmethod
    def from_entries(cls, m, alphabet_sizes, entries, exact=False):
        """Build from a sparse list of ``(state, signals, p)`` entries."""
        shape = (m, *alphabet_sizes)
        if exact:
            arr = np.full(shape, Fraction(0), dtype=object)
        else:
            arr = np.zeros(shape)
        for state, signals, p in entries:
            signals = tuple(signals)
            if not (0 <= state < m) or len(signals) != len(alphabet_sizes):
                raise ValidationError(f"entry ({state}, {signals}) out of range")
            arr[(state, *signals)] += as_fraction(p) if exact else float(p)
        return cls(arr)

    @property
    def m(self) -> int:
        return self.pmf.shape[0]

    @property
    def n(self) -> int:
        return self.pmf.ndim - 1

    @property
    def alphabet_sizes(self) -> tuple:
        return self.pmf.shape[1:]

    @property
    def exact(self) -> bool:
        return self.pmf.dtype == object

    @property
    def prior(self) -> tuple:
        return tuple(self.pmf.reshape(self.m, -1).sum(axis=1).tolist())

    def signal_marginal(self, agent: int) -> tuple:
        """Unconditional distribution of agent ``agent``'s signal value."""
        if not (0 <= agent < self.n):
            raise ValidationError(f"agent index {agent} out of range")
        axes = tuple(ax for ax in range(self.pmf.ndim) if ax != 1 + agent)
        return tuple(self.pmf.sum(axis=axes).tolist())


def _cluster_posteriors(pairs, tol=POSTERIOR_MERGE_TOL):
    """Merge (vector, weight) pairs whose vectors are within ``tol``."""
    pairs = sorted(pairs, key=lambda p: p[0])
    merged = []
    for vec, w in pairs:
        if merged and _vec_dist(vec, merged[-1][0]) <= tol:
            v0, w0 = merged[-1]
            merged[-1] = (
                tuple((a * w0 + b * w) / (w0 + w) for a, b in zip(v0, vec)),
                w0 + w,
            )
        else:
            merged.append((vec, w))
    return merged


def posterior_dist(s: FiniteStructure, agent: int):
    """Distribution of the Bayes posterior induced by one agent's signal.

    Signal values with zero probability are skipped; values whose posteriors
    agree within 1e-10 are aggregated into a single belief atom.  Returns an
    :class:`~privsig.beliefs.AtomicDist` over P(state = 1 | signal) when the
    state is binary, and a :class:`SimplexDist` otherwise.
    """
    if not (0 <= agent < s.n):
        raise ValidationError(f"agent index {agent} out of range")
    axes = tuple(ax for ax in range(1, s.pmf.ndim) if ax != 1 + agent)
    joint = s.pmf.sum(axis=axes) if axes else s.pmf  # (m, alphabet)
    pairs = []
    for v in range(joint.shape[1]):
        col = joint[:, v]
        p_v = col.sum()
        if p_v <= 0:
            continue
        pairs.append((tuple((c / p_v) for c in col.tolist()), p_v))
    merged = _cluster_posteriors(pairs)
    if s.m == 2:
        return AtomicDist([(vec[1], w) for vec, w in merged])
    return SimplexDist(merged)


def joint_posterior_dist(s: FiniteStructure):
    """Posterior distribution when the whole signal profile is observed."""
    flat = s.pmf.reshape(s.m, -1)
    pairs = []
    for v in range(flat.shape[1]):
        col = flat[:, v]
        p_v = col.sum()
        if p_v <= 0:
            continue
        pairs.append((tuple((c / p_v) for c in col.tolist()), p_v))
    merged = _cluster_posteriors(pairs)
    if s.m == 2:
        return AtomicDist([(vec[1], w) for vec, w in merged])
    return SimplexDist(merged)


def is_private_private(s: FiniteStructure, tol=1e-9) -> bool:
    """True iff the signals are mutually independent random variables.

    Checks that the joint signal marginal (state summed out) factors as the
    product of the per-agent signal marginals, within ``tol`` in total
    variation.
    """
    joint = s.pmf.sum(axis=0)
    prod = np.ones((), dtype=joint.dtype)
    for agent in range(s.n):
        marg = np.asarray(s.signal_marginal(agent), dtype=joint.dtype)
        shape = [1] * s.n
        shape[agent] = -1
        prod = prod * marg.reshape(shape)
    tv = sum(abs(v) for v in (joint - prod).ravel().tolist()) / 2
    return tv <= tol


def require_private_private(s: FiniteStructure, tol=1e-9):
    if not is_private_private(s, tol):
        raise PrivacyError("signals are not mutually independent")


def is_perfect(s: FiniteStructure) -> bool:
    """True iff every positive-probability signal profile pins down the state."""
    flat = s.pmf.reshape(s.m, -1)
    if flat.dtype == object:
        for v in range(flat.shape[1]):
            col = flat[:, v].tolist()
            if sum(1 for c in col if c > 0) > 1:
                return False
        return True
    positive = flat > 0
    return bool((positive.sum(axis=0) <= 1).all())


def equivalent(a: FiniteStructure, b: FiniteStructure, tol=1e-9) -> bool:
    """Blackwell equivalence: identical per-agent posterior distributions."""
    if a.m != b.m or a.n != b.n:
        raise ValidationError("structures must share state and agent counts")
    for agent in range(a.n):
        da, db = posterior_dist(a, agent), posterior_dist(b, agent)
        if a.m == 2:
            if not dists_close(da, db, tol):
                return False
        else:
            if not simplex_dists_close(da, db, tol):
                return False
    return True


def direct_revelation(s: FiniteStructure) -> FiniteStructure:
    """Relabel every signal value by the posterior it induces.

    Values inducing posteriors within 1e-10 of each other collapse to one
    value (so alphabets can only shrink); zero-probability values are
    dropped.  The result is equivalent to the input, and its k-th signal
    value induces the k-th smallest posterior.
    """
    maps = []
    new_sizes = []
    for agent in range(s.n):
        axes = tuple(ax for ax in range(1, s.pmf.ndim) if ax != 1 + agent)
        joint = s.pmf.sum(axis=axes) if axes else s.pmf
        reps = []  # representative posteriors, sorted
        vmap = {}
        posts = []
        for v in range(joint.shape[1]):
            col = joint[:, v]
            p_v = col.sum()
            if p_v <= 0:
                continue
            posts.append((tuple((c / p_v) for c in col.tolist()), v))
        posts.sort(key=lambda p: p[0])
        for vec, v in posts:
            if reps and _vec_dist(vec, reps[-1]) <= POSTERIOR_MERGE_TOL:
                vmap[v] = len(reps) - 1
            else:
                reps.append(vec)
                vmap[v] = len(reps) - 1
        maps.append(vmap)
        new_sizes.append(len(reps))

    if s.exact:
        out = np.full((s.m, *new_sizes), Fraction(0), dtype=object)
    else:
        out = np.zeros((s.m, *new_sizes))
    for idx, p in np.ndenumerate(s.pmf):
        if p == 0:
            continue
        state, signals = idx[0], idx[1:]
        new_idx = tuple(maps[i][v] for i, v in enumerate(signals))
        out[(state, *new_idx)] += p
    return FiniteStructure(out)


def garble(s: FiniteStructure, agent: int, kernel) -> FiniteStructure:
    """Post-process one agent's signal through a stochastic kernel.

    ``kernel[v_old, v_new]`` is a row-stochastic matrix applied independently
    of the state and of the other signals, so privacy and the other agents'
    posteriors are untouched while agent ``agent`` is Blackwell-weakened.
    """
    kern = np.asarray(kernel)
    if kern.dtype != object:
        kern = kern.astype(float)
    if kern.ndim != 2 or kern.shape[0] != s.alphabet_sizes[agent]:
        raise ValidationError("kernel shape does not match the agent's alphabet")
    for row in kern.tolist():
        if any(v < 0 for v in row) or abs(sum(row) - 1) > 1e-9:
            raise ValidationError("kernel rows must be probability vectors")
    moved = np.moveaxis(s.pmf, 1 + agent, -1)
    new = np.dot(moved, kern)
    return FiniteStructure(np.moveaxis(new, -1, 1 + agent))


# ---------------------------------------------------------------------------
# Secret splitting on the circle
# ---------------------------------------------------------------------------

def split_secret(t, u):
    """Split ``t`` in [0, 1) into two independent uniform shares.

    ``u`` is the exogenous uniform draw used as the first share; the second
    share is ``frac(u + t)``.  Each share alone is uniform and independent of
    ``t``; together they reconstruct it via :func:`reconstruct_secret`.
    """
    if not (0 <= t < 1) or not (0 <= u < 1):
        raise ValidationError("secret and draw must lie in [0, 1)")
    return u, (u + t) % 1


def reconstruct_secret(r1, r2):
    """Recover the secret from its two shares: ``frac(r2 - r1)``."""
    if not (0 <= r1 < 1) or not (0 <= r2 < 1):
        raise ValidationError("shares must lie in [0, 1)")
    return (r2 - r1) % 1


# ---------------------------------------------------------------------------
# Exact region representation: rectangles with diagonal fractional bands
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Band:
    """One rectangle of [0,1]^2 carrying a diagonal fractional band.

    A point ``(x1, x2)`` of the rectangle belongs to the region iff
    ``frac(x1' + x2')`` lies in the band set Y, where ``(x1', x2')`` are the
    rectangle-normalized coordinates.  Because ``frac`` is translation
    invariant, every axis-parallel cross-section of the band has measure
    ``|Y|``.  All endpoints are exact rationals.
    """

    rect: tuple       # ((a1, b1), (a2, b2))
    y_set: tuple      # disjoint intervals ((lo, hi), ...), within [0, 1]

    def __init__(self, rect, y_set):
        (a1, b1), (a2, b2) = rect
        a1, b1, a2, b2 = (as_fraction(v) for v in (a1, b1, a2, b2))
        if not (0 <= a1 < b1 <= 1) or not (0 <= a2 < b2 <= 1):
            raise ValidationError(f"degenerate or out-of-range rectangle {rect}")
        ys = tuple((as_fraction(lo), as_fraction(hi)) for lo, hi in y_set)
        prev_hi = Fraction(0)
        for lo, hi in ys:
            if not (0 <= lo <= hi <= 1):
                raise ValidationError(f"band interval ({lo}, {hi}) outside [0, 1]")
            if lo < prev_hi:
                raise ValidationError("band intervals must be disjoint and sorted")
            prev_hi = hi
        object.__setattr__(self, "rect", ((a1, b1), (a2, b2)))
        object.__setattr__(self, "y_set", ys)

    @property
    def y_measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.y_set), Fraction(0))

    @property
    def rect_area(self) -> Fraction:
        (a1, b1), (a2, b2) = self.rect
        return (b1 - a1) * (b2 - a2)


@dataclass(frozen=True)
class RegionSet:
    """A subset of [0,1]^2 as a disjoint union of banded rectangles."""

    bands: tuple

    def __init__(self, bands):
        bands = tuple(bands)
        for band in bands:
            if not isinstance(band, Band):
                raise ValidationError("RegionSet takes Band records")
        for i in range(len(bands)):
            for j in range(i + 1, len(bands)):
                if _rects_overlap(bands[i].rect, bands[j].rect):
                    raise ValidationError("band rectangles overlap beyond boundaries")
        object.__setattr__(self, "bands", bands)

    @property
    def measure(self) -> Fraction:
        return sum((b.y_measure * b.rect_area for b in self.bands), Fraction(0))


def _rects_overlap(r, s):
    (ra1, rb1), (ra2, rb2) = r
    (sa1, sb1), (sa2, sb2) = s
    return (min(rb1, sb1) > max(ra1, sa1)) and (min(rb2, sb2) > max(ra2, sa2))


def build_uninformative_set(p, y_set) -> RegionSet:
    """The banded square whose every axis projection is constantly ``p``.

    ``y_set`` must be a union of rational intervals with total length exactly
    ``p``; the region is ``{(x1, x2) : frac(x1 + x2) in Y}``.
    """
    p = as_fraction(p)
    band = Band(((0, 1), (0, 1)), y_set)
    if band.y_measure != p:
        raise ValidationError(
            f"band set has measure {band.y_measure}, expected exactly {p}"
        )
    return RegionSet((band,))


def build_associated_set(s: FiniteStructure) -> RegionSet:
    """Unit-square representation of a binary-state two-agent structure.

    Partitions each axis into intervals whose lengths are the signal-value
    probabilities and fills rectangle ``(v1, v2)`` with a diagonal band of
    measure ``P(state = 1 | v1, v2)``.  Every vertical line through rectangle
    column ``v1`` then cuts the region in measure ``P(state = 1 | v1)`` (and
    symmetrically for rows), so the associated grid structure is equivalent
    to ``s``.  Requires mutually independent signals: the pasting argument
    needs the product form of the signal marginal.
    """
    if s.m != 2 or s.n != 2:
        raise ValidationError("the set representation needs m = 2 states, n = 2 agents")
    require_private_private(s)
    marg1 = [as_fraction(v) for v in s.signal_marginal(0)]
    marg2 = [as_fraction(v) for v in s.signal_marginal(1)]
    edges1 = _cum_edges(marg1)
    edges2 = _cum_edges(marg2)
    joint1 = s.pmf[1]  # P(state = 1, v1, v2)
    joint = s.pmf.sum(axis=0)
    bands = []
    for v1 in range(len(marg1)):
        if marg1[v1] == 0:
            continue
        for v2 in range(len(marg2)):
            if marg2[v2] == 0:
                continue
            p12 = as_fraction(joint[v1, v2])
            if p12 == 0:
                continue
            q = as_fraction(joint1[v1, v2]) / p12
            q = min(max(q, Fraction(0)), Fraction(1))
            if q == 0:
                continue
            rect = ((edges1[v1], edges1[v1 + 1]), (edges2[v2], edges2[v2 + 1]))
            bands.append(Band(rect, ((Fraction(0), q),)))
    return RegionSet(tuple(bands))


def _cum_edges(weights):
    edges = [Fraction(0)]
    for w in weights:
        edges.append(edges[-1] + w)
    if edges[-1] != 1:
        # Tolerate float-derived totals that are off by < 1e-12.
        if abs(edges[-1] - 1) > TABLE_TOL:
            raise ValidationError("marginal does not sum to 1")
        edges[-1] = Fraction(1)
    return edges


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

def _check_grid_cells(cells, n_allowed=(2, 3)):
    if cells.ndim not in n_allowed:
        raise ValidationError(f"grids support n in {n_allowed}, got {cells.ndim}")
    if len(set(cells.shape)) != 1:
        raise ValidationError("grid must have the same resolution on every axis")


@dataclass(frozen=True)
class GridSet:
    """Resolution-R binary subset of [0,1]^n (n in {2, 3})."""

    cells: np.ndarray

    def __init__(self, cells):
        arr = np.asarray(cells).astype(bool).copy()
        _check_grid_cells(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @property
    def n(self) -> int:
        return self.cells.ndim

    @property
    def resolution(self) -> int:
        return self.cells.shape[0]


@dataclass(frozen=True)
class GridPartition:
    """Resolution-R labeling of [0,1]^n cells by states 0..m-1."""

    cells: np.ndarray

    def __init__(self, cells):
        arr = np.asarray(cells)
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValidationError("partition cells must be integer state labels")
        arr = arr.astype(np.int64).copy()
        _check_grid_cells(arr)
        if arr.min() < 0:
            raise ValidationError("state labels must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @property
    def n(self) -> int:
        return self.cells.ndim

    @property
    def resolution(self) -> int:
        return self.cells.shape[0]

    @property
    def m(self) -> int:
        return int(self.cells.max()) + 1

    def state_set(self, state: int) -> GridSet:
        """The binary grid of cells carrying one label."""
        return GridSet(self.cells == state)


@dataclass(frozen=True)
class FuzzyGrid:
    """Resolution-R grid whose cells hold probability vectors over states."""

    cells: np.ndarray

    def __init__(self, cells):
        arr = np.asarray(cells)
        if arr.dtype != object:
            arr = arr.astype(float)
        arr = arr.copy()
        if arr.ndim not in (3, 4):
            raise ValidationError("fuzzy grids support n in {2, 3}")
        if len(set(arr.shape[:-1])) != 1:
            raise ValidationError("grid must have the same resolution on every axis")
        flat = arr.reshape(-1, arr.shape[-1])
        for row in flat.tolist():
            if any(v < -1e-12 for v in row):
                raise ValidationError("cell values must be nonnegative")
            if abs(sum(row) - 1) > 1e-9:
                raise ValidationError("cell vectors must sum to 1")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @property
    def n(self) -> int:
        return self.cells.ndim - 1

    @property
    def resolution(self) -> int:
        return self.cells.shape[0]

    @property
    def m(self) -> int:
        return self.cells.shape[-1]


def grid_projections(grid, axis: int, state=None):
    """Axis projection of a grid object: R slice averages in [0, 1].

    Entry ``j`` is the average over the slice ``x_axis in cell j`` of the
    cell indicator (GridSet), the state-``state`` indicator (GridPartition),
    or the state-``state`` fuzzy value (FuzzyGrid).  In the structure
    associated with the grid this is exactly the posterior of agent ``axis``
    at signals in cell ``j``.  Counting grids return Fractions; float fuzzy
    grids return floats.
    """
    if isinstance(grid, GridSet):
        if state is not None:
            raise ValidationError("a binary grid set has no state argument")
        values = grid.cells.astype(np.int64)
    elif isinstance(grid, GridPartition):
        if state is None:
            raise ValidationError("partition projections need a state label")
        values = (grid.cells == state).astype(np.int64)
    elif isinstance(grid, FuzzyGrid):
        if state is None:
            raise ValidationError("fuzzy projections need a state label")
        values = grid.cells[..., state]
    else:
        raise ValidationError(f"unsupported grid type {type(grid).__name__}")
    n = values.ndim
    if not (0 <= axis < n):
        raise ValidationError(f"axis {axis} out of range")
    other = tuple(ax for ax in range(n) if ax != axis)
    sums = values.sum(axis=other)
    denom = grid.resolution ** (n - 1)
    if values.dtype == object:
        return [v / denom for v in sums.tolist()]
    if np.issubdtype(values.dtype, np.integer):
        return [Fraction(int(v), denom) for v in sums.tolist()]
    return [float(v) / denom for v in sums.tolist()]


def structure_from_grid(grid, exact=False) -> FiniteStructure:
    """Information structure associated with a grid of [0,1]^n.

    Signals are uniform on the R cells of each axis (product marginal, so the
    result is private private by construction); the state is the cell label
    (deterministic, hence perfect, for GridSet/GridPartition) or drawn from
    the cell vector (FuzzyGrid).  States that never occur are dropped, so the
    prior always has full support.
    """
    if isinstance(grid, GridSet):
        labels = grid.cells.astype(np.int64)
        vectors = None
    elif isinstance(grid, GridPartition):
        labels = grid.cells
        vectors = None
    elif isinstance(grid, FuzzyGrid):
        labels = None
        vectors = grid.cells
    else:
        raise ValidationError(f"unsupported grid type {type(grid).__name__}")

    r = grid.resolution
    n = grid.n
    n_cells = r ** n
    if labels is not None:
        occupied = sorted(set(labels.ravel().tolist()))
        m = len(occupied)
        relabel = {lab: k for k, lab in enumerate(occupied)}
        if exact:
            pmf = np.full((m, *labels.shape), Fraction(0), dtype=object)
            cell_p = Fraction(1, n_cells)
        else:
            pmf = np.zeros((m, *labels.shape))
            cell_p = 1.0 / n_cells
        for idx, lab in np.ndenumerate(labels):
            pmf[(relabel[int(lab)], *idx)] = cell_p
        return FiniteStructure(pmf)

    m = vectors.shape[-1]
    make_exact = exact or vectors.dtype == object
    if make_exact:
        pmf = np.empty((m, *vectors.shape[:-1]), dtype=object)
        for idx in np.ndindex(*vectors.shape[:-1]):
            for k in range(m):
                pmf[(k, *idx)] = as_fraction(vectors[(*idx, k)]) / n_cells
    else:
        pmf = np.moveaxis(vectors, -1, 0) / n_cells
    marg = pmf.reshape(m, -1).sum(axis=1)
    keep = [k for k in range(m) if marg[k] > 0]
    return FiniteStructure(pmf[keep])


# ---------------------------------------------------------------------------
# Exact rasterization of banded regions
# ---------------------------------------------------------------------------

def _band_area_in_window(band: Band, u0, u1, v0, v1) -> Fraction:
    """Exact area of the band inside the absolute window [u0,u1]x[v0,v1].

    After clipping to the band's rectangle and normalizing coordinates, the
    band is ``{(x, y) : frac(x + y) in Y}``; its intersection with an axis-
    aligned window is a union of trapezoids, integrated in closed form: the
    cross-section length of the window at diagonal level ``s = x + y`` is a
    piecewise-linear "tent" and the area is its integral over the translates
    ``Y`` and ``Y + 1``.
    """
    (a1, b1), (a2, b2) = band.rect
    u0, u1 = max(u0, a1), min(u1, b1)
    v0, v1 = max(v0, a2), min(v1, b2)
    if u0 >= u1 or v0 >= v1:
        return Fraction(0)
    w1, w2 = b1 - a1, b2 - a2
    p0, p1 = (u0 - a1) / w1, (u1 - a1) / w1
    q0, q1 = (v0 - a2) / w2, (v1 - a2) / w2

    def tent(sv):
        lo = max(p0, sv - q1)
        hi = min(p1, sv - q0)
        return hi - lo if hi > lo else Fraction(0)

    corners = sorted({p0 + q0, p0 + q1, p1 + q0, p1 + q1})
    area = Fraction(0)
    for lo, hi in band.y_set:
        for shift in (0, 1):
            c, d = lo + shift, hi + shift
            for s0, s1 in zip(corners, corners[1:]):
                e0, e1 = max(s0, c), min(s1, d)
                if e1 > e0:
                    area += (e1 - e0) * (tent(e0) + tent(e1)) / 2
    return area * w1 * w2


def region_area_in_window(region: RegionSet, u0, u1, v0, v1) -> Fraction:
    """Exact area of the region inside an axis-aligned window."""
    u0, u1, v0, v1 = (as_fraction(v) for v in (u0, u1, v0, v1))
    return sum(
        (_band_area_in_window(b, u0, u1, v0, v1) for b in region.bands),
        Fraction(0),
    )


def rasterize(region: RegionSet, resolution: int) -> FuzzyGrid:
    """Exact resolution-R fuzzy grid of a banded region (binary state).

    Each cell holds the exact area fraction of the region within the cell,
    as a Fraction; the state-1 mass of the grid equals the region measure
    exactly.
    """
    if resolution < 1:
        raise ValidationError("resolution must be a positive integer")
    r = resolution
    cells = np.empty((r, r, 2), dtype=object)
    zero = Fraction(0)
    one = Fraction(1)
    for i in range(r):
        for j in range(r):
            cells[i, j, 1] = zero
    for band in region.bands:
        (a1, b1), (a2, b2) = band.rect
        i_lo = math.floor(a1 * r)
        i_hi = math.ceil(b1 * r)
        j_lo = math.floor(a2 * r)
        j_hi = math.ceil(b2 * r)
        for i in range(i_lo, min(i_hi, r)):
            u0, u1 = Fraction(i, r), Fraction(i + 1, r)
            for j in range(j_lo, min(j_hi, r)):
                v0, v1 = Fraction(j, r), Fraction(j + 1, r)
                a = _band_area_in_window(band, u0, u1, v0, v1)
                if a:
                    cells[i, j, 1] += a * r * r
    for i in range(r):
        for j in range(r):
            cells[i, j, 0] = one - cells[i, j, 1]
    return FuzzyGrid(cells)
