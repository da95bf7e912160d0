"""Feasibility of belief-distribution pairs and welfare maximization.

For a binary state and two agents, a pair of belief distributions is
realizable by some private private structure exactly when the second is a
mean-preserving contraction of the conjugate of the first.
:func:`feasibility_certificate` makes the existence constructive: it returns
an explicit joint table with the requested marginulary posteriors, built as
the exact staircase when the pair sits on the Pareto frontier and through a
small LP otherwise.

:func:`maximize_welfare` optimizes social welfare over the frontier.  A
welfare-maximal structure always exists with one agent holding a two-point
belief distribution and the other its (at most three-point) conjugate, so
the search space is the two scalars ``(alpha, beta)`` parameterizing
``mu = alpha/(alpha+beta) delta_{pbar-beta} + beta/(alpha+beta)
delta_{pbar+alpha}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .beliefs import (
    AtomicDist,
    ORDER_TOL,
    conjugate,
    is_mpc,
    mean,
    wasserstein1,
)
from .errors import ValidationError
from .lp import EQ, solve_lp
from .structures import FiniteStructure

#: Above this many q-table variables the certificate LP switches to HiGHS;
#: the exact simplex is meant for small atomic pairs, not grid pairs.
EXACT_LP_BUDGET = 150


def is_feasible_pair(mu1: AtomicDist, mu2: AtomicDist, tol=ORDER_TOL) -> bool:
    """Can some private private structure induce these two belief dists?

    True iff the means agree within ``tol`` and ``mu2`` is a
    mean-preserving contraction of the conjugate of ``mu1``.  The criterion
    is symmetric in its arguments.
    """
    if abs(mean(mu1) - mean(mu2)) > tol:
        return False
    return is_mpc(mu2, conjugate(mu1), tol)


def _gaps(mu: AtomicDist):
    """Support gaps of ``mu``: (gap index, conjugate atom location, weight);
    gap j sits between atom j and atom j+1 (with virtual atoms at 0 and 1)."""
    zero = mu.weights[0] * 0
    one = zero + 1
    xs = list(mu.locations) + [one]
    cums = [zero]
    for w in mu.weights:
        cums.append(cums[-1] + w)
    out = []
    prev = zero
    for j, x_next in enumerate(xs):
        if x_next - prev > 0:
            out.append((j, one - cums[j], x_next - prev))
        prev = x_next
    return out


def _staircase_certificate(mu1: AtomicDist) -> FiniteStructure:
    """Exact joint table for the frontier pair (mu1, conjugate(mu1)).

    Agent 1's values index the atoms of ``mu1``; agent 2's index its support
    gaps.  The state is 1 exactly when the atom index exceeds the gap index,
    which reproduces both belief distributions identically and makes the
    structure perfect.
    """
    gaps = _gaps(mu1)
    k_n = len(mu1.atoms)
    j_n = len(gaps)
    if mu1.exact:
        pmf = np.full((2, k_n, j_n), Fraction(0), dtype=object)
    else:
        pmf = np.zeros((2, k_n, j_n))
    for k, (_, w_k) in enumerate(mu1.atoms):
        for jj, (gap_idx, _, v_j) in enumerate(gaps):
            mass = w_k * v_j
            if k + 1 > gap_idx:
                pmf[1, k, jj] = mass
            else:
                pmf[0, k, jj] = mass
    return FiniteStructure(pmf)


def _coupling_certificate(mu1, mu2, tol):
    """LP construction of the joint table for an interior feasible pair.

    Variables ``q(k, j) = P(state = 1 | v1 = k, v2 = j)`` must average to the
    requested posteriors along both axes; slack variables capped at ``tol``
    absorb round-off in float inputs.  Infeasible within the caps -> None.
    """
    u = [Fraction(w) for w in mu1.weights]
    x = [Fraction(loc) for loc in mu1.locations]
    w = [Fraction(wt) for wt in mu2.weights]
    z = [Fraction(loc) for loc in mu2.locations]
    k_n, j_n = len(u), len(w)
    n_q = k_n * j_n

    if n_q <= EXACT_LP_BUDGET:
        n_slack = 2 * (k_n + j_n)
        n_vars = n_q + n_slack
        cons = []
        # 0..1 box on q.
        for t in range(n_q):
            row = [0] * n_vars
            row[t] = 1
            cons.append((row, "<=", 1))
        slack = n_q
        for k in range(k_n):
            row = [0] * n_vars
            for j in range(j_n):
                row[k * j_n + j] = w[j]
            row[slack] = 1
            row[slack + 1] = -1
            cons.append((row, EQ, x[k]))
            slack += 2
        for j in range(j_n):
            row = [0] * n_vars
            for k in range(k_n):
                row[k * j_n + j] = u[k]
            row[slack] = 1
            row[slack + 1] = -1
            cons.append((row, EQ, z[j]))
            slack += 2
        cap = Fraction(tol) if tol > 0 else Fraction(0)
        for t in range(n_q, n_vars):
            row = [0] * n_vars
            row[t] = 1
            cons.append((row, "<=", cap))
        objective = [0] * n_vars
        for t in range(n_q, n_vars):
            objective[t] = 1
        res = solve_lp(objective, cons, maximize=False)
        if not res.optimal:
            return None
        q = np.array(res.x[:n_q], dtype=object).reshape(k_n, j_n)
    else:
        from scipy.optimize import linprog
        from scipy.sparse import coo_matrix

        data, rows, cols, rhs = [], [], [], []
        eq = 0
        for k in range(k_n):
            for j in range(j_n):
                data.append(float(w[j]))
                rows.append(eq)
                cols.append(k * j_n + j)
            rhs.append(float(x[k]))
            eq += 1
        for j in range(j_n):
            for k in range(k_n):
                data.append(float(u[k]))
                rows.append(eq)
                cols.append(k * j_n + j)
            rhs.append(float(z[j]))
            eq += 1
        n_slack = 2 * eq
        for t in range(eq):
            data.extend([1.0, -1.0])
            rows.extend([t, t])
            cols.extend([n_q + 2 * t, n_q + 2 * t + 1])
        a_eq = coo_matrix((data, (rows, cols)), shape=(eq, n_q + n_slack))
        objective = np.concatenate([np.zeros(n_q), np.ones(n_slack)])
        bounds = [(0.0, 1.0)] * n_q + [(0.0, max(float(tol), 0.0))] * n_slack
        res = linprog(
            c=objective, A_eq=a_eq.tocsr(), b_eq=np.array(rhs),
            bounds=bounds, method="highs",
        )
        if not res.success:
            return None
        q = np.clip(res.x[:n_q].reshape(k_n, j_n), 0.0, 1.0)

    exact = q.dtype == object
    pmf = (
        np.full((2, k_n, j_n), Fraction(0), dtype=object)
        if exact else np.zeros((2, k_n, j_n))
    )
    for k in range(k_n):
        for j in range(j_n):
            mass = u[k] * w[j] if exact else float(u[k]) * float(w[j])
            q_kj = q[k, j] if exact else float(q[k, j])
            pmf[1, k, j] = mass * q_kj
            pmf[0, k, j] = mass * (1 - q_kj)
    return FiniteStructure(pmf)


def feasibility_certificate(mu1, mu2, tol=ORDER_TOL):
    """Concrete private private structure realizing a feasible belief pair.

    Returns a :class:`FiniteStructure` whose two posterior distributions
    equal ``(mu1, mu2)`` within ``tol``, or None when the pair is not
    feasible.  Frontier pairs (``mu2`` equal to the conjugate of ``mu1``)
    get the exact staircase table; interior pairs go through the coupling
    LP, exactly in rational arithmetic up to 600 table cells and in
    floating point beyond.
    """
    if not is_feasible_pair(mu1, mu2, tol):
        return None
    if wasserstein1(mu2, conjugate(mu1)) <= tol:
        return _staircase_certificate(mu1)
    return _coupling_certificate(mu1, mu2, tol)


# ---------------------------------------------------------------------------
# Welfare maximization over the Pareto frontier
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WelfareResult:
    """Welfare-maximal frontier structure for two decision problems.

    ``mu1``/``mu2`` are the two agents' belief distributions (one two-point,
    the other its conjugate, in whichever role assignment won);
    ``reveal_one`` is the comparison welfare from fully informing one agent
    and telling the other nothing.
    """

    alpha: float
    beta: float
    mu1: AtomicDist
    mu2: AtomicDist
    welfare: float
    reveal_one: float


def _payoff_table(u):
    arr = np.asarray(u, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != 2 or arr.shape[1] < 1:
        raise ValidationError("payoff tables are state x action with 2 states")
    if not np.isfinite(arr).all():
        raise ValidationError("payoffs must be finite")
    return arr


def indirect_utility(u, beliefs):
    """max_a [(1-q) u[0,a] + q u[1,a]] evaluated at an array of beliefs."""
    q = np.asarray(beliefs, dtype=float)
    return np.max(u[0] + np.multiply.outer(q, u[1] - u[0]), axis=-1)


def expected_indirect_utility(mu: AtomicDist, u) -> float:
    locs = np.array([float(x) for x in mu.locations])
    wts = np.array([float(w) for w in mu.weights])
    return float(np.dot(wts, indirect_utility(_payoff_table(u), locs)))


def welfare_of_pair(mu1: AtomicDist, mu2: AtomicDist, u1, u2) -> float:
    """Social welfare when agent i best-responds to beliefs drawn from mu_i."""
    return expected_indirect_utility(mu1, u1) + expected_indirect_utility(mu2, u2)


def _two_point(prior, alpha, beta) -> AtomicDist:
    total = alpha + beta
    return AtomicDist([
        (prior - beta, alpha / total),
        (prior + alpha, beta / total),
    ])


def _pair_welfare(u_lo, u_hi, prior, alpha, beta):
    """Welfare of the frontier pair at (alpha, beta), vectorized.

    ``u_lo`` is the payoff table of the agent holding the two-point
    distribution and ``u_hi`` of the agent holding its conjugate.  alpha and
    beta may be arrays of matching shape.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    total = alpha + beta
    w_lo = alpha / total
    middle = beta / total
    two_point = (
        w_lo * indirect_utility(u_lo, prior - beta)
        + (1 - w_lo) * indirect_utility(u_lo, prior + alpha)
    )
    conj = (
        (1 - prior - alpha) * indirect_utility(u_hi, np.zeros_like(alpha))
        + total * indirect_utility(u_hi, middle)
        + (prior - beta) * indirect_utility(u_hi, np.ones_like(alpha))
    )
    return two_point + conj


def _refine_coordinate(fn, x, lo, hi, span, steps=160):
    """Golden-section polish of one coordinate inside [lo, hi].

    Starts from a bracket of width ``span`` around ``x`` and returns the
    best point found; the objective is only piecewise smooth, so the result
    is accepted by the caller only on strict improvement.
    """
    gold = (np.sqrt(5) - 1) / 2
    a = max(lo, x - span)
    b = min(hi, x + span)
    c = b - gold * (b - a)
    d = a + gold * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(steps):
        if b - a < 1e-12:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - gold * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + gold * (b - a)
            fd = fn(d)
    candidates = [(fn(x), x) for x in (a, b, c, d)]
    best = max(candidates, key=lambda t: t[0])
    return best[1], best[0]


def maximize_welfare(u1, u2, prior, grid_size=200):
    """Search the Pareto frontier for the welfare-maximal structure.

    Evaluates the two-parameter family on a ``grid_size x grid_size`` grid
    over ``(0, 1 - prior] x (0, prior]`` for both role assignments (either
    agent may hold the two-point distribution), then polishes the best grid
    point by coordinate descent to 1e-10.  Ties are broken toward the
    lexicographically smallest ``(alpha, beta)`` and the unswapped
    assignment.
    """
    u1 = _payoff_table(u1)
    u2 = _payoff_table(u2)
    prior = float(prior)
    if not (0 < prior < 1):
        raise ValidationError("the prior must be interior to (0, 1)")

    alphas = (1 - prior) * np.arange(1, grid_size + 1) / grid_size
    betas = prior * np.arange(1, grid_size + 1) / grid_size
    alpha_grid, beta_grid = np.meshgrid(alphas, betas, indexing="ij")

    best = None  # (welfare, alpha, beta, swapped)
    for swapped in (False, True):
        u_lo, u_hi = (u2, u1) if swapped else (u1, u2)
        values = _pair_welfare(u_lo, u_hi, prior, alpha_grid, beta_grid)
        order = np.argsort(values, axis=None, kind="stable")
        top = order[-1]
        # Walk back over exact ties to the lexicographically smallest point.
        tied = order[values.ravel()[order] == values.ravel()[top]]
        idx = min(int(t) for t in tied)
        a_i, b_i = divmod(idx, grid_size)
        cand = (float(values[a_i, b_i]), float(alphas[a_i]), float(betas[b_i]), swapped)
        if best is None or cand[0] > best[0]:
            best = cand

    welfare, alpha, beta, swapped = best
    u_lo, u_hi = (u2, u1) if swapped else (u1, u2)

    def objective(a, b):
        return float(_pair_welfare(u_lo, u_hi, prior, a, b))

    span_a = (1 - prior) / grid_size
    span_b = prior / grid_size
    for _ in range(60):
        moved = False
        a_new, val = _refine_coordinate(
            lambda a: objective(a, beta), alpha, 1e-12, 1 - prior, span_a
        )
        if val > welfare:
            alpha, welfare, moved = a_new, val, True
        b_new, val = _refine_coordinate(
            lambda b: objective(alpha, b), beta, 1e-12, prior, span_b
        )
        if val > welfare:
            beta, welfare, moved = b_new, val, True
        if not moved:
            span_a /= 4
            span_b /= 4
            if span_a < 1e-11 and span_b < 1e-11:
                break

    mu_lo = _two_point(prior, alpha, beta)
    mu_hi = conjugate(mu_lo)
    mu1_out, mu2_out = (mu_hi, mu_lo) if swapped else (mu_lo, mu_hi)

    reveal = max(
        welfare_of_pair(
            AtomicDist([(0, 1 - prior), (1, prior)]),
            AtomicDist([(prior, 1)]),
            u1, u2,
        ),
        welfare_of_pair(
            AtomicDist([(prior, 1)]),
            AtomicDist([(0, 1 - prior), (1, prior)]),
            u1, u2,
        ),
    )
    return WelfareResult(
        alpha=alpha, beta=beta, mu1=mu1_out, mu2=mu2_out,
        welfare=welfare, reveal_one=reveal,
    )
