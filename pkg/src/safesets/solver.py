"""Exact minimum safe set solver.

A nonempty S <= V(G) is safe when every component C of G[S] outweighs every
component D of G - S it touches (w(C) >= w(D)).  The solver scans all subsets
in increasing popcount order with an incumbent weight bound, entirely in
scaled integer arithmetic, and reports exact rational optima:

  * safe_number: lightest safe set (the whole vertex set is vacuously safe);
  * connected_safe_number: lightest safe set inducing a connected subgraph.

The scan is exponential by design; orders above 24 are refused outright.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .graph import (
    Graph,
    InputError,
    components,
    is_connected,
    neighborhood_mask,
    vlist,
)
from .weights import WeightFn, make_weights, scaled_integers

MAX_SOLVER_ORDER = 24
_STRUCT_CACHE_MAX_ORDER = 12


@dataclass(frozen=True)
class SafeSetSolution:
    """Optimum weight plus the lexicographically least optimal set."""

    optimum: Fraction
    witness_set: int
    connected_required: bool
    all_optima: tuple[int, ...] | None = None


def _check_instance(g: Graph, w: Sequence) -> WeightFn:
    if g.n == 0:
        raise InputError("safe sets are undefined on the empty graph")
    if g.n > MAX_SOLVER_ORDER:
        raise InputError(
            f"exact solve refused for order {g.n} (limit {MAX_SOLVER_ORDER})"
        )
    if not is_connected(g):
        raise InputError("the solver requires a connected graph")
    return make_weights(w, g.n)


def _mask_structure(g: Graph, mask: int):
    """Component layout of (G[mask], G - mask) and which pairs touch."""
    full = g.full_mask
    comps_in = components(g, mask)
    comps_out = components(g, full ^ mask)
    pairs = []
    for ci, c in enumerate(comps_in):
        reach = neighborhood_mask(g, c)
        for oj, d in enumerate(comps_out):
            if reach & d:
                pairs.append((ci, oj))
    return comps_in, comps_out, pairs


@lru_cache(maxsize=64)
def _all_structures(g: Graph):
    """Every mask's structure, for graphs small enough to afford the table.

    Repeated solves over the same graph (weight sampling) then only pay for
    weight sums and comparisons.
    """
    return [None] + [_mask_structure(g, m) for m in range(1, 1 << g.n)]


def is_safe_set(g: Graph, w: Sequence, s: int) -> bool:
    """Decide safety of the vertex set ``s`` (mask) under weights ``w``."""
    weights = make_weights(w, g.n)
    if s == 0:
        raise InputError("the empty set is never a safe set")
    if s & ~g.full_mask:
        raise InputError("safe set candidate out of range")
    ints, _ = scaled_integers(weights)
    comps_in, comps_out, pairs = _mask_structure(g, s)
    win = [sum(ints[v] for v in vlist(c)) for c in comps_in]
    wout = [sum(ints[v] for v in vlist(d)) for d in comps_out]
    return all(win[ci] >= wout[oj] for ci, oj in pairs)


def solve_pair(
    g: Graph, w: Sequence, *, collect_all: bool = False
) -> tuple[SafeSetSolution, SafeSetSolution]:
    """Solve both variants in one subset scan.

    Returns (unrestricted, connected-required) solutions.  Ties on the witness
    break toward the lexicographically least vertex list, and all_optima (when
    requested) lists every optimal set in that order.
    """
    weights = _check_instance(g, w)
    ints, denom = scaled_integers(weights)
    n = g.n

    structures = None
    if n <= _STRUCT_CACHE_MAX_ORDER:
        structures = _all_structures(g)

    s_best: int | None = None
    cs_best: int | None = None
    s_optima: list[int] = []
    cs_optima: list[int] = []

    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            weight = 0
            mask = 0
            for v in combo:
                weight += ints[v]
                mask |= 1 << v
            if cs_best is not None and weight > cs_best:
                continue
            if structures is not None:
                comps_in, comps_out, pairs = structures[mask]
            else:
                comps_in, comps_out, pairs = _mask_structure(g, mask)
            if pairs:
                win = [sum(ints[v] for v in vlist(c)) for c in comps_in]
                wout = [sum(ints[v] for v in vlist(d)) for d in comps_out]
                if any(win[ci] < wout[oj] for ci, oj in pairs):
                    continue
            if s_best is None or weight < s_best:
                s_best, s_optima = weight, [mask]
            elif weight == s_best:
                s_optima.append(mask)
            if len(comps_in) == 1:
                if cs_best is None or weight < cs_best:
                    cs_best, cs_optima = weight, [mask]
                elif weight == cs_best:
                    cs_optima.append(mask)

    assert s_best is not None and cs_best is not None  # V(G) is always safe

    def finish(best: int, optima: list[int], connected: bool) -> SafeSetSolution:
        ordered = sorted(optima, key=vlist)
        return SafeSetSolution(
            optimum=Fraction(best, denom),
            witness_set=ordered[0],
            connected_required=connected,
            all_optima=tuple(ordered) if collect_all else None,
        )

    return finish(s_best, s_optima, False), finish(cs_best, cs_optima, True)


def safe_number(g: Graph, w: Sequence, *, collect_all: bool = False) -> SafeSetSolution:
    return solve_pair(g, w, collect_all=collect_all)[0]


def connected_safe_number(
    g: Graph, w: Sequence, *, collect_all: bool = False
) -> SafeSetSolution:
    return solve_pair(g, w, collect_all=collect_all)[1]


def all_minimum_safe_sets(g: Graph, w: Sequence) -> list[int]:
    """Every safe set of weight exactly safe_number(g, w), lexicographic."""
    sol = safe_number(g, w, collect_all=True)
    assert sol.all_optima is not None
    return list(sol.all_optima)
