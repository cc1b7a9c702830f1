"""Dhar's burning algorithm, v-reduced forms, and rank tests built on them.

The burning fixed point: a fire started at v spreads to any vertex whose
burnt-edge multiplicity exceeds its chip count.  If everything burns, the
divisor is v-reduced; otherwise the unburnt set can be fired while staying
effective away from v.  Iterating reaches the unique v-reduced
representative of the class.

Termination measure for the reduction loop: every unburnt-set firing moves
at least one chip strictly closer to v, so the chip vector ordered by
decreasing distance from v drops lexicographically in a well-founded
order.  The unburnt set may be fired several times at once when chips
allow; every intermediate state stays effective away from v, and reduced
forms are unique, so batching cannot change the result.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from gonlab.budget import DEFAULT_BUDGET, BudgetExceededError, SearchBudget
from gonlab.compositions import compositions_colex, count_compositions
from gonlab.divisor import Divisor
from gonlab.graph import Multigraph


@dataclass(frozen=True)
class BurnResult:
    """Outcome of one burning pass from a source vertex."""

    source: int
    burnt: frozenset[int]
    unburnt: frozenset[int]
    fully_burnt: bool


def _burn_pass(adj, chips, v):
    """One burning fixed point.  Returns (burnt flags, burnt-edge counts).

    For every vertex left unburnt, the count is the total multiplicity of
    its edges into the burnt side.  The fixed point is unique, so scan
    order does not matter.
    """
    n = len(chips)
    burnt = [False] * n
    counts = [0] * n
    burnt[v] = True
    stack = [v]
    while stack:
        x = stack.pop()
        for w, mult in adj[x]:
            if not burnt[w]:
                counts[w] += mult
                if counts[w] > chips[w]:
                    burnt[w] = True
                    stack.append(w)
    return burnt, counts


def _bfs_dist(g: Multigraph, v: int) -> list[int]:
    """Distance from v per vertex; -1 for unreachable."""
    dist = [-1] * g.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for w, _ in g.neighbors(x):
            if dist[w] < 0:
                dist[w] = dist[x] + 1
                queue.append(w)
    return dist


def _make_effective_away(g: Multigraph, chips: list[int], v: int) -> None:
    """Repair all deficits outside v, in place, pushing them onto v.

    Staged by BFS distance from v, farthest layer first: a deficit at
    distance t is cleared by firing the radius-(t-1) ball around v enough
    times (each firing sends every layer-t vertex at least one chip along
    its edges from layer t-1).  Firing that ball only crosses the
    (t-1)/t cut, so later stages never disturb layers already repaired.
    """
    dist = _bfs_dist(g, v)
    if min(dist) < 0:
        raise ValueError("graph must be connected for v-reduction")
    for t in range(max(dist), 0, -1):
        layer = [w for w in range(g.n) if dist[w] == t]
        times = 0
        gain = {}
        for w in layer:
            into_prev = sum(mult for x, mult in g.neighbors(w) if dist[x] == t - 1)
            gain[w] = into_prev
            if chips[w] < 0:
                times = max(times, (-chips[w] + into_prev - 1) // into_prev)
        if times == 0:
            continue
        for w in layer:
            chips[w] += times * gain[w]
        for x in range(g.n):
            if dist[x] == t - 1:
                chips[x] -= times * sum(
                    mult for w, mult in g.neighbors(x) if dist[w] == t
                )


def _reduce_chips(g: Multigraph, chips: list[int], v: int) -> list[int]:
    """In-place v-reduction of a chip list; assumes a connected graph."""
    if any(c < 0 for i, c in enumerate(chips) if i != v):
        _make_effective_away(g, chips, v)
    adj = g._adj
    n = g.n
    while True:
        burnt, counts = _burn_pass(adj, chips, v)
        if all(burnt):
            return chips
        times = None
        for w in range(n):
            if not burnt[w] and counts[w] > 0:
                k = chips[w] // counts[w]
                if times is None or k < times:
                    times = k
        if times is None:
            raise ValueError("graph must be connected for v-reduction")
        times = max(times, 1)
        for w in range(n):
            if not burnt[w]:
                if counts[w]:
                    chips[w] -= times * counts[w]
                for x, mult in adj[w]:
                    if burnt[x]:
                        chips[x] += times * mult


def dhar_burn(d: Divisor, v: int) -> BurnResult:
    """Single burning pass from v on a divisor effective away from v."""
    g = d.graph
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    if any(c < 0 for i, c in enumerate(d.chips) if i != v):
        raise ValueError("divisor must be effective away from the fire source")
    burnt, _ = _burn_pass(g._adj, list(d.chips), v)
    burnt_set = frozenset(i for i in range(g.n) if burnt[i])
    unburnt_set = frozenset(i for i in range(g.n) if not burnt[i])
    return BurnResult(v, burnt_set, unburnt_set, not unburnt_set)


def v_reduce(d: Divisor, v: int) -> Divisor:
    """The unique v-reduced divisor linearly equivalent to d.

    Accepts arbitrary integer divisors: deficits away from v are first
    repaired by staged ball firings, then the burn/fire loop runs to its
    fixed point.  Requires a connected graph.
    """
    g = d.graph
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    return Divisor(g, tuple(_reduce_chips(g, list(d.chips), v)))


def _support_distance_order(g: Multigraph, chips) -> list[int]:
    """Vertices sorted by decreasing distance from the chip support.

    Positive-rank failures concentrate far from the chips, so checking the
    farthest vertices first makes refutations cheap.  The result of the
    conjunction does not depend on the order.
    """
    sources = [i for i, c in enumerate(chips) if c > 0]
    if not sources:
        return list(range(g.n))
    dist = [-1] * g.n
    queue = deque(sources)
    for s in sources:
        dist[s] = 0
    while queue:
        x = queue.popleft()
        for w, _ in g.neighbors(x):
            if dist[w] < 0:
                dist[w] = dist[x] + 1
                queue.append(w)
    return sorted(range(g.n), key=lambda w: (-dist[w], w))


def _positive_rank_obstruction(g: Multigraph, chips: list[int]) -> int | None:
    """First vertex whose reduced form holds no chip, or None if rank >= 1.

    `chips` must be effective on a connected graph.
    """
    for v in _support_distance_order(g, chips):
        if _reduce_chips(g, list(chips), v)[v] < 1:
            return v
    return None


def has_positive_rank(d: Divisor) -> bool:
    """True iff the class of d puts a chip on every vertex after reduction.

    Implements the reduced-divisor criterion: d has positive rank iff for
    every vertex v the v-reduced representative has at least one chip at v.
    Divisors of negative degree are never of positive rank; non-effective
    inputs are reduced first and rejected if their class is not effective.
    """
    g = d.graph
    if not g.is_connected():
        raise ValueError("positive rank test requires a connected graph")
    if d.degree() < 0:
        return False
    chips = list(d.chips)
    if any(c < 0 for c in chips):
        chips = _reduce_chips(g, chips, 0)
        if chips[0] < 0:
            return False
    return _positive_rank_obstruction(g, chips) is None


def find_rank_obstruction(
    d: Divisor, r: int, budget: SearchBudget = DEFAULT_BUDGET
) -> Divisor | None:
    """An effective degree-r divisor E with d - E not equivalent to effective.

    Returns None when d has rank at least r.  E candidates are enumerated
    in ascending colex order, so the reported witness is deterministic and
    the first failure found is the colex-smallest one.
    """
    if r < 0:
        raise ValueError("rank threshold must be non-negative")
    g = d.graph
    if not g.is_connected():
        raise ValueError("rank test requires a connected graph")
    if d.degree() < r:
        return Divisor(g, (r,) + (0,) * (g.n - 1))
    total = count_compositions(r, g.n)
    if total > budget.max_candidates:
        raise BudgetExceededError(
            f"rank test needs {total} subtrahend divisors, cap is {budget.max_candidates}"
        )
    base = list(d.chips)
    for i, e in enumerate(compositions_colex(r, g.n)):
        if i % 1024 == 0:
            budget.check_deadline("rank test")
        chips = [b - c for b, c in zip(base, e)]
        reduced = _reduce_chips(g, chips, 0)
        if any(c < 0 for c in reduced):
            return Divisor(g, e)
    return None


def rank_at_least(d: Divisor, r: int, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """True iff subtracting any effective degree-r divisor leaves an effective class."""
    return find_rank_obstruction(d, r, budget) is None
