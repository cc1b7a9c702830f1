"""Edge expansion: exact Cheeger grids, minimum separators, bipartitions.

All ratios are exact `Fraction`s.  The u-grid is {j/n : 1 <= j <= n//2}:
both the size-restricted Cheeger constant and the separator invariant are
step functions that only change at multiples of 1/n, so the grid is exact
with finite work.

The exact Cheeger scan enumerates only subsets that are connected in the
induced subgraph: a disconnected subset splits as U1 | U2 with
|bd U| / |U| >= min of the parts' ratios (mediant inequality), so some
connected part of no larger size does at least as well.  The all-subsets
route is kept in the test suite as the independent oracle for this pruning.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from gonlab.budget import DEFAULT_BUDGET, BudgetExceededError, SearchBudget
from gonlab.graph import Multigraph, components

DEFAULT_EXACT_CHEEGER_CAP = 24


@dataclass(frozen=True)
class CheegerPoint:
    """One grid entry: h_u at u = j/n with a witness subset achieving it."""

    j: int
    u: Fraction
    value: Fraction
    witness: frozenset[int]


@dataclass(frozen=True)
class CheegerProfile:
    """The map u -> h_u(G) over the grid, with witnesses.

    `exact` distinguishes the enumerated profile from the heuristic
    (local-search) one, which yields upper bounds on h_u only and is
    refused by every consumer that needs true lower bounds.
    """

    n: int
    exact: bool
    points: tuple[CheegerPoint, ...]

    def point(self, j: int) -> CheegerPoint:
        for p in self.points:
            if p.j == j:
                return p
        raise KeyError(f"no grid point j={j}")

    @property
    def h(self) -> Fraction:
        """The plain Cheeger constant h(G) = h at u = 1/2."""
        return self.points[-1].value

    @property
    def h_witness(self) -> frozenset[int]:
        return self.points[-1].witness


@dataclass(frozen=True)
class SeparatorCertificate:
    """A vertex set whose removal leaves only components of size <= u*n."""

    u: Fraction
    max_component: int
    separator: frozenset[int]
    size: int
    component_sizes: tuple[int, ...]
    optimal: bool
    lower_bound: int


def edge_boundary(g: Multigraph, s) -> int:
    """Total multiplicity of edges with exactly one endpoint in s."""
    s = frozenset(s)
    for v in s:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
    return sum(mult for u, v, mult in g.edges if (u in s) != (v in s))


def _boundary_of_mask(g: Multigraph, mask: int) -> int:
    return sum(mult for u, v, mult in g.edges if ((mask >> u) & 1) != ((mask >> v) & 1))


def _scan_connected_subsets(g: Multigraph, max_size: int, visit, budget: SearchBudget):
    """Call visit(mask, size, boundary) on every connected subset, once each.

    Anchored enumeration: for each anchor vertex (the subset minimum), grow
    using only larger vertices, branching on include/exclude of one
    extension candidate at a time.  Boundary sizes are maintained
    incrementally: adding w changes the boundary by val(w) minus twice the
    multiplicity from w into the current subset.
    """
    n = g.n
    adj_mask = [0] * n
    for u, v, _ in g.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    visits = 0

    def rec(mask: int, size: int, boundary: int, ext: int, banned: int):
        nonlocal visits
        visits += 1
        if visits % 4096 == 0:
            budget.check_deadline("cheeger scan")
            if visits > budget.max_nodes:
                raise BudgetExceededError(
                    f"connected-subset scan exceeded {budget.max_nodes} nodes"
                )
        visit(mask, size, boundary)
        if size == max_size:
            return
        while ext:
            w = (ext & -ext).bit_length() - 1
            ext &= ext - 1
            into = sum(mult for x, mult in g.neighbors(w) if (mask >> x) & 1)
            new_mask = mask | (1 << w)
            new_ext = (ext | (adj_mask[w] & allowed & ~banned)) & ~new_mask
            rec(new_mask, size + 1, boundary + g.val(w) - 2 * into, new_ext, banned)
            banned |= 1 << w  # exclude w from every later branch at this level

    for anchor in range(n):
        allowed = ~((1 << (anchor + 1)) - 1)  # vertices strictly above the anchor
        rec(1 << anchor, 1, g.val(anchor), adj_mask[anchor] & allowed, 0)


def _mask_tuple(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return tuple(out)


def _heuristic_best_by_size(g: Multigraph, max_size: int):
    """Greedy local search: deterministic boundary-minimizing growth from
    every start vertex.  Produces upper bounds on the per-size optima."""
    best: dict[int, tuple[Fraction, int]] = {}

    def consider(mask, size, boundary):
        ratio = Fraction(boundary, size)
        cur = best.get(size)
        if cur is None or ratio < cur[0]:
            best[size] = (ratio, mask)

    for start in range(g.n):
        mask = 1 << start
        boundary = g.val(start)
        consider(mask, 1, boundary)
        for size in range(2, max_size + 1):
            cand = None
            for v in range(g.n):
                if (mask >> v) & 1:
                    for w, _ in g.neighbors(v):
                        if not (mask >> w) & 1:
                            into = sum(
                                mult for x, mult in g.neighbors(w) if (mask >> x) & 1
                            )
                            delta = g.val(w) - 2 * into
                            if cand is None or (delta, w) < cand:
                                cand = (delta, w)
            if cand is None:
                break
            boundary += cand[0]
            mask |= 1 << cand[1]
            consider(mask, size, boundary)
    return best


def cheeger_profile(
    g: Multigraph,
    budget: SearchBudget = DEFAULT_BUDGET,
    exact_cap: int = DEFAULT_EXACT_CHEEGER_CAP,
) -> CheegerProfile:
    """h_u over the full grid {j/n : 1 <= j <= n//2}.

    Exact (enumerated) for n <= exact_cap; beyond the cap a deterministic
    greedy search returns upper bounds only, flagged exact=False.
    """
    if not g.is_connected():
        raise ValueError("cheeger profile requires a connected graph")
    if g.n < 2:
        raise ValueError("cheeger profile needs at least 2 vertices")
    half = g.n // 2
    exact = g.n <= exact_cap
    if exact:
        best: dict[int, tuple[Fraction, int]] = {}

        def visit(mask, size, boundary):
            ratio = Fraction(boundary, size)
            cur = best.get(size)
            if cur is None or ratio < cur[0] or (
                ratio == cur[0] and _mask_tuple(mask) < _mask_tuple(cur[1])
            ):
                best[size] = (ratio, mask)

        _scan_connected_subsets(g, half, visit, budget)
    else:
        best = _heuristic_best_by_size(g, half)

    points = []
    running: tuple[Fraction, int] | None = None
    for j in range(1, half + 1):
        cand = best.get(j)
        if cand is not None and (running is None or cand[0] < running[0]):
            running = cand
        points.append(
            CheegerPoint(
                j=j,
                u=Fraction(j, g.n),
                value=running[0],
                witness=frozenset(_mask_tuple(running[1])),
            )
        )
    return CheegerProfile(n=g.n, exact=exact, points=tuple(points))


def _component_masks(g: Multigraph, removed_mask: int) -> list[int]:
    masks = []
    seen = removed_mask
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        seen |= 1 << s
        stack = [s]
        while stack:
            x = stack.pop()
            for w, _ in g.neighbors(x):
                if not (seen >> w) & 1:
                    seen |= 1 << w
                    comp |= 1 << w
                    stack.append(w)
        masks.append(comp)
    return masks


def _violating_subset(g: Multigraph, removed_mask: int, t: int) -> list[int] | None:
    """A connected (t+1)-subset avoiding the removed set, if any component
    is larger than t.  BFS-tree prefixes are connected, so the first t+1
    vertices in BFS order work."""
    for comp in _component_masks(g, removed_mask):
        size = comp.bit_count()
        if size > t:
            start = (comp & -comp).bit_length() - 1
            order = [start]
            seen = 1 << start
            queue = deque([start])
            while queue and len(order) < t + 1:
                x = queue.popleft()
                for w, _ in g.neighbors(x):
                    if (comp >> w) & 1 and not (seen >> w) & 1:
                        seen |= 1 << w
                        order.append(w)
                        queue.append(w)
                        if len(order) == t + 1:
                            break
            return order
    return None


def _packing_lower_bound(g: Multigraph, removed_mask: int, t: int) -> int:
    """Number of vertex-disjoint connected (t+1)-subsets avoiding the
    removed set, greedily packed bottom-up along BFS spanning trees.  Every
    valid separator must hit each of them with a distinct vertex."""
    count = 0
    for comp in _component_masks(g, removed_mask):
        if comp.bit_count() <= t:
            continue
        root = (comp & -comp).bit_length() - 1
        parent = {root: None}
        order = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for w, _ in g.neighbors(x):
                if (comp >> w) & 1 and w not in parent:
                    parent[w] = x
                    order.append(w)
                    queue.append(w)
        size = {v: 1 for v in order}
        for v in reversed(order):
            if size[v] >= t + 1:
                count += 1
                size[v] = 0
            if parent[v] is not None:
                size[parent[v]] += size[v]
    return count


def _greedy_separator(g: Multigraph, t: int) -> frozenset[int]:
    removed: set[int] = set()
    mask = 0
    while True:
        target = None
        for comp in _component_masks(g, mask):
            if comp.bit_count() > t and (
                target is None or comp.bit_count() > target.bit_count()
            ):
                target = comp
        if target is None:
            return frozenset(removed)
        verts = _mask_tuple(target)
        w = max(
            verts,
            key=lambda v: (sum(m for x, m in g.neighbors(v) if (target >> x) & 1), -v),
        )
        removed.add(w)
        mask |= 1 << w


def b_u(
    g: Multigraph, u: Fraction, budget: SearchBudget = DEFAULT_BUDGET
) -> SeparatorCertificate:
    """Minimum-size vertex set whose removal leaves only components of size
    <= u*n, by branch and bound on violating connected subsets.

    Branching: any valid separator must contain a vertex of every connected
    ((t+1))-subset it misses, so one such subset is located and each of its
    vertices tried in turn.  Pruning combines the incumbent with a packing
    lower bound from vertex-disjoint violating subsets.  When the node
    budget runs out, the incumbent is returned with optimal=False and the
    root packing bound as `lower_bound`.
    """
    u = Fraction(u)
    if not (0 < u <= Fraction(1, 2)):
        raise ValueError("u must lie in (0, 1/2]")
    t = (u.numerator * g.n) // u.denominator
    if t < 1:
        raise ValueError(f"u={u} allows no vertices per component (u*n < 1)")

    incumbent = _greedy_separator(g, t)
    root_lb = _packing_lower_bound(g, 0, t)
    nodes = 0
    exhausted = False
    visited: set[int] = set()

    def dfs(removed: frozenset[int], mask: int):
        nonlocal incumbent, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > budget.max_nodes:
            exhausted = True
            return
        if nodes % 1024 == 0:
            budget.check_deadline("separator search")
        if mask in visited:
            return
        visited.add(mask)
        if len(removed) + _packing_lower_bound(g, mask, t) >= len(incumbent):
            return
        witness = _violating_subset(g, mask, t)
        if witness is None:
            incumbent = removed  # strictly smaller: the prune above passed
            return
        for w in sorted(witness, key=lambda v: (-g.val(v), v)):
            dfs(removed | {w}, mask | (1 << w))

    try:
        dfs(frozenset(), 0)
    except BudgetExceededError:
        exhausted = True

    comps = components(g, incumbent)
    sizes = tuple(sorted((len(c) for c in comps), reverse=True))
    assert all(s <= t for s in sizes)
    return SeparatorCertificate(
        u=u,
        max_component=t,
        separator=incumbent,
        size=len(incumbent),
        component_sizes=sizes,
        optimal=not exhausted,
        lower_bound=len(incumbent) if not exhausted else min(root_lb, len(incumbent)),
    )


def separator_bipartition(g: Multigraph, support) -> tuple[frozenset[int], frozenset[int]]:
    """Split V minus support into sides A, B with no crossing edge and
    |A| within [R/3, 2R/3] where R = |V minus support|.

    Greedy procedure: grow A from the largest components while it stays
    under 2R/3; if the maximal union falls short of R/3, one excluded
    component alone must land inside the window, so A becomes that
    component.  Requires every component smaller than n/2; raises when the
    window is unreachable (a single component above 2R/3).
    """
    support = frozenset(support)
    comps = components(g, support)
    rest = g.n - len(support)
    for c in comps:
        if 2 * len(c) >= g.n:
            raise ValueError(
                f"component of size {len(c)} is not smaller than half of {g.n} vertices"
            )
    ordered = sorted(comps, key=lambda c: (-len(c), min(c) if c else 0))
    a: set[int] = set()
    skipped: list[frozenset[int]] = []
    for c in ordered:
        if 3 * (len(a) + len(c)) <= 2 * rest:
            a |= c
        else:
            skipped.append(c)
    if 3 * len(a) < rest:
        # replace A by one skipped component; maximality forces it above R/3
        u_comp = skipped[0]
        if 3 * len(u_comp) > 2 * rest:
            raise ValueError(
                "no union of components fits the 1/3-2/3 window "
                f"(component of size {len(u_comp)} exceeds two thirds of {rest})"
            )
        a = set(u_comp)
    b = frozenset(v for v in range(g.n) if v not in support and v not in a)
    return frozenset(a), b
