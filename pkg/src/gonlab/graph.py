"""Immutable multigraphs, Laplacians, basic invariants and edge-list I/O.

Vertices are dense integer indices ``0..n-1``.  Parallel edges are stored as
multiplicities; self-loops are rejected (they are invisible to chip-firing
and would make the burning semantics ambiguous).  Instances are immutable
and safe to share across worker processes.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field


class GraphParseError(ValueError):
    """Malformed edge-list input; carries the 1-based offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph with edge multiplicities and no self-loops.

    `edges` is the canonical form: sorted tuple of ``(u, v, mult)`` with
    ``u < v`` and ``mult >= 1``.  Equality and hashing use only `n` and
    `edges`; adjacency structures are derived caches.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    _adj: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )
    _val: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("vertex count must be positive")
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        val = [0] * self.n
        for u, v, mult in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            if mult < 1:
                raise ValueError(f"edge ({u},{v}) has multiplicity {mult}")
            adj[u].append((v, mult))
            adj[v].append((u, mult))
            val[u] += mult
            val[v] += mult
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))
        object.__setattr__(self, "_val", tuple(val))

    @classmethod
    def from_edges(cls, n: int, edge_pairs) -> "Multigraph":
        """Build from an iterable of (u, v) pairs; repeats accumulate multiplicity."""
        mult: dict[tuple[int, int], int] = {}
        for u, v in edge_pairs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u} is not allowed")
            a, b = (u, v) if u < v else (v, u)
            mult[(a, b)] = mult.get((a, b), 0) + 1
        return cls(n, tuple(sorted((u, v, k) for (u, v), k in mult.items())))

    @property
    def m(self) -> int:
        """Total edge count, with multiplicity."""
        return sum(mult for _, _, mult in self.edges)

    def val(self, v: int) -> int:
        return self._val[v]

    @property
    def valences(self) -> tuple[int, ...]:
        return self._val

    @property
    def max_valence(self) -> int:
        return max(self._val)

    def eps(self, u: int, v: int) -> int:
        """Edge multiplicity between two distinct vertices."""
        if u == v:
            return 0
        for w, mult in self._adj[u]:
            if w == v:
                return mult
        return 0

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        """Pairs ``(w, multiplicity)`` for every neighbor of v."""
        return self._adj[v]

    def regularity(self) -> int | None:
        """The common valence k if the graph is k-regular, else None."""
        k = self._val[0]
        return k if all(d == k for d in self._val) else None

    def is_connected(self) -> bool:
        return len(components(self)) == 1

    def canonical_hash(self) -> str:
        """Stable hex digest of the canonical edge list (for experiment records)."""
        text = f"{self.n} {self.m};" + ",".join(
            f"{u}-{v}x{mult}" for u, v, mult in self.edges
        )
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def to_edge_list_text(self) -> str:
        """Serialize in the edge-list file format (multiplicity as repeated lines)."""
        lines = [f"{self.n} {self.m}"]
        for u, v, mult in self.edges:
            lines.extend([f"{u} {v}"] * mult)
        return "\n".join(lines) + "\n"


def load_graph(text: str) -> Multigraph:
    """Parse the edge-list format: header ``n m``, then exactly m lines ``u v``.

    ``#``-prefixed lines and blank lines are ignored.  Repeated ``u v`` lines
    accumulate multiplicity.  Raises GraphParseError with the offending line
    number on malformed input, out-of-range endpoints or self-loops.
    """
    header: tuple[int, int] | None = None
    pairs: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphParseError("expected header 'n m'", line_no)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError("non-integer header", line_no) from None
            if n < 1 or m < 0:
                raise GraphParseError(f"bad header n={n} m={m}", line_no)
            header = (n, m)
            continue
        if len(parts) != 2:
            raise GraphParseError("expected edge 'u v'", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError("non-integer endpoint", line_no) from None
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise GraphParseError(f"endpoint out of range in edge {u} {v}", line_no)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", line_no)
        pairs.append((u, v))
    if header is None:
        raise GraphParseError("empty input", None)
    if len(pairs) != header[1]:
        raise GraphParseError(
            f"header declares {header[1]} edges but {len(pairs)} edge lines found", None
        )
    return Multigraph.from_edges(header[0], pairs)


def _pappus_edges() -> list[tuple[int, int]]:
    # Three rings of six: middle 0-5, outer 6-11, inner 12-17.  Inner-ring
    # diameters, three spokes per middle vertex, outer 6-cycle.
    edges = [(12, 15), (13, 16), (14, 17)]
    for w, x, y, z in [
        (0, 6, 13, 17),
        (1, 7, 14, 12),
        (2, 8, 15, 13),
        (3, 9, 16, 14),
        (4, 10, 17, 15),
        (5, 11, 12, 16),
    ]:
        edges += [(w, x), (w, y), (w, z)]
    edges += [(6, 7), (7, 8), (8, 9), (9, 10), (10, 11), (11, 6)]
    return edges


PAPPUS_MIDDLE_RING = frozenset(range(0, 6))
PAPPUS_OUTER_RING = frozenset(range(6, 12))
PAPPUS_INNER_RING = frozenset(range(12, 18))


def named_graph(name: str) -> Multigraph:
    """Builtin registry: ``pappus``, ``k4``, ``cycle:<n>``, ``path:<n>``."""
    if name == "pappus":
        return Multigraph.from_edges(18, _pappus_edges())
    if name == "k4":
        return Multigraph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    m = re.fullmatch(r"cycle:(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise ValueError("cycle:<n> needs n >= 2")
        return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    m = re.fullmatch(r"path:(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("path:<n> needs n >= 1")
        return Multigraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    raise KeyError(f"unknown named graph {name!r}")


def laplacian(g: Multigraph):
    """n x n integer Laplacian with -val(v) on the diagonal and eps(u,v) off it.

    Note the sign convention: the diagonal is negative, so -L is positive
    semidefinite.  Rows sum to zero.
    """
    import numpy as np

    mat = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v, mult in g.edges:
        mat[u, v] = mult
        mat[v, u] = mult
    for v in range(g.n):
        mat[v, v] = -g.val(v)
    return mat


def components(g: Multigraph, excluded: frozenset[int] | set[int] = frozenset()) -> list[frozenset[int]]:
    """Connected components of the subgraph induced on V minus `excluded`.

    Returned in deterministic order, by smallest contained vertex index.
    Empty list when every vertex is excluded.
    """
    excluded = frozenset(excluded)
    for v in excluded:
        if not (0 <= v < g.n):
            raise ValueError(f"excluded vertex {v} out of range")
    seen = [False] * g.n
    out: list[frozenset[int]] = []
    for start in range(g.n):
        if seen[start] or start in excluded:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            x = stack.pop()
            for w, _ in g.neighbors(x):
                if not seen[w] and w not in excluded:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out  # already ordered by smallest vertex: starts scan ascending


def genus(g: Multigraph) -> int:
    """First Betti number m - n + 1 of a connected multigraph."""
    if not g.is_connected():
        raise ValueError("genus is defined here for connected graphs only")
    return g.m - g.n + 1
