"""Simple graphs on a variable set, with chordality certificates.

Adjacency is stored as one integer bitset per vertex.  Chordality is
decided by Maximum Cardinality Search (ties broken by smallest position);
a failed search is turned into an explicit chordless cycle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Monomial, MonomialIdeal, VarContext

__all__ = [
    "Graph",
    "EliminationOrder",
    "ChordalityCertificate",
    "from_edge_ideal",
    "to_edge_ideal",
    "complement",
    "mcs_order",
    "is_peo",
    "is_chordal",
    "is_cochordal",
    "is_chordless_cycle",
]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    ctx: VarContext
    adj: tuple[int, ...]

    def __post_init__(self):
        adj = tuple(int(a) for a in self.adj)
        n = len(self.ctx)
        if len(adj) != n:
            raise ValueError("adjacency rows do not match the context size")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise ValueError("adjacency row points outside the vertex set")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            bit = 1 << v
            m = row
            while m:
                low = m & -m
                if not adj[low.bit_length() - 1] & bit:
                    raise ValueError("adjacency is not symmetric")
                m ^= low
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, ctx: VarContext, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * len(ctx)
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(ctx, tuple(adj))

    @classmethod
    def from_mask(cls, n: int, mask: int, ctx: VarContext | None = None) -> "Graph":
        """Graph whose edge ``(a, b)``, a < b, in colex pair order is bit ``mask``."""
        ctx = ctx or VarContext.standard(n)
        edges = []
        bit = 0
        for b in range(n):
            for a in range(b):
                if mask >> bit & 1:
                    edges.append((a, b))
                bit += 1
        return cls.from_edges(ctx, edges)

    @property
    def n(self) -> int:
        return len(self.adj)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in _bits(self.adj[a]) if a < b]

    def num_edges(self) -> int:
        return sum(bin(r).count("1") for r in self.adj) // 2

    def is_clique(self, mask: int) -> bool:
        adj = self.adj
        m = mask
        while m:
            low = m & -m
            if (adj[low.bit_length() - 1] | low) & mask != mask:
                return False
            m ^= low
        return True

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabeled onto the listed vertices in the given order."""
        vs = list(vertices)
        where = {v: i for i, v in enumerate(vs)}
        ctx = VarContext(tuple(self.ctx.names[v] for v in vs))
        edges = [(where[a], where[b]) for a, b in self.edges() if a in where and b in where]
        return Graph.from_edges(ctx, edges)

    def remove_vertex(self, v: int) -> "Graph":
        """Same vertex set with every edge at ``v`` deleted."""
        bit = 1 << v
        return Graph(self.ctx, tuple(0 if w == v else row & ~bit for w, row in enumerate(self.adj)))


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))

    def check_permutation(self, n: int) -> None:
        if sorted(self.order) != list(range(n)):
            raise ValueError(f"{self.order!r} is not a permutation of {n} vertices")


@dataclass(frozen=True)
class ChordalityCertificate:
    """Either a verified perfect elimination order or a chordless cycle."""

    graph: Graph
    peo: EliminationOrder | None = None
    cycle: tuple[int, ...] | None = None

    def __post_init__(self):
        if (self.peo is None) == (self.cycle is None):
            raise ValueError("exactly one of peo / cycle must be given")

    @property
    def chordal(self) -> bool:
        return self.peo is not None

    def __bool__(self) -> bool:
        return self.chordal

    def verify(self) -> bool:
        if self.peo is not None:
            return is_peo(self.graph, self.peo)
        return is_chordless_cycle(self.graph, self.cycle)

    def to_json(self) -> dict:
        names = self.graph.ctx.names
        if self.peo is not None:
            return {"chordal": True, "peo": [names[v] for v in self.peo.order]}
        return {"chordal": False, "chordless_cycle": [names[v] for v in self.cycle]}


def from_edge_ideal(I: MonomialIdeal) -> Graph:
    edges = []
    for g in I.gens:
        if g.degree != 2 or not g.is_squarefree():
            raise ValueError(f"{g} is not a squarefree quadratic monomial")
        a, b = sorted(g.support())
        edges.append((a, b))
    return Graph.from_edges(I.ctx, edges)


def to_edge_ideal(G: Graph) -> MonomialIdeal:
    return MonomialIdeal(G.ctx, tuple(Monomial(G.ctx, ((a, 1), (b, 1))) for a, b in G.edges()))


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph(G.ctx, tuple(full & ~row & ~(1 << v) for v, row in enumerate(G.adj)))


def mcs_order(G: Graph) -> EliminationOrder:
    """Maximum Cardinality Search; returns the reversed visit order.

    The result is a perfect elimination order whenever ``G`` is chordal.
    """
    n = G.n
    adj = G.adj
    visited = 0
    visit = []
    for _ in range(n):
        # weight = number of visited neighbors; ties go to the smallest position
        best, best_w = -1, -1
        for x in range(n):
            if not visited >> x & 1:
                w = (adj[x] & visited).bit_count()
                if w > best_w:
                    best, best_w = x, w
        visited |= 1 << best
        visit.append(best)
    return EliminationOrder(tuple(reversed(visit)))


def _first_violation(G: Graph, order: Sequence[int]) -> tuple[int, int, int] | None:
    later = 0
    for v in reversed(order):
        nb = G.adj[v] & later
        if not G.is_clique(nb):
            for a in _bits(nb):
                missing = nb & ~G.adj[a] & ~(1 << a)
                if missing:
                    b = (missing & -missing).bit_length() - 1
                    return v, a, b
        later |= 1 << v
    return None


def is_peo(G: Graph, ord: EliminationOrder) -> bool:
    ord.check_permutation(G.n)
    return _first_violation(G, ord.order) is None


def _cycle_through(G: Graph, v: int, a: int, b: int) -> tuple[int, ...] | None:
    """Chordless cycle v, a, ..., b via a shortest a-b path outside N[v] - {a, b}."""
    blocked = (G.adj[v] | 1 << v) & ~(1 << a) & ~(1 << b)
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            path.reverse()
            return (v,) + tuple(path)
        for y in _bits(G.adj[x] & ~blocked):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def _find_chordless_cycle(G: Graph, order: Sequence[int]) -> tuple[int, ...]:
    first = _first_violation(G, order)
    if first is not None:
        cyc = _cycle_through(G, *first)
        if cyc is not None:
            return cyc
    for v in range(G.n):
        nb = list(_bits(G.adj[v]))
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                if not G.has_edge(a, b):
                    cyc = _cycle_through(G, v, a, b)
                    if cyc is not None:
                        return cyc
    raise AssertionError("no chordless cycle found in a graph without a PEO")


def is_chordless_cycle(G: Graph, cycle: Sequence[int] | None) -> bool:
    if cycle is None:
        return False
    cyc = list(cycle)
    k = len(cyc)
    if k < 4 or len(set(cyc)) != k or not all(0 <= v < G.n for v in cyc):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if G.has_edge(cyc[i], cyc[j]) != consecutive:
                return False
    return True


def is_chordal(G: Graph) -> ChordalityCertificate:
    order = mcs_order(G)
    if _first_violation(G, order.order) is None:
        return ChordalityCertificate(G, peo=order)
    return ChordalityCertificate(G, cycle=_find_chordless_cycle(G, order.order))


def is_cochordal(G: Graph) -> ChordalityCertificate:
    """Chordality certificate for the complement of ``G``."""
    return is_chordal(complement(G))
