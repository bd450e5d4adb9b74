"""Linear resolution: the cochordality route and a homology oracle.

The oracle computes graded Betti numbers of a squarefree monomial ideal
from reduced homology of restrictions of its Stanley-Reisner complex,

    beta_{i,j}(I) = sum_{|W| = j} dim H~_{j-i-2}(Delta_W; GF(2)),

with ranks taken by Gaussian elimination on integer bit rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .core import MonomialIdeal, polarize
from .graphs import ChordalityCertificate, from_edge_ideal, is_cochordal

__all__ = [
    "BettiTable",
    "SimplicialComplex",
    "NotQuadraticError",
    "has_linear_resolution_quadratic",
    "stanley_reisner",
    "betti_oracle",
    "is_linear_from_betti",
    "MAX_ORACLE_SUPPORT",
]

MAX_ORACLE_SUPPORT = 12
CHARACTERISTIC = 2


class NotQuadraticError(ValueError):
    pass


@dataclass(frozen=True)
class BettiTable:
    entries: Mapping[tuple[int, int], int]
    characteristic: int = CHARACTERISTIC

    def __post_init__(self):
        clean = {k: v for k, v in sorted(self.entries.items()) if v}
        if any(v < 0 for v in clean.values()):
            raise ValueError("negative Betti number")
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def off_strand(self, d: int) -> dict[tuple[int, int], int]:
        return {(i, j): b for (i, j), b in self.entries.items() if j != i + d}

    def to_json(self) -> dict:
        return {
            "characteristic": self.characteristic,
            "entries": [[i, j, b] for (i, j), b in self.entries.items()],
        }


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: frozenset[int]
    facets: tuple[frozenset[int], ...] = field(default=())

    def __post_init__(self):
        fs = {frozenset(f) for f in self.facets}
        maximal = [f for f in fs if not any(f < g for g in fs)]
        object.__setattr__(self, "facets", tuple(sorted(maximal, key=lambda f: (len(f), sorted(f)))))

    def faces(self) -> set[frozenset[int]]:
        out = {frozenset()}
        for f in self.facets:
            fl = sorted(f)
            for r in range(1, len(fl) + 1):
                out.update(frozenset(c) for c in combinations(fl, r))
        return out


def has_linear_resolution_quadratic(I: MonomialIdeal) -> ChordalityCertificate:
    """Polarize, take the edge graph and certify (non-)cochordality.

    The returned certificate is truthy exactly when ``I`` has a linear
    resolution.  It concerns the complement of the polarized edge graph.
    """
    if not I.is_quadratic():
        raise NotQuadraticError(f"{I} is not a nonzero quadratic monomial ideal")
    pol, _ = polarize(I)
    return is_cochordal(from_edge_ideal(pol))


def _gen_masks(I: MonomialIdeal) -> list[int]:
    out = []
    for g in I.gens:
        if not g.is_squarefree():
            raise ValueError(f"{g} is not squarefree")
        m = 0
        for p, _ in g.exps:
            m |= 1 << p
        out.append(m)
    return out


def stanley_reisner(I: MonomialIdeal) -> SimplicialComplex:
    masks = _gen_masks(I)
    n = len(I.ctx)
    faces = [f for f in range(1 << n) if not any(g & f == g for g in masks)]
    face_set = set(faces)
    facets = []
    for f in faces:
        if not any((f | 1 << v) in face_set for v in range(n) if not f >> v & 1):
            facets.append(frozenset(v for v in range(n) if f >> v & 1))
    return SimplicialComplex(frozenset(range(n)), tuple(facets))


def _gf2_rank(rows: list[int]) -> int:
    rank = 0
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank


@lru_cache(maxsize=None)
def _reduced_homology(n: int, gens: frozenset[int]) -> tuple[int, ...]:
    """Reduced GF(2) Betti numbers of the complex on ``n`` vertices with minimal nonfaces ``gens``.

    Entry ``r + 1`` holds dim H~_r, for r = -1 .. n - 1.
    """
    faces_by_size: list[list[int]] = [[] for _ in range(n + 1)]
    for f in range(1 << n):
        if not any(g & f == g for g in gens):
            faces_by_size[bin(f).count("1")].append(f)
    index = [{f: i for i, f in enumerate(fs)} for fs in faces_by_size]
    # rank of the boundary map from faces of size s to faces of size s-1
    ranks = [0] * (n + 2)
    for s in range(1, n + 1):
        rows = []
        lower = index[s - 1]
        for f in faces_by_size[s]:
            row = 0
            m = f
            while m:
                low = m & -m
                row |= 1 << lower[f ^ low]
                m ^= low
            rows.append(row)
        ranks[s] = _gf2_rank(rows)
    out = []
    for s in range(0, n + 1):
        dim = len(faces_by_size[s]) - ranks[s] - ranks[s + 1]
        out.append(dim)
    return tuple(out)


def _restriction_key(masks: list[int], W: int) -> tuple[int, frozenset[int]]:
    positions = [v for v in range(W.bit_length()) if W >> v & 1]
    where = {v: i for i, v in enumerate(positions)}
    inside = []
    for g in masks:
        if g & W == g:
            c = 0
            for v in positions:
                if g >> v & 1:
                    c |= 1 << where[v]
            inside.append(c)
    return len(positions), frozenset(inside)


def betti_oracle(I: MonomialIdeal) -> BettiTable:
    """Graded Betti numbers of a squarefree ideal by Hochster-style restriction."""
    masks = _gen_masks(I)
    if 0 in masks:
        return BettiTable({(0, 0): 1})
    supp = sorted(I.support())
    if len(supp) > MAX_ORACLE_SUPPORT:
        raise ValueError(f"support of size {len(supp)} exceeds the oracle limit {MAX_ORACLE_SUPPORT}")
    entries: dict[tuple[int, int], int] = {}
    full = 0
    for v in supp:
        full |= 1 << v
    # iterate W over the nonempty subsets of the support
    W = full
    while W:
        n, gens = _restriction_key(masks, W)
        h = _reduced_homology(n, gens)
        j = n
        for r_plus_1, dim in enumerate(h):
            if dim:
                i = j - (r_plus_1 - 1) - 2
                if i >= 0:
                    entries[(i, j)] = entries.get((i, j), 0) + dim
        W = (W - 1) & full
    return BettiTable(entries)


def is_linear_from_betti(t: BettiTable, d: int) -> bool:
    return not t.off_strand(d)
