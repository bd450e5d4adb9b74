"""Linear quotients: colon ideals, certificates and exhaustive order search.

Indices into an ordering are 0-based: ``order.gens[0]`` is u_1.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .core import Monomial, MonomialIdeal, colon_gen, minimalize

__all__ = [
    "GeneratorOrdering",
    "LQCertificate",
    "LQFailure",
    "SearchBudgetExceeded",
    "colon_previous",
    "is_lq_order",
    "find_lq_order",
    "naive_find_lq_order",
    "lex_ordering",
    "DEFAULT_MAX_GENERATORS",
]

DEFAULT_MAX_GENERATORS = 9


class SearchBudgetExceeded(RuntimeError):
    """The backtracking search hit its node limit before finishing."""


@dataclass(frozen=True)
class GeneratorOrdering:
    ideal: MonomialIdeal
    gens: tuple[Monomial, ...]

    def __post_init__(self):
        gens = tuple(self.gens)
        object.__setattr__(self, "gens", gens)
        if len(gens) != len(self.ideal.gens) or set(gens) != set(self.ideal.gens):
            raise ValueError("ordering does not permute the minimal generators")

    def __len__(self) -> int:
        return len(self.gens)

    def to_json(self) -> list[str]:
        return [str(g) for g in self.gens]


@dataclass(frozen=True)
class LQCertificate:
    """``witnesses[(j, i)] = k`` with ``u_k : u_i`` a variable dividing ``u_j : u_i``."""

    ordering: GeneratorOrdering
    witnesses: dict

    def __bool__(self) -> bool:
        return True

    def verify(self) -> bool:
        gens = self.ordering.gens
        m = len(gens)
        expected = {(j, i) for i in range(1, m) for j in range(i)}
        if set(self.witnesses) != expected:
            return False
        for (j, i), k in self.witnesses.items():
            if not 0 <= k < i:
                return False
            var = colon_gen(gens[k], gens[i])
            if not var.is_variable() or not var.divides(colon_gen(gens[j], gens[i])):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "order": self.ordering.to_json(),
            "witnesses": [[j, i, k] for (j, i), k in sorted(self.witnesses.items(), key=lambda t: (t[0][1], t[0][0]))],
        }


@dataclass(frozen=True)
class LQFailure:
    ordering: GeneratorOrdering
    j: int
    i: int

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        gens = self.ordering.gens
        return {
            "order": self.ordering.to_json(),
            "violation": {
                "j": self.j,
                "i": self.i,
                "colon": str(colon_gen(gens[self.j], gens[self.i])),
            },
        }


def _dense_colon(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y if x > y else 0 for x, y in zip(a, b))


class _ColonTable:
    """Pairwise colon data for a list of generators, as bitmasks."""

    def __init__(self, dense: Sequence[tuple[int, ...]]):
        m = len(dense)
        self.m = m
        # supp[i][j]: support mask of u_j : u_i; var[i][j]: bit of the variable or 0
        self.supp = [[0] * m for _ in range(m)]
        self.var = [[0] * m for _ in range(m)]
        for i in range(m):
            ui = dense[i]
            si, vi = self.supp[i], self.var[i]
            for j in range(m):
                if i == j:
                    continue
                c = _dense_colon(dense[j], ui)
                mask = 0
                deg = 0
                for p, e in enumerate(c):
                    if e:
                        mask |= 1 << p
                        deg += e
                si[j] = mask
                if deg == 1:
                    vi[j] = mask

    def admissible(self, placed: Sequence[int], i: int) -> bool:
        si, vi = self.supp[i], self.var[i]
        vars_ = 0
        for j in placed:
            vars_ |= vi[j]
        return all(si[j] & vars_ for j in placed)


def colon_previous(ord: GeneratorOrdering, i: int) -> list[Monomial]:
    """Minimal generators of ``(u_1, ..., u_{i}) : u_{i+1}`` (0-based ``i >= 1``)."""
    if not 1 <= i < len(ord.gens):
        raise IndexError(f"index {i} outside 1..{len(ord.gens) - 1}")
    ui = ord.gens[i]
    return list(minimalize([colon_gen(ord.gens[j], ui) for j in range(i)], ui.ctx).gens)


def is_lq_order(ord: GeneratorOrdering) -> LQCertificate | LQFailure:
    gens = ord.gens
    dense = [g.dense() for g in gens]
    witnesses = {}
    violations = []
    for i in range(1, len(gens)):
        ui = dense[i]
        var_at = {}
        colons = []
        for j in range(i):
            c = _dense_colon(dense[j], ui)
            colons.append(c)
            if sum(c) == 1:
                q = next(p for p, e in enumerate(c) if e)
                var_at.setdefault(q, j)
        for j, c in enumerate(colons):
            k = min((var_at[p] for p, e in enumerate(c) if e and p in var_at), default=None)
            if k is None:
                violations.append((j, i))
            else:
                witnesses[(j, i)] = k
    if violations:
        j, i = min(violations)
        return LQFailure(ord, j, i)
    return LQCertificate(ord, witnesses)


def lex_ordering(I: MonomialIdeal) -> GeneratorOrdering:
    gens = sorted(I.gens, key=lambda g: g.lex_key(), reverse=True)
    return GeneratorOrdering(I, tuple(gens))


def find_lq_order(
    I: MonomialIdeal,
    max_generators: int = DEFAULT_MAX_GENERATORS,
    node_limit: int | None = None,
) -> GeneratorOrdering | None:
    """Exhaustive backtracking for a linear quotients order.

    Whether a generator may come next depends only on the *set* already
    placed, so failed sets are memoized; the search is complete and a
    ``None`` result is definitive.  Candidates are tried in the ideal's
    canonical (descending lex) order.
    """
    m = len(I.gens)
    if m > max_generators:
        raise ValueError(f"{m} generators exceed the search bound {max_generators}")
    if m == 0:
        return GeneratorOrdering(I, ())
    table = _ColonTable([g.dense() for g in I.gens])
    dead: set[int] = set()
    nodes = 0
    full = (1 << m) - 1

    def extend(mask: int, placed: list[int]) -> list[int] | None:
        nonlocal nodes
        if mask == full:
            return placed
        if mask in dead:
            return None
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise SearchBudgetExceeded(f"node limit {node_limit} reached")
        for i in range(m):
            if mask >> i & 1:
                continue
            if placed and not table.admissible(placed, i):
                continue
            placed.append(i)
            found = extend(mask | 1 << i, placed)
            if found is not None:
                return found
            placed.pop()
        dead.add(mask)
        return None

    if m + 100 > sys.getrecursionlimit():
        sys.setrecursionlimit(m + 100)
    found = extend(0, [])
    if found is None:
        return None
    return GeneratorOrdering(I, tuple(I.gens[i] for i in found))


def naive_find_lq_order(I: MonomialIdeal) -> GeneratorOrdering | None:
    """Try every permutation; the reference for :func:`find_lq_order`."""
    for perm in permutations(I.gens):
        ord = GeneratorOrdering(I, perm)
        if is_lq_order(ord):
            return ord
    return None
