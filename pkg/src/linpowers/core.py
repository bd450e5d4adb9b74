"""Exact monomial and monomial-ideal arithmetic.

Monomials live over an ordered :class:`VarContext`; position 0 is the
largest variable of the ambient lex order.  Exponents are stored sparsely
as ``((position, exponent), ...)`` with every exponent strictly positive.
Everything here is immutable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence

__all__ = [
    "ContextError",
    "VarContext",
    "Monomial",
    "MonomialIdeal",
    "PolarizationMap",
    "colon_gen",
    "minimalize",
    "ideal_product",
    "ideal_power",
    "polarize",
    "support",
]

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ContextError(ValueError):
    """Raised when objects over different variable contexts are combined."""


@dataclass(frozen=True)
class VarContext:
    """Ordered variable labels; the order is the ambient order x_1 > ... > x_n."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names!r}")
        for name in names:
            if not name:
                raise ValueError("empty variable name")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(names)})

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "VarContext":
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def prepend(self, name: str) -> "VarContext":
        return VarContext((name,) + self.names)

    def append(self, name: str) -> "VarContext":
        return VarContext(self.names + (name,))

    def permuted(self, order: Sequence[int]) -> "VarContext":
        """Context whose position ``t`` holds the variable at ``order[t]``."""
        if sorted(order) != list(range(len(self))):
            raise ValueError(f"{order!r} is not a permutation of the positions")
        return VarContext(tuple(self.names[i] for i in order))


@dataclass(frozen=True)
class Monomial:
    ctx: VarContext
    exps: tuple[tuple[int, int], ...] = ()
    degree: int = field(init=False, compare=False)

    def __post_init__(self):
        items = tuple(sorted((int(p), int(e)) for p, e in self.exps if e))
        n = len(self.ctx)
        for p, e in items:
            if e < 0:
                raise ValueError("negative exponent")
            if not 0 <= p < n:
                raise ValueError(f"position {p} outside a context of {n} variables")
        if len({p for p, _ in items}) != len(items):
            raise ValueError("repeated position in exponent list")
        object.__setattr__(self, "exps", items)
        object.__setattr__(self, "degree", sum(e for _, e in items))

    # construction -------------------------------------------------------
    @classmethod
    def one(cls, ctx: VarContext) -> "Monomial":
        return cls(ctx, ())

    @classmethod
    def var(cls, ctx: VarContext, pos: int) -> "Monomial":
        return cls(ctx, ((pos, 1),))

    @classmethod
    def from_dense(cls, ctx: VarContext, dense: Sequence[int]) -> "Monomial":
        if len(dense) != len(ctx):
            raise ContextError("dense exponent vector has the wrong length")
        return cls(ctx, tuple((i, e) for i, e in enumerate(dense) if e))

    @classmethod
    def from_names(cls, ctx: VarContext, powers: Mapping[str, int]) -> "Monomial":
        return cls(ctx, tuple((ctx.index(k), e) for k, e in powers.items()))

    # views --------------------------------------------------------------
    def dense(self) -> tuple[int, ...]:
        out = [0] * len(self.ctx)
        for p, e in self.exps:
            out[p] = e
        return tuple(out)

    def as_dict(self) -> dict[int, int]:
        return dict(self.exps)

    def exponent(self, pos: int) -> int:
        for p, e in self.exps:
            if p == pos:
                return e
        return 0

    def support(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.exps)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def is_variable(self) -> bool:
        return self.degree == 1

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for p, e in self.exps:
            name = self.ctx.names[p]
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Monomial") -> None:
        if self.ctx != other.ctx:
            raise ContextError("monomials live over different variable contexts")

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check(other)
        d = dict(self.exps)
        for p, e in other.exps:
            d[p] = d.get(p, 0) + e
        return Monomial(self.ctx, tuple(d.items()))

    def __pow__(self, k: int) -> "Monomial":
        if k < 0:
            raise ValueError("negative power")
        return Monomial(self.ctx, tuple((p, e * k) for p, e in self.exps))

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        od = dict(other.exps)
        return all(od.get(p, 0) >= e for p, e in self.exps)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        d = dict(self.exps)
        for p, e in other.exps:
            d[p] -= e
        return Monomial(self.ctx, tuple(d.items()))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        d = dict(self.exps)
        for p, e in other.exps:
            if e > d.get(p, 0):
                d[p] = e
        return Monomial(self.ctx, tuple(d.items()))

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check(other)
        od = dict(other.exps)
        return Monomial(self.ctx, tuple((p, min(e, od[p])) for p, e in self.exps if p in od))

    # ambient lex order (x_1 > x_2 > ...) --------------------------------
    def lex_key(self) -> tuple[int, ...]:
        return self.dense()

    def lex_gt(self, other: "Monomial") -> bool:
        self._check(other)
        return self.dense() > other.dense()

    def in_context(self, ctx: VarContext) -> "Monomial":
        """Rename into ``ctx`` by variable name."""
        return Monomial(ctx, tuple((ctx.index(self.ctx.names[p]), e) for p, e in self.exps))


def colon_gen(a: Monomial, b: Monomial) -> Monomial:
    """``a : b = lcm(a, b) / b``."""
    a._check(b)
    bd = dict(b.exps)
    return Monomial(a.ctx, tuple((p, e - bd.get(p, 0)) for p, e in a.exps if e > bd.get(p, 0)))


def _minimal_dense(dense_gens: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    uniq = sorted(set(dense_gens), key=sum)
    kept: list[tuple[int, ...]] = []
    for g in uniq:
        if not any(all(a <= b for a, b in zip(h, g)) for h in kept):
            kept.append(g)
    kept.sort(reverse=True)
    return kept


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    ``gens`` is canonicalized on construction: non-minimal and duplicate
    generators are dropped and the rest sorted descending in ambient lex.
    """

    ctx: VarContext
    gens: tuple[Monomial, ...] = ()

    def __post_init__(self):
        for g in self.gens:
            if g.ctx != self.ctx:
                raise ContextError("generator over a foreign context")
        dense = _minimal_dense(g.dense() for g in self.gens)
        object.__setattr__(self, "gens", tuple(Monomial.from_dense(self.ctx, d) for d in dense))

    @classmethod
    def from_dense(cls, ctx: VarContext, dense_gens: Iterable[Sequence[int]]) -> "MonomialIdeal":
        return cls(ctx, tuple(Monomial.from_dense(ctx, d) for d in dense_gens))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def is_zero(self) -> bool:
        return not self.gens

    def degrees(self) -> set[int]:
        return {g.degree for g in self.gens}

    def is_equigenerated(self) -> bool:
        return len(self.degrees()) <= 1

    def is_quadratic(self) -> bool:
        return bool(self.gens) and self.degrees() == {2}

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def is_subset_of(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def support(self) -> frozenset[int]:
        return support(self)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __pow__(self, k: int) -> "MonomialIdeal":
        return ideal_power(self, k)

    def in_context(self, ctx: VarContext) -> "MonomialIdeal":
        return MonomialIdeal(ctx, tuple(g.in_context(ctx) for g in self.gens))


def minimalize(gens: Iterable[Monomial], ctx: VarContext | None = None) -> MonomialIdeal:
    gens = tuple(gens)
    if ctx is None:
        if not gens:
            raise ValueError("a context is required to build the zero ideal")
        ctx = gens[0].ctx
    return MonomialIdeal(ctx, gens)


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.ctx != J.ctx:
        raise ContextError("ideals live over different variable contexts")
    a = [g.dense() for g in I.gens]
    b = [g.dense() for g in J.gens]
    prods = (tuple(x + y for x, y in zip(u, v)) for u, v in _cartesian(a, b))
    return MonomialIdeal.from_dense(I.ctx, _minimal_dense(prods))


def ideal_power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 0:
        raise ValueError("negative power")
    result = MonomialIdeal(I.ctx, (Monomial.one(I.ctx),))
    for _ in range(k):
        result = ideal_product(result, I)
    return result


def support(I: MonomialIdeal) -> frozenset[int]:
    out: set[int] = set()
    for g in I.gens:
        out |= g.support()
    return frozenset(out)


@dataclass(frozen=True)
class PolarizationMap:
    """Fan-out x_i -> x_{i,1}, ..., x_{i,a_i} with ``a_i`` the largest exponent of x_i."""

    source: VarContext
    target: VarContext
    fanout: tuple[tuple[int, int], ...]
    forward: Mapping[tuple[int, int], int]
    inverse: tuple[tuple[int, int], ...]

    @classmethod
    def for_ideal(cls, I: MonomialIdeal) -> "PolarizationMap":
        top: dict[int, int] = {}
        for g in I.gens:
            for p, e in g.exps:
                top[p] = max(top.get(p, 0), e)
        fanout = tuple(sorted(top.items()))
        names, forward, inverse = [], {}, []
        for p, a in fanout:
            for j in range(1, a + 1):
                forward[(p, j)] = len(names)
                inverse.append((p, j))
                names.append(f"{I.ctx.names[p]}_{j}")
        return cls(I.ctx, VarContext(tuple(names)), fanout, forward, tuple(inverse))

    def polarize_monomial(self, m: Monomial) -> Monomial:
        if m.ctx != self.source:
            raise ContextError("monomial is not over the source context")
        exps = []
        for p, e in m.exps:
            for j in range(1, e + 1):
                try:
                    exps.append((self.forward[(p, j)], 1))
                except KeyError:
                    raise ValueError(f"{m} exceeds the fan-out of this polarization") from None
        return Monomial(self.target, tuple(exps))

    def depolarize_monomial(self, m: Monomial) -> Monomial:
        if m.ctx != self.target:
            raise ContextError("monomial is not over the target context")
        d: dict[int, int] = {}
        for q, e in m.exps:
            p = self.inverse[q][0]
            d[p] = d.get(p, 0) + e
        return Monomial(self.source, tuple(d.items()))

    def depolarize(self, I: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(self.source, tuple(self.depolarize_monomial(g) for g in I.gens))


def polarize(I: MonomialIdeal) -> tuple[MonomialIdeal, PolarizationMap]:
    pmap = PolarizationMap.for_ideal(I)
    return MonomialIdeal(pmap.target, tuple(pmap.polarize_monomial(g) for g in I.gens)), pmap
