"""Powers of quadratic monomial ideals with linear resolution.

After relabeling the variables (by peeling off the head of a perfect
elimination order of the complementary polarized graph), the descending
lex list e_1 > ... > e_m of generators satisfies the exchange properties
(*) and (**).  Elements of G(I^k) are then ordered through their standard
presentations, and :func:`witness` produces, for v before u, an element w
before u with ``w : u`` a variable dividing ``v : u``.

Words
-----
A word is an ascending tuple of 0-based generator indices.  Words are
compared lexicographically in the y-variables with y_m > ... > y_1, that
is, by their *descending* index tuples: the generator that is smallest in
the ambient lex order carries the most weight.  The standard presentation
of u is its smallest word, and the power order lists G(I^k) by increasing
standard word.  For k = 1 this is e_1, e_2, ..., e_m.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .core import Monomial, MonomialIdeal, VarContext, support
from .graphs import ChordalityCertificate, complement, from_edge_ideal, mcs_order
from .core import polarize
from .linres import has_linear_resolution_quadratic, NotQuadraticError
from .quotients import GeneratorOrdering, LQFailure, is_lq_order

__all__ = [
    "TAGS",
    "NoLinearResolution",
    "WitnessError",
    "HHZLabeling",
    "YWord",
    "StandardPresentation",
    "HHZWalk",
    "HHZWitness",
    "PowerReport",
    "TheoremReport",
    "decompose",
    "hhz_relabel",
    "check_star",
    "check_star_star",
    "star_violation",
    "star_star_violation",
    "standard_presentation",
    "power_elements",
    "power_order",
    "witness",
    "hhz_walk",
    "verify_witness",
    "verify_theorem",
    "word_key",
]

# Every branch that can produce w.  The first seven follow the case split of
# the proof; the last two are the Case 3 preliminaries (removing the prefix
# before the first dummy, and short-cutting a walk that revisits v1 or v2).
TAGS = (
    "degree-one",
    "common-factor-reduction",
    "case-1",
    "case-2",
    "case-3.1.1",
    "case-3.1.2",
    "case-3.2",
    "case-3-reduction",
    "case-3-revisit",
)
CORE_TAGS = TAGS[:7]


class NoLinearResolution(ValueError):
    def __init__(self, ideal: MonomialIdeal, certificate: ChordalityCertificate):
        super().__init__(f"{ideal} does not have a linear resolution")
        self.ideal = ideal
        self.certificate = certificate


class WitnessError(RuntimeError):
    """A construction step did not deliver what the argument promises."""


def _require_quadratic(I: MonomialIdeal) -> None:
    if not I.is_quadratic():
        raise NotQuadraticError(f"{I} is not a nonzero quadratic monomial ideal")


def decompose(I: MonomialIdeal, pivot: int) -> tuple[MonomialIdeal, MonomialIdeal]:
    """Split ``I = x_pivot * P + J`` with no generator of J divisible by x_pivot."""
    _require_quadratic(I)
    x = Monomial.var(I.ctx, pivot)
    P = MonomialIdeal(I.ctx, tuple(g / x for g in I.gens if x.divides(g)))
    J = MonomialIdeal(I.ctx, tuple(g for g in I.gens if not x.divides(g)))
    return P, J


def _quadratic_set(I: MonomialIdeal) -> set[tuple[int, int]]:
    out = set()
    for g in I.gens:
        ps = [p for p, e in g.exps for _ in range(e)]
        out.add((ps[0], ps[1]))
    return out


def star_violation(I: MonomialIdeal) -> tuple[int, int, int] | None:
    """First (i, j, k), i < j < k, with x_j x_k in I but neither x_i x_j nor x_i x_k."""
    _require_quadratic(I)
    Q = _quadratic_set(I)
    n = len(I.ctx)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if (j, k) in Q and (i, j) not in Q and (i, k) not in Q:
                    return i, j, k
    return None


def star_star_violation(I: MonomialIdeal) -> tuple[int, int, int] | None:
    """First (i, j, k) with x_i^2, x_j x_k in I, j < i, but neither x_i x_j nor x_i x_k."""
    _require_quadratic(I)
    Q = _quadratic_set(I)

    def has(a, b):
        return (min(a, b), max(a, b)) in Q

    n = len(I.ctx)
    for i in range(n):
        if (i, i) not in Q:
            continue
        for j in range(i):
            for k in range(n):
                if has(j, k) and not has(i, j) and not has(i, k):
                    return i, j, k
    return None


def check_star(I: MonomialIdeal) -> bool:
    return star_violation(I) is None


def check_star_star(I: MonomialIdeal) -> bool:
    return star_star_violation(I) is None


@dataclass(frozen=True)
class HHZLabeling:
    """``permutation[t]`` is the old position of the variable now at position t."""

    source: MonomialIdeal
    permutation: tuple[int, ...]
    ideal: MonomialIdeal

    @property
    def e(self) -> tuple[Monomial, ...]:
        return self.ideal.gens

    @property
    def ctx(self) -> VarContext:
        return self.ideal.ctx

    def to_json(self) -> dict:
        return {
            "variable_order": list(self.ctx.names),
            "generators": [str(g) for g in self.e],
        }


def hhz_relabel(I: MonomialIdeal) -> HHZLabeling:
    """Relabel so that (*) and (**) hold.

    Repeatedly take the first vertex of the MCS elimination order of the
    complement of the polarized edge graph of the current ideal; its
    variable becomes the next pivot and the ideal shrinks to the part
    avoiding it.
    """
    cert = has_linear_resolution_quadratic(I)
    if not cert:
        raise NoLinearResolution(I, cert)
    order: list[int] = []
    cur = I
    while not cur.is_zero():
        pol, pmap = polarize(cur)
        head = mcs_order(complement(from_edge_ideal(pol))).order[0]
        pivot = pmap.inverse[head][0]
        P, J = decompose(cur, pivot)
        if not J.is_subset_of(P):
            raise AssertionError(f"pivot {I.ctx.names[pivot]} leaves J outside P")
        order.append(pivot)
        cur = J
    supp = support(I)
    order += [p for p in sorted(supp) if p not in order]
    order += [p for p in range(len(I.ctx)) if p not in supp]
    ctx = I.ctx.permuted(order)
    relabeled = I.in_context(ctx)
    bad = star_violation(relabeled) or star_star_violation(relabeled)
    if bad is not None:
        raise AssertionError(f"relabeling violates the exchange properties at {bad}")
    return HHZLabeling(I, tuple(order), relabeled)


# --------------------------------------------------------------------- words
def word_key(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(word, reverse=True))


@dataclass(frozen=True, order=False)
class YWord:
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(self.indices)))

    def key(self) -> tuple[int, ...]:
        return word_key(self.indices)

    def __lt__(self, other: "YWord") -> bool:
        return self.key() < other.key()

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return "*".join(f"y{i + 1}" for i in self.indices) or "1"


@dataclass(frozen=True)
class StandardPresentation:
    target: Monomial
    word: YWord

    def to_json(self) -> dict:
        return {"monomial": str(self.target), "word": [i + 1 for i in self.word.indices]}


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _colon(a, b):
    return tuple(x - y if x > y else 0 for x, y in zip(a, b))


class _Engine:
    """Dense-vector workhorse behind the public functions of this module."""

    def __init__(self, L: HHZLabeling):
        self.L = L
        self.ctx = L.ctx
        self.n = len(L.ctx)
        self.E = [g.dense() for g in L.e]
        self.m = len(self.E)
        self.index = {g: i for i, g in enumerate(self.E)}
        self.pairs = {}
        for i, g in enumerate(self.E):
            ps = [p for p, e in enumerate(g) for _ in range(e)]
            self.pairs[i] = (ps[0], ps[1])
        self.pair_index = {pq: i for i, pq in self.pairs.items()}
        self._std: dict[tuple[int, ...], tuple[int, ...] | None] = {}
        self._dfs: dict = {}
        self._elements: dict[int, list[tuple[int, ...]]] = {}

    # standard presentations ---------------------------------------------
    def product(self, word: Iterable[int]) -> tuple[int, ...]:
        out = [0] * self.n
        for i in word:
            for p, e in enumerate(self.E[i]):
                out[p] += e
        return tuple(out)

    def quad_index(self, a: int, b: int) -> int | None:
        return self.pair_index.get((a, b) if a <= b else (b, a))

    def _smallest(self, r: tuple[int, ...], length: int, top: int) -> tuple[int, ...] | None:
        """Smallest descending tuple of ``length`` indices <= top whose product is r."""
        if length == 0:
            return () if not any(r) else None
        key = (r, length, top)
        if key in self._dfs:
            return self._dfs[key]
        found = None
        for a in range(top + 1):
            g = self.E[a]
            if _divides(g, r):
                rest = self._smallest(_sub(r, g), length - 1, a)
                if rest is not None:
                    found = (a,) + rest
                    break
        self._dfs[key] = found
        return found

    def std(self, u: tuple[int, ...]) -> tuple[int, ...] | None:
        if u in self._std:
            return self._std[u]
        deg = sum(u)
        word = None
        if deg % 2 == 0:
            desc = self._smallest(u, deg // 2, self.m - 1)
            if desc is not None:
                word = tuple(reversed(desc))
        self._std[u] = word
        return word

    def elements(self, k: int) -> list[tuple[int, ...]]:
        """G(I^k) sorted by standard word (the power order)."""
        if k not in self._elements:
            power = {()}
            for _ in range(k):
                power = {tuple(sorted(w + (i,))) for w in power for i in range(self.m)}
            elems = {self.product(w) for w in power}
            self._elements[k] = sorted(elems, key=lambda u: word_key(self.std(u)))
        return self._elements[k]

    # walks ----------------------------------------------------------------
    def build_walk(self, uw, vw, f, g) -> "HHZWalk":
        n = self.n
        D = n
        i1 = uw[-1]
        r1 = uw.index(i1)
        # edge records: (endpoint, endpoint, kind, instance)
        red = [self.pairs[i] + ("u", r) for r, i in enumerate(uw)]
        red += [(p, D, "f", p) for p, e in enumerate(f) for _ in range(e)]
        blue = [self.pairs[i] + ("v", s) for s, i in enumerate(vw)]
        blue += [(p, D, "g", p) for p, e in enumerate(g) for _ in range(e)]
        edges = {0: red, 1: blue}
        used = {0: [False] * len(red), 1: [False] * len(blue)}
        at = {0: {}, 1: {}}
        for c in (0, 1):
            for idx, (a, b, _, _) in enumerate(edges[c]):
                at[c].setdefault(a, []).append(idx)
                if b != a:
                    at[c].setdefault(b, []).append(idx)

        def other(c, idx, x):
            a, b, _, _ = edges[c][idx]
            return b if a == x else a

        def pick(x, c):
            best = None
            for idx in at[c].get(x, ()):
                if used[c][idx]:
                    continue
                a, b, kind, inst = edges[c][idx]
                dummy_edge = kind in ("f", "g")
                cand = (dummy_edge, other(c, idx, x), inst, idx)
                if best is None or cand < best:
                    best = cand
            return None if best is None else best[3]

        def trail(start, c):
            verts, path = [start], []
            x = start
            while True:
                idx = pick(x, c)
                if idx is None:
                    return verts, path
                used[c][idx] = True
                x = other(c, idx, x)
                verts.append(x)
                path.append((c, idx))
                c ^= 1

        used[0][r1] = True
        v1, v2 = self.pairs[i1]
        rest_v, rest_e = trail(v2, 1)
        verts = [v1] + rest_v
        path = [(0, r1)] + rest_e
        while not (all(used[0]) and all(used[1])):
            for pos, x in enumerate(verts):
                if pos == 0:
                    continue
                c_in = path[pos - 1][0]
                if pick(x, c_in ^ 1) is not None:
                    sub_v, sub_e = trail(x, c_in ^ 1)
                    if sub_v[-1] != x:
                        raise WitnessError("alternating sub-walk did not close")
                    verts = verts[:pos] + sub_v + verts[pos + 1:]
                    path = path[:pos] + sub_e + path[pos:]
                    break
            else:
                raise WitnessError("relation graph is disconnected; no closed even walk")
        if verts[-1] != v1 or len(path) % 2:
            raise WitnessError("walk failed to close up")
        sources = tuple((edges[c][idx][2], edges[c][idx][3]) for c, idx in path)
        return HHZWalk(tuple(verts[:-1]), sources, D, sum(f))

    # witnesses --------------------------------------------------------------
    def witness(self, uw, vw, trail: list, walks: list | None = None) -> tuple[int, ...]:
        u = self.product(uw)
        v = self.product(vw)
        f = _colon(v, u)
        if sum(f) == 1:
            trail.append("degree-one")
            return v
        common = sorted(set(uw) & set(vw))
        if common:
            c = common[0]
            trail.append("common-factor-reduction")
            uw2, vw2 = _drop(uw, [uw.index(c)]), _drop(vw, [vw.index(c)])
            return _add(self._recurse(uw, uw2, vw2, trail, walks), self.E[c])
        g = _colon(u, v)
        walk = self.build_walk(uw, vw, f, g)
        if walks is not None:
            walks.append((uw, vw, walk))
        return self._cases(uw, vw, u, v, f, walk, trail, walks)

    def _recurse(self, uw, uw2, vw2, trail, walks):
        if not len(uw2) < len(uw):
            raise WitnessError("recursion does not lower the power")
        if self.std(self.product(uw2)) != uw2 or self.std(self.product(vw2)) != vw2:
            raise WitnessError("sub-presentation is not standard")
        if not word_key(vw2) < word_key(uw2):
            raise WitnessError("reduced pair is out of order")
        return self.witness(uw2, vw2, trail, walks)

    def _cases(self, uw, vw, u, v, f, walk: "HHZWalk", trail, walks):
        vs = (None,) + walk.vertices + (walk.vertices[0],)  # 1-based, wraps around
        src = (None,) + walk.sources
        Lw = len(walk.vertices)
        D = walk.dummy
        dummies = [l for l in range(3, Lw + 1) if vs[l] == D]
        if len(dummies) < 2:
            raise WitnessError("fewer than two dummy visits")
        l1, l2 = dummies[0], dummies[1]

        def u_inst(ls):
            out = []
            for l in ls:
                kind, r = src[l]
                if kind != "u":
                    raise WitnessError(f"pair {l} is not a factor of u")
                out.append(r)
            return out

        def v_inst(ls):
            out = []
            for l in ls:
                kind, s = src[l]
                if kind != "v":
                    raise WitnessError(f"pair {l} is not a factor of v")
                out.append(s)
            return out

        def swap(removed_r, added):
            """Replace factors of u by generators; returns (w, presentation)."""
            t = list(_drop(uw, removed_r)) + list(added)
            return self.product(sorted(t)), tuple(sorted(t))

        if l1 % 2 == 0:
            trail.append("case-1")
            removed = u_inst(range(1, l1 - 2, 2))
            added = [vw[s] for s in v_inst(range(2, l1 - 1, 2))]
            w, t = swap(removed, added)
            self._expect(w, t, uw, u, f, vs[l1 - 1])
            return w

        if l2 % 2 == 1:
            trail.append("case-2")
            if l2 - l1 < 4:
                raise WitnessError("dummies too close in case 2")
            ru = u_inst(range(l1 + 2, l2 - 1, 2))
            rv = v_inst(range(l1 + 1, l2 - 2, 2))
            w2 = self._recurse(uw, _drop(uw, ru), _drop(vw, rv), trail, walks)
            return _add(w2, self.product(uw[r] for r in ru))

        if l1 > 3:
            trail.append("case-3-reduction")
            ru = u_inst(range(3, l1 - 1, 2))
            rv = v_inst(range(2, l1 - 2, 2))
            w2 = self._recurse(uw, _drop(uw, ru), _drop(vw, rv), trail, walks)
            return _add(w2, self.product(uw[r] for r in ru))

        v1, v2 = vs[1], vs[2]
        first = u_inst([1])

        def chord_swap(q, chord):
            """Trade e_{i1} and a stretch of u-factors for v-factors plus ``chord``."""
            if q % 2 == 0:
                ru, av = u_inst(range(5, q, 2)), v_inst(range(4, q - 1, 2))
                expect = vs[4]
            else:
                ru, av = u_inst(range(q, l2 - 2, 2)), v_inst(range(q + 1, l2 - 1, 2))
                expect = vs[l2 - 1]
            return swap(first + ru, [vw[s] for s in av] + [chord]), expect

        for p in range(4, l2):
            if vs[p] in (v1, v2):
                trail.append("case-3-revisit")
                # the closed stretch v_4..v_p (or v_p..v_{l2-1}) replaces e_{i1}
                if p % 2 == 1:
                    ru, av, expect = range(5, p - 1, 2), range(4, p, 2), vs[4]
                else:
                    ru, av, expect = range(p + 1, l2 - 2, 2), range(p, l2 - 1, 2), vs[l2 - 1]
                w, t = swap(first + u_inst(ru), [vw[s] for s in v_inst(av)])
                self._expect(w, t, uw, u, f, expect)
                return w

        split = [p for p in range(4, l2 - 1) if vs[p] != vs[p + 1]]
        if not split:
            if not (l2 == 6 and vs[4] == vs[5]):
                raise WitnessError("case 3.2 shape (l2 = 6, v4 = v5) fails")
            trail.append("case-3.2")
            for end in (v1, v2):
                c = self.quad_index(end, vs[4])
                if c is not None:
                    (w, t), expect = chord_swap(4, c)
                    self._expect(w, t, uw, u, f, expect)
                    return w
            raise WitnessError("no exchange generator in case 3.2")

        trail.append("case-3.1.1" if v1 != v2 else "case-3.1.2")
        fallback = None
        for p in split:
            a, b = sorted((vs[p], vs[p + 1]))
            if v1 != v2:
                options = [(v1, p), (v1, p + 1), (v2, p), (v2, p + 1)]
            else:
                options = [(v1, p), (v1, p + 1)]
            # the exchange promised by (*) / (**) uses the smaller endpoint first
            options = sorted(options, key=lambda eq: vs[eq[1]] != a)
            for end, q in options:
                c = self.quad_index(end, vs[q])
                if c is None:
                    continue
                (w, t), expect = chord_swap(q, c)
                ok, strict = self._check(w, t, uw, u, f, expect)
                if ok and strict:
                    return w
                if ok and fallback is None:
                    fallback = w
        if fallback is not None:
            return fallback
        raise WitnessError("no exchange generator in case 3.1")

    def _check(self, w, t, uw, u, f, q) -> tuple[bool, bool]:
        """(valid witness, the displayed presentation already precedes u's word)."""
        if q is None or q == self.n:
            return False, False
        var = tuple(1 if p == q else 0 for p in range(self.n))
        if _colon(w, u) != var or not f[q]:
            return False, False
        sw = self.std(w)
        if sw is None or not word_key(sw) < word_key(uw):
            return False, False
        return True, word_key(t) < word_key(uw)

    def _expect(self, w, t, uw, u, f, q) -> None:
        ok, _ = self._check(w, t, uw, u, f, q)
        if not ok:
            raise WitnessError("constructed monomial is not a valid witness")


def _drop(word: Sequence[int], instances: Iterable[int]) -> tuple[int, ...]:
    gone = set(instances)
    return tuple(x for r, x in enumerate(word) if r not in gone)


_ENGINES: dict[int, tuple[HHZLabeling, _Engine]] = {}


def _engine(L: HHZLabeling) -> _Engine:
    hit = _ENGINES.get(id(L))
    if hit is None or hit[0] is not L:
        if len(_ENGINES) > 64:
            _ENGINES.clear()
        hit = (L, _Engine(L))
        _ENGINES[id(L)] = hit
    return hit[1]


# -------------------------------------------------------------- public API
def standard_presentation(L: HHZLabeling, u: Monomial, k: int) -> StandardPresentation:
    if u.ctx != L.ctx:
        raise ValueError("monomial is not over the labeling's context")
    word = _engine(L).std(u.dense())
    if word is None or len(word) != k:
        raise ValueError(f"{u} is not a minimal generator of I^{k}")
    return StandardPresentation(u, YWord(word))


def power_elements(L: HHZLabeling, k: int) -> list[Monomial]:
    if k < 1:
        raise ValueError("k must be positive")
    return [Monomial.from_dense(L.ctx, u) for u in _engine(L).elements(k)]


def power_order(L: HHZLabeling, k: int) -> GeneratorOrdering:
    """G(I^k) listed by increasing standard word."""
    gens = power_elements(L, k)
    return GeneratorOrdering(MonomialIdeal(L.ctx, tuple(gens)), tuple(gens))


@dataclass(frozen=True)
class HHZWalk:
    """Closed walk v_1, ..., v_L (0-based positions; ``dummy`` is the extra one).

    ``sources[l - 1]`` tells which factor the pair (v_l, v_{l+1}) came from:
    ``("u", r)`` / ``("v", s)`` for the r-th / s-th letter of the standard
    word, ``("f", p)`` / ``("g", p)`` for a variable of f or g paired with
    the dummy.
    """

    vertices: tuple[int, ...]
    sources: tuple[tuple[str, int], ...]
    dummy: int
    d: int

    def check(self, L: HHZLabeling, uw: Sequence[int], vw: Sequence[int]) -> bool:
        """Claims (i)-(iii) for the pair of standard words ``uw``, ``vw``."""
        eng = _engine(L)
        n, D = eng.n, self.dummy
        vs = list(self.vertices)
        Lw = len(vs)
        if Lw != 2 * (len(uw) + self.d):
            return False
        nxt = vs[1:] + vs[:1]
        # (i)
        if (vs[0], vs[1]) != eng.pairs[uw[-1]] or vs[0] > vs[1]:
            return False
        u, v = eng.product(uw), eng.product(vw)
        f, g = _colon(v, u), _colon(u, v)
        odd, even = [0] * (n + 1), [0] * (n + 1)
        for l in range(Lw):
            tgt = odd if l % 2 == 0 else even
            tgt[vs[l]] += 1
            tgt[nxt[l]] += 1
        # (ii)
        if tuple(odd) != _add(f, u) + (self.d,) or tuple(even) != _add(g, v) + (self.d,):
            return False
        # (iii)
        for l in range(Lw):
            a, b = vs[l], nxt[l]
            if a == D or b == D:
                continue
            idx = eng.quad_index(a, b)
            pool = uw if l % 2 == 0 else vw
            if idx is None or idx not in pool:
                return False
        return True

    def to_json(self, L: HHZLabeling) -> list[str]:
        names = L.ctx.names
        return [names[x] if x != self.dummy else "DUMMY" for x in self.vertices]


@dataclass(frozen=True)
class HHZWitness:
    w: Monomial
    q: int
    tag: str
    trail: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"w": str(self.w), "variable": self.w.ctx.names[self.q], "tag": self.tag, "trail": list(self.trail)}


def witness(L: HHZLabeling, k: int, u: Monomial, v: Monomial) -> HHZWitness:
    """Witness that v (earlier in the power order) does not obstruct u."""
    eng = _engine(L)
    uw = standard_presentation(L, u, k).word.indices
    vw = standard_presentation(L, v, k).word.indices
    if u == v or not word_key(vw) < word_key(uw):
        raise ValueError("witness needs v strictly before u in the power order")
    trail: list[str] = []
    w = eng.witness(uw, vw, trail)
    c = _colon(w, u.dense())
    q = next(p for p, e in enumerate(c) if e)
    return HHZWitness(Monomial.from_dense(L.ctx, w), q, trail[0], tuple(trail))


def hhz_walk(L: HHZLabeling, k: int, u: Monomial, v: Monomial) -> HHZWalk:
    """The closed even walk for a pair with no common factor and deg(v : u) >= 2."""
    eng = _engine(L)
    uw = standard_presentation(L, u, k).word.indices
    vw = standard_presentation(L, v, k).word.indices
    if set(uw) & set(vw):
        raise ValueError("standard presentations share a factor")
    ud, vd = u.dense(), v.dense()
    f, g = _colon(vd, ud), _colon(ud, vd)
    if sum(f) < 2:
        raise ValueError("deg(v : u) must be at least 2")
    return eng.build_walk(uw, vw, f, g)


def verify_witness(L: HHZLabeling, k: int, u: Monomial, v: Monomial, wit: HHZWitness) -> bool:
    """Independent re-check of a witness from the monomials alone."""
    eng = _engine(L)
    try:
        uw = standard_presentation(L, u, k).word
        ww = standard_presentation(L, wit.w, k).word
    except ValueError:
        return False
    if not ww < uw:
        return False
    from .core import colon_gen

    c = colon_gen(wit.w, u)
    if c != Monomial.var(L.ctx, wit.q):
        return False
    return c.divides(colon_gen(v, u)) and eng is not None


@dataclass
class PowerReport:
    k: int
    size: int
    lq_ok: bool
    lq_violation: tuple[int, int] | None = None
    pairs_checked: int = 0
    witness_failures: list = field(default_factory=list)
    tags: Counter = field(default_factory=Counter)
    trail_tags: Counter = field(default_factory=Counter)
    order: list[str] | None = None
    witnesses: list | None = None

    @property
    def ok(self) -> bool:
        return self.lq_ok and not self.witness_failures

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "size": self.size,
            "linear_quotients": self.lq_ok,
            "pairs_checked": self.pairs_checked,
            "witness_failures": self.witness_failures,
            "tags": dict(sorted(self.tags.items())),
            "trail_tags": dict(sorted(self.trail_tags.items())),
            "pass": self.ok,
        }
        if self.lq_violation is not None:
            out["violation"] = list(self.lq_violation)
        if self.order is not None:
            out["order"] = self.order
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        return out


@dataclass
class TheoremReport:
    ideal: MonomialIdeal
    certificate: ChordalityCertificate | None
    labeling: HHZLabeling | None
    powers: list[PowerReport]

    @property
    def linear_resolution(self) -> bool:
        return bool(self.certificate)

    @property
    def ok(self) -> bool:
        return self.linear_resolution and all(p.ok for p in self.powers)

    def to_json(self) -> dict:
        out = {
            "ideal": [str(g) for g in self.ideal.gens],
            "linear_resolution": self.linear_resolution,
            "certificate": self.certificate.to_json() if self.certificate is not None else None,
            "pass": self.ok,
        }
        if self.labeling is not None:
            out["labeling"] = self.labeling.to_json()
        out["powers"] = [p.to_json() for p in self.powers]
        return out


def _check_pair(eng: _Engine, uw, vw, u, v) -> tuple[list[str] | None, tuple | None]:
    trail: list[str] = []
    try:
        w = eng.witness(uw, vw, trail)
    except WitnessError as exc:
        return None, ("error", str(exc))
    c = _colon(w, u)
    f = _colon(v, u)
    sw = eng.std(w)
    if sum(c) != 1 or sw is None or len(sw) != len(uw) or not word_key(sw) < word_key(uw):
        return None, ("invalid", w)
    q = next(p for p, e in enumerate(c) if e)
    if not f[q]:
        return None, ("invalid", w)
    return trail, (w, q)


def verify_theorem(I: MonomialIdeal, kmax: int, pairs: str = "all", detail: bool = False) -> TheoremReport:
    """Check that G(I^k), k = 1..kmax, in the power order has linear quotients.

    ``pairs`` selects which (v, u), v before u, get a constructed witness:
    ``"all"`` or ``"adjacent"`` (consecutive elements only).
    """
    _require_quadratic(I)
    cert = has_linear_resolution_quadratic(I)
    if not cert:
        return TheoremReport(I, cert, None, [])
    L = hhz_relabel(I)
    eng = _engine(L)
    names = L.ctx.names
    reports = []
    for k in range(1, kmax + 1):
        elems = eng.elements(k)
        words = [eng.std(u) for u in elems]
        ordering = GeneratorOrdering(
            MonomialIdeal.from_dense(L.ctx, elems), tuple(Monomial.from_dense(L.ctx, u) for u in elems)
        )
        lq = is_lq_order(ordering)
        rep = PowerReport(k, len(elems), bool(lq))
        if isinstance(lq, LQFailure):
            rep.lq_violation = (lq.j, lq.i)
        if detail:
            rep.order = ordering.to_json()
            rep.witnesses = []
        for i in range(1, len(elems)):
            js = range(i) if pairs == "all" else [i - 1]
            for j in js:
                trail, out = _check_pair(eng, words[i], words[j], elems[i], elems[j])
                rep.pairs_checked += 1
                if trail is None:
                    kind, info = out
                    info = str(Monomial.from_dense(L.ctx, info)) if kind == "invalid" else info
                    rep.witness_failures.append([j, i, kind, info])
                    continue
                rep.tags[trail[0]] += 1
                rep.trail_tags.update(set(trail))
                if detail:
                    w, q = out
                    rep.witnesses.append([j, i, str(Monomial.from_dense(L.ctx, w)), names[q], trail[0]])
        reports.append(rep)
    return TheoremReport(I, cert, L, reports)


def all_words(m: int, k: int):
    return combinations_with_replacement(range(m), k)
