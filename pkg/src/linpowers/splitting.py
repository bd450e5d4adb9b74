"""Products P^k I^l with a monomial prime P, and a seeded search over them.

For I quadratic with linear resolution and P a monomial prime containing
I, the ideal J = x_0 P + I (x_0 a fresh first variable) is again quadratic
with linear resolution, G(J^{k+l}) splits by x_0-degree, and the x_0^k
stratum of the power order of J^{k+l} gives a linear quotients order of
P^k I^l after dividing out x_0^k.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .core import Monomial, MonomialIdeal, VarContext, ideal_power, ideal_product
from .graphs import Graph, complement, to_edge_ideal
from .hhz import _engine, hhz_relabel
from .linres import has_linear_resolution_quadratic
from .quotients import (
    GeneratorOrdering,
    LQCertificate,
    LQFailure,
    SearchBudgetExceeded,
    find_lq_order,
    is_lq_order,
    lex_ordering,
)

__all__ = [
    "PrimeSpec",
    "GeneratorLimitExceeded",
    "PkIlResult",
    "SearchConfig",
    "SearchReport",
    "TrialRecord",
    "augment",
    "fresh_name",
    "pk_il",
    "check_pk_il",
    "stratification_holds",
    "random_chordal_graph",
    "random_cochordal_ideal",
    "random_linres_quadratic",
    "random_cover_prime",
    "search_question",
    "verify_report",
    "DEFAULT_MAX_GENERATORS",
]

DEFAULT_MAX_GENERATORS = 2000


class GeneratorLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class PrimeSpec:
    """Monomial prime generated by the variables at ``positions``."""

    positions: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "positions", frozenset(self.positions))
        if not self.positions:
            raise ValueError("a monomial prime needs at least one variable")
        if min(self.positions) < 0:
            raise ValueError("negative variable position")

    @classmethod
    def from_names(cls, ctx: VarContext, names: Sequence[str]) -> "PrimeSpec":
        return cls(frozenset(ctx.index(n) for n in names))

    def check(self, ctx: VarContext) -> None:
        if max(self.positions) >= len(ctx):
            raise ValueError("prime uses a position outside the context")

    def ideal(self, ctx: VarContext) -> MonomialIdeal:
        self.check(ctx)
        return MonomialIdeal(ctx, tuple(Monomial.var(ctx, p) for p in self.positions))

    def contains(self, I: MonomialIdeal) -> bool:
        return all(g.support() & self.positions for g in I.gens)

    def names(self, ctx: VarContext) -> list[str]:
        return [ctx.names[p] for p in sorted(self.positions)]


def fresh_name(ctx: VarContext, base: str = "x0") -> str:
    name = base
    while name in ctx:
        name += "_"
    return name


def augment(I: MonomialIdeal, P: PrimeSpec) -> MonomialIdeal:
    """x_0 P + I over the context with a fresh variable prepended."""
    P.check(I.ctx)
    ctx = I.ctx.prepend(fresh_name(I.ctx))
    x0 = Monomial.var(ctx, 0)
    gens = [x0 * Monomial.var(ctx, p + 1) for p in P.positions]
    gens += [g.in_context(ctx) for g in I.gens]
    return MonomialIdeal(ctx, tuple(gens))


def _guarded_power(I: MonomialIdeal, k: int, bound: int) -> MonomialIdeal:
    out = ideal_power(I, k)
    if len(out) > bound:
        raise GeneratorLimitExceeded(f"{len(out)} generators exceed the bound {bound}")
    return out


def pk_il(I: MonomialIdeal, P: PrimeSpec, k: int, l: int, max_generators: int = DEFAULT_MAX_GENERATORS) -> MonomialIdeal:
    if k < 0 or l < 0:
        raise ValueError("exponents must be nonnegative")
    A = _guarded_power(P.ideal(I.ctx), k, max_generators)
    B = _guarded_power(I, l, max_generators)
    if len(A) * len(B) > 50 * max_generators:
        raise GeneratorLimitExceeded(f"{len(A)} x {len(B)} products exceed the bound {max_generators}")
    out = ideal_product(A, B)
    if len(out) > max_generators:
        raise GeneratorLimitExceeded(f"{len(out)} generators exceed the bound {max_generators}")
    return out


@dataclass(frozen=True)
class PkIlResult:
    ideal: MonomialIdeal
    result: LQCertificate | LQFailure
    hypotheses: bool
    route: str

    def __bool__(self) -> bool:
        return bool(self.result)

    @property
    def ordering(self) -> GeneratorOrdering:
        return self.result.ordering

    def to_json(self) -> dict:
        out = {
            "generators": len(self.ideal),
            "hypotheses": self.hypotheses,
            "route": self.route,
            "linear_quotients": bool(self.result),
        }
        out.update(self.result.to_json())
        return out


def _hypotheses(I: MonomialIdeal, P: PrimeSpec) -> bool:
    return I.is_quadratic() and P.contains(I) and bool(has_linear_resolution_quadratic(I))


def stratum_order(I: MonomialIdeal, P: PrimeSpec, k: int, l: int) -> list[Monomial] | None:
    """The x_0^k stratum of the power order of (x_0 P + I)^{k+l}, divided by x_0^k.

    ``None`` when the augmented ideal lacks a linear resolution.
    """
    J = augment(I, P)
    if not bool(has_linear_resolution_quadratic(J)):
        return None
    L = hhz_relabel(J)
    eng = _engine(L)
    x0 = L.ctx.index(J.ctx.names[0])
    back = [I.ctx.index(name) if name in I.ctx else None for name in L.ctx.names]
    out = []
    for u in eng.elements(k + l):
        if u[x0] != k:
            continue
        dense = [0] * len(I.ctx)
        for p, e in enumerate(u):
            if p != x0 and e:
                dense[back[p]] = e
        out.append(Monomial.from_dense(I.ctx, dense))
    return out


def check_pk_il(
    I: MonomialIdeal,
    P: PrimeSpec,
    k: int,
    l: int,
    max_generators: int = DEFAULT_MAX_GENERATORS,
) -> PkIlResult:
    """Order G(P^k I^l) and check linear quotients.

    Under the hypotheses of the splitting argument the order comes from the
    augmented power order; otherwise (or if the augmented ideal has no
    linear resolution) the lex order is checked and any failure reported.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be at least 1")
    target = pk_il(I, P, k, l, max_generators)
    hyp = _hypotheses(I, P)
    gens = stratum_order(I, P, k, l) if I.is_quadratic() else None
    if gens is not None:
        if set(gens) != set(target.gens) or len(gens) != len(target.gens):
            raise AssertionError("x_0^k stratum does not reproduce G(P^k I^l)")
        ordering = GeneratorOrdering(target, tuple(gens))
        route = "augmented-power-order"
    else:
        ordering = lex_ordering(target)
        route = "lex"
    return PkIlResult(target, is_lq_order(ordering), hyp, route)


def stratification_holds(I: MonomialIdeal, P: PrimeSpec, total: int) -> bool:
    """G((x_0P + I)^total) is the disjoint union of x_0^i G(P^i I^{total-i})."""
    J = augment(I, P)
    power = ideal_power(J, total)
    ctx = J.ctx
    Pid = P.ideal(I.ctx)
    expected = set()
    for i in range(total + 1):
        part = ideal_product(ideal_power(Pid, i), ideal_power(I, total - i))
        x0i = Monomial.var(ctx, 0) ** i
        for g in part.gens:
            expected.add(x0i * g.in_context(ctx))
    return set(power.gens) == expected


# ------------------------------------------------------------------ sampling
def random_chordal_graph(rng: random.Random, n: int, ctx: VarContext | None = None) -> Graph:
    """Chordal graph built backwards along a random elimination order.

    Each new vertex is joined to a random clique among the vertices already
    placed, so it is simplicial when the order is read from the end.
    """
    order = list(range(n))
    rng.shuffle(order)
    adj = [0] * n
    placed: list[int] = []
    p = rng.random()
    for v in order:
        cand = [w for w in placed if rng.random() < p]
        rng.shuffle(cand)
        clique: list[int] = []
        for w in cand:
            if all(adj[w] >> c & 1 for c in clique):
                clique.append(w)
        for w in clique:
            adj[v] |= 1 << w
            adj[w] |= 1 << v
        placed.append(v)
    return Graph(ctx or VarContext.standard(n), tuple(adj))


def random_cochordal_ideal(rng: random.Random, n: int, ctx: VarContext | None = None) -> MonomialIdeal:
    """Nonzero squarefree quadratic ideal with linear resolution."""
    while True:
        I = to_edge_ideal(complement(random_chordal_graph(rng, n, ctx)))
        if not I.is_zero():
            return I


def random_linres_quadratic(
    rng: random.Random, n: int, ctx: VarContext | None = None, square: bool = True
) -> MonomialIdeal:
    """Quadratic ideal with linear resolution and, if ``square``, at least one x_i^2."""
    ctx = ctx or VarContext.standard(n)
    monos = [(a, b) for a in range(n) for b in range(a, n)]
    while True:
        p = rng.uniform(0.15, 0.85)
        chosen = [ab for ab in monos if rng.random() < p]
        if not chosen or (square and not any(a == b for a, b in chosen)):
            continue
        gens = []
        for a, b in chosen:
            d = [0] * n
            d[a] += 1
            d[b] += 1
            gens.append(tuple(d))
        I = MonomialIdeal.from_dense(ctx, gens)
        if has_linear_resolution_quadratic(I):
            return I


def random_cover_prime(rng: random.Random, I: MonomialIdeal) -> PrimeSpec:
    """Random monomial prime containing I."""
    n = len(I.ctx)
    chosen = {p for p in range(n) if rng.random() < 0.3}
    for g in I.gens:
        if not g.support() & chosen:
            chosen.add(rng.choice(sorted(g.support())))
    if not chosen:
        chosen.add(rng.randrange(n))
    return PrimeSpec(frozenset(chosen))


def _random_prime(rng: random.Random, n: int) -> PrimeSpec:
    size = rng.randint(1, n)
    return PrimeSpec(frozenset(rng.sample(range(n), size)))


# -------------------------------------------------------------------- search
@dataclass(frozen=True)
class SearchConfig:
    n: int = 4
    trials: int = 100
    seed: int = 0
    kmax: int = 1
    lmax: int = 1
    containing: bool = False
    max_search_generators: int = 14
    node_limit: int = 200_000
    max_generators: int = DEFAULT_MAX_GENERATORS


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    ideal: tuple[str, ...]
    prime: tuple[str, ...]
    k: int
    l: int
    generators: int
    verdict: str  # "lq", "no-lq" or "undecided"
    method: str
    order: tuple[str, ...] | None = None
    product: tuple[str, ...] | None = None

    def to_json(self) -> dict:
        out = {
            "trial": self.trial,
            "ideal": list(self.ideal),
            "prime": list(self.prime),
            "k": self.k,
            "l": self.l,
            "generators": self.generators,
            "verdict": self.verdict,
            "method": self.method,
        }
        if self.order is not None:
            out["order"] = list(self.order)
        if self.product is not None:
            out["product"] = list(self.product)
        return out


@dataclass
class SearchReport:
    config: SearchConfig
    trials: list[TrialRecord] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[TrialRecord]:
        return [t for t in self.trials if t.verdict == "no-lq"]

    def census(self) -> dict:
        out = {"lq": 0, "no-lq": 0, "undecided": 0}
        for t in self.trials:
            out[t.verdict] += 1
        return out

    def to_json(self, trials: bool = True) -> dict:
        c = self.config
        out = {
            "seed": c.seed,
            "trials": c.trials,
            "n": c.n,
            "kmax": c.kmax,
            "lmax": c.lmax,
            "containing": c.containing,
            "census": self.census(),
            "candidate_counterexamples": [t.to_json() for t in self.counterexamples],
        }
        if trials:
            out["records"] = [t.to_json() for t in self.trials]
        return out


def _sample_trial(config: SearchConfig, trial: int):
    rng = random.Random(f"{config.seed}-{trial}")
    ctx = VarContext.standard(config.n)
    if rng.random() < 0.5:
        I = random_cochordal_ideal(rng, config.n, ctx)
    else:
        I = random_linres_quadratic(rng, config.n, ctx)
    P = random_cover_prime(rng, I) if config.containing else _random_prime(rng, config.n)
    k = rng.randint(1, config.kmax)
    l = rng.randint(1, config.lmax)
    return I, P, k, l


def run_trial(config: SearchConfig, trial: int) -> TrialRecord:
    I, P, k, l = _sample_trial(config, trial)
    base = dict(
        trial=trial,
        ideal=tuple(str(g) for g in I.gens),
        prime=tuple(P.names(I.ctx)),
        k=k,
        l=l,
    )
    try:
        target = pk_il(I, P, k, l, config.max_generators)
    except GeneratorLimitExceeded:
        return TrialRecord(generators=-1, verdict="undecided", method="generator-limit", **base)
    base["generators"] = len(target)
    # cheap candidates first, exhaustive search only if they fail
    candidates = []
    stratum = stratum_order(I, P, k, l)
    if stratum is not None and set(stratum) == set(target.gens):
        candidates.append(("augmented-power-order", GeneratorOrdering(target, tuple(stratum))))
    candidates.append(("lex", lex_ordering(target)))
    for method, ordering in candidates:
        if is_lq_order(ordering):
            return TrialRecord(verdict="lq", method=method, order=tuple(ordering.to_json()), **base)
    if len(target) > config.max_search_generators:
        return TrialRecord(verdict="undecided", method="too-many-generators", **base)
    try:
        found = find_lq_order(target, max_generators=config.max_search_generators, node_limit=config.node_limit)
    except SearchBudgetExceeded:
        return TrialRecord(verdict="undecided", method="node-limit", **base)
    if found is None:
        return TrialRecord(
            verdict="no-lq", method="exhaustive", product=tuple(str(g) for g in target.gens), **base
        )
    return TrialRecord(verdict="lq", method="exhaustive", order=tuple(found.to_json()), **base)


def _run_chunk(args):
    config, trials = args
    return [run_trial(config, t) for t in trials]


def search_question(config: SearchConfig, workers: int = 1) -> SearchReport:
    """Seeded search for products P^k I^l without linear quotients.

    A ``no-lq`` verdict is a candidate finding to be reviewed, and comes
    with the full generator list so that it can be re-checked.
    """
    idx = list(range(config.trials))
    if workers <= 1:
        records = [run_trial(config, t) for t in idx]
    else:
        chunks = [idx[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, [(config, c) for c in chunks]))
        records = sorted((r for part in parts for r in part), key=lambda r: r.trial)
    return SearchReport(config, records)


def verify_report(report: SearchReport) -> bool:
    """Recompute every trial from its seed and re-check decided verdicts."""
    from .cli import parse_ideal

    c = report.config
    ctx = VarContext.standard(c.n)
    for rec in report.trials:
        I, P, k, l = _sample_trial(c, rec.trial)
        if tuple(str(g) for g in I.gens) != rec.ideal or tuple(P.names(ctx)) != rec.prime:
            return False
        if rec.verdict == "undecided":
            continue
        target = pk_il(I, P, k, l, c.max_generators)
        if rec.verdict == "lq":
            ideal = parse_ideal(", ".join(rec.order), ctx=ctx)
            gens = tuple(parse_ideal(s, ctx=ctx).gens[0] for s in rec.order)
            if ideal != target or not is_lq_order(GeneratorOrdering(target, gens)):
                return False
        elif find_lq_order(target, max_generators=max(len(target), c.max_search_generators)) is not None:
            return False
    return True
