"""Acceptance runners.

Each ``criterion_*`` function returns a JSON-serializable report with a
boolean ``"pass"`` entry.  Reports hold no timings, so two runs with the
same seeds must serialize to identical bytes whatever the worker count.

Run ``python3 -m linpowers.acceptance`` for one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import hashlib
import math
import json
import random
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, combinations_with_replacement, permutations

import numpy as np

from .core import Monomial, MonomialIdeal, VarContext, ideal_product, polarize
from .graphs import Graph, is_chordal, is_cochordal, to_edge_ideal
from .hhz import CORE_TAGS, hhz_relabel, power_elements, standard_presentation, verify_theorem, word_key
from .linres import betti_oracle, is_linear_from_betti
from .quotients import find_lq_order, naive_find_lq_order
from .splitting import (
    PrimeSpec,
    SearchConfig,
    check_pk_il,
    random_cochordal_ideal,
    random_cover_prime,
    random_linres_quadratic,
    search_question,
    stratification_holds,
)
from .cli import parse_ideal

__all__ = [
    "brute_force_chordal",
    "corpus",
    "criterion_1",
    "criterion_2",
    "criterion_3",
    "criterion_4",
    "criterion_5",
    "criterion_6",
    "criterion_7",
    "criterion_8",
    "run_all",
    "dumps",
]

SEARCH_CONFIG = SearchConfig(n=4, trials=1000, seed=2024, kmax=2, lmax=2)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def _digest(items) -> str:
    h = hashlib.sha256()
    for it in items:
        h.update(json.dumps(it, sort_keys=True).encode())
        h.update(b"\n")
    return h.hexdigest()


def _map(fn, chunks, workers: int):
    if workers <= 1:
        return [fn(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))


def _split(seq, parts: int):
    seq = list(seq)
    size = max(1, -(-len(seq) // max(parts, 1)))
    return [seq[i:i + size] for i in range(0, len(seq), size)] or [[]]


# ------------------------------------------------------------- criterion 1
def _pair_bit(a: int, b: int) -> int:
    a, b = min(a, b), max(a, b)
    return b * (b - 1) // 2 + a


def brute_force_chordal(n: int, masks: np.ndarray) -> np.ndarray:
    """Chordality by looking for an induced cycle of length >= 4 on every vertex subset.

    Edge bits follow :meth:`Graph.from_mask`.  A subset S spans an induced
    cycle exactly when the edges of g inside S form a Hamiltonian cycle of S.
    """
    masks = np.asarray(masks, dtype=np.uint32)
    has_cycle = np.zeros(masks.shape, dtype=bool)
    for size in range(4, n + 1):
        for S in combinations(range(n), size):
            inside = 0
            for a, b in combinations(S, 2):
                inside |= 1 << _pair_bit(a, b)
            cycles = set()
            first = S[0]
            for rest in permutations(S[1:]):
                if rest[0] > rest[-1]:
                    continue
                ring = (first,) + rest
                c = 0
                for i in range(size):
                    c |= 1 << _pair_bit(ring[i], ring[(i + 1) % size])
                cycles.add(c)
            restricted = masks & np.uint32(inside)
            for c in sorted(cycles):
                has_cycle |= restricted == np.uint32(c)
    return ~has_cycle


def _chordal_chunk(args):
    n, masks = args
    ctx = VarContext.standard(n)
    verdicts = bytearray()
    bad_certs = []
    for m in masks:
        cert = is_chordal(Graph.from_mask(n, m, ctx))
        verdicts.append(1 if cert else 0)
        if not cert.verify():
            bad_certs.append(m)
    return bytes(verdicts), bad_certs


def criterion_1(n: int = 7, full: bool = True, sample: int = 100_000, seed: int = 0, workers: int = 1) -> dict:
    edges = n * (n - 1) // 2
    if full:
        masks = list(range(1 << edges))
    else:
        rng = random.Random(seed)
        masks = [rng.randrange(1 << edges) for _ in range(sample)]
    parts = _map(_chordal_chunk, [(n, c) for c in _split(masks, max(workers, 1) * 8)], workers)
    verdicts = b"".join(p[0] for p in parts)
    bad_certs = [m for p in parts for m in p[1]]
    ours = np.frombuffer(verdicts, dtype=np.uint8).astype(bool)
    oracle = brute_force_chordal(n, np.array(masks, dtype=np.uint32))
    diff = np.nonzero(ours != oracle)[0]
    return {
        "criterion": 1,
        "mode": "full" if full else f"sample(seed={seed})",
        "vertices": n,
        "graphs": len(masks),
        "chordal": int(ours.sum()),
        "disagreements": int(diff.size),
        "first_disagreements": [masks[i] for i in diff[:5].tolist()],
        "certificate_failures": len(bad_certs),
        "verdict_sha256": hashlib.sha256(verdicts).hexdigest(),
        "pass": diff.size == 0 and not bad_certs,
    }


# ------------------------------------------------------------- criterion 2
def _froberg_chunk(args):
    n, masks = args
    ctx = VarContext.standard(n)
    out = []
    for m in masks:
        G = Graph.from_mask(n, m, ctx)
        co = is_cochordal(G)
        lin = is_linear_from_betti(betti_oracle(to_edge_ideal(G)), 2)
        out.append((m, bool(co), lin, co.verify()))
    return out


def criterion_2(n: int = 6, workers: int = 1) -> dict:
    masks = range(1 << (n * (n - 1) // 2))
    rows = [r for part in _map(_froberg_chunk, [(n, c) for c in _split(masks, max(workers, 1) * 8)], workers) for r in part]
    disagree = [m for m, a, b, _ in rows if a != b]
    bad = [m for m, _, _, ok in rows if not ok]
    return {
        "criterion": 2,
        "vertices": n,
        "graphs": len(rows),
        "linear": sum(1 for _, a, _, _ in rows if a),
        "disagreements": len(disagree),
        "first_disagreements": disagree[:5],
        "certificate_failures": len(bad),
        "verdict_sha256": _digest((m, a, b) for m, a, b, _ in rows),
        "pass": not disagree and not bad,
    }


# ------------------------------------------------------------- the corpus
def corpus(n: int = 5, samples: int = 200, seed: str = "nonsquarefree") -> list[tuple[str, MonomialIdeal]]:
    """Every nonzero cochordal edge ideal on n labeled vertices, then a seeded
    sample of quadratic ideals with linear resolution containing a square."""
    ctx = VarContext.standard(n)
    out = []
    for m in range(1, 1 << (n * (n - 1) // 2)):
        G = Graph.from_mask(n, m, ctx)
        if is_cochordal(G):
            out.append((f"graph-{m}", to_edge_ideal(G)))
    for i in range(samples):
        rng = random.Random(f"{seed}-{i}")
        k = rng.randint(2, n)
        out.append((f"square-{i}", random_linres_quadratic(rng, k)))
    return out


def _doc(I: MonomialIdeal) -> str:
    return ", ".join(str(g) for g in I.gens)


def _theorem_chunk(args):
    items, kmax = args
    rows = []
    for label, text, nvars in items:
        I = parse_ideal(text, ctx=VarContext.standard(nvars))
        rep = verify_theorem(I, kmax)
        powers = []
        for p in rep.powers:
            powers.append({
                "k": p.k,
                "size": p.size,
                "lq": p.lq_ok,
                "pairs": p.pairs_checked,
                "failures": len(p.witness_failures),
                "tags": dict(sorted(p.tags.items())),
                "trail": dict(sorted(p.trail_tags.items())),
            })
        rows.append({"label": label, "ideal": text, "pass": rep.ok, "powers": powers})
    return rows


def _corpus_items(items):
    return [(label, _doc(I), len(I.ctx)) for label, I in items]


def criterion_3(kmax: int = 3, workers: int = 1, items=None) -> dict:
    items = _corpus_items(items if items is not None else corpus())
    chunks = [(c, kmax) for c in _split(items, max(workers, 1) * 8)]
    rows = [r for part in _map(_theorem_chunk, chunks, workers) for r in part]
    tags, trail = Counter(), Counter()
    pairs = 0
    for r in rows:
        for p in r["powers"]:
            tags.update(p["tags"])
            trail.update(p["trail"])
            pairs += p["pairs"]
    failing = [r["label"] for r in rows if not r["pass"]]
    return {
        "criterion": 3,
        "ideals": len(rows),
        "squarefree": sum(1 for r in rows if r["label"].startswith("graph-")),
        "non_squarefree": sum(1 for r in rows if r["label"].startswith("square-")),
        "kmax": kmax,
        "pairs_checked": pairs,
        "failing": failing,
        "tags": dict(sorted(tags.items())),
        "tag_census": dict(sorted(trail.items())),
        "rows_sha256": _digest(rows),
        "pass": not failing,
    }


def criterion_4(report3: dict) -> dict:
    census = report3["tag_census"]
    missing = [t for t in CORE_TAGS if not census.get(t)]
    return {
        "criterion": 4,
        "required": list(CORE_TAGS),
        "census": {t: census.get(t, 0) for t in CORE_TAGS},
        "missing": missing,
        "pass": not missing,
    }


# ------------------------------------------------------------- criterion 5
def product_counterexample() -> tuple[MonomialIdeal, PrimeSpec]:
    I = parse_ideal("a^2*b, a*b*c, b*c*d, c*d^2")
    return I, PrimeSpec.from_names(I.ctx, ["b", "c"])


def criterion_5() -> dict:
    I, P = product_counterexample()
    PI = ideal_product(P.ideal(I.ctx), I)
    naive = naive_find_lq_order(PI)
    pruned = find_lq_order(PI)
    pol, _ = polarize(PI)
    table = betti_oracle(pol)
    off = table.off_strand(4)
    return {
        "criterion": 5,
        "generators": [str(g) for g in PI.gens],
        "orderings_tried": math.factorial(len(PI)),
        "exhaustive_lq_order": None if naive is None else naive.to_json(),
        "pruned_search_lq_order": None if pruned is None else pruned.to_json(),
        "off_strand": [[i, j, b] for (i, j), b in off.items()],
        "betti": table.to_json(),
        "pass": len(PI) == 8 and naive is None and pruned is None and bool(off),
    }


# ------------------------------------------------------------- criterion 6
def corollary_pairs(count: int = 100, seed: str = "corollary") -> list[tuple[MonomialIdeal, PrimeSpec]]:
    out = []
    for i in range(count):
        rng = random.Random(f"{seed}-{i}")
        n = rng.randint(2, 5)
        if rng.random() < 0.5:
            I = random_cochordal_ideal(rng, n)
        else:
            I = random_linres_quadratic(rng, n)
        out.append((I, random_cover_prime(rng, I)))
    return out


def _corollary_chunk(items):
    rows = []
    for text, nvars, prime in items:
        ctx = VarContext.standard(nvars)
        I = parse_ideal(text, ctx=ctx)
        P = PrimeSpec.from_names(ctx, prime)
        checks = []
        for k in (1, 2):
            for l in (1, 2):
                r = check_pk_il(I, P, k, l)
                checks.append([k, l, len(r.ideal), r.route, bool(r), r.hypotheses])
        strata = [stratification_holds(I, P, t) for t in (2, 3, 4)]
        ok = all(c[4] and c[5] and c[3] == "augmented-power-order" for c in checks) and all(strata)
        rows.append({"ideal": text, "prime": prime, "checks": checks, "strata": strata, "pass": ok})
    return rows


def criterion_6(count: int = 100, workers: int = 1) -> dict:
    items = [(_doc(I), len(I.ctx), P.names(I.ctx)) for I, P in corollary_pairs(count)]
    rows = [r for part in _map(_corollary_chunk, _split(items, max(workers, 1) * 4), workers) for r in part]
    failing = [i for i, r in enumerate(rows) if not r["pass"]]
    return {
        "criterion": 6,
        "pairs": len(rows),
        "certificates": sum(1 for r in rows for c in r["checks"] if c[4]),
        "stratification_checks": sum(len(r["strata"]) for r in rows),
        "failing": failing,
        "rows_sha256": _digest(rows),
        "pass": not failing,
    }


# ------------------------------------------------------------- criterion 7
def _minimality_chunk(items):
    rows = []
    for label, text, nvars in items:
        I = parse_ideal(text, ctx=VarContext.standard(nvars))
        L = hhz_relabel(I)
        e = L.e
        bad = 0
        checked = 0
        for k in (2, 3):
            best: dict[Monomial, tuple[int, ...]] = {}
            for word in combinations_with_replacement(range(len(e)), k):
                u = Monomial.one(L.ctx)
                for i in word:
                    u = u * e[i]
                key = word_key(word)
                if u not in best or key < best[u]:
                    best[u] = key
            elems = power_elements(L, k)
            if set(elems) != set(best):
                bad += 1
            for u in elems:
                checked += 1
                if word_key(standard_presentation(L, u, k).word.indices) != best.get(u):
                    bad += 1
        rows.append((label, checked, bad))
    return rows


def criterion_7(workers: int = 1, items=None) -> dict:
    items = _corpus_items(items if items is not None else corpus())
    rows = [r for part in _map(_minimality_chunk, _split(items, max(workers, 1) * 8), workers) for r in part]
    failing = [label for label, _, bad in rows if bad]
    return {
        "criterion": 7,
        "ideals": len(rows),
        "elements_checked": sum(c for _, c, _ in rows),
        "failing": failing,
        "pass": not failing,
    }


# ------------------------------------------------------------- criterion 8
def search_report(workers: int = 1, config: SearchConfig = SEARCH_CONFIG) -> dict:
    rep = search_question(config, workers=workers)
    return {"search": rep.to_json(trials=True)}


def run_all(workers: int = 1, full_c1: bool = True) -> dict[str, dict]:
    items = corpus()
    out = {"1": criterion_1(full=full_c1, workers=workers), "2": criterion_2(workers=workers)}
    out["3"] = criterion_3(workers=workers, items=items)
    out["4"] = criterion_4(out["3"])
    out["5"] = criterion_5()
    out["6"] = criterion_6(workers=workers)
    out["7"] = criterion_7(workers=workers, items=items)
    out["search"] = search_report(workers=workers)
    return out


def criterion_8(first: dict[str, dict], second: dict[str, dict]) -> dict:
    keys = sorted(set(first) | set(second))
    differing = [k for k in keys if dumps(first.get(k, {})) != dumps(second.get(k, {}))]
    return {
        "criterion": 8,
        "compared": keys,
        "differing": differing,
        "sha256": {k: hashlib.sha256(dumps(first[k]).encode()).hexdigest() for k in keys if k in first},
        "pass": not differing and len(keys) > 0,
    }


def main(argv=None) -> int:
    import argparse

    ap = argparse.ArgumentParser(prog="python3 -m linpowers.acceptance")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--sample-c1", action="store_true", help="use the seeded 10^5 sample for criterion 1")
    ap.add_argument("--out", help="write the reports as JSON to this file")
    args = ap.parse_args(argv)
    t0 = time.time()
    first = run_all(workers=1, full_c1=not args.sample_c1)
    second = run_all(workers=max(args.workers, 2), full_c1=not args.sample_c1)
    first["8"] = criterion_8(first, second)
    status = 0
    for key in ("1", "2", "3", "4", "5", "6", "7", "8"):
        ok = first[key]["pass"]
        status |= not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {key}")
    print(f"total {time.time() - t0:.0f}s", file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(first, fh, indent=1, sort_keys=True)
    return status


if __name__ == "__main__":
    sys.exit(main())
