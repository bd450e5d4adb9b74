"""Command-line front end and the ideal text format.

Format::

    # optional comments
    vars: a, b, c, d
    a^2*b, a*b*c
    b*c*d
    c*d^2

Generators are separated by commas or newlines.  Without a ``vars:`` line
the variables are ordered by first appearance.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Sequence

from .core import NAME_RE, Monomial, colon_gen, MonomialIdeal, VarContext, polarize
from .graphs import Graph, from_edge_ideal, is_chordal, is_cochordal
from .hhz import NoLinearResolution, _engine, hhz_relabel, verify_theorem
from .linres import MAX_ORACLE_SUPPORT, betti_oracle, has_linear_resolution_quadratic, is_linear_from_betti
from .quotients import (
    DEFAULT_MAX_GENERATORS,
    GeneratorOrdering,
    find_lq_order,
    is_lq_order,
    lex_ordering,
)
from .splitting import GeneratorLimitExceeded, PrimeSpec, SearchConfig, check_pk_il, search_question

__all__ = ["ParseError", "IdealDocument", "parse_document", "parse_ideal", "format_ideal", "main", "run"]

SCHEMA = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class IdealDocument:
    ctx: VarContext
    declared: bool
    generators: tuple[Monomial, ...]  # as written, before minimalization

    @property
    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.ctx, self.generators)

    def written_order(self) -> GeneratorOrdering:
        """The written order restricted to minimal generators, first occurrences only."""
        ideal = self.ideal
        keep = set(ideal.gens)
        seen = []
        for g in self.generators:
            if g in keep and g not in seen:
                seen.append(g)
        return GeneratorOrdering(ideal, tuple(seen))


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>[*^,])|(?P<bad>\S))")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _tokens(line: str, lineno: int):
    pos = 0
    out = []
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None or m.end() == pos:
            break
        if m.group("bad") is not None:
            raise ParseError(f"unexpected character {m.group('bad')!r}", lineno, m.start("bad") + 1)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


def parse_document(text: str, ctx: VarContext | None = None) -> IdealDocument:
    declared: list[str] | None = list(ctx.names) if ctx is not None else None
    order: list[str] = []
    raw: list[dict[str, int]] = []
    first_content = True
    for lineno, full in enumerate(text.splitlines(), start=1):
        line = _strip_comment(full)
        if not line.strip():
            continue
        head = line.lstrip()
        if head.startswith("vars") and head[4:].lstrip().startswith(":"):
            col = len(line) - len(head) + 1
            if not first_content or (ctx is not None):
                raise ParseError("a vars: line must come before the generators", lineno, col)
            body_at = line.index(":") + 1
            names = []
            for part_match in re.finditer(r"[^,]+", line[body_at:]):
                name = part_match.group().strip()
                pcol = body_at + part_match.start() + len(part_match.group()) - len(part_match.group().lstrip()) + 1
                if not NAME_RE.match(name):
                    raise ParseError(f"invalid variable name {name!r}", lineno, pcol)
                if name in names:
                    raise ParseError(f"variable {name!r} declared twice", lineno, pcol)
                names.append(name)
            if not names and line[body_at:].strip():
                raise ParseError("empty variable declaration", lineno, body_at + 1)
            declared = names
            first_content = False
            continue
        first_content = False
        toks = _tokens(line, lineno)
        i = 0
        expect_gen = True
        cur: dict[str, int] | None = None
        while i < len(toks):
            kind, val, col = toks[i]
            if expect_gen:
                if kind == "num" and val == "1" and (i + 1 == len(toks) or toks[i + 1][1] == ","):
                    # the unit monomial
                    raw.append({})
                    i += 2
                    if i >= len(toks):
                        break
                    continue
                if kind != "name":
                    raise ParseError(f"expected a variable name, found {val!r}", lineno, col)
                cur = {}
                expect_gen = False
            # factor: name ('^' posint)?
            if kind != "name":
                raise ParseError(f"expected a variable name, found {val!r}", lineno, col)
            if declared is not None and val not in declared:
                raise ParseError(f"unknown variable {val!r}", lineno, col)
            if declared is None and val not in order:
                order.append(val)
            exp = 1
            i += 1
            if i < len(toks) and toks[i][1] == "^":
                if i + 1 >= len(toks) or toks[i + 1][0] != "num":
                    c = toks[i + 1][2] if i + 1 < len(toks) else toks[i][2] + 1
                    raise ParseError("expected a positive exponent after '^'", lineno, c)
                exp = int(toks[i + 1][1])
                if exp == 0:
                    raise ParseError("zero exponent", lineno, toks[i + 1][2])
                i += 2
            cur[val] = cur.get(val, 0) + exp
            if i >= len(toks):
                break
            kind, val, col = toks[i]
            if val == "*":
                i += 1
                if i >= len(toks):
                    raise ParseError("expected a factor after '*'", lineno, col + 1)
                continue
            if val == ",":
                raw.append(cur)
                cur = None
                expect_gen = True
                i += 1
                if i >= len(toks):
                    break  # a trailing comma continues on the next line
                continue
            raise ParseError(f"unexpected {val!r}", lineno, col)
        if cur is not None:
            raw.append(cur)
    ctx_out = ctx if ctx is not None else VarContext(tuple(declared if declared is not None else order))
    gens = tuple(Monomial.from_names(ctx_out, g) for g in raw)
    return IdealDocument(ctx_out, declared is not None, gens)


def parse_ideal(text: str, ctx: VarContext | None = None) -> MonomialIdeal:
    return parse_document(text, ctx).ideal


def format_ideal(I: MonomialIdeal) -> str:
    lines = [f"vars: {', '.join(I.ctx.names)}"] if len(I.ctx) else []
    lines.append(", ".join(str(g) for g in I.gens))
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ commands
class UsageError(Exception):
    pass


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        body = {"schema": SCHEMA, "command": args.command}
        body.update(payload)
        print(json.dumps(body, indent=2))
    else:
        for line in lines:
            print(line)


def _read(args) -> IdealDocument:
    path = args.input
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def _graph(doc: IdealDocument) -> Graph:
    I = doc.ideal
    try:
        return from_edge_ideal(I)
    except ValueError as exc:
        raise UsageError(f"not an edge ideal: {exc}") from None


def cmd_parse(args) -> int:
    doc = _read(args)
    I = doc.ideal
    _emit(args, {"variables": list(I.ctx.names), "generators": [str(g) for g in I.gens]}, [format_ideal(I).rstrip("\n")])
    return 0


def cmd_linres(args) -> int:
    I = _read(args).ideal
    if I.is_quadratic():
        cert = has_linear_resolution_quadratic(I)
        ok = bool(cert)
        detail = cert.to_json()
        route = "cochordal-polarization"
        lines = [f"linear resolution: {'yes' if ok else 'no'}"]
        if ok:
            lines.append("complement of the polarized edge graph is chordal; elimination order: " + " ".join(detail["peo"]))
        else:
            lines.append("chordless cycle in the complement: " + " ".join(detail["chordless_cycle"]))
    else:
        if I.is_zero() or not I.is_equigenerated():
            raise UsageError("linres needs a nonzero equigenerated ideal")
        pol, _ = polarize(I)
        if len(pol.support()) > MAX_ORACLE_SUPPORT:
            raise UsageError("ideal is not quadratic and too large for the homology oracle")
        table = betti_oracle(pol)
        d = next(iter(I.degrees()))
        ok = is_linear_from_betti(table, d)
        route = "homology-oracle"
        detail = table.to_json()
        lines = [f"linear resolution: {'yes' if ok else 'no'} (homology oracle over GF(2))"]
        off = table.off_strand(d)
        for (i, j), b in off.items():
            lines.append(f"  beta_{{{i},{j}}} = {b} off the {d}-linear strand")
    _emit(args, {"linear_resolution": ok, "route": route, "certificate": detail}, lines)
    return 0 if ok else 1


def cmd_linquot(args) -> int:
    doc = _read(args)
    I = doc.ideal
    if args.order == "search":
        if len(I) > args.max_generators:
            raise UsageError(f"{len(I)} generators exceed --max-generators {args.max_generators}")
        found = find_lq_order(I, max_generators=args.max_generators)
        if found is None:
            _emit(args, {"linear_quotients": False, "exhaustive": True, "generators": [str(g) for g in I.gens]},
                  ["no linear quotients order (exhaustive)"])
            return 1
        ordering = found
    elif args.order == "lex":
        ordering = lex_ordering(I)
    else:
        ordering = doc.written_order()
    res = is_lq_order(ordering)
    lines = ["order: " + ", ".join(ordering.to_json())]
    if res:
        lines.append("linear quotients: yes")
    else:
        gens = ordering.gens
        c = colon_gen(gens[res.j], gens[res.i])
        lines.append(f"linear quotients: no; u{res.j + 1} : u{res.i + 1} = {c} has no variable witness")
    _emit(args, {"linear_quotients": bool(res), **res.to_json()}, lines)
    return 0 if res else 1


def cmd_chordal(args, co: bool = False) -> int:
    G = _graph(_read(args))
    cert = is_cochordal(G) if co else is_chordal(G)
    word = "cochordal" if co else "chordal"
    data = cert.to_json()
    lines = [f"{word}: {'yes' if cert else 'no'}"]
    if cert:
        lines.append("perfect elimination order" + (" of the complement" if co else "") + ": " + " ".join(data["peo"]))
    else:
        lines.append("chordless cycle" + (" in the complement" if co else "") + ": " + " ".join(data["chordless_cycle"]))
    _emit(args, {word: bool(cert), "certificate": data}, lines)
    return 0 if cert else 1


def cmd_polarize(args) -> int:
    I = _read(args).ideal
    pol, pmap = polarize(I)
    fan = {I.ctx.names[p]: c for p, c in pmap.fanout}
    _emit(args, {"variables": list(pol.ctx.names), "generators": [str(g) for g in pol.gens], "fanout": fan},
          [format_ideal(pol).rstrip("\n")])
    return 0


def cmd_betti(args) -> int:
    I = _read(args).ideal
    note = []
    if not I.is_squarefree():
        I, _ = polarize(I)
        note = ["(computed for the polarization)"]
    if len(I.support()) > MAX_ORACLE_SUPPORT:
        raise UsageError(f"support exceeds the oracle limit {MAX_ORACLE_SUPPORT}")
    table = betti_oracle(I)
    lines = note + [f"beta_{{{i},{j}}} = {b}" for (i, j), b in table.entries.items()]
    _emit(args, {"polarized": bool(note), "betti": table.to_json()}, lines)
    return 0


def _labeling(I: MonomialIdeal):
    if not I.is_quadratic():
        raise UsageError("this command needs a nonzero quadratic ideal")
    return hhz_relabel(I)


def cmd_hhz_order(args) -> int:
    I = _read(args).ideal
    try:
        L = _labeling(I)
    except NoLinearResolution as exc:
        _emit(args, {"linear_resolution": False, "certificate": exc.certificate.to_json()},
              ["no linear resolution: " + " ".join(exc.certificate.to_json()["chordless_cycle"])])
        return 1
    k = args.power
    if k < 1:
        raise UsageError("--power must be at least 1")
    eng = _engine(L)
    elems = eng.elements(k)
    names = L.ctx.names
    rows = []
    lines = ["variables: " + " > ".join(names)]
    lines += [f"e{i + 1} = {g}" for i, g in enumerate(L.e)]
    for pos, u in enumerate(elems, start=1):
        word = eng.std(u)
        mono = str(Monomial.from_dense(L.ctx, u))
        rows.append({"monomial": mono, "word": [i + 1 for i in word]})
        lines.append(f"{pos}. {mono} = " + "*".join(f"e{i + 1}" for i in word))
    ordering = GeneratorOrdering(MonomialIdeal(L.ctx, tuple(Monomial.from_dense(L.ctx, u) for u in elems)),
                                 tuple(Monomial.from_dense(L.ctx, u) for u in elems))
    ok = bool(is_lq_order(ordering))
    lines.append(f"linear quotients: {'yes' if ok else 'no'}")
    _emit(args, {"labeling": L.to_json(), "k": k, "order": rows, "linear_quotients": ok}, lines)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    I = _read(args).ideal
    if not I.is_quadratic():
        raise UsageError("verify needs a nonzero quadratic ideal")
    if args.kmax < 1:
        raise UsageError("--kmax must be at least 1")
    rep = verify_theorem(I, args.kmax, pairs=args.pairs, detail=args.json)
    lines = []
    if not rep.linear_resolution:
        lines.append("FAIL no linear resolution: chordless cycle " + " ".join(rep.certificate.to_json()["chordless_cycle"]))
    for p in rep.powers:
        status = "PASS" if p.ok else "FAIL"
        lines.append(
            f"{status} k={p.k}: {p.size} generators, linear quotients {'yes' if p.lq_ok else 'no'}, "
            f"{p.pairs_checked - len(p.witness_failures)}/{p.pairs_checked} witnesses"
        )
    _emit(args, rep.to_json(), lines)
    return 0 if rep.ok else 1


def cmd_corollary(args) -> int:
    I = _read(args).ideal
    names = [s.strip() for s in args.prime.split(",") if s.strip()]
    if not names:
        raise UsageError("--prime needs at least one variable")
    for s in names:
        if s not in I.ctx:
            raise UsageError(f"unknown variable {s!r} in --prime")
    P = PrimeSpec.from_names(I.ctx, names)
    if args.k < 1 or args.l < 1:
        raise UsageError("--k and --l must be at least 1")
    try:
        res = check_pk_il(I, P, args.k, args.l, max_generators=args.max_generators)
    except GeneratorLimitExceeded as exc:
        raise UsageError(str(exc)) from None
    lines = [
        f"P = ({', '.join(names)}), generators of P^{args.k} I^{args.l}: {len(res.ideal)}",
        f"hypotheses (quadratic, linear resolution, P contains I): {'yes' if res.hypotheses else 'no'}",
        f"order from: {res.route}",
        f"linear quotients: {'yes' if res else 'no'}",
    ]
    _emit(args, {"prime": names, "k": args.k, "l": args.l, **res.to_json()}, lines)
    return 0 if res else 1


def cmd_search(args) -> int:
    if args.vars < 1 or args.trials < 0 or args.kmax < 1 or args.lmax < 1:
        raise UsageError("--vars, --kmax and --lmax must be positive and --trials nonnegative")
    config = SearchConfig(n=args.vars, trials=args.trials, seed=args.seed, kmax=args.kmax, lmax=args.lmax,
                          containing=args.containing)
    rep = search_question(config, workers=args.workers)
    census = rep.census()
    lines = [f"trials: {args.trials}  lq: {census['lq']}  no-lq: {census['no-lq']}  undecided: {census['undecided']}"]
    for t in rep.counterexamples:
        lines.append(
            f"candidate (needs review): trial {t.trial}, I = ({', '.join(t.ideal)}), P = ({', '.join(t.prime)}), k={t.k}, l={t.l}"
        )
    _emit(args, rep.to_json(trials=args.json), lines)
    return 0


COMMANDS = {
    "parse": cmd_parse,
    "linres": cmd_linres,
    "linquot": cmd_linquot,
    "chordal": cmd_chordal,
    "cochordal": lambda a: cmd_chordal(a, co=True),
    "polarize": cmd_polarize,
    "betti": cmd_betti,
    "hhz-order": cmd_hhz_order,
    "verify": cmd_verify,
    "corollary": cmd_corollary,
    "search": cmd_search,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linpowers", description="Quadratic monomial ideals and their powers.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def with_input(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="ideal file, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    with_input("parse", "print the canonical form of an ideal")
    with_input("linres", "decide linear resolution")
    p = with_input("linquot", "check linear quotients")
    p.add_argument("--order", choices=["given", "lex", "search"], default="given")
    p.add_argument("--max-generators", type=int, default=DEFAULT_MAX_GENERATORS)
    with_input("chordal", "chordality of the graph of an edge ideal")
    with_input("cochordal", "chordality of the complement graph")
    with_input("polarize", "polarize an ideal")
    with_input("betti", "graded Betti numbers over GF(2)")
    p = with_input("hhz-order", "power order with standard presentations")
    p.add_argument("--power", type=int, default=1)
    p = with_input("verify", "check linear quotients of powers with witnesses")
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--pairs", choices=["all", "adjacent"], default="all")
    p = with_input("corollary", "linear quotients of P^k I^l")
    p.add_argument("--prime", required=True, help='comma-separated variables, e.g. "b,c"')
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--max-generators", type=int, default=2000)
    p = sub.add_parser("search", help="seeded search over P^k I^l")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vars", type=int, default=4)
    p.add_argument("--kmax", type=int, default=1)
    p.add_argument("--lmax", type=int, default=1)
    p.add_argument("--containing", action="store_true", help="only primes containing I")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
