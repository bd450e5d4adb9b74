from collections import Counter
from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ctx_of, ideal, linres_ideals
from linpowers import (
    GeneratorOrdering,
    Monomial,
    MonomialIdeal,
    NoLinearResolution,
    NotQuadraticError,
    check_star,
    check_star_star,
    decompose,
    find_lq_order,
    has_linear_resolution_quadratic,
    hhz_relabel,
    hhz_walk,
    ideal_power,
    is_lq_order,
    lex_ordering,
    power_order,
    standard_presentation,
    verify_theorem,
    verify_witness,
    witness,
)
from linpowers.hhz import CORE_TAGS, TAGS, YWord, power_elements, star_star_violation, star_violation, word_key

C4 = "x1*x2, x2*x3, x3*x4, x1*x4"
C5 = "x1*x2, x2*x3, x3*x4, x4*x5, x1*x5"
TRIANGLE = "x1*x2, x1*x3, x2*x3"


def words_by_element(L, k):
    """All length-k words grouped by product, by brute force."""
    out = {}
    for word in combinations_with_replacement(range(len(L.e)), k):
        u = Monomial.one(L.ctx)
        for i in word:
            u = u * L.e[i]
        out.setdefault(u, []).append(word)
    return out


# decompose -------------------------------------------------------------
def test_decompose_examples():
    P, J = decompose(ideal(TRIANGLE), 0)
    assert [str(g) for g in P.gens] == ["x2", "x3"] and [str(g) for g in J.gens] == ["x2*x3"]
    P, J = decompose(ideal("x1^2"), 0)
    assert [str(g) for g in P.gens] == ["x1"] and J.is_zero()
    P, J = decompose(ideal(C4), 0)
    assert [str(g) for g in P.gens] == ["x2", "x4"]
    assert [str(g) for g in J.gens] == ["x2*x3", "x3*x4"]
    assert J.is_subset_of(P)
    with pytest.raises(NotQuadraticError):
        decompose(ideal("x1*x2*x3"), 0)


@given(linres_ideals())
def test_pivot_split_keeps_linear_resolution(I):
    L = hhz_relabel(I)
    P, J = decompose(L.ideal, 0)
    assert J.is_subset_of(P)
    assert J.is_zero() or has_linear_resolution_quadratic(J)


# relabeling and the exchange properties ------------------------------
def test_relabel_examples():
    I = ideal("x2*x3", 3)
    assert star_violation(I) == (0, 1, 2) and not check_star(I)
    L = hhz_relabel(I)
    assert set(L.ctx.names[:2]) == {"x2", "x3"} and L.ctx.names[2] == "x1"
    assert check_star(L.ideal)
    tri = ideal(TRIANGLE)
    assert check_star(tri) and check_star_star(tri)
    assert check_star(hhz_relabel(tri).ideal)
    with pytest.raises(NoLinearResolution) as info:
        hhz_relabel(ideal(C5))
    assert not info.value.certificate and info.value.certificate.verify()


def test_star_examples():
    assert check_star(hhz_relabel(ideal(C4)).ideal)
    assert check_star_star(ideal(C4))
    I = ideal("x1*x2, x3^2", 3)
    assert star_star_violation(I) == (2, 0, 1)
    with pytest.raises(NotQuadraticError):
        check_star(ideal("x1*x2*x3"))


def test_relabel_keeps_names_and_generators():
    I = ideal("x2*x3", 3)
    L = hhz_relabel(I)
    assert [sorted(L.ctx.names[p] for p in g.support()) for g in L.ideal.gens] == [["x2", "x3"]]
    assert sorted(L.permutation) == [0, 1, 2]
    keys = [g.lex_key() for g in L.e]
    assert keys == sorted(keys, reverse=True) and len(set(keys)) == len(keys)


@given(linres_ideals(max_n=6))
def test_exchange_properties_after_relabel(I):
    L = hhz_relabel(I)
    assert check_star(L.ideal) and check_star_star(L.ideal)
    assert is_lq_order(lex_ordering(L.ideal))


# standard presentations -----------------------------------------------
def test_standard_presentation_examples():
    L = hhz_relabel(ideal(C4))
    for i, e in enumerate(L.e):
        assert standard_presentation(L, e, 1).word.indices == (i,)
    u = Monomial.from_names(L.ctx, {"x1": 1, "x2": 1, "x3": 1, "x4": 1})
    options = words_by_element(L, 2)[u]
    assert len(options) == 2
    assert standard_presentation(L, u, 2).word.indices == min(options, key=word_key)
    assert standard_presentation(L, L.e[0] * L.e[0], 2).word.indices == (0, 0)
    with pytest.raises(ValueError):
        standard_presentation(L, L.e[0], 2)
    with pytest.raises(ValueError):
        standard_presentation(L, Monomial.from_names(L.ctx, {"x1": 2, "x3": 2}), 2)


def test_yword_comparison_weights_later_generators():
    # y_m > ... > y_1: any use of a later generator outweighs earlier ones
    assert YWord((0, 0, 0)) < YWord((0, 0, 1)) < YWord((0, 1, 1)) < YWord((0, 0, 2))
    assert str(YWord((2, 0))) == "y1*y3"


@given(linres_ideals(max_n=4), st.integers(1, 3))
def test_standard_presentation_is_minimal(I, k):
    L = hhz_relabel(I)
    for u, words in words_by_element(L, k).items():
        assert standard_presentation(L, u, k).word.indices == min(words, key=word_key)


# the power order -------------------------------------------------------
def test_power_order_examples():
    L = hhz_relabel(ideal(C4))
    assert power_order(L, 1).gens == L.e
    assert power_order(L, 1).gens == lex_ordering(L.ideal).gens
    one = hhz_relabel(ideal("x1*x2"))
    for k in (1, 2, 3):
        assert len(power_order(one, k)) == 1
    order2 = power_order(L, 2)
    # ten words, but x1x2 * x3x4 = x2x3 * x1x4
    assert len(order2) == 9 == len(ideal_power(ideal(C4), 2))
    assert is_lq_order(order2).verify()


@given(linres_ideals(max_n=4), st.integers(1, 3))
def test_power_order_is_strict_and_complete(I, k):
    L = hhz_relabel(I)
    elems = power_elements(L, k)
    assert set(elems) == set(ideal_power(L.ideal, k).gens)
    keys = [standard_presentation(L, u, k).word.key() for u in elems]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


@given(linres_ideals(max_n=5), st.integers(1, 3))
def test_powers_have_linear_quotients(I, k):
    L = hhz_relabel(I)
    order = power_order(L, k)
    cert = is_lq_order(order)
    assert cert and cert.verify()
    if len(order) <= 9:
        assert find_lq_order(order.ideal) is not None


def literal_order(L, k):
    """Smallest exponent vector under y_1 > ... > y_m, listed lex-greatest first."""
    best = {}
    for word in combinations_with_replacement(range(len(L.e)), k):
        u = Monomial.one(L.ctx)
        for i in word:
            u = u * L.e[i]
        ev = tuple(word.count(i) for i in range(len(L.e)))
        if u not in best or ev < best[u]:
            best[u] = ev
    gens = tuple(sorted(best, key=best.get, reverse=True))
    return GeneratorOrdering(MonomialIdeal(L.ctx, gens), gens)


def test_other_word_order_fails_where_ours_holds():
    L = hhz_relabel(ideal("x1*x2, x1*x3, x1*x4, x1*x5, x2*x3, x2*x4"))
    assert not is_lq_order(literal_order(L, 2))
    assert is_lq_order(power_order(L, 2)).verify()
    # both readings agree on the first power
    assert literal_order(L, 1).gens == power_order(L, 1).gens


# witnesses -------------------------------------------------------------
def all_pairs(L, k):
    elems = power_elements(L, k)
    for i in range(1, len(elems)):
        for j in range(i):
            yield elems[i], elems[j]


def test_witness_degree_one():
    L = hhz_relabel(ideal(C4))
    for u, v in all_pairs(L, 2):
        if (v.lcm(u) / u).degree == 1:
            w = witness(L, 2, u, v)
            assert w.w == v and w.tag == "degree-one"
            return
    pytest.fail("no degree-one pair found")


def test_witness_common_factor():
    L = hhz_relabel(ideal(C4))
    found = False
    for u, v in all_pairs(L, 2):
        su = set(standard_presentation(L, u, 2).word.indices)
        sv = set(standard_presentation(L, v, 2).word.indices)
        if su & sv and (v.lcm(u) / u).degree > 1:
            w = witness(L, 2, u, v)
            assert w.tag == "common-factor-reduction"
            assert verify_witness(L, 2, u, v, w)
            found = True
    assert found


def test_witness_exhaustive_on_c4_square():
    L = hhz_relabel(ideal(C4))
    count = 0
    for u, v in all_pairs(L, 2):
        w = witness(L, 2, u, v)
        assert verify_witness(L, 2, u, v, w)
        assert w.tag in TAGS and set(w.trail) <= set(TAGS)
        count += 1
    assert count == 36


def test_witness_preconditions():
    L = hhz_relabel(ideal(C4))
    a, b = power_elements(L, 2)[:2]
    with pytest.raises(ValueError):
        witness(L, 2, a, b)
    with pytest.raises(ValueError):
        witness(L, 2, a, a)
    with pytest.raises(ValueError):
        witness(L, 2, L.e[0], b)


@given(linres_ideals(max_n=5), st.integers(1, 3), st.data())
def test_witness_validity(I, k, data):
    L = hhz_relabel(I)
    elems = power_elements(L, k)
    if len(elems) < 2:
        return
    i = data.draw(st.integers(1, len(elems) - 1))
    j = data.draw(st.integers(0, i - 1))
    u, v = elems[i], elems[j]
    w = witness(L, k, u, v)
    assert verify_witness(L, k, u, v, w)
    assert power_elements(L, k).index(w.w) < i
    q = Monomial.var(L.ctx, w.q)
    assert w.w.lcm(u) / u == q and q.divides(v.lcm(u) / u)


@given(linres_ideals(max_n=5), st.integers(1, 3), st.data())
def test_walk_claims(I, k, data):
    L = hhz_relabel(I)
    elems = power_elements(L, k)
    pairs = []
    for i in range(1, len(elems)):
        for j in range(i):
            u, v = elems[i], elems[j]
            su = standard_presentation(L, u, k).word.indices
            sv = standard_presentation(L, v, k).word.indices
            if not set(su) & set(sv) and (v.lcm(u) / u).degree >= 2:
                pairs.append((u, v, su, sv))
    if not pairs:
        return
    u, v, su, sv = data.draw(st.sampled_from(pairs))
    walk = hhz_walk(L, k, u, v)
    assert walk.check(L, su, sv)
    assert len(walk.vertices) == 2 * (k + walk.d)
    assert walk.dummy == len(L.ctx)
    assert walk.vertices.count(walk.dummy) == walk.d


def test_walk_check_rejects_tampering():
    L = hhz_relabel(ideal(C4))
    for u, v in all_pairs(L, 2):
        su = standard_presentation(L, u, 2).word.indices
        sv = standard_presentation(L, v, 2).word.indices
        if not set(su) & set(sv) and (v.lcm(u) / u).degree >= 2:
            walk = hhz_walk(L, 2, u, v)
            assert walk.check(L, su, sv)
            broken = type(walk)(walk.vertices[1:] + walk.vertices[:1], walk.sources, walk.dummy, walk.d)
            assert not broken.check(L, su, sv)
            return
    pytest.fail("no pair without common factors")


# the full check ---------------------------------------------------------
def test_verify_theorem_examples():
    rep = verify_theorem(ideal(C4), 3)
    assert rep.ok and [p.k for p in rep.powers] == [1, 2, 3]
    rep = verify_theorem(ideal(C5), 2)
    assert not rep.ok and not rep.linear_resolution and rep.powers == []
    assert rep.certificate.verify()
    rep = verify_theorem(ideal("x1^2"), 3)
    assert rep.ok and all(p.size == 1 for p in rep.powers)


def test_verify_theorem_adjacent_pairs_only():
    rep = verify_theorem(ideal(C4), 2, pairs="adjacent")
    assert rep.ok and rep.powers[1].pairs_checked == 8


def test_tag_census_needs_squares():
    # squarefree inputs never start a walk at a square, so the v1 = v2 branches stay silent
    census = Counter()
    for text in (C4, TRIANGLE, "x1*x2, x1*x3, x1*x4, x2*x3"):
        for p in verify_theorem(ideal(text), 3).powers:
            census.update(p.trail_tags)
    assert census["case-3.1.2"] == census["case-3.2"] == 0
    sq = Counter()
    for text in ("x1^2, x1*x2, x2^2, x2*x3", "x1^2, x1*x2, x1*x3, x2^2, x2*x3, x3^2"):
        for p in verify_theorem(ideal(text), 3).powers:
            assert p.ok
            sq.update(p.trail_tags)
    assert sq["case-3.1.2"] + sq["case-3.2"] > 0


def test_report_json_is_reverifiable():
    rep = verify_theorem(ideal(C4), 2, detail=True).to_json()
    ctx = VarNames(rep["labeling"]["variable_order"])
    for power in rep["powers"]:
        gens = [ctx.mono(s) for s in power["order"]]
        assert is_lq_order(GeneratorOrdering(MonomialIdeal(gens[0].ctx, tuple(gens)), tuple(gens)))
        for j, i, w, var, tag in power["witnesses"]:
            wm = ctx.mono(w)
            assert gens.index(wm) < i
            q = ctx.mono(var)
            assert wm.lcm(gens[i]) / gens[i] == q
            assert q.divides(gens[j].lcm(gens[i]) / gens[i])


class VarNames:
    def __init__(self, names):
        from linpowers import VarContext

        self.ctx = VarContext(tuple(names))

    def mono(self, text):
        from linpowers.cli import parse_ideal

        return parse_ideal(text, ctx=self.ctx).gens[0]
