import json

import pytest
from hypothesis import given

from conftest import ideals
from linpowers import Monomial, MonomialIdeal, VarContext, colon_gen, is_lq_order, GeneratorOrdering
from linpowers.cli import ParseError, format_ideal, parse_document, parse_ideal, run

CH = "a^2*b, a*b*c, b*c*d, c*d^2"
C4 = "x1*x2, x2*x3, x3*x4, x1*x4"
CORPUS = [
    CH,
    C4,
    "x1*x2, x1*x2*x3",
    "# a comment\nvars: z, y, x\nx*y\ny*z  # trailing\n",
    "vars: p, q\n",
    "x1^2\n\n x1*x2 ,\n x2^3",
    "u_1*v2^10, v2*u_1",
]


@pytest.fixture
def write(tmp_path):
    def _write(text, name="in.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# grammar ------------------------------------------------------------------
def test_parse_examples():
    I = parse_ideal(CH)
    assert I.ctx.names == ("a", "b", "c", "d")
    assert [str(g) for g in I.gens] == ["a^2*b", "a*b*c", "b*c*d", "c*d^2"]
    assert [str(g) for g in parse_ideal("x1*x2, x1*x2*x3").gens] == ["x1*x2"]
    with pytest.raises(ParseError) as info:
        parse_ideal("x1^0*x2")
    assert "zero exponent" in str(info.value) and (info.value.line, info.value.column) == (1, 4)


def test_vars_line_fixes_order():
    doc = parse_document("vars: c, b, a\na*b, b*c")
    assert doc.ctx.names == ("c", "b", "a") and doc.declared
    assert [str(g) for g in doc.ideal.gens] == ["c*b", "b*a"]
    with pytest.raises(ParseError) as info:
        parse_ideal("vars: a, b\n\na*d")
    assert (info.value.line, info.value.column) == (3, 3)


def test_first_appearance_order_and_repeated_factors():
    doc = parse_document("y*x, x*z\nz^2*z")
    assert doc.ctx.names == ("y", "x", "z")
    assert str(doc.generators[2]) == "z^3"
    assert [str(g) for g in doc.written_order().gens] == ["y*x", "x*z", "z^3"]


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("a*", 1, 3),
        ("a^", 1, 3),
        ("a^b", 1, 3),
        ("a,,b", 1, 3),
        ("a\n*b", 2, 1),
        ("a b", 1, 3),
        ("a*b\nc$", 2, 2),
        ("a\nvars: a", 2, 1),
        ("vars: a, 1b", 1, 10),
        ("vars: a, a", 1, 10),
        ("2*a", 1, 1),
    ],
)
def test_syntax_errors_report_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_document(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize("text", CORPUS)
def test_roundtrip_corpus(text):
    I = parse_ideal(text)
    again = parse_ideal(format_ideal(I))
    assert again == I and again.ctx == I.ctx
    assert format_ideal(again) == format_ideal(I)


@given(ideals(n=4, max_exp=3))
def test_roundtrip_random(I):
    again = parse_ideal(format_ideal(I))
    assert again.ctx == I.ctx and again == I


# commands --------------------------------------------------------------
def test_verify_c4(capsys, write):
    code, out, _ = cli(capsys, "verify", "--kmax", "2", write(C4))
    assert code == 0
    assert out.splitlines()[0].startswith("PASS k=1") and out.splitlines()[1].startswith("PASS k=2")


def test_verify_json_is_reverifiable(capsys, write):
    code, out, _ = cli(capsys, "verify", "--kmax", "2", "--json", write(C4))
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and rep["pass"]
    ctx = VarContext(tuple(rep["labeling"]["variable_order"]))

    def mono(s):
        return parse_ideal(s, ctx=ctx).gens[0]

    for power in rep["powers"]:
        gens = tuple(mono(s) for s in power["order"])
        assert is_lq_order(GeneratorOrdering(MonomialIdeal(ctx, gens), gens))
        assert len(power["witnesses"]) == power["pairs_checked"]
        for j, i, w, var, _tag in power["witnesses"]:
            c = colon_gen(mono(w), gens[i])
            assert gens.index(mono(w)) < i and c == mono(var) and c.divides(colon_gen(gens[j], gens[i]))


def test_verify_without_linear_resolution(capsys, write):
    code, out, _ = cli(capsys, "verify", write("x1*x2, x2*x3, x3*x4, x4*x5, x1*x5"))
    assert code == 1 and out.startswith("FAIL")


def test_linquot_search_on_product(capsys, write):
    path = write("a^2*b^2, a^2*b*c, a*b^2*c, a*b*c^2, b^2*c*d, b*c^2*d, b*c*d^2, c^2*d^2")
    code, out, _ = cli(capsys, "linquot", "--order", "search", path)
    assert code == 1 and "no linear quotients order (exhaustive)" in out
    code, out, _ = cli(capsys, "linquot", "--order", "lex", "--json", path)
    rep = json.loads(out)
    assert code == 1 and rep["linear_quotients"] is False and "violation" in rep


def test_linquot_given_order(capsys, write):
    assert cli(capsys, "linquot", write(CH))[0] == 0
    code, out, _ = cli(capsys, "linquot", write("x3*x4, x1*x2"))
    assert code == 1 and "u1 : u2 = x3*x4" in out


def test_parse_errors_exit_2(capsys, write):
    code, _, err = cli(capsys, "parse", write("x1*x2,\nx3^0"))
    assert code == 2 and "line 2, column 4" in err
    code, _, err = cli(capsys, "parse", "/nonexistent/file")
    assert code == 2


def test_usage_errors_exit_2(capsys, write):
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        run(["verify", "--bogus", write(C4)])
    assert info.value.code == 2
    assert cli(capsys, "verify", write(CH))[0] == 2
    assert cli(capsys, "chordal", write(CH))[0] == 2
    assert cli(capsys, "corollary", "--prime", "q", write(CH))[0] == 2


def test_parse_and_polarize_output(capsys, write):
    code, out, _ = cli(capsys, "parse", write(CH))
    assert code == 0 and parse_ideal(out) == parse_ideal(CH)
    code, out, _ = cli(capsys, "polarize", "--json", write("x1^2, x1*x2"))
    rep = json.loads(out)
    assert rep["generators"] == ["x1_1*x1_2", "x1_1*x2_1"] and rep["fanout"] == {"x1": 2, "x2": 1}


def test_linres_and_graph_commands(capsys, write):
    assert cli(capsys, "linres", write(C4))[0] == 0
    code, out, _ = cli(capsys, "linres", "--json", write("x1*x2, x2*x3, x3*x4, x4*x5, x1*x5"))
    assert code == 1 and len(json.loads(out)["certificate"]["chordless_cycle"]) == 5
    assert cli(capsys, "linres", write(CH))[0] == 0
    assert cli(capsys, "chordal", write(C4))[0] == 1
    assert cli(capsys, "cochordal", write(C4))[0] == 0
    code, out, _ = cli(capsys, "betti", "--json", write(C4))
    assert code == 0 and json.loads(out)["betti"]["entries"] == [[0, 2, 4], [1, 3, 4], [2, 4, 1]]


def test_hhz_order_command(capsys, write):
    code, out, _ = cli(capsys, "hhz-order", "--power", "2", "--json", write(C4))
    rep = json.loads(out)
    assert code == 0 and len(rep["order"]) == 9 and rep["linear_quotients"]
    code, _, _ = cli(capsys, "hhz-order", write("x1*x2, x2*x3, x3*x4, x4*x5, x1*x5"))
    assert code == 1


def test_corollary_command(capsys, write):
    code, out, _ = cli(capsys, "corollary", "--prime", "b,c", write(CH))
    assert code == 1 and "linear quotients: no" in out
    code, out, _ = cli(capsys, "corollary", "--prime", "x1,x3", "--k", "2", "--l", "2", "--json", write(C4))
    rep = json.loads(out)
    assert code == 0 and rep["route"] == "augmented-power-order" and rep["linear_quotients"]


def test_search_command(capsys):
    code, out, _ = cli(capsys, "search", "--trials", "15", "--seed", "4", "--vars", "4", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and len(rep["records"]) == 15
    code2, out2, _ = cli(capsys, "search", "--trials", "15", "--seed", "4", "--vars", "4", "--json")
    assert out2 == out
    assert cli(capsys, "search", "--vars", "0")[0] == 2


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(C4))
    assert cli(capsys, "cochordal", "-")[0] == 0


def test_unit_monomial():
    I = parse_ideal("x1*x2, 1")
    assert len(I.gens) == 1 and I.gens[0].degree == 0
    assert parse_ideal(format_ideal(I)) == I
