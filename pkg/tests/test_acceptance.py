"""Acceptance criteria, each at its stated tolerance (all exact).

Every test appends one ``PASS``/``FAIL`` line, shown in the terminal summary.
The whole suite is computed once per session; criterion 8 repeats it with a
different worker count and compares the JSON byte for byte.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from linpowers.acceptance import criterion_8, dumps, run_all


@pytest.fixture(scope="session")
def reports():
    return run_all(workers=1)


def record(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_dirac_equivalence(reports):
    r = reports["1"]
    record(1, r["pass"], f"{r['mode']} over {r['graphs']} graphs on {r['vertices']} vertices, "
           f"{r['chordal']} chordal, {r['disagreements']} disagreements, {r['certificate_failures']} bad certificates")


def test_criterion_2_froberg(reports):
    r = reports["2"]
    record(2, r["pass"], f"{r['graphs']} graphs on {r['vertices']} vertices, {r['linear']} with linear resolution, "
           f"{r['disagreements']} disagreements, {r['certificate_failures']} bad certificates")


def test_criterion_3_theorem(reports):
    r = reports["3"]
    record(3, r["pass"], f"{r['squarefree']} squarefree + {r['non_squarefree']} non-squarefree ideals, "
           f"k <= {r['kmax']}, {r['pairs_checked']} witness pairs, {len(r['failing'])} failing")


def test_criterion_4_case_coverage(reports):
    r = reports["4"]
    census = ", ".join(f"{t}={n}" for t, n in r["census"].items())
    record(4, r["pass"], f"missing {r['missing']}; {census}")


def test_criterion_5_product_counterexample(reports):
    r = reports["5"]
    record(5, r["pass"], f"{r['orderings_tried']} orderings, none LQ; off-strand Betti entries {r['off_strand']}")


def test_criterion_6_corollary(reports):
    r = reports["6"]
    record(6, r["pass"], f"{r['pairs']} pairs, k, l in {{1, 2}}, {r['certificates']} certificates, "
           f"{r['stratification_checks']} stratification checks, {len(r['failing'])} failing")


def test_criterion_7_minimality(reports):
    r = reports["7"]
    record(7, r["pass"], f"{r['ideals']} ideals, {r['elements_checked']} elements of I^2 and I^3 checked, {len(r['failing'])} failing")


def test_criterion_8_determinism(reports):
    again = run_all(workers=2)
    r = criterion_8(reports, again)
    assert dumps(reports["search"]) == dumps(again["search"])
    record(8, r["pass"], f"compared {r['compared']} across worker counts 1 and 2, differing {r['differing']}")
