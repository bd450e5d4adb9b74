from itertools import combinations, permutations

import pytest
from hypothesis import given

from conftest import ctx_of, graphs, ideal
from linpowers import (
    EliminationOrder,
    Graph,
    complement,
    from_edge_ideal,
    is_chordal,
    is_chordless_cycle,
    is_cochordal,
    is_peo,
    mcs_order,
    to_edge_ideal,
)


def g(n, edges):
    return Graph.from_edges(ctx_of(n), [(a - 1, b - 1) for a, b in edges])


def cycle(n):
    return g(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete(n):
    return g(n, list(combinations(range(1, n + 1), 2)))


def brute_chordal(G):
    """No vertex subset of size >= 4 induces a cycle."""
    for size in range(4, G.n + 1):
        for S in combinations(range(G.n), size):
            mask = sum(1 << v for v in S)
            degs = [bin(G.adj[v] & mask).count("1") for v in S]
            if any(d != 2 for d in degs):
                continue
            # 2-regular: it is a single cycle iff connected
            seen, stack = {S[0]}, [S[0]]
            while stack:
                x = stack.pop()
                for y in S:
                    if G.has_edge(x, y) and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) == size:
                return False
    return True


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(ctx_of(2), (0b01, 0))
    with pytest.raises(ValueError):
        Graph(ctx_of(2), (0b10, 0))
    with pytest.raises(ValueError):
        Graph.from_edges(ctx_of(2), [(0, 0)])


def test_edge_ideal_bridge():
    I = ideal("x1*x2, x2*x3")
    G = from_edge_ideal(I)
    assert G.edges() == [(0, 1), (1, 2)]
    assert to_edge_ideal(G) == I
    with pytest.raises(ValueError):
        from_edge_ideal(ideal("x1^2"))
    with pytest.raises(ValueError):
        from_edge_ideal(ideal("x1*x2*x3"))


@given(graphs())
def test_edge_ideal_roundtrip(G):
    assert from_edge_ideal(to_edge_ideal(G)) == G


def test_complement_examples():
    assert complement(cycle(4)).edges() == [(0, 2), (1, 3)]
    assert complement(complete(5)).num_edges() == 0
    c5 = complement(cycle(5))
    assert all(len(c5.neighbors(v)) == 2 for v in range(5))
    assert is_chordless_cycle(c5, is_chordal(c5).cycle) and len(is_chordal(c5).cycle) == 5


@given(graphs())
def test_complement_involution(G):
    assert complement(complement(G)) == G


def test_mcs_examples():
    path = g(3, [(1, 2), (2, 3)])
    assert is_peo(path, mcs_order(path))
    assert mcs_order(g(1, [])).order == (0,)
    assert not is_peo(cycle(4), mcs_order(cycle(4)))


def test_is_peo_examples():
    path = g(3, [(1, 2), (2, 3)])
    assert is_peo(path, EliminationOrder((0, 1, 2)))
    assert not is_peo(path, EliminationOrder((1, 0, 2)))
    c4 = cycle(4)
    assert not any(is_peo(c4, EliminationOrder(p)) for p in permutations(range(4)))
    empty = g(4, [])
    assert all(is_peo(empty, EliminationOrder(p)) for p in permutations(range(4)))
    with pytest.raises(ValueError):
        is_peo(path, EliminationOrder((0, 0, 1)))


def test_is_chordal_examples():
    assert is_chordal(complete(4)).chordal
    c = is_chordal(cycle(4))
    assert not c and sorted(c.cycle) == [0, 1, 2, 3] and c.verify()
    c = is_chordal(cycle(5))
    assert not c and len(c.cycle) == 5 and c.verify()


def test_is_cochordal_examples():
    assert is_cochordal(cycle(4))
    assert not is_cochordal(cycle(5))
    assert is_cochordal(complete(6))


@given(graphs(max_n=7))
def test_dirac_agreement(G):
    cert = is_chordal(G)
    assert cert.verify()
    assert bool(cert) == brute_chordal(G)
    if not cert:
        assert len(cert.cycle) >= 4


def test_labeled_chordal_counts():
    # labeled chordal graphs on n vertices: 1, 2, 8, 61, 822
    for n, expected in zip(range(1, 6), (1, 2, 8, 61, 822)):
        count = 0
        for m in range(1 << (n * (n - 1) // 2)):
            G = Graph.from_mask(n, m)
            cert = is_chordal(G)
            assert cert.verify()
            assert bool(cert) == brute_chordal(G)
            count += bool(cert)
        assert count == expected


@given(graphs(min_n=2, max_n=7))
def test_peo_tail_is_peo_of_induced_subgraph(G):
    cert = is_chordal(G)
    if not cert:
        return
    first, *rest = cert.peo.order
    H = G.induced(rest)
    assert is_peo(H, EliminationOrder(tuple(range(len(rest)))))
    assert is_peo(G.remove_vertex(first), cert.peo)


def test_chordless_cycle_checker():
    c5 = cycle(5)
    assert is_chordless_cycle(c5, (0, 1, 2, 3, 4))
    assert not is_chordless_cycle(c5, (0, 1, 2))
    assert not is_chordless_cycle(complete(4), (0, 1, 2, 3))
    assert not is_chordless_cycle(c5, None)


def test_certificate_json_names():
    cert = is_chordal(cycle(4))
    assert cert.to_json() == {"chordal": False, "chordless_cycle": [f"x{v + 1}" for v in cert.cycle]}
