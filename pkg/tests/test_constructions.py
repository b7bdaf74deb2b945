import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from covergraph.constructions import (
    Embedding,
    check_embedding,
    compose_embeddings,
    cycle_embedding,
    diagonal_embedding,
    direct_product,
    identity_embedding,
    level_vertices_independent,
    make_embedding,
    mycielskian,
    mycielskian_monotone_embedding,
    product_embedding,
    swap_pairs,
)
from covergraph.errors import InvalidParameterError, ValidationError
from covergraph.graph import ROOT, Myc, Pair, Plain, build_cycle, complete, edgeless, from_edge_list, girth, path, petersen
from oracles import to_nx
from test_graph import small_graphs


def expand_mycielskian(G, m):
    """Edge set straight from the level-by-level definition, over position pairs."""
    n = G.order
    E0 = {(j, k) for j, k in G.index_edges} | {(k, j) for j, k in G.index_edges}
    edges = {frozenset({Myc(0, j), Myc(0, k)}) for j, k in E0}
    for i in range(1, m + 1):
        edges |= {frozenset({Myc(i - 1, j), Myc(i, k)}) for j, k in E0}
    edges |= {frozenset({Myc(m, j), ROOT}) for j in range(n)}
    return edges


@pytest.mark.parametrize("base,m", [(complete(2), 1), (build_cycle(5), 1), (build_cycle(5), 2), (complete(4), 3), (path(4), 2), (petersen(), 1)])
def test_mycielskian_matches_definition(base, m):
    M = mycielskian(base, m)
    assert M.order == (m + 1) * base.order + 1
    assert {frozenset(e) for e in M.edges} == expand_mycielskian(base, m)
    assert M.size == (2 * m + 1) * base.size + base.order


def test_mycielskian_examples():
    M = mycielskian(complete(2), 1)
    assert nx.is_isomorphic(to_nx(M), nx.cycle_graph(5))
    G = mycielskian(build_cycle(5), 1)
    assert (G.order, G.size) == (11, 20)
    E = mycielskian(edgeless(3), 1)
    assert E.order == 7 and {frozenset(e) for e in E.edges} == {frozenset({Myc(1, j), ROOT}) for j in range(3)}
    assert level_vertices_independent(mycielskian(build_cycle(4), 2))


def test_mycielskian_errors():
    with pytest.raises(InvalidParameterError):
        mycielskian(build_cycle(5), 0)
    with pytest.raises(InvalidParameterError):
        mycielskian(mycielskian(build_cycle(5), 1), 1)


def test_mycielskian_keeps_triangle_freeness():
    for m in (1, 2, 3):
        assert girth(mycielskian(build_cycle(5), m)) == 4


def test_direct_product_examples():
    K2 = complete(2)
    P = direct_product(K2, K2)
    assert P.order == 4 and P.size == 2 and nx.number_connected_components(to_nx(P)) == 2
    Q = direct_product(build_cycle(3), K2)
    assert nx.is_isomorphic(to_nx(Q), nx.cycle_graph(6))


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=5), small_graphs(max_n=5))
def test_direct_product_edge_predicate(G, H):
    P = direct_product(G, H)
    assert P.size == 2 * G.size * H.size
    for (a, b), (c, d) in itertools.combinations(itertools.product(G.vertices, H.vertices), 2):
        expect = G.has_edge(a, c) and H.has_edge(b, d)
        assert P.has_edge(Pair(a, b), Pair(c, d)) == expect
    assert {frozenset(e) for e in swap_pairs(P).edges} == {frozenset(e) for e in direct_product(H, G).edges}


@pytest.mark.parametrize("G", [complete(2), complete(3), build_cycle(5)])
def test_diagonal_is_induced(G):
    e = diagonal_embedding(G)
    assert e.induced and e.check() is None
    P = e.target
    for u, v in itertools.combinations(G.vertices, 2):
        assert P.has_edge(Pair(u, u), Pair(v, v)) == G.has_edge(u, v)


def test_monotone_embedding_examples():
    K4 = complete(4)
    C = cycle_embedding(K4, (Plain(0), Plain(1), Plain(2)))
    lifted = mycielskian_monotone_embedding(C, 1)
    assert lifted.source.order == 7 and lifted.target.order == 9 and lifted.source.size == 12
    assert lifted.check() is None
    C5 = build_cycle(5)
    ident = mycielskian_monotone_embedding(identity_embedding(C5), 2)
    assert all(k == v for k, v in ident.mapping.items())
    P = petersen()
    outer = cycle_embedding(P, tuple(Plain(i) for i in range(5)))
    g = mycielskian_monotone_embedding(outer, 1)
    assert g.check() is None and g.source.order == 11


def test_product_embedding():
    C4 = build_cycle(4)
    ident = identity_embedding(C4)
    pe = product_embedding(ident, ident)
    assert all(k == v for k, v in pe.mapping.items()) and pe.induced
    K2 = complete(2)
    edge = make_embedding(K2, C4, {Plain(0): Myc(0, 0), Plain(1): Myc(0, 1)})
    pe = product_embedding(edge, edge)
    assert pe.source.size == 2 and pe.check() is None
    d = diagonal_embedding(C4)
    big = compose_embeddings(d, product_embedding(identity_embedding(C4), identity_embedding(C4), target=d.target))
    assert big.check() is None


def test_embedding_validation():
    K3, C5 = complete(3), build_cycle(5)
    with pytest.raises(ValidationError):
        make_embedding(K3, C5, {Plain(i): Myc(0, i) for i in range(3)})
    bad = {Myc(0, j): Myc(0, 0) for j in range(5)}
    assert "injective" in check_embedding(C5, C5, bad, None)
    e = Embedding(C5, C5, {v: v for v in C5.vertices}, induced=False)
    assert "induced" in e.check()
    with pytest.raises(ValidationError):
        mycielskian_monotone_embedding(Embedding(K3, C5, {Plain(i): Myc(0, i) for i in range(3)}), 1)
