import pytest

from covergraph.constructions import diagonal_embedding, direct_product, mycielskian
from covergraph.errors import CapacityError, InvalidParameterError, MalformedInputError, ValidationError
from covergraph.graph import ROOT, Myc, Pair, Plain, build_cycle, complete, from_edge_list
from covergraph.hom import (
    Homomorphism,
    compose_hom,
    find_hom,
    identity_hom,
    lemma11_hom,
    make_hom,
    odd_cycle_mycielskian,
    product_hom,
    projection,
    sigma_map,
    tau_map,
    tau_position,
    verify_hom,
)
from oracles import homs


def test_verify_examples():
    C5, C4, K2 = build_cycle(5), build_cycle(4), complete(2)
    assert verify_hom(identity_hom(C5)) == (True, None)
    const = Homomorphism(C4, K2, {v: Plain(0) for v in C4.vertices})
    ok, bad = verify_hom(const)
    assert not ok and bad == C4.edges[0]
    two = Homomorphism(C4, K2, {Myc(0, j): Plain(j % 2) for j in range(4)})
    assert two.verify() == (True, None)


def test_verify_rejects_partial_or_foreign_maps():
    C4, K2 = build_cycle(4), complete(2)
    with pytest.raises(MalformedInputError):
        verify_hom(Homomorphism(C4, K2, {Myc(0, 0): Plain(0)}))
    with pytest.raises(MalformedInputError):
        verify_hom(Homomorphism(C4, K2, {Myc(0, j): Plain(7) for j in range(4)}))
    with pytest.raises(ValidationError):
        make_hom(C4, K2, {Myc(0, j): Plain(0) for j in range(4)})


def test_find_hom_examples():
    C5, K3 = build_cycle(5), complete(3)
    f = find_hom(C5, K3)
    assert f is not None and f.verify()[0]
    assert find_hom(K3, C5) is None
    P = direct_product(C5, K3)
    assert projection(P, C5, K3, "left").verify()[0]
    assert find_hom(P, C5) is not None
    with pytest.raises(CapacityError):
        find_hom(complete(5), complete(5), max_vertices=4)


@pytest.mark.parametrize("edges_g,n_g,edges_h,n_h", [
    ([(0, 1), (1, 2), (2, 0)], 3, [(0, 1), (1, 2), (2, 3), (3, 0)], 4),
    ([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 5, [(0, 1), (1, 2), (2, 0)], 3),
    ([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)], 6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 5),
    ([(0, 1), (0, 2), (0, 3), (1, 2)], 4, [(0, 1)], 2),
    ([(0, 1), (2, 3)], 4, [(0, 1), (1, 2), (2, 0)], 3),
])
def test_find_hom_agrees_with_brute_force(edges_g, n_g, edges_h, n_h):
    G, H = from_edge_list(n_g, edges_g), from_edge_list(n_h, edges_h)
    exists = next(homs(G, H), None) is not None
    f = find_hom(G, H)
    assert (f is not None) == exists
    if f is not None:
        assert f.verify()[0]


def test_sigma_examples():
    s = sigma_map(2, 2, 1)
    assert all(k == v for k, v in s.mapping.items())
    s = sigma_map(2, 1, 1)
    assert s(Myc(1, 0)) == Myc(0, 0) and s(Myc(2, 2)) == Myc(1, 2) and s(ROOT) == ROOT
    s = sigma_map(3, 1, 2)
    assert all(s(Myc(i, j)) == Myc(0, j) for i in range(3) for j in range(5))
    assert all(s(Myc(3, j)) == Myc(1, j) for j in range(5))


def test_tau_examples():
    t = tau_map(1, 1, 1)
    assert all(k == v for k, v in t.mapping.items())
    t = tau_map(1, 2, 1)
    assert t(Myc(0, 3)) == Myc(0, 1) and t(Myc(0, 4)) == Myc(0, 2)
    assert tau_position(6, 1) == 2 and tau_position(5, 1) == 1
    t = tau_map(2, 3, 1)
    assert t(Myc(2, 6)) == Myc(2, 2) and t(Myc(1, 5)) == Myc(1, 1)


def test_lemma11_examples():
    f = lemma11_hom(1, 1, 1, 1)
    assert all(k == v for k, v in f.mapping.items())
    f = lemma11_hom(2, 2, 1, 1)
    assert f.source.order == 16 and f.source.size == 30 and f.target.order == 7
    assert f.verify()[0]
    g = lemma11_hom(2, 2, 1, 2)
    assert (g.source.order, g.target.order, g.target.size) == (16, 11, 20) and g.verify()[0]
    assert lemma11_hom(3, 2, 2, 1).verify()[0]


def test_lemma11_parameter_errors():
    with pytest.raises(InvalidParameterError):
        lemma11_hom(1, 1, 2, 1)
    with pytest.raises(InvalidParameterError):
        sigma_map(1, 2, 1)
    with pytest.raises(InvalidParameterError):
        tau_map(1, 1, 2)


def test_lemma11_all_small_parameters():
    for p in range(1, 4):
        for q in range(1, 4):
            for m in range(1, p + 1):
                for s in range(1, q + 1):
                    assert sigma_map(p, m, q).verify()[0]
                    assert tau_map(m, q, s).verify()[0]
                    assert lemma11_hom(p, q, m, s).verify()[0]


def test_product_hom_and_compose():
    C5 = build_cycle(5)
    ident = identity_hom(C5)
    ph = product_hom(ident, ident)
    assert all(k == v for k, v in ph.mapping.items())
    f = lemma11_hom(2, 2, 1, 2)
    big = product_hom(f, f)
    assert big.source.order == 16 * 16 and big.target.order == 121 and big.verify()[0]
    # projections undo the diagonal
    d = diagonal_embedding(C5)
    diag = make_hom(C5, d.target, d.mapping)
    back = compose_hom(diag, projection(d.target, C5, C5, "right"))
    assert all(k == v for k, v in back.mapping.items())
    with pytest.raises(MalformedInputError):
        compose_hom(ident, identity_hom(complete(3)))
    with pytest.raises(InvalidParameterError):
        projection(d.target, C5, C5, "middle")


def test_odd_cycle_mycielskian():
    G = odd_cycle_mycielskian(2, 2)
    assert G == mycielskian(build_cycle(5), 2)
