import networkx as nx
import pytest

from pentact.errors import PentactError
from pentact.forests import (
    FiveColorForest,
    fcf_from_schnyder,
    loads_forest,
    mod5,
    schnyder_wood,
    validate_fcf,
    validate_schnyder,
)
from pentact.planarmap import (
    Triangulation,
    contract_for_schnyder,
    generate_random,
    wheel5,
)

from conftest import stackings_upto


def test_schnyder_single_inner():
    c = contract_for_schnyder(wheel5())
    wood = schnyder_wood(c.triangle, colors=(1, 3, 4))
    assert not validate_schnyder(wood, colors=(1, 3, 4))
    by_head = {v: c for (u, v, c) in wood.oriented_edges()}
    assert by_head == {0: 1, c.b3: 3, c.b4: 4}


def test_schnyder_two_inner():
    # triangle 0,1,2 with adjacent inner vertices 3,4
    rot = {
        0: [1, 3, 2],
        1: [2, 4, 3, 0],
        2: [0, 3, 4, 1],
        3: [0, 1, 4, 2],
        4: [1, 2, 3],
    }
    tri = Triangulation((0, 1, 2), rot)
    wood = schnyder_wood(tri)
    assert validate_schnyder(wood) == []


def test_wheel_forest_forced():
    w = wheel5()
    f = fcf_from_schnyder(w)
    assert f.oriented_edges() == [(5, i, i + 1) for i in range(5)]


def test_random_forests_validate():
    for seed in range(8):
        t = generate_random(2 + seed, seed)
        f = fcf_from_schnyder(t)
        assert validate_fcf(t, f).ok


def test_sample5_forest_validates(sample5_instance, sample5_forest):
    assert validate_fcf(sample5_instance, sample5_forest).ok


def test_constructed_forest_on_sample5(sample5_instance):
    f = fcf_from_schnyder(sample5_instance)
    assert validate_fcf(sample5_instance, f).ok


def test_f1_violation_detected():
    w = wheel5()
    bad = FiveColorForest(w, [(5, 0, 2), (5, 1, 2), (5, 2, 3), (5, 3, 4), (5, 4, 5)])
    rep = validate_fcf(w, bad)
    assert not rep.ok
    assert any("(F1)" in m for m in rep.problems)


def test_missing_edge_detected():
    w = wheel5()
    bad = FiveColorForest(w, [(5, i, i + 1) for i in range(4)])
    rep = validate_fcf(w, bad)
    assert not rep.ok


def test_forest_json_roundtrip(sample5_instance, sample5_forest):
    import json
    text = json.dumps(sample5_forest.to_json())
    back = loads_forest(sample5_instance, text)
    assert back == sample5_forest


def _color_digraph(t, f, flip_colors):
    g = nx.DiGraph()
    g.add_nodes_from(t.rot)
    for (u, v), c in f.items():
        if c in flip_colors:
            g.add_edge(v, u)
        else:
            g.add_edge(u, v)
    return g


def test_shifted_reorientations_acyclic():
    # keeping colours i-1, i, i+1 and reversing i+2, i-2 must leave no cycle
    for seed in range(5):
        t = generate_random(3 + seed, 17 + seed)
        f = fcf_from_schnyder(t)
        for i in range(1, 6):
            flips = {mod5(i + 2), mod5(i - 2)}
            g = _color_digraph(t, f, flips)
            assert nx.is_directed_acyclic_graph(g), (seed, i)


def test_directed_cycle_color_properties():
    # any directed cycle uses >= 3 colours, and exactly 3 only non-consecutive
    for seed in range(4):
        t = generate_random(4 + seed, 31 + seed)
        f = fcf_from_schnyder(t)
        g = nx.DiGraph()
        colors = {}
        for (u, v), c in f.items():
            g.add_edge(u, v)
            colors[(u, v)] = c
        for cyc in nx.simple_cycles(g):
            used = {colors[(cyc[i], cyc[(i + 1) % len(cyc)])]
                    for i in range(len(cyc))}
            assert len(used) >= 3, (seed, cyc)
            if len(used) == 3:
                rotations = [{mod5(j + k) for j in used} for k in range(5)]
                assert all(r != {1, 2, 3} for r in rotations), (seed, cyc, used)


def test_forest_count_matches_orientations():
    # distinct forests of one instance stay distinct as orientations
    from pentact.orientations import StackExtension, chi, enumerate_alpha5, psi
    for t in list(stackings_upto(2))[:3]:
        ext = StackExtension(t)
        forests = {psi(x) for x in enumerate_alpha5(t, ext)}
        assert len({chi(f, ext).key() for f in forests}) == len(forests)


def test_color_classes_are_forests():
    # each colour class is a forest of out-degree-1 trees; the tree holding
    # the colour's outer vertex is therefore rooted (directed toward) it
    for seed in (0, 6, 13):
        t = generate_random(5 + seed % 4, 50 + seed)
        f = fcf_from_schnyder(t)
        anchor = {i + 1: a for i, a in enumerate(t.outer)}
        for i in range(1, 6):
            edges = [(u, v) for (u, v), c in f.items() if c == i]
            succ = {}
            for (u, v) in edges:
                assert u not in succ, "two outgoing edges of one colour"
                succ[u] = v
            g = nx.DiGraph(edges)
            assert nx.is_directed_acyclic_graph(g)
            for u in succ:
                v = u
                while v in succ:
                    v = succ[v]
                assert v == anchor[i] or not t.is_outer(v)


def test_double_color_rejected():
    w = wheel5()
    with pytest.raises(PentactError):
        FiveColorForest(w, [(5, 0, 1), (0, 5, 2)])
