import networkx as nx
import pytest
from hypothesis import given, strategies as st

from collinear.auxtrees import (REALLY, REALLY2, analyze, badness_levels, counting_checks, leaf_caress_check,
                                node_inequality_check, structural_bad_checks)
from collinear.classify import CARESSED, PINCHED, classify
from collinear.cycles import long_cycle_heuristic, longest_cycle_exact, orient_and_partition
from collinear.dual import dualize
from collinear.generators import canonical_cycle, random_flip, random_stacked, tetrahedron

pairs = st.builds(
    lambda kind, n, seed, exact, flip: _pair((random_stacked if kind else random_flip)(n, seed=seed), seed, exact,
                                             flip),
    st.booleans(), st.integers(4, 30), st.integers(0, 50), st.booleans(), st.booleans(),
)


def _pair(T, seed, exact, flip):
    D = dualize(T)
    C = longest_cycle_exact(D) if exact else long_cycle_heuristic(D, seed)
    return T, D, C.flipped() if flip else C


def _setup(D, C):
    cls = classify(D, C)
    aux, pair = analyze(D, C, cls)
    return cls, aux, pair


def _serpentine(k):
    T, seq = canonical_cycle("serpentine", k)
    D = dualize(T)
    return T, D, orient_and_partition(D, seq), seq


def test_no_pinched_faces_gives_single_nodes():
    # a Hamiltonian 4-cycle of K4 meets every triangle in a two-edge path
    D = dualize(tetrahedron())
    C = longest_cycle_exact(D)
    cls, aux, pair = _setup(D, C)
    assert cls.rho == 0 and cls.kappa == 4
    assert aux.H_edges == C.edge_set and aux.keepers == ()
    assert aux.Htilde_edges == C.edge_set
    assert len(pair.nodes) == 2 and pair.tree_edges == ()
    assert all(u.delta == 0 for u in pair.nodes)


def test_facial_cycle_has_no_specials():
    D = dualize(tetrahedron())
    C = orient_and_partition(D, D.faces[0])
    _, aux, pair = _setup(D, C)
    assert aux.specials[0] == {} and aux.keepers == ()
    assert pair.facial_sides == (0,)


def test_facial_side_is_exempt_not_hidden():
    T = tetrahedron()
    D = dualize(T)
    C = orient_and_partition(D, D.faces[0])
    _, _, pair = _setup(D, C)
    u = pair.side_nodes(0)[0]
    # the single pinched face violates the inequality; it is reported as exempt
    assert u.rho > 2 * (u.kappa + u.delta)
    check = node_inequality_check(pair)
    assert check and check.exempt == (u.id,)


@pytest.mark.parametrize("k", [4, 7, 12])
def test_serpentine_keepers_are_the_chords(k):
    T, D, C, seq = _serpentine(k)
    _, aux, pair = _setup(D, C)
    L = 4 * k
    chords = set()
    for x in range(L):
        partner = (2 - x) % L if x % 2 == 0 else (8 - x) % L
        chords.add(D.edge_id(seq[x], seq[partner]))
    assert {p.edges[0] for p in aux.keepers} == chords
    assert all(len(p.edges) == 1 for p in aux.keepers)


@pytest.mark.parametrize("k", [4, 8, 12])
def test_serpentine_interior_tree_is_a_path(k):
    T, D, C, _ = _serpentine(k)
    cls, _, pair = _setup(D, C)
    side = pair.side_nodes(0)
    assert len(side) == k + 1
    degrees = sorted(len(pair.tree_adj[u.id]) for u in side)
    assert degrees == [1, 1] + [2] * (k - 1)
    leaves = [u for u in side if len(pair.tree_adj[u.id]) == 1]
    assert all(u.kappa == 1 for u in leaves)
    assert leaf_caress_check(pair, cls)
    assert structural_bad_checks(pair, D, C)
    report = counting_checks(pair, cls)
    assert report and report.detail[0]["kappa"] == 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pinwheel_node(k):
    T, seq = canonical_cycle("pinwheel", k)
    D = dualize(T)
    C = orient_and_partition(D, seq)
    _, _, pair = _setup(D, C)
    stats = [(u.rho, u.kappa, u.delta) for u in pair.side_nodes(0)]
    assert (2 * k + 1, 0, k + 2) in stats
    assert node_inequality_check(pair)


def test_pinwheel_two_slack():
    T, seq = canonical_cycle("pinwheel", 2)
    D = dualize(T)
    _, _, pair = _setup(D, orient_and_partition(D, seq))
    u = max(pair.side_nodes(0), key=lambda u: u.rho)
    assert 2 * (u.kappa + u.delta) - u.rho == 3


def _reference_levels(pair):
    G = nx.Graph()
    G.add_nodes_from(range(len(pair.nodes)))
    G.add_edges_from((u, v) for u in range(len(pair.nodes)) for v in pair.neighbors[u])
    bad = {u.id for u in pair.nodes if pair.tree_adj[u.id] and len(pair.tree_adj[u.id]) == 2 and u.kappa == 0}
    out = []
    for u in range(len(pair.nodes)):
        level = -1
        for r in range(3):
            if set(nx.ego_graph(G, u, radius=r)) <= bad:
                level = r
            else:
                break
        out.append(level)
    return tuple(out)


@pytest.mark.parametrize("k", [12, 20])
def test_serpentine_badness_oracle(k):
    _, D, C, _ = _serpentine(k)
    _, _, pair = _setup(D, C)
    assert pair.level == _reference_levels(pair)
    middle = pair.side_nodes(0)[k // 2].id
    assert pair.level[middle] == REALLY2


@given(pairs)
def test_tree_invariants(arg):
    T, D, C = arg
    cls, aux, pair = _setup(D, C)
    for i in (0, 1):
        side_faces = sorted(f for u in pair.side_nodes(i) for f in u.faces)
        assert side_faces == sorted(C.interior_faces if i == 0 else C.exterior_faces)
        for key in ("tau", "rho", "kappa"):
            assert sum(getattr(u, key) for u in pair.side_nodes(i)) == cls.per_side[i][key]
        assert sum(u.delta for u in pair.side_nodes(i)) == 2 * (pair.n(i) - 1)
    assert pair.level == _reference_levels(pair)


@given(pairs)
def test_keeper_invariants(arg):
    T, D, C = arg
    cls, aux, pair = _setup(D, C)
    on_cycle = set(C.vertex_seq)
    for p in aux.keepers:
        assert p.vertices[0] in on_cycle and p.vertices[-1] in on_cycle
        assert not set(p.vertices[1:-1]) & on_cycle
        assert p.side in (0, 1)
        for f in p.faces:
            assert cls.status[f] == PINCHED
            assert set(p.edges) <= set(D.face_edges[f])
            marks = aux.specials[f]
            assert {marks[p.vertices[0]], marks[p.vertices[-1]]} == {"A", "B"}
            assert not any(v in marks for v in p.vertices[1:-1])
    # every contracted edge ends at a vertex of degree 3 in the keeper-plus-cycle graph
    deg = {}
    for (a, b), _, _ in aux.partition:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    if aux.keepers:
        assert set(deg.values()) == {3}
    labels = {lab for _, _, lab in aux.partition}
    assert labels <= {"B", "E0", "E1"}


@given(pairs)
def test_lemmas_hold(arg):
    T, D, C = arg
    cls, _, pair = _setup(D, C)
    assert node_inequality_check(pair)
    assert leaf_caress_check(pair, cls)
    assert counting_checks(pair, cls)
    assert structural_bad_checks(pair, D, C)
    for u in pair.nodes:
        if u.kappa or len(pair.tree_adj[u.id]) != 2:
            assert pair.level[u.id] == -1


def test_badness_rejects_large_radius():
    _, D, C, _ = _serpentine(4)
    _, _, pair = _setup(D, C)
    with pytest.raises(ValueError):
        badness_levels(pair, 3)


def test_trees_json():
    _, D, C, _ = _serpentine(6)
    _, _, pair = _setup(D, C)
    data = pair.to_json()
    assert len(data["nodes"]) == len(pair.nodes)
    assert all("really2_bad" in n for n in data["nodes"])
