import math

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from collinear.classify import CARESSED, classify
from collinear.curve import (CROSS, FACE, VERTEX, CollinearCertificate, ProperGoodCurve, base_events,
                             cycle_to_curve, independent_caressed_set, make_certificate, upper_bound_check,
                             verify_curve)
from collinear.cycles import long_cycle_heuristic, longest_cycle_exact, orient_and_partition
from collinear.dual import dualize
from collinear.embedding import InvariantError, Triangulation
from collinear.generators import canonical_cycle, octahedron, random_flip, random_stacked, tetrahedron

pairs = st.builds(
    lambda kind, n, seed, exact: _pair((random_stacked if kind else random_flip)(n, seed=seed), seed, exact),
    st.booleans(), st.integers(4, 30), st.integers(0, 50), st.booleans(),
)


def _pair(T, seed, exact):
    D = dualize(T)
    return T, D, longest_cycle_exact(D) if exact else long_cycle_heuristic(D, seed)


class _Graph:
    """Minimal stand-in exposing neighbors() for the independent set routine."""

    def __init__(self, G):
        self.G = G

    def neighbors(self, v):
        return tuple(self.G.neighbors(v))


def test_independent_set_examples():
    assert len(independent_caressed_set(_Graph(nx.path_graph(6)), range(6))) == 3
    assert len(independent_caressed_set(_Graph(nx.complete_graph(4)), range(4))) == 1
    assert independent_caressed_set(_Graph(nx.path_graph(3)), []) == set()


@given(st.integers(4, 40), st.integers(0, 30), st.data())
def test_independent_set_guarantee(n, seed, data):
    T = random_flip(n, seed=seed)
    F = data.draw(st.sets(st.integers(0, n - 1)))
    S = independent_caressed_set(T, F)
    assert S <= F
    assert not any(T.adjacent(a, b) for a in S for b in S if a < b)
    assert len(S) >= math.ceil(len(F) / 6)


def test_empty_splice_is_the_base_curve():
    T = octahedron()
    D = dualize(T)
    C = longest_cycle_exact(D)
    curve = cycle_to_curve(T, D, C, [])
    assert list(curve.events) == base_events(D, C)
    assert verify_curve(T, curve)


def test_single_splice_replaces_the_fan():
    T = tetrahedron()
    D = dualize(T)
    C = orient_and_partition(D, D.faces[0])
    curve = cycle_to_curve(T, D, C, [1])
    assert curve.vertices == (1,)
    crossed = {x for t, x in curve.events if t == CROSS}
    assert not any(1 in T.edges[e] for e in crossed)
    assert verify_curve(T, curve)
    assert len(curve.events) == len(base_events(D, C))


def test_pinched_vertex_is_refused():
    T = tetrahedron()
    D = dualize(T)
    C = orient_and_partition(D, D.faces[0])
    with pytest.raises(InvariantError, match="pinched"):
        cycle_to_curve(T, D, C, [0])


def test_verify_properness_witness():
    # through u between two of its triangles, then back across their common edge uw
    T = octahedron()
    u, w = T.edges[0]
    f, g = T.face_of_dart[(u, w)], T.face_of_dart[(w, u)]
    curve = ProperGoodCurve(((FACE, f), (VERTEX, u), (FACE, g), (CROSS, 0)))
    check = verify_curve(T, curve)
    assert not check and check.clause == "properness" and check.witness == (u, w)


def test_verify_rejects_adjacent_vertices():
    T = octahedron()
    u, w = T.edges[0]
    f, g = T.face_of_dart[(u, w)], T.face_of_dart[(w, u)]
    check = verify_curve(T, ProperGoodCurve(((FACE, f), (VERTEX, u), (FACE, g), (VERTEX, w))))
    assert not check and check.clause == "properness"


def test_verify_rejects_repeated_crossing():
    T = octahedron()
    f, g = T.face_of_dart[T.edges[0]], T.face_of_dart[T.edges[0][::-1]]
    check = verify_curve(T, ProperGoodCurve(((FACE, f), (CROSS, 0), (FACE, g), (CROSS, 0))))
    assert not check and check.clause == "edge_once"


def test_verify_goodness():
    check = verify_curve(tetrahedron(), ProperGoodCurve(((VERTEX, 0), (VERTEX, 1))))
    assert not check and check.clause == "goodness"


def test_verify_cross_locality():
    T = octahedron()
    D = dualize(T)
    C = longest_cycle_exact(D)
    events = base_events(D, C)
    other = next(e for e in range(len(T.edges)) if e not in C.edge_set)
    events[1] = (CROSS, other)
    check = verify_curve(T, ProperGoodCurve(tuple(events)))
    assert not check and check.clause == "cross_local"


@given(pairs)
def test_certificate_on_random_pairs(arg):
    T, D, C = arg
    cert = make_certificate(T, D, C)
    cls = classify(D, C)
    assert verify_curve(T, cert.curve)
    assert set(cert.S) == set(cert.curve.vertices)
    assert len(cert.S) >= math.ceil(cls.kappa / 6)
    assert all(cls.status[v] == CARESSED for v in cert.S)
    data = cert.to_json()
    assert data["S"] == list(cert.S) and data["stats"]["kappa_final"] == cls.kappa


def test_splice_locality():
    T, seq = canonical_cycle("serpentine", 10)
    D = dualize(T)
    C = orient_and_partition(D, seq)
    cert = make_certificate(T, D, C)
    base = base_events(D, C)
    near = set()
    for u in cert.S:
        near |= {T.face_of_dart[(u, w)] for w in T.neighbors(u)}
    kept = [ev for ev in base if not (ev[0] == FACE and ev[1] in near)
            and not (ev[0] == CROSS and set(T.edges[ev[1]]) & set(cert.S))]
    assert all(ev in cert.curve.events for ev in kept)
    assert len(cert.curve.vertices) == len(cert.S)


@pytest.mark.parametrize("T, bound", [(tetrahedron(), 4), (octahedron(), 8)])
def test_upper_bound(T, bound):
    D = dualize(T)
    cert = make_certificate(T, D, longest_cycle_exact(D))
    assert len(cert.S) <= bound
    assert upper_bound_check(T, D, cert)
