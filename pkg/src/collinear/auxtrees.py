"""Keeper paths and the two side trees of a dual cycle.

All objects live in the dual: its vertices are primal faces, its faces are
primal vertices.  A *node* is a face of the graph formed by the cycle and the
keeper paths, stored as the set of dual faces it is made of.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .classify import CARESSED, PINCHED, UNTOUCHED, Classification
from .cycles import DualCycle
from .dual import DualGraph
from .embedding import InvariantError


@dataclass(frozen=True)
class ChordPath:
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]
    side: int
    faces: Tuple[int, ...] = ()  # pinched faces it is a keeper for

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class AuxGraphs:
    H_edges: FrozenSet[int]
    specials: Dict[int, Dict[int, str]]
    keepers: Tuple[ChordPath, ...]
    Htilde_edges: FrozenSet[int]
    # edges of the contracted graph: (endpoints, underlying dual edges, label B/E0/E1)
    partition: Tuple[Tuple[Tuple[int, int], Tuple[int, ...], str], ...]


@dataclass(frozen=True)
class LemmaCheck:
    ok: bool
    witness: Optional[object] = None
    exempt: Tuple[int, ...] = ()
    detail: Dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _run_starts(present: List[bool]) -> List[int]:
    m = len(present)
    return [i for i in range(m) if not present[i] and present[i - 1]]


def build_aux(D: DualGraph, C: DualCycle, cls: Classification) -> AuxGraphs:
    on_cycle = set(C.vertex_seq)
    pinched = [f for f, s in enumerate(cls.status) if s == PINCHED]

    H = set(C.edge_set)
    for f in pinched:
        H.update(D.face_edges[f])
    h_deg: Dict[int, int] = {}
    for e in H:
        for x in D.edge_list[e]:
            h_deg[x] = h_deg.get(x, 0) + 1

    specials: Dict[int, Dict[int, str]] = {}
    keepers: Dict[FrozenSet[int], ChordPath] = {}
    for f in pinched:
        verts, edges = D.faces[f], D.face_edges[f]
        m = len(edges)
        in_c = [e in C.edge_set for e in edges]
        marks = {}
        for i in range(m):
            prev_in, next_in = in_c[i - 1], in_c[i]
            if prev_in and not next_in:
                marks[verts[i]] = "A"
            elif next_in and not prev_in:
                marks[verts[i]] = "B"
            elif verts[i] not in on_cycle and h_deg.get(verts[i], 0) == 3:
                marks[verts[i]] = "Y"
        specials[f] = marks
        for s in _run_starts(in_c):
            run_v, run_e = [verts[s]], []
            i = s
            while not in_c[i % m]:
                run_e.append(edges[i % m])
                run_v.append(verts[(i + 1) % m])
                i += 1
            if any(marks.get(v) == "Y" for v in run_v[1:-1]):
                continue
            key = frozenset(run_e)
            if key in keepers:
                old = keepers[key]
                keepers[key] = dataclasses.replace(old, faces=tuple(sorted(old.faces + (f,))))
                continue
            sides = {C.side_of(x) for e in run_e for x in D.edge_faces(e)}
            if len(sides) != 1:
                raise InvariantError("keeper has faces on both sides of the cycle", keeper=run_v)
            keepers[key] = ChordPath(tuple(run_v), tuple(run_e), sides.pop(), (f,))

    keeper_list = tuple(sorted(keepers.values(), key=lambda p: (p.side, p.edges)))
    Ht = set(C.edge_set)
    for p in keeper_list:
        Ht.update(p.edges)
    return AuxGraphs(frozenset(H), specials, keeper_list, frozenset(Ht), _contract(D, C, keeper_list))


def _contract(D: DualGraph, C: DualCycle, keepers) -> tuple:
    """Edges of the graph cycle + keepers with degree-2 vertices suppressed."""
    out = []
    anchors = set()
    for p in keepers:
        out.append(((p.vertices[0], p.vertices[-1]), p.edges, f"E{p.side}"))
        anchors.update((p.vertices[0], p.vertices[-1]))
    seq = C.oriented()
    m = len(seq)
    if not anchors:
        arc = tuple(D.edge_id(seq[i], seq[(i + 1) % m]) for i in range(m))
        return ((((seq[0], seq[0]), arc, "B"),))
    start = next(i for i in range(m) if seq[i] in anchors)
    arc, a = [], seq[start]
    for k in range(1, m + 1):
        i = (start + k) % m
        arc.append(D.edge_id(seq[i - 1], seq[i]))
        if seq[i] in anchors:
            out.append(((a, seq[i]), tuple(arc), "B"))
            arc, a = [], seq[i]
    return tuple(out)


# -- side trees ----------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    id: int
    side: int
    faces: Tuple[int, ...]
    tau: int
    rho: int
    kappa: int
    delta: int
    cycle_edges: FrozenSet[int]

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "side": self.side,
            "faces": list(self.faces),
            "tau": self.tau,
            "rho": self.rho,
            "kappa": self.kappa,
            "delta": self.delta,
        }


BAD, REALLY, REALLY2 = 0, 1, 2


@dataclass(frozen=True)
class SideTreePair:
    nodes: Tuple[Node, ...]
    node_of_face: Tuple[int, ...]
    tree_edges: Tuple[Tuple[int, int, int], ...]  # (u, v, keeper index)
    tree_adj: Tuple[Tuple[int, ...], ...]
    neighbors: Tuple[Tuple[int, ...], ...]  # N(u)
    shared: Dict[Tuple[int, int], FrozenSet[int]]  # cross pairs -> shared cycle edges
    keepers: Tuple[ChordPath, ...]
    facial_sides: Tuple[int, ...] = ()
    level: Optional[Tuple[int, ...]] = None  # -1 not bad, else max r with really^r bad

    def side_nodes(self, i: int) -> List[Node]:
        return [u for u in self.nodes if u.side == i]

    def n(self, i: int) -> int:
        return len(self.side_nodes(i))

    def is_bad(self, u: int) -> bool:
        return len(self.tree_adj[u]) == 2 and self.nodes[u].kappa == 0

    def b(self, i: int) -> int:
        return sum(self.is_bad(u.id) for u in self.side_nodes(i))

    def to_json(self) -> dict:
        nodes = []
        for u in self.nodes:
            d = u.to_json()
            d["bad"] = self.is_bad(u.id)
            if self.level is not None:
                d["really_bad"] = self.level[u.id] >= REALLY
                d["really2_bad"] = self.level[u.id] >= REALLY2
            d["N"] = list(self.neighbors[u.id])
            nodes.append(d)
        return {
            "nodes": nodes,
            "tree_edges": [{"u": u, "v": v, "keeper": list(self.keepers[k].vertices)} for u, v, k in self.tree_edges],
            "facial_sides": list(self.facial_sides),
        }


def build_side_trees(D: DualGraph, C: DualCycle, aux: AuxGraphs, cls: Classification) -> SideTreePair:
    nf = D.n_faces
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(D.n_edges):
        if e in aux.Htilde_edges:
            continue
        a, b = D.edge_faces(e)
        parent[find(a)] = find(b)

    groups: Dict[int, List[int]] = {}
    for f in range(nf):
        groups.setdefault(find(f), []).append(f)
    order = sorted(groups.values(), key=lambda g: (C.side_of(g[0]), min(g)))
    node_of_face = [0] * nf
    for nid, g in enumerate(order):
        if len({C.side_of(f) for f in g}) != 1:
            raise InvariantError("node spans both sides of the cycle", node=nid)
        for f in g:
            node_of_face[f] = nid

    tree_edges = []
    tree_adj: List[List[int]] = [[] for _ in order]
    for k, p in enumerate(aux.keepers):
        lefts = {node_of_face[D.left_face[(p.vertices[i], p.vertices[i + 1])]] for i in range(len(p.edges))}
        rights = {node_of_face[D.left_face[(p.vertices[i + 1], p.vertices[i])]] for i in range(len(p.edges))}
        if len(lefts) != 1 or len(rights) != 1 or lefts == rights:
            raise InvariantError("keeper does not separate exactly two nodes", keeper=list(p.vertices))
        u, v = sorted((lefts.pop(), rights.pop()))
        if v in tree_adj[u]:
            raise InvariantError("two keepers join the same pair of nodes", nodes=[u, v])
        tree_edges.append((u, v, k))
        tree_adj[u].append(v)
        tree_adj[v].append(u)

    shared: Dict[Tuple[int, int], set] = {}
    cycle_edges: List[set] = [set() for _ in order]
    for e in C.edge_set:
        a, b = (node_of_face[x] for x in D.edge_faces(e))
        cycle_edges[a].add(e)
        cycle_edges[b].add(e)
        shared.setdefault((min(a, b), max(a, b)), set()).add(e)

    nodes = []
    for nid, g in enumerate(order):
        st = [cls.status[f] for f in g]
        nodes.append(Node(
            nid, C.side_of(g[0]), tuple(sorted(g)),
            tau=sum(s != UNTOUCHED for s in st), rho=st.count(PINCHED), kappa=st.count(CARESSED),
            delta=len(tree_adj[nid]), cycle_edges=frozenset(cycle_edges[nid]),
        ))

    for i in (0, 1):
        side = [u.id for u in nodes if u.side == i]
        edges_i = [t for t in tree_edges if nodes[t[0]].side == i]
        if not side:
            continue
        if len(edges_i) != len(side) - 1 or not _connected(side, tree_adj):
            raise InvariantError("not a tree", side=i, nodes=len(side), edges=len(edges_i))

    neighbors = []
    for u in range(len(order)):
        nb = set(tree_adj[u])
        nb.update(v for (a, b) in shared for v in (a, b) if u in (a, b) and v != u)
        neighbors.append(tuple(sorted(nb)))

    facial = tuple(
        i for i in (0, 1)
        if len(C.interior_faces if i == 0 else C.exterior_faces) == 1
        and cls.traces[next(iter(C.interior_faces if i == 0 else C.exterior_faces))].is_full_cycle
    )
    return SideTreePair(
        tuple(nodes), tuple(node_of_face), tuple(tree_edges),
        tuple(tuple(sorted(a)) for a in tree_adj), tuple(neighbors),
        {k: frozenset(v) for k, v in shared.items()}, aux.keepers, facial,
    )


def _connected(vertices, adj) -> bool:
    vs = set(vertices)
    start = vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in vs and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == vs


def badness_levels(pair: SideTreePair, r_max: int = 2) -> SideTreePair:
    """Annotate each node with the largest r <= r_max such that it is really^r bad.

    Really^r bad means that every node within r steps of u in the graph N
    (tree neighbours plus cross neighbours) is bad, u included.
    """
    if r_max not in (1, 2):
        raise ValueError(f"r_max must be 1 or 2, got {r_max}")
    levels = []
    for u in range(len(pair.nodes)):
        if not pair.is_bad(u):
            levels.append(-1)
            continue
        level = 0
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if dist[x] == r_max:
                continue
            for y in pair.neighbors[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        for r in range(1, r_max + 1):
            if all(pair.is_bad(y) for y, d in dist.items() if d <= r):
                level = r
            else:
                break
        levels.append(level)
    return dataclasses.replace(pair, level=tuple(levels))


# -- lemma checks ----------------------------------------------------------------------

def node_inequality_check(pair: SideTreePair) -> LemmaCheck:
    """rho_u <= 2 (kappa_u + delta_u) for every node outside a facial side."""
    exempt = tuple(u.id for u in pair.nodes if u.side in pair.facial_sides)
    for u in pair.nodes:
        if u.id not in exempt and u.rho > 2 * (u.kappa + u.delta):
            return LemmaCheck(False, u.id, exempt, {"rho": u.rho, "kappa": u.kappa, "delta": u.delta})
    return LemmaCheck(True, exempt=exempt)


def leaf_caress_check(pair: SideTreePair, cls: Classification) -> LemmaCheck:
    for u in pair.nodes:
        if len(pair.tree_adj[u.id]) == 1 and not any(cls.status[f] == CARESSED for f in u.faces):
            return LemmaCheck(False, u.id)
    return LemmaCheck(True)


def counting_checks(pair: SideTreePair, cls: Classification) -> LemmaCheck:
    """Per side: b_i >= n_i - 3 kappa_i, and kappa_i <= tau_i/6 implies n_i >= tau_i/8."""
    detail = {}
    ok, witness = True, None
    for i in (0, 1):
        n_i, b_i = pair.n(i), pair.b(i)
        kappa_i, tau_i = cls.per_side[i]["kappa"], cls.per_side[i]["tau"]
        exempt = i in pair.facial_sides
        a_ok = exempt or b_i >= n_i - 3 * kappa_i
        b_ok = not (6 * kappa_i <= tau_i) or 8 * n_i >= tau_i
        detail[i] = {"n": n_i, "b": b_i, "kappa": kappa_i, "tau": tau_i, "a": a_ok, "b_implication": b_ok,
                     "exempt": exempt}
        if ok and not (a_ok and b_ok):
            ok, witness = False, i
    return LemmaCheck(ok, witness, tuple(pair.facial_sides), detail)


def structural_bad_checks(pair: SideTreePair, D: DualGraph, C: DualCycle) -> LemmaCheck:
    """The three structural facts about bad nodes."""
    for u in pair.nodes:
        if not pair.is_bad(u.id):
            continue
        if not any(u.cycle_edges <= set(D.face_edges[f]) for f in u.faces):
            return LemmaCheck(False, ("common_face", u.id))
    for (a, b), es in sorted(pair.shared.items()):
        if pair.is_bad(a) and pair.is_bad(b) and len(es) > 1:
            return LemmaCheck(False, ("one_shared_edge", a, b))
    for u, v, k in pair.tree_edges:
        if pair.is_bad(u) and pair.is_bad(v) and len(pair.keepers[k].edges) != 1:
            return LemmaCheck(False, ("one_edge_between", u, v))
    return LemmaCheck(True)


def analyze(D: DualGraph, C: DualCycle, cls: Classification, r_max: int = 2):
    """build_aux, build_side_trees and badness_levels in one call."""
    aux = build_aux(D, C, cls)
    return aux, badness_levels(build_side_trees(D, C, aux, cls), r_max)
