"""Recolouring surgery that makes a dual cycle caress one more face.

A site is a long path X of really^2 bad nodes on one side, a node u = x_0 in
its middle, and an opposite-side node a_1 sharing cycle edges with
x_0, ..., x_i.  Recolouring x_0..x_{i-1} to the other side and a_1 to this
side yields a new cycle C' that caresses the face a_0 as well.

Every candidate is applied as a dry run and accepted only if the result is a
simple cycle satisfying both claims the argument relies on, so find_site
never returns a site that apply_surgery would reject.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from .auxtrees import REALLY, REALLY2, SideTreePair, analyze
from .classify import CARESSED, Classification, classify
from .cycles import DualCycle, NotACycle, cut_is_bond, cycle_from_side
from .dual import DualGraph
from .embedding import InvariantError, Triangulation

log = logging.getLogger(__name__)

CX, CY = "CX", "CY"


@dataclass(frozen=True)
class SurgerySite:
    side: int
    X: Tuple[int, ...]
    u: int
    xs: Tuple[int, ...]  # x_0 .. x_i
    a1: int
    a0: int
    a2: Optional[int]
    case: str
    recolor_set: Tuple[int, ...]  # nodes that change side: the blue x's, then a1
    new_interior: FrozenSet[int]
    a0_face: int
    bad_faces: FrozenSet[int]
    within_span: bool  # i <= Delta - 4

    @property
    def i(self) -> int:
        return len(self.xs) - 1

    def to_json(self) -> dict:
        return {
            "side": self.side, "u": self.u, "xs": list(self.xs), "a1": self.a1, "a0": self.a0,
            "a2": self.a2, "case": self.case, "recolor_set": list(self.recolor_set),
            "a0_face": self.a0_face, "X_len": len(self.X),
        }


@dataclass(frozen=True)
class SurgeryStep:
    len_before: int
    len_after: int
    kappa_before: int
    kappa_after: int
    new_caressed: Tuple[int, ...]
    a0_face: int
    case: str

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


@dataclass
class SurgeryLog:
    steps: List[SurgeryStep] = field(default_factory=list)
    stop_reason: Optional[str] = None
    sites: List[SurgerySite] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps], "stop_reason": self.stop_reason}


# -- site search ------------------------------------------------------------------

def _really2_paths(pair: SideTreePair, side: int) -> List[Tuple[int, ...]]:
    """Components of T_side restricted to really^2 bad nodes, each as a path."""
    keep = {u.id for u in pair.side_nodes(side) if pair.level[u.id] >= REALLY2}
    seen, out = set(), []
    for s in sorted(keep):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in pair.tree_adj[x]:
                if y in keep and y not in seen:
                    seen.add(y)
                    stack.append(y)
        # bad nodes have tree degree 2, so every component is a path
        ends = [x for x in comp if sum(y in keep for y in pair.tree_adj[x]) <= 1]
        start = min(ends)
        path, prev = [start], None
        while len(path) < len(comp):
            nxt = [y for y in pair.tree_adj[path[-1]] if y in keep and y != prev]
            prev = path[-1]
            path.append(nxt[0])
        out.append(tuple(path))
    return sorted(out, key=lambda p: (-len(p), min(p)))


def _shares(pair: SideTreePair, a: int, b: int) -> bool:
    return (min(a, b), max(a, b)) in pair.shared


def _tree_component(pair: SideTreePair, start: int, removed: int) -> set:
    seen, stack = {start, removed}, [start]
    while stack:
        x = stack.pop()
        for y in pair.tree_adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    seen.discard(removed)
    return seen


def _cycle_runs(C: DualCycle, D: DualGraph, edges) -> List[List[int]]:
    """Split a set of cycle edges into maximal runs along the cycle."""
    seq = C.oriented()
    m = len(seq)
    order = [D.edge_id(seq[t], seq[(t + 1) % m]) for t in range(m)]
    mark = [e in edges for e in order]
    if all(mark):
        return [order]
    start = next(t for t in range(m) if not mark[t])
    runs, cur = [], []
    for k in range(1, m + 1):
        t = (start + k) % m
        if mark[t]:
            cur.append(order[t])
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def _common_face(pair: SideTreePair, D: DualGraph, node: int) -> Optional[int]:
    u = pair.nodes[node]
    for f in u.faces:
        if u.cycle_edges <= set(D.face_edges[f]):
            return f
    return None


def _candidates(pair: SideTreePair, D: DualGraph, C: DualCycle, delta: int) -> Iterator[dict]:
    for side in (0, 1):
        for X in _really2_paths(pair, side):
            if len(X) < 5 * delta:
                continue
            positions = [p for p in range(2 * delta, len(X) - 2 * delta) if len(pair.neighbors[X[p]]) >= 5]
            for p in sorted(positions, key=lambda p: X[p]):
                u = X[p]
                for direction in (1, -1):
                    yield from _candidates_at(pair, D, C, side, X, p, direction)


def _candidates_at(pair, D, C, side, X, p, direction):
    u = X[p]
    opp = [a for a in pair.neighbors[u] if pair.nodes[a].side != side and pair.level[a] >= REALLY]
    options = []
    for a1 in opp:
        i = 0
        while 0 <= p + direction * (i + 1) < len(X) and _shares(pair, a1, X[p + direction * (i + 1)]):
            i += 1
        if i >= 1:
            options.append((i, a1))
    for i, a1 in sorted(options):
        xs = tuple(X[p + direction * t] for t in range(i + 1))
        y1 = X[p - direction]
        runs = _cycle_runs(C, D, pair.nodes[a1].cycle_edges)
        if len(runs) != 2:
            continue
        u_edges = pair.nodes[u].cycle_edges
        p_run = [r for r in runs if set(r) & u_edges]
        if len(p_run) != 1:
            continue
        q_run = runs[1 - runs.index(p_run[0])]
        T_y = _tree_component(pair, y1, u)
        q_nodes = {pair.node_of_face[x] for e in q_run for x in D.edge_faces(e)}
        if q_nodes & T_y:
            case, blue, anchor = CY, xs[:-1], xs[-1]
        else:
            case, blue, anchor = CX, xs[1:], xs[0]
        a0s = [a for a in pair.neighbors[a1]
               if a != a1 and pair.nodes[a].side != side and pair.level[a] >= REALLY and _shares(pair, a, anchor)]
        a2s = [a for a in pair.neighbors[a1]
               if a != a1 and pair.nodes[a].side != side and pair.level[a] >= REALLY and _shares(pair, a, u)]
        for a0 in sorted(a0s):
            yield dict(side=side, X=X, u=u, xs=xs, a1=a1, a0=a0, a2=min(a2s) if a2s else None,
                       case=case, blue=tuple(blue))


def _validate(D, C, cls, pair, cand, delta) -> Optional[SurgerySite]:
    side = cand["side"]
    blue_faces = {f for x in cand["blue"] for f in pair.nodes[x].faces}
    a1_faces = set(pair.nodes[cand["a1"]].faces)
    if side == 0:
        interior = (set(C.interior_faces) - blue_faces) | a1_faces
    else:
        interior = (set(C.interior_faces) | blue_faces) - a1_faces
    if not interior or len(interior) == D.n_faces or not cut_is_bond(D, interior):
        return None
    a0_face = _common_face(pair, D, cand["a0"])
    if a0_face is None:
        return None
    bad_faces = frozenset(f for u in pair.nodes if pair.is_bad(u.id) for f in u.faces)
    site = SurgerySite(
        side=side, X=cand["X"], u=cand["u"], xs=cand["xs"], a1=cand["a1"], a0=cand["a0"], a2=cand["a2"],
        case=cand["case"], recolor_set=cand["blue"] + (cand["a1"],), new_interior=frozenset(interior),
        a0_face=a0_face, bad_faces=bad_faces, within_span=len(cand["xs"]) - 1 <= delta - 4,
    )
    try:
        new = _build(D, C, site)
    except InvariantError:
        return None
    if abs(new.length - C.length) > delta * delta:
        return None
    if classify(D, new).kappa <= cls.kappa:
        return None
    return site


def find_site(pair: SideTreePair, D: DualGraph, C: DualCycle, delta: int,
              cls: Optional[Classification] = None) -> Optional[SurgerySite]:
    if pair.level is None:
        raise ValueError("badness_levels must be computed before find_site")
    cls = cls or classify(D, C)
    for cand in _candidates(pair, D, C, delta):
        site = _validate(D, C, cls, pair, cand, delta)
        if site is not None:
            return site
    return None


# -- surgery -------------------------------------------------------------------------

def _face_contact(D: DualGraph, C: DualCycle, f: int):
    on = set(C.vertex_seq)
    return (frozenset(v for v in D.faces[f] if v in on), frozenset(e for e in D.face_edges[f] if e in C.edge_set))


def _build(D: DualGraph, C: DualCycle, site: SurgerySite) -> DualCycle:
    try:
        new = cycle_from_side(D, site.new_interior)
    except NotACycle as exc:
        raise InvariantError("recoloured region does not bound a simple cycle", site=site.to_json()) from exc
    for f in range(D.n_faces):
        if f not in site.bad_faces and _face_contact(D, C, f) != _face_contact(D, new, f):
            raise InvariantError("surgery changed the contact of a face outside the bad nodes", face=f)
    if classify(D, new).status[site.a0_face] != CARESSED:
        raise InvariantError("designated face a0 is not caressed after surgery", face=site.a0_face)
    return new


def apply_surgery(D: DualGraph, C: DualCycle, site: SurgerySite) -> DualCycle:
    """C' bounding the recoloured region; raises InvariantError if either claim fails."""
    return _build(D, C, site)


def surgery_loop(T: Triangulation, D: DualGraph, C0: DualCycle, max_iters: Optional[int] = None):
    delta = T.max_degree()
    limit = D.n_vertices if max_iters is None else max_iters
    C, log_ = C0, SurgeryLog()
    while True:
        if len(log_.steps) >= limit:
            log_.stop_reason = "max_iters"
            break
        cls = classify(D, C)
        _, pair = analyze(D, C, cls)
        site = find_site(pair, D, C, delta, cls)
        if site is None:
            log_.stop_reason = "no_site"
            break
        new = apply_surgery(D, C, site)
        if 2 * new.length < C0.length:
            log_.stop_reason = "length_budget"
            break
        new_cls = classify(D, new)
        gained = tuple(sorted(new_cls.caressed - cls.caressed))
        log_.steps.append(SurgeryStep(C.length, new.length, cls.kappa, new_cls.kappa, gained, site.a0_face, site.case))
        log_.sites.append(site)
        log.debug("surgery step %d: case %s, kappa %d -> %d", len(log_.steps), site.case, cls.kappa, new_cls.kappa)
        C = new
    return C, log_
