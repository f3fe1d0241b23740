"""From a dual cycle to a proper good curve through an independent set of vertices.

A curve is a cyclic sequence of events: inside a primal face, crossing a
primal edge, or passing through a primal vertex.  The set of vertices it
passes through is a collinear set of the triangulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .classify import CARESSED, classify
from .cycles import DualCycle, longest_cycle_exact
from .dual import DualGraph
from .embedding import InvariantError, Triangulation

FACE, CROSS, VERTEX = "face", "cross", "vertex"
Event = Tuple[str, int]


@dataclass(frozen=True)
class ProperGoodCurve:
    events: Tuple[Event, ...]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(x for t, x in self.events if t == VERTEX)

    def to_json(self) -> list:
        return [{"t": t, "id": x} for t, x in self.events]


@dataclass(frozen=True)
class CollinearCertificate:
    S: Tuple[int, ...]
    curve: ProperGoodCurve
    stats: Dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"S": list(self.S), "events": self.curve.to_json(), "stats": dict(self.stats)}


@dataclass(frozen=True)
class CurveCheck:
    ok: bool
    clause: Optional[str] = None
    witness: Optional[object] = None

    def __bool__(self):
        return self.ok


def independent_caressed_set(T: Triangulation, F: Iterable[int]) -> Set[int]:
    """Greedy minimum-degree elimination on T[F].

    T[F] is planar, so some vertex has degree at most 5 and each pick removes
    at most six vertices: the result has at least ceil(|F|/6) vertices.
    """
    left = set(F)
    nbrs = {v: set(T.neighbors(v)) & left for v in left}
    out: Set[int] = set()
    while left:
        v = min(left, key=lambda x: (len(nbrs[x]), x))
        out.add(v)
        gone = {v} | nbrs[v]
        left -= gone
        for w in left:
            nbrs[w] -= gone
    return out


def base_events(D: DualGraph, C: DualCycle) -> List[Event]:
    seq = C.oriented()
    m = len(seq)
    out: List[Event] = []
    for t in range(m):
        out.append((FACE, seq[t]))
        out.append((CROSS, D.edge_id(seq[t], seq[(t + 1) % m])))
    return out


def cycle_to_curve(T: Triangulation, D: DualGraph, C: DualCycle, F_prime: Iterable[int]) -> ProperGoodCurve:
    events = base_events(D, C)
    for u in sorted(F_prime):
        incident = set(D.face_edges[u])
        m = len(events)
        hit = [t == CROSS and x in incident for t, x in events]
        if not any(hit):
            raise InvariantError(f"vertex {u} is not touched by the cycle", vertex=u)
        if all(hit[i] for i in range(1, m, 2)):
            raise InvariantError(f"vertex {u} is pinched, not caressed", vertex=u)
        # rotate so the list starts just after a crossing not incident to u
        start = next(i for i in range(1, m, 2) if not hit[i] and hit[(i + 2) % m])
        ev = events[start + 1:] + events[:start + 1]
        h = hit[start + 1:] + hit[:start + 1]
        cross_pos = [i for i in range(len(ev)) if h[i]]
        first, last = cross_pos[0], cross_pos[-1]
        if cross_pos != list(range(first, last + 1, 2)):
            raise InvariantError(f"crossed edges at vertex {u} do not form one contiguous fan", vertex=u)
        events = ev[:first] + [(VERTEX, u)] + ev[last + 1:]
    return ProperGoodCurve(tuple(events))


def verify_curve(T: Triangulation, curve: ProperGoodCurve) -> CurveCheck:
    ev = curve.events
    m = len(ev)
    if not any(t == FACE for t, _ in ev):
        return CurveCheck(False, "goodness", None)
    if m % 2 or any((ev[i][0] == FACE) == (ev[(i + 1) % m][0] == FACE) for i in range(m)):
        return CurveCheck(False, "alternation", None)
    faces = [x for t, x in ev if t == FACE]
    if len(set(faces)) != len(faces):
        return CurveCheck(False, "simple", next(f for f in faces if faces.count(f) > 1))
    crossed: Dict[int, int] = {}
    verts: List[int] = []
    for t, x in ev:
        if t == CROSS:
            crossed[x] = crossed.get(x, 0) + 1
            if crossed[x] > 1:
                return CurveCheck(False, "edge_once", T.edges[x])
        elif t == VERTEX:
            if x in verts:
                return CurveCheck(False, "vertex_once", x)
            verts.append(x)
    vset = set(verts)
    for e in crossed:
        a, b = T.edges[e]
        if a in vset or b in vset:
            return CurveCheck(False, "properness", (a, b))
    for v in verts:
        if vset & set(T.neighbors(v)):
            return CurveCheck(False, "properness", (v, min(vset & set(T.neighbors(v)))))
    for i, (t, x) in enumerate(ev):
        if t == FACE:
            continue
        f, g = ev[i - 1][1], ev[(i + 1) % m][1]
        if t == CROSS:
            a, b = T.edges[x]
            if {f, g} != {T.face_of_dart[(a, b)], T.face_of_dart[(b, a)]}:
                return CurveCheck(False, "cross_local", (x, f, g))
        else:
            if f == g or x not in T.face_list[f].boundary or x not in T.face_list[g].boundary:
                return CurveCheck(False, "vertex_local", (x, f, g))
    return CurveCheck(True)


def make_certificate(T: Triangulation, D: DualGraph, C: DualCycle, **stats) -> CollinearCertificate:
    cls = classify(D, C)
    F = [v for v, s in enumerate(cls.status) if s == CARESSED]
    Fp = independent_caressed_set(T, F)
    if len(Fp) < math.ceil(len(F) / 6):
        raise InvariantError("independent set below the 1/6 guarantee", size=len(Fp), caressed=len(F))
    curve = cycle_to_curve(T, D, C, Fp)
    S = tuple(sorted(Fp))
    full = {"n": T.n, "Delta": T.max_degree(), "len_final": C.length, "kappa_final": cls.kappa, "S": len(S)}
    full.update(stats)
    return CollinearCertificate(S, curve, full)


def upper_bound_check(T: Triangulation, D: DualGraph, cert: CollinearCertificate,
                      time_limit: Optional[float] = None) -> bool:
    """|S| <= circumference of the dual."""
    best = longest_cycle_exact(D, time_limit)
    if not best.optimal:
        raise InvariantError("circumference not certified within the time limit", lower_bound=best.length)
    return len(cert.S) <= best.length
