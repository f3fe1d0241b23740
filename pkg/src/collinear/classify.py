"""Touched, pinched and caressed faces of the dual with respect to a cycle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .cycles import DualCycle
from .dual import DualGraph
from .embedding import Triangulation

UNTOUCHED, CARESSED, PINCHED = "untouched", "caressed", "pinched"

Item = Tuple[str, int]  # ("v", dual vertex) or ("e", dual edge)


@dataclass(frozen=True)
class FaceTrace:
    face_id: int
    components: Tuple[Tuple[Item, ...], ...]
    is_full_cycle: bool

    @property
    def status(self) -> str:
        if not self.components:
            return UNTOUCHED
        if self.is_full_cycle or len(self.components) >= 2:
            return PINCHED
        return CARESSED


def trace_face(D: DualGraph, C: DualCycle, f: int) -> FaceTrace:
    """Connected pieces of f ∩ C along the boundary walk of face f."""
    on_cycle = set(C.vertex_seq)
    items: List[Item] = []
    for v, e in zip(D.faces[f], D.face_edges[f]):
        items.append(("v", v))
        items.append(("e", e))
    present = [(kind == "v" and x in on_cycle) or (kind == "e" and x in C.edge_set) for kind, x in items]
    if all(present):
        return FaceTrace(f, (tuple(items),), True)
    if not any(present):
        return FaceTrace(f, (), False)
    m = len(items)
    start = next(i for i in range(m) if not present[i])
    comps = []
    run: List[Item] = []
    for k in range(1, m + 1):
        i = (start + k) % m
        if present[i]:
            run.append(items[i])
        elif run:
            comps.append(tuple(run))
            run = []
    if run:
        comps.append(tuple(run))
    return FaceTrace(f, tuple(comps), False)


@dataclass(frozen=True)
class Classification:
    status: Tuple[str, ...]
    traces: Tuple[FaceTrace, ...]
    tau: int
    rho: int
    kappa: int
    per_side: Dict[int, Dict[str, int]]

    def faces_with(self, status: str) -> List[int]:
        return [f for f, s in enumerate(self.status) if s == status]

    @property
    def caressed(self) -> frozenset:
        return frozenset(self.faces_with(CARESSED))

    def to_json(self) -> dict:
        return {
            "tau": self.tau,
            "rho": self.rho,
            "kappa": self.kappa,
            "per_side": {str(i): dict(c) for i, c in self.per_side.items()},
            "status": list(self.status),
        }


def classify(D: DualGraph, C: DualCycle) -> Classification:
    traces = tuple(trace_face(D, C, f) for f in range(D.n_faces))
    status = tuple(t.status for t in traces)
    per_side = {i: {"tau": 0, "rho": 0, "kappa": 0} for i in (0, 1)}
    for f, st in enumerate(status):
        if st == UNTOUCHED:
            continue
        side = per_side[C.side_of(f)]
        side["tau"] += 1
        side["rho" if st == PINCHED else "kappa"] += 1
    rho = status.count(PINCHED)
    kappa = status.count(CARESSED)
    return Classification(status, traces, rho + kappa, rho, kappa, per_side)


def check_touched_lower_bound(T: Triangulation, cls: Classification, C: DualCycle) -> bool:
    """tau >= 2*len/Delta with at least len/Delta touched faces on each side."""
    delta, ell = T.max_degree(), C.length
    return (
        cls.tau * delta >= 2 * ell
        and cls.per_side[0]["tau"] * delta >= ell
        and cls.per_side[1]["tau"] * delta >= ell
    )
