"""Combinatorially embedded plane triangulations.

A triangulation is stored as a rotation system: for every vertex the
clockwise cyclic order of its neighbours.  The face to the left of a dart
``(u, v)`` is traced by repeatedly stepping to ``(v, w)`` where ``w`` is the
clockwise successor of ``u`` around ``v``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple


class InvalidInstance(ValueError):
    """Raised when an instance file or rotation system is not a valid triangulation."""


class InvariantError(RuntimeError):
    """An internal invariant failed; carries a JSON-serialisable diagnostic."""

    def __init__(self, message: str, **diagnostic):
        super().__init__(message)
        self.diagnostic = {"error": message, **diagnostic}


@dataclass(frozen=True)
class PrimalFace:
    id: int
    boundary: Tuple[int, int, int]
    boundary_edges: Tuple[int, int, int]


def trace_faces(rotations: Sequence[Sequence[int]]) -> Tuple[List[List[Tuple[int, int]]], Dict[Tuple[int, int], int]]:
    """Trace every face of a rotation system.

    Darts are visited in lexicographic order and each unvisited dart starts a
    new face, so face ids are a pure function of the rotation system.
    Returns the dart lists of the faces and the map dart -> face id.
    """
    position = [{w: i for i, w in enumerate(rot)} for rot in rotations]
    darts = sorted((u, v) for u, rot in enumerate(rotations) for v in rot)
    face_of: Dict[Tuple[int, int], int] = {}
    walks: List[List[Tuple[int, int]]] = []
    for start in darts:
        if start in face_of:
            continue
        walk = []
        u, v = start
        while (u, v) not in face_of:
            face_of[(u, v)] = len(walks)
            walk.append((u, v))
            rot = rotations[v]
            w = rot[(position[v][u] + 1) % len(rot)]
            u, v = v, w
        if (u, v) != start:
            raise InvalidInstance(f"face walk from dart {start} does not close")
        walks.append(walk)
    return walks, face_of


@dataclass(frozen=True)
class Triangulation:
    """A plane triangulation given by its clockwise rotation system."""

    n: int
    rotations: Tuple[Tuple[int, ...], ...]
    edges: Tuple[Tuple[int, int], ...] = field(init=False, repr=False, compare=False)
    edge_index: Dict[Tuple[int, int], int] = field(init=False, repr=False, compare=False)
    face_list: Tuple[PrimalFace, ...] = field(init=False, repr=False, compare=False)
    face_of_dart: Dict[Tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rotations = tuple(tuple(int(w) for w in rot) for rot in self.rotations)
        object.__setattr__(self, "rotations", rotations)
        _validate_simple(self.n, rotations)
        edges = sorted({(min(u, v), max(u, v)) for u, rot in enumerate(rotations) for v in rot})
        edge_index = {e: i for i, e in enumerate(edges)}
        walks, face_of = trace_faces(rotations)
        faces = []
        for fid, walk in enumerate(walks):
            if len(walk) != 3:
                raise InvalidInstance(
                    f"non-triangular face {fid} of length {len(walk)}: vertices {[d[0] for d in walk]}"
                )
            verts = tuple(d[0] for d in walk)
            eids = tuple(edge_index[(min(d), max(d))] for d in walk)
            faces.append(PrimalFace(fid, verts, eids))
        if len(edges) != 3 * self.n - 6 or len(faces) != 2 * self.n - 4:
            raise InvalidInstance(
                f"Euler check failed: n={self.n}, edges={len(edges)}, faces={len(faces)} (not a sphere embedding)"
            )
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "edge_index", edge_index)
        object.__setattr__(self, "face_list", tuple(faces))
        object.__setattr__(self, "face_of_dart", face_of)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_faces(cls, n: int, triangles: Sequence[Sequence[int]]) -> "Triangulation":
        """Build from consistently oriented triangles (each face on the left of its darts)."""
        succ: Dict[int, Dict[int, int]] = {v: {} for v in range(n)}
        for a, b, c in triangles:
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                # face (x, y, z): z is the clockwise successor of x around y
                if x in succ[y]:
                    raise InvalidInstance(f"dart ({x}, {y}) used by two faces")
                succ[y][x] = z
        rotations = []
        for v in range(n):
            if not succ[v]:
                raise InvalidInstance(f"vertex {v} lies on no face")
            start = min(succ[v])
            rot = [start]
            w = succ[v][start]
            while w != start:
                rot.append(w)
                if len(rot) > len(succ[v]):
                    raise InvalidInstance(f"neighbourhood of vertex {v} is not a single fan")
                w = succ[v][w]
            if len(rot) != len(succ[v]):
                raise InvalidInstance(f"neighbourhood of vertex {v} is not a single fan")
            rotations.append(rot)
        return cls(n, rotations)

    # -- queries --------------------------------------------------------------

    def faces(self) -> List[PrimalFace]:
        return list(self.face_list)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def max_degree(self) -> int:
        return max(len(rot) for rot in self.rotations)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.rotations[v]

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[(min(u, v), max(u, v))]

    def face_id(self, vertices) -> int:
        """Id of the face with the given vertex triple (any order)."""
        key = frozenset(vertices)
        for f in self.face_list:
            if frozenset(f.boundary) == key:
                return f.id
        raise KeyError(f"no face with vertices {sorted(key)}")

    def to_json(self) -> dict:
        return {"n": self.n, "rotations": [list(r) for r in self.rotations]}


def max_degree(T: Triangulation) -> int:
    return T.max_degree()


def faces(T: Triangulation) -> List[PrimalFace]:
    return T.faces()


def _validate_simple(n, rotations):
    if not isinstance(n, int) or n < 4:
        raise InvalidInstance(f"need n >= 4 vertices, got {n!r}")
    if len(rotations) != n:
        raise InvalidInstance(f"rotations has length {len(rotations)}, expected n={n}")
    nbrs = []
    for v, rot in enumerate(rotations):
        s = set(rot)
        if len(s) != len(rot):
            raise InvalidInstance(f"parallel edges at vertex {v}: rotation {list(rot)}")
        if v in s:
            raise InvalidInstance(f"loop at vertex {v}")
        for w in rot:
            if not 0 <= w < n:
                raise InvalidInstance(f"vertex {v} has out-of-range neighbour {w}")
        if len(rot) < 3:
            raise InvalidInstance(f"vertex {v} has degree {len(rot)} < 3")
        nbrs.append(s)
    for v, s in enumerate(nbrs):
        for w in s:
            if v not in nbrs[w]:
                raise InvalidInstance(f"adjacency not symmetric: {v}->{w} without {w}->{v}")
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in nbrs[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        missing = min(set(range(n)) - seen)
        raise InvalidInstance(f"graph is disconnected: vertex {missing} unreachable from 0")


def parse_triangulation(text: str) -> Triangulation:
    """Parse the JSON instance format ``{"n": int, "rotations": [[...], ...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"syntax error: {exc}") from exc
    if not isinstance(data, dict) or "n" not in data or "rotations" not in data:
        raise InvalidInstance('syntax error: expected an object with keys "n" and "rotations"')
    n, rotations = data["n"], data["rotations"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidInstance(f'syntax error: "n" must be an integer, got {n!r}')
    if not isinstance(rotations, list) or not all(
        isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in r) for r in rotations
    ):
        raise InvalidInstance('syntax error: "rotations" must be a list of integer lists')
    return Triangulation(n, rotations)


def triangulation_from_plane_cubic(rotations: Sequence[Sequence[int]]) -> Tuple[Triangulation, Dict[int, int]]:
    """Dual of a plane cubic graph, as a triangulation.

    Returns the triangulation and the map cubic vertex -> triangulation face id.
    Faces of the cubic graph become triangulation vertices in face-walk order.
    """
    walks, face_of = trace_faces(rotations)
    prim_rot = []
    for walk in walks:
        across = [face_of[(v, u)] for u, v in walk]
        prim_rot.append(list(reversed(across)))
    T = Triangulation(len(walks), prim_rot)
    corr = {}
    for x, rot in enumerate(rotations):
        corr[x] = T.face_id(face_of[(x, w)] for w in rot)
    return T, corr
