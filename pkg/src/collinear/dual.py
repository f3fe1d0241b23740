"""The plane dual of a triangulation and the structural checks it must pass."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .embedding import InvariantError, Triangulation, trace_faces


@dataclass(frozen=True)
class DualGraph:
    """A plane graph with clockwise rotations, its faces and dual edge ids.

    For a graph produced by :func:`dualize`, dual vertex ids are primal face
    ids, dual edge ids are primal edge ids and dual face ids are primal vertex
    ids, so ``edge_corr`` and ``face_corr`` are identity pairings.
    """

    rotations: Tuple[Tuple[int, ...], ...]
    edge_list: Tuple[Tuple[int, int], ...]
    edge_index: Dict[Tuple[int, int], int]
    faces: Tuple[Tuple[int, ...], ...]
    face_edges: Tuple[Tuple[int, ...], ...]
    left_face: Dict[Tuple[int, int], int]
    edge_corr: Tuple[Tuple[int, int], ...] = ()
    face_corr: Tuple[Tuple[int, int], ...] = ()

    @property
    def n_vertices(self) -> int:
        return len(self.rotations)

    @property
    def n_edges(self) -> int:
        return len(self.edge_list)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def edge_id(self, f: int, g: int) -> int:
        return self.edge_index[(min(f, g), max(f, g))]

    def neighbors(self, f: int) -> Tuple[int, ...]:
        return self.rotations[f]

    def edge_faces(self, e: int) -> Tuple[int, int]:
        """The two faces on either side of edge ``e``."""
        f, g = self.edge_list[e]
        return self.left_face[(f, g)], self.left_face[(g, f)]

    @classmethod
    def from_rotations(cls, rotations: Sequence[Sequence[int]]) -> "DualGraph":
        """Generic plane graph from a rotation system; ids follow face-walk order."""
        rotations = tuple(tuple(r) for r in rotations)
        edges = sorted({(min(u, v), max(u, v)) for u, rot in enumerate(rotations) for v in rot})
        index = {e: i for i, e in enumerate(edges)}
        walks, left = trace_faces(rotations)
        faces = tuple(tuple(d[0] for d in w) for w in walks)
        face_edges = tuple(tuple(index[(min(d), max(d))] for d in w) for w in walks)
        return cls(rotations, tuple(edges), index, faces, face_edges, left)

    def to_json(self) -> dict:
        return {
            "n": self.n_vertices,
            "rotations": [list(r) for r in self.rotations],
            "edge_corr": [list(p) for p in self.edge_corr],
        }


def dualize(T: Triangulation) -> DualGraph:
    rotations = []
    for face in T.face_list:
        a, b, c = face.boundary
        across = [T.face_of_dart[(y, x)] for x, y in ((a, b), (b, c), (c, a))]
        rotations.append(tuple(reversed(across)))
    rotations = tuple(rotations)

    edge_list = [None] * len(T.edges)
    for eid, (u, v) in enumerate(T.edges):
        f, g = T.face_of_dart[(u, v)], T.face_of_dart[(v, u)]
        edge_list[eid] = (min(f, g), max(f, g))
    edge_index = {e: i for i, e in enumerate(edge_list)}
    if len(edge_index) != len(edge_list):
        raise InvariantError("two primal edges separate the same pair of faces")

    walks, dart_face = trace_faces(rotations)
    if len(walks) != T.n:
        raise InvariantError("dual face count differs from primal vertex count", faces=len(walks), n=T.n)
    faces: List[Optional[tuple]] = [None] * T.n
    face_edges: List[Optional[tuple]] = [None] * T.n
    walk_to_vertex = {}
    for wid, walk in enumerate(walks):
        common = set(T.face_list[walk[0][0]].boundary)
        for f, _ in walk[1:]:
            common &= set(T.face_list[f].boundary)
        if len(common) != 1:
            raise InvariantError("dual face is not the star of a single primal vertex", walk=wid)
        v = common.pop()
        walk_to_vertex[wid] = v
        faces[v] = tuple(d[0] for d in walk)
        face_edges[v] = tuple(edge_index[(min(d), max(d))] for d in walk)
    left = {d: walk_to_vertex[w] for d, w in dart_face.items()}
    return DualGraph(
        rotations,
        tuple(edge_list),
        edge_index,
        tuple(faces),
        tuple(face_edges),
        left,
        edge_corr=tuple((i, i) for i in range(len(edge_list))),
        face_corr=tuple((v, v) for v in range(T.n)),
    )


def _adjacency(graph) -> List[Tuple[int, ...]]:
    if isinstance(graph, DualGraph):
        return list(graph.rotations)
    return [tuple(nb) for nb in graph]


def check_three_connected(graph) -> bool:
    """True iff deleting any two vertices leaves the graph connected.

    Accepts a :class:`DualGraph` or a plain adjacency list.  Exhaustive over
    vertex pairs, so cubic in the vertex count.
    """
    adj = _adjacency(graph)
    n = len(adj)
    if n < 4:
        return False

    def connected_without(removed):
        start = next(v for v in range(n) if v not in removed)
        seen = {start} | set(removed)
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    if not connected_without(()):
        return False
    return all(connected_without(pair) for pair in combinations(range(n), 2))


@dataclass(frozen=True)
class SharedEdgeCheck:
    ok: bool
    witness: Optional[Tuple[int, int]] = None
    shared: Tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


def verify_shared_edge_bound(D: DualGraph) -> SharedEdgeCheck:
    """Every pair of faces shares at most one edge; otherwise return a witness pair."""
    by_pair: Dict[Tuple[int, int], List[int]] = {}
    for e in range(D.n_edges):
        a, b = D.edge_faces(e)
        by_pair.setdefault((min(a, b), max(a, b)), []).append(e)
    for pair in sorted(by_pair):
        if len(by_pair[pair]) > 1 or pair[0] == pair[1]:
            return SharedEdgeCheck(False, pair, tuple(by_pair[pair]))
    return SharedEdgeCheck(True)


def is_cubic(D: DualGraph) -> bool:
    return all(len(r) == 3 for r in D.rotations)
