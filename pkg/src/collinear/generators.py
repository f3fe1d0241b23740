"""Instance families: Platonic solids, random stacked and flipped triangulations,
and two constructed families (serpentine, pinwheel) whose dual cycles have
known classification counts.
"""

from __future__ import annotations

import itertools
import random
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull

from .auxtrees import analyze
from .classify import classify
from .cycles import orient_and_partition
from .dual import check_three_connected, dualize
from .embedding import InvalidInstance, InvariantError, Triangulation, triangulation_from_plane_cubic


# -- convex polytopes --------------------------------------------------------------

def _from_hull(points) -> Triangulation:
    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    center = pts.mean(axis=0)
    tris = []
    for simplex in hull.simplices:
        a, b, c = (int(x) for x in simplex)
        normal = np.cross(pts[b] - pts[a], pts[c] - pts[a])
        if np.dot(normal, pts[a] - center) < 0:
            b, c = c, b
        tris.append((a, b, c))
    return Triangulation.from_faces(len(pts), sorted(tris))


def tetrahedron() -> Triangulation:
    return Triangulation.from_faces(4, [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])


def octahedron() -> Triangulation:
    pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    return _from_hull(pts)


def icosahedron() -> Triangulation:
    phi = (1 + 5 ** 0.5) / 2
    pts = []
    for s1, s2 in itertools.product((1, -1), repeat=2):
        pts += [(0, s1, s2 * phi), (s1, s2 * phi, 0), (s2 * phi, 0, s1)]
    return _from_hull(sorted(pts))


# -- mutable rotation systems for random families ------------------------------------

class _Builder:
    """Clockwise rotation lists that support vertex insertion and edge flips."""

    def __init__(self, T: Triangulation):
        self.rot: List[List[int]] = [list(r) for r in T.rotations]

    def succ(self, v, u):
        r = self.rot[v]
        return r[(r.index(u) + 1) % len(r)]

    def insert_after(self, v, anchor, w):
        r = self.rot[v]
        r.insert(r.index(anchor) + 1, w)

    def faces(self):
        out = set()
        for u, r in enumerate(self.rot):
            for v in r:
                w = self.succ(v, u)
                tri = (u, v, w)
                k = tri.index(min(tri))
                out.add(tri[k:] + tri[:k])
        return sorted(out)

    def stack(self, face):
        """Insert a new vertex into the face (a, b, c) (face on the left of a->b)."""
        a, b, c = face
        w = len(self.rot)
        self.insert_after(b, a, w)
        self.insert_after(c, b, w)
        self.insert_after(a, c, w)
        self.rot.append([a, c, b])
        return w

    def flip(self, u, v) -> bool:
        x = self.succ(v, u)
        y = self.succ(u, v)
        if x == y or x in self.rot[y] or len(self.rot[u]) <= 3 or len(self.rot[v]) <= 3:
            return False
        self.rot[u].remove(v)
        self.rot[v].remove(u)
        self.insert_after(x, v, y)
        self.insert_after(y, u, x)
        return True

    def build(self) -> Triangulation:
        return Triangulation(len(self.rot), self.rot)


def random_stacked(n: int, seed: int = 0) -> Triangulation:
    """Start from the tetrahedron and stack vertices into uniformly chosen faces."""
    if n < 4:
        raise InvalidInstance(f"random_stacked needs n >= 4, got {n}")
    rng = random.Random(seed)
    b = _Builder(tetrahedron())
    while len(b.rot) < n:
        b.stack(rng.choice(b.faces()))
    return b.build()


def random_flip(n: int, flips: int | None = None, seed: int = 0) -> Triangulation:
    """A random stacked triangulation followed by ``flips`` attempted random edge flips."""
    rng = random.Random(seed)
    b = _Builder(random_stacked(n, seed))
    if flips is None:
        flips = 4 * n
    for _ in range(flips):
        u = rng.randrange(len(b.rot))
        v = rng.choice(b.rot[u])
        b.flip(u, v)
    return b.build()


def stacked_in_one_face(k: int) -> Triangulation:
    """Tetrahedron with k vertices stacked repeatedly into faces around vertex 0."""
    b = _Builder(tetrahedron())
    face = (0, 1, 2)
    for _ in range(k):
        w = b.stack(face)
        face = (0, face[1], w)
    return b.build()


# -- constructed families ----------------------------------------------------------

def _cycle_with_chords(L: int, partner: Dict[int, int], inside: Sequence[bool]) -> List[List[int]]:
    """Rotations of a cubic plane graph: the cycle 0..L-1 walked with its interior
    on the left, each vertex x carrying one chord to ``partner[x]`` drawn inside
    when ``inside[x]`` and outside otherwise."""
    rot = []
    for x in range(L):
        p, q, t = (x - 1) % L, (x + 1) % L, partner[x]
        rot.append([q, p, t] if inside[x] else [q, t, p])
    return rot


def _tokens_to_cubic(tokens: Sequence[Tuple[str, int]]) -> List[List[int]]:
    """Cubic plane graph on a cycle of labelled vertices, walked with the interior on the left.

    ``("K", i)`` tokens come in pairs joined by an inside chord; ``("a", j)``,
    ``("b", j)``, ``("c", j)`` attach to an inside vertex y_j (rotation a, b, c);
    each ``("E", 0)`` token gets a spoke to its own vertex on an outer ring.
    """
    L = len(tokens)
    tripods = sorted({j for kind, j in tokens if kind in "abc"})
    y_id = {j: L + t for t, j in enumerate(tripods)}
    es = [x for x, (kind, _) in enumerate(tokens) if kind == "E"]
    w_id = {x: L + len(tripods) + t for t, x in enumerate(es)}
    third: Dict[int, int] = dict(w_id)
    ks: Dict[int, List[int]] = {}
    for x, (kind, j) in enumerate(tokens):
        if kind == "K":
            ks.setdefault(j, []).append(x)
        elif kind in "abc":
            third[x] = y_id[j]
    for a, b in ks.values():
        third[a], third[b] = b, a
    rot = _cycle_with_chords(L, third, [kind != "E" for kind, _ in tokens])
    for j in tripods:
        where = {kind: x for x, (kind, jj) in enumerate(tokens) if jj == j and kind in "abc"}
        rot.append([where["a"], where["b"], where["c"]])
    m = len(es)
    for t, x in enumerate(es):
        rot.append([x, w_id[es[(t + 1) % m]], w_id[es[t - 1]]])
    return rot


def serpentine_with_cycle(k: int) -> Tuple[Triangulation, Tuple[int, ...]]:
    """Triangulation whose dual has a Hamiltonian cycle caressing exactly four faces.

    The dual is a cycle of length 4k with parallel chords inside and outside.
    Inside, chords pair x with 2 - x (x even), so the interior faces form a strip
    f_0..f_k; outside, odd x pairs with 8 - x, giving a second strip shifted
    against the first.  Only the four strip ends are caressed; every other face
    meets the cycle in two arcs.  Returns the triangulation and the cycle as a
    dual vertex sequence with its strip-of-interior on the left.
    """
    if k < 4:
        raise InvalidInstance(f"serpentine needs k >= 4, got {k}")
    L = 4 * k
    partner = {}
    for x in range(L):
        partner[x] = (2 - x) % L if x % 2 == 0 else (8 - x) % L
    rot = _cycle_with_chords(L, partner, [x % 2 == 0 for x in range(L)])
    T, corr = triangulation_from_plane_cubic(rot)
    seq = tuple(corr[x] for x in range(L))
    kappa = classify(dualize(T), orient_and_partition(dualize(T), seq)).kappa
    if kappa != 4:
        raise InvariantError(f"serpentine({k}) cycle caresses {kappa} faces, expected 4")
    return T, seq


def serpentine(k: int) -> Triangulation:
    return serpentine_with_cycle(k)[0]


def _pinwheel_tokens(k: int) -> List[Tuple[str, int]]:
    E = ("E", 0)
    key = iter(range(10 ** 6))

    def cut():
        i = next(key)
        return [("K", i), E, ("K", i)]

    toks: List[Tuple[str, int]] = []
    for j in range(1, k + 1):
        toks += [E, ("c", j), E]
    toks += [E] + cut() + [E]
    for j in range(k, 0, -1):
        toks += [("b", j), E] + cut() + [E, ("a", j)]
        if j > 1:
            toks.append(E)
    toks += [E] + cut() + [E]
    return toks


def pinwheel_with_cycle(k: int) -> Tuple[Triangulation, Tuple[int, ...]]:
    """Triangulation with a dual cycle whose interior has one node of 2k+1 pinched
    faces, no caressed face and k+2 keeper paths.

    Inside the cycle sit k tripods (a vertex y_j off the cycle with three spokes),
    so the faces between and above the tripods are all pinched; small chords cut
    a caressed triangle off each face above a tripod and off the two end faces,
    and those chords are the keepers.  Outside, every remaining cycle vertex has
    a spoke to an outer ring.
    """
    if k < 1:
        raise InvalidInstance(f"pinwheel needs k >= 1, got {k}")
    tokens = _pinwheel_tokens(k)
    T, corr = triangulation_from_plane_cubic(_tokens_to_cubic(tokens))
    seq = tuple(corr[x] for x in range(len(tokens)))
    if not _pinwheel_ok(T, seq, k):
        raise InvariantError(f"pinwheel({k}) does not contain the expected node")
    return T, seq


def _pinwheel_ok(T, seq, k) -> bool:
    D = dualize(T)
    if not check_three_connected(D):
        return False
    C = orient_and_partition(D, seq)
    cls = classify(D, C)
    _, pair = analyze(D, C, cls, r_max=1)
    return any((u.rho, u.kappa, u.delta) == (2 * k + 1, 0, k + 2) for u in pair.side_nodes(0))


def pinwheel(k: int) -> Triangulation:
    return pinwheel_with_cycle(k)[0]


# -- dispatch ------------------------------------------------------------------------

KINDS = ("tetrahedron", "octahedron", "icosahedron", "serpentine", "pinwheel", "random_stacked", "random_flip")


def generate(kind: str, params: Dict | None = None, seed: int = 0) -> Triangulation:
    """Build an instance by family name; ``params`` holds k, n or flips as needed."""
    params = dict(params or {})
    try:
        if kind == "tetrahedron":
            return tetrahedron()
        if kind == "octahedron":
            return octahedron()
        if kind == "icosahedron":
            return icosahedron()
        if kind == "serpentine":
            return serpentine(int(params["k"]))
        if kind == "pinwheel":
            return pinwheel(int(params["k"]))
        if kind == "random_stacked":
            return random_stacked(int(params["n"]), seed)
        if kind == "random_flip":
            flips = params.get("flips")
            return random_flip(int(params["n"]), None if flips is None else int(flips), seed)
    except KeyError as exc:
        raise InvalidInstance(f"{kind} needs parameter {exc.args[0]!r}") from None
    raise InvalidInstance(f"unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")


def canonical_cycle(kind: str, k: int) -> Tuple[Triangulation, Tuple[int, ...]]:
    """A constructed family member together with the dual cycle it was built around."""
    if kind == "serpentine":
        return serpentine_with_cycle(k)
    if kind == "pinwheel":
        return pinwheel_with_cycle(k)
    raise InvalidInstance(f"{kind!r} has no canonical cycle")


def corpus(max_n: int = 40, seeds: Sequence[int] = (0, 1, 2)) -> List[Tuple[str, Triangulation]]:
    """Named instances plus random stacked and flipped triangulations, 4 <= n <= max_n."""
    out = [("tetrahedron", tetrahedron()), ("octahedron", octahedron()), ("icosahedron", icosahedron())]
    out += [(f"serpentine({k})", serpentine(k)) for k in range(4, 13)]
    out += [(f"pinwheel({k})", pinwheel(k)) for k in (1, 2, 3)]
    for n in range(4, max_n + 1):
        for seed in seeds:
            out.append((f"random_stacked({n},{seed})", random_stacked(n, seed)))
            out.append((f"random_flip({n},{seed})", random_flip(n, seed=seed)))
    return out
