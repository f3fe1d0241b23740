"""Simple cycles in the dual: validation, sides, exact and heuristic search.

A simple cycle of a plane graph is the same thing as a bond of its dual, so
a cycle is equivalently described by the set of dual faces on one side of it.
Both views are used here: the exact search works on vertex sequences and the
heuristic and the surgery work on face sets.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .dual import DualGraph


class NotACycle(ValueError):
    pass


def canonical_sequence(seq: Sequence[int]) -> Tuple[int, ...]:
    """Lexicographically smallest rotation or reflection of a cyclic sequence."""
    n = len(seq)
    best = None
    for s in (list(seq), list(reversed(seq))):
        for i in range(n):
            cand = tuple(s[i:] + s[:i])
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class DualCycle:
    """A simple cycle with a chosen interior side.

    ``vertex_seq`` is canonical; ``ccw`` tells whether the interior lies to
    the left when walking ``vertex_seq`` in the stored order.
    """

    vertex_seq: Tuple[int, ...]
    ccw: bool
    interior_faces: FrozenSet[int]
    exterior_faces: FrozenSet[int]
    edge_set: FrozenSet[int]
    optimal: Optional[bool] = field(default=None, compare=False)

    @property
    def length(self) -> int:
        return len(self.vertex_seq)

    def oriented(self) -> Tuple[int, ...]:
        """Vertex sequence walked with the interior on the left."""
        return self.vertex_seq if self.ccw else tuple(reversed(self.vertex_seq))

    def side_of(self, face: int) -> int:
        return 0 if face in self.interior_faces else 1

    def flipped(self) -> "DualCycle":
        """Same cycle with interior and exterior exchanged."""
        return DualCycle(self.vertex_seq, not self.ccw, self.exterior_faces, self.interior_faces, self.edge_set,
                         self.optimal)

    def to_json(self) -> dict:
        return {"cycle": list(self.oriented())}


def face_adjacency(D: DualGraph) -> List[List[int]]:
    adj: List[Set[int]] = [set() for _ in range(D.n_faces)]
    for e in range(D.n_edges):
        a, b = D.edge_faces(e)
        adj[a].add(b)
        adj[b].add(a)
    return [sorted(s) for s in adj]


def _check_sequence(D: DualGraph, seq: Sequence[int]) -> None:
    if len(seq) < 3:
        raise NotACycle(f"a cycle needs at least 3 vertices, got {len(seq)}")
    if len(set(seq)) != len(seq):
        dup = next(v for v in seq if list(seq).count(v) > 1)
        raise NotACycle(f"not simple: vertex {dup} repeats")
    for i, f in enumerate(seq):
        g = seq[(i + 1) % len(seq)]
        if not 0 <= f < D.n_vertices or g not in D.rotations[f]:
            raise NotACycle(f"not a cycle in D: {f} and {g} are not adjacent")


def is_simple_cycle(D: DualGraph, seq: Sequence[int]) -> bool:
    try:
        _check_sequence(D, seq)
    except NotACycle:
        return False
    return True


def orient_and_partition(D: DualGraph, seq: Sequence[int], optimal: Optional[bool] = None) -> DualCycle:
    """Validate ``seq`` and split the dual faces into the two sides.

    The side to the left of the walk ``seq`` becomes the interior.
    """
    seq = list(seq)
    if len(seq) > 1 and seq[0] == seq[-1]:
        seq = seq[:-1]
    _check_sequence(D, seq)
    m = len(seq)
    edges = frozenset(D.edge_id(seq[i], seq[(i + 1) % m]) for i in range(m))
    left = {D.left_face[(seq[i], seq[(i + 1) % m])] for i in range(m)}
    right = {D.left_face[(seq[(i + 1) % m], seq[i])] for i in range(m)}

    side = [-1] * D.n_faces
    comps = 0
    for start in range(D.n_faces):
        if side[start] >= 0:
            continue
        side[start] = comps
        stack = [start]
        while stack:
            x = stack.pop()
            for e in D.face_edges[x]:
                if e in edges:
                    continue
                a, b = D.edge_faces(e)
                y = b if a == x else a
                if side[y] < 0:
                    side[y] = comps
                    stack.append(y)
        comps += 1
    left_ids = {side[f] for f in left}
    right_ids = {side[f] for f in right}
    if comps != 2 or len(left_ids) != 1 or len(right_ids) != 1 or left_ids == right_ids:
        raise NotACycle("sequence does not separate the faces into two sides")
    lid = left_ids.pop()
    interior = frozenset(f for f in range(D.n_faces) if side[f] == lid)
    exterior = frozenset(f for f in range(D.n_faces) if side[f] != lid)
    canon = canonical_sequence(seq)
    # the interior is on the left of canon iff canon walks in the same direction as seq
    i = seq.index(canon[0])
    ccw = seq[(i + 1) % m] == canon[1]
    return DualCycle(canon, ccw, interior, exterior, edges, optimal)


def cut_is_bond(D: DualGraph, side: Iterable[int], adjacency=None) -> bool:
    """True iff both the face set and its complement are nonempty and connected."""
    side = set(side)
    if not side or len(side) == D.n_faces:
        return False
    adj = adjacency or face_adjacency(D)
    for part in (side, set(range(D.n_faces)) - side):
        start = next(iter(part))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in part and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(part):
            return False
    return True


def cycle_from_side(D: DualGraph, side: Iterable[int], optimal: Optional[bool] = None) -> DualCycle:
    """The boundary cycle of a face set, with that face set as interior."""
    side = frozenset(side)
    if not cut_is_bond(D, side):
        raise NotACycle("face set or its complement is empty or disconnected")
    cut = [e for e in range(D.n_edges) if (D.edge_faces(e)[0] in side) != (D.edge_faces(e)[1] in side)]
    incident: Dict[int, List[int]] = {}
    for e in cut:
        f, g = D.edge_list[e]
        incident.setdefault(f, []).append(g)
        incident.setdefault(g, []).append(f)
    if any(len(v) != 2 for v in incident.values()):
        raise NotACycle("boundary of the face set is not a simple cycle")
    start = min(incident)
    seq = [start]
    prev, cur = start, min(incident[start])
    while cur != start:
        seq.append(cur)
        a, b = incident[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(seq) != len(incident):
        raise NotACycle("boundary of the face set has several components")
    if D.left_face[(seq[0], seq[1])] not in side:
        seq = [seq[0]] + seq[:0:-1]
    return orient_and_partition(D, seq, optimal)


# -- exact search ---------------------------------------------------------------

class _Timeout(Exception):
    pass


class _Search:
    def __init__(self, D: DualGraph, time_limit: Optional[float], node_limit: Optional[int] = None):
        self.adj = [sorted(r) for r in D.rotations]
        self.n = D.n_vertices
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.node_limit = node_limit
        self.ticks = 0

    def tick(self):
        self.ticks += 1
        if self.node_limit is not None and self.ticks > self.node_limit:
            raise _Timeout
        if self.deadline is not None and self.ticks % 2048 == 0 and time.monotonic() > self.deadline:
            raise _Timeout

    def reach(self, head, s, on_path):
        """Vertices reachable from ``head`` avoiding the path, and whether s is re-enterable."""
        seen = set()
        stack = [head]
        back = False
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y == s and x != head:
                    back = True
                if y < s or on_path[y] or y in seen:
                    continue
                seen.add(y)
                stack.append(y)
        return seen, back

    def run(self, s, target, exact, on_found):
        """DFS over paths from s through vertices > s in ascending neighbour order.

        With ``exact`` only cycles of length == target are reported, otherwise
        any cycle of length >= target.  ``on_found`` returns True to stop.
        """
        adj = self.adj
        on_path = [False] * self.n
        on_path[s] = True
        path = [s]

        def dfs(head):
            self.tick()
            L = len(path)
            if L >= 3 and s in adj[head] and (L == target if exact else L >= target):
                if on_found(list(path)):
                    return True
            if exact and L >= target:
                return False
            reach, back = self.reach(head, s, on_path)
            if not back and not (s in adj[head]):
                return False
            if L + len(reach) < target:
                return False
            branches = adj[head]
            if L + len(reach) == target:
                # every reachable vertex must be used: vertices with exactly two usable
                # neighbours force both edges; forced edges may not overload a vertex
                # or close a cycle early
                cap = {y: 2 for y in reach}
                cap[head] = 1 if L > 1 else 2
                if L > 1:
                    cap[s] = cap.get(s, 0) + 1
                load = dict.fromkeys(cap, 0)
                parent = {y: y for y in cap}

                def find(x):
                    while parent[x] != x:
                        parent[x] = parent[parent[x]]
                        x = parent[x]
                    return x

                forced_edges = set()
                for y in reach:
                    usable = [z for z in adj[y] if z in cap]
                    if len(usable) < 2:
                        return False
                    if len(usable) == 2:
                        for z in usable:
                            forced_edges.add((min(y, z), max(y, z)))
                for a, b in forced_edges:
                    load[a] += 1
                    load[b] += 1
                    if load[a] > cap[a] or load[b] > cap[b]:
                        return False
                    ra, rb = find(a), find(b)
                    if ra == rb and not (L == 1 and len(forced_edges) == len(cap)):
                        return False
                    parent[ra] = rb
                forced = [y for y in adj[head] if y in reach and (min(head, y), max(head, y)) in forced_edges]
                if len(forced) > cap[head]:
                    return False
                if forced:
                    branches = forced[:1] if L > 1 else branches
            for y in branches:
                if y > s and not on_path[y]:
                    on_path[y] = True
                    path.append(y)
                    if dfs(y):
                        return True
                    path.pop()
                    on_path[y] = False
            return False

        return dfs(s)


def longest_cycle_exact(D: DualGraph, time_limit: Optional[float] = None,
                        node_limit: Optional[int] = None) -> DualCycle:
    """A maximum-length simple cycle; ties go to the smallest canonical sequence.

    If ``time_limit`` (seconds) or ``node_limit`` (search nodes, deterministic)
    runs out, the best cycle found so far is returned with ``optimal=False``.
    """
    import sys

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * D.n_vertices + 1000))
    search = _Search(D, time_limit, node_limit)
    n = D.n_vertices
    best = list(max(D.faces, key=lambda f: (len(f), [-x for x in sorted(f)])))
    guess = long_cycle_heuristic(D, 0)
    if guess.length > len(best):
        best = list(guess.vertex_seq)
    best_len = len(best)
    timed_out = False

    # Hamiltonian first: the lexicographically first hit from vertex 0 is the answer
    ham = []
    try:
        search.run(0, n, True, lambda path: ham.append(path) or True)
    except _Timeout:
        return orient_and_partition(D, best, optimal=False)
    if ham:
        return orient_and_partition(D, ham[0], optimal=True)

    try:
        for s in range(n):
            if best_len == n:
                break
            if n - s <= best_len:
                break

            def found(path):
                nonlocal best, best_len
                if len(path) > best_len:
                    best, best_len = path, len(path)
                    return True
                return False

            while True:
                before = best_len
                search.run(s, best_len + 1, False, found)
                if best_len == before or best_len == n - s:
                    break
    except _Timeout:
        timed_out = True

    if not timed_out:
        result = None
        try:
            for s in range(n):
                if n - s < best_len:
                    break
                hit = []

                def first(path):
                    hit.append(path)
                    return True

                search.run(s, best_len, True, first)
                if hit:
                    result = hit[0]
                    break
        except _Timeout:
            timed_out = True
        if result is not None:
            best = result
    cyc = orient_and_partition(D, best, optimal=not timed_out)
    return cyc


# -- heuristic ----------------------------------------------------------------

def long_cycle_heuristic(D: DualGraph, seed: int = 0, rounds: int = 60) -> DualCycle:
    """Local search over face bipartitions whose boundary is a simple cycle.

    Starts from the longest facial boundary and flips single faces across
    the cycle while both sides stay connected, preferring moves that make
    the cycle longer.  Plateau moves are taken with probability depending on
    the seed so different seeds explore different cycles.
    """
    rng = random.Random(seed)
    adj = face_adjacency(D)
    nf = D.n_faces
    start = max(range(nf), key=lambda f: (len(adj[f]), -f))
    side = {start}

    def cut_size(s):
        return sum(1 for x in s for y in adj[x] if y not in s)

    length = cut_size(side)
    best_side, best_len = set(side), length
    for _ in range(rounds):
        order = list(range(nf))
        rng.shuffle(order)
        improved = False
        for x in order:
            inside = x in side
            same = sum(1 for y in adj[x] if (y in side) == inside)
            gain = same - (len(adj[x]) - same)
            touches = any((y in side) != inside for y in adj[x])
            if not touches or gain < 0 or (gain == 0 and rng.random() < 0.5):
                continue
            trial = side - {x} if inside else side | {x}
            if not cut_is_bond(D, trial, adj):
                continue
            side = trial
            length += gain
            if gain > 0:
                improved = True
            if length > best_len:
                best_side, best_len = set(side), length
        if not improved and rng.random() < 0.3:
            side, length = set(best_side), best_len
    return cycle_from_side(D, best_side)
