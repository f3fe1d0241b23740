"""SVG drawing: Tutte embedding of the triangulation, dual regions shaded by status."""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Optional, Tuple
from xml.sax.saxutils import escape

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.linalg import spsolve

from .classify import CARESSED, PINCHED, Classification, classify
from .cycles import DualCycle
from .dual import DualGraph
from .embedding import InvariantError, Triangulation

COLORS = {CARESSED: "#2a9d8f", PINCHED: "#f4a6c6"}
SIZE = 600.0
TOL = 1e-9


def tutte_embedding(T: Triangulation) -> np.ndarray:
    """Vertex positions with primal face 0 pinned to an equilateral triangle."""
    outer = T.face_list[0].boundary
    pos = np.zeros((T.n, 2))
    r = SIZE * 0.36
    cx, cy = SIZE / 2, SIZE / 2
    for t, v in enumerate(outer):
        ang = math.pi / 2 + 2 * math.pi * t / 3
        pos[v] = (cx + r * math.cos(ang), cy - r * math.sin(ang))
    free = [v for v in range(T.n) if v not in outer]
    if not free:
        return pos
    idx = {v: i for i, v in enumerate(free)}
    rows, cols, vals = [], [], []
    rhs = np.zeros((len(free), 2))
    for v in free:
        i = idx[v]
        rows.append(i)
        cols.append(i)
        vals.append(float(T.degree(v)))
        for w in T.neighbors(v):
            if w in idx:
                rows.append(i)
                cols.append(idx[w])
                vals.append(-1.0)
            else:
                rhs[i] += pos[w]
    A = csr_matrix((vals, (rows, cols)), shape=(len(free), len(free)))
    sol = np.column_stack([spsolve(A, rhs[:, 0]), spsolve(A, rhs[:, 1])])
    resid = np.abs(A @ sol - rhs).max() / max(1.0, np.abs(rhs).max())
    if not np.all(np.isfinite(sol)) or resid > TOL:
        raise InvariantError("Tutte system is singular or ill-conditioned", residual=float(resid))
    for v in free:
        pos[v] = sol[idx[v]]
    return pos


def _fmt(p) -> str:
    return f"{float(p[0]) + 0.0:.6f},{float(p[1]) + 0.0:.6f}"


def _region(T: Triangulation, pos, centers, v) -> List:
    """Polygon of the dual face around v, clipped to the outer triangle."""
    rot = T.neighbors(v)
    corners = [T.face_of_dart[(v, w)] for w in rot]
    if 0 not in corners:
        return [centers[f] for f in corners]
    k = corners.index(0)
    corners = corners[k + 1:] + corners[:k]
    # the outer face lies between the darts (v, rot[k]) and its predecessor
    a, b = rot[k], rot[k - 1]
    return [pos[v], (pos[v] + pos[a]) / 2] + [centers[f] for f in corners] + [(pos[v] + pos[b]) / 2]


def _cycle_points(T: Triangulation, pos, centers, C: DualCycle) -> List:
    seq = list(C.oriented())
    if 0 not in seq:
        return [centers[f] for f in seq]
    k = seq.index(0)
    seq = seq[k + 1:] + seq[:k]
    mid = np.array([SIZE / 2, SIZE / 2])
    outer = T.face_list[0].boundary

    def out(p, scale):
        return mid + (p - mid) * scale

    e_in = set(T.face_list[seq[-1]].boundary) & set(outer)
    e_out = set(T.face_list[seq[0]].boundary) & set(outer)
    m_in = sum(pos[v] for v in e_in) / 2
    m_out = sum(pos[v] for v in e_out) / 2
    corner = (e_in & e_out).pop()
    return ([centers[f] for f in seq]
            + [m_in, out(m_in, 1.25), out(pos[corner], 1.2), out(m_out, 1.25), m_out])


def render_svg(T: Triangulation, D: DualGraph, C: DualCycle, cls: Optional[Classification] = None,
               S: Iterable[int] = ()) -> str:
    cls = cls or classify(D, C)
    pos = tutte_embedding(T)
    centers = {f.id: sum(pos[v] for v in f.boundary) / 3 for f in T.face_list}
    S = set(S)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:.0f}" height="{SIZE:.0f}" '
        f'viewBox="0 0 {SIZE:.0f} {SIZE:.0f}">',
        f'<title>{escape(f"n={T.n} len={C.length} kappa={cls.kappa} rho={cls.rho}")}</title>',
        '<rect width="100%" height="100%" fill="white"/>',
        '<g id="regions" stroke="none">',
    ]
    for v in range(T.n):
        color = COLORS.get(cls.status[v])
        if color:
            pts = " ".join(_fmt(p) for p in _region(T, pos, centers, v))
            out.append(f'<polygon data-vertex="{v}" data-status="{cls.status[v]}" fill="{color}" points="{pts}"/>')
    out.append('</g>')
    out.append('<g id="edges" stroke="#555" stroke-width="1">')
    for a, b in T.edges:
        out.append(f'<line x1="{pos[a][0]:.6f}" y1="{pos[a][1]:.6f}" x2="{pos[b][0]:.6f}" y2="{pos[b][1]:.6f}"/>')
    out.append('</g>')
    pts = " ".join(_fmt(p) for p in _cycle_points(T, pos, centers, C))
    out.append(f'<polygon id="cycle" fill="none" stroke="#6a1b9a" stroke-width="4" points="{pts}"/>')
    out.append('<g id="vertices">')
    for v in range(T.n):
        r, fill = (6, "#e63946") if v in S else (3, "black")
        out.append(f'<circle data-vertex="{v}" cx="{pos[v][0]:.6f}" cy="{pos[v][1]:.6f}" r="{r}" fill="{fill}"/>')
    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
