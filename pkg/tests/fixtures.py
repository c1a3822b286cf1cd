"""Code fixtures built from cubical complexes and small random codes."""

from __future__ import annotations

import numpy as np

from css_surgery import cubical
from css_surgery.codes import random_css_code
from css_surgery.csscode import CssCode, OperatorClass, classify
from css_surgery.search import min_nontrivial_weight


def edge_vector(X: cubical.OpenCubicalComplex, edges) -> np.ndarray:
    """Qubit vector of the code of ``X`` supported on the given edges."""
    kept = cubical.retained_faces(X, 1)
    index = {f: i for i, f in enumerate(kept)}
    v = np.zeros(len(kept), dtype=np.uint8)
    for a, b in edges:
        v[index[tuple(sorted((a, b)))]] = 1
    return v


def path_edges(points):
    return list(zip(points[:-1], points[1:]))


# -- star graphs: a pushout of weight-1 codes with a weight m+1 vertex -----------------------


def star_span(m: int):
    """Two graphs of ``m`` pendant edges; the apex's ``m`` vertices land on ``m``
    distinct vertices of the first graph but on one vertex of the second."""
    def pendant():
        verts = [("a", i) for i in range(m)] + [("b", i) for i in range(m)]
        edges = [(("a", i), ("b", i)) for i in range(m)]
        return cubical.OpenCubicalComplex(
            {0: tuple((v,) for v in verts), 1: tuple(edges)}, frozenset(("b", i) for i in range(m))
        )

    apex = cubical.OpenCubicalComplex({0: tuple((i,) for i in range(m))})
    C, D = pendant(), pendant()
    f = cubical.CubicalMorphism(apex, C, {i: ("a", i) for i in range(m)})
    g = cubical.CubicalMorphism(apex, D, {i: ("a", 0) for i in range(m)})
    return f, g


# -- octagonal patch: four rough sides, four smooth cut corners -------------------------------


def octagon(L: int = 6) -> cubical.OpenCubicalComplex:
    internal = [(r, c) for r in range(L) for c in range(L)]
    mid = range(1, L - 1)
    boundary = (
        [(-1, c) for c in mid] + [(L, c) for c in mid] + [(r, -1) for r in mid] + [(r, L) for r in mid]
    )
    return cubical.grid_complex(internal, boundary)


def octagon_operators(L: int = 6):
    """``(nested, line)``: a left-to-top string joined with a disjoint
    left-to-bottom string, and a straight top-to-bottom string; both lie in
    the same class."""
    X = octagon(L)
    top_left = path_edges([(1, -1), (1, 0), (1, 1), (0, 1), (-1, 1)])
    bottom_left = path_edges([(L - 2, -1), (L - 2, 0), (L - 2, 1), (L - 1, 1), (L, 1)])
    nested = edge_vector(X, top_left + bottom_left)
    col = L // 2
    line = edge_vector(X, path_edges([(r, col) for r in range(-1, L + 1)]))
    inner = edge_vector(X, top_left)
    return nested, line, inner


# -- holed patches: a merge that creates a short logical -------------------------------------


ROWS, COLS, HOLE_ROW = 7, 4, 3


def holed_patch(hole_col: int) -> cubical.OpenCubicalComplex:
    """Rough top and bottom, smooth sides, and a single-vertex rough hole."""
    internal = [(r, c) for r in range(ROWS) for c in range(COLS) if (r, c) != (HOLE_ROW, hole_col)]
    boundary = [(-1, c) for c in range(COLS)] + [(ROWS, c) for c in range(COLS)] + [(HOLE_ROW, hole_col)]
    return cubical.grid_complex(internal, boundary)


def holed_pair():
    """Codes and seam operators: the right column of one patch, whose hole
    is next to it, and the left column of the other."""
    left = holed_patch(COLS - 2)
    right = holed_patch(1)
    vC = edge_vector(left, path_edges([(r, COLS - 1) for r in range(-1, ROWS + 1)]))
    vD = edge_vector(right, path_edges([(r, 0) for r in range(-1, ROWS + 1)]))
    return cubical.to_code(left), cubical.to_code(right), vC, vD


# -- random corpus ----------------------------------------------------------------------------


def min_weight_logical(code: CssCode) -> np.ndarray:
    return min_nontrivial_weight(code.p_x, code.p_z.T).witness


def random_logical_codes(seed: int, count: int):
    """Random codes with ``k >= 1``, each with a minimum-weight Z logical."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(5, 11))
        code = random_css_code(rng, n, int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        if code.k == 0:
            continue
        v = min_weight_logical(code)
        assert classify(code, v) is OperatorClass.LOGICAL
        out.append((code, v))
    return out
