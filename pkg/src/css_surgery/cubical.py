"""Open abstract cubical complexes and their incidence chain complexes.

Faces are sorted tuples of vertices; a ``d``-face has ``2**d`` vertices.
Vertices of a box product are pairs. The incidence functor sends ``n``-faces
to chain degree ``n - 1`` and drops faces made only of boundary vertices, so
2-dimensional complexes become CSS codes with faces as Z checks, edges as
qubits and internal vertices as X checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Mapping


from . import f2linalg as la
from .chain import ChainComplex, ChainMap, equivalent_up_to_permutation, homology_dim, require_valid
from .colimit import pushout
from .csscode import CssCode
from .errors import NoCocone

Vertex = Hashable
Face = tuple


def _face(vs) -> Face:
    return tuple(sorted(set(vs)))


@dataclass(frozen=True)
class OpenCubicalComplex:
    faces: Mapping[int, tuple[Face, ...]]
    boundary: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        clean = {}
        for d, fs in self.faces.items():
            uniq = sorted({_face(f) for f in fs})
            if uniq:
                clean[int(d)] = tuple(uniq)
        object.__setattr__(self, "faces", clean)
        object.__setattr__(self, "boundary", frozenset(self.boundary))

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(f[0] for f in self.faces.get(0, ()))

    @property
    def internal(self) -> frozenset:
        return frozenset(self.vertices) - self.boundary

    @property
    def dimension(self) -> int:
        return max(self.faces, default=-1)

    def count(self, d: int) -> int:
        return len(self.faces.get(d, ()))

    def all_faces(self) -> set[Face]:
        return {f for fs in self.faces.values() for f in fs}


def check_axioms(X: OpenCubicalComplex) -> str | None:
    """Return a description of the first violated axiom, or ``None``."""
    verts = set(X.vertices)
    faces = X.all_faces()
    if not X.boundary <= verts:
        return "boundary vertices missing from the vertex set"
    for d, fs in X.faces.items():
        for f in fs:
            if len(f) != 2**d:
                return f"face {f} has {len(f)} vertices, expected {2 ** d}"
            if not set(f) <= verts:
                return f"face {f} uses unknown vertices"
            if d >= 1:
                facets = [g for g in X.faces.get(d - 1, ()) if set(g) <= set(f)]
                if len(facets) != 2 * d:
                    return f"{d}-face {f} has {len(facets)} facets, expected {2 * d}"
                if set().union(*map(set, facets)) != set(f):
                    return f"facets of {f} do not cover it"
    flist = sorted(faces, key=lambda f: (len(f), f))
    for a, b in itertools.combinations(flist, 2):
        inter = set(a) & set(b)
        if inter and _face(inter) not in faces:
            return f"faces {a} and {b} meet in a non-face"
    return None


# -- generators -------------------------------------------------------------------------


def _graph(n_vertices_or_list, edges, boundary=()) -> OpenCubicalComplex:
    verts = n_vertices_or_list if not isinstance(n_vertices_or_list, int) else range(n_vertices_or_list)
    return OpenCubicalComplex({0: tuple((v,) for v in verts), 1: tuple(edges)}, frozenset(boundary))


def point() -> OpenCubicalComplex:
    return OpenCubicalComplex({0: ((0,),)})


def cycle_graph(n: int) -> OpenCubicalComplex:
    if n < 3:
        raise ValueError("cycle graphs need at least 3 vertices")
    return _graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> OpenCubicalComplex:
    """``n`` edges on ``n + 1`` vertices."""
    if n < 0:
        raise ValueError("path length must be non-negative")
    return _graph(n + 1, [(i, i + 1) for i in range(n)])


def open_path(n: int) -> OpenCubicalComplex:
    """``n`` edges in a line whose two end vertices are boundary."""
    if n < 1:
        raise ValueError("open paths need at least one edge")
    return _graph(n + 1, [(i, i + 1) for i in range(n)], (0, n))


def box_product(A: OpenCubicalComplex, B: OpenCubicalComplex) -> OpenCubicalComplex:
    faces: dict[int, list[Face]] = {}
    for i, fa in A.faces.items():
        for j, fb in B.faces.items():
            faces.setdefault(i + j, []).extend(
                _face(itertools.product(a, b)) for a in fa for b in fb
            )
    boundary = {(x, y) for x in A.vertices for y in B.vertices if x in A.boundary or y in B.boundary}
    return OpenCubicalComplex({d: tuple(fs) for d, fs in faces.items()}, frozenset(boundary))


def toric(m: int, n: int) -> OpenCubicalComplex:
    return box_product(cycle_graph(m), cycle_graph(n))


def patch(w: int, h: int) -> OpenCubicalComplex:
    """Planar patch: smooth sides along the ``w - 1`` edge path, rough sides
    closing the ``h`` edge open path. ``patch(3, 3)`` has 13 qubits."""
    if w < 2 or h < 1:
        raise ValueError("patch needs w >= 2 and h >= 1")
    return box_product(path_graph(w - 1), open_path(h))


def grid_complex(internal, boundary=()) -> OpenCubicalComplex:
    """Square-lattice complex on integer points: unit edges and unit squares
    whose corners are all present."""
    internal = {tuple(p) for p in internal}
    boundary = {tuple(p) for p in boundary} - internal
    verts = internal | boundary
    edges = []
    squares = []
    for r, c in verts:
        if (r, c + 1) in verts:
            edges.append(((r, c), (r, c + 1)))
        if (r + 1, c) in verts:
            edges.append(((r, c), (r + 1, c)))
        corners = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)]
        if all(p in verts for p in corners):
            squares.append(corners)
    return OpenCubicalComplex(
        {0: tuple((v,) for v in verts), 1: tuple(edges), 2: tuple(squares)}, frozenset(boundary)
    )


# -- incidence functor ------------------------------------------------------------------------


def retained_faces(X: OpenCubicalComplex, d: int) -> list[Face]:
    return [f for f in X.faces.get(d, ()) if not set(f) <= X.boundary]


def to_chain_complex(X: OpenCubicalComplex) -> ChainComplex:
    kept = {d: retained_faces(X, d) for d in X.faces}
    dims = {d - 1: len(fs) for d, fs in kept.items()}
    diffs = {}
    for d in kept:
        if d - 1 not in kept:
            continue
        lower = {f: i for i, f in enumerate(kept[d - 1])}
        M = la.zeros(len(kept[d - 1]), len(kept[d]))
        for j, f in enumerate(kept[d]):
            fs = set(f)
            for g, i in lower.items():
                if set(g) <= fs:
                    M[i, j] = 1
        diffs[d - 2] = M
    labels = {d - 1: [_label(f) for f in fs] for d, fs in kept.items()}
    return require_valid(ChainComplex(dims, diffs, labels))


def _label(face: Face) -> str:
    return "{" + ",".join(str(v) for v in face) + "}"


def to_code(X: OpenCubicalComplex) -> CssCode:
    """CSS code of a complex of dimension at most 2."""
    if X.dimension > 2:
        raise ValueError("only complexes of dimension <= 2 define CSS codes directly")
    C = to_chain_complex(X)
    dims = {1: C.dim(1), 0: C.dim(0), -1: C.dim(-1)}
    return CssCode.from_complex(ChainComplex(dims, {0: C.d(0), -1: C.d(-1)}, {n: list(C.labels(n)) for n in dims}))


# -- morphisms and pushouts ------------------------------------------------------------------------


@dataclass(frozen=True)
class CubicalMorphism:
    source: OpenCubicalComplex
    target: OpenCubicalComplex
    vertex_map: Mapping[Vertex, Vertex]

    def image(self, face: Face) -> Face:
        return _face(self.vertex_map[v] for v in face)

    def validate(self) -> str | None:
        tgt = {d: set(fs) for d, fs in self.target.faces.items()}
        for v in self.source.vertices:
            if v not in self.vertex_map:
                return f"vertex {v} is unmapped"
            if (v in self.source.boundary) != (self.vertex_map[v] in self.target.boundary):
                return f"vertex {v} changes internal/boundary status"
        for d, fs in self.source.faces.items():
            for f in fs:
                if self.image(f) not in tgt.get(d, set()):
                    return f"face {f} does not map to a {d}-face"
        return None


def chain_map_of(f: CubicalMorphism) -> ChainMap:
    """Image of a morphism under the incidence functor."""
    src, tgt = to_chain_complex(f.source), to_chain_complex(f.target)
    comps = {}
    for d in f.source.faces:
        s_faces = retained_faces(f.source, d)
        t_index = {g: i for i, g in enumerate(retained_faces(f.target, d))}
        M = la.zeros(len(t_index), len(s_faces))
        for j, face in enumerate(s_faces):
            M[t_index[f.image(face)], j] = 1
        comps[d - 1] = M
    return ChainMap(src, tgt, comps)


def compose_morphisms(g: CubicalMorphism, f: CubicalMorphism) -> CubicalMorphism:
    return CubicalMorphism(f.source, g.target, {v: g.vertex_map[w] for v, w in f.vertex_map.items()})


@dataclass(frozen=True)
class CubicalPushout:
    complex: OpenCubicalComplex
    k: CubicalMorphism
    l: CubicalMorphism


def pushout_acc(f: CubicalMorphism, g: CubicalMorphism) -> CubicalPushout:
    """Glue ``f.target`` and ``g.target`` along the shared apex.

    Result vertices are integers: those of ``f.target`` in sorted order, then
    the unglued vertices of ``g.target``. Raises :class:`NoCocone` when a
    face would collapse or the quotient breaks the cubical axioms.
    """
    for m in (f, g):
        err = m.validate()
        if err:
            raise ValueError(f"invalid morphism: {err}")
    A, B = f.target, g.target
    nodes = [("A", v) for v in A.vertices] + [("B", v) for v in B.vertices]
    parent = {x: x for x in nodes}
    order = {x: i for i, x in enumerate(nodes)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in f.source.vertices:
        a, b = find(("A", f.vertex_map[v])), find(("B", g.vertex_map[v]))
        if a != b:
            lo, hi = sorted((a, b), key=order.get)
            parent[hi] = lo
    roots = sorted({find(x) for x in nodes}, key=order.get)
    index = {r: i for i, r in enumerate(roots)}
    new = {x: index[find(x)] for x in nodes}
    boundary = set()
    for x in nodes:
        tag, v = x
        on_b = v in (A.boundary if tag == "A" else B.boundary)
        if on_b:
            boundary.add(new[x])
    for x in nodes:
        tag, v = x
        on_b = v in (A.boundary if tag == "A" else B.boundary)
        if on_b != (new[x] in boundary):
            raise NoCocone("a boundary vertex is glued to an internal one")
    faces: dict[int, set[Face]] = {}
    for tag, X in (("A", A), ("B", B)):
        for d, fs in X.faces.items():
            for face in fs:
                img = _face(new[(tag, v)] for v in face)
                if len(img) != len(face):
                    raise NoCocone(f"face {face} collapses under the gluing")
                faces.setdefault(d, set()).add(img)
    Q = OpenCubicalComplex({d: tuple(fs) for d, fs in faces.items()}, frozenset(boundary))
    err = check_axioms(Q)
    if err:
        raise NoCocone(err)
    k = CubicalMorphism(A, Q, {v: new[("A", v)] for v in A.vertices})
    l = CubicalMorphism(B, Q, {v: new[("B", v)] for v in B.vertices})
    return CubicalPushout(Q, k, l)


def verify_cocontinuity(f: CubicalMorphism, g: CubicalMorphism) -> bool:
    """Incidence complex of the cubical pushout agrees with the chain-level
    pushout of the incidence maps (up to basis order, with equal homology)."""
    cub = to_chain_complex(pushout_acc(f, g).complex)
    ch = pushout(chain_map_of(f), chain_map_of(g)).Q
    if cub.dims != ch.dims:
        return False
    degrees = set(cub.degrees) | set(ch.degrees)
    if any(homology_dim(cub, n) != homology_dim(ch, n) for n in degrees):
        return False
    return equivalent_up_to_permutation(cub, ch)


# -- serialization ---------------------------------------------------------------------------------


def complex_to_json(X: OpenCubicalComplex) -> dict:
    return {
        "faces": {str(d): [list(f) for f in fs] for d, fs in X.faces.items()},
        "boundary": sorted(X.boundary),
    }


def _tuplify(v):
    return tuple(_tuplify(x) for x in v) if isinstance(v, list) else v


def complex_from_json(data: dict) -> OpenCubicalComplex:
    faces = {int(d): tuple(tuple(_tuplify(v) for v in f) for f in fs) for d, fs in data["faces"].items()}
    return OpenCubicalComplex(faces, frozenset(_tuplify(v) for v in data.get("boundary", [])))
