"""Bounded chain complexes over GF(2), chain maps and homology.

Conventions: ``d[n]`` is the differential ``C_{n+1} -> C_n`` of shape
``dim(C_n) x dim(C_{n+1})``. Missing components are zero spaces and missing
differentials are zero maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import f2linalg as la
from .errors import ChainMapError


@dataclass(frozen=True)
class Violation:
    """Outcome of a validation check; truthy when the check passed."""

    ok: bool
    degree: int | None = None
    entry: tuple[int, int] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


OK = Violation(True)


class ChainComplex:
    """A bounded, based chain complex in MatF2.

    Construction checks shapes but not ``d∘d = 0``; use
    :func:`validate_complex` for that so callers get a report rather than an
    exception.
    """

    __slots__ = ("_dims", "_diffs", "_labels")

    def __init__(
        self,
        dims: Mapping[int, int],
        diffs: Mapping[int, np.ndarray] | None = None,
        labels: Mapping[int, list[str]] | None = None,
    ):
        dims = {int(k): int(v) for k, v in dims.items() if int(v) > 0}
        diffs = dict(diffs or {})
        clean: dict[int, np.ndarray] = {}
        for n, M in diffs.items():
            n = int(n)
            M = la.as_f2(M)
            if M.ndim != 2:
                raise ValueError(f"differential at degree {n} is not a matrix")
            shape = (dims.get(n, 0), dims.get(n + 1, 0))
            if M.shape != shape:
                raise ValueError(f"differential at degree {n} has shape {M.shape}, expected {shape}")
            if M.size and M.any():
                M.setflags(write=False)
                clean[n] = M
        lab: dict[int, tuple[str, ...]] = {}
        labels = labels or {}
        for n, d in dims.items():
            given = labels.get(n)
            if given is None:
                given = [f"c{n}_{i}" for i in range(d)]
            if len(given) != d:
                raise ValueError(f"{len(given)} labels for dimension {d} at degree {n}")
            lab[n] = tuple(str(s) for s in given)
        self._dims = dims
        self._diffs = clean
        self._labels = lab

    # -- accessors -------------------------------------------------------
    def dim(self, n: int) -> int:
        return self._dims.get(n, 0)

    def d(self, n: int) -> np.ndarray:
        """Differential ``C_{n+1} -> C_n`` (a zero matrix when absent)."""
        M = self._diffs.get(n)
        if M is None:
            return la.zeros(self.dim(n), self.dim(n + 1))
        return M

    def labels(self, n: int) -> tuple[str, ...]:
        return self._labels.get(n, ())

    @property
    def degrees(self) -> list[int]:
        """Degrees with nonzero components, ascending."""
        return sorted(self._dims)

    @property
    def dims(self) -> dict[int, int]:
        return dict(self._dims)

    @property
    def diffs(self) -> dict[int, np.ndarray]:
        return dict(self._diffs)

    def span(self) -> range:
        """Degree range covering every component and differential, padded by one."""
        if not self._dims:
            return range(0, 0)
        lo, hi = min(self._dims), max(self._dims)
        return range(lo - 1, hi + 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if self._dims != other._dims or set(self._diffs) != set(other._diffs):
            return False
        return all(np.array_equal(self._diffs[n], other._diffs[n]) for n in self._diffs)

    def __hash__(self):
        return hash(tuple(sorted(self._dims.items())))

    def __repr__(self) -> str:
        parts = " -> ".join(f"[{n}]F2^{self.dim(n)}" for n in reversed(self.degrees))
        return f"ChainComplex({parts or '0'})"

    def with_labels(self, labels: Mapping[int, list[str]]) -> "ChainComplex":
        return ChainComplex(self._dims, self._diffs, labels)

    def relabel(self, prefix: str) -> "ChainComplex":
        return self.with_labels({n: [f"{prefix}{s}" for s in self._labels[n]] for n in self._dims})


def zero_complex() -> ChainComplex:
    return ChainComplex({})


def unit_complex() -> ChainComplex:
    """The tensor unit: F2 in degree 0."""
    return ChainComplex({0: 1}, labels={0: ["1"]})


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degree-wise matrices ``f_n: C_n -> D_n``; missing components are zero."""

    source: ChainComplex
    target: ChainComplex
    components: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        comps = {}
        for n, M in self.components.items():
            n = int(n)
            M = la.as_f2(M)
            shape = (self.target.dim(n), self.source.dim(n))
            if M.shape != shape:
                raise ChainMapError(f"component {n} has shape {M.shape}, expected {shape}")
            if M.any():
                M.setflags(write=False)
                comps[n] = M
        object.__setattr__(self, "components", comps)

    def __getitem__(self, n: int) -> np.ndarray:
        M = self.components.get(n)
        if M is None:
            return la.zeros(self.target.dim(n), self.source.dim(n))
        return M

    def degrees(self) -> list[int]:
        return sorted(set(self.source.degrees) | set(self.target.degrees))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition ``self ∘ other``."""
        return compose(self, other)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise ChainMapError("cannot add chain maps with different endpoints")
        degs = set(self.components) | set(other.components)
        return ChainMap(self.source, self.target, {n: self[n] ^ other[n] for n in degs})

    __sub__ = __add__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        degs = set(self.components) | set(other.components)
        return (
            self.source == other.source
            and self.target == other.target
            and all(np.array_equal(self[n], other[n]) for n in degs)
        )

    def is_monic(self) -> bool:
        return all(la.rank(self[n]) == self.source.dim(n) for n in self.source.degrees)

    def is_epic(self) -> bool:
        return all(la.rank(self[n]) == self.target.dim(n) for n in self.target.degrees)


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    if f.target != g.source:
        raise ChainMapError("chain maps are not composable")
    degs = set(f.components) & set(g.components)
    return ChainMap(f.source, g.target, {n: la.mul(g[n], f[n]) for n in degs})


def identity_map(C: ChainComplex) -> ChainMap:
    return ChainMap(C, C, {n: la.eye(C.dim(n)) for n in C.degrees})


def zero_map(C: ChainComplex, D: ChainComplex) -> ChainMap:
    return ChainMap(C, D, {})


# -- validation -------------------------------------------------------------


def validate_complex(C: ChainComplex) -> Violation:
    for n in C.span():
        prod = la.mul(C.d(n), C.d(n + 1))
        if prod.any():
            i, j = (int(x) for x in np.argwhere(prod)[0])
            return Violation(False, n, (i, j), f"d_{n} d_{n + 1} has a nonzero entry at ({i}, {j})")
    return OK


def validate_chain_map(f: ChainMap) -> Violation:
    degs = [n for X in (f.source, f.target) for n in X.span()]
    for n in range(min(degs, default=0), max(degs, default=-1) + 2):
        left = la.mul(f[n], f.source.d(n))
        right = la.mul(f.target.d(n), f[n + 1])
        diff = left ^ right
        if diff.any():
            i, j = (int(x) for x in np.argwhere(diff)[0])
            return Violation(False, n, (i, j), f"f_{n} d_{n} != d_{n} f_{n + 1} at ({i}, {j})")
    return OK


def require_valid(C: ChainComplex) -> ChainComplex:
    v = validate_complex(C)
    if not v:
        raise ChainMapError(v.message)
    return C


def require_valid_map(f: ChainMap) -> ChainMap:
    v = validate_chain_map(f)
    if not v:
        raise ChainMapError(v.message)
    return f


# -- homology -----------------------------------------------------------------


def homology_dim(C: ChainComplex, n: int) -> int:
    return C.dim(n) - la.rank(C.d(n - 1)) - la.rank(C.d(n))


@dataclass(frozen=True)
class HomologyBasis:
    """Representatives (rows) of a basis of ``H_n`` plus a boundary basis (columns)."""

    representatives: np.ndarray
    boundary_basis: np.ndarray

    def __iter__(self):
        return iter((list(self.representatives), self.boundary_basis))

    @property
    def k(self) -> int:
        return self.representatives.shape[0]

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of the class of a cycle ``v`` in the representative basis."""
        return class_coordinates(self.representatives, self.boundary_basis, v)


def class_coordinates(reps: np.ndarray, boundary: np.ndarray, v: np.ndarray) -> np.ndarray:
    k = reps.shape[0]
    M = np.concatenate([reps.T, boundary], axis=1) if k else boundary
    x = la.solve(M, v)
    if x is None:
        raise ChainMapError("vector is not a cycle expressible in the homology basis")
    return x[:k]


def homology_basis(C: ChainComplex, n: int) -> HomologyBasis:
    B = la.image_basis(C.d(n))
    K = la.kernel_basis(C.d(n - 1))
    stacked = np.concatenate([B, K], axis=1)
    piv = la.rref(stacked).pivots
    extra = [p - B.shape[1] for p in piv if p >= B.shape[1]]
    reps = K[:, extra].T.copy() if extra else la.zeros(0, C.dim(n))
    return HomologyBasis(reps, B)


def induced_homology_map(
    f: ChainMap,
    n: int,
    source_reps: np.ndarray | None = None,
    target_reps: np.ndarray | None = None,
) -> np.ndarray:
    """Matrix of ``H_n(f)`` in the given (or deterministic) representative bases."""
    if source_reps is None:
        source_reps = homology_basis(f.source, n).representatives
    if target_reps is None:
        target_reps = homology_basis(f.target, n).representatives
    boundary = la.image_basis(f.target.d(n))
    out = la.zeros(target_reps.shape[0], source_reps.shape[0])
    for j, r in enumerate(source_reps):
        out[:, j] = class_coordinates(target_reps, boundary, la.mul(f[n], r))
    return out


# -- constructions ------------------------------------------------------------


def dual(C: ChainComplex) -> ChainComplex:
    dims = {-n: d for n, d in C.dims.items()}
    diffs = {-n - 1: M.T.copy() for n, M in C.diffs.items()}
    labels = {-n: list(C.labels(n)) for n in C.degrees}
    return ChainComplex(dims, diffs, labels)


def dual_map(f: ChainMap) -> ChainMap:
    """Transpose map ``f*: D* -> C*`` with ``(f*)_n = (f_{-n})^T``."""
    return ChainMap(dual(f.target), dual(f.source), {-n: M.T.copy() for n, M in f.components.items()})


def _block_diag(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = la.zeros(A.shape[0] + B.shape[0], A.shape[1] + B.shape[1])
    out[: A.shape[0], : A.shape[1]] = A
    out[A.shape[0] :, A.shape[1] :] = B
    return out


def direct_sum(C: ChainComplex, D: ChainComplex, prefixes: tuple[str, str] = ("C.", "D.")) -> ChainComplex:
    degs = set(C.degrees) | set(D.degrees)
    dims = {n: C.dim(n) + D.dim(n) for n in degs}
    diffs = {n: _block_diag(C.d(n), D.d(n)) for n in degs}
    labels = {
        n: [prefixes[0] + s for s in C.labels(n)] + [prefixes[1] + s for s in D.labels(n)] for n in degs
    }
    return ChainComplex(dims, diffs, labels)


def inclusions(C: ChainComplex, D: ChainComplex, S: ChainComplex | None = None) -> tuple[ChainMap, ChainMap]:
    """Coproduct inclusions ``C -> C⊕D`` and ``D -> C⊕D``."""
    S = S if S is not None else direct_sum(C, D)
    iota_c, iota_d = {}, {}
    for n in S.degrees:
        a, b = C.dim(n), D.dim(n)
        iota_c[n] = np.concatenate([la.eye(a), la.zeros(b, a)], axis=0)
        iota_d[n] = np.concatenate([la.zeros(a, b), la.eye(b)], axis=0)
    return ChainMap(C, S, iota_c), ChainMap(D, S, iota_d)


def direct_sum_map(f: ChainMap, g: ChainMap) -> ChainMap:
    S = direct_sum(f.source, g.source)
    T = direct_sum(f.target, g.target)
    degs = set(f.components) | set(g.components)
    return ChainMap(S, T, {n: _block_diag(f[n], g[n]) for n in degs})


def _tensor_summands(C: ChainComplex, D: ChainComplex, n: int) -> list[tuple[int, int]]:
    return [(i, n - i) for i in C.degrees if D.dim(n - i) > 0]


def tensor(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """Tensor product with summands ordered by ascending left degree and
    row-major Kronecker bases inside each summand."""
    degs = {i + j for i in C.degrees for j in D.degrees}
    dims: dict[int, int] = {}
    offsets: dict[int, dict[tuple[int, int], int]] = {}
    labels: dict[int, list[str]] = {}
    for n in sorted(degs):
        off = 0
        offsets[n] = {}
        labels[n] = []
        for i, j in _tensor_summands(C, D, n):
            offsets[n][(i, j)] = off
            off += C.dim(i) * D.dim(j)
            labels[n] += [f"{a}⊗{b}" for a in C.labels(i) for b in D.labels(j)]
        dims[n] = off
    diffs: dict[int, np.ndarray] = {}
    for n in sorted(degs):
        if n - 1 not in dims:
            continue
        M = la.zeros(dims[n - 1], dims[n])
        for (i, j), col in offsets[n].items():
            w = C.dim(i) * D.dim(j)
            # id ⊗ d^D lands in C_i ⊗ D_{j-1}
            if (i, j - 1) in offsets[n - 1]:
                row = offsets[n - 1][(i, j - 1)]
                blk = np.kron(la.eye(C.dim(i)), D.d(j - 1)) % 2
                M[row : row + blk.shape[0], col : col + w] ^= blk.astype(np.uint8)
            # d^C ⊗ id lands in C_{i-1} ⊗ D_j
            if (i - 1, j) in offsets[n - 1]:
                row = offsets[n - 1][(i - 1, j)]
                blk = np.kron(C.d(i - 1), la.eye(D.dim(j))) % 2
                M[row : row + blk.shape[0], col : col + w] ^= blk.astype(np.uint8)
        diffs[n - 1] = M
    return ChainComplex(dims, diffs, labels)


def translate(C: ChainComplex, p: int) -> ChainComplex:
    """Shift so that ``C[p]_n = C_{n+p}``."""
    return ChainComplex(
        {n - p: d for n, d in C.dims.items()},
        {n - p: M for n, M in C.diffs.items()},
        {n - p: list(C.labels(n)) for n in C.degrees},
    )


def restrict_to_degrees(C: ChainComplex, degrees: set[int]) -> ChainComplex:
    dims = {n: C.dim(n) for n in C.degrees if n in degrees}
    diffs = {n: C.d(n) for n in C.diffs if n in degrees and n + 1 in degrees}
    return ChainComplex(dims, diffs, {n: list(C.labels(n)) for n in dims})


# -- comparison -------------------------------------------------------------


def equivalent_up_to_permutation(C: ChainComplex, D: ChainComplex) -> bool:
    """True if ``D`` is ``C`` after permuting bases within each degree.

    Decided by isomorphism of the graded incidence graphs with nodes coloured
    by degree.
    """
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher, categorical_node_match

    if C.dims != D.dims:
        return False

    def graph(X: ChainComplex) -> "nx.Graph":
        G = nx.Graph()
        for n in X.degrees:
            G.add_nodes_from(((n, i) for i in range(X.dim(n))), degree=n)
        for n, M in X.diffs.items():
            for i, j in np.argwhere(M):
                G.add_edge((n, int(i)), (n + 1, int(j)))
        return G

    matcher = GraphMatcher(graph(C), graph(D), node_match=categorical_node_match("degree", None))
    return matcher.is_isomorphic()


# -- serialization ------------------------------------------------------------


def complex_to_json(C: ChainComplex) -> dict:
    return {
        "components": {str(n): {"dim": C.dim(n), "labels": list(C.labels(n))} for n in C.degrees},
        "differentials": {str(n): la.format_matrix(M) for n, M in sorted(C.diffs.items())},
    }


def complex_from_json(data: dict) -> ChainComplex:
    comps = data.get("components", {})
    dims = {int(n): int(c["dim"]) for n, c in comps.items()}
    labels = {int(n): c["labels"] for n, c in comps.items() if "labels" in c}
    diffs = {int(n): la.parse_matrix(t) for n, t in data.get("differentials", {}).items()}
    return ChainComplex(dims, diffs, labels)
