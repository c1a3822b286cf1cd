"""Colimits and limits in the category of chain complexes over GF(2)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import f2linalg as la
from .chain import (
    ChainComplex,
    ChainMap,
    compose,
    direct_sum,
    inclusions,
    require_valid,
    require_valid_map,
)
from .errors import ChainMapError


@dataclass(frozen=True)
class Quotient:
    """A quotient complex together with its projection and per-degree sections."""

    complex: ChainComplex
    projection: ChainMap
    sections: dict[int, np.ndarray]

    def __iter__(self):
        return iter((self.complex, self.projection))


def _quotient(D: ChainComplex, relations: dict[int, np.ndarray]) -> Quotient:
    """Quotient ``D`` by the column spans of ``relations[n] ⊆ D_n``."""
    coks = {n: la.cokernel_projection(relations.get(n, la.zeros(D.dim(n), 0))) for n in D.degrees}
    dims = {n: c.dim for n, c in coks.items()}
    labels = {n: [D.labels(n)[i] for i in c.kept] for n, c in coks.items()}
    sections = {n: c.section() for n, c in coks.items()}
    diffs = {}
    for n in D.diffs:
        if n in coks and n + 1 in coks:
            diffs[n] = la.mul(coks[n].P, D.d(n), sections[n + 1])
    E = require_valid(ChainComplex(dims, diffs, labels))
    q = require_valid_map(ChainMap(D, E, {n: c.P for n, c in coks.items()}))
    return Quotient(E, q, sections)


def coequaliser(f: ChainMap, g: ChainMap) -> Quotient:
    """Quotient of the common target by ``im(f_n - g_n)`` in every degree."""
    if f.source != g.source or f.target != g.target:
        raise ChainMapError("coequaliser needs parallel chain maps")
    D = f.target
    return _quotient(D, {n: f[n] ^ g[n] for n in D.degrees})


def cokernel(f: ChainMap) -> Quotient:
    return _quotient(f.target, {n: f[n] for n in f.target.degrees})


@dataclass(frozen=True)
class Pushout:
    """Pushout square of a span ``C <-f- A -g-> D``.

    ``coeq`` is the coequaliser map from ``C⊕D`` and ``k``, ``l`` its
    composites with the coproduct inclusions.
    """

    Q: ChainComplex
    k: ChainMap
    l: ChainMap
    coeq: ChainMap
    sum: ChainComplex
    f: ChainMap
    g: ChainMap
    sections: dict[int, np.ndarray]

    def __iter__(self):
        return iter((self.Q, self.k, self.l))


def pushout(f: ChainMap, g: ChainMap, prefixes: tuple[str, str] = ("C.", "D.")) -> Pushout:
    if f.source != g.source:
        raise ChainMapError("pushout needs a span with a shared source")
    S = direct_sum(f.target, g.target, prefixes)
    ic, id_ = inclusions(f.target, g.target, S)
    quo = coequaliser(compose(ic, f), compose(id_, g))
    q = quo.projection
    return Pushout(quo.complex, compose(q, ic), compose(q, id_), q, S, f, g, quo.sections)


@dataclass(frozen=True)
class Subcomplex:
    complex: ChainComplex
    inclusion: ChainMap

    def __iter__(self):
        return iter((self.complex, self.inclusion))


def _sub(C: ChainComplex, bases: dict[int, np.ndarray]) -> Subcomplex:
    """Subcomplex spanned by columns of ``bases[n]`` (must be d-closed)."""
    dims = {n: B.shape[1] for n, B in bases.items()}
    diffs = {}
    for n in C.diffs:
        if n in bases and n + 1 in bases and dims[n] and dims[n + 1]:
            X = la.solve_many(bases[n], la.mul(C.d(n), bases[n + 1]))
            if X is None:
                raise ChainMapError(f"subspace at degree {n + 1} is not closed under d")
            diffs[n] = X
    K = require_valid(ChainComplex(dims, diffs))
    return Subcomplex(K, require_valid_map(ChainMap(K, C, dict(bases))))


def kernel(f: ChainMap) -> Subcomplex:
    return _sub(f.source, {n: la.kernel_basis(f[n]) for n in f.source.degrees})


def pullback(f: ChainMap, g: ChainMap) -> tuple[ChainComplex, ChainMap, ChainMap]:
    """``W_n = {(x, y) : f_n x = g_n y}`` with its two projections."""
    if f.target != g.target:
        raise ChainMapError("pullback needs a cospan with a shared target")
    X, Y = f.source, g.source
    S = direct_sum(X, Y)
    h = ChainMap(S, f.target, {n: np.concatenate([f[n], g[n]], axis=1) for n in S.degrees})
    W, incl = kernel(h)
    v = ChainMap(W, X, {n: incl[n][: X.dim(n)] for n in W.degrees})
    w = ChainMap(W, Y, {n: incl[n][X.dim(n) :] for n in W.degrees})
    return W, require_valid_map(v), require_valid_map(w)


def verify_universal_square(po: Pushout, a: ChainMap, b: ChainMap) -> ChainMap | None:
    """Mediating map ``u: Q -> X`` with ``u k = a`` and ``u l = b``, or ``None``
    when ``(a, b)`` is not a cocone over the span."""
    if a.source != po.k.source or b.source != po.l.source or a.target != b.target:
        return None
    if compose(a, po.f) != compose(b, po.g):
        return None
    X = a.target
    joint = {n: np.concatenate([a[n], b[n]], axis=1) for n in po.sum.degrees}
    comps = {n: la.mul(joint[n], po.sections[n]) for n in po.Q.degrees if n in joint}
    u = ChainMap(po.Q, X, comps)
    if compose(u, po.k) != a or compose(u, po.l) != b:
        return None
    return require_valid_map(u)
