"""Hypothesis strategies for matrices, complexes and codes."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from css_surgery import f2linalg as la
from css_surgery.chain import ChainComplex
from css_surgery.codes import random_css_code


@st.composite
def matrices(draw, max_rows: int = 8, max_cols: int = 8, min_rows: int = 0, min_cols: int = 0):
    r = draw(st.integers(min_rows, max_rows))
    c = draw(st.integers(min_cols, max_cols))
    bits = draw(st.lists(st.integers(0, 1), min_size=r * c, max_size=r * c))
    return np.array(bits, dtype=np.uint8).reshape(r, c)


@st.composite
def complexes(draw, max_dim: int = 5, max_len: int = 3, low: int = -1):
    """Random valid complexes on up to ``max_len`` consecutive degrees.

    Each differential is built as ``B = K X`` with ``K`` a kernel basis of
    the next one down, so ``d∘d = 0`` holds by construction.
    """
    length = draw(st.integers(1, max_len))
    dims = [draw(st.integers(0, max_dim)) for _ in range(length)]
    degrees = [low + i for i in range(length)]
    diffs = {}
    below = None
    for i in range(1, length):
        n = degrees[i - 1]
        if below is None:
            bits = draw(st.lists(st.integers(0, 1), min_size=dims[i - 1] * dims[i], max_size=dims[i - 1] * dims[i]))
            M = np.array(bits, dtype=np.uint8).reshape(dims[i - 1], dims[i])
        else:
            K = la.kernel_basis(below)
            bits = draw(st.lists(st.integers(0, 1), min_size=K.shape[1] * dims[i], max_size=K.shape[1] * dims[i]))
            X = np.array(bits, dtype=np.uint8).reshape(K.shape[1], dims[i])
            M = la.mul(K, X) if K.shape[1] else la.zeros(dims[i - 1], dims[i])
        diffs[n] = M
        below = M
    return ChainComplex(dict(zip(degrees, dims)), diffs)


@st.composite
def css_codes(draw, max_n: int = 10):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    n = draw(st.integers(1, max_n))
    return random_css_code(rng, n, draw(st.integers(0, 4)), draw(st.integers(0, 4)))


def chain_map_space(A: ChainComplex, C: ChainComplex) -> tuple[list[int], np.ndarray]:
    """Degrees and a basis (columns) of all chain maps ``A -> C``, each map
    flattened as the row-major concatenation of its components."""
    degs = sorted(set(A.degrees) & set(C.degrees))
    offsets, total = {}, 0
    for n in degs:
        offsets[n] = total
        total += C.dim(n) * A.dim(n)
    rows = []
    for n in sorted(set(A.degrees) | set(C.degrees) | {d - 1 for d in A.degrees}):
        # f_n d^A_n - d^C_n f_{n+1} = 0, row-major vec(M X N) = (M ⊗ N^T) vec(X)
        block = np.zeros((C.dim(n) * A.dim(n + 1), total), dtype=np.int64)
        if n in offsets and A.dim(n + 1):
            w = C.dim(n) * A.dim(n)
            block[:, offsets[n] : offsets[n] + w] ^= np.kron(la.eye(C.dim(n)), A.d(n).T)
        if n + 1 in offsets and C.dim(n):
            w = C.dim(n + 1) * A.dim(n + 1)
            block[:, offsets[n + 1] : offsets[n + 1] + w] ^= np.kron(C.d(n), la.eye(A.dim(n + 1)))
        rows.append(block % 2)
    M = np.concatenate(rows, axis=0).astype(np.uint8) if rows else la.zeros(0, total)
    return degs, la.kernel_basis(M)


@st.composite
def chain_maps(draw, A: ChainComplex, C: ChainComplex):
    from css_surgery.chain import ChainMap

    degs, K = chain_map_space(A, C)
    bits = draw(st.lists(st.integers(0, 1), min_size=K.shape[1], max_size=K.shape[1]))
    flat = la.mul(K, np.array(bits, dtype=np.uint8)) if K.shape[1] else la.zeros(K.shape[0], 1)[:, 0]
    comps, off = {}, 0
    for n in degs:
        w = C.dim(n) * A.dim(n)
        comps[n] = flat[off : off + w].reshape(C.dim(n), A.dim(n))
        off += w
    return ChainMap(A, C, comps)


@st.composite
def spans(draw, max_dim: int = 4):
    """Random ``C <-f- A -g-> D`` on degrees ``1, 0, -1``."""
    A = draw(complexes(max_dim=max_dim, max_len=3))
    C = draw(complexes(max_dim=max_dim, max_len=3))
    D = draw(complexes(max_dim=max_dim, max_len=3))
    return draw(chain_maps(A, C)), draw(chain_maps(A, D))
