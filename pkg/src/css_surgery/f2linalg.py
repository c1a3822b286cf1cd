"""Dense linear algebra over GF(2).

Matrices are plain ``numpy`` arrays of dtype ``uint8`` holding 0/1 entries.
Every basis-returning routine is deterministic: bases come from reduced row
echelon forms with ascending pivot/free-column conventions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

F2Matrix = np.ndarray


def as_f2(data, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``data`` to a uint8 0/1 array, reducing mod 2."""
    arr = np.asarray(data)
    if arr.dtype == bool:
        arr = arr.astype(np.uint8)
    else:
        arr = (arr.astype(np.int64) % 2).astype(np.uint8)
    if shape is not None:
        arr = arr.reshape(shape)
    return arr


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def mul(*mats: np.ndarray) -> np.ndarray:
    """Matrix product mod 2 of one or more factors (vectors allowed)."""
    out = np.asarray(mats[0], dtype=np.int64)
    for m in mats[1:]:
        out = (out @ np.asarray(m, dtype=np.int64)) % 2
    return out.astype(np.uint8)


def is_zero(M: np.ndarray) -> bool:
    return not np.any(M)


def weight(v: np.ndarray) -> int:
    return int(np.count_nonzero(v))


def unit(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.uint8)
    v[i] = 1
    return v


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form with a replayable elimination record.

    ``rowops`` lists ``(target, source)`` pairs meaning ``row[target] ^=
    row[source]``; applying them in order to the input yields ``R``. Row
    swaps are expressed as three such additions.
    """

    R: np.ndarray
    pivots: tuple[int, ...]
    rowops: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter((self.R, list(self.pivots), list(self.rowops)))


def rref(M: np.ndarray) -> RrefResult:
    R = as_f2(M).copy()
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    ops: list[tuple[int, int]] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            # swap rows r and p via three additions
            for t, s in ((r, p), (p, r), (r, p)):
                R[t] ^= R[s]
                ops.append((t, s))
        for t in np.flatnonzero(R[:, c]):
            t = int(t)
            if t != r:
                R[t] ^= R[r]
                ops.append((t, r))
        pivots.append(c)
        r += 1
    return RrefResult(R, tuple(pivots), tuple(ops))


def rank(M: np.ndarray) -> int:
    M = as_f2(M)
    if M.size == 0:
        return 0
    return len(_pivots(M))


def _pivots(M: np.ndarray) -> list[int]:
    """Pivot columns of the row echelon form (no op recording)."""
    R = M.copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        below = r + 1 + np.flatnonzero(R[r + 1 :, c])
        R[below] ^= R[r]
        pivots.append(c)
        r += 1
    return pivots


def kernel_basis(M: np.ndarray) -> np.ndarray:
    """Columns form a basis of ker M, one per free column of the RREF."""
    M = as_f2(M)
    rows, cols = M.shape
    res = rref(M)
    piv = list(res.pivots)
    free = [c for c in range(cols) if c not in set(piv)]
    K = zeros(cols, len(free))
    for j, f in enumerate(free):
        K[f, j] = 1
        for i, p in enumerate(piv):
            K[p, j] = res.R[i, f]
    return K


def image_basis(M: np.ndarray) -> np.ndarray:
    """Pivot columns of ``M`` in their original order."""
    M = as_f2(M)
    if M.size == 0:
        return zeros(M.shape[0], 0)
    return M[:, _pivots(M)].copy()


def solve(M: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """A solution of ``M x = b`` with free variables zero, or ``None``."""
    M = as_f2(M)
    b = as_f2(b).reshape(-1)
    rows, cols = M.shape
    if b.shape[0] != rows:
        raise ValueError(f"rhs length {b.shape[0]} does not match {rows} rows")
    aug = np.concatenate([M, b[:, None]], axis=1)
    res = rref(aug)
    x = np.zeros(cols, dtype=np.uint8)
    for i, p in enumerate(res.pivots):
        if p == cols:
            return None
        x[p] = res.R[i, cols]
    return x


def solve_many(M: np.ndarray, B: np.ndarray) -> np.ndarray | None:
    """Solve ``M X = B`` column by column; ``None`` if any column fails."""
    M = as_f2(M)
    B = as_f2(B)
    cols = M.shape[1]
    aug = np.concatenate([M, B], axis=1)
    res = rref(aug)
    X = zeros(cols, B.shape[1])
    for i, p in enumerate(res.pivots):
        if p >= cols:
            return None
        X[p] = res.R[i, cols:]
    return X


def in_span(M: np.ndarray, v: np.ndarray) -> bool:
    return solve(M, v) is not None


def inverse(M: np.ndarray) -> np.ndarray:
    M = as_f2(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    X = solve_many(M, eye(n))
    if X is None or rank(M) != n:
        raise np.linalg.LinAlgError("matrix is singular over GF(2)")
    return X


@dataclass(frozen=True)
class Cokernel:
    """Projection onto ``F2^rows / im M``.

    The quotient basis is the set of standard vectors whose indices are not
    pivots; pivots are found scanning from the highest index, so each class
    of glued coordinates is represented by its lowest index.
    """

    P: np.ndarray
    dim: int
    pivots: tuple[int, ...]
    kept: tuple[int, ...]

    def __iter__(self):
        return iter((self.P, self.dim))

    def section(self) -> np.ndarray:
        """Right inverse of ``P``: quotient basis j maps to ``e_{kept[j]}``."""
        S = zeros(self.P.shape[1], self.dim)
        for j, i in enumerate(self.kept):
            S[i, j] = 1
        return S


def cokernel_projection(M: np.ndarray) -> Cokernel:
    M = as_f2(M)
    n = M.shape[0]
    B = image_basis(M).T[:, ::-1]  # image vectors as rows, coordinates reversed
    res = rref(B)
    piv = sorted(n - 1 - p for p in res.pivots)
    kept = [i for i in range(n) if i not in set(piv)]
    P = zeros(len(kept), n)
    for j, i in enumerate(kept):
        P[j, i] = 1
    R = res.R[:, ::-1]
    for row, p in zip(R[: len(piv)], sorted(res.pivots)):
        i = n - 1 - p
        # e_i is congruent to the row minus e_i, which lives on kept coordinates
        P[:, i] = row[kept]
    return Cokernel(P, len(kept), tuple(piv), tuple(kept))


def row_space_contains(M: np.ndarray, v: np.ndarray) -> bool:
    return in_span(as_f2(M).T, v)


def independent(vectors: np.ndarray) -> bool:
    """True if the rows of ``vectors`` are linearly independent."""
    V = as_f2(vectors)
    return rank(V) == V.shape[0]


# --- bit packing for search kernels -------------------------------------


def pack_rows(M: np.ndarray) -> np.ndarray:
    """Pack each row into little-endian uint64 words, shape (rows, words)."""
    M = as_f2(M)
    rows, cols = M.shape
    words = max(1, -(-cols // 64))
    padded = np.zeros((rows, words * 64), dtype=np.uint8)
    padded[:, :cols] = M
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view(np.uint64).reshape(rows, words)


def unpack_rows(P: np.ndarray, cols: int) -> np.ndarray:
    P = np.ascontiguousarray(P, dtype=np.uint64)
    bits = np.unpackbits(P.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :cols].astype(np.uint8)


def popcount(P: np.ndarray) -> np.ndarray:
    """Total set bits along the last axis of a packed array."""
    return np.bitwise_count(P).sum(axis=-1, dtype=np.int64)


def span_table(G: np.ndarray) -> np.ndarray:
    """All ``2**len(G)`` combinations of packed generator rows.

    Entry ``i`` is the XOR of generators ``j`` with bit ``j`` of ``i`` set.
    """
    table = np.zeros((1, G.shape[1]), dtype=np.uint64)
    for g in G:
        table = np.concatenate([table, table ^ g])
    return table


# --- text format ---------------------------------------------------------


def format_matrix(M: np.ndarray) -> str:
    M = as_f2(M)
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    lines += [" ".join(str(int(x)) for x in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    if not isinstance(text, str):
        raise ValueError(f"matrix text must be a string, got {type(text).__name__}")
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        rows, cols = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad matrix header {lines[0]!r}") from exc
    body = lines[1:]
    if cols == 0 and not body:
        return zeros(rows, 0)
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    M = zeros(rows, cols)
    for i, ln in enumerate(body):
        toks = ln.split()
        if len(toks) == 1 and cols > 1:
            toks = list(toks[0])
        if len(toks) != cols or any(t not in "01" for t in toks):
            raise ValueError(f"row {i} is not {cols} bits: {ln!r}")
        M[i] = [int(t) for t in toks]
    return M


def parse_bits(text: str) -> np.ndarray:
    """Parse a bit string such as ``"100100100"`` or ``"1,0,0"``."""
    s = text.replace(",", "").replace(" ", "")
    if not s or any(c not in "01" for c in s):
        raise ValueError(f"not a bit string: {text!r}")
    return np.array([int(c) for c in s], dtype=np.uint8)


def format_bits(v: np.ndarray) -> str:
    return "".join(str(int(x)) for x in np.asarray(v).reshape(-1))
