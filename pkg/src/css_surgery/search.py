"""Exact minimum-weight searches for nontrivial homology classes.

Two exact strategies are combined:

* weight-ordered enumeration of qubit subsets, bucketed by syndrome, which
  is cheap whenever the answer is small;
* vectorised enumeration of the whole cycle space ``ker A`` as cosets of the
  boundary space, which is cheap whenever ``dim ker A`` is small.

Whichever is predicted cheaper runs first; a ``SearchBudgetExceeded`` is
raised only when neither fits the budget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from . import f2linalg as la
from .errors import SearchBudgetExceeded

DEFAULT_MAX_KERNEL_DIM = 28
# python-level subset visits allowed in the weight-ordered search
DEFAULT_SUBSET_BUDGET = 3_000_000
_TABLE_BITS = 16


@dataclass(frozen=True)
class MinWeight:
    """Result of a minimum-weight search; ``weight`` is ``None`` when no
    nontrivial class exists."""

    weight: int | None
    witness: np.ndarray | None


def _ints(M: np.ndarray) -> list[int]:
    """Column ``j`` of ``M`` as a Python int bitmask over rows."""
    M = la.as_f2(M)
    out = []
    for col in M.T:
        v = 0
        for i in np.flatnonzero(col):
            v |= 1 << int(i)
        out.append(v)
    return out


def _weight_ordered(
    A: np.ndarray, duals: np.ndarray, max_weight: int, budget: int
) -> tuple[MinWeight | None, bool]:
    """Search weights ``1..max_weight``; returns (result, exhausted_ok).

    A vector ``v`` is nontrivial iff ``A v = 0`` and some dual
    representative pairs to one with it.
    """
    n = A.shape[1]
    syn = _ints(A)
    sig = _ints(duals)
    buckets: dict[int, list[int]] = {}
    for j, s in enumerate(syn):
        buckets.setdefault(s, []).append(j)
    spent = 0
    for w in range(1, max_weight + 1):
        spent += comb(n, w - 1)
        if spent > budget:
            return None, False
        for head in itertools.combinations(range(n), w - 1):
            s = 0
            g = 0
            for j in head:
                s ^= syn[j]
                g ^= sig[j]
            last = head[-1] if head else -1
            for j in buckets.get(s, ()):
                if j > last and g ^ sig[j]:
                    v = np.zeros(n, dtype=np.uint8)
                    v[list(head) + [j]] = 1
                    return MinWeight(w, v), True
    return MinWeight(None, None), True


def _coset_enumeration(reps: np.ndarray, boundary: np.ndarray, n: int) -> MinWeight:
    """Minimum weight over ``reps-span \\ {0} + boundary-span``."""
    k = reps.shape[0]
    if k == 0:
        return MinWeight(None, None)
    gens = np.concatenate([boundary, reps], axis=0)
    packed = la.pack_rows(gens)
    nb = boundary.shape[0]
    total = packed.shape[0]
    low = min(_TABLE_BITS, total)
    table = la.span_table(packed[:low])
    # table entries that already include a homology representative
    idx = np.arange(1 << low, dtype=np.int64)
    low_rep_bits = sum(1 << b for b in range(nb, low))
    low_has_rep = (idx & low_rep_bits) != 0
    high = packed[low:]
    hb = high.shape[0]
    high_rep_mask = sum(1 << (b - low) for b in range(max(nb, low), total))
    best_w = n + 1
    best_vec = None
    acc = np.zeros(packed.shape[1], dtype=np.uint64)
    prev_gray = 0
    for i in range(1 << hb):
        gray = i ^ (i >> 1)
        if i:
            flip = (gray ^ prev_gray).bit_length() - 1
            acc = acc ^ high[flip]
        prev_gray = gray
        weights = la.popcount(table ^ acc)
        if not gray & high_rep_mask:
            if not low_rep_bits:
                continue
            weights = np.where(low_has_rep, weights, n + 1)
        j = int(np.argmin(weights))
        if weights[j] < best_w:
            best_w = int(weights[j])
            best_vec = (table[j] ^ acc)[None, :]
    return MinWeight(best_w, la.unpack_rows(best_vec, n)[0])


def _cycle_data(A: np.ndarray, B: np.ndarray):
    from .chain import ChainComplex, homology_basis

    n = A.shape[1]
    C = ChainComplex({1: B.shape[1], 0: n, -1: A.shape[0]}, {0: B, -1: A})
    hb = homology_basis(C, 0)
    dual = homology_basis(ChainComplex({1: A.shape[0], 0: n, -1: B.shape[1]}, {0: A.T, -1: B.T}), 0)
    return hb, dual.representatives


def min_nontrivial_weight(
    A: np.ndarray,
    B: np.ndarray,
    *,
    below: int | None = None,
    max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> MinWeight:
    """Minimum weight of ``v`` with ``A v = 0`` and ``v`` outside the column
    span of ``B``.

    With ``below`` set, only weights strictly below it are searched and a
    result with ``weight=None`` means none exists there.
    """
    A = la.as_f2(A)
    B = la.as_f2(B)
    n = A.shape[1]
    hb, duals = _cycle_data(A, B)
    if hb.k == 0:
        return MinWeight(None, None)
    cap = n if below is None else min(n, below - 1)
    if cap <= 0:
        return MinWeight(None, None)
    kernel_dim = hb.k + hb.boundary_basis.shape[1]
    coset_cost = 2 ** kernel_dim
    subset_cost = sum(comb(n, w) for w in range(cap))
    order = ["subset", "coset"] if subset_cost * 32 <= coset_cost else ["coset", "subset"]
    for method in order:
        if method == "subset":
            res, ok = _weight_ordered(A, duals, cap, subset_budget)
            if ok:
                return res
        elif kernel_dim <= max_kernel_dim:
            res = _coset_enumeration(hb.representatives, hb.boundary_basis.T, n)
            if below is not None and res.weight is not None and res.weight >= below:
                return MinWeight(None, None)
            return res
    raise SearchBudgetExceeded(
        f"kernel dimension {kernel_dim} exceeds {max_kernel_dim} and the weight-ordered "
        f"search up to weight {cap} exceeds {subset_budget} subsets"
    )
