"""Small named codes used as fixtures and by the CLI."""

from __future__ import annotations

import numpy as np

from . import f2linalg as la
from .csscode import CssCode, from_parity_checks


def shor_code() -> CssCode:
    """The [[9,1,3]] Shor code: three phase-flip blocks of bit-flip triples."""
    p_x = np.array(
        [[1, 1, 1, 1, 1, 1, 0, 0, 0], [1, 1, 1, 0, 0, 0, 1, 1, 1]], dtype=np.uint8
    )
    p_z = la.zeros(6, 9)
    for row, (a, b) in enumerate([(0, 1), (0, 2), (3, 4), (3, 5), (6, 7), (6, 8)]):
        p_z[row, [a, b]] = 1
    return from_parity_checks(p_x, p_z)


def repetition_checks(n: int) -> np.ndarray:
    """Parity checks ``x_0 + x_i`` of the length-``n`` repetition code."""
    P = la.zeros(n - 1, n)
    P[:, 0] = 1
    P[np.arange(n - 1), np.arange(1, n)] = 1
    return P


def random_css_code(rng: np.random.Generator, n: int, mx: int, mz: int) -> CssCode:
    """Random code: ``P_Z`` uniform, ``P_X`` rows drawn from ``ker P_Z``."""
    p_z = rng.integers(0, 2, (mz, n), dtype=np.uint8)
    K = la.kernel_basis(p_z)
    coeffs = rng.integers(0, 2, (mx, K.shape[1]), dtype=np.uint8)
    p_x = la.mul(coeffs, K.T) if K.shape[1] else la.zeros(mx, n)
    return from_parity_checks(p_x, p_z)


def random_code_map(
    rng: np.random.Generator, n: int, n_out: int, mx: int = 2, mz: int = 2, source: CssCode | None = None
):
    """Random Z̄-preserving code map out of ``source`` (a random code by default).

    The target's Z checks are the images of the source's (``f_1 = I``) and its
    X checks are drawn from the left kernel of ``f_0`` (``f_{-1} = 0``).
    """
    from .codemap import make_code_map

    src = source if source is not None else random_css_code(rng, n, mx, mz)
    n, mz, mx_src = src.n, src.p_z.shape[0], src.p_x.shape[0]
    f0 = rng.integers(0, 2, (n_out, n), dtype=np.uint8)
    p_z = la.mul(f0, src.p_z.T).T
    L = la.kernel_basis(f0.T)
    coeffs = rng.integers(0, 2, (mx, L.shape[1]), dtype=np.uint8)
    p_x = la.mul(coeffs, L.T) if L.shape[1] else la.zeros(mx, n_out)
    tgt = from_parity_checks(p_x, p_z)
    return make_code_map(src, tgt, la.eye(mz), f0, la.zeros(mx, mx_src))
