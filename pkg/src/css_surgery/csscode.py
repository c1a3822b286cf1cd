"""CSS codes as a length-2 chain complex paired with its dual.

The Z-type complex sits in degrees ``1, 0, -1`` with ``d_0 = P_Z^T`` (Z checks
to qubits) and ``d_{-1} = P_X`` (qubits to X checks).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from . import f2linalg as la
from .chain import ChainComplex, direct_sum, dual, homology_basis, homology_dim
from .errors import CommutationError, CssSurgeryError
from .search import DEFAULT_MAX_KERNEL_DIM, min_nontrivial_weight


class OperatorClass(str, enum.Enum):
    LOGICAL = "logical"
    STABILIZER = "stabilizer"
    DETECTABLE = "detectable"


@dataclass(frozen=True, eq=False)
class LogicalBasis:
    """Rows of ``z_reps`` and ``x_reps`` pair to the identity matrix."""

    z_reps: np.ndarray
    x_reps: np.ndarray

    @property
    def k(self) -> int:
        return self.z_reps.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LogicalBasis):
            return NotImplemented
        return np.array_equal(self.z_reps, other.z_reps) and np.array_equal(self.x_reps, other.x_reps)


@dataclass(frozen=True, eq=False)
class CssCode:
    p_x: np.ndarray
    p_z: np.ndarray
    labels: tuple[str, ...] = ()
    logical_basis: LogicalBasis | None = field(default=None)

    def __post_init__(self):
        p_x = la.as_f2(self.p_x)
        p_z = la.as_f2(self.p_z)
        if p_x.ndim != 2 or p_z.ndim != 2:
            raise ValueError("parity matrices must be 2-d")
        if p_x.shape[1] != p_z.shape[1]:
            raise ValueError(f"P_X has {p_x.shape[1]} columns but P_Z has {p_z.shape[1]}")
        prod = la.mul(p_x, p_z.T)
        if prod.any():
            i, j = (int(t) for t in np.argwhere(prod)[0])
            raise CommutationError(f"X check {i} anticommutes with Z check {j}")
        p_x.setflags(write=False)
        p_z.setflags(write=False)
        object.__setattr__(self, "p_x", p_x)
        object.__setattr__(self, "p_z", p_z)
        labels = tuple(self.labels) or tuple(f"q{i}" for i in range(p_x.shape[1]))
        if len(labels) != p_x.shape[1]:
            raise ValueError("one label per qubit required")
        object.__setattr__(self, "labels", labels)
        if self.logical_basis is not None:
            _check_basis(self, self.logical_basis)

    @property
    def n(self) -> int:
        return self.p_x.shape[1]

    @cached_property
    def z_complex(self) -> ChainComplex:
        mz, mx = self.p_z.shape[0], self.p_x.shape[0]
        return ChainComplex(
            {1: mz, 0: self.n, -1: mx},
            {0: self.p_z.T, -1: self.p_x},
            {1: [f"z{i}" for i in range(mz)], 0: list(self.labels), -1: [f"x{i}" for i in range(mx)]},
        )

    @cached_property
    def x_complex(self) -> ChainComplex:
        return dual(self.z_complex)

    @cached_property
    def k(self) -> int:
        return homology_dim(self.z_complex, 0)

    @property
    def based(self) -> bool:
        return self.logical_basis is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CssCode):
            return NotImplemented
        return (
            np.array_equal(self.p_x, other.p_x)
            and np.array_equal(self.p_z, other.p_z)
            and self.logical_basis == other.logical_basis
        )

    def __repr__(self) -> str:
        return f"CssCode(n={self.n}, x_checks={self.p_x.shape[0]}, z_checks={self.p_z.shape[0]})"

    @classmethod
    def from_complex(cls, C: ChainComplex) -> "CssCode":
        """Read a code off a complex supported in degrees ``1, 0, -1``."""
        extra = [n for n in C.degrees if n not in (1, 0, -1)]
        if extra:
            raise ValueError(f"complex has components outside degrees 1, 0, -1: {extra}")
        return cls(C.d(-1).copy(), C.d(0).T.copy(), C.labels(0))


def from_parity_checks(p_x, p_z, labels=()) -> CssCode:
    return CssCode(la.as_f2(p_x), la.as_f2(p_z), tuple(labels))


@dataclass(frozen=True)
class CodeMetrics:
    n: int
    k: int
    d_z: int | None
    d_x: int | None

    @property
    def d(self) -> int | None:
        if self.d_z is None or self.d_x is None:
            return None
        return min(self.d_z, self.d_x)

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d_z": self.d_z, "d_x": self.d_x, "d": self.d}


@dataclass(frozen=True)
class WeightProfile:
    w_z: int
    w_x: int
    q_z: int
    q_x: int

    def as_dict(self) -> dict:
        return {"w_z": self.w_z, "w_x": self.w_x, "q_z": self.q_z, "q_x": self.q_x}


def z_distance(code: CssCode, max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM) -> int | None:
    """Systolic distance; ``None`` when ``k = 0``."""
    return min_nontrivial_weight(code.p_x, code.p_z.T, max_kernel_dim=max_kernel_dim).weight


def x_distance(code: CssCode, max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM) -> int | None:
    return min_nontrivial_weight(code.p_z, code.p_x.T, max_kernel_dim=max_kernel_dim).weight


def metrics(code: CssCode, max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM) -> CodeMetrics:
    return CodeMetrics(code.n, code.k, z_distance(code, max_kernel_dim), x_distance(code, max_kernel_dim))


def _max_or_zero(a: np.ndarray) -> int:
    return int(a.max()) if a.size else 0


def weight_profile(code: CssCode) -> WeightProfile:
    return WeightProfile(
        w_z=_max_or_zero(code.p_z.sum(axis=1)),
        w_x=_max_or_zero(code.p_x.sum(axis=1)),
        q_z=_max_or_zero(code.p_z.sum(axis=0)),
        q_x=_max_or_zero(code.p_x.sum(axis=0)),
    )


def classify(code: CssCode, v: np.ndarray, kind: str = "Z") -> OperatorClass:
    """Detectable, stabilizer or nontrivial logical operator of the given type."""
    v = la.as_f2(v).reshape(-1)
    if v.shape[0] != code.n:
        raise ValueError(f"operator has length {v.shape[0]}, code has {code.n} qubits")
    opposing, own = (code.p_x, code.p_z) if kind.upper() == "Z" else (code.p_z, code.p_x)
    if la.mul(opposing, v).any():
        return OperatorClass.DETECTABLE
    if la.in_span(own.T, v):
        return OperatorClass.STABILIZER
    return OperatorClass.LOGICAL


is_operator_logical = classify


def _pair_x_reps(code: CssCode, z_reps: np.ndarray) -> np.ndarray:
    y = homology_basis(code.x_complex, 0).representatives
    G = la.mul(z_reps, y.T)
    try:
        Ginv = la.inverse(G)
    except np.linalg.LinAlgError as exc:
        raise CssSurgeryError("degenerate logical pairing") from exc
    return la.mul(Ginv.T, y)


def choose_logical_basis(code: CssCode, z_reps: np.ndarray | None = None) -> CssCode:
    """Attach a logical basis with pairing matrix exactly the identity.

    ``z_reps`` defaults to the deterministic homology representatives; when
    given, its rows must be a basis of ``H_0``.
    """
    if z_reps is None:
        z_reps = homology_basis(code.z_complex, 0).representatives
    z_reps = la.as_f2(z_reps).reshape(-1, code.n)
    if z_reps.shape[0] != code.k:
        raise CssSurgeryError(f"{z_reps.shape[0]} representatives given for k = {code.k}")
    x_reps = _pair_x_reps(code, z_reps)
    return replace(code, logical_basis=LogicalBasis(z_reps.copy(), x_reps))


def complete_z_basis(code: CssCode, first: list[np.ndarray]) -> np.ndarray:
    """Extend the classes of ``first`` to a basis of ``H_0``, keeping their order."""
    hb = homology_basis(code.z_complex, 0)
    chosen = [la.as_f2(v).reshape(-1) for v in first]
    B = hb.boundary_basis

    def independent_mod_boundary(vs):
        M = np.concatenate([B, np.array(vs, dtype=np.uint8).T], axis=1) if vs else B
        return la.rank(M) == B.shape[1] + len(vs)

    if chosen and not independent_mod_boundary(chosen):
        raise CssSurgeryError("given operators are dependent modulo stabilizers")
    for r in hb.representatives:
        if independent_mod_boundary(chosen + [r]):
            chosen.append(r)
    return np.array(chosen, dtype=np.uint8).reshape(-1, code.n)


def ensure_based(code: CssCode) -> CssCode:
    return code if code.based else choose_logical_basis(code)


def _check_basis(code: CssCode, basis: LogicalBasis) -> None:
    z, x = basis.z_reps, basis.x_reps
    if z.shape != x.shape or z.shape[1:] != (code.n,):
        raise CssSurgeryError("logical basis has the wrong shape")
    if la.mul(code.p_x, z.T).any() or la.mul(code.p_z, x.T).any():
        raise CssSurgeryError("logical representatives are not cycles")
    if not np.array_equal(la.mul(z, x.T), la.eye(z.shape[0])):
        raise CssSurgeryError("logical pairing is not the identity")


def swap_zx(code: CssCode) -> CssCode:
    basis = None
    if code.logical_basis is not None:
        basis = LogicalBasis(code.logical_basis.x_reps, code.logical_basis.z_reps)
    return CssCode(code.p_z, code.p_x, code.labels, basis)


def direct_sum_codes(a: CssCode, b: CssCode) -> CssCode:
    """Disjoint union with qubits of ``a`` first; bases concatenate if both present."""
    S = direct_sum(a.z_complex, b.z_complex, ("C.", "D."))
    code = CssCode.from_complex(S)
    if a.based and b.based:
        def blk(p, q):
            out = la.zeros(p.shape[0] + q.shape[0], a.n + b.n)
            out[: p.shape[0], : a.n] = p
            out[p.shape[0] :, a.n :] = q
            return out

        la_, lb = a.logical_basis, b.logical_basis
        code = replace(code, logical_basis=LogicalBasis(blk(la_.z_reps, lb.z_reps), blk(la_.x_reps, lb.x_reps)))
    return code


def code_to_json(code: CssCode) -> dict:
    out = {
        "p_x": la.format_matrix(code.p_x),
        "p_z": la.format_matrix(code.p_z),
        "labels": list(code.labels),
    }
    if code.logical_basis is not None:
        out["logical_basis"] = {
            "z_reps": [la.format_bits(v) for v in code.logical_basis.z_reps],
            "x_reps": [la.format_bits(v) for v in code.logical_basis.x_reps],
        }
    return out


def code_from_json(data: dict) -> CssCode:
    p_x = la.parse_matrix(data["p_x"])
    p_z = la.parse_matrix(data["p_z"])
    basis = None
    if "logical_basis" in data:
        n = p_x.shape[1]
        zs = [la.parse_bits(s) for s in data["logical_basis"]["z_reps"]]
        xs = [la.parse_bits(s) for s in data["logical_basis"]["x_reps"]]
        basis = LogicalBasis(
            np.array(zs, dtype=np.uint8).reshape(-1, n), np.array(xs, dtype=np.uint8).reshape(-1, n)
        )
    return CssCode(p_x, p_z, tuple(data.get("labels", ())), basis)
