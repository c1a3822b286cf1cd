"""Surgery along logical operators: merges, splits, gauge fixing and the
sandwiched merge used for a fault-tolerant Z̄⊗Z̄ measurement."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import f2linalg as la
from .chain import (
    ChainComplex,
    ChainMap,
    compose,
    dual_map,
    homology_basis,
    require_valid_map,
    tensor,
)
from .codemap import CodeMap, opposite
from .colimit import Pushout, pushout
from .csscode import (
    CssCode,
    OperatorClass,
    WeightProfile,
    choose_logical_basis,
    classify,
    complete_z_basis,
    direct_sum_codes,
    metrics,
    swap_zx,
    weight_profile,
)
from .errors import (
    CssSurgeryError,
    NotGaugeFixable,
    NotLogical,
    NotSeparated,
    SearchBudgetExceeded,
    StructureMismatch,
)
from .search import DEFAULT_MAX_KERNEL_DIM, min_nontrivial_weight

DEFAULT_MAX_SUPPORT = 22


def _kind(kind: str) -> str:
    k = kind.upper()
    if k not in ("Z", "X"):
        raise ValueError("kind must be 'Z' or 'X'")
    return k


def _as_z(code: CssCode, kind: str) -> CssCode:
    return code if _kind(kind) == "Z" else swap_zx(code)


# -- operator subcomplexes ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OperatorSubcomplex:
    """Length-1 complex carried by the support of a logical operator.

    ``support`` lists host qubits (ascending) forming the degree-0 basis;
    ``checks`` lists the host checks they touch, forming degree -1. When the
    touched rows are dependent on the support, ``H_{-1}`` is nonzero.
    """

    complex: ChainComplex
    support: tuple[int, ...]
    checks: tuple[int, ...]
    host_inclusion: ChainMap

    @property
    def m(self) -> int:
        return len(self.support)

    @property
    def r(self) -> int:
        return len(self.checks)

    @property
    def independent(self) -> bool:
        """True when the touched checks restrict to independent rows."""
        return la.rank(self.boundary) == self.r

    @property
    def boundary(self) -> np.ndarray:
        return self.complex.d(-1)


def operator_subcomplex(code: CssCode, v, kind: str = "Z") -> OperatorSubcomplex:
    """Subcomplex of the Z-type complex (or of the X-type one for ``kind="X"``)."""
    zc = _as_z(code, kind)
    v = la.as_f2(v).reshape(-1)
    cls = classify(zc, v, "Z")
    if cls is not OperatorClass.LOGICAL:
        raise NotLogical(f"operator is {cls.value}, not a logical {kind.upper()} operator")
    support = tuple(int(i) for i in np.flatnonzero(v))
    A = zc.p_x[:, list(support)]
    checks = tuple(int(i) for i in np.flatnonzero(A.any(axis=1)))
    host = zc.z_complex
    V = ChainComplex(
        {0: len(support), -1: len(checks)},
        {-1: A[list(checks)]},
        {0: [host.labels(0)[i] for i in support], -1: [host.labels(-1)[c] for c in checks]},
    )
    sel0 = _selection(zc.n, list(support))
    selm = _selection(zc.p_x.shape[0], list(checks))
    incl = require_valid_map(ChainMap(V, host, {0: sel0, -1: selm}))
    return OperatorSubcomplex(V, support, checks, incl)


def match_subcomplexes(
    VC: OperatorSubcomplex, VD: OperatorSubcomplex, pairing: list[tuple[int, int]] | None = None
) -> tuple[list[int], list[int]]:
    """Align ``VD`` to ``VC``.

    Returns the D qubit and D check matched to each support qubit and check of
    ``VC``. Qubits follow ``pairing`` (host index pairs) or ascending order;
    checks are matched by equal restricted rows, ascending among ties.
    """
    if VC.m != VD.m or VC.r != VD.r:
        raise StructureMismatch(f"subcomplex sizes differ: ({VC.m}, {VC.r}) vs ({VD.m}, {VD.r})")
    if pairing is None:
        qmap = list(VD.support)
    else:
        pmap = dict(pairing)
        if sorted(pmap) != list(VC.support) or sorted(pmap.values()) != list(VD.support):
            raise StructureMismatch("pairing is not a bijection between the supports")
        qmap = [pmap[i] for i in VC.support]
    pos_d = {q: j for j, q in enumerate(VD.support)}
    dD = VD.boundary[:, [pos_d[q] for q in qmap]]
    dC = VC.boundary
    free = list(range(VD.r))
    cmap = []
    for row in dC:
        hit = next((j for j in free if np.array_equal(dD[j], row)), None)
        if hit is None:
            raise StructureMismatch("restricted differentials differ under the support bijection")
        free.remove(hit)
        cmap.append(VD.checks[hit])
    return qmap, cmap


# -- separation --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SeparationReport:
    separated: bool
    condition: str | None = None
    side: str | None = None
    witness: np.ndarray | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.separated

    def as_dict(self) -> dict:
        return {
            "separated": self.separated,
            "condition": self.condition,
            "side": self.side,
            "witness": None if self.witness is None else la.format_bits(self.witness),
            "message": self.message,
        }


def _pairing_signatures(code: CssCode, cols: list[int]) -> np.ndarray:
    """Pairings of each listed qubit with the X-logical representatives (k x m)."""
    y = homology_basis(code.x_complex, 0).representatives
    return y[:, cols]


def check_separation(
    codeC: CssCode,
    codeD: CssCode,
    vC,
    vD,
    kind: str = "Z",
    pairing: list[tuple[int, int]] | None = None,
    max_support: int = DEFAULT_MAX_SUPPORT,
) -> SeparationReport:
    """Decide separation by enumerating every vector supported in the shared support.

    Only cycles of the operator subcomplex can be logical, so the enumeration
    runs over ``ker d^V`` with each vector tagged by its pairings against the
    X-logical representatives of both codes.
    """
    C, D = _as_z(codeC, kind), _as_z(codeD, kind)
    VC = operator_subcomplex(C, vC)
    VD = operator_subcomplex(D, vD)
    if VC.m > max_support:
        raise SearchBudgetExceeded(f"support size {VC.m} exceeds the bound {max_support}")
    qmap, cmap = match_subcomplexes(VC, VD, pairing)
    K = la.kernel_basis(VC.boundary)  # m x kdim, shared by both sides
    sig_c = la.mul(_pairing_signatures(C, list(VC.support)), K)  # kC x kdim
    sig_d = la.mul(_pairing_signatures(D, qmap), K)
    kc = sig_c.shape[0]
    gens = np.concatenate([sig_c, sig_d], axis=0).T  # kdim x (kC + kD)
    table = la.unpack_rows(la.span_table(la.pack_rows(gens)), kc + sig_d.shape[0])
    tc, td = table[:, :kc], table[:, kc:]
    ones = np.ones(VC.m, dtype=np.uint8)
    target_c = la.mul(_pairing_signatures(C, list(VC.support)), ones)
    target_d = la.mul(_pairing_signatures(D, qmap), ones)
    log_c = tc.any(axis=1)
    log_d = td.any(axis=1)
    bad_ac = log_c & (tc != target_c).any(axis=1)
    bad_ad = log_d & (td != target_d).any(axis=1)
    bad_b = log_c != log_d

    def witness(idx: int, side: str) -> np.ndarray:
        coeffs = np.array([(idx >> b) & 1 for b in range(K.shape[1])], dtype=np.uint8)
        s = la.mul(K, coeffs)
        host = np.zeros((C if side == "C" else D).n, dtype=np.uint8)
        cols = list(VC.support) if side == "C" else qmap
        host[cols] = s
        return host

    for bad, cond, side, msg in (
        (bad_ac, "a", "C", "a logical operator inside the support is inequivalent to the merged one"),
        (bad_ad, "a", "D", "a logical operator inside the support is inequivalent to the merged one"),
        (bad_b, "b", "C", "a support vector is logical on one side only"),
    ):
        hits = np.flatnonzero(bad)
        if hits.size:
            return SeparationReport(False, cond, side, witness(int(hits[0]), side), msg)
    rel = _dead_relation(C, D, VC, cmap)
    if rel is not None:
        host = np.zeros(C.p_x.shape[0], dtype=np.uint8)
        host[list(VC.checks)] = rel
        return SeparationReport(False, "c", "C", host, "a glued-check syndrome is reachable in both hosts but not from the support")
    return SeparationReport(True)


def _dead_relation(C: CssCode, D: CssCode, VC: OperatorSubcomplex, cmap: list[int]) -> np.ndarray | None:
    """A class of ``H_{-1}(V)`` vanishing in both ``H_{-1}(C)`` and
    ``H_{-1}(D)``, as a touched-check vector, or ``None``.

    Such a class is a syndrome on the glued checks that Z errors reach in
    both hosts but not from the support; each one adds a logical qubit.
    """
    if VC.independent:
        return None
    qC = la.cokernel_projection(C.p_x).P
    qD = la.cokernel_projection(D.p_x).P
    selC = _selection(C.p_x.shape[0], list(VC.checks))
    selD = _selection(D.p_x.shape[0], cmap)
    N = la.kernel_basis(np.concatenate([la.mul(qC, selC), la.mul(qD, selD)], axis=0))
    B = VC.boundary
    for x in N.T:
        if not la.in_span(B, x):
            return x
    return None


# -- merges --------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MergeResult:
    merged: CssCode
    merge_map: CodeMap
    qubit_identifications: list[tuple[int, int, int]]
    check_identifications: list[tuple[int, int, int]]
    kind: str
    n_v: int
    separated: bool
    square: Pushout | None = field(default=None, repr=False)

    def report(self) -> dict:
        src = self.merge_map.source if self.kind == "Z" else self.merge_map.target
        return {
            "kind": self.kind,
            "n_merged": self.merged.n,
            "k_merged": self.merged.k,
            "n_sum": src.n,
            "k_sum": src.k,
            "n_v": self.n_v,
            "separated": self.separated,
        }


def _selection(n: int, cols: list[int]) -> np.ndarray:
    S = la.zeros(n, len(cols))
    S[cols, range(len(cols))] = 1
    return S


def _unit_index(col: np.ndarray) -> int:
    nz = np.flatnonzero(col)
    if nz.size != 1:
        raise CssSurgeryError("expected a basis vector image")
    return int(nz[0])


def z_merge(
    codeC: CssCode,
    codeD: CssCode,
    vC,
    vD,
    pairing: list[tuple[int, int]] | None = None,
    force: bool = False,
    max_support: int = DEFAULT_MAX_SUPPORT,
) -> MergeResult:
    vC = la.as_f2(vC).reshape(-1)
    vD = la.as_f2(vD).reshape(-1)
    VC = operator_subcomplex(codeC, vC)
    VD = operator_subcomplex(codeD, vD)
    qmap, cmap = match_subcomplexes(VC, VD, pairing)
    separated = True
    if not force:
        rep = check_separation(codeC, codeD, vC, vD, "Z", pairing, max_support)
        if not rep:
            raise NotSeparated(rep)
    else:
        separated = bool(check_separation(codeC, codeD, vC, vD, "Z", pairing, max_support)) if VC.m <= max_support else False
    V = VC.complex
    g = require_valid_map(
        ChainMap(V, codeD.z_complex, {0: _selection(codeD.n, qmap), -1: _selection(codeD.p_x.shape[0], cmap)})
    )
    po = pushout(VC.host_inclusion, g, ("C.", "D."))
    merged = CssCode.from_complex(po.Q)
    zC = complete_z_basis(codeC, [vC])
    zD = complete_z_basis(codeD, [vD])
    bC = choose_logical_basis(codeC, zC)
    bD = choose_logical_basis(codeD, zD)
    total = direct_sum_codes(bC, bD)
    # merged logical basis: the glued class first, then the remaining classes of C and D
    emb_c, emb_d = po.k[0], po.l[0]
    cand = [la.mul(emb_c, zC[0])] + [la.mul(emb_c, z) for z in zC[1:]] + [la.mul(emb_d, z) for z in zD[1:]]
    try:
        merged = choose_logical_basis(merged, np.array(cand, dtype=np.uint8).reshape(-1, merged.n))
    except CssSurgeryError:
        merged = choose_logical_basis(merged)
    forward = ChainMap(total.z_complex, merged.z_complex, dict(po.coeq.components))
    mmap = CodeMap(total, merged, forward, "Z")
    qids = [(c, d, _unit_index(po.k[0][:, c])) for c, d in zip(VC.support, qmap)]
    cids = [(c, d, _unit_index(po.k[-1][:, c])) for c, d in zip(VC.checks, cmap)]
    return MergeResult(merged, mmap, qids, cids, "Z", VC.m, separated, po)


def x_merge(
    codeC: CssCode,
    codeD: CssCode,
    vC,
    vD,
    pairing: list[tuple[int, int]] | None = None,
    force: bool = False,
    max_support: int = DEFAULT_MAX_SUPPORT,
) -> MergeResult:
    """Glue along X̄ operators by merging the swapped codes and swapping back."""
    r = z_merge(swap_zx(codeC), swap_zx(codeD), vC, vD, pairing, force, max_support)
    merged = swap_zx(r.merged)
    total = swap_zx(r.merge_map.source)
    d = dual_map(r.merge_map.forward)
    forward = ChainMap(merged.z_complex, total.z_complex, dict(d.components))
    mmap = CodeMap(merged, total, forward, "X")
    return MergeResult(merged, mmap, r.qubit_identifications, r.check_identifications, "X", r.n_v, r.separated, r.square)


def split_map(m: MergeResult) -> CodeMap:
    return opposite(m.merge_map)


@dataclass(frozen=True)
class LdpcReport:
    values: dict
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {"ok": self.ok, "values": self.values, "checks": self.checks}


def _sum_bound(a: int, b: int, m: MergeResult) -> int:
    # strict when some checks are glued; with none glued no check grows
    return a + b - 1 if m.check_identifications else max(a, b)


def ldpc_bounds_check(m: MergeResult, pC: WeightProfile, pD: WeightProfile) -> LdpcReport:
    """Weight bounds of a separated merge; X merges use the transposed bounds."""
    pQ = weight_profile(m.merged)
    if m.kind == "Z":
        checks = {
            "w_z": pQ.w_z == max(pC.w_z, pD.w_z),
            "w_x": pQ.w_x <= _sum_bound(pC.w_x, pD.w_x, m),
            "q_z": pQ.q_z <= pC.q_z + pD.q_z,
            "q_x": pQ.q_x == max(pC.q_x, pD.q_x),
        }
    else:
        checks = {
            "w_x": pQ.w_x == max(pC.w_x, pD.w_x),
            "w_z": pQ.w_z <= _sum_bound(pC.w_z, pD.w_z, m),
            "q_x": pQ.q_x <= pC.q_x + pD.q_x,
            "q_z": pQ.q_z == max(pC.q_z, pD.q_z),
        }
    values = {"Q": pQ.as_dict(), "C": pC.as_dict(), "D": pD.as_dict()}
    return LdpcReport(values, checks)


# -- gauge fixing ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GaugeFixReport:
    fixable: bool
    operators: list[np.ndarray]
    witness_qubit: int | None = None

    def __bool__(self) -> bool:
        return self.fixable

    def as_dict(self) -> dict:
        return {
            "fixable": self.fixable,
            "operators": [la.format_bits(v) for v in self.operators],
            "witness_qubit": self.witness_qubit,
        }


def check_gauge_fixable(code: CssCode, v, kind: str = "Z") -> GaugeFixReport:
    """Find, for every support qubit, an X̄ representative of the class paired
    with ``v`` that touches that qubit alone within the support.

    The paired class depends on the rest of the logical basis, so every class
    pairing to one with ``v`` is tried; the first class that fixes every
    qubit wins.
    """
    zc = _as_z(code, kind)
    v = la.as_f2(v).reshape(-1)
    if classify(zc, v, "Z") is not OperatorClass.LOGICAL:
        raise NotLogical("operator is not logical")
    based = choose_logical_basis(zc, complete_z_basis(zc, [v]))
    xs = based.logical_basis.x_reps
    base, others = xs[0], xs[1:]
    supp = list(np.flatnonzero(v))
    A = zc.p_x.T[supp]  # support rows of im P_X^T generators
    first_fail = None
    for mask in range(1 << len(others)):
        w = base.copy()
        for b in range(len(others)):
            if mask >> b & 1:
                w ^= others[b]
        ops = []
        for pos, q in enumerate(supp):
            rhs = w[supp].copy()
            rhs[pos] ^= 1
            t = la.solve(A, rhs)
            if t is None:
                if first_fail is None:
                    first_fail = int(q)
                break
            ops.append(w ^ la.mul(zc.p_x.T, t))
        else:
            return GaugeFixReport(True, ops)
    return GaugeFixReport(False, [], first_fail)


# -- the sandwiched merge --------------------------------------------------------------------------


def interval_complex() -> ChainComplex:
    """Two vertices joined by an edge: ``F2 -> F2^2`` in degrees 1, 0."""
    return ChainComplex({1: 1, 0: 2}, {0: [[1], [1]]}, {1: ["e"], 0: ["a", "b"]})


def sandwich_complex(V: OperatorSubcomplex | ChainComplex) -> ChainComplex:
    Vc = V.complex if isinstance(V, OperatorSubcomplex) else V
    return tensor(interval_complex(), Vc)


def _copy_map(V: ChainComplex, W: ChainComplex, copy: int) -> ChainMap:
    m, r = V.dim(0), V.dim(-1)
    i0 = la.zeros(W.dim(0), m)
    i0[copy * m + np.arange(m), np.arange(m)] = 1
    im1 = la.zeros(W.dim(-1), r)
    im1[copy * r + np.arange(r), np.arange(r)] = 1
    return require_valid_map(ChainMap(V, W, {0: i0, -1: im1}))


@dataclass(frozen=True, eq=False)
class SandwichPlan:
    """Everything needed to run the merge: the codes, the sandwiched code T,
    the intermediate W, and where each piece lives inside T."""

    code_c: CssCode
    code_d: CssCode
    op_c: np.ndarray
    op_d: np.ndarray
    sandwiched: CssCode
    intermediate: ChainComplex
    fresh_qubits: int
    new_z_checks: int
    rounds: int | None
    gauge_fix_operators: list[np.ndarray]
    t_of_c: np.ndarray
    t_of_d: np.ndarray
    fresh_t: np.ndarray
    new_check_t: np.ndarray

    @property
    def r(self) -> int:
        return self.fresh_qubits

    @property
    def m(self) -> int:
        return self.new_z_checks

    def op_in_t(self) -> np.ndarray:
        v = np.zeros(self.sandwiched.n, dtype=np.uint8)
        v[self.t_of_c[np.flatnonzero(self.op_c)]] = 1
        return v

    def physical_of_t(self) -> np.ndarray:
        """Physical qubit of each T qubit: C first, then D, then fresh qubits."""
        nc, nd = self.code_c.n, self.code_d.n
        phys = np.full(self.sandwiched.n, -1, dtype=np.int64)
        phys[self.t_of_c] = np.arange(nc)
        phys[self.t_of_d] = nc + np.arange(nd)
        phys[self.fresh_t] = nc + nd + np.arange(len(self.fresh_t))
        return phys

    def report(self) -> dict:
        return {
            "n_c": self.code_c.n,
            "n_d": self.code_d.n,
            "n_t": self.sandwiched.n,
            "k_t": self.sandwiched.k,
            "r": self.r,
            "m": self.m,
            "rounds": self.rounds,
            "t_dims": [self.sandwiched.p_z.shape[0], self.sandwiched.n, self.sandwiched.p_x.shape[0]],
        }


def build_sandwich(
    codeC: CssCode,
    codeD: CssCode,
    vC,
    vD,
    pairing: list[tuple[int, int]] | None = None,
    max_support: int = DEFAULT_MAX_SUPPORT,
    max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM,
    compute_rounds: bool = True,
) -> SandwichPlan:
    """Glue ``W = P ⊗ V`` to ``C`` along one copy of ``V`` and to ``D`` along
    the other. Raises on each failed precondition in turn."""
    vC = la.as_f2(vC).reshape(-1)
    vD = la.as_f2(vD).reshape(-1)
    VC = operator_subcomplex(codeC, vC)
    VD = operator_subcomplex(codeD, vD)
    qmap, cmap = match_subcomplexes(VC, VD, pairing)
    sep = check_separation(codeC, codeD, vC, vD, "Z", pairing, max_support)
    if not sep:
        raise NotSeparated(sep)
    fixC = check_gauge_fixable(codeC, vC)
    if not fixC:
        raise NotGaugeFixable(fixC.witness_qubit)
    fixD = check_gauge_fixable(codeD, vD)
    if not fixD:
        raise NotGaugeFixable(fixD.witness_qubit)
    V = VC.complex
    W = sandwich_complex(V)
    g = require_valid_map(
        ChainMap(V, codeD.z_complex, {0: _selection(codeD.n, qmap), -1: _selection(codeD.p_x.shape[0], cmap)})
    )
    first = pushout(VC.host_inclusion, _copy_map(V, W, 0), ("C.", "W."))
    second = pushout(compose(first.l, _copy_map(V, W, 1)), g, ("", "D."))
    T = CssCode.from_complex(second.Q)
    c_to_t = compose(second.k, first.k)
    w_to_t = compose(second.k, first.l)
    t_of_c = np.array([_unit_index(c_to_t[0][:, i]) for i in range(codeC.n)], dtype=np.int64)
    t_of_d = np.array([_unit_index(second.l[0][:, i]) for i in range(codeD.n)], dtype=np.int64)
    m, r = VC.m, VC.r
    fresh_t = np.array([_unit_index(w_to_t[0][:, 2 * m + i]) for i in range(r)], dtype=np.int64)
    new_check_t = np.array([_unit_index(w_to_t[1][:, j]) for j in range(m)], dtype=np.int64)
    gauge = []
    for op in fixC.operators:
        t = np.zeros(T.n, dtype=np.uint8)
        t[t_of_c[np.flatnonzero(op)]] = 1
        gauge.append(t)
    rounds = None
    if compute_rounds:
        mc, md = metrics(codeC, max_kernel_dim), metrics(codeD, max_kernel_dim)
        ds = [d for d in (mc.d, md.d) if d is not None]
        rounds = min(ds) if ds else None
    return SandwichPlan(
        codeC, codeD, vC, vD, T, W, r, m, rounds, gauge, t_of_c, t_of_d, fresh_t, new_check_t
    )


def sandwich_checks(plan: SandwichPlan) -> dict:
    """Counting identities and weight bounds relating T to C ⊕ D."""
    C, D, T = plan.code_c, plan.code_d, plan.sandwiched
    S = direct_sum_codes(C, D)
    pS, pT = weight_profile(S), weight_profile(T)
    return {
        "n_T": T.n == C.n + D.n + plan.r,
        "k_T": T.k == C.k + D.k - 1,
        "w_x": pT.w_x <= pS.w_x + 1,
        "w_z": pT.w_z <= max(pS.w_z, pS.q_x + 2),
        "q_z": pT.q_z <= pS.q_z + pS.w_x,
        "q_x": pT.q_x == max(pS.q_x, 2),
    }


def check_distance_bounded_below(
    plan: SandwichPlan, d_before: int, max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM
) -> bool:
    """True iff T has no nontrivial Z̄ operator of weight below ``d_before``."""
    T = plan.sandwiched
    res = min_nontrivial_weight(T.p_x, T.p_z.T, below=d_before, max_kernel_dim=max_kernel_dim)
    return res.weight is None


def short_logical(plan: SandwichPlan, d_before: int, max_kernel_dim: int = DEFAULT_MAX_KERNEL_DIM):
    """A nontrivial Z̄ of T lighter than ``d_before``, or ``None``."""
    T = plan.sandwiched
    return min_nontrivial_weight(T.p_x, T.p_z.T, below=d_before, max_kernel_dim=max_kernel_dim).witness


# -- plan serialization -------------------------------------------------------------------------


def plan_to_json(plan: SandwichPlan) -> dict:
    from .chain import complex_to_json
    from .csscode import code_to_json

    return {
        "code_c": code_to_json(plan.code_c),
        "code_d": code_to_json(plan.code_d),
        "op_c": la.format_bits(plan.op_c),
        "op_d": la.format_bits(plan.op_d),
        "sandwiched": code_to_json(plan.sandwiched),
        "intermediate": complex_to_json(plan.intermediate),
        "fresh_qubits": plan.fresh_qubits,
        "new_z_checks": plan.new_z_checks,
        "rounds": plan.rounds,
        "gauge_fix_operators": [la.format_bits(v) for v in plan.gauge_fix_operators],
        "layout": {
            "t_of_c": plan.t_of_c.tolist(),
            "t_of_d": plan.t_of_d.tolist(),
            "fresh_t": plan.fresh_t.tolist(),
            "new_check_t": plan.new_check_t.tolist(),
        },
    }


def plan_from_json(data: dict) -> SandwichPlan:
    from .chain import complex_from_json
    from .csscode import code_from_json

    lay = data["layout"]
    return SandwichPlan(
        code_from_json(data["code_c"]),
        code_from_json(data["code_d"]),
        la.parse_bits(data["op_c"]),
        la.parse_bits(data["op_d"]),
        code_from_json(data["sandwiched"]),
        complex_from_json(data["intermediate"]),
        int(data["fresh_qubits"]),
        int(data["new_z_checks"]),
        data.get("rounds"),
        [la.parse_bits(s) for s in data["gauge_fix_operators"]],
        np.array(lay["t_of_c"], dtype=np.int64),
        np.array(lay["t_of_d"], dtype=np.int64),
        np.array(lay["fresh_t"], dtype=np.int64),
        np.array(lay["new_check_t"], dtype=np.int64),
    )


def plans_equal(a: SandwichPlan, b: SandwichPlan) -> bool:
    return plan_to_json(a) == plan_to_json(b)
