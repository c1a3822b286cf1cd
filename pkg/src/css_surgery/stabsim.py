"""Stabilizer-state simulation used to check circuits and the merge protocol.

The tableau follows the Aaronson-Gottesman layout: rows ``0..n-1`` are
destabilizers, rows ``n..2n-1`` stabilizers, each a Pauli with a sign bit.
Measurement of an arbitrary Pauli string is supported directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import f2linalg as la
from .codemap import CNOT, CnotCircuit, CodeMap, Permute, PrepPlus, ProjZero, code_map_circuit, synthesize_circuit
from .csscode import CssCode, ensure_based
from .errors import CssSurgeryError, ProtocolError


@dataclass(frozen=True, eq=False)
class PauliString:
    """``sign * prod X^x Z^z`` with ``x = z = 1`` read as ``Y``."""

    x: np.ndarray
    z: np.ndarray
    sign: int = 1

    def __post_init__(self):
        x, z = la.as_f2(self.x).reshape(-1), la.as_f2(self.z).reshape(-1)
        if x.shape != z.shape:
            raise ValueError("x and z parts must have equal length")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @classmethod
    def from_z(cls, bits, sign: int = 1) -> "PauliString":
        bits = la.as_f2(bits).reshape(-1)
        return cls(np.zeros_like(bits), bits, sign)

    @classmethod
    def from_x(cls, bits, sign: int = 1) -> "PauliString":
        bits = la.as_f2(bits).reshape(-1)
        return cls(bits, np.zeros_like(bits), sign)

    def commutes(self, other: "PauliString") -> bool:
        return not (int(self.x @ other.z) + int(self.z @ other.x)) % 2

    def __neg__(self) -> "PauliString":
        return PauliString(self.x, self.z, -self.sign)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return self.sign == other.sign and np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def __str__(self) -> str:
        letters = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
        body = "".join(letters[(int(a), int(b))] for a, b in zip(self.x, self.z))
        return ("+" if self.sign > 0 else "-") + body


def _g_sum(x1, z1, x2, z2) -> np.ndarray:
    """Phase exponent (powers of i) of multiplying row 1 into each row 2."""
    x1, z1, x2, z2 = (a.astype(np.int64) for a in (x1, z1, x2, z2))
    g = np.where(
        (x1 == 1) & (z1 == 1),
        z2 - x2,
        np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
    )
    return g.sum(axis=-1)


class StabilizerTableau:
    """Mutable stabilizer state on ``n`` qubits."""

    def __init__(self, x: np.ndarray, z: np.ndarray, r: np.ndarray):
        self.x = la.as_f2(x)
        self.z = la.as_f2(z)
        self.r = la.as_f2(r).reshape(-1)

    @property
    def n(self) -> int:
        return self.x.shape[1]

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.x.copy(), self.z.copy(), self.r.copy())

    @classmethod
    def zero_state(cls, n: int) -> "StabilizerTableau":
        x = np.zeros((2 * n, n), dtype=np.uint8)
        z = np.zeros((2 * n, n), dtype=np.uint8)
        x[np.arange(n), np.arange(n)] = 1
        z[n + np.arange(n), np.arange(n)] = 1
        return cls(x, z, np.zeros(2 * n, dtype=np.uint8))

    @classmethod
    def from_stabilizers(cls, stabs: Sequence[PauliString]) -> "StabilizerTableau":
        """Tableau of the state fixed by ``n`` independent commuting Paulis."""
        if not stabs:
            return cls(np.zeros((0, 0), np.uint8), np.zeros((0, 0), np.uint8), np.zeros(0, np.uint8))
        n = stabs[0].n
        if len(stabs) != n or any(s.n != n for s in stabs):
            raise CssSurgeryError(f"need exactly {n} stabilizers on {n} qubits, got {len(stabs)}")
        S = np.array([np.concatenate([s.x, s.z]) for s in stabs], dtype=np.uint8)
        omega = np.concatenate([S[:, n:], S[:, :n]], axis=1)  # row i pairs as <S_i, .>
        if la.mul(S, omega.T).any():
            raise CssSurgeryError("stabilizers do not commute")
        if la.rank(S) != n:
            raise CssSurgeryError("stabilizers are not independent")
        sol = la.solve_many(omega, la.eye(n))
        D = sol.T.copy()
        for j in range(n):
            for i in range(j):
                if (int(D[i, :n] @ D[j, n:]) + int(D[i, n:] @ D[j, :n])) % 2:
                    D[j] ^= S[i]
        x = np.concatenate([D[:, :n], S[:, :n]])
        z = np.concatenate([D[:, n:], S[:, n:]])
        r = np.concatenate([np.zeros(n, np.uint8), np.array([s.sign < 0 for s in stabs], np.uint8)])
        return cls(x, z, r)

    # -- gates ------------------------------------------------------------------------

    def cnot(self, c: int, t: int) -> None:
        x, z = self.x, self.z
        self.r ^= x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1)
        x[:, t] ^= x[:, c]
        z[:, c] ^= z[:, t]

    def h(self, q: int) -> None:
        self.r ^= self.x[:, q] & self.z[:, q]
        self.x[:, q], self.z[:, q] = self.z[:, q].copy(), self.x[:, q].copy()

    def apply_pauli(self, p: PauliString) -> None:
        self.r ^= self._anticommuting(p)

    def append_qubit(self, state: str = "+") -> int:
        """Add a qubit in ``|0>``, ``|1>``, ``|+>`` or ``|->``; returns its index."""
        n = self.n
        x = np.zeros((2 * n + 2, n + 1), dtype=np.uint8)
        z = np.zeros_like(x)
        r = np.zeros(2 * n + 2, dtype=np.uint8)
        x[:n, :n], z[:n, :n], r[:n] = self.x[:n], self.z[:n], self.r[:n]
        x[n + 1 : 2 * n + 1, :n], z[n + 1 : 2 * n + 1, :n] = self.x[n:], self.z[n:]
        r[n + 1 : 2 * n + 1] = self.r[n:]
        if state in ("0", "1"):
            x[n, n], z[2 * n + 1, n] = 1, 1
        elif state in ("+", "-"):
            z[n, n], x[2 * n + 1, n] = 1, 1
        else:
            raise ValueError(f"unknown single-qubit state {state!r}")
        r[2 * n + 1] = state in ("1", "-")
        self.x, self.z, self.r = x, z, r
        return n

    # -- measurement ------------------------------------------------------------------------

    def _anticommuting(self, p: PauliString) -> np.ndarray:
        if p.n != self.n:
            raise ValueError(f"Pauli on {p.n} qubits, tableau has {self.n}")
        return ((self.x.astype(np.int64) @ p.z + self.z.astype(np.int64) @ p.x) % 2).astype(np.uint8)

    def _rowsum_into(self, rows: np.ndarray, i: int) -> None:
        """Multiply row ``i`` into every row listed in ``rows``."""
        if rows.size == 0:
            return
        tot = 2 * self.r[rows].astype(np.int64) + 2 * int(self.r[i])
        tot += _g_sum(self.x[i], self.z[i], self.x[rows], self.z[rows])
        self.r[rows] = (tot % 4 == 2).astype(np.uint8)
        self.x[rows] ^= self.x[i]
        self.z[rows] ^= self.z[i]

    def _deterministic_value(self, p: PauliString, anti: np.ndarray) -> int:
        n = self.n
        sx = np.zeros(n, np.uint8)
        sz = np.zeros(n, np.uint8)
        sr = 0
        for i in np.flatnonzero(anti[:n]):
            row = n + int(i)
            tot = 2 * sr + 2 * int(self.r[row]) + int(_g_sum(self.x[row], self.z[row], sx, sz))
            sr = 1 if tot % 4 == 2 else 0
            sx ^= self.x[row]
            sz ^= self.z[row]
        if not (np.array_equal(sx, p.x) and np.array_equal(sz, p.z)):
            raise CssSurgeryError("inconsistent tableau: commuting Pauli outside the stabilizer group")
        return (-1 if sr else 1) * p.sign

    def expectation(self, p: PauliString) -> int:
        """``+1`` or ``-1`` if ``p`` is determined by the state, else ``0``."""
        anti = self._anticommuting(p)
        if anti[self.n :].any():
            return 0
        return self._deterministic_value(p, anti)

    def measure(self, p: PauliString, rng=None, forced: int | None = None) -> tuple[int, bool]:
        """Measure ``p``; returns ``(outcome, was_deterministic)``.

        ``forced`` postselects a random outcome; forcing an impossible
        deterministic outcome raises.
        """
        n = self.n
        anti = self._anticommuting(p)
        stab_hits = np.flatnonzero(anti[n:])
        if stab_hits.size == 0:
            val = self._deterministic_value(p, anti)
            if forced is not None and forced != val:
                raise ProtocolError(f"postselection on {forced:+d} impossible, outcome is {val:+d}")
            return val, True
        pidx = n + int(stab_hits[0])
        others = np.flatnonzero(anti)
        others = others[others != pidx]
        self._rowsum_into(others, pidx)
        d = pidx - n
        self.x[d], self.z[d], self.r[d] = self.x[pidx], self.z[pidx], self.r[pidx]
        if forced is None:
            rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
            outcome = 1 if rng.integers(2) == 0 else -1
        else:
            outcome = forced
        self.x[pidx], self.z[pidx] = p.x, p.z
        self.r[pidx] = (outcome * p.sign) < 0
        return outcome, False

    # -- structure ------------------------------------------------------------------------

    def stabilizers(self) -> list[PauliString]:
        n = self.n
        return [PauliString(self.x[i], self.z[i], -1 if self.r[i] else 1) for i in range(n, 2 * n)]

    def is_valid(self) -> bool:
        """Symplectic pairing of destabilizers and stabilizers is the standard one."""
        n = self.n
        M = np.concatenate([self.x, self.z], axis=1)
        om = np.concatenate([self.z, self.x], axis=1)
        J = la.zeros(2 * n, 2 * n)
        J[np.arange(n), n + np.arange(n)] = 1
        J[n + np.arange(n), np.arange(n)] = 1
        return np.array_equal(la.mul(M, om.T), J)

    def stabilizer_rank(self) -> int:
        n = self.n
        return la.rank(np.concatenate([self.x[n:], self.z[n:]], axis=1))

    def discard(self, q: int) -> None:
        """Remove qubit ``q``, which must be unentangled in a Z eigenstate."""
        zq = np.zeros(self.n, np.uint8)
        zq[q] = 1
        val = self.expectation(PauliString.from_z(zq))
        if val == 0:
            raise CssSurgeryError(f"qubit {q} is not in a Z eigenstate")
        keep = [i for i in range(self.n) if i != q]
        reduced: list[PauliString] = []
        for s in self.stabilizers():
            sign = s.sign * (val if s.z[q] else 1)
            reduced.append(PauliString(s.x[keep], s.z[keep], sign))
        basis: list[PauliString] = []
        rows = np.zeros((0, 2 * len(keep)), np.uint8)
        for s in reduced:
            cand = np.concatenate([rows, np.concatenate([s.x, s.z])[None]])
            if la.rank(cand) > rows.shape[0]:
                rows = cand
                basis.append(s)
        new = StabilizerTableau.from_stabilizers(basis)
        self.x, self.z, self.r = new.x, new.z, new.r


def measure_pauli(t: StabilizerTableau, p: PauliString, seed=None) -> tuple[int, StabilizerTableau]:
    """Measure on a copy; returns the outcome and the post-measurement state."""
    out = t.copy()
    val, _ = out.measure(p, seed)
    return val, out


# -- code states ------------------------------------------------------------------------------


def _independent_rows(M: np.ndarray) -> np.ndarray:
    return M[list(la.rref(M.T).pivots)] if M.size else M


def prepare_code_state(code: CssCode, logical_outcomes: Sequence[int], basis: str = "Z") -> StabilizerTableau:
    """Code state with each logical ``Z̄_i`` (or ``X̄_i``) equal to ``(-1)^b_i``."""
    code = ensure_based(code)
    bits = [int(b) for b in logical_outcomes]
    if len(bits) != code.k:
        raise ValueError(f"{len(bits)} logical values for k = {code.k}")
    basis = basis.upper()
    if basis not in ("Z", "X"):
        raise ValueError("basis must be 'Z' or 'X'")
    stabs = [PauliString.from_x(r) for r in _independent_rows(code.p_x)]
    stabs += [PauliString.from_z(r) for r in _independent_rows(code.p_z)]
    reps = code.logical_basis.z_reps if basis == "Z" else code.logical_basis.x_reps
    make = PauliString.from_z if basis == "Z" else PauliString.from_x
    stabs += [make(rep, -1 if b else 1) for rep, b in zip(reps, bits)]
    return StabilizerTableau.from_stabilizers(stabs)


class CircuitRun(NamedTuple):
    tableau: StabilizerTableau
    outcomes: list[int]
    output_qubits: list[int]


def apply_circuit(
    t: StabilizerTableau,
    c: CnotCircuit,
    seed=None,
    wires: Sequence[int] | None = None,
    postselect: bool = False,
    discard: bool = True,
) -> CircuitRun:
    """Run ``c`` with input wire ``i`` on tableau qubit ``wires[i]``.

    Fresh wires are appended as new qubits. ``ProjZero`` measures Z (forced to
    ``+1`` with ``postselect``) and the measured qubits are removed at the end
    unless ``discard`` is false. ``output_qubits`` gives the tableau index of
    each circuit output.
    """
    wires = list(range(c.n_in)) if wires is None else list(wires)
    if len(wires) != c.n_in or max(wires, default=-1) >= t.n:
        raise ValueError("circuit arity does not match the tableau")
    rng = np.random.default_rng(seed)
    t = t.copy()
    where = dict(enumerate(wires))
    dead: list[int] = []
    outcomes: list[int] = []
    for op in c.ops:
        if isinstance(op, CNOT):
            t.cnot(where[op.control], where[op.target])
        elif isinstance(op, PrepPlus):
            where[op.qubit] = t.append_qubit("+")
        elif isinstance(op, ProjZero):
            q = where.pop(op.qubit)
            zq = np.zeros(t.n, np.uint8)
            zq[q] = 1
            val, _ = t.measure(PauliString.from_z(zq), rng, forced=1 if postselect else None)
            outcomes.append(val)
            dead.append(q)
        elif isinstance(op, Permute):
            pass
    out = [where[w] for w in c.output_wires()]
    if discard:
        for q in sorted(dead, reverse=True):
            t.discard(q)
            out = [o - (o > q) for o in out]
    return CircuitRun(t, outcomes, out)


# -- transport of Pauli strings through code-map circuits ------------------------------------


def pauli_transport_check(m: CodeMap | np.ndarray, trials: int = 20, seed=None) -> bool:
    """Check ``M Z^u = Z^{f0 u} M`` and ``X^w M = M X^{f0^T w}`` on the
    circuit's Choi state for random ``u`` and ``w``."""
    f0 = la.as_f2(m.f0 if isinstance(m, CodeMap) else m)
    circ = code_map_circuit(m) if isinstance(m, CodeMap) else synthesize_circuit(f0)
    n_out, n_in = f0.shape
    rng = np.random.default_rng(seed)
    t = StabilizerTableau.zero_state(2 * n_in)
    for i in range(n_in):
        t.h(i)
        t.cnot(i, n_in + i)
    run = apply_circuit(t, circ, rng, wires=[n_in + i for i in range(n_in)], postselect=True, discard=False)
    state, outs = run.tableau, run.output_qubits

    def on(ref_bits, out_bits):
        v = np.zeros(state.n, np.uint8)
        v[:n_in] = ref_bits
        v[outs] = out_bits
        return v

    for _ in range(trials):
        u = rng.integers(0, 2, n_in, dtype=np.uint8)
        if state.expectation(PauliString.from_z(on(u, la.mul(f0, u)))) != 1:
            return False
        w = rng.integers(0, 2, n_out, dtype=np.uint8)
        if state.expectation(PauliString.from_x(on(la.mul(f0.T, w), w))) != 1:
            return False
    return True


# -- the sandwiched merge protocol ------------------------------------------------------------


class ProtocolResult(NamedTuple):
    c_L: int
    final: StabilizerTableau
    per_check: list[int]
    frame: PauliString
    failed_generators: list[str]
    t_to_physical: np.ndarray

    @property
    def stabilized(self) -> bool:
        return not self.failed_generators

    def report(self) -> dict:
        return {
            "c_L": self.c_L,
            "per_check": list(self.per_check),
            "frame": str(self.frame),
            "final_state_stabilized": self.stabilized,
            "failed_generators": list(self.failed_generators),
        }


def prepare_pair_state(plan, logical: Sequence[int], basis: str = "Z") -> StabilizerTableau:
    """Code state of ``C ⊕ D`` with one logical value per code (``k = 1`` each)."""
    from .csscode import direct_sum_codes

    both = direct_sum_codes(ensure_based(plan.code_c), ensure_based(plan.code_d))
    return prepare_code_state(both, logical, basis)


def _t_pauli(vec_t: np.ndarray, phys: np.ndarray, n_phys: int, kind: str) -> PauliString:
    v = np.zeros(n_phys, np.uint8)
    v[phys[np.flatnonzero(vec_t)]] = 1
    return PauliString.from_z(v) if kind == "Z" else PauliString.from_x(v)


def run_merge_protocol(
    plan,
    initial: StabilizerTableau,
    seed=None,
    fresh_states: str | Sequence[str] = "+",
    pauli_frame: bool = False,
) -> ProtocolResult:
    """Measure every stabilizer of the sandwiched code on ``C ⊕ D`` plus fresh
    qubits, multiply the new Z-check outcomes into ``c_L`` and gauge fix.

    ``fresh_states`` gives each fresh qubit's preparation (``'+'`` or ``'-'``)
    so preparation errors can be injected. With ``pauli_frame`` the gauge
    fixing Pauli is recorded in ``frame`` instead of being applied.
    """
    nc, nd, r = plan.code_c.n, plan.code_d.n, plan.r
    if initial.n != nc + nd:
        raise ProtocolError(f"initial state has {initial.n} qubits, C ⊕ D has {nc + nd}")
    states = [fresh_states] * r if isinstance(fresh_states, str) else list(fresh_states)
    if len(states) != r or any(s not in ("+", "-") for s in states):
        raise ProtocolError("fresh_states needs one of '+' or '-' per fresh qubit")
    rng = np.random.default_rng(seed)
    t = initial.copy()
    for s in states:
        t.append_qubit(s)
    T = plan.sandwiched
    phys = plan.physical_of_t()
    n = t.n
    for row in T.p_x:
        t.measure(_t_pauli(row, phys, n, "X"), rng)
    outcomes = [t.measure(_t_pauli(row, phys, n, "Z"), rng)[0] for row in T.p_z]
    per_check = [outcomes[int(j)] for j in plan.new_check_t]
    c_L = int(np.prod(per_check)) if per_check else 1
    fix = np.zeros(T.n, np.uint8)
    for j, val in enumerate(per_check):
        if val == -1:
            fix ^= la.as_f2(plan.gauge_fix_operators[j])
    frame = _t_pauli(fix, phys, n, "X")
    if not pauli_frame:
        t.apply_pauli(frame)
    failed = []
    for kind, mat in (("X", T.p_x), ("Z", T.p_z)):
        for i, row in enumerate(mat):
            p = _t_pauli(row, phys, n, kind)
            val = t.expectation(p)
            if pauli_frame and not p.commutes(frame):
                val = -val
            if val != 1:
                failed.append(f"{kind}{i}")
    return ProtocolResult(c_L, t, per_check, frame, failed, phys)
