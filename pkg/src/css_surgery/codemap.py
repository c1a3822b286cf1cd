"""Code maps between CSS codes and their CNOT-circuit presentations.

A code map is a chain map between Z-type complexes together with a direction
tag. Z̄-preserving maps run along the chain map; X̄-preserving maps read the
same data in the opposite direction.

Circuits act on X-basis labels: a physical ``CNOT(control, target)`` sends
``|x_c, x_t>`` in the X basis to ``|x_c + x_t, x_t>``, so the control's
label absorbs the target's.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple, Union

import numpy as np

from . import f2linalg as la
from .chain import ChainMap, dual_map, induced_homology_map
from .csscode import CssCode, ensure_based
from .errors import CommutingSquareError, CssSurgeryError


@dataclass(frozen=True, eq=False)
class CodeMap:
    """``forward`` maps ``source.z_complex`` to ``target.z_complex``.

    ``direction == "Z"`` means the logical map runs source to target; ``"X"``
    means it runs target to source.
    """

    source: CssCode
    target: CssCode
    forward: ChainMap
    direction: str = "Z"

    @property
    def dual(self) -> ChainMap:
        return dual_map(self.forward)

    @property
    def f0(self) -> np.ndarray:
        return self.forward[0]

    @property
    def domain(self) -> CssCode:
        return self.source if self.direction == "Z" else self.target

    @property
    def codomain(self) -> CssCode:
        return self.target if self.direction == "Z" else self.source

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CodeMap):
            return NotImplemented
        return (
            self.direction == other.direction
            and self.source == other.source
            and self.target == other.target
            and self.forward == other.forward
        )


def _check_squares(source: CssCode, target: CssCode, f1, f0, fm1) -> None:
    if la.mul(f0, source.p_z.T).tolist() != la.mul(target.p_z.T, f1).tolist():
        raise CommutingSquareError("I", "f0 d0 != d0 f1")
    if la.mul(fm1, source.p_x).tolist() != la.mul(target.p_x, f0).tolist():
        raise CommutingSquareError("II", "f-1 d-1 != d-1 f0")


def make_code_map(source: CssCode, target: CssCode, f1, f0, fm1, direction: str = "Z") -> CodeMap:
    if direction not in ("Z", "X"):
        raise ValueError("direction must be 'Z' or 'X'")
    f1, f0, fm1 = la.as_f2(f1), la.as_f2(f0), la.as_f2(fm1)
    shapes = {
        "f1": (f1.shape, (target.p_z.shape[0], source.p_z.shape[0])),
        "f0": (f0.shape, (target.n, source.n)),
        "f-1": (fm1.shape, (target.p_x.shape[0], source.p_x.shape[0])),
    }
    for name, (got, want) in shapes.items():
        if got != want:
            raise ValueError(f"{name} has shape {got}, expected {want}")
    _check_squares(source, target, f1, f0, fm1)
    chain = ChainMap(source.z_complex, target.z_complex, {1: f1, 0: f0, -1: fm1})
    return CodeMap(source, target, chain, direction)


def from_chain_map(f: ChainMap, direction: str = "Z") -> CodeMap:
    return make_code_map(
        CssCode.from_complex(f.source), CssCode.from_complex(f.target), f[1], f[0], f[-1], direction
    )


def opposite(m: CodeMap) -> CodeMap:
    return replace(m, direction="X" if m.direction == "Z" else "Z")


def compose_maps(g: CodeMap, f: CodeMap) -> CodeMap:
    """``g ∘ f`` for Z̄-preserving maps sharing the middle code."""
    if f.direction != g.direction:
        raise CssSurgeryError("cannot compose maps of different directions")
    chain = ChainMap(f.source.z_complex, g.target.z_complex, {n: la.mul(g.forward[n], f.forward[n]) for n in (1, 0, -1)})
    return CodeMap(f.source, g.target, chain, f.direction)


class LogicalAction(NamedTuple):
    z_action: np.ndarray
    x_action: np.ndarray


def logical_action(m: CodeMap) -> LogicalAction:
    """Induced maps on logical operators in the codes' logical bases.

    For Z̄-preserving maps ``z_action`` is ``H_0(f)`` (shape
    ``k_target x k_source``) and ``x_action`` is ``H_0(f*)``. For
    X̄-preserving maps both are transposed, so the first matrix always runs
    from domain to codomain.
    """
    src = ensure_based(m.source).logical_basis
    tgt = ensure_based(m.target).logical_basis
    z = induced_homology_map(m.forward, 0, src.z_reps, tgt.z_reps)
    x = induced_homology_map(m.dual, 0, tgt.x_reps, src.x_reps)
    if m.direction == "Z":
        return LogicalAction(z, x)
    return LogicalAction(z.T.copy(), x.T.copy())


# -- circuits -------------------------------------------------------------------


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int


@dataclass(frozen=True)
class PrepPlus:
    qubit: int


@dataclass(frozen=True)
class ProjZero:
    qubit: int


@dataclass(frozen=True)
class Permute:
    """Final assignment of live wires to output positions, as (wire, output) pairs."""

    mapping: tuple[tuple[int, int], ...]


Op = Union[CNOT, PrepPlus, ProjZero, Permute]


@dataclass(frozen=True)
class CnotCircuit:
    """Gates on wires. Inputs are wires ``0..n_in-1``; each ``PrepPlus`` names
    a fresh wire; ``ProjZero`` retires a wire; a trailing ``Permute`` orders
    the surviving wires as outputs (identity order when absent)."""

    n_in: int
    n_out: int
    ops: tuple[Op, ...]

    def __post_init__(self):
        live = set(range(self.n_in))
        seen = set(live)
        for op in self.ops:
            if isinstance(op, CNOT):
                if op.control == op.target or not {op.control, op.target} <= live:
                    raise ValueError(f"bad CNOT {op}")
            elif isinstance(op, PrepPlus):
                if op.qubit in seen:
                    raise ValueError(f"wire {op.qubit} reused by PrepPlus")
                live.add(op.qubit)
                seen.add(op.qubit)
            elif isinstance(op, ProjZero):
                if op.qubit not in live:
                    raise ValueError(f"ProjZero on dead wire {op.qubit}")
                live.remove(op.qubit)
            elif isinstance(op, Permute):
                wires = {w for w, _ in op.mapping}
                outs = sorted(o for _, o in op.mapping)
                if wires != live or outs != list(range(len(live))):
                    raise ValueError("Permute must biject live wires onto outputs")
        if len(live) != self.n_out:
            raise ValueError(f"{len(live)} live wires but n_out = {self.n_out}")

    def output_wires(self) -> list[int]:
        """Wire occupying each output position."""
        live: list[int] = list(range(self.n_in))
        for op in self.ops:
            if isinstance(op, PrepPlus):
                live.append(op.qubit)
            elif isinstance(op, ProjZero):
                live.remove(op.qubit)
            elif isinstance(op, Permute):
                order = dict(op.mapping)
                return sorted(live, key=lambda w: order[w])
        return sorted(live)


def synthesize_circuit(f0: np.ndarray) -> CnotCircuit:
    """Circuit over CNOT, ``|+>`` and ``<0|`` acting as ``f0`` on X-basis labels.

    Writing ``E f0 F = S`` with row operations ``E``, column operations ``F``
    and ``S`` a partial identity, the circuit applies ``F^{-1}`` on the inputs,
    then ``S`` (``<0|`` on dropped inputs, ``|+>`` for empty rows), then
    ``E^{-1}`` on the outputs.
    """
    f0 = la.as_f2(f0)
    n_out, n_in = f0.shape
    res = la.rref(f0)
    R = res.R
    pivots = list(res.pivots)
    ops: list[Op] = []
    pivot_set = set(pivots)
    for i, p in enumerate(pivots):
        for c in np.flatnonzero(R[i]):
            c = int(c)
            if c != p:
                ops.append(CNOT(control=p, target=c))
    for c in range(n_in):
        if c not in pivot_set:
            ops.append(ProjZero(c))
    wire_of_row = list(pivots)
    fresh = n_in
    for _ in range(len(pivots), n_out):
        ops.append(PrepPlus(fresh))
        wire_of_row.append(fresh)
        fresh += 1
    for t, s in reversed(res.rowops):
        ops.append(CNOT(control=wire_of_row[t], target=wire_of_row[s]))
    mapping = tuple((w, i) for i, w in enumerate(wire_of_row))
    if any(w != i for w, i in mapping):
        ops.append(Permute(mapping))
    circ = CnotCircuit(n_in, n_out, tuple(ops))
    if not np.array_equal(circuit_f2_action(circ), f0):
        raise CssSurgeryError("synthesized circuit failed its replay check")
    return circ


def circuit_f2_action(c: CnotCircuit) -> np.ndarray:
    """Linear map on X-basis labels realised by the circuit (``n_out x n_in``)."""
    label: dict[int, np.ndarray] = {w: la.unit(c.n_in, w) for w in range(c.n_in)}
    for op in c.ops:
        if isinstance(op, CNOT):
            label[op.control] = label[op.control] ^ label[op.target]
        elif isinstance(op, PrepPlus):
            label[op.qubit] = np.zeros(c.n_in, dtype=np.uint8)
        elif isinstance(op, ProjZero):
            del label[op.qubit]
    rows = [label[w] for w in c.output_wires()]
    return np.array(rows, dtype=np.uint8).reshape(c.n_out, c.n_in)


def code_map_circuit(m: CodeMap) -> CnotCircuit:
    """Circuit for the map's ``f0`` (Z̄-preserving reading)."""
    return synthesize_circuit(m.f0)


# -- text format ------------------------------------------------------------------


def format_circuit(c: CnotCircuit) -> str:
    lines = [f"QUBITS {c.n_in} {c.n_out}"]
    for op in c.ops:
        if isinstance(op, CNOT):
            lines.append(f"CNOT {op.control} {op.target}")
        elif isinstance(op, PrepPlus):
            lines.append(f"PREP+ {op.qubit}")
        elif isinstance(op, ProjZero):
            lines.append(f"PROJ0 {op.qubit}")
        else:
            lines.append("PERM " + ",".join(f"{w}→{o}" for w, o in op.mapping))
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> CnotCircuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "QUBITS" or len(head) != 3:
        raise ValueError("circuit text must start with 'QUBITS n_in n_out'")
    ops: list[Op] = []
    for ln in lines[1:]:
        kind, _, rest = ln.partition(" ")
        if kind == "CNOT":
            a, b = rest.split()
            ops.append(CNOT(int(a), int(b)))
        elif kind == "PREP+":
            ops.append(PrepPlus(int(rest)))
        elif kind == "PROJ0":
            ops.append(ProjZero(int(rest)))
        elif kind == "PERM":
            pairs = [p.replace("->", "→").split("→") for p in rest.split(",")]
            ops.append(Permute(tuple((int(a), int(b)) for a, b in pairs)))
        else:
            raise ValueError(f"unknown circuit op {kind!r}")
    return CnotCircuit(int(head[1]), int(head[2]), tuple(ops))
