"""Command-line interface.

Exit status is 0 on success, 2 when a verification step fails (with a JSON
report naming the step) and 1 on I/O, usage or format errors.
"""

from __future__ import annotations

import functools
import json
import sys

import click
import numpy as np

from . import cubical
from . import f2linalg as la
from .codemap import circuit_f2_action, code_map_circuit, format_circuit, synthesize_circuit
from .codes import shor_code
from .csscode import CssCode, code_from_json, code_to_json, metrics, weight_profile
from .errors import (
    CommutationError,
    CssSurgeryError,
    NotGaugeFixable,
    NotLogical,
    NotSeparated,
    SearchBudgetExceeded,
    StructureMismatch,
)
from .search import DEFAULT_MAX_KERNEL_DIM
from .stabsim import prepare_pair_state, run_merge_protocol
from .surgery import (
    DEFAULT_MAX_SUPPORT,
    build_sandwich,
    check_distance_bounded_below,
    check_gauge_fixable,
    check_separation,
    ldpc_bounds_check,
    plan_from_json,
    plan_to_json,
    sandwich_checks,
    short_logical,
    x_merge,
    z_merge,
)

STEPS = {
    1: "matching logical operator",
    2: "separation",
    3: "gauge fixing",
    4: "distance bounded below",
    5: "merge",
}


class VerificationFailure(Exception):
    def __init__(self, step: int, detail: dict):
        super().__init__(STEPS[step])
        self.step = step
        self.detail = detail


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(obj: dict, as_json: bool, text: str | None = None) -> None:
    click.echo(dumps(obj) if as_json or text is None else text)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        click.echo(text, nl=not text.endswith("\n"))
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def load_code(path: str) -> CssCode:
    data = json.loads(_read_text(path))
    if "code" in data and "p_x" not in data:
        data = data["code"]
    return code_from_json(data)


def _bits(s: str, n: int, what: str) -> np.ndarray:
    v = la.parse_bits(s)
    if v.shape[0] != n:
        raise click.BadParameter(f"{what} has {v.shape[0]} bits, code has {n} qubits")
    return v


def _pairing(s: str | None):
    if not s:
        return None
    return [tuple(int(t) for t in p.split(":")) for p in s.split(",")]


def _ops(codeC, codeD, op, op_c, op_d):
    a, b = op_c or op, op_d or op
    if a is None or b is None:
        raise click.BadParameter("give --op, or both --op-c and --op-d")
    return _bits(a, codeC.n, "operator on C"), _bits(b, codeD.n, "operator on D")


def handled(fn):
    """Map library exceptions onto exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except VerificationFailure as exc:
            click.echo(dumps({"ok": False, "failed_step": exc.step, "step": STEPS[exc.step], **exc.detail}))
            sys.exit(2)
        except (NotLogical, StructureMismatch) as exc:
            click.echo(dumps({"ok": False, "failed_step": 1, "step": STEPS[1], "error": str(exc)}))
            sys.exit(2)
        except (CommutationError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(1)
        except SearchBudgetExceeded as exc:
            click.echo(f"error: SearchBudgetExceeded: {exc}", err=True)
            sys.exit(1)
        except CssSurgeryError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(1)

    return wrapper


json_flag = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
kernel_flag = click.option(
    "--max-kernel-dim", default=DEFAULT_MAX_KERNEL_DIM, show_default=True, type=click.IntRange(min=1),
    help="Largest cycle-space dimension enumerated exhaustively.",
)
support_flag = click.option(
    "--max-support", default=DEFAULT_MAX_SUPPORT, show_default=True, type=click.IntRange(min=1),
    help="Largest operator support enumerated in the separation check.",
)


def _op_options(fn):
    for opt in reversed(
        [
            click.option("--op", help="Operator bits used on both codes."),
            click.option("--op-c", help="Operator bits on the first code."),
            click.option("--op-d", help="Operator bits on the second code."),
            click.option("--pairing", help="Support pairing as c:d,c:d,..."),
        ]
    ):
        fn = opt(fn)
    return fn


@click.group()
def cli():
    """CSS code surgery toolkit."""


# -- gen / info --------------------------------------------------------------------------------


@cli.group()
def gen():
    """Generate a code and print it as JSON."""


def _gen_out(code: CssCode, out: str | None) -> None:
    _write_text(out, dumps(code_to_json(code)) + "\n")


@gen.command("toric")
@click.argument("m", type=click.IntRange(min=3))
@click.argument("n", type=click.IntRange(min=3))
@click.option("-o", "--out", default=None)
@handled
def gen_toric(m, n, out):
    _gen_out(cubical.to_code(cubical.toric(m, n)), out)


@gen.command("patch")
@click.argument("w", type=click.IntRange(min=2))
@click.argument("h", type=click.IntRange(min=1))
@click.option("-o", "--out", default=None)
@handled
def gen_patch(w, h, out):
    _gen_out(cubical.to_code(cubical.patch(w, h)), out)


@gen.command("cycle")
@click.argument("n", type=click.IntRange(min=3))
@click.option("-o", "--out", default=None)
@handled
def gen_cycle(n, out):
    _gen_out(cubical.to_code(cubical.cycle_graph(n)), out)


@gen.command("shor")
@click.option("-o", "--out", default=None)
@handled
def gen_shor(out):
    _gen_out(shor_code(), out)


@cli.command()
@click.argument("path", default="-")
@json_flag
@kernel_flag
@handled
def info(path, as_json, max_kernel_dim):
    """Parameters and weights of a code."""
    code = load_code(path)
    met = metrics(code, max_kernel_dim)
    prof = weight_profile(code)
    data = {**met.as_dict(), "weights": prof.as_dict()}
    text = f"n={met.n} k={met.k} d={met.d} d_z={met.d_z} d_x={met.d_x} " + " ".join(
        f"{k}={v}" for k, v in prof.as_dict().items()
    )
    _emit(data, as_json, text)


# -- surgery ------------------------------------------------------------------------------------


def _merge(code_c, code_d, op, op_c, op_d, pairing, kind, force, out, circuit, as_json, max_support):
    C, D = load_code(code_c), load_code(code_d)
    vC, vD = _ops(C, D, op, op_c, op_d)
    fn = z_merge if kind == "Z" else x_merge
    try:
        res = fn(C, D, vC, vD, _pairing(pairing), force, max_support)
    except NotSeparated as exc:
        raise VerificationFailure(2, {"separation": exc.report.as_dict()}) from exc
    report = res.report()
    report["ldpc"] = ldpc_bounds_check(res, weight_profile(C), weight_profile(D)).as_dict()
    report["ok"] = True
    if out:
        _write_text(out, dumps(code_to_json(res.merged)) + "\n")
    if circuit:
        _write_text(circuit, format_circuit(code_map_circuit(res.merge_map)))
    text = (
        f"merged n={report['n_merged']} k={report['k_merged']} "
        f"(from n={report['n_sum']} k={report['k_sum']}), support {report['n_v']}"
    )
    _emit(report, as_json, text)


def _sandwich(code_c, code_d, op, op_c, op_d, pairing, d_before, out, as_json, max_support, max_kernel_dim):
    C, D = load_code(code_c), load_code(code_d)
    vC, vD = _ops(C, D, op, op_c, op_d)
    try:
        plan = build_sandwich(C, D, vC, vD, _pairing(pairing), max_support, max_kernel_dim)
    except NotSeparated as exc:
        raise VerificationFailure(2, {"separation": exc.report.as_dict()}) from exc
    except NotGaugeFixable as exc:
        raise VerificationFailure(3, {"witness_qubit": exc.qubit}) from exc
    d_ref = d_before if d_before is not None else plan.rounds
    if d_ref is not None and not check_distance_bounded_below(plan, d_ref, max_kernel_dim):
        w = short_logical(plan, d_ref, max_kernel_dim)
        raise VerificationFailure(4, {"d_before": d_ref, "short_logical": la.format_bits(w)})
    if out:
        _write_text(out, dumps(plan_to_json(plan)) + "\n")
    report = plan.report()
    report.update({"ok": True, "d_before": d_ref, "checks": sandwich_checks(plan)})
    text = (
        f"sandwiched n_T={report['n_t']} k_T={report['k_t']} r={report['r']} m={report['m']} "
        f"rounds={report['rounds']}"
    )
    _emit(report, as_json, text)


def _separation(code_c, code_d, op, op_c, op_d, pairing, kind, as_json, max_support):
    C, D = load_code(code_c), load_code(code_d)
    vC, vD = _ops(C, D, op, op_c, op_d)
    rep = check_separation(C, D, vC, vD, kind, _pairing(pairing), max_support)
    if not rep:
        raise VerificationFailure(2, {"separation": rep.as_dict()})
    _emit({"ok": True, "separation": rep.as_dict()}, as_json, "separated")


def _gauge(code, op, kind, as_json):
    C = load_code(code)
    v = _bits(op, C.n, "operator")
    rep = check_gauge_fixable(C, v, kind)
    if not rep:
        raise VerificationFailure(3, {"gauge": rep.as_dict()})
    _emit({"ok": True, "gauge": rep.as_dict()}, as_json, "fixable: " + " ".join(la.format_bits(o) for o in rep.operators))


def merge_command(name):
    @click.command(name)
    @click.argument("code_c")
    @click.argument("code_d")
    @_op_options
    @click.option("--kind", type=click.Choice(["Z", "X"]), default="Z", show_default=True)
    @click.option("--force", is_flag=True, help="Merge even when separation fails.")
    @click.option("-o", "--out", default=None, help="Write the merged code JSON here.")
    @click.option("--circuit", default=None, help="Write the merge circuit here.")
    @json_flag
    @support_flag
    @handled
    def cmd(code_c, code_d, op, op_c, op_d, pairing, kind, force, out, circuit, as_json, max_support):
        """Merge two codes along matching logical operators."""
        _merge(code_c, code_d, op, op_c, op_d, pairing, kind, force, out, circuit, as_json, max_support)

    return cmd


def sandwich_command(name):
    @click.command(name)
    @click.argument("code_c")
    @click.argument("code_d")
    @_op_options
    @click.option("--d-before", type=click.IntRange(min=1), default=None, help="Distance to preserve (default: min of the inputs).")
    @click.option("-o", "--out", default=None, help="Write the plan JSON here.")
    @json_flag
    @support_flag
    @kernel_flag
    @handled
    def cmd(code_c, code_d, op, op_c, op_d, pairing, d_before, out, as_json, max_support, max_kernel_dim):
        """Check the preconditions and build the sandwiched merge plan."""
        _sandwich(code_c, code_d, op, op_c, op_d, pairing, d_before, out, as_json, max_support, max_kernel_dim)

    return cmd


def separation_command(name):
    @click.command(name)
    @click.argument("code_c")
    @click.argument("code_d")
    @_op_options
    @click.option("--kind", type=click.Choice(["Z", "X"]), default="Z", show_default=True)
    @json_flag
    @support_flag
    @handled
    def cmd(code_c, code_d, op, op_c, op_d, pairing, kind, as_json, max_support):
        """Check that an operator pair is separated."""
        _separation(code_c, code_d, op, op_c, op_d, pairing, kind, as_json, max_support)

    return cmd


def gauge_command(name):
    @click.command(name)
    @click.argument("code")
    @click.option("--op", required=True, help="Operator bits.")
    @click.option("--kind", type=click.Choice(["Z", "X"]), default="Z", show_default=True)
    @json_flag
    @handled
    def cmd(code, op, kind, as_json):
        """Check that a logical operator is gauge-fixable."""
        _gauge(code, op, kind, as_json)

    return cmd


@cli.group()
def surgery():
    """Merges, sandwiches and their precondition checks."""


surgery.add_command(merge_command("merge"))
surgery.add_command(sandwich_command("sandwich"))
surgery.add_command(separation_command("separation-check"))
surgery.add_command(gauge_command("gauge-check"))
cli.add_command(merge_command("surgery-merge"))
cli.add_command(sandwich_command("surgery-sandwich"))
cli.add_command(separation_command("separation-check"))
cli.add_command(gauge_command("gauge-check"))


# -- circuits and simulation ----------------------------------------------------------------------


@cli.command()
@click.argument("path", default="-")
@click.option("-o", "--out", default=None)
@json_flag
@handled
def circuit(path, out, as_json):
    """Synthesize a CNOT/|+>/<0| circuit for a matrix in text format."""
    f0 = la.parse_matrix(_read_text(path))
    c = synthesize_circuit(f0)
    if as_json:
        data = {
            "n_in": c.n_in,
            "n_out": c.n_out,
            "gates": format_circuit(c).splitlines()[1:],
            "verified": bool(np.array_equal(circuit_f2_action(c), f0)),
        }
        _write_text(out, dumps(data) + "\n")
    else:
        _write_text(out, format_circuit(c))


@cli.group()
def simulate():
    """Stabilizer simulation of protocols."""


@simulate.command("merge")
@click.option("--plan", "plan_path", required=True, help="Plan JSON from surgery sandwich.")
@click.option("--logical", default="0,0", show_default=True, help="Logical values for C and D.")
@click.option("--basis", type=click.Choice(["Z", "X"]), default="Z", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--fresh", default=None, help="Fresh qubit preparations, e.g. +,-")
@click.option("--pauli-frame", is_flag=True, help="Track the gauge fix in software.")
@json_flag
@handled
def simulate_merge(plan_path, logical, basis, seed, fresh, pauli_frame, as_json):
    """Run the sandwiched merge on a code state of C ⊕ D."""
    plan = plan_from_json(json.loads(_read_text(plan_path)))
    bits = [int(b) for b in logical.split(",")]
    init = prepare_pair_state(plan, bits, basis)
    fresh_states = fresh.split(",") if fresh else "+"
    res = run_merge_protocol(plan, init, seed, fresh_states, pauli_frame)
    report = {"logical": bits, "basis": basis, "seed": seed, **res.report()}
    if not res.stabilized:
        raise VerificationFailure(5, report)
    report["ok"] = True
    text = (
        f"c_L={res.c_L:+d} per_check={' '.join(f'{c:+d}' for c in res.per_check)} "
        f"final state stabilized by all {plan.sandwiched.p_x.shape[0] + plan.sandwiched.p_z.shape[0]} generators"
    )
    _emit(report, as_json, text)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="css-surgery", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


def entry() -> None:
    sys.exit(main())
