import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from css_surgery import cubical
from css_surgery import f2linalg as la
from css_surgery.codemap import CnotCircuit, PrepPlus, ProjZero, make_code_map
from css_surgery.codes import random_code_map, shor_code
from css_surgery.csscode import choose_logical_basis, from_parity_checks
from css_surgery.errors import ProtocolError
from css_surgery.stabsim import (
    PauliString,
    StabilizerTableau,
    apply_circuit,
    measure_pauli,
    pauli_transport_check,
    prepare_code_state,
    prepare_pair_state,
    run_merge_protocol,
)
from css_surgery.surgery import build_sandwich, z_merge

SHOR = shor_code()
Z147 = np.array([1, 0, 0, 1, 0, 0, 1, 0, 0], dtype=np.uint8)


def shor_plan():
    return build_sandwich(SHOR, SHOR, Z147, Z147)


def paulis(n):
    bits = st.lists(st.integers(0, 1), min_size=n, max_size=n)
    return st.builds(lambda x, z, s: PauliString(x, z, s), bits, bits, st.sampled_from([1, -1]))


# -- gates against dense state vectors --------------------------------------------------------


def test_cnot_conjugation_table():
    # Heisenberg picture: X⊗I -> X⊗X, I⊗X -> I⊗X, Z⊗I -> Z⊗I, I⊗Z -> Z⊗Z
    basis = {"X": (1, 0), "Z": (0, 1), "I": (0, 0)}
    for start, image in (("XI", "XX"), ("IX", "IX"), ("ZI", "ZI"), ("IZ", "ZZ")):
        # complete the Pauli to a state with a single-qubit Z or X on the idle qubit
        idle = start.index("I")
        other = "Z" if start[1 - idle] == "X" else "X"
        pauli = PauliString(*zip(*(basis[ch] for ch in start)))
        second = "".join(other if i == idle else "I" for i in range(2))
        t = StabilizerTableau.from_stabilizers([pauli, PauliString(*zip(*(basis[ch] for ch in second)))])
        t.cnot(0, 1)
        assert t.expectation(PauliString(*zip(*(basis[ch] for ch in image)))) == 1


gate_lists = st.lists(
    st.one_of(
        st.tuples(st.just("h"), st.integers(0, 3)),
        st.tuples(st.just("cnot"), st.integers(0, 3), st.integers(0, 3)).filter(lambda g: g[1] != g[2]),
    ),
    max_size=14,
)


@settings(max_examples=60, deadline=None)
@given(gate_lists, st.integers(0, 2**32 - 1))
def test_gates_and_measurement_match_dense(gates, seed):
    n = 4
    t = StabilizerTableau.zero_state(n)
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1
    for g in gates:
        if g[0] == "h":
            t.h(g[1])
            psi = oracles.h_matrix(n, g[1]) @ psi
        else:
            t.cnot(g[1], g[2])
            psi = oracles.cnot_matrix(n, g[1], g[2]) @ psi
    for s in t.stabilizers():
        assert oracles.expectation(psi, s.x, s.z, s.sign) == pytest.approx(1)
    rng = np.random.default_rng(seed)
    p = PauliString(rng.integers(0, 2, n), rng.integers(0, 2, n))
    if not (p.x.any() or p.z.any()):
        return
    exp = t.expectation(p)
    assert oracles.expectation(psi, p.x, p.z) == pytest.approx(exp, abs=1e-9)
    val, deterministic = t.measure(p, rng)
    assert deterministic == (exp != 0)
    phi, prob = oracles.project(psi, p.x, p.z, val)
    assert prob > 1e-9
    for s in t.stabilizers():
        assert oracles.expectation(phi, s.x, s.z, s.sign) == pytest.approx(1)
    assert t.is_valid() and t.stabilizer_rank() == n


# -- measurement ------------------------------------------------------------------------------


def test_measure_examples():
    t = prepare_code_state(SHOR, [1])
    row = PauliString.from_x(SHOR.p_x[0])
    val, after = measure_pauli(t, row, seed=0)
    assert val == 1 and after.stabilizer_rank() == 9
    zbar = PauliString.from_z(choose_logical_basis(SHOR).logical_basis.z_reps[0])
    assert measure_pauli(t, zbar, seed=0)[0] == -1
    seen = set()
    for seed in range(20):
        val, after = measure_pauli(t, PauliString.from_x(choose_logical_basis(SHOR).logical_basis.x_reps[0]), seed)
        seen.add(val)
        assert after.is_valid() and after.stabilizer_rank() == 9
    assert seen == {1, -1}
    with pytest.raises(ProtocolError):
        t.copy().measure(zbar, forced=1)


@settings(max_examples=40, deadline=None)
@given(st.lists(paulis(5), min_size=1, max_size=6), st.integers(0, 2**32 - 1))
def test_rank_invariant_under_measurement(ps, seed):
    t = StabilizerTableau.zero_state(5)
    rng = np.random.default_rng(seed)
    for p in ps:
        if p.x.any() or p.z.any():
            val, _ = t.measure(p, rng)
            assert t.expectation(p) == val
        assert t.is_valid() and t.stabilizer_rank() == 5


# -- code states ------------------------------------------------------------------------------


def test_prepare_code_state_examples():
    t = prepare_code_state(SHOR, [0])
    for row in SHOR.p_x:
        assert t.expectation(PauliString.from_x(row)) == 1
    for row in SHOR.p_z:
        assert t.expectation(PauliString.from_z(row)) == 1
    assert t.expectation(PauliString.from_z(np.ones(9, np.uint8))) == 1
    plus = prepare_code_state(SHOR, [1], basis="X")
    assert plus.expectation(PauliString.from_x(np.ones(9, np.uint8))) == -1
    trivial = from_parity_checks(la.eye(3), la.zeros(0, 3))
    assert prepare_code_state(trivial, []).stabilizer_rank() == 3
    toric = cubical.to_code(cubical.toric(3, 3))
    t = prepare_code_state(toric, [0, 0])
    assert t.n == 18 and t.is_valid() and t.stabilizer_rank() == 18
    with pytest.raises(ValueError):
        prepare_code_state(SHOR, [0, 1])


# -- circuits ---------------------------------------------------------------------------------


def test_prep_then_project():
    c = CnotCircuit(0, 0, (PrepPlus(0), ProjZero(0)))
    run = apply_circuit(StabilizerTableau.zero_state(0), c, seed=0, postselect=True)
    assert run.outcomes == [1] and run.tableau.n == 0
    outcomes = {apply_circuit(StabilizerTableau.zero_state(0), c, seed=s).outcomes[0] for s in range(20)}
    assert outcomes == {1, -1}
    with pytest.raises(ValueError):
        apply_circuit(StabilizerTableau.zero_state(1), CnotCircuit(2, 2, ()))


# -- Pauli transport --------------------------------------------------------------------------


def test_transport_examples():
    assert pauli_transport_check(la.eye(4), seed=0)
    code = cubical.to_code(cubical.toric(3, 3))
    ident = make_code_map(code, code, la.eye(code.p_z.shape[0]), la.eye(code.n), la.eye(code.p_x.shape[0]))
    assert pauli_transport_check(ident, seed=0)
    m = z_merge(SHOR, SHOR, Z147, Z147)
    assert pauli_transport_check(m.merge_map, seed=0)
    # each identified pair: Z⊗I -> Z, I⊗Z -> Z, and X on the merged qubit pulls back to X⊗X
    f0 = m.merge_map.f0
    for c, d, q in m.qubit_identifications:
        assert f0[:, c].tolist() == la.unit(f0.shape[0], q).tolist()
        assert f0[:, SHOR.n + d].tolist() == la.unit(f0.shape[0], q).tolist()
        assert np.flatnonzero(f0[q]).tolist() == [c, SHOR.n + d]


def test_transport_on_random_code_maps():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        m = random_code_map(rng, int(rng.integers(2, 8)), int(rng.integers(2, 8)), mx=1, mz=1)
        assert pauli_transport_check(m, trials=10, seed=int(rng.integers(2**31)))


# -- merge protocol ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def plan():
    return shor_plan()


@pytest.mark.parametrize("bits", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_protocol_logical_basis_states(plan, bits):
    for seed in range(5):
        res = run_merge_protocol(plan, prepare_pair_state(plan, list(bits)), seed=seed)
        assert res.c_L == (-1) ** (bits[0] ^ bits[1])
        assert res.stabilized, res.failed_generators
        assert res.final.is_valid() and res.final.n == 20
        if res.c_L == -1:
            assert -1 in res.per_check


def test_protocol_plus_plus_statistics(plan):
    init = prepare_pair_state(plan, [0, 0], basis="X")
    outcomes = []
    for seed in range(200):
        res = run_merge_protocol(plan, init, seed=seed)
        assert res.stabilized
        outcomes.append(res.c_L)
    plus = outcomes.count(1)
    assert 0 < plus < 200
    assert abs(plus - 100) <= 5 * np.sqrt(200 * 0.25)


@pytest.mark.parametrize("bits", [(0, 0), (0, 1)])
def test_protocol_ignores_fresh_preparation_errors(plan, bits):
    init = prepare_pair_state(plan, list(bits))
    want = run_merge_protocol(plan, init, seed=3).c_L
    for i in range(plan.r):
        states = ["+"] * plan.r
        states[i] = "-"
        for seed in range(3):
            res = run_merge_protocol(plan, init, seed=seed, fresh_states=states)
            assert res.c_L == want
            # the Z error is only visible to X checks; every Z check of T still holds
            assert res.failed_generators and all(g.startswith("X") for g in res.failed_generators)


def test_protocol_pauli_frame(plan):
    init = prepare_pair_state(plan, [0, 1])
    res = run_merge_protocol(plan, init, seed=0, pauli_frame=True)
    assert res.c_L == -1 and res.stabilized
    assert res.frame.x.any()
    applied = res.final.copy()
    applied.apply_pauli(res.frame)
    T = plan.sandwiched
    for row in T.p_z:
        v = np.zeros(applied.n, np.uint8)
        v[res.t_to_physical[np.flatnonzero(row)]] = 1
        assert applied.expectation(PauliString.from_z(v)) == 1


def test_protocol_errors(plan):
    with pytest.raises(ProtocolError):
        run_merge_protocol(plan, StabilizerTableau.zero_state(5))
    init = prepare_pair_state(plan, [0, 0])
    with pytest.raises(ProtocolError):
        run_merge_protocol(plan, init, fresh_states=["+"])
    with pytest.raises(ProtocolError):
        run_merge_protocol(plan, init, fresh_states="0")


def test_pauli_string_basics():
    p = PauliString([1, 0, 1], [0, 1, 1])
    assert str(p) == "+XZY" and str(-p) == "-XZY"
    assert p.commutes(p) and not PauliString.from_x([1]).commutes(PauliString.from_z([1]))
    with pytest.raises(ValueError):
        PauliString([1], [1, 0])
    with pytest.raises(ValueError):
        PauliString([1], [1], sign=2)
