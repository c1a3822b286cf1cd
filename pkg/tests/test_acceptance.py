"""Acceptance criteria 1-12, one test each; every test prints a PASS/FAIL line."""

import contextlib
import time

import numpy as np
import pytest

import golden
import oracles
from css_surgery import cubical
from css_surgery import f2linalg as la
from css_surgery.chain import (
    ChainComplex,
    direct_sum,
    dual,
    equivalent_up_to_permutation,
    homology_dim,
    tensor,
    validate_complex,
)
from css_surgery.codemap import circuit_f2_action, synthesize_circuit
from css_surgery.codes import random_code_map, shor_code
from css_surgery.colimit import pushout
from css_surgery.csscode import metrics, weight_profile
from css_surgery.stabsim import pauli_transport_check, prepare_pair_state, run_merge_protocol
from css_surgery.surgery import (
    build_sandwich,
    check_distance_bounded_below,
    check_gauge_fixable,
    check_separation,
    ldpc_bounds_check,
    z_merge,
)
from fixtures import holed_pair, min_weight_logical, octagon, octagon_operators, random_logical_codes, star_span
from test_colimit import example_span
from test_cubical import patch_span, two_squares

SHOR = shor_code()
ONES = np.ones(9, dtype=np.uint8)
Z147 = np.array([1, 0, 0, 1, 0, 0, 1, 0, 0], dtype=np.uint8)


@pytest.fixture()
def criterion(capsys):
    @contextlib.contextmanager
    def run(number: int, limit: float | None = None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert limit is None or elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s)")

    return run


def test_criterion_01_shor_metrics(criterion):
    assert oracles.min_logical_weight(SHOR.p_x, SHOR.p_z.T) == 3
    with criterion(1, 1.0):
        m = metrics(SHOR)
        assert (m.n, m.k, m.d) == (9, 1, 3)


def test_criterion_02_toric(criterion):
    code = cubical.to_code(cubical.toric(3, 3))
    # brute-force oracle, outside the timed library call
    assert oracles.min_logical_weight(code.p_x, code.p_z.T) == 3
    assert oracles.min_logical_weight(code.p_z, code.p_x.T) == 3
    with criterion(2, 5.0):
        m = metrics(cubical.to_code(cubical.toric(3, 3)))
        assert (m.n, m.k, m.d) == (18, 2, 3)


def test_criterion_03_patch(criterion):
    with criterion(3, 1.0):
        m = metrics(cubical.to_code(cubical.patch(3, 3)))
        assert (m.n, m.k, m.d_z, m.d_x) == (13, 1, 3, 3)


def test_criterion_04_example_pushout(criterion):
    with criterion(4):
        f, g = example_span()
        po = pushout(f, g)
        assert [po.Q.dim(n) for n in (1, 0, -1)] == [2, 5, 2]
        assert homology_dim(direct_sum(f.target, g.target), 0) == 0
        assert homology_dim(po.Q, 0) == 1
        assert np.array_equal(po.coeq[0], golden.m(golden.EX_COEQ0))
        assert np.array_equal(po.coeq[-1], golden.m(golden.EX_COEQM1))
        assert np.array_equal(po.Q.d(0), golden.m(golden.EX_Q_D0))
        assert np.array_equal(po.Q.d(-1), golden.m(golden.EX_Q_DM1))


def test_criterion_05_shor_merges(criterion):
    with criterion(5):
        full = z_merge(SHOR, SHOR, ONES, ONES)
        assert np.array_equal(full.square.Q.d(0), np.concatenate([SHOR.p_z.T, SHOR.p_z.T], axis=1))
        m = z_merge(SHOR, SHOR, Z147, Z147)
        assert [m.square.Q.dim(n) for n in (1, 0, -1)] == [12, 15, 2]
        assert m.merged.k == 1


def test_criterion_06_sandwich_golden(criterion):
    with criterion(6, 10.0):
        p = build_sandwich(SHOR, SHOR, Z147, Z147)
        T = p.sandwiched
        assert [T.z_complex.dim(n) for n in (1, 0, -1)] == [15, 20, 4]
        assert (p.r, p.m) == (2, 3)
        assert homology_dim(T.z_complex, 0) == 1
        assert metrics(T).d_z >= 3
        ref = ChainComplex({1: 15, 0: 20, -1: 4}, {0: golden.m(golden.T_D0), -1: golden.m(golden.T_DM1)})
        assert equivalent_up_to_permutation(T.z_complex, ref)
        for n in (0, -1):
            assert la.rank(T.z_complex.d(n)) == la.rank(ref.d(n))
        for n in (1, 0, -1):
            assert homology_dim(T.z_complex, n) == homology_dim(ref, n)


def test_criterion_07_synthesis_and_transport(criterion):
    with criterion(7):
        rng = np.random.default_rng(7)
        for _ in range(200):
            M = rng.integers(0, 2, (int(rng.integers(0, 13)), int(rng.integers(0, 13))), dtype=np.uint8)
            assert np.array_equal(circuit_f2_action(synthesize_circuit(M)), M)
        for _ in range(50):
            m = random_code_map(rng, int(rng.integers(2, 8)), int(rng.integers(2, 8)), mx=1, mz=1)
            assert pauli_transport_check(m, trials=10, seed=int(rng.integers(2**31)))


def _corpus():
    named = [(SHOR, Z147), (SHOR, ONES)]
    for code in (cubical.to_code(cubical.toric(3, 3)), cubical.to_code(cubical.patch(3, 3))):
        named.append((code, min_weight_logical(code)))
    return named + random_logical_codes(2024, 120)


def test_criterion_08_ldpc(criterion):
    with criterion(8):
        random_separated = 0
        for i, (code, v) in enumerate(_corpus()):
            if not check_separation(code, code, v, v):
                continue
            random_separated += i >= 4
            m = z_merge(code, code, v, v)
            rep = ldpc_bounds_check(m, weight_profile(code), weight_profile(code))
            assert rep.ok, rep.values
        assert random_separated >= 50
        for k in range(3, 9):
            f, g = star_span(k)
            Q = cubical.pushout_acc(f, g).complex
            assert weight_profile(cubical.to_code(Q)).w_x == k + 1


def test_criterion_09_gauge_fixing(criterion):
    with criterion(9):
        assert not check_gauge_fixable(SHOR, ONES)
        rep = check_gauge_fixable(SHOR, Z147)
        assert rep
        assert [la.format_bits(o) for o in rep.operators] == ["111000000", "000111000", "000000111"]


def test_criterion_10_protocol(criterion):
    with criterion(10, 30.0):
        p = build_sandwich(SHOR, SHOR, Z147, Z147)
        for bits, want in (((0, 0), 1), ((0, 1), -1), ((1, 0), -1)):
            init = prepare_pair_state(p, list(bits))
            for seed in range(5):
                res = run_merge_protocol(p, init, seed=seed)
                assert res.c_L == want and res.stabilized
        init = prepare_pair_state(p, [0, 0], basis="X")
        outcomes = []
        for seed in range(200):
            res = run_merge_protocol(p, init, seed=seed)
            assert res.stabilized
            outcomes.append(res.c_L)
        plus = outcomes.count(1)
        assert 0 < plus < 200 and abs(plus - 100) <= 5 * np.sqrt(50)
        for bits in ((0, 0), (0, 1), (1, 0), (1, 1)):
            init = prepare_pair_state(p, list(bits))
            want = (-1) ** (bits[0] ^ bits[1])
            for i in range(p.r):
                states = ["+"] * p.r
                states[i] = "-"
                assert run_merge_protocol(p, init, seed=i, fresh_states=states).c_L == want


def _random_complex(rng):
    a, b = int(rng.integers(0, 4)), int(rng.integers(0, 5))
    d0 = rng.integers(0, 2, (b, a), dtype=np.uint8)
    left = la.kernel_basis(d0.T).T
    c = int(rng.integers(0, 4))
    dm1 = la.mul(rng.integers(0, 2, (c, left.shape[0]), dtype=np.uint8), left) if left.size else la.zeros(c, b)
    return ChainComplex({1: a, 0: b, -1: c}, {0: d0, -1: dm1})


def test_criterion_11_properties(criterion):
    with criterion(11):
        rng = np.random.default_rng(11)
        for _ in range(100):
            C, D = _random_complex(rng), _random_complex(rng)
            P = tensor(C, D)
            assert validate_complex(P)
            hc = {n: homology_dim(C, n) for n in (1, 0, -1)}
            hd = {n: homology_dim(D, n) for n in (1, 0, -1)}
            for n in range(-2, 3):
                assert homology_dim(P, n) == oracles.tensor_homology(hc, hd, n)
            assert dual(dual(C)) == C
            S = direct_sum(C, D)
            for n in (1, 0, -1):
                assert homology_dim(S, n) == hc[n] + hd[n]
        for f, g in (two_squares(), patch_span()):
            assert cubical.verify_cocontinuity(f, g)
        codes = [SHOR, cubical.to_code(cubical.toric(3, 3)), cubical.to_code(cubical.patch(3, 3))]
        codes += [c for c, _ in random_logical_codes(2024, 120)]
        for code in codes:
            assert validate_complex(code.z_complex)
            assert code.k == code.n - la.rank(code.p_x) - la.rank(code.p_z)


def test_criterion_12_negative_fixtures(criterion):
    with criterion(12):
        O = cubical.to_code(octagon())
        nested, _, _ = octagon_operators()
        assert not check_separation(O, O, nested, nested)
        C, D, vC, vD = holed_pair()
        d = min(metrics(C).d_z, metrics(D).d_z)
        assert not check_distance_bounded_below(build_sandwich(C, D, vC, vD), d)
