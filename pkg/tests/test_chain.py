import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import golden
import oracles
from css_surgery import cubical
from css_surgery import f2linalg as la
from css_surgery.chain import (
    ChainComplex,
    ChainMap,
    compose,
    complex_from_json,
    complex_to_json,
    direct_sum,
    dual,
    dual_map,
    equivalent_up_to_permutation,
    homology_basis,
    homology_dim,
    identity_map,
    induced_homology_map,
    tensor,
    translate,
    unit_complex,
    validate_chain_map,
    validate_complex,
    zero_complex,
    zero_map,
)
from css_surgery.codes import shor_code
from css_surgery.errors import ChainMapError
from css_surgery.surgery import interval_complex, operator_subcomplex
from strategies import complexes

SHOR = shor_code()
Z147 = np.array([1, 0, 0, 1, 0, 0, 1, 0, 0], dtype=np.uint8)


# -- validation -------------------------------------------------------------------------------


def test_validate_complex_examples():
    assert validate_complex(SHOR.z_complex)
    assert validate_complex(zero_complex())
    bad = ChainComplex({1: 1, 0: 1, -1: 1}, {0: [[1]], -1: [[1]]})
    v = validate_complex(bad)
    assert not v and v.degree == -1 and v.entry == (0, 0)


def test_shape_errors():
    with pytest.raises(ValueError):
        ChainComplex({0: 2, -1: 1}, {-1: [[1, 1, 0]]})
    with pytest.raises(ValueError):
        ChainComplex({0: 2}, labels={0: ["a"]})
    with pytest.raises(ChainMapError):
        ChainMap(SHOR.z_complex, SHOR.z_complex, {0: la.eye(3)})


def test_validate_chain_map_examples():
    C = SHOR.z_complex
    assert validate_chain_map(identity_map(C))
    assert validate_chain_map(zero_map(C, tensor(C, C)))
    f = operator_subcomplex(SHOR, Z147).host_inclusion
    assert f[0].shape == (9, 3) and np.array_equal(f[-1], la.eye(2))
    assert validate_chain_map(f)
    broken = ChainMap(f.source, f.target, {0: f[0], -1: la.zeros(2, 2)})
    v = validate_chain_map(broken)
    assert not v and v.degree == -1


# -- homology ---------------------------------------------------------------------------------


def test_homology_dim_examples():
    assert homology_dim(SHOR.z_complex, 0) == 1
    assert homology_dim(cubical.to_chain_complex(cubical.toric(3, 3)), 0) == 2
    assert all(homology_dim(zero_complex(), n) == 0 for n in range(-3, 4))


def test_homology_basis_examples():
    hb = homology_basis(SHOR.z_complex, 0)
    assert hb.k == 1
    ones = np.ones(9, dtype=np.uint8)
    assert la.in_span(hb.boundary_basis, ones ^ hb.representatives[0])
    exact = ChainComplex({0: 2, -1: 2}, {-1: la.eye(2)})
    assert homology_basis(exact, 0).k == 0
    assert homology_basis(cubical.to_chain_complex(cubical.patch(3, 3)), 0).k == 1


@given(complexes())
def test_homology_basis_properties(C):
    for n in C.degrees:
        hb = homology_basis(C, n)
        assert hb.k == homology_dim(C, n) == oracles.homology_dim(C.d(n - 1), C.d(n))
        reps = hb.representatives
        if hb.k:
            assert not la.mul(C.d(n - 1), reps.T).any()
            stacked = np.concatenate([hb.boundary_basis, reps.T], axis=1)
            assert la.rank(stacked) == hb.boundary_basis.shape[1] + hb.k


# -- dual, sums, tensor, translation ---------------------------------------------------------


def test_dual_examples():
    D = dual(SHOR.z_complex)
    assert D.dims == {-1: 6, 0: 9, 1: 2}
    assert np.array_equal(D.d(0), SHOR.p_x.T) and np.array_equal(D.d(-1), SHOR.p_z)
    assert dual(zero_complex()) == zero_complex()


@given(complexes(low=-2, max_len=4))
def test_dual_involution_and_homology(C):
    assert validate_complex(dual(C))
    assert dual(dual(C)) == C
    for n in range(-4, 5):
        assert homology_dim(C, n) == homology_dim(dual(C), -n)


def test_direct_sum_examples():
    C = SHOR.z_complex
    S = direct_sum(C, zero_complex())
    assert S == C and S.labels(0)[0] == "C.q0"
    SS = direct_sum(C, C)
    assert SS.dims == {1: 12, 0: 18, -1: 4}
    assert homology_dim(SS, 0) == 2


@given(complexes(), complexes())
def test_direct_sum_homology_additive(C, D):
    S = direct_sum(C, D)
    assert validate_complex(S)
    for n in range(-2, 3):
        assert homology_dim(S, n) == homology_dim(C, n) + homology_dim(D, n)


def test_tensor_unit():
    C = SHOR.z_complex
    assert tensor(C, unit_complex()) == C
    assert tensor(unit_complex(), C) == C


def test_tensor_sandwich_intermediate_golden():
    V = operator_subcomplex(SHOR, Z147).complex
    assert V.d(-1).tolist() == [[1, 1, 0], [1, 0, 1]]
    W = tensor(interval_complex(), V)
    assert W.dims == {1: 3, 0: 8, -1: 4}
    assert np.array_equal(W.d(0), golden.m(golden.W_D0))
    assert np.array_equal(W.d(-1), golden.m(golden.W_DM1))


@settings(max_examples=100)
@given(complexes(max_dim=5, max_len=3), complexes(max_dim=5, max_len=3, low=0))
def test_kunneth(C, D):
    T = tensor(C, D)
    assert validate_complex(T)
    cd = {i: homology_dim(C, i) for i in C.degrees}
    dd = {j: homology_dim(D, j) for j in D.degrees}
    for n in range(-3, 5):
        assert homology_dim(T, n) == oracles.tensor_homology(cd, dd, n)


def test_translate_examples():
    C = ChainComplex({0: 2, -1: 1}, {-1: [[1, 1]]})
    assert translate(C, 0) == C
    assert translate(C, -1).degrees == [0, 1]
    assert np.array_equal(translate(C, -1).d(0), C.d(-1))


@given(complexes(), st.integers(-3, 3))
def test_translate_round_trip(C, p):
    assert translate(translate(C, p), -p) == C
    for n in C.degrees:
        assert homology_dim(translate(C, p), n - p) == homology_dim(C, n)


# -- induced maps ----------------------------------------------------------------------------


def test_induced_identity():
    C = cubical.to_chain_complex(cubical.toric(3, 3))
    assert np.array_equal(induced_homology_map(identity_map(C), 0), la.eye(2))


def _homotopy_map(C, h):
    """``id + d h + h d``: a chain map inducing the identity on homology."""

    def hn(n):
        return h.get(n, la.zeros(C.dim(n + 1), C.dim(n)))

    comps = {n: la.eye(C.dim(n)) ^ la.mul(C.d(n), hn(n)) ^ la.mul(hn(n - 1), C.d(n - 1)) for n in C.degrees}
    return ChainMap(C, C, comps)


@st.composite
def homotopic_pairs(draw):
    C = draw(complexes(max_len=3))
    maps = []
    for _ in range(2):
        h = {}
        for n in C.degrees:
            rows, cols = C.dim(n + 1), C.dim(n)
            bits = draw(st.lists(st.integers(0, 1), min_size=rows * cols, max_size=rows * cols))
            h[n] = np.array(bits, dtype=np.uint8).reshape(rows, cols)
        maps.append(_homotopy_map(C, h))
    return maps


@given(homotopic_pairs())
def test_functoriality_on_homotopic_maps(pair):
    f, g = pair
    C = f.source
    assert validate_chain_map(f) and validate_chain_map(g)
    fg = compose(f, g)
    for n in C.degrees:
        k = homology_dim(C, n)
        assert np.array_equal(induced_homology_map(f, n), la.eye(k))
        assert np.array_equal(
            induced_homology_map(fg, n), la.mul(induced_homology_map(f, n), induced_homology_map(g, n))
        )


def test_functoriality_through_projection():
    # quotient of the toric complex by the subcomplex carried by a logical string
    from css_surgery.colimit import cokernel

    X = cubical.toric(3, 3)
    code = cubical.to_code(X)
    v = la.zeros(1, code.n)[0]
    v[[i for i, e in enumerate(cubical.retained_faces(X, 1)) if e[0][0] == e[1][0] == 0]] = 1
    incl = operator_subcomplex(code, v).host_inclusion
    E, q = cokernel(incl)
    assert validate_chain_map(q)
    h = homotopic_map_on(code.z_complex)
    lhs = induced_homology_map(compose(q, h), 0)
    rhs = la.mul(induced_homology_map(q, 0), induced_homology_map(h, 0))
    assert np.array_equal(lhs, rhs)


def homotopic_map_on(C):
    rng = np.random.default_rng(3)
    return _homotopy_map(C, {n: rng.integers(0, 2, (C.dim(n + 1), C.dim(n)), dtype=np.uint8) for n in C.degrees})


def test_dual_map_transposes():
    f = operator_subcomplex(SHOR, Z147).host_inclusion
    fs = dual_map(f)
    assert np.array_equal(fs[0], f[0].T) and np.array_equal(fs[1], f[-1].T)
    assert validate_chain_map(fs)


# -- comparison and serialisation -------------------------------------------------------------


def test_equivalent_up_to_permutation():
    C = SHOR.z_complex
    perm = np.random.default_rng(0).permutation(9)
    D = ChainComplex(C.dims, {0: C.d(0)[perm], -1: C.d(-1)[:, perm]})
    assert equivalent_up_to_permutation(C, D)
    E = ChainComplex(C.dims, {0: C.d(0), -1: la.zeros(2, 9)})
    assert not equivalent_up_to_permutation(C, E)


@given(complexes())
def test_complex_json_round_trip(C):
    back = complex_from_json(complex_to_json(C))
    assert back == C
    assert all(back.labels(n) == C.labels(n) for n in C.degrees)
