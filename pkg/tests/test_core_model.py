import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from sphere_designs.configurations import builtin_configuration, parse_builtin
from sphere_designs.core_model import (
    Configuration,
    Field,
    angle_set,
    check_gramian,
    gramian,
    load_configuration,
    m_weights,
    save_configuration,
)
from sphere_designs.errors import (
    AllZeroVectors,
    ClusterAmbiguity,
    DimensionMismatch,
    NonHermitianGramian,
    ParseError,
    UnknownName,
)

from conftest import random_unit


def test_roundtrip_real_and_complex(rng):
    for cf in (False, True):
        V = random_unit(rng, 7, 3, cf)
        c = Configuration("complex" if cf else "real", 3, V, weights=rng.uniform(0.1, 1, 7))
        back = load_configuration(save_configuration(c))
        assert back == c
        assert np.array_equal(back.vectors, c.vectors)


def test_json_shape():
    c = Configuration(Field.COMPLEX, 1, [[1j]])
    doc = json.loads(save_configuration(c))
    assert doc == {"field": "complex", "dimension": 1, "vectors": [[[0.0, 1.0]]]}


@pytest.mark.parametrize("text, exc", [
    ("{", ParseError),
    ("[]", ParseError),
    ('{"field": "real", "dimension": 2}', ParseError),
    ('{"field": "quaternion", "dimension": 1, "vectors": [[1]]}', ParseError),
    ('{"field": "real", "dimension": 2, "vectors": [[1, 0, 0]]}', DimensionMismatch),
    ('{"field": "real", "dimension": 1, "vectors": [[[1, 1]]]}', ParseError),
    ('{"field": "real", "dimension": 1, "vectors": [[true]]}', ParseError),
    ('{"field": "real", "dimension": 1, "vectors": [[1]], "weights": [1, 2]}', DimensionMismatch),
    (b"\xff\xfe", ParseError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        load_configuration(text)


def test_parse_error_location():
    with pytest.raises(ParseError) as info:
        load_configuration('{"field": "real",\n "dimension": }')
    assert info.value.line == 2


def test_weights_are_normalized():
    c = Configuration("real", 1, [[1.0], [-1.0]], weights=[1, 3])
    assert np.allclose(c.weights, [0.25, 0.75])
    with pytest.raises(DimensionMismatch):
        Configuration("real", 1, [[1.0]], weights=[0.0])


def test_configuration_is_immutable():
    c = builtin_configuration("simplex", 2)
    with pytest.raises(ValueError):
        c.vectors[0, 0] = 3.0


def test_gramian_is_hermitian(rng):
    c = Configuration("complex", 3, random_unit(rng, 5, 3, True))
    G = gramian(c)
    assert np.array_equal(G, G.conj().T)
    assert np.allclose(np.diagonal(G), 1)
    assert check_gramian(G)


def test_check_gramian_rejects():
    with pytest.raises(NonHermitianGramian):
        check_gramian(np.array([[1, 2], [0, 1]]))
    with pytest.raises(NonHermitianGramian):
        check_gramian(np.array([[1, 2], [2, 1]]))  # indefinite
    with pytest.raises(NonHermitianGramian):
        check_gramian(np.ones((2, 3)))


def test_builtins():
    s = builtin_configuration("simplex", 4)
    G = gramian(s)
    off = G[~np.eye(5, dtype=bool)]
    assert np.allclose(off, -0.25)
    assert np.allclose(s.vectors.sum(axis=0), 0)
    ico = builtin_configuration("icosahedron")
    assert ico.n == 12 and ico.is_unit_norm()
    r = parse_builtin("roots_of_unity:5")
    assert r.field is Field.COMPLEX and r.n == 5
    sc = parse_builtin("scaled:orthoplex,2.0,3")
    assert np.allclose(sc.norms, 2.0)
    with pytest.raises(UnknownName):
        parse_builtin("dodecahedron")


def test_angle_set_simplex():
    G = gramian(builtin_configuration("simplex", 3))
    a = angle_set(G)
    assert np.allclose(a.angles, [-1 / 3])
    assert a.multiplicities.tolist() == [12.0]
    assert a.diagonal_weight == 4


def test_angle_set_weighted_and_ambiguity():
    G = np.array([[1.0, 0.5, 0.5 + 1.5e-9], [0.5, 1.0, 0.2], [0.5 + 1.5e-9, 0.2, 1.0]])
    with pytest.raises(ClusterAmbiguity):
        angle_set(G, tol=1e-9)
    G[0, 2] = G[2, 0] = 0.5 + 1e-12
    a = angle_set(G, weights=np.array([0.5, 0.25, 0.25]))
    assert np.allclose(a.angles, [0.2, 0.5])
    assert np.allclose(a.multiplicities, [0.125, 0.5])
    assert a.diagonal_weight == pytest.approx(0.375)


def test_m_weights():
    c = Configuration("real", 2, [[2.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    assert np.allclose(m_weights(c, 2).values, [0.8, 0.2, 0.0])
    assert np.allclose(m_weights(c, 0).values, [1 / 3] * 3)
    with pytest.raises(AllZeroVectors):
        m_weights(Configuration("real", 1, [[0.0]]), 2)


@settings(max_examples=30, deadline=None)
@given(hnp.arrays(np.float64, (4, 3), elements=st.floats(-5, 5, allow_nan=False)))
def test_roundtrip_property(V):
    c = Configuration("real", 3, V)
    assert load_configuration(save_configuration(c)) == c


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2 ** 32 - 1))
def test_angle_counts_property(n, seed):
    G = gramian(Configuration("complex", 2, random_unit(np.random.default_rng(seed), n, 2, True)))
    a = angle_set(G, tol=1e-12)
    assert a.multiplicities.sum() == n * (n - 1)
