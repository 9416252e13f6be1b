import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from sphere_designs.core_model import Field
from sphere_designs.errors import DimensionTooSmall, QuadratureDegreeExceeded
from sphere_designs.gegenbauer import (
    GegExpansion,
    MonomialPoly,
    complex_product,
    complex_Q,
    complex_Q_exact,
    dim_H,
    dim_harm,
    gauss_jacobi,
    geg_inner_complex,
    geg_inner_real,
    hoggar_Q,
    jacobi_shifted,
    product_by_projection,
    real_Q,
    real_Q_explicit,
    rogers_coefficients,
    rogers_product,
    sum_identity,
    telescoping,
    to_geg_basis,
)

from conftest import (
    oracle_complex_Q,
    oracle_dim_H,
    oracle_dim_harm,
    oracle_real_Q,
    random_disc,
)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7])
def test_real_Q_matches_scipy(d):
    x = np.linspace(-1, 1, 41)
    for k in range(13):
        ref = oracle_real_Q(d, k, x)
        assert np.allclose(real_Q(d, k)(x), ref, rtol=1e-11, atol=1e-10)


@pytest.mark.parametrize("d", [2, 3, 6])
def test_recurrence_matches_explicit_sum(d):
    for k in range(10):
        exact = np.array([float(c) for c in real_Q_explicit(d, k)])
        assert np.allclose(real_Q(d, k).coeffs, exact, rtol=1e-12, atol=1e-9)


def test_real_Q_small_cases():
    assert real_Q(3, 1).coeffs.tolist() == [0.0, 3.0]
    assert np.allclose(real_Q(3, 2).coeffs, [-2.5, 0.0, 7.5])
    assert [Fraction(c) for c in real_Q_explicit(4, 2)] == [Fraction(-3), Fraction(0), Fraction(12)]


def test_real_Q_needs_d2():
    with pytest.raises(DimensionTooSmall):
        real_Q(1, 3)


def test_dimensions_against_oracles():
    for d in range(2, 9):
        for k in range(12):
            assert dim_harm(d, k) == oracle_dim_harm(d, k)
            assert real_Q(d, k).at_one() == pytest.approx(dim_harm(d, k), rel=1e-12)
    for d in range(1, 9):
        for p in range(9):
            for q in range(9):
                assert dim_H(d, p, q) == (oracle_dim_H(d, p, q) if d > 1 else int(p == 0 or q == 0))


def test_dimension_sum_identity():
    # sum_j dim H(p-j, q-j) = C(p+d-1, d-1) C(q+d-1, d-1)
    for d in range(1, 9):
        for p in range(9):
            for q in range(9):
                total = sum(dim_H(d, p - j, q - j) for j in range(min(p, q) + 1))
                assert total == math.comb(p + d - 1, d - 1) * math.comb(q + d - 1, d - 1)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_complex_Q_matches_jacobi_oracle(d, rng):
    z = random_disc(rng, 30)
    for p in range(5):
        for q in range(5):
            assert np.allclose(complex_Q(d, p, q)(z), oracle_complex_Q(d, p, q, z),
                               rtol=1e-10, atol=1e-10)


def test_complex_Q_d1_and_small_cases():
    z = np.array([0.3 + 0.4j, -0.5j])
    assert np.allclose(complex_Q(1, 3, 0)(z), z ** 3)
    assert np.allclose(complex_Q(1, 0, 2)(z), np.conj(z) ** 2)
    assert np.allclose(complex_Q(1, 2, 1)(z), 0)
    assert complex_Q_exact(3, 1, 0) == {(1, 0): Fraction(3)}


def test_complex_Q_conjugate_symmetry(rng):
    z = random_disc(rng, 10)
    for d in (2, 3):
        for p, q in [(2, 1), (3, 0), (1, 3)]:
            assert np.allclose(complex_Q(d, p, q)(z), np.conj(complex_Q(d, q, p)(z)))


def test_gauss_jacobi_matches_scipy():
    for a, b in [(0.0, 0.0), (0.5, 0.5), (-0.5, -0.5), (2.0, 0.0), (1.5, 3.0)]:
        x, w = gauss_jacobi(12, a, b)
        xr, wr = special.roots_jacobi(12, a, b)
        assert np.allclose(np.sort(x), xr, atol=1e-13)
        assert np.allclose(w[np.argsort(x)], wr / wr.sum(), atol=1e-13)


def test_real_inner_product_against_scipy_quad():
    d = 5
    f, g = real_Q(d, 3), real_Q(d, 3) + real_Q(d, 1)
    weight = lambda x: (1 - x * x) ** ((d - 3) / 2)  # noqa: E731
    norm = integrate.quad(weight, -1, 1)[0]
    ref = integrate.quad(lambda x: f(x) * g(x) * weight(x), -1, 1)[0] / norm
    assert geg_inner_real(f, g, d) == pytest.approx(ref, rel=1e-10)
    assert ref == pytest.approx(dim_harm(d, 3), rel=1e-9)


def test_disk_inner_product_against_polar_quad():
    d = 3
    f = complex_Q(d, 2, 1)
    g = complex_Q(d, 2, 1)

    def integrand(r, t):
        z = r * np.exp(1j * t)
        return float(np.real(f(z) * np.conj(g(z)))) * (1 - r * r) ** (d - 2) * r
    val = integrate.dblquad(integrand, 0, 2 * np.pi, 0, 1, epsabs=1e-11)[0] * (d - 1) / np.pi
    assert geg_inner_complex(f, g, d).real == pytest.approx(val, rel=1e-8)
    assert val == pytest.approx(dim_H(d, 2, 1), rel=1e-8)


def test_quadrature_degree_cap():
    with pytest.raises(QuadratureDegreeExceeded):
        geg_inner_real(MonomialPoly.x() ** 41, MonomialPoly.x(), 3)


def test_to_geg_basis_triangular_oracle():
    # exact: solve the triangular system from the explicit rational coefficients
    d = 4
    f = MonomialPoly(Field.REAL, [0.5, -1.0, 0.0, 2.0, 0.25])
    e = to_geg_basis(f, d)
    mat = np.zeros((5, 5))
    for k in range(5):
        c = [float(v) for v in real_Q_explicit(d, k)]
        mat[: len(c), k] = c
    coef = np.linalg.solve(mat, f.coeffs)
    for k in range(5):
        assert e.coeffs.get(k, 0.0) == pytest.approx(coef[k], abs=1e-12)
    assert np.allclose(e.to_monomial().coeffs, f.coeffs, atol=1e-12)


def test_to_geg_basis_complex_roundtrip(rng):
    C = rng.standard_normal((4, 3))
    f = MonomialPoly(Field.COMPLEX, C)
    for d in (1, 2, 3):
        e = to_geg_basis(f, d)
        z = random_disc(rng, 20)
        if d == 1:
            z = z / np.abs(z)  # on the circle only the boundary values are determined
        assert np.allclose(e(z), f(z), atol=1e-11)


def test_rogers_closed_form_known_case():
    c = rogers_coefficients(3, 1, 1)
    # Q1 Q1 = (2d/(d+2)) Q2 + d Q0
    assert c == {2: Fraction(6, 5), 0: Fraction(3)}


@pytest.mark.parametrize("d", [3, 4, 5])
def test_rogers_matches_projection(d):
    for k in range(5):
        for l in range(5):
            closed = rogers_coefficients(d, k, l)
            proj = product_by_projection(real_Q(d, k), real_Q(d, l), d)
            for m in set(closed) | set(proj.coeffs):
                assert float(closed.get(m, 0)) == pytest.approx(proj.coeffs.get(m, 0.0), abs=1e-9)


def test_rogers_product_d2_uses_quadrature():
    e = rogers_product(2, 2, 3)
    x = np.linspace(-1, 1, 9)
    assert np.allclose(e(x), real_Q(2, 2)(x) * real_Q(2, 3)(x))


def test_complex_products_known_values():
    e = complex_product(2, (1, 1), (1, 1))
    assert e.coeffs == pytest.approx({(2, 2): 1.2, (0, 0): 3.0})
    e = complex_product(3, (1, 0), (0, 1))
    assert e.coeffs == pytest.approx({(1, 1): 0.75, (0, 0): 3.0})


@pytest.mark.parametrize("d", [2, 3, 4])
def test_complex_product_is_potential_and_exact(d, rng):
    z = random_disc(rng, 12)
    for pq in [(1, 0), (2, 1), (1, 1)]:
        for rs in [(0, 1), (1, 1), (2, 0)]:
            e = complex_product(d, pq, rs)
            assert e.is_potential()
            assert np.allclose(e(z), complex_Q(d, *pq)(z) * complex_Q(d, *rs)(z), atol=1e-9)


def test_telescoping_and_sum_identity(rng):
    z = random_disc(rng, 25)
    for d in (2, 3, 4):
        for p in range(4):
            for q in range(4):
                c = telescoping(d, p, q)
                lhs = sum(cj * complex_Q(d, p - j, q - j)(z) for j, cj in enumerate(c))
                assert np.allclose(lhs, z ** p * np.conj(z) ** q, atol=1e-12)
                e = sum_identity(d, p, q)
                assert np.allclose(e(z), d / (p + q + d) * oracle_complex_Q(d + 1, p, q, z),
                                   atol=1e-10)


def test_hoggar_relations(rng):
    x = np.linspace(-1, 1, 11)
    z = random_disc(rng, 11)
    for d in (3, 4):
        for k in range(4):
            for eps in (0, 1):
                hr = hoggar_Q(0.5, d, eps, k)
                assert np.allclose(x ** eps * hr(x * x), real_Q(d, 2 * k + eps)(x), atol=1e-10)
                hc = hoggar_Q(1, d, eps, k)
                assert np.allclose(z ** eps * hc(np.abs(z) ** 2),
                                   complex_Q(d, k + eps, k)(z), atol=1e-10)


def test_hoggar_example_coefficients():
    # Q_1^0 for the complex case is d(d+1)u - (d+1)
    d = 3
    assert np.allclose(hoggar_Q(1, d, 0, 1).coeffs, [-(d + 1), d * (d + 1)])


def test_jacobi_shifted_matches_scipy():
    x = np.linspace(0, 1, 7)
    for n in range(5):
        for a, b in [(0, 0), (2, 1), (3, 0)]:
            assert np.allclose(jacobi_shifted(n, a, b)(x), special.eval_jacobi(n, a, b, 2 * x - 1))


def test_expansion_arithmetic():
    a = GegExpansion("real", 3, {0: 1.0, 2: 0.5})
    b = GegExpansion("real", 3, {2: -0.5, 1: 2.0})
    s = a + b
    assert s.coeffs == {0: 1.0, 1: 2.0}
    assert (a * 2).coeffs == {0: 2.0, 2: 1.0}
    assert a.value_at_one() == pytest.approx(1 + 0.5 * 5)
    assert a.is_potential() and not b.is_potential()


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(0, 8), st.integers(0, 8))
def test_real_orthogonality_property(d, j, k):
    val = geg_inner_real(real_Q(d, j), real_Q(d, k), d)
    expected = dim_harm(d, k) if j == k else 0.0
    assert abs(val - expected) <= 1e-9 * dim_harm(d, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_complex_orthogonality_property(d, p, q, r, s):
    val = geg_inner_complex(complex_Q(d, p, q), complex_Q(d, r, s), d)
    expected = dim_H(d, p, q) if (p, q) == (r, s) else 0.0
    assert abs(val - expected) <= 1e-8 * max(1, dim_H(d, p, q))
