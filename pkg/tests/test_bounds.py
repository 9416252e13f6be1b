import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sphere_designs.bounds import (
    AnnihilatorSpec,
    absolute_lower_complex,
    absolute_lower_real,
    annihilator,
    complex_roots,
    fisher_bound,
    harmonic_index_lower,
    lower_bound,
    naive_closed_form,
    real_part_bound,
    real_part_closed_form,
    real_roots,
    s_angular_bound,
    solve_tight_roots,
    special_bounds,
    tightness_check,
    tt_index_set,
    tt_lower_bound,
    tt_lower_closed_form,
    tt_table,
    upper_bound_acode,
)
from sphere_designs.configurations import builtin_configuration
from sphere_designs.errors import (
    AngleAtOne,
    EmptyIndexSet,
    InvalidPotential,
    OutOfValidityDomain,
    PreconditionFailed,
    ZeroAtOne,
)
from sphere_designs.gegenbauer import GegExpansion, MonomialPoly, hoggar_Q, real_Q, to_geg_basis


def test_absolute_real_closed_forms():
    for d in range(2, 8):
        for e in range(4):
            even = absolute_lower_real(range(e + 1), d)
            assert even.value == math.comb(e + d - 1, d - 1) + math.comb(e + d - 2, d - 1)
            assert even.details["quadrature_ratio"] == pytest.approx(even.value, rel=1e-9)
            odd = absolute_lower_real(range(e % 2, e + 1, 2), d, "odd_even")
            assert odd.value == 2 * math.comb(e + d - 1, d - 1)
            half = absolute_lower_real(range(e % 2, e + 1, 2), d)
            assert half.value == math.comb(e + d - 1, d - 1)
    with pytest.raises(PreconditionFailed):
        absolute_lower_real([1, 2], 3, "odd_even")
    with pytest.raises(EmptyIndexSet):
        absolute_lower_real([], 3)


def test_icosahedron_is_tight_for_t5():
    rep = absolute_lower_real([0, 2], 3, "odd_even")
    assert rep.value == 12
    ico = builtin_configuration("icosahedron")
    cert = tightness_check(ico, rep)
    assert cert.passed and cert.worst_residual < 1e-12
    roots = sorted(rep.tight_roots)
    assert np.allclose(roots, [-1, -1 / np.sqrt(5), 1 / np.sqrt(5)])


def test_tt_bounds_and_closed_forms():
    for d in range(1, 7):
        for t in range(1, 7):
            assert tt_lower_bound(d, t).value == tt_lower_closed_form(d, t)
    assert tt_index_set(3).to_list() == [[1, 0], [2, 1]]
    rows = tt_table([4], [1, 2, 3])
    assert [r["bound"] for r in rows] == [4, 16, 40]


def test_hoggar_form_matches_tight_roots():
    # Q_E sums to a multiple of Q_{k+eps,k} one dimension up, so its |z|^2 roots are
    # those of x^eps Q_k^eps(x) for d + 1 and of the s-angular Jacobi polynomial, t = 2s - eps
    for d in range(2, 6):
        for t in range(1, 6):
            k, eps = divmod(t, 2)
            rep = tt_lower_bound(d, t)
            roots = sorted(real_roots(hoggar_Q(1, d + 1, eps, k).coeffs, 0, 1))
            if eps:
                roots = [0.0] + roots
            assert np.allclose(sorted(rep.tight_roots), roots, atol=1e-10)
            s = k + eps
            assert np.allclose(s_angular_bound(d, s, bool(eps)).tight_roots, roots, atol=1e-10)


def test_absolute_complex_simplex_tight():
    rep = absolute_lower_complex([(0, 0), (1, 0)], 3)
    assert rep.value == 4
    assert rep.root_kind == "z"
    assert np.allclose(rep.tight_roots, [-1 / 3])
    assert tightness_check(builtin_configuration("simplex", 3).as_complex(), rep).passed


def test_lower_bound_examples():
    d = 3
    S = GegExpansion("real", d, {0: 1.0, 1: 1.0}).to_monomial()
    rep = lower_bound(to_geg_basis(S * S, d))
    assert rep.value == pytest.approx(d + 1)
    Q = GegExpansion("complex", d, {(0, 0): 1.0, (1, 0): 1.0}).to_monomial()
    assert lower_bound(to_geg_basis(Q * Q.conj(), d)).value == pytest.approx(d + 1)
    with pytest.raises(TypeError):
        lower_bound(S * S)
    with pytest.raises(PreconditionFailed) as info:
        lower_bound(GegExpansion("real", 3, {0: 1.0, 1: 1.0}))
    assert info.value.witness == pytest.approx(-1.0)
    with pytest.raises(InvalidPotential):
        lower_bound(GegExpansion("real", 3, {1: 1.0}))
    with pytest.raises(PreconditionFailed):
        lower_bound(to_geg_basis(S * S, d), [2])


def test_harmonic_index_bounds():
    # Q_t(1)/b + 1 with b = -min Q_t
    for d, t in [(3, 3), (3, 4), (4, 2), (5, 6)]:
        rep = harmonic_index_lower(d, t)
        Q = real_Q(d, t)
        b = -np.min(Q(np.linspace(-1, 1, 200001)))
        assert rep.value == pytest.approx(Q.at_one() / b + 1, rel=1e-6)


def test_acode_examples():
    d = 3
    simplex = GegExpansion("real", d, {0: 1.0, 1: 1.0})  # d x + 1
    rep = upper_bound_acode(simplex, [-1 / d])
    assert rep.value == pytest.approx(d + 1)
    assert upper_bound_acode(GegExpansion("real", d, {0: 1.0}), []).value == 1
    with pytest.raises(PreconditionFailed):
        upper_bound_acode(simplex, [0.5])
    with pytest.raises(InvalidPotential):
        upper_bound_acode(GegExpansion("real", d, {0: 1.0, 2: -1.0}), [])


def test_fisher_naive_and_real_part():
    for d in range(1, 5):
        for m in range(1, 4):
            alphas = [0.3 * np.exp(1j * (0.7 + k)) for k in range(m)]
            assert fisher_bound(annihilator(AnnihilatorSpec(d, angles=tuple(alphas)))).value \
                == naive_closed_form(d, m)
            parts = [0.1 + 0.2 * k for k in range(m)]
            assert real_part_bound(d, parts).value == real_part_closed_form(d, m)


def test_projective_annihilator_support():
    F = annihilator(AnnihilatorSpec(3, projective=(0.0, 0.25)))
    assert set(F.coeffs) == {(2, 1), (1, 0)}
    assert F.value_at_one() == pytest.approx(1.0)


def test_annihilator_vanishes_on_angles():
    spec = AnnihilatorSpec(2, angles=(0.2 + 0.1j,), real_parts=(-0.3,), projective=(0.4,))
    F = annihilator(spec)
    pts = [0.2 + 0.1j, -0.3 + 0.5j, np.sqrt(0.4) * np.exp(0.3j)]
    assert np.max(np.abs(F(np.array(pts)))) < 1e-12
    assert F.value_at_one() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(AngleAtOne):
        annihilator(AnnihilatorSpec(2, angles=(1.0,)))


def test_fisher_errors_and_equality():
    with pytest.raises(ZeroAtOne):
        fisher_bound(GegExpansion("complex", 2, {(1, 0): 1.0, (0, 0): -2.0}))
    onb = GegExpansion("complex", 3, {(0, 0): 1 / 3, (1, 0): 1 / 3})
    # normalized to F(1) = 1 both coefficients are 1/4
    assert fisher_bound(onb, n=4).details["equal_form"] is True
    rep = fisher_bound(onb, n=3)
    assert rep.value == 4 and rep.details["equal_form"] is False


def test_s_angular():
    for d in range(1, 6):
        for s in range(1, 4):
            for eps in (0, 1):
                rep = s_angular_bound(d, s, bool(eps))
                assert rep.value == math.comb(s + d - 1, d - 1) * math.comb(s - eps + d - 1, d - 1)
    rep = s_angular_bound(4, 2, True)
    assert np.allclose(rep.tight_roots, [0, 1 / 3])
    assert rep.value == 40


def test_special_bounds_exact():
    assert special_bounds(4, ["0", "1/3"]).value == 40
    assert special_bounds(3, [Fraction(1, 4)]).value == 9
    assert special_bounds(4, [0]).value == 4
    rep = special_bounds(4, ["1/10", "1/5"])
    assert rep.value == 16
    assert rep.details["potential_route"] == pytest.approx(16, rel=1e-12)
    with pytest.raises(OutOfValidityDomain):
        special_bounds(4, [Fraction(2, 6)])  # 1 - d a < 0
    with pytest.raises(OutOfValidityDomain):
        special_bounds(4, [0, Fraction(1, 2)])
    with pytest.raises(AngleAtOne):
        special_bounds(4, [1])


def test_special_two_angle_limit():
    exact = special_bounds(5, [0, 0.2]).value
    near = special_bounds(5, [1e-9, 0.2]).value
    assert near == pytest.approx(exact, rel=1e-6)


def test_root_finding():
    assert np.allclose(real_roots([-0.25, 0, 1.0]), [-0.5, 0.5])
    # double root polished on the derivative
    assert np.allclose(real_roots([0.25, -1.0, 1.0]), [0.5], atol=1e-10)
    z = complex_roots([1.0, 1.0, 1.0])
    assert np.allclose(sorted(np.angle(z)), [-2 * np.pi / 3, 2 * np.pi / 3])
    roots, kind = solve_tight_roots(MonomialPoly.z() * MonomialPoly.zbar() - MonomialPoly.constant("complex", 0.25))
    assert kind == "abs2" and np.allclose(roots, [0.25])


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(1, 6))
def test_tt_bound_equals_hom_dimension_sum(d, t):
    k = t // 2
    got = tt_lower_bound(d, t).value
    assert got == math.comb(k + d - 1, d - 1) * math.comb(t - k + d - 1, d - 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True),
       st.lists(st.floats(0.05, 2.0), min_size=4, max_size=4))
def test_equal_coefficients_are_optimal(d, E, c):
    c = c[: len(E)]
    S = GegExpansion("real", d, dict(zip(E, c))).to_monomial()
    F = S * S
    M = F.at_one() / to_geg_basis(F, d).constant_term
    assert M <= absolute_lower_real(E, d).value * (1 + 1e-9)
