"""Moments, potentials, and their evaluation on Gramians.

A potential is a polynomial ``F = sum f_k Q_k`` with ``f_k >= 0``.  Its value
on a weighted configuration, ``A = sum_jk w_j w_k F(<v_j, v_k>)``, is at least
``f_0`` with equality exactly at designs for the support of ``F``.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .core_model import (
    Field,
    check_gramian,
    gramian,
    require_unit_norm,
)
from .errors import (
    AllZeroVectors,
    ComplexCoefficients,
    EmptyIndexSet,
    UnknownFamily,
)
from .gegenbauer import (
    GegExpansion,
    MonomialPoly,
    telescoping_exact,
    to_geg_basis,
)
from .index_algebra import ComplexIndexSet, RealIndexSet, tau_star

PROVENANCES = ("canonical", "monomial_half", "monomial_t", "hom_pq", "hom_m_complex", "custom")


# -- moments ---------------------------------------------------------------

def moment_real_exact(d, m):
    if m % 2:
        return Fraction(0)
    num = math.prod(range(1, m, 2))
    den = math.prod(d + 2 * i for i in range(m // 2))
    return Fraction(num, den)


def moment_real(d, m):
    """``b_m(R^d)``: the double-sphere average of ``<x, y>^m``."""
    return float(moment_real_exact(d, m))


def moment_complex_exact(d, p, q):
    if p != q:
        return Fraction(0)
    return Fraction(math.factorial(d - 1) * math.factorial(p), math.factorial(d - 1 + p))


def moment_complex(d, p, q):
    """``b_{p,q}(C^d)``: the double-sphere average of ``<z, w>^p conj(<z, w>)^q``."""
    return float(moment_complex_exact(d, p, q))


# -- potentials ------------------------------------------------------------

@dataclass(frozen=True)
class PotentialValue:
    value: float
    floor: float
    residual: float
    imag: float = 0.0


class Potential:
    """A ``GegExpansion`` plus an additive constant and a provenance tag."""

    def __init__(self, expansion, b0=0.0, provenance="custom"):
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        if provenance != "custom" and not expansion.is_potential(tol=1e-12):
            raise ValueError("non-custom potentials need nonnegative coefficients")
        self.expansion = expansion
        self.b0 = float(b0)
        self.provenance = provenance
        self._tables = None

    @property
    def field(self):
        return self.expansion.field

    @property
    def d(self):
        return self.expansion.d

    @property
    def f0(self):
        return float(np.real(self.expansion.constant_term))

    def monomial(self):
        return self.expansion.to_monomial()

    def kernel_table(self):
        """Real coefficient table for the kernels (symmetrized in the complex case)."""
        if self._tables is None:
            c = self.monomial().coeffs
            if np.iscomplexobj(c):
                if np.any(np.imag(c) != 0):
                    raise ComplexCoefficients("kernels need real monomial coefficients")
                c = c.real
            if self.field is Field.COMPLEX:
                c = kernels.symmetrize_table(c)
            self._tables = np.ascontiguousarray(c, dtype=float)
        return self._tables

    def __call__(self, x):
        return self.expansion(x)

    def __repr__(self):
        return f"Potential({self.provenance}, {self.expansion!r}, b0={self.b0})"


def canonical_potential(field, d, indices):
    """Sum of ``Q`` over the index set without 0; complex sets are closed to ``tau*`` first."""
    field = Field.parse(field)
    if field is Field.REAL:
        keys = [k for k in RealIndexSet(indices) if k != 0]
    else:
        keys = [pq for pq in tau_star(ComplexIndexSet(indices)) if pq != (0, 0)]
    if not keys:
        raise EmptyIndexSet("canonical potential needs an index other than 0")
    return Potential(GegExpansion(field, d, {k: 1.0 for k in keys}), provenance="canonical")


def _hom_pq_coeffs(d, p, q):
    coeffs = {}
    for j, c in enumerate(telescoping_exact(d, p, q)):
        key = (p - j, q - j)
        coeffs[key] = coeffs.get(key, 0) + c
    return coeffs


def monomial_potential(field, d, family, *params):
    """Potentials with a simple monomial form.

    ``half_design(m)``: ``x^m - b_m(R^d)``; ``t_design(t)``: the sum of the
    half-design potentials of orders ``t`` and ``t - 1``; ``hom_pq(p, q)``:
    ``z^p conj(z)^q - b_pq(C^d)``; ``hom_m_complex(m)``:
    ``(z + conj z)^m - 2^m b_m(R^2d)``.
    """
    field = Field.parse(field)
    if family in ("half_design", "t_design") and field is Field.REAL:
        orders = [params[0]] if family == "half_design" else [params[0], params[0] - 1]
        total = None
        for m in orders:
            if m < 1:
                continue
            e = to_geg_basis(MonomialPoly(Field.REAL, [0.0] * m + [1.0]), d)
            coeffs = {k: v for k, v in e.coeffs.items() if k != 0}
            e = GegExpansion(Field.REAL, d, coeffs)
            total = e if total is None else total + e
        if total is None:
            raise EmptyIndexSet("order must be at least 1")
        prov = "monomial_half" if family == "half_design" else "monomial_t"
        return Potential(total, provenance=prov)
    if family in ("hom_pq", "tt_design") and field is Field.COMPLEX:
        p, q = (params[0], params[0]) if family == "tt_design" else params
        coeffs = _hom_pq_coeffs(d, p, q)
        coeffs.pop((0, 0), None)
        if not coeffs:
            raise EmptyIndexSet("Hom(0,0) has no nonconstant part")
        return Potential(GegExpansion(field, d, {k: float(v) for k, v in coeffs.items()}),
                         provenance="hom_pq")
    if family == "hom_m_complex" and field is Field.COMPLEX:
        (m,) = params
        coeffs = {}
        for j in range(m + 1):
            for key, v in _hom_pq_coeffs(d, j, m - j).items():
                coeffs[key] = coeffs.get(key, 0) + math.comb(m, j) * v
        coeffs.pop((0, 0), None)
        if not coeffs:
            raise EmptyIndexSet("order must be at least 1")
        return Potential(GegExpansion(field, d, {k: float(v) for k, v in coeffs.items()}),
                         provenance="hom_m_complex")
    raise UnknownFamily(f"no monomial potential for family {family!r} over {field.value}")


# -- evaluation ------------------------------------------------------------

def _weights_for(G, weights):
    n = G.shape[0]
    if weights is None:
        return np.full(n, 1.0 / n)
    w = np.asarray(weights, dtype=float)
    if w.shape != (n,):
        raise ValueError(f"{w.size} weights for a {n} x {n} Gramian")
    return w


def _expansion_sum(expansion, G, w):
    """``sum_jk w_j w_k F(G_jk)`` with the conjugate-pair trick in the complex case."""
    mono = expansion.to_monomial()
    c = mono.coeffs
    if expansion.field is Field.REAL:
        if np.iscomplexobj(c) and np.any(np.imag(c) != 0):
            vals = np.outer(w, w) * mono(np.real(G))
            return float(np.real(vals.sum())), float(np.imag(vals.sum()))
        return kernels.poly_sum_real(np.real(G), np.real(c), w), 0.0
    if np.iscomplexobj(c) and np.any(np.imag(c) != 0):
        vals = np.outer(w, w) * mono(G)
        s = vals.sum()
        return float(s.real), float(s.imag)
    C = np.real(c)
    value = kernels.poly_sum_complex(G, kernels.symmetrize_table(C), w)
    # The raw (unpaired) sum has zero imaginary part up to rounding for Hermitian G.
    raw = np.sum(np.outer(w, w) * mono(G))
    return value, float(np.imag(raw))


def evaluate(potential, G, weights=None, check=True):
    """Potential value on a Gramian: ``value``, ``floor = f_0``, ``residual``."""
    G = np.asarray(G)
    if check:
        check_gramian(G)
    w = _weights_for(G, weights)
    expansion = potential.expansion if isinstance(potential, Potential) else potential
    b0 = potential.b0 if isinstance(potential, Potential) else 0.0
    value, imag = _expansion_sum(expansion, G, w)
    f0 = float(np.real(expansion.constant_term))
    return PotentialValue(value + b0, f0 + b0, value - f0, imag)


def evaluate_config(potential, config, weights=None):
    require_unit_norm(config)
    w = config.effective_weights() if weights is None else weights
    return evaluate(potential, gramian(config), w)


def angle_form_value(F, angles):
    """``F(1) * diagonal_weight + sum m_a F(a)`` for an :class:`AngleSet`."""
    vals = np.asarray(F(np.asarray(angles.angles))) if len(angles) else np.zeros(0)
    total = complex(np.sum(angles.multiplicities * vals)) if len(angles) else 0.0
    return float(np.real(F(np.array([1.0]))[0]) * angles.diagonal_weight + np.real(total))


WEIGHTED_FAMILIES = ("half_design", "t_design_part2", "hom_pq", "hom_m_complex")


def evaluate_weighted_monomial(config, family, *params):
    """Both sides of the m-weighted variational inequality, unnormalized.

    ``value`` is the double sum, ``floor`` the right-hand side
    ``b * (sum ||v||^m)^2`` and ``residual = value - floor`` (>= 0).
    """
    norms = config.norms
    if not np.any(norms > 0):
        raise AllZeroVectors("all vectors are zero")
    G = gramian(config)
    if family == "half_design":
        (m,) = params
        # Over C^d this is the same inequality read in R^2d (real part of <,>).
        lhs = math.fsum((np.real(G) ** m).ravel().tolist())
        b = moment_real(config.dimension if config.field is Field.REAL else 2 * config.dimension, m)
        S = math.fsum((norms ** m).tolist())
    elif family == "t_design_part2":
        (m,) = params
        terms = np.outer(norms, norms) * np.real(G) ** (m - 1)
        lhs = math.fsum(terms.ravel().tolist())
        dim = config.dimension if config.field is Field.REAL else 2 * config.dimension
        b = moment_real(dim, m - 1)
        S = math.fsum((norms ** m).tolist())
    elif family == "hom_pq":
        p, q = params
        if config.field is not Field.COMPLEX:
            raise UnknownFamily("hom_pq needs a complex configuration")
        terms = G ** p * np.conj(G) ** q
        iu = np.triu_indices(config.n, 1)
        lhs = math.fsum(np.real(np.diagonal(terms)).tolist() + (2 * np.real(terms[iu])).tolist())
        b = moment_complex(config.dimension, p, q)
        S = math.fsum((norms ** (p + q)).tolist())
    elif family == "hom_m_complex":
        (m,) = params
        if config.field is not Field.COMPLEX:
            raise UnknownFamily("hom_m_complex needs a complex configuration")
        lhs = math.fsum((np.real(G) ** m).ravel().tolist())
        b = moment_real(2 * config.dimension, m)
        S = math.fsum((norms ** m).tolist())
    else:
        raise UnknownFamily(f"unknown weighted family {family!r}")
    rhs = b * S * S
    return PotentialValue(lhs, rhs, lhs - rhs)


def weighted_scale(config, m):
    """``(sum ||v||^m)^2``: the homogeneity scale of the m-weighted inequalities."""
    return math.fsum((config.norms ** m).tolist()) ** 2


# -- decomposition and energies --------------------------------------------

def decompose(expansion):
    """Split ``F = f_0 + F_plus - F_minus`` into potentials."""
    if not expansion.has_real_coefficients:
        raise ComplexCoefficients("decomposition needs real coefficients")
    zero = 0 if expansion.field is Field.REAL else (0, 0)
    f0 = float(np.real(expansion.coeffs.get(zero, 0.0)))
    plus = {k: v for k, v in expansion.coeffs.items() if k != zero and v > 0}
    minus = {k: -v for k, v in expansion.coeffs.items() if k != zero and v < 0}
    return (f0, GegExpansion(expansion.field, expansion.d, plus),
            GegExpansion(expansion.field, expansion.d, minus))


def pair_energy(config, F):
    """``sum_{j != k} F(<v_j, v_k>)`` over a unit-norm configuration."""
    require_unit_norm(config)
    G = gramian(config)
    if isinstance(F, (GegExpansion, Potential)):
        F = F.to_monomial() if isinstance(F, GegExpansion) else F.monomial()
    off = ~np.eye(config.n, dtype=bool)
    vals = F(G[off])
    if np.iscomplexobj(vals):
        vals = np.real(vals)
    return math.fsum(np.asarray(vals).tolist())
