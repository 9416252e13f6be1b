"""Shared oracles: independent closed forms built on scipy.special, not on the package."""

import math

import numpy as np
import pytest
from scipy import special


def oracle_real_Q(d, k, x):
    """Q_k^(d) from scipy's Gegenbauer / Chebyshev polynomials."""
    x = np.asarray(x, dtype=float)
    if k == 0:
        return np.ones_like(x)
    if d == 2:
        return 2.0 * special.eval_chebyt(k, x)
    lam = (d - 2) / 2
    return (k + lam) / lam * special.eval_gegenbauer(k, lam, x)


def oracle_dim_harm(d, k):
    if k == 0:
        return 1
    return (2 * k + d - 2) * math.factorial(k + d - 3) // (math.factorial(k) * math.factorial(d - 2))


def oracle_dim_H(d, p, q):
    hom = math.comb(p + d - 1, d - 1) * math.comb(q + d - 1, d - 1)
    if p and q:
        hom -= math.comb(p + d - 2, d - 1) * math.comb(q + d - 2, d - 1)
    return hom


def oracle_complex_Q(d, p, q, z):
    """Disk polynomial normalized to dim H(p,q) at 1, via scipy Jacobi polynomials."""
    z = np.asarray(z, dtype=complex)
    if p < q:
        return np.conj(oracle_complex_Q(d, q, p, z))
    a, b = d - 2, p - q
    r2 = np.abs(z) ** 2
    val = z ** (p - q) * special.eval_jacobi(q, a, b, 2 * r2 - 1) / special.eval_jacobi(q, a, b, 1.0)
    return oracle_dim_H(d, p, q) * val


def oracle_moment_real(d, m):
    """E <x, y>^m over the sphere: the m-th moment of one coordinate."""
    if m % 2:
        return 0.0
    return math.exp(math.lgamma(d / 2) + math.lgamma((m + 1) / 2)
                    - 0.5 * math.log(math.pi) - math.lgamma((d + m) / 2))


def oracle_moment_complex(d, p):
    """E |<z, w>|^2p: |z_1|^2 is Beta(1, d-1) distributed."""
    if d == 1:
        return 1.0
    return special.beta(p + 1, d - 1) / special.beta(1, d - 1)


def random_unit(rng, n, d, complex_field=False):
    V = rng.standard_normal((n, d))
    if complex_field:
        V = V + 1j * rng.standard_normal((n, d))
    return V / np.linalg.norm(V, axis=1)[:, None]


def random_disc(rng, n):
    return np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
