"""Real Gegenbauer and complex disk polynomials.

Normalization throughout is reproducing-kernel style: ``Q_k^(d)(1)`` is the
dimension of the harmonic space it reproduces, and likewise ``Q_pq^(d)(1)``.
Polynomials come in two views.  :class:`MonomialPoly` holds coefficients on
``x**j`` (real) or ``z**a * conj(z)**b`` (complex); :class:`GegExpansion`
holds coefficients on the ``Q`` basis and is the source of truth for
potentials.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.linalg import eigh_tridiagonal

from .core_model import Field
from .errors import (
    DegreeOverflow,
    DimensionTooSmall,
    QuadratureDegreeExceeded,
)

MAX_DEGREE = 40
INT64_MAX = 2 ** 63 - 1
PRUNE_RTOL = 1e-10


def _check_int64(value):
    if abs(value) > INT64_MAX:
        raise DegreeOverflow(f"integer {value} exceeds the signed 64-bit range")
    return int(value)


def _binom(n, r):
    if r < 0 or n < 0 or r > n:
        return 0
    return math.comb(n, r)


def _poch(x, n):
    """Rising factorial ``(x)_n`` for a Fraction or int ``x``."""
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def _falling(x, n):
    out = Fraction(1)
    for i in range(n):
        out *= x - i
    return out


# -- monomial view ---------------------------------------------------------

class MonomialPoly:
    """Polynomial in ``x`` (real) or in ``z, conj(z)`` (complex).

    Real: ``coeffs[j]`` multiplies ``x**j``.  Complex: ``coeffs[a, b]``
    multiplies ``z**a * conj(z)**b``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        field = Field.parse(field)
        c = np.array(coeffs, copy=True)
        if not np.iscomplexobj(c):
            c = c.astype(float)
        if field is Field.REAL:
            c = np.atleast_1d(c)
            if c.ndim != 1:
                raise ValueError("real monomial coefficients must be 1-D")
        else:
            if c.ndim == 0:
                c = c.reshape(1, 1)
            if c.ndim != 2:
                raise ValueError("complex monomial coefficients must be 2-D")
        if c.size == 0:
            c = np.zeros((1,) * c.ndim, dtype=c.dtype)
        c.setflags(write=False)
        self.field = field
        self.coeffs = c

    # construction helpers
    @classmethod
    def constant(cls, field, value):
        field = Field.parse(field)
        if field is Field.REAL:
            return cls(field, [value])
        return cls(field, [[value]])

    @classmethod
    def z(cls):
        return cls(Field.COMPLEX, [[0.0], [1.0]])

    @classmethod
    def zbar(cls):
        return cls(Field.COMPLEX, [[0.0, 1.0]])

    @classmethod
    def x(cls):
        return cls(Field.REAL, [0.0, 1.0])

    @property
    def is_real_field(self):
        return self.field is Field.REAL

    @property
    def degree(self):
        """Total degree (``-1`` for the zero polynomial)."""
        nz = np.argwhere(self.coeffs != 0)
        if nz.size == 0:
            return -1
        return int(nz.sum(axis=1).max()) if self.coeffs.ndim == 2 else int(nz.max())

    def trimmed(self):
        c = self.coeffs
        if c.ndim == 1:
            nz = np.nonzero(c)[0]
            return MonomialPoly(self.field, c[: nz[-1] + 1] if nz.size else c[:1])
        nz = np.argwhere(c != 0)
        if nz.size == 0:
            return MonomialPoly(self.field, c[:1, :1])
        a, b = nz.max(axis=0)
        return MonomialPoly(self.field, c[: a + 1, : b + 1])

    def __call__(self, x):
        x = np.asarray(x)
        if self.coeffs.ndim == 1:
            return npoly.polyval(x, self.coeffs)
        return npoly.polyval2d(x, np.conj(x), self.coeffs)

    def at_one(self):
        return self.coeffs.sum()

    def _aligned(self, other):
        if other.field is not self.field:
            raise ValueError("cannot combine real and complex polynomials")
        a, b = self.coeffs, other.coeffs
        shape = tuple(max(s, t) for s, t in zip(a.shape, b.shape))
        dtype = np.result_type(a, b)
        A = np.zeros(shape, dtype=dtype)
        B = np.zeros(shape, dtype=dtype)
        A[tuple(slice(0, s) for s in a.shape)] = a
        B[tuple(slice(0, s) for s in b.shape)] = b
        return A, B

    def __add__(self, other):
        if np.isscalar(other):
            other = MonomialPoly.constant(self.field, other)
        A, B = self._aligned(other)
        return MonomialPoly(self.field, A + B)

    __radd__ = __add__

    def __neg__(self):
        return MonomialPoly(self.field, -self.coeffs)

    def __sub__(self, other):
        if np.isscalar(other):
            other = MonomialPoly.constant(self.field, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            return MonomialPoly(self.field, self.coeffs * other)
        if other.field is not self.field:
            raise ValueError("cannot combine real and complex polynomials")
        if self.coeffs.ndim == 1:
            return MonomialPoly(self.field, npoly.polymul(self.coeffs, other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1),
                       dtype=np.result_type(a, b))
        for i, j in zip(*np.nonzero(a)):
            out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
        return MonomialPoly(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return MonomialPoly(self.field, self.coeffs / scalar)

    def __pow__(self, n):
        out = MonomialPoly.constant(self.field, 1.0)
        for _ in range(int(n)):
            out = out * self
        return out

    def conj(self):
        """The polynomial ``z -> conj(P(z))``."""
        if self.coeffs.ndim == 1:
            return MonomialPoly(self.field, np.conj(self.coeffs))
        return MonomialPoly(self.field, np.conj(self.coeffs).T)

    def d_dz(self):
        """Wirtinger derivative in ``z`` (ordinary derivative for real)."""
        c = self.coeffs
        if c.ndim == 1:
            return MonomialPoly(self.field, npoly.polyder(c) if c.size > 1 else [0.0])
        if c.shape[0] == 1:
            return MonomialPoly(self.field, np.zeros_like(c))
        return MonomialPoly(self.field, c[1:, :] * np.arange(1, c.shape[0])[:, None])

    def d_dzbar(self):
        c = self.coeffs
        if c.ndim == 1:
            raise ValueError("d/dzbar is only defined for complex polynomials")
        if c.shape[1] == 1:
            return MonomialPoly(self.field, np.zeros_like(c))
        return MonomialPoly(self.field, c[:, 1:] * np.arange(1, c.shape[1])[None, :])

    def allclose(self, other, rtol=1e-10, atol=1e-12):
        A, B = self._aligned(other)
        return bool(np.allclose(A, B, rtol=rtol, atol=atol))

    def to_dict(self):
        c = self.coeffs
        def enc(v):
            v = complex(v)
            return v.real if v.imag == 0 else [v.real, v.imag]
        if c.ndim == 1:
            return {"field": "real", "monomial": [enc(v) for v in c]}
        return {"field": "complex",
                "monomial": [[int(a), int(b), enc(c[a, b])] for a, b in zip(*np.nonzero(c))]}

    def __repr__(self):
        return f"MonomialPoly({self.field.value}, {self.coeffs.tolist()!r})"


# -- basis polynomials -----------------------------------------------------

@lru_cache(maxsize=None)
def _real_Q_coeffs(d, k):
    coeffs = [np.array([1.0]), np.array([0.0, float(d)])]
    lam = [0.0] + [j / (2 * j + d - 2) for j in range(1, k + 2)]
    for j in range(1, k):
        xq = np.concatenate([[0.0], coeffs[j]])
        prev = np.zeros_like(xq)
        prev[: coeffs[j - 1].size] = coeffs[j - 1]
        coeffs.append((xq - (1.0 - lam[j - 1]) * prev) / lam[j + 1])
    out = coeffs[k].copy()
    out.setflags(write=False)
    return out


def real_Q(d, k):
    """``Q_k^(d)`` as a monomial polynomial, built by the three-term recurrence."""
    d, k = int(d), int(k)
    if d < 2:
        raise DimensionTooSmall(f"real Gegenbauer polynomials need d >= 2, got {d}")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k > MAX_DEGREE:
        raise QuadratureDegreeExceeded(f"degree {k} exceeds the cap {MAX_DEGREE}")
    return MonomialPoly(Field.REAL, _real_Q_coeffs(d, k))


def real_Q_explicit(d, k):
    """Alternating explicit sum for ``Q_k^(d)``, in exact arithmetic."""
    if k == 0:
        return [Fraction(1)]
    out = [Fraction(0)] * (k + 1)
    for j in range(k // 2 + 1):
        prod = 1
        for i in range(k - j - 1):
            prod *= d + 2 * i
        out[k - 2 * j] = Fraction((-1) ** j * (2 * k + d - 2) * prod,
                                  2 ** j * math.factorial(j) * math.factorial(k - 2 * j))
    return out


@lru_cache(maxsize=None)
def _complex_Q_fractions(d, p, q):
    table = {}
    if d == 1:
        if q == 0:
            table[(p, 0)] = Fraction(1)
        elif p == 0:
            table[(0, q)] = Fraction(1)
        return table
    lead = Fraction(p + q + d - 1, math.factorial(d - 1))
    for j in range(min(p, q) + 1):
        num = math.factorial(d + p + q - j - 2)
        den = math.factorial(j) * math.factorial(p - j) * math.factorial(q - j)
        table[(p - j, q - j)] = (-1) ** j * lead * Fraction(num, den)
    return table


@lru_cache(maxsize=None)
def _complex_Q_coeffs(d, p, q):
    c = np.zeros((p + 1, q + 1))
    for (a, b), v in _complex_Q_fractions(d, p, q).items():
        c[a, b] = float(v)
    c.setflags(write=False)
    return c


def complex_Q(d, p, q):
    """Disk polynomial ``Q_pq^(d)`` in the variables ``z, conj(z)``."""
    d, p, q = int(d), int(p), int(q)
    if d < 1:
        raise DimensionTooSmall("complex disk polynomials need d >= 1")
    if p < 0 or q < 0:
        raise ValueError("indices must be nonnegative")
    if p + q > MAX_DEGREE:
        raise QuadratureDegreeExceeded(f"degree {p + q} exceeds the cap {MAX_DEGREE}")
    return MonomialPoly(Field.COMPLEX, _complex_Q_coeffs(d, p, q))


def complex_Q_exact(d, p, q):
    """Exact ``{(a, b): Fraction}`` coefficient table of ``Q_pq^(d)``."""
    return dict(_complex_Q_fractions(int(d), int(p), int(q)))


def dim_harm(d, k):
    """``dim Harm_k(R^d)`` as an exact integer."""
    d, k = int(d), int(k)
    if d < 2:
        raise DimensionTooSmall("dim_harm needs d >= 2")
    if k < 0:
        return 0
    return _check_int64(_binom(k + d - 1, d - 1) - _binom(k + d - 3, d - 1))


def dim_H(d, p, q):
    """``dim H(p, q)`` on ``C^d`` as an exact integer."""
    d, p, q = int(d), int(p), int(q)
    if d < 1:
        raise DimensionTooSmall("dim_H needs d >= 1")
    if p < 0 or q < 0:
        return 0
    if d == 1:
        return 1 if (p == 0 or q == 0) else 0
    num = (p + q + d - 1) * _binom(p + d - 2, p) * _binom(q + d - 2, q)
    val, rem = divmod(num, d - 1)
    assert rem == 0
    return _check_int64(val)


# -- quadrature ------------------------------------------------------------

@lru_cache(maxsize=256)
def _gauss_jacobi_cached(n, a, b):
    k = np.arange(n, dtype=float)
    s = 2 * k + a + b
    alpha = np.empty(n)
    alpha[0] = (b - a) / (a + b + 2)
    if n > 1:
        alpha[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2))
    beta = np.empty(max(n - 1, 0))
    if n > 1:
        beta[0] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        m = k[2:]
        sm = 2 * m + a + b
        beta[1:] = 4 * m * (m + a) * (m + b) * (m + a + b) / (sm ** 2 * (sm + 1) * (sm - 1))
    if n == 1:
        nodes, vecs = alpha.copy(), np.ones((1, 1))
    else:
        nodes, vecs = eigh_tridiagonal(alpha, np.sqrt(beta))
    weights = vecs[0, :] ** 2
    weights = weights / weights.sum()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_jacobi(n, a, b):
    """Gauss-Jacobi rule for ``(1-x)^a (1+x)^b`` on [-1, 1], weights summing to 1.

    Golub-Welsch on the monic Jacobi recurrence.
    """
    if n < 1:
        raise ValueError("need at least one node")
    if a <= -1 or b <= -1:
        raise ValueError("Jacobi parameters must exceed -1")
    return _gauss_jacobi_cached(int(n), float(a), float(b))


def _node_count(degree):
    return degree // 2 + 8


def _check_degree(*polys):
    for p in polys:
        if p.degree > MAX_DEGREE:
            raise QuadratureDegreeExceeded(
                f"polynomial degree {p.degree} exceeds the quadrature cap {MAX_DEGREE}")


def geg_inner_real(f, g, d):
    """Normalized ``int f g (1-x^2)^((d-3)/2)`` over [-1, 1]."""
    if d < 2:
        raise DimensionTooSmall("the Gegenbauer weight needs d >= 2")
    _check_degree(f, g)
    deg = max(f.degree, 0) + max(g.degree, 0)
    a = (d - 3) / 2
    x, w = gauss_jacobi(_node_count(deg), a, a)
    val = np.sum(w * f(x) * np.conj(g(x)))
    return val.real if np.isrealobj(f.coeffs) and np.isrealobj(g.coeffs) else val


@lru_cache(maxsize=256)
def _disk_rule(d, deg, maxdeg):
    u, wu = gauss_jacobi(_node_count(deg), d - 2, 0)
    r = np.sqrt((1 + u) / 2)
    N = 2 * maxdeg + 4
    theta = 2 * np.pi * np.arange(N) / N
    z = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    w = np.repeat(wu / N, N)
    z.setflags(write=False)
    w.setflags(write=False)
    return z, w


def disk_rule(d, deg, maxdeg=None):
    """Tensor rule on the unit disc for ``(d-1)/pi (1-|z|^2)^(d-2) dA``."""
    if d < 2:
        raise DimensionTooSmall("disk quadrature needs d >= 2; use the circle form for d = 1")
    if maxdeg is None:
        maxdeg = deg
    return _disk_rule(int(d), int(deg), int(maxdeg))


def geg_inner_complex(f, g, d):
    """``(d-1)/pi int_D f conj(g) (1-|z|^2)^(d-2) dA``."""
    if d < 2:
        raise DimensionTooSmall("disk inner product needs d >= 2; use geg_inner_circle")
    _check_degree(f, g)
    df, dg = max(f.degree, 0), max(g.degree, 0)
    z, w = disk_rule(d, df + dg, max(df, dg))
    return complex(np.sum(w * f(z) * np.conj(g(z))))


def geg_inner_circle(f, g):
    """Average of ``f conj(g)`` over the unit circle (the d = 1 case)."""
    _check_degree(f, g)
    N = 2 * max(f.degree, g.degree, 0) + 4
    z = np.exp(2j * np.pi * np.arange(N) / N)
    return complex(np.mean(f(z) * np.conj(g(z))))


# -- expansion view --------------------------------------------------------

def _clean(value):
    value = complex(value)
    return value.real if value.imag == 0 else value


class GegExpansion:
    """Finite combination of ``Q_k`` (real) or ``Q_pq`` (complex)."""

    __slots__ = ("field", "d", "coeffs", "_mono")

    def __init__(self, field, d, coeffs):
        self.field = Field.parse(field)
        self.d = int(d)
        clean = {}
        for key, val in dict(coeffs).items():
            if self.field is Field.REAL:
                key = int(key)
            else:
                key = (int(key[0]), int(key[1]))
            if val != 0:
                clean[key] = _clean(val)
        self.coeffs = dict(sorted(clean.items(), key=lambda kv: _sort_key(kv[0])))
        self._mono = None

    def support(self):
        return list(self.coeffs)

    def is_potential(self, tol=0.0):
        return all(np.imag(v) == 0 and np.real(v) >= -tol for v in self.coeffs.values())

    @property
    def has_real_coefficients(self):
        return all(np.imag(v) == 0 for v in self.coeffs.values())

    def dim(self, key):
        if self.field is Field.REAL:
            return dim_harm(self.d, key)
        return dim_H(self.d, *key)

    def value_at_one(self):
        return _clean(sum(v * self.dim(k) for k, v in self.coeffs.items()))

    @property
    def constant_term(self):
        return self.coeffs.get(0 if self.field is Field.REAL else (0, 0), 0.0)

    def basis(self, key):
        if self.field is Field.REAL:
            return real_Q(self.d, key)
        return complex_Q(self.d, *key)

    def to_monomial(self):
        if self._mono is None:
            out = MonomialPoly.constant(self.field, 0.0)
            for key, v in self.coeffs.items():
                out = out + self.basis(key) * v
            self._mono = out.trimmed()
        return self._mono

    def __call__(self, x):
        return self.to_monomial()(x)

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return GegExpansion(self.field, self.d, out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            raise TypeError("use rogers_product/complex_product for products of expansions")
        return GegExpansion(self.field, self.d, {k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def _compatible(self, other):
        if (self.field, self.d) != (other.field, other.d):
            raise ValueError("expansions live in different spaces")

    def allclose(self, other, atol=1e-9):
        keys = set(self.coeffs) | set(other.coeffs)
        return all(abs(self.coeffs.get(k, 0) - other.coeffs.get(k, 0)) <= atol for k in keys)

    def to_dict(self):
        def enc(v):
            v = complex(v)
            return v.real if v.imag == 0 else [v.real, v.imag]
        if self.field is Field.REAL:
            items = [[k, enc(v)] for k, v in self.coeffs.items()]
        else:
            items = [[k[0], k[1], enc(v)] for k, v in self.coeffs.items()]
        return {"field": self.field.value, "d": self.d, "geg": items}

    def __repr__(self):
        return f"GegExpansion({self.field.value}, d={self.d}, {self.coeffs!r})"


def _sort_key(key):
    if isinstance(key, tuple):
        return (key[0] + key[1], key[0])
    return (key,)


def single(field, d, key, value=1.0):
    return GegExpansion(field, d, {key: value})


def _prune(coeffs, dims):
    scale = max((abs(v) * dims[k] for k, v in coeffs.items()), default=0.0)
    return {k: v for k, v in coeffs.items() if abs(v) * dims[k] > PRUNE_RTOL * scale}


def to_geg_basis(f, d):
    """Project a monomial polynomial onto the ``Q`` basis by quadrature."""
    _check_degree(f)
    deg = max(f.degree, 0)
    coeffs, dims = {}, {}
    if f.field is Field.REAL:
        for k in range(deg + 1):
            Qk = real_Q(d, k)
            dims[k] = dim_harm(d, k)
            coeffs[k] = geg_inner_real(f, Qk, d) / dims[k]
    else:
        for tot in range(deg + 1):
            for p in range(tot, -1, -1):
                q = tot - p
                dims[(p, q)] = dim_H(d, p, q)
                if dims[(p, q)] == 0:
                    continue
                Qpq = complex_Q(d, p, q)
                ip = geg_inner_circle(f, Qpq) if d == 1 else geg_inner_complex(f, Qpq, d)
                coeffs[(p, q)] = _clean(ip / dims[(p, q)])
        dims = {k: v for k, v in dims.items() if v}
        # Round-off noise in the imaginary parts is dropped relative to the magnitude.
        big = max((abs(v) for v in coeffs.values()), default=0.0)
        coeffs = {k: (v.real if abs(np.imag(v)) <= 1e-13 * max(big, 1.0) else v)
                  for k, v in coeffs.items()}
    return GegExpansion(f.field, d, _prune(coeffs, dims))


def from_geg_basis(e):
    return e.to_monomial()


# -- products and identities ----------------------------------------------

def rogers_coefficients(d, k, l):
    """Exact linearization coefficients of ``Q_k Q_l`` for ``d >= 3``."""
    if d < 3:
        raise DimensionTooSmall("the closed form needs d >= 3")
    nu = Fraction(d - 2, 2)
    out = {}
    for j in range(min(k, l) + 1):
        num = ((k + nu) * (l + nu) * math.factorial(k + l - 2 * j)
               * _poch(nu, j) * _poch(nu, k - j) * _poch(nu, l - j) * _poch(2 * nu, k + l - j))
        den = (nu * (k + l + nu - j) * math.factorial(j) * math.factorial(k - j)
               * math.factorial(l - j) * _poch(nu, k + l - j) * _poch(2 * nu, k + l - 2 * j))
        out[k + l - 2 * j] = num / den
    return out


def product_by_projection(f, g, d, indices=None):
    """Expansion of the product of two monomial polynomials by quadrature."""
    prod = f * g
    if indices is None:
        return to_geg_basis(prod, d)
    coeffs = {}
    if prod.field is Field.REAL:
        for k in indices:
            coeffs[k] = geg_inner_real(prod, real_Q(d, k), d) / dim_harm(d, k)
    else:
        for (p, q) in indices:
            Q = complex_Q(d, p, q)
            coeffs[(p, q)] = geg_inner_complex(prod, Q, d) / dim_H(d, p, q)
    return coeffs


def rogers_product(d, k, l):
    """``Q_k Q_l`` in the ``Q`` basis (closed form, or quadrature for d = 2)."""
    if d >= 3:
        coeffs = {m: float(c) for m, c in rogers_coefficients(d, k, l).items()}
    else:
        idx = [k + l - 2 * j for j in range(min(k, l) + 1)]
        coeffs = product_by_projection(real_Q(d, k), real_Q(d, l), d, idx)
    return GegExpansion(Field.REAL, d, coeffs)


COMPLEX_CLIP = 1e-10


def complex_product(d, pq, rs):
    """``Q_pq Q_rs`` in the ``Q`` basis, by quadrature projection.

    Coefficients above ``-1e-10`` that come out negative are clipped to 0.
    """
    from .index_algebra import complex_product as index_product
    if d < 2:
        raise DimensionTooSmall("complex_product needs d >= 2")
    p, q = pq
    r, s = rs
    idx = index_product((p, q), (r, s), d2_same_index=(d == 2))
    raw = product_by_projection(complex_Q(d, p, q), complex_Q(d, r, s), d, idx.members)
    coeffs = {}
    for key, v in raw.items():
        v = complex(v).real
        if -COMPLEX_CLIP <= v < 0 or abs(v) <= COMPLEX_CLIP:
            v = 0.0
        coeffs[key] = v
    return GegExpansion(Field.COMPLEX, d, coeffs)


def telescoping_exact(d, p, q):
    return [Fraction(math.factorial(d - 1) * math.factorial(p) * math.factorial(q),
                     math.factorial(j) * math.factorial(p + q + d - 1 - j))
            for j in range(min(p, q) + 1)]


def telescoping(d, p, q):
    """Coefficients ``c_j`` with ``sum_j c_j Q_{p-j,q-j} = z^p conj(z)^q``."""
    if d < 2:
        raise DimensionTooSmall("telescoping needs d >= 2")
    return [float(c) for c in telescoping_exact(d, p, q)]


def sum_identity(d, p, q, check=True):
    """``sum_j Q_{p-j,q-j}^(d)``, checked against ``d/(p+q+d) Q_pq^(d+1)``."""
    if d < 2:
        raise DimensionTooSmall("sum_identity needs d >= 2")
    e = GegExpansion(Field.COMPLEX, d, {(p - j, q - j): 1.0 for j in range(min(p, q) + 1)})
    if check:
        rng = np.random.default_rng(0)
        z = np.sqrt(rng.uniform(0, 1, 8)) * np.exp(2j * np.pi * rng.uniform(0, 1, 8))
        lhs = e(z)
        rhs = d / (p + q + d) * complex_Q(d + 1, p, q)(z)
        scale = max(1.0, float(np.max(np.abs(rhs))))
        if np.max(np.abs(lhs - rhs)) > 1e-9 * scale:
            raise ArithmeticError("sum identity failed; coefficient tables are inconsistent")
    return e


def hoggar_Q(m_param, d, eps, k):
    """Hoggar's polynomial ``Q_k^eps`` in a real variable (``m`` is 1/2 or 1)."""
    m = Fraction(m_param).limit_denominator(2)
    if m not in (Fraction(1, 2), Fraction(1)):
        raise ValueError("m must be 1/2 (real) or 1 (complex)")
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    md = m * d
    lead = _poch(md, 2 * k + eps) / (_poch(m, k + eps) * math.factorial(k))
    c = [Fraction(0)] * (k + 1)
    for i in range(k + 1):
        c[k - i] = (lead * (-1) ** i * math.comb(k, i)
                    * _falling(k + m + eps - 1, i) / _falling(2 * k + md + eps - 2, i))
    return MonomialPoly(Field.REAL, [float(v) for v in c])


def jacobi_shifted_exact(n, a, b):
    """Coefficients of ``P_n^(a,b)(2x - 1)`` in powers of ``x`` (integer a, b)."""
    def gbinom(top, r):
        if r < 0:
            return Fraction(0)
        out = Fraction(1)
        for i in range(r):
            out *= Fraction(top - i, i + 1)
        return out
    coeffs = [Fraction(0)] * (n + 1)
    for s in range(n + 1):
        w = gbinom(n + a, n - s) * gbinom(n + b, s)
        # (x - 1)^s x^(n - s)
        for i in range(s + 1):
            coeffs[n - s + i] += w * math.comb(s, i) * (-1) ** (s - i)
    return coeffs


def jacobi_shifted(n, a, b):
    return MonomialPoly(Field.REAL, [float(c) for c in jacobi_shifted_exact(n, a, b)])
