"""Upper, lower, absolute, Fisher-type and special bounds on design sizes.

Dimension counts are exact Python integers (checked against int64); ratio
bounds ``F(1)/f_0`` are floats.  Every report carries the polynomial whose
roots the angles of a tight configuration must be, together with those roots.
"""

import math
from fractions import Fraction
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .core_model import Field, angle_set, gramian, require_unit_norm
from .errors import (
    AngleAtOne,
    EmptyIndexSet,
    InvalidPotential,
    OutOfValidityDomain,
    PreconditionFailed,
    ZeroAtOne,
)
from .gegenbauer import (
    GegExpansion,
    MonomialPoly,
    _check_int64,
    complex_Q,
    dim_H,
    dim_harm,
    jacobi_shifted,
    real_Q,
    to_geg_basis,
)
from .index_algebra import (
    ComplexIndexSet,
    RealIndexSet,
    complex_set_product,
    real_set_product,
    reverse,
)
from .potentials import Potential

KINDS = ("upper_Acode", "lower_LP", "absolute_lower", "fisher_upper", "s_angular",
         "special", "real_part")

REAL_GRID = 2001
DISC_GRID = (201, 256)
ROOT_TOL = 1e-10
COEFF_ZERO = 1e-12
EQUALITY_TOL = 1e-9


@dataclass
class BoundReport:
    kind: str
    value: Optional[object]
    valid: bool = True
    violation: Optional[str] = None
    direction: str = "upper"
    tightness_poly: Optional[MonomialPoly] = None
    tight_roots: Optional[list] = None
    # "x": real variable, "z": complex angle, "abs2": value of |z|^2
    root_kind: str = "x"
    details: dict = dc_field(default_factory=dict)

    def root_residuals(self):
        """``|poly(root)|`` for every reported tight root."""
        if self.tightness_poly is None or not self.tight_roots:
            return []
        pts = np.asarray(self.tight_roots, dtype=complex if self.root_kind == "z" else float)
        if self.root_kind == "abs2":
            pts = np.sqrt(np.maximum(pts, 0.0))
        return [float(abs(v)) for v in np.atleast_1d(self.tightness_poly(pts))]

    def as_dict(self):
        def enc(v):
            if isinstance(v, (complex, np.complexfloating)):
                return [float(v.real), float(v.imag)]
            return float(v)
        val = self.value
        if isinstance(val, (float, np.floating)):
            val = float(val)
        out = {
            "kind": self.kind,
            "direction": self.direction,
            "value": val,
            "valid": self.valid,
            "violation": self.violation,
            "tight_roots": None if self.tight_roots is None else [enc(r) for r in self.tight_roots],
            "root_kind": self.root_kind,
        }
        if self.tightness_poly is not None:
            out["tightness_poly"] = self.tightness_poly.to_dict()
        if self.details:
            out["details"] = self.details
        return out


@dataclass(frozen=True)
class AnnihilatorSpec:
    """Angles the annihilator must vanish at.

    ``angles`` are inner products ``alpha`` (factor ``(z - alpha)/(1 - alpha)``),
    ``real_parts`` give ``(Re z - a)/(1 - a)`` and ``projective`` values
    ``a = |z|^2`` give ``z^eps prod (|z|^2 - a)/(1 - a)`` with ``eps = 1`` iff
    ``0`` is listed.  The factors are multiplied together.
    """

    d: int
    angles: tuple = ()
    real_parts: tuple = ()
    projective: tuple = ()
    field: Field = Field.COMPLEX

    @property
    def eps(self):
        return int(any(a == 0 for a in self.projective))


# -- root finding ----------------------------------------------------------

def _newton(c, r, iters=60):
    dc = npoly.polyder(c)
    d2 = npoly.polyder(dc) if dc.size > 1 else np.zeros(1)
    scale = max(np.max(np.abs(c)), 1.0)
    for _ in range(iters):
        f = npoly.polyval(r, c)
        fp = npoly.polyval(r, dc)
        if abs(fp) < 1e-7 * scale:
            # multiple root: polish on the derivative instead
            fpp = npoly.polyval(r, d2)
            if fpp == 0:
                break
            step = fp / fpp
        else:
            step = f / fp
        r = r - step
        if abs(step) <= 1e-16 * max(1.0, abs(r)):
            break
    return r


def _dedupe(vals, tol=1e-8):
    out = []
    for v in sorted(vals, key=lambda z: (np.real(z), np.imag(z))):
        if not out or abs(v - out[-1]) > tol:
            out.append(v)
    return out


def real_roots(coeffs, lo=-1.0, hi=1.0):
    """Real roots in ``[lo, hi]`` of ``sum c_j x^j``: companion matrix, then Newton polish."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if c.size <= 1:
        return []
    cand = npoly.polyroots(c)
    scale = max(1.0, np.max(np.abs(cand)))
    out = []
    for r in cand:
        if abs(r.imag) > 1e-6 * scale:
            continue
        x = _newton(c, float(r.real))
        if lo - 1e-9 <= x <= hi + 1e-9:
            out.append(min(max(x, lo), hi))
    return [float(v) for v in _dedupe(out)]


def complex_roots(coeffs, radius=1.0):
    """Roots with ``|z| <= radius`` of a holomorphic polynomial ``sum c_j z^j``."""
    c = np.asarray(coeffs, dtype=complex)
    nz = np.nonzero(c)[0]
    if nz.size == 0 or nz[-1] == 0:
        return []
    c = c[: nz[-1] + 1]
    out = []
    for r in npoly.polyroots(c):
        z = _newton(c, complex(r))
        if abs(z) <= radius + 1e-9:
            out.append(complex(z))
    return _dedupe(out)


def _structure(poly, tol=COEFF_ZERO):
    """Classify a complex monomial polynomial for root solving.

    Returns ``('z', coeffs)`` when holomorphic, ``('abs2', eps, coeffs)`` when
    of the form ``z^eps R(|z|^2)`` or its conjugate, else ``None``.
    """
    C = poly.coeffs
    big = max(np.max(np.abs(C)), 1.0)
    mask = np.abs(C) > tol * big
    idx = np.argwhere(mask)
    if idx.size == 0:
        return None
    diffs = set((idx[:, 0] - idx[:, 1]).tolist())
    if len(diffs) != 1 and np.all(idx[:, 1] == 0):
        return ("z", C[:, 0])
    if len(diffs) == 1:
        eps = diffs.pop()
        a0 = max(eps, 0)
        b0 = max(-eps, 0)
        n = min(C.shape[0] - a0, C.shape[1] - b0)
        r = np.array([C[a0 + j, b0 + j] for j in range(n)])
        return ("abs2", abs(eps), r)
    return None


def solve_tight_roots(poly):
    """Roots of a tightness polynomial plus their kind (``x``, ``z`` or ``abs2``)."""
    if poly.field is Field.REAL:
        return real_roots(poly.coeffs), "x"
    s = _structure(poly)
    if s is None:
        return None, "z"
    if s[0] == "z":
        return complex_roots(s[1]), "z"
    _, eps, r = s
    xs = real_roots(np.real(r), 0.0, 1.0)
    if eps > 0 and all(abs(x) > 1e-12 for x in xs):
        xs = [0.0] + xs
    return xs, "abs2"


# -- helpers ---------------------------------------------------------------

def _as_expansion(F):
    if isinstance(F, Potential):
        e = F.expansion
        if F.b0:
            zero = 0 if e.field is Field.REAL else (0, 0)
            e = e + GegExpansion(e.field, e.d, {zero: F.b0})
        return e
    if isinstance(F, MonomialPoly):
        raise TypeError("expand monomial polynomials with to_geg_basis(F, d) first")
    return F


def _zero_key(field):
    return 0 if field is Field.REAL else (0, 0)


def _sum_Q(field, d, keys):
    out = MonomialPoly.constant(field, 0.0)
    for k in keys:
        out = out + (real_Q(d, k) if field is Field.REAL else complex_Q(d, *k))
    return out.trimmed()


def binom(n, k):
    return _check_int64(math.comb(n, k)) if 0 <= k <= n else 0


# -- code and LP bounds ----------------------------------------------------

def upper_bound_acode(F, A, tol=1e-12):
    """``n <= F(1)/f_0`` for codes whose angles lie in ``A``.

    ``F`` needs nonnegative coefficients, ``f_0 > 0`` and ``Re F(alpha) <= 0``
    on ``A`` (a finite list of angles or sample points of the angle set).
    """
    e = _as_expansion(F)
    for k, v in e.coeffs.items():
        if np.imag(v) != 0 or np.real(v) < -tol:
            raise InvalidPotential(f"coefficient of {k} is {v}, not a potential")
    f0 = float(np.real(e.constant_term))
    if f0 <= 0:
        raise InvalidPotential("the constant coefficient must be positive")
    mono = e.to_monomial()
    scale = max(1.0, abs(e.value_at_one()))
    for a in A:
        val = float(np.real(mono(np.asarray(a))))
        if val > tol * scale:
            raise PreconditionFailed(f"Re F({a}) = {val:.3e} > 0", witness=a)
    value = float(np.real(e.value_at_one())) / f0
    roots, kind = solve_tight_roots(mono)
    L = [k for k, v in e.coeffs.items() if np.real(v) > 0 and k != _zero_key(e.field)]
    return BoundReport("upper_Acode", value, direction="upper", tightness_poly=mono,
                       tight_roots=roots, root_kind=kind,
                       details={"design_indices": [list(k) if isinstance(k, tuple) else k
                                                   for k in L]})


def _grid_min(mono, field, grid):
    if field is Field.REAL:
        n = grid if grid is not None else REAL_GRID
        x = np.linspace(-1.0, 1.0, n)
        vals = mono(x)
        i = int(np.argmin(vals))
        return float(vals[i]), float(x[i])
    nr, nt = grid if grid is not None else DISC_GRID
    r = np.linspace(0.0, 1.0, nr)
    t = 2 * np.pi * np.arange(nt) / nt
    z = (r[:, None] * np.exp(1j * t)[None, :]).ravel()
    vals = np.real(mono(z))
    i = int(np.argmin(vals))
    return float(vals[i]), complex(z[i])


def lower_bound(F, L_or_tau=None, grid=None, tol=1e-9):
    """``n >= F(1)/f_0`` for designs of the positive part of ``F``.

    ``Re F >= 0`` is checked on a fixed grid (2001 points on [-1, 1], or a
    201 x 256 polar grid on the disc).  ``L_or_tau``, when given, must equal
    the positive support of ``F`` without the constant.
    """
    e = _as_expansion(F)
    if not e.has_real_coefficients:
        raise InvalidPotential("lower bounds need real coefficients")
    zero = _zero_key(e.field)
    f0 = float(e.constant_term)
    if f0 <= 0:
        raise InvalidPotential("the constant coefficient must be positive")
    pos = {k for k, v in e.coeffs.items() if v > 0 and k != zero}
    neg = [k for k, v in e.coeffs.items() if v < 0]
    if L_or_tau is not None:
        want = {k for k in L_or_tau if k != zero}
        if want != pos:
            raise PreconditionFailed(
                f"positive support {sorted(pos)} differs from the index set {sorted(want)}",
                witness=sorted(pos ^ want))
    mono = e.to_monomial()
    scale = max(1.0, abs(e.value_at_one()))
    low, where = _grid_min(mono, e.field, grid)
    if low < -tol * scale:
        raise PreconditionFailed(f"F takes the value {low:.3e} < 0 at {where}", witness=where)
    value = float(e.value_at_one()) / f0
    roots, kind = solve_tight_roots(mono)
    return BoundReport("lower_LP", value, direction="lower", tightness_poly=mono,
                       tight_roots=roots, root_kind=kind,
                       details={"negative_indices": [list(k) if isinstance(k, tuple) else k
                                                     for k in neg],
                                "grid_min": low})


def harmonic_index_lower(d, t):
    """Lower bound for harmonic index ``{t}`` designs from ``F = Q_t + b``.

    ``b = -min Q_t`` on [-1, 1], located by dense sampling then Newton on ``Q_t'``.
    """
    Q = real_Q(d, t)
    x = np.linspace(-1.0, 1.0, REAL_GRID)
    i = int(np.argmin(Q(x)))
    x0 = float(x[i])
    dq = npoly.polyder(Q.coeffs)
    if 0 < i < REAL_GRID - 1:
        x0 = _newton(dq, x0)
    b = -float(Q(x0))
    if b <= 0:
        raise PreconditionFailed("Q_t is nonnegative; no bound", witness=x0)
    F = GegExpansion(Field.REAL, d, {t: 1.0, 0: b})
    rep = lower_bound(F, [t])
    rep.details["argmin"] = float(x0)
    rep.details["b"] = b
    return rep


# -- absolute bounds -------------------------------------------------------

def absolute_lower_real(E, d, variant="square"):
    """Lower bound from ``(sum_E Q_k)^2`` or ``(Q_1/d + 1)(sum_E Q_k)^2``."""
    E = RealIndexSet(E)
    if len(E) == 0:
        raise EmptyIndexSet("E must be nonempty")
    total = sum(dim_harm(d, k) for k in E)
    S = _sum_Q(Field.REAL, d, E)
    if variant == "square":
        L = real_set_product(E, E)
        value = total
        F = S * S
        tight = S
    elif variant == "odd_even":
        if len({k % 2 for k in E}) != 1:
            raise PreconditionFailed("odd_even needs indices of one parity", witness=list(E))
        L = real_set_product([0, 1], real_set_product(E, E))
        value = 2 * total
        lin = MonomialPoly(Field.REAL, [1.0, 1.0])
        F = lin * S * S
        tight = lin * S
    else:
        raise ValueError(f"unknown variant {variant!r}")
    # independent route: f_0 by quadrature projection of F
    if F.degree <= 40:
        ratio = float(F.at_one()) / to_geg_basis(F, d).constant_term
    else:
        ratio = None
    roots, kind = solve_tight_roots(tight)
    return BoundReport("absolute_lower", _check_int64(value), direction="lower",
                       tightness_poly=tight, tight_roots=roots, root_kind=kind,
                       details={"L": L.to_list(), "quadrature_ratio": ratio,
                                "variant": variant})


def absolute_lower_complex(E, d):
    """``n >= sum_E dim H(p,q)`` for ``E.E^rev``-designs; tight angles are roots of ``Q_E``."""
    E = ComplexIndexSet(E)
    if len(E) == 0:
        raise EmptyIndexSet("E must be nonempty")
    value = _check_int64(sum(dim_H(d, p, q) for p, q in E))
    QE = _sum_Q(Field.COMPLEX, d, E)
    roots, kind = solve_tight_roots(QE)
    L = complex_set_product(E, reverse(E), d)
    return BoundReport("absolute_lower", value, direction="lower", tightness_poly=QE,
                       tight_roots=roots, root_kind=kind,
                       details={"L": L.to_list()})


# -- (t,t) designs ---------------------------------------------------------

def tt_index_set(t):
    """``E_t = {(k + eps - j, k - j)}``, ``t = 2k + eps``."""
    k, eps = divmod(t, 2)
    return ComplexIndexSet((k + eps - j, k - j) for j in range(k + 1))


def tt_lower_closed_form(d, t):
    k, eps = divmod(t, 2)
    if eps == 0:
        return _check_int64(binom(k + d - 1, d - 1) ** 2)
    return _check_int64(binom(k + d - 1, d - 1) * binom(k + d, d - 1))


def tt_lower_bound(d, t):
    return absolute_lower_complex(tt_index_set(t), d)


def tt_table(d_values, t_values):
    rows = []
    for d in d_values:
        for t in t_values:
            rep = tt_lower_bound(d, t)
            rows.append({"d": d, "t": t, "bound": rep.value,
                         "closed_form": tt_lower_closed_form(d, t),
                         "tight_abs2": rep.tight_roots})
    return rows


# -- Fisher-type bounds and annihilators -----------------------------------

def fisher_bound(F, n=None):
    """``n <= sum_{f_pq != 0} dim H(p,q)`` for designs annihilated by ``F``.

    ``F`` is renormalized to ``F(1) = 1``.  With ``n`` given, the equality
    certificate compares ``F`` with ``(1/n) sum_tau Q_pq`` coefficientwise.
    """
    e = _as_expansion(F)
    one = e.value_at_one()
    if abs(one) < COEFF_ZERO:
        raise ZeroAtOne("F(1) = 0 cannot be normalized")
    e = e / one
    big = max((abs(v) for v in e.coeffs.values()), default=0.0)
    tau = [k for k, v in e.coeffs.items() if abs(v) > COEFF_ZERO * max(big, 1.0)]
    value = _check_int64(sum(e.dim(k) for k in tau))
    tight = _sum_Q(e.field, e.d, tau)
    roots, kind = solve_tight_roots(tight)
    zero = _zero_key(e.field)
    details = {"support": [list(k) if isinstance(k, tuple) else k for k in tau],
               "design": zero in tau}
    if n is not None:
        details["n"] = int(n)
        details["equal_form"] = all(
            abs(e.coeffs.get(k, 0.0) - 1.0 / n) <= EQUALITY_TOL for k in tau)
    return BoundReport("fisher_upper", value, direction="upper", tightness_poly=tight,
                       tight_roots=roots, root_kind=kind, details=details)


def _annihilator_monomial(spec):
    field = Field.parse(spec.field)
    one = MonomialPoly.constant(field, 1.0)
    F = one
    var = MonomialPoly.x() if field is Field.REAL else MonomialPoly.z()
    for a in spec.angles:
        if abs(1 - a) < COEFF_ZERO:
            raise AngleAtOne("an angle equals 1")
        F = F * ((var - one * a) / (1 - a))
    if spec.real_parts or spec.projective:
        if field is Field.REAL:
            raise ValueError("real-part and projective factors need the complex field")
    re_z = (MonomialPoly.z() + MonomialPoly.zbar()) * 0.5
    for a in spec.real_parts:
        if abs(1 - a) < COEFF_ZERO:
            raise AngleAtOne("a real part equals 1")
        F = F * ((re_z - one * a) / (1 - a))
    if spec.projective:
        abs2 = MonomialPoly.z() * MonomialPoly.zbar()
        for a in spec.projective:
            if abs(1 - a) < COEFF_ZERO:
                raise AngleAtOne("a projective angle equals 1")
            if a == 0:
                continue
            F = F * ((abs2 - one * a) / (1 - a))
        if spec.eps:
            F = F * MonomialPoly.z()
    return F.trimmed()


def annihilator(spec):
    """Annihilator polynomial for ``spec`` in the ``Q`` basis, with ``F(1) = 1``."""
    F = _annihilator_monomial(spec)
    return to_geg_basis(F, spec.d)


def real_part_bound(d, real_parts):
    """Fisher bound from ``prod (Re z - a_j)/(1 - a_j)``."""
    rep = fisher_bound(annihilator(AnnihilatorSpec(d, real_parts=tuple(real_parts))))
    rep.kind = "real_part"
    return rep


def real_part_closed_form(d, s):
    return binom(s + 2 * d - 1, 2 * d - 1) + binom(s + 2 * d - 2, 2 * d - 1)


def naive_closed_form(d, m):
    return binom(m + d, d)


def s_angular_bound(d, s, with_zero=False):
    """``n <= C(s+d-1, d-1) C(s-eps+d-1, d-1)`` for ``s``-angular lines in ``C^d``.

    Tight angles ``x = |z|^2`` are the roots in [0, 1) of ``x^eps P_{s-eps}^{(d-1,eps)}(2x-1)``.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    eps = int(bool(with_zero))
    value = _check_int64(binom(s + d - 1, d - 1) * binom(s - eps + d - 1, d - 1))
    P = jacobi_shifted(s - eps, d - 1, eps)
    poly = P * MonomialPoly.x() if eps else P
    roots = [x for x in real_roots(poly.coeffs, 0.0, 1.0) if x < 1.0]
    if eps and not any(abs(x) < 1e-14 for x in roots):
        roots = [0.0] + roots
    return BoundReport("s_angular", value, direction="upper", tightness_poly=poly,
                       tight_roots=sorted(roots), root_kind="x",
                       details={"s": s, "eps": eps})


# -- special bounds --------------------------------------------------------

def _special_route(d, G, F_at_one):
    """``G(1)/g_00`` from the Q-expansion of a potential ``G``."""
    e = to_geg_basis(G, d)
    g0 = float(np.real(e.constant_term))
    return float(np.real(F_at_one)) / g0 if g0 > 0 else math.inf


def _exact(a):
    if isinstance(a, (int, Fraction)):
        return Fraction(a)
    if isinstance(a, str):
        return Fraction(a.strip())
    return float(a)


def _tidy(value):
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    return float(value)


def special_bounds(d, angles):
    """Special bounds for projective angle sets ``{a}``, ``{0, a}`` and ``{a, b}``.

    Integer, ``Fraction`` or string angles are handled exactly; floats in floating point.
    """
    angles = sorted(_exact(a) for a in angles)
    if any(a < 0 or a >= 1 for a in angles):
        if any(abs(a - 1) < COEFF_ZERO for a in angles):
            raise AngleAtOne("projective angles must be below 1")
        raise OutOfValidityDomain("projective angles lie in [0, 1)", inequality="0 <= a < 1")
    z, zb = MonomialPoly.z(), MonomialPoly.zbar()
    abs2 = z * zb
    one = MonomialPoly.constant(Field.COMPLEX, 1.0)
    if len(angles) == 1:
        (a,) = angles
        if a == 0:
            # G = conj(z) F with F = z: constant coefficient f_10 = 1/d
            value = Fraction(d)
            check = _special_route(d, zb * z, 1.0)
            F = z
            domain = "a = 0 via F(z) = z"
        else:
            if not 1 - d * a > 0:
                raise OutOfValidityDomain(f"1 - d*a = {float(1 - d * a):g} must be positive",
                                          inequality="1 - d*a > 0")
            value = d * (1 - a) / (1 - d * a)
            F = abs2 - one * float(a)
            check = _special_route(d, F, float(1 - a))
            domain = "1 - d*a > 0"
    elif len(angles) == 2 and angles[0] == 0:
        a = angles[1]
        if not a < 2 / (d + 1):
            raise OutOfValidityDomain(f"a = {float(a):g} must be below 2/(d+1)",
                                      inequality="a < 2/(d+1)")
        value = d * (d + 1) * (1 - a) / (2 - (d + 1) * a)
        F = z * (abs2 - one * float(a))
        check = _special_route(d, zb * F, float(1 - a))
        domain = "a < 2/(d+1)"
    elif len(angles) == 2:
        a, b = angles
        den = d * (d + 1) * a * b - (d + 1) * (a + b) + 2
        if not a + b <= 4 / (d + 2):
            raise OutOfValidityDomain(f"a + b = {float(a + b):g} exceeds 4/(d+2)",
                                      inequality="a + b <= 4/(d+2)")
        if not den > 0:
            raise OutOfValidityDomain(f"d(d+1)ab - (d+1)(a+b) + 2 = {float(den):g} must be positive",
                                      inequality="d(d+1)ab - (d+1)(a+b) + 2 > 0")
        value = d * (d + 1) * (1 - a) * (1 - b) / den
        F = (abs2 - one * float(a)) * (abs2 - one * float(b))
        check = _special_route(d, F, float((1 - a) * (1 - b)))
        domain = "a + b <= 4/(d+2) and d(d+1)ab - (d+1)(a+b) + 2 > 0"
    else:
        raise ValueError("special bounds cover one or two angles")
    return BoundReport("special", _tidy(value), direction="upper", tightness_poly=F.trimmed(),
                       tight_roots=[float(a) for a in angles], root_kind="abs2",
                       details={"domain": domain, "potential_route": check})


# -- tightness -------------------------------------------------------------

@dataclass
class TightnessCertificate:
    passed: bool
    n: int
    bound: object
    size_matches: bool
    worst_residual: float
    angles: list

    def as_dict(self):
        enc = [[float(np.real(a)), float(np.imag(a))] if np.iscomplexobj(a) else float(a)
               for a in self.angles]
        return {"pass": self.passed, "n": self.n, "bound": self.bound,
                "size_matches": self.size_matches, "worst_residual": self.worst_residual,
                "angles": enc}


def tightness_check(config, report, tol=1e-10):
    """Does ``config`` meet ``report`` with every angle a root of its polynomial?

    Residuals are ``|poly(angle)| / max(1, |poly(1)|)``.
    """
    require_unit_norm(config)
    if report.value is None or not report.valid:
        raise PreconditionFailed("report has no valid bound", witness=report.violation)
    n = config.n
    matches = abs(n - float(report.value)) <= 1e-9 * max(1.0, float(report.value))
    angs = angle_set(gramian(config)).angles
    poly = report.tightness_poly
    norm = max(1.0, float(abs(poly.at_one())))
    if poly.field is Field.COMPLEX:
        pts = np.asarray(angs, dtype=complex)
    elif report.kind == "s_angular":
        pts = np.abs(angs) ** 2
    else:
        pts = np.real(angs)
    res = np.abs(poly(pts)) / norm if len(pts) else np.zeros(0)
    worst = float(np.max(res)) if res.size else 0.0
    return TightnessCertificate(bool(matches and worst <= tol), n, report.value, bool(matches),
                                worst, list(angs))
