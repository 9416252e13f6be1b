"""Design verification, maximal classes, and synthesis by potential minimization."""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import kernels
from .core_model import (
    Configuration,
    Field,
    gramian,
    m_weights,
    require_unit_norm,
)
from .errors import (
    AllZeroVectors,
    DidNotConverge,
    EmptyIndexSet,
    NonUnitNorm,
    UnknownFamily,
)
from .gegenbauer import GegExpansion, MonomialPoly
from .index_algebra import (
    ComplexIndexSet,
    RealIndexSet,
    named_family,
    tau_star,
)
from .potentials import (
    canonical_potential,
    evaluate,
    evaluate_weighted_monomial,
    moment_complex,
    moment_real,
    weighted_scale,
)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class VerificationReport:
    indices: list
    residuals: list
    passed: bool
    tol: float
    weights: str
    kind: str = "index"

    def as_dict(self):
        return {
            "kind": self.kind,
            "indices": [list(k) if isinstance(k, tuple) else k for k in self.indices],
            "residuals": [float(r) for r in self.residuals],
            "pass": self.passed,
            "tol": self.tol,
            "weights": self.weights,
        }

    def worst(self):
        return max(self.residuals, default=0.0)


# -- weights ---------------------------------------------------------------

def _resolve_weights(config, weights):
    """Return ``(unit_config, weight_vector, label)`` for a weights request.

    ``None``/``'uniform'`` use the configuration's own weights or ``1/n``;
    an ``('m', m)`` tuple or ``'m:K'`` string uses m-weights of the raw vectors.
    """
    if isinstance(weights, str) and weights.startswith("m:"):
        weights = ("m", int(weights[2:]))
    if isinstance(weights, tuple) and weights and weights[0] == "m":
        m = int(weights[1])
        mw = m_weights(config, m).values
        keep = config.norms > 0
        unit = Configuration(config.field, config.dimension,
                             config.vectors[keep] / config.norms[keep][:, None])
        return unit, np.asarray(mw)[keep], f"m:{m}"
    if weights is None or (isinstance(weights, str) and weights == "uniform"):
        if config.weights is not None:
            if not config.is_unit_norm():
                raise NonUnitNorm("explicit weights require unit vectors")
            return config, np.array(config.weights), "explicit"
        require_unit_norm(config)
        return config, config.effective_weights(), "uniform"
    w = np.asarray(weights, dtype=float)
    if not config.is_unit_norm():
        raise NonUnitNorm("explicit weights require unit vectors")
    if w.shape != (config.n,):
        raise ValueError(f"{w.size} weights for {config.n} vectors")
    return config, w / w.sum(), "explicit"


def _single_residual(field, d, key, G, w):
    if key in (0, (0, 0)):
        s = math.fsum(w.tolist())
        return abs(s * s - 1.0)
    e = GegExpansion(field, d, {key: 1.0})
    return evaluate(e, G, w, check=False).residual


# -- verification ----------------------------------------------------------

def verify(config, indices, weights=None, tol=DEFAULT_TOL):
    """Per-index residuals of the single-index potentials ``Q_l`` / ``Q_pq``."""
    unit, w, label = _resolve_weights(config, weights)
    G = gramian(unit)
    field, d = unit.field, unit.dimension
    keys = list(indices)
    if field is Field.REAL and isinstance(indices, ComplexIndexSet):
        raise ValueError("complex index set given for a real configuration")
    if field is Field.COMPLEX and isinstance(indices, RealIndexSet):
        raise ValueError("real index set given for a complex configuration")
    res = [_single_residual(field, d, k, G, w) for k in keys]
    return VerificationReport(keys, res, all(r <= tol for r in res), tol, label)


def verify_t_design(config, t, weights=None, tol=DEFAULT_TOL):
    """Moment test: ``sum w_j w_k <v_j, v_k>^m = b_m`` for ``m in {t-1, t}``.

    Over ``C^d`` the real part of the inner product and ``b_m(R^2d)`` are used.
    """
    unit, w, label = _resolve_weights(config, weights)
    G = np.real(gramian(unit))
    dim = unit.dimension if unit.field is Field.REAL else 2 * unit.dimension
    W = np.outer(w, w)
    orders = [m for m in (t - 1, t) if m >= 0]
    res = []
    for m in orders:
        s = math.fsum((W * G ** m).ravel().tolist())
        res.append(s - moment_real(dim, m))
    passed = all(abs(r) <= tol for r in res)
    return VerificationReport(orders, res, passed, tol, label, kind="moment")


def verify_half_design_m_weights(config, m, also_t_design=False, tol=DEFAULT_TOL):
    """m-weighted half-design test on raw (unnormalized) vectors.

    Residuals are divided by ``(sum ||v||^m)^2`` so the outcome does not
    depend on a global rescaling of the vectors.
    """
    if not np.any(config.norms > 0):
        raise AllZeroVectors("all vectors are zero")
    fam = "half_design" if config.field is Field.REAL else "hom_m_complex"
    scale = weighted_scale(config, m)
    res = [evaluate_weighted_monomial(config, fam, m).residual / scale]
    orders = [m]
    if also_t_design:
        res.append(evaluate_weighted_monomial(config, "t_design_part2", m).residual / scale)
        orders.append(m - 1)
    passed = all(abs(r) <= tol for r in res)
    return VerificationReport(orders, res, passed, tol, f"m:{m}", kind="m_weighted")


def max_class(config, degree_cap, weights=None, tol=DEFAULT_TOL):
    """All indices up to ``degree_cap`` whose single-index residual is <= tol."""
    if config.field is Field.REAL:
        idx = RealIndexSet(range(degree_cap + 1))
        rep = verify(config, idx, weights, tol)
        return RealIndexSet([0] + [k for k, r in zip(rep.indices, rep.residuals) if r <= tol])
    idx = ComplexIndexSet((p, s - p) for s in range(degree_cap + 1) for p in range(s + 1))
    rep = verify(config, idx, weights, tol)
    return tau_star([k for k, r in zip(rep.indices, rep.residuals) if r <= tol])


# -- synthesis -------------------------------------------------------------

@dataclass
class SynthesisOptions:
    max_iters: int = 5000
    restarts: int = 8
    tol: float = DEFAULT_TOL
    armijo_c: float = 1e-4
    shrink: float = 0.5
    max_backtracks: int = 60
    stop_factor: float = 1e-3
    threads: Optional[int] = None


@dataclass
class SynthesisResult:
    configuration: Configuration
    residual: float
    iterations: int
    restarts_used: int
    seed: Optional[int]
    success: bool
    best_restart: int
    mode: str = "uniform"
    indices: object = None
    history: list = dc_field(default_factory=list)

    def as_dict(self):
        return {
            "residual": self.residual,
            "iterations": self.iterations,
            "restarts_used": self.restarts_used,
            "best_restart": self.best_restart,
            "seed": self.seed,
            "success": self.success,
            "mode": self.mode,
            "restart_residuals": [float(r) for r in self.history],
        }


def _random_start(rng, field, n, d):
    V = rng.standard_normal((n, d))
    if field is Field.COMPLEX:
        V = V + 1j * rng.standard_normal((n, d))
    nrm = np.linalg.norm(V, axis=1)
    nrm[nrm == 0] = 1.0
    return V / nrm[:, None]


def _inner(a, b):
    return float(np.real(np.vdot(a, b)))


class _Objective:
    """Value/gradient pair plus the tangent projection and retraction."""

    def value_grad(self, V):
        raise NotImplementedError

    def project(self, V, g):
        raise NotImplementedError

    def retract(self, V):
        raise NotImplementedError


class _CanonicalObjective(_Objective):
    def __init__(self, potential, n):
        self.field = potential.field
        self.table = potential.kernel_table()
        self.w = np.full(n, 1.0 / n)
        self.f0 = potential.f0

    def value_grad(self, V):
        if self.field is Field.REAL:
            v, g = kernels.value_grad_real(V, self.table, self.w)
        else:
            v, g = kernels.value_grad_complex(V, self.table, self.w)
        return v - self.f0, g

    def project(self, V, g):
        radial = np.real(np.sum(np.conj(V) * g, axis=1))
        return g - radial[:, None] * V

    def retract(self, V):
        return V / np.linalg.norm(V, axis=1)[:, None]


def _power_table(field, m, kind):
    if field is Field.REAL:
        return np.array([0.0] * m + [1.0])
    if kind == "re":
        # ((z + zbar) / 2)^m
        poly = ((MonomialPoly.z() + MonomialPoly.zbar()) * 0.5) ** m
        return kernels.symmetrize_table(np.real(poly.coeffs))
    p, q = m
    C = np.zeros((p + 1, q + 1))
    C[p, q] = 1.0
    return kernels.symmetrize_table(C)


class _MWeightedObjective(_Objective):
    """``N(V) / S(V)^2 - b`` with ``S = sum ||v||^m``; homogeneous of degree 0."""

    def __init__(self, field, d, family, params):
        self.field = field
        self.family = family
        if family == "half_design":
            (m,) = params
            self.m = m
            self.table = _power_table(field, m, "re")
            dim = d if field is Field.REAL else 2 * d
            self.b = moment_real(dim, m)
            self.part2 = None
        elif family == "t_design":
            (t,) = params
            self.m = t
            self.table = _power_table(field, t, "re")
            self.part2 = _power_table(field, t - 1, "re")
            dim = d if field is Field.REAL else 2 * d
            self.b = moment_real(dim, t) + moment_real(dim, t - 1)
            if field is Field.COMPLEX:
                raise UnknownFamily("m-weighted t-design synthesis is real only")
        elif family == "hom_pq":
            p, q = params
            self.m = p + q
            self.table = _power_table(field, (p, q), "pq")
            self.b = moment_complex(d, p, q)
            self.part2 = None
        else:
            raise UnknownFamily(f"no m-weighted objective for {family!r}")

    def _vg(self, V, table, w):
        if self.field is Field.REAL:
            return kernels.value_grad_real(V, table, w)
        return kernels.value_grad_complex(V, table, w)

    def value_grad(self, V):
        n = V.shape[0]
        norms = np.linalg.norm(V, axis=1)
        N, gN = self._vg(V, self.table, np.ones(n))
        if self.part2 is not None:
            N2, gN2 = self._vg(V, self.part2, norms)
            G = V @ V.T
            H = G ** (self.m - 1) if self.m > 1 else np.ones_like(G)
            safe = np.where(norms > 0, norms, 1.0)
            gN2 = gN2 + 2.0 * (H @ norms)[:, None] * V / safe[:, None]
            N, gN = N + N2, gN + gN2
        m = self.m
        S = math.fsum((norms ** m).tolist())
        with np.errstate(divide="ignore", invalid="ignore"):
            dS = m * np.where(norms > 0, norms ** (m - 2), 0.0)[:, None] * V
        val = N / S ** 2 - self.b
        grad = gN / S ** 2 - 2.0 * N * dS / S ** 3
        return val, grad

    def project(self, V, g):
        return g - _inner(V, g) / _inner(V, V) * V

    def retract(self, V):
        return V / np.linalg.norm(V)


def _descend(obj, V, opts):
    """Riemannian gradient descent with Barzilai-Borwein trial steps and Armijo backtracking."""
    stop = opts.tol * opts.stop_factor
    f, g = obj.value_grad(V)
    rg = obj.project(V, g)
    step = 1.0 / max(1.0, np.sqrt(_inner(rg, rg)))
    it = 0
    for it in range(1, opts.max_iters + 1):
        if f <= stop:
            break
        gg = _inner(rg, rg)
        if gg == 0.0:
            break
        alpha = step
        for _ in range(opts.max_backtracks):
            Vn = obj.retract(V - alpha * rg)
            fn, gn = obj.value_grad(Vn)
            if fn <= f - opts.armijo_c * alpha * gg:
                break
            alpha *= opts.shrink
        else:
            break
        rgn = obj.project(Vn, gn)
        s = Vn - V
        y = rgn - rg
        sy = abs(_inner(s, y))
        step = _inner(s, s) / sy if sy > 0 else alpha * 2.0
        step = min(max(step, 1e-12), 1e6)
        V, f, rg = Vn, fn, rgn
    return V, f, it


def _detect_family(field, indices):
    """Map an index set onto the m-weighted family whose potential targets it."""
    if field is Field.REAL:
        L = RealIndexSet(indices)
        m = L.max_degree()
        if L == named_family("half_design", m):
            return "half_design", (m,)
        if L == named_family("t_design", m):
            return "t_design", (m,)
        if L.nonzero() == named_family("half_design", m).nonzero():
            return "half_design", (m,)
        if L.nonzero() == named_family("t_design", m).nonzero():
            return "t_design", (m,)
    else:
        tau = ComplexIndexSet(indices)
        for p, q in tau:
            if tau == named_family("pq_design", p, q) or \
                    tau.nonzero() == named_family("pq_design", p, q).nonzero():
                return "hom_pq", (p, q)
        m = tau.max_degree()
        if tau.nonzero() == named_family("hom_m_complex", m).nonzero():
            return "half_design", (m,)
    raise UnknownFamily("index set matches no family with an m-weighted potential")


def default_threads():
    env = os.environ.get("SPHERE_DESIGNS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def synthesize(field, d, n, indices, weights_mode="uniform", seed=None, opts=None,
               raise_on_failure=False, **kwargs):
    """Minimize a potential over ``n`` points to find a design for ``indices``.

    ``weights_mode='uniform'`` runs projected gradient descent for the
    canonical potential on unit vectors; ``'m_weights'`` minimizes the
    normalized m-weighted monomial objective over unconstrained vectors.
    Restarts get independent child seeds of ``seed``; the best residual wins,
    ties going to the lowest restart id.
    """
    field = Field.parse(field)
    if opts is None:
        opts = SynthesisOptions(**kwargs)
    elif kwargs:
        raise TypeError("pass either opts or keyword options, not both")
    if n < 1:
        raise ValueError("n must be positive")
    if len(list(indices)) == 0:
        raise EmptyIndexSet("empty index set")
    if weights_mode == "uniform":
        pot = canonical_potential(field, d, indices)
        make = lambda: _CanonicalObjective(pot, n)  # noqa: E731
    elif weights_mode in ("m_weights", "m-weights"):
        fam, params = _detect_family(field, indices)
        make = lambda: _MWeightedObjective(field, d, fam, params)  # noqa: E731
    else:
        raise ValueError(f"unknown weights mode {weights_mode!r}")

    children = np.random.SeedSequence(seed).spawn(opts.restarts)

    def run(i):
        rng = np.random.default_rng(children[i])
        V0 = _random_start(rng, field, n, d)
        obj = make()
        V, f, it = _descend(obj, V0, opts)
        return i, V, f, it

    threads = opts.threads if opts.threads is not None else default_threads()
    if threads > 1 and opts.restarts > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(opts.restarts)))
    else:
        results = [run(i) for i in range(opts.restarts)]

    best = min(results, key=lambda r: (r[2], r[0]))
    i, V, f, it = best
    if weights_mode == "uniform":
        config = Configuration(field, d, V / np.linalg.norm(V, axis=1)[:, None])
        residual = evaluate(pot, gramian(config), config.effective_weights(), check=False).residual
    else:
        config = Configuration(field, d, V)
        residual = float(f)
    res = SynthesisResult(config, float(residual), int(it), len(results), seed,
                          bool(residual <= opts.tol), int(i), weights_mode, indices,
                          [float(r[2]) for r in results])
    if raise_on_failure and not res.success:
        raise DidNotConverge(f"best residual {residual:.3e} above tol {opts.tol:g}", res)
    return res
