"""Configurations, Gramians, angle sets and m-weights.

A configuration is a finite sequence of vectors in R^d or C^d, optionally
weighted.  Everything downstream works from the Gramian
``G[j, k] = <v_j, v_k>``, with the inner product linear in the first slot and
conjugate-linear in the second.
"""

import enum
import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .errors import (
    AllZeroVectors,
    ClusterAmbiguity,
    DimensionMismatch,
    NonHermitianGramian,
    NonUnitNorm,
    ParseError,
)

DEFAULT_ANGLE_TOL = 1e-9
WEIGHT_SUM_TOL = 1e-9
UNIT_NORM_TOL = 1e-9


class Field(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"

    @classmethod
    def parse(cls, value):
        if isinstance(value, Field):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ParseError(f"unknown field {value!r}, expected 'real' or 'complex'",
                             field="field") from None


def _readonly(a):
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Configuration:
    """``n`` vectors in F^d with optional weights (normalized to sum 1)."""

    field: Field
    dimension: int
    vectors: np.ndarray
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        field = Field.parse(self.field)
        object.__setattr__(self, "field", field)
        d = int(self.dimension)
        if d < 1:
            raise DimensionMismatch(f"dimension must be positive, got {d}")
        object.__setattr__(self, "dimension", d)

        vecs = np.asarray(self.vectors)
        if vecs.ndim == 1 and vecs.size == 0:
            vecs = vecs.reshape(0, d)
        if vecs.ndim != 2:
            raise DimensionMismatch("vectors must form an n x d array")
        if vecs.shape[0] < 1:
            raise DimensionMismatch("a configuration needs at least one vector")
        if vecs.shape[1] != d:
            raise DimensionMismatch(
                f"vectors have {vecs.shape[1]} entries but dimension is {d}")
        if field is Field.REAL:
            if np.iscomplexobj(vecs):
                if np.any(vecs.imag != 0):
                    raise DimensionMismatch("real configuration has complex entries")
                vecs = vecs.real
            vecs = vecs.astype(float)
        else:
            vecs = vecs.astype(complex)
        object.__setattr__(self, "vectors", _readonly(vecs))

        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float).ravel()
            if w.shape[0] != vecs.shape[0]:
                raise DimensionMismatch(
                    f"{w.shape[0]} weights given for {vecs.shape[0]} vectors")
            total = w.sum()
            if total == 0:
                raise DimensionMismatch("weights sum to zero")
            # Already-normalized weights are kept bit for bit so JSON round-trips exactly.
            if abs(total - 1.0) > WEIGHT_SUM_TOL:
                w = w / total
            object.__setattr__(self, "weights", _readonly(w))

    @property
    def n(self):
        return self.vectors.shape[0]

    @property
    def norms(self):
        return np.linalg.norm(self.vectors, axis=1)

    def is_unit_norm(self, tol=UNIT_NORM_TOL):
        return bool(np.all(np.abs(self.norms - 1.0) <= tol))

    def effective_weights(self):
        """Explicit weights, or uniform ``1/n`` when none were given."""
        if self.weights is None:
            return np.full(self.n, 1.0 / self.n)
        return np.array(self.weights)

    def normalized(self):
        """Same directions, unit norms; zero vectors are rejected."""
        norms = self.norms
        if np.any(norms == 0):
            raise AllZeroVectors("cannot normalize a zero vector")
        return Configuration(self.field, self.dimension,
                             self.vectors / norms[:, None], self.weights)

    def transformed(self, unitary):
        """Apply ``unitary`` (d x d) to every vector."""
        U = np.asarray(unitary)
        vecs = self.vectors @ U.T
        field = self.field
        if field is Field.REAL and np.iscomplexobj(vecs):
            field = Field.COMPLEX
        return Configuration(field, self.dimension, vecs, self.weights)

    def scaled(self, factor):
        return Configuration(self.field, self.dimension, self.vectors * factor, self.weights)

    def as_complex(self):
        return Configuration(Field.COMPLEX, self.dimension, self.vectors.astype(complex),
                             self.weights)

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        if (self.field, self.dimension) != (other.field, other.dimension):
            return False
        if self.vectors.shape != other.vectors.shape:
            return False
        if not np.array_equal(self.vectors, other.vectors):
            return False
        if (self.weights is None) != (other.weights is None):
            return False
        return self.weights is None or np.array_equal(self.weights, other.weights)

    __hash__ = None


def gramian(config):
    """Hermitian matrix of inner products ``<v_j, v_k>``."""
    V = config.vectors
    G = V @ V.conj().T
    G = 0.5 * (G + G.conj().T)
    if config.field is Field.REAL:
        G = G.real
    else:
        np.fill_diagonal(G, G.diagonal().real)
    return G


def check_gramian(G, tol=1e-9):
    """Raise :class:`NonHermitianGramian` unless ``G`` is a plausible Gramian."""
    G = np.asarray(G)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise NonHermitianGramian("Gramian must be square")
    scale = max(1.0, float(np.max(np.abs(G))) if G.size else 1.0)
    if np.max(np.abs(G - G.conj().T), initial=0.0) > tol * scale:
        raise NonHermitianGramian("Gramian is not Hermitian")
    if np.max(np.abs(np.imag(np.diagonal(G))), initial=0.0) > tol * scale:
        raise NonHermitianGramian("Gramian has non-real diagonal")
    if np.min(np.real(np.diagonal(G)), initial=0.0) < -tol * scale:
        raise NonHermitianGramian("Gramian has a negative diagonal entry")
    herm = 0.5 * (G + G.conj().T)
    eig = np.linalg.eigvalsh(herm)
    if eig.size and eig[0] < -tol * max(scale, float(np.linalg.norm(herm, 2))):
        raise NonHermitianGramian(f"Gramian is not positive semidefinite (eigenvalue {eig[0]:.3g})")
    return True


@dataclass(frozen=True, eq=False)
class AngleSet:
    """Distinct off-diagonal Gramian entries and their (weighted) multiplicities.

    ``diagonal_weight`` is the total weight carried by the diagonal: ``sum w_j**2``
    in the weighted form, ``n`` in the counting form.  For unit vectors the
    potential value is ``F(1) * diagonal_weight + sum(m * F(angle))``.
    """

    angles: np.ndarray
    multiplicities: np.ndarray
    diagonal_weight: float
    weighted: bool = dc_field(default=False)

    def __len__(self):
        return len(self.angles)

    def items(self):
        return list(zip(self.angles.tolist(), self.multiplicities.tolist()))


def angle_set(G, weights=None, tol=DEFAULT_ANGLE_TOL):
    """Cluster the off-diagonal entries of ``G`` into distinct angles.

    With ``weights`` the multiplicity of an angle is ``sum w_j w_k`` over the
    pairs that realise it; without, it is the plain count of ordered pairs.
    """
    G = np.asarray(G)
    n = G.shape[0]
    if weights is not None:
        w = np.asarray(weights, dtype=float)
        if w.shape != (n,):
            raise DimensionMismatch(f"{w.shape[0]} weights for a {n} x {n} Gramian")
        W = np.outer(w, w)
        diag = float(np.sum(w * w))
    else:
        W = np.ones((n, n))
        diag = float(n)

    off = ~np.eye(n, dtype=bool)
    values = G[off]
    mults = W[off]
    # Sorting makes the greedy clustering independent of input order.
    order = np.lexsort((np.imag(values), np.real(values)))
    values = values[order]
    mults = mults[order]

    members = []
    centers = []
    for val, m in zip(values.tolist(), mults.tolist()):
        for i, c in enumerate(centers):
            if abs(val - c) <= tol:
                members[i][0].append(val)
                members[i][1].append(m)
                break
        else:
            centers.append(val)
            members.append(([val], [m]))
    means = [np.mean(vals) for vals, _ in members]
    for i in range(len(means)):
        for j in range(i + 1, len(means)):
            if abs(means[i] - means[j]) < 2 * tol:
                raise ClusterAmbiguity(
                    f"angles {means[i]} and {means[j]} are closer than 2*tol={2 * tol:g}")
    angles = np.array(means, dtype=G.dtype if np.iscomplexobj(G) else float)
    mult = np.array([sum(ms) for _, ms in members], dtype=float)
    return AngleSet(angles, mult, diag, weighted=weights is not None)


@dataclass(frozen=True)
class MWeights:
    m: int
    values: np.ndarray


def m_weights(config, m):
    """Weights ``||v_j||**m / sum_l ||v_l||**m``."""
    norms = config.norms
    if not np.any(norms > 0):
        raise AllZeroVectors("m-weights are undefined when every vector is zero")
    powers = norms ** m if m != 0 else np.ones_like(norms)
    if m != 0:
        powers = np.where(norms > 0, powers, 0.0)
    return MWeights(int(m), _readonly(powers / powers.sum()))


def require_unit_norm(config, tol=UNIT_NORM_TOL):
    if not config.is_unit_norm(tol):
        worst = float(np.max(np.abs(config.norms - 1.0)))
        raise NonUnitNorm(f"vectors are not unit norm (max deviation {worst:.3g})")


# -- serialization --------------------------------------------------------

def _parse_scalar(entry, field, where):
    if isinstance(entry, bool):
        raise ParseError("booleans are not numbers", field=where)
    if isinstance(entry, (int, float)):
        return complex(entry)
    if (isinstance(entry, list) and len(entry) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)):
        return complex(entry[0], entry[1])
    raise ParseError(f"expected a number or [re, im] pair, got {entry!r}", field=where)


def configuration_from_dict(data):
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    for key in ("field", "dimension", "vectors"):
        if key not in data:
            raise ParseError("missing required key", field=key)
    field = Field.parse(data["field"])
    d = data["dimension"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ParseError(f"dimension must be a positive integer, got {d!r}", field="dimension")
    raw = data["vectors"]
    if not isinstance(raw, list) or not raw:
        raise ParseError("vectors must be a non-empty list", field="vectors")
    rows = []
    for j, vec in enumerate(raw):
        if not isinstance(vec, list):
            raise ParseError("each vector must be a list", field=f"vectors[{j}]")
        if len(vec) != d:
            raise DimensionMismatch(
                f"vectors[{j}] has {len(vec)} entries but dimension is {d}")
        rows.append([_parse_scalar(x, field, f"vectors[{j}][{i}]") for i, x in enumerate(vec)])
    vecs = np.array(rows, dtype=complex)
    if field is Field.REAL:
        if np.any(vecs.imag != 0):
            raise ParseError("real configuration has nonzero imaginary parts", field="vectors")
        vecs = vecs.real
    weights = data.get("weights")
    if weights is not None:
        if (not isinstance(weights, list)
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in weights)):
            raise ParseError("weights must be a list of numbers", field="weights")
        if len(weights) != len(rows):
            raise DimensionMismatch(f"{len(weights)} weights given for {len(rows)} vectors")
    return Configuration(field, d, vecs, weights)


def load_configuration(data):
    """Parse configuration JSON from ``bytes`` or ``str``."""
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return configuration_from_dict(obj)


def configuration_to_dict(config):
    if config.field is Field.REAL:
        vectors = [[float(x) for x in row] for row in config.vectors]
    else:
        vectors = [[[float(x.real), float(x.imag)] for x in row] for row in config.vectors]
    out = {"field": config.field.value, "dimension": config.dimension, "vectors": vectors}
    if config.weights is not None:
        out["weights"] = [float(w) for w in config.weights]
    return out


def save_configuration(config):
    """Serialize to UTF-8 JSON bytes; floats round-trip exactly."""
    return json.dumps(configuration_to_dict(config), indent=1).encode("utf-8")
