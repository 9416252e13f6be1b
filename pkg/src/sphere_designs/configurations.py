"""Built-in configurations used as worked examples and test fixtures."""

import numpy as np
from scipy.linalg import helmert

from .core_model import Configuration, Field
from .errors import ParseError, UnknownName


def simplex(d):
    """``d + 1`` unit vectors in ``R^d`` with pairwise inner product ``-1/d``."""
    d = int(d)
    if d < 1:
        raise ValueError("simplex needs d >= 1")
    # Columns of the Helmert block span the sum-zero hyperplane of R^(d+1).
    V = np.sqrt((d + 1) / d) * helmert(d + 1).T
    return Configuration(Field.REAL, d, V)


def orthoplex(d):
    """``+-e_i`` in ``R^d``."""
    d = int(d)
    eye = np.eye(d)
    V = np.empty((2 * d, d))
    V[0::2] = eye
    V[1::2] = -eye
    return Configuration(Field.REAL, d, V)


def orthonormal(d, field="real"):
    return Configuration(Field.parse(field), int(d), np.eye(int(d)))


def icosahedron():
    """The 12 vertices ``(0, +-1, +-phi)`` and cyclic shifts, normalized."""
    phi = (1 + np.sqrt(5)) / 2
    pts = []
    for s1 in (1, -1):
        for s2 in (phi, -phi):
            base = (0.0, float(s1), float(s2))
            for shift in range(3):
                pts.append(base[-shift:] + base[:-shift] if shift else base)
    V = np.array(pts)
    V /= np.linalg.norm(V, axis=1)[:, None]
    return Configuration(Field.REAL, 3, V)


def roots_of_unity(n):
    """``{exp(2 pi i j / n)}`` in ``C^1``."""
    n = int(n)
    z = np.exp(2j * np.pi * np.arange(n) / n)
    return Configuration(Field.COMPLEX, 1, z[:, None])


def scaled(name, factor, *params):
    return builtin_configuration(name, *params).scaled(float(factor))


_BUILDERS = {
    "simplex": simplex,
    "orthoplex": orthoplex,
    "orthonormal": orthonormal,
    "icosahedron": icosahedron,
    "roots_of_unity": roots_of_unity,
}


def builtin_configuration(name, *params):
    if name == "scaled":
        if len(params) < 2:
            raise ParseError("scaled needs a base name and a factor")
        base, factor, *rest = params
        return scaled(base, factor, *rest)
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownName(f"unknown builtin configuration {name!r}") from None
    try:
        return builder(*params)
    except TypeError:
        raise ParseError(f"wrong parameters for builtin {name!r}: {params!r}") from None


def parse_builtin(spec):
    """Parse ``name[:arg[,arg...]]``, e.g. ``simplex:3`` or ``scaled:simplex,2.0,3``."""
    name, _, rest = spec.partition(":")
    args = []
    for tok in (t.strip() for t in rest.split(",") if t.strip()):
        for conv in (int, float):
            try:
                args.append(conv(tok))
                break
            except ValueError:
                continue
        else:
            args.append(tok)
    if name == "scaled" and len(args) >= 2:
        # scaled:base,factor,params...
        return builtin_configuration("scaled", args[0], args[1], *args[2:])
    return builtin_configuration(name.strip(), *args)


BUILTIN_NAMES = tuple(_BUILDERS) + ("scaled",)
