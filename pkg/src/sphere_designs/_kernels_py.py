"""Numpy reference implementation of the hot kernels.

Selected automatically when the compiled extension is unavailable, and kept
as the baseline the extension is checked and benchmarked against.
"""

import math

import numpy as np
from numpy.polynomial import polynomial as npoly


def _wsum(terms):
    return math.fsum(np.ravel(terms).tolist())


def poly_sum_real(G, c, w):
    """``sum_jk w_j w_k P(G_jk)`` with ``P = sum_i c_i x^i``."""
    G = np.asarray(G, dtype=float)
    c = np.asarray(c, dtype=float)
    w = np.asarray(w, dtype=float)
    return _wsum(np.outer(w, w) * npoly.polyval(G, c))


def _paired_terms(P, w):
    W = np.outer(w, w)
    iu = np.triu_indices(len(w), 1)
    return np.concatenate([(w * w) * np.real(np.diagonal(P)), 2.0 * W[iu] * np.real(P[iu])])


def poly_sum_complex(G, C, w):
    """Real potential ``sum_jk w_j w_k P(G_jk)``; conjugate pairs combined as ``2 Re``."""
    G = np.asarray(G, dtype=complex)
    C = np.asarray(C, dtype=float)
    w = np.asarray(w, dtype=float)
    P = npoly.polyval2d(G, np.conj(G), C)
    return _wsum(_paired_terms(P, w))


def value_grad_real(V, c, w):
    """Value and Euclidean gradient of ``sum_jk w_j w_k P(<v_j, v_k>)``."""
    V = np.asarray(V, dtype=float)
    c = np.asarray(c, dtype=float)
    w = np.asarray(w, dtype=float)
    G = V @ V.T
    G = 0.5 * (G + G.T)
    W = np.outer(w, w)
    value = _wsum(W * npoly.polyval(G, c))
    dc = npoly.polyder(c) if c.size > 1 else np.zeros(1)
    grad = 2.0 * (W * npoly.polyval(G, dc)) @ V
    return value, grad


def symmetrize_table(C):
    """Coefficients of ``(P(z) + conj(P(conj z)))/2`` for a real table ``C``."""
    C = np.asarray(C, dtype=float)
    n = max(C.shape)
    S = np.zeros((n, n))
    S[: C.shape[0], : C.shape[1]] = C
    return 0.5 * (S + S.T)


def value_grad_complex(V, C, w):
    """Value and gradient (``d/dRe + i d/dIm``) of the paired complex potential.

    ``C`` must already be symmetric (see :func:`symmetrize_table`).
    """
    V = np.asarray(V, dtype=complex)
    C = np.asarray(C, dtype=float)
    w = np.asarray(w, dtype=float)
    G = V @ V.conj().T
    G = 0.5 * (G + G.conj().T)
    Gb = np.conj(G)
    W = np.outer(w, w)
    value = _wsum(_paired_terms(npoly.polyval2d(G, Gb, C), w))
    na, nb = C.shape
    Cz = C[1:, :] * np.arange(1, na)[:, None] if na > 1 else np.zeros((1, 1))
    Czb = C[:, 1:] * np.arange(1, nb)[None, :] if nb > 1 else np.zeros((1, 1))
    Dz = npoly.polyval2d(G, Gb, Cz)
    Dzb = npoly.polyval2d(G, Gb, Czb)
    grad = 2.0 * ((W * Dz).T @ V + (W * Dzb) @ V)
    return value, grad
