import numpy as np
import pytest

from sphere_designs import kernels
from sphere_designs.index_algebra import named_family
from sphere_designs.potentials import canonical_potential

from conftest import random_unit

BACKENDS = sorted(kernels.BACKENDS)


def _real_case(rng):
    V = random_unit(rng, 9, 3) * rng.uniform(0.8, 1.2, (9, 1))
    c = canonical_potential("real", 3, named_family("t_design", 4)).kernel_table()
    return V, c, rng.dirichlet(np.ones(9))


def _complex_case(rng):
    V = random_unit(rng, 7, 2, True) * rng.uniform(0.8, 1.2, (7, 1))
    C = canonical_potential("complex", 2, named_family("t_design", 3, field="complex")).kernel_table()
    return V, C, rng.dirichlet(np.ones(7))


def test_active_backend_reported():
    assert kernels.BACKEND in kernels.BACKENDS
    assert kernels.get_backend() is kernels.BACKENDS[kernels.BACKEND]
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_backends_agree(rng):
    py, cy = kernels.get_backend("python"), kernels.get_backend("compiled")
    V, c, w = _real_case(rng)
    G = V @ V.T
    assert cy.poly_sum_real(G, c, w) == pytest.approx(py.poly_sum_real(G, c, w), abs=1e-13)
    v1, g1 = py.value_grad_real(V, c, w)
    v2, g2 = cy.value_grad_real(V, c, w)
    assert v1 == pytest.approx(v2, abs=1e-13) and np.allclose(g1, g2, atol=1e-12)
    V, C, w = _complex_case(rng)
    G = V @ V.conj().T
    assert cy.poly_sum_complex(G, C, w) == pytest.approx(py.poly_sum_complex(G, C, w), abs=1e-13)
    v1, g1 = py.value_grad_complex(V, C, w)
    v2, g2 = cy.value_grad_complex(V, C, w)
    assert v1 == pytest.approx(v2, abs=1e-13) and np.allclose(g1, g2, atol=1e-12)


@pytest.mark.parametrize("name", BACKENDS)
def test_real_gradient_central_difference(name, rng):
    impl = kernels.get_backend(name)
    V, c, w = _real_case(rng)
    _, g = impl.value_grad_real(V, c, w)
    h = 1e-6
    for _ in range(10):
        j, i = rng.integers(9), rng.integers(3)
        E = np.zeros_like(V)
        E[j, i] = h
        fd = (impl.value_grad_real(V + E, c, w)[0] - impl.value_grad_real(V - E, c, w)[0]) / (2 * h)
        assert g[j, i] == pytest.approx(fd, rel=1e-6, abs=1e-8)


@pytest.mark.parametrize("name", BACKENDS)
def test_complex_gradient_packs_re_and_im(name, rng):
    impl = kernels.get_backend(name)
    V, C, w = _complex_case(rng)
    _, g = impl.value_grad_complex(V, C, w)
    h = 1e-6
    for _ in range(10):
        j, i = rng.integers(7), rng.integers(2)
        E = np.zeros_like(V)
        E[j, i] = h
        dre = (impl.value_grad_complex(V + E, C, w)[0] - impl.value_grad_complex(V - E, C, w)[0]) / (2 * h)
        dim = (impl.value_grad_complex(V + 1j * E, C, w)[0]
               - impl.value_grad_complex(V - 1j * E, C, w)[0]) / (2 * h)
        assert g[j, i].real == pytest.approx(dre, rel=1e-6, abs=1e-8)
        assert g[j, i].imag == pytest.approx(dim, rel=1e-6, abs=1e-8)


def test_symmetrize_table():
    S = kernels.symmetrize_table(np.array([[0.0, 2.0, 0.0]]))
    assert S.shape == (3, 3)
    assert np.array_equal(S, S.T) and S[0, 1] == 1.0
