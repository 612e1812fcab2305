import math

import numpy as np
import pytest

from netavg.network import generate
from netavg.quadrature import discretize_A, gauss_legendre_unit, partial_weights


def test_partial_weights_exact_on_polynomials():
    M = 12
    t, w = gauss_legendre_unit(M)
    s = np.array([0.0, 0.2, 0.7, 1.0])
    W = partial_weights(M, s)
    for k in range(M):
        # integral of a^k over [0, s] from node values
        assert np.allclose(W @ t ** k, s ** (k + 1) / (k + 1), atol=1e-13)
    np.testing.assert_allclose(W[-1], w, atol=1e-14)


def test_matrix_symmetric():
    d = discretize_A(generate("path", 3), 16)
    np.testing.assert_allclose(d.matrix, d.matrix.T, atol=1e-15)


def test_k3_oracle():
    ev = discretize_A(generate("cycle", 3), 64).eigenvalues()
    assert ev[0] == pytest.approx(1.0, abs=1e-8)
    target = 3 * math.sqrt(3) / (4 * math.pi)
    assert np.sum(np.abs(ev - target) < 1e-6) == 2


def test_p3_oracle():
    ev = discretize_A(generate("path", 3), 64).eigenvalues()
    for want in (1.0, 2 / math.pi, 2 / (5 * math.pi)):
        assert np.min(np.abs(ev - want)) < 1e-8


def test_small_M_rejected_and_warning():
    with pytest.raises(ValueError):
        discretize_A(generate("path", 2), 4)
    with pytest.warns(UserWarning):
        discretize_A(generate("path", 2), 8, max_frequency=10.0)
