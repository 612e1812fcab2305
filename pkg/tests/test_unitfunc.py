import math

import numpy as np
import pytest
from scipy.integrate import quad

from netavg.unitfunc import (ONE, J, J_lambda, S, UnitFunction, even_part, odd_part,
                             random_unit_function, u_basis, unit_inner, unit_inner_lambda,
                             unit_norm)

GRID = np.linspace(0.0, 1.0, 41)


def close(u, v, tol=1e-12):
    return np.max(np.abs(u(GRID) - v(GRID))) <= tol


def test_canonical_form():
    u = UnitFunction.make([1.0, 0.0, 0.0], {3.0: (1.0, 0.0), 3.0 + 1e-11: (1.0, 2.0),
                                            -2.0: (0.0, 1.0), 5.0: (1e-17, 0.0)})
    assert u.poly.tolist() == [1.0]
    assert u.freqs.tolist() == [2.0, 3.0]
    assert u.sin_coef.tolist() == [-1.0, 2.0]


def test_S_examples():
    s = UnitFunction.sin(math.pi)
    assert close(S(s), s)
    a = UnitFunction.make([0.0, 1.0])
    assert close(S(a), UnitFunction.make([1.0, -1.0]))


def test_J_examples():
    assert close(J(ONE), UnitFunction.make([0.0, 1.0]))
    t = 2 * math.pi
    want = UnitFunction.make([1 / t], {t: (-1 / t, 0.0)})
    assert close(J(UnitFunction.sin(t)), want)
    assert close(J(UnitFunction.cos(t)), UnitFunction.sin(t, 1 / t))


def test_J_lambda_examples():
    th, lam = 2.3, 0.4
    u = UnitFunction.sin(th)
    want = u * (math.sin(th) / th) + (ONE - UnitFunction.cos(th)) * ((lam - math.cos(th)) / th)
    assert close(J_lambda(u, lam), want)
    assert close(J_lambda(u, math.cos(th)), u * (math.sin(th) / th))
    assert close(J_lambda(ONE, lam), UnitFunction.make([0.0, 1 + lam]))


def test_inner_examples():
    assert unit_inner(ONE, ONE) == pytest.approx(1.0)
    assert unit_inner_lambda(ONE, ONE, 0.3) == pytest.approx(1.3)
    assert abs(unit_inner(UnitFunction.sin(2 * math.pi), UnitFunction.cos(2 * math.pi))) < 1e-15


def test_inner_against_quadrature():
    rng = np.random.default_rng(5)
    for _ in range(30):
        u = random_unit_function(rng, n_poly=5, n_trig=4, max_freq=40.0)
        v = random_unit_function(rng, n_poly=5, n_trig=4, max_freq=40.0)
        ref, _ = quad(lambda a: float(u(a) * v(a)), 0, 1, limit=400, epsabs=1e-13,
                      epsrel=1e-12)
        assert unit_inner(u, v) == pytest.approx(ref, abs=1e-11)


def test_large_frequency_moments():
    # recurrence branch (theta >= degree) and series branch give the same answer
    u = UnitFunction.make([0.0, 0.0, 0.0, 1.0])
    for th in (2.9, 3.0, 3.1, 60.0):
        ref, _ = quad(lambda a: a ** 3 * math.cos(th * a), 0, 1, epsabs=1e-15, limit=200)
        assert unit_inner(u, UnitFunction.cos(th)) == pytest.approx(ref, abs=1e-13)


def test_lambda_inner_bounds():
    rng = np.random.default_rng(6)
    for lam in (-0.9, -0.2, 0.5, 0.95):
        for _ in range(10):
            u = random_unit_function(rng)
            n2 = unit_inner(u, u)
            nl = unit_inner_lambda(u, u, lam)
            assert (1 - abs(lam)) * n2 - 1e-12 <= nl <= (1 + abs(lam)) * n2 + 1e-12


@pytest.mark.parametrize("lam", [-0.9, -0.3, 0.0, 0.6, 0.95])
def test_u_basis_orthonormal(lam):
    us = [u_basis(lam, n) for n in range(-4, 5)]
    G = np.array([[unit_inner_lambda(a, b, lam) for b, _ in us] for a, _ in us])
    np.testing.assert_allclose(G, np.eye(len(us)), atol=1e-10)
    for u, m in us:
        r = J_lambda(u, lam) - u * m
        assert np.max(np.abs(np.concatenate([r.poly, r.cos_coef, r.sin_coef]))) <= 1e-12
        assert u(0.0) == 0.0


def test_u_basis_rejects():
    with pytest.raises(ValueError):
        u_basis(1.0, 0)


def test_even_odd_parts():
    u = random_unit_function(np.random.default_rng(2))
    assert unit_norm(even_part(u) + odd_part(u) - u) <= 1e-14
    assert unit_norm(S(even_part(u)) - even_part(u)) <= 1e-13


def test_terms_roundtrip():
    u = random_unit_function(np.random.default_rng(9))
    v = UnitFunction.from_terms(u.terms())
    assert close(u, v, 0.0)
