"""Invariants checked on generated inputs."""
import math

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from netavg.fields import (action_identity_residual, apply_A, field_inner, field_norm,
                           inner_product_identity, interpolate)
from netavg.flows import (even_flow_basis, flow_nullspace_oracle, kirchhoff_residual,
                          odd_flow_basis, span_residual)
from netavg.network import is_bipartite, spanning_tree_and_cycles
from netavg.spectral_map import mu, mu_image_set, omega_star, spectrum_A_finite
from netavg.spectrum import apply_P, eigendecompose
from netavg.unitfunc import (ONE, J, J_lambda, S, even_part, odd_part, u_basis, unit_inner,
                             unit_inner_lambda, unit_norm)
from strategies import lambdas, networks, unit_functions, vertex_functions

FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@FAST
@given(networks(max_vertices=10))
def test_network_invariants(net):
    assert abs(net.m0.sum() - 2 * net.conductances.sum()) <= 1e-12 * net.m0.sum()
    tree = spanning_tree_and_cycles(net)
    assert len(tree.cycles) == net.n_edges - net.n_vertices + 1
    has_odd = any((len(c) - 1) % 2 for c in tree.cycles)
    assert (is_bipartite(net) is None) == has_odd


@FAST
@given(networks(max_vertices=9))
def test_spectrum_invariants(net):
    sp = eigendecompose(net)
    assert np.all(np.abs(sp.values) <= 1 + 1e-10)
    assert abs(sp.values[0] - 1) <= 1e-9 and np.ptp(sp.vectors[:, 0]) <= 1e-9
    G = sp.vectors.T @ (sp.vectors * net.m0[:, None])
    assert np.max(np.abs(G - np.eye(net.n_vertices))) <= 1e-10
    for j in range(net.n_vertices):
        g = sp.vectors[:, j]
        assert np.max(np.abs(apply_P(net, g) - sp.values[j] * g)) <= 1e-9
    colour = is_bipartite(net)
    assert sp.has_minus_one == (colour is not None)
    if colour is not None:
        c1 = np.array([i in colour[0] for i in range(net.n_vertices)])
        alt = sp.vectors[:, -1] * np.where(c1, 1.0, -1.0)
        assert np.ptp(alt) <= 1e-9


@FAST
@given(networks(max_vertices=8))
def test_atoms_subset_of_mu_image(net):
    sp = eigendecompose(net)
    ref = mu_image_set(sp.values, 4)
    for a in spectrum_A_finite(sp, 4).atoms:
        assert abs(a.mu) <= 1
        assert np.min(np.abs(ref - a.mu)) <= 1e-10


@FAST
@given(lambdas, st.integers(0, 50))
def test_mu_decay(lam, n):
    w = math.acos(lam)
    assert abs(mu(lam, n + 1)) < abs(mu(lam, n))
    assert abs(mu(lam, -n - 1)) < abs(mu(lam, -n)) or n == 0
    assert abs(mu(lam, n)) <= math.sin(w) / w < 1
    assert abs(mu(lam, 10**6)) < 1e-6


def test_mu_fixed_point():
    lam = math.cos(omega_star())
    assert abs(mu(lam, -1) - lam) <= 1e-10


@FAST
@given(networks(max_vertices=10))
def test_flow_invariants(net):
    for parity, basis in (("odd", odd_flow_basis(net)), ("even", even_flow_basis(net))):
        oracle = flow_nullspace_oracle(net, parity)
        assert basis.dimension == oracle.dimension
        assert span_residual(net, basis, oracle) <= 1e-9
        assert all(kirchhoff_residual(net, f) <= 1e-10 for f in basis.flows)
    if net.cyclomatic_number == 0:
        assert odd_flow_basis(net).dimension == 0


@FAST
@given(unit_functions(), unit_functions())
def test_S_J_identities(u, v):
    assert unit_norm(S(S(u)) - u) <= 1e-12
    assert abs(unit_inner(J(u), v) - unit_inner(u, S(J(S(v))))) <= 1e-10
    assert unit_norm(J(S(u)) + S(J(u)) - ONE * unit_inner(u, ONE)) <= 1e-12
    assert unit_norm(even_part(u) + odd_part(u) - u) <= 1e-12


@FAST
@given(unit_functions(), unit_functions(), st.sampled_from([-0.9, -0.5, 0.0, 0.5, 0.9]))
def test_J_lambda_self_adjoint(u, v, lam):
    lhs = unit_inner_lambda(J_lambda(u, lam), v, lam)
    rhs = unit_inner_lambda(u, J_lambda(v, lam), lam)
    assert abs(lhs - rhs) <= 1e-10


@FAST
@given(lambdas, st.integers(-8, 8), st.integers(-8, 8))
def test_u_basis_orthonormal(lam, m, n):
    um, _ = u_basis(lam, m)
    un, mu_n = u_basis(lam, n)
    assert abs(unit_inner_lambda(um, un, lam) - (m == n)) <= 1e-10
    assert unit_norm(J_lambda(un, lam) - un * mu_n) <= 1e-10


@FAST
@given(st.data(), networks(max_vertices=5), unit_functions(), unit_functions())
def test_field_identities(data, net, u1, u2):
    g1 = data.draw(vertex_functions(net))
    g2 = data.draw(vertex_functions(net))
    lhs, rhs = inner_product_identity(net, g1, g2, u1, u2)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))
    assert action_identity_residual(net, g1, u1) <= 1e-9
    F, G = interpolate(net, g1, u1), interpolate(net, g2, u2)
    assert abs(field_inner(apply_A(F), G) - field_inner(F, apply_A(G))) <= 1e-9
    assert field_norm(apply_A(F)) <= field_norm(F) + 1e-10
