"""Brute-force discretisation of A by Gauss-Legendre collocation.

Each edge carries M Gauss-Legendre nodes. A field is represented by its
node values, i.e. by its degree M-1 interpolant on every edge, and the
partial integrals in A are integrated exactly on that interpolant.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre

from .linalg import jacobi_eigh
from .network import Network


@dataclass(frozen=True)
class DiscreteA:
    matrix: np.ndarray      # symmetric, in the sqrt-weight frame
    weights: np.ndarray     # c(e) * w_k for each (edge, node)
    nodes: np.ndarray       # nodes on [0, 1]

    def eigenvalues(self) -> np.ndarray:
        w, _ = jacobi_eigh(self.matrix, vectors=False)
        return np.sort(w)[::-1]


def gauss_legendre_unit(M: int):
    x, w = legendre.leggauss(M)
    return 0.5 * (x + 1.0), 0.5 * w


def partial_weights(M: int, s) -> np.ndarray:
    """W[i, k] = integral over [0, s_i] of the k-th Lagrange basis polynomial.

    Uses l_k = w_k sum_m (2m+1) P_m(x_k) P_m and
    int_{-1}^{x} P_m = (P_{m+1}(x) - P_{m-1}(x)) / (2m+1), P_{-1} := -1.
    """
    x, w = legendre.leggauss(M)
    xs = 2.0 * np.asarray(s, dtype=float) - 1.0
    pk = legendre.legvander(x, M)          # P_m(x_k), m = 0..M
    ps = legendre.legvander(xs, M)         # P_m(x_s), m = 0..M
    prev = np.concatenate([-np.ones((len(xs), 1)), ps[:, : M - 1]], axis=1)
    diff = ps[:, 1: M + 1] - prev          # P_{m+1} - P_{m-1}, m = 0..M-1
    # factor 1/2 from the [0, 1] -> [-1, 1] change of variable, twice
    return 0.25 * (diff @ pk[:, :M].T) * w[None, :]


def discretize_A(net: Network, M: int = 64, max_frequency: float | None = None) -> DiscreteA:
    if M < 8:
        raise ValueError("M >= 8 required")
    if max_frequency is not None and max_frequency > M / 2:
        warnings.warn(f"frequency {max_frequency:.3g} exceeds M/2 = {M / 2}; "
                      "oracle eigenvalues may be inaccurate")
    t, w = gauss_legendre_unit(M)
    W_fwd = partial_weights(M, t)          # int_0^{t_i}
    W_bwd = partial_weights(M, 1.0 - t)    # int_0^{1-t_i}
    E = net.n_edges
    m0 = net.m0
    c = net.conductances
    B = np.zeros((E * M, E * M))

    def integral_from(z, e2, s_weights, s_comp):
        # integral over [0, s] of F read outward from z along edge e2
        if net.tails[e2] == z:
            return s_weights
        return w[None, :] - s_comp

    for e in range(E):
        x, y = int(net.tails[e]), int(net.heads[e])
        rows = slice(e * M, (e + 1) * M)
        for _, e2 in net.adjacency[x]:
            cols = slice(e2 * M, (e2 + 1) * M)
            B[rows, cols] += c[e2] / m0[x] * integral_from(x, e2, W_bwd, W_fwd)
        for _, e2 in net.adjacency[y]:
            cols = slice(e2 * M, (e2 + 1) * M)
            B[rows, cols] += c[e2] / m0[y] * integral_from(y, e2, W_fwd, W_bwd)

    weights = np.repeat(c, M) * np.tile(w, E)
    r = np.sqrt(weights)
    sym = r[:, None] * B / r[None, :]
    sym = 0.5 * (sym + sym.T)
    return DiscreteA(sym, weights, t)


def discretized_spectrum(net: Network, M: int = 64) -> np.ndarray:
    return discretize_A(net, M).eigenvalues()
