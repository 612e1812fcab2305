"""Transition operator P on l2(X0, m0) and its eigendecomposition."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import gram_schmidt, jacobi_eigh
from .network import Network

PM_ONE_TOL = 1e-9
CLUSTER_GAP = 1e-8


def transition_matrix(net: Network) -> np.ndarray:
    n = net.n_vertices
    c = np.zeros((n, n))
    c[net.tails, net.heads] = net.conductances
    c[net.heads, net.tails] = net.conductances
    return c / net.m0[:, None]


def apply_P(net: Network, g) -> np.ndarray:
    """(Pg)(x) = sum over neighbours y of c(xy) g(y) / m0(x)."""
    g = np.asarray(g)
    out = np.zeros(net.n_vertices, dtype=np.result_type(g, float))
    c = net.conductances
    np.add.at(out, net.tails, c * g[net.heads])
    np.add.at(out, net.heads, c * g[net.tails])
    return out / net.m0


def weighted_inner(net: Network, g1, g2):
    """sum_x g1(x) conj(g2(x)) m0(x)."""
    return np.sum(np.asarray(g1) * np.conj(np.asarray(g2)) * net.m0)


@dataclass(frozen=True)
class SpectrumP:
    """Eigenpairs of P, sorted by decreasing eigenvalue.

    ``vectors[:, j]`` is the eigenfunction for ``values[j]``, normalised in
    the m0-weighted inner product. Eigenvalues within ``PM_ONE_TOL`` of
    +-1 are stored exactly as +-1.
    """

    values: np.ndarray
    vectors: np.ndarray
    m0: np.ndarray
    has_plus_one: bool
    has_minus_one: bool

    def __len__(self):
        return len(self.values)

    def pairs(self):
        return [(float(lam), self.vectors[:, j]) for j, lam in enumerate(self.values)]

    def interior(self):
        """Indices j with |lambda_j| < 1."""
        return [j for j, lam in enumerate(self.values) if abs(lam) < 1.0]

    def projection_coeffs(self, g) -> np.ndarray:
        """<g, g_j>_{m0} for every eigenfunction g_j."""
        return self.vectors.T @ (np.asarray(g) * self.m0)

    def to_json(self, vertices) -> list:
        return [
            {"lambda": float(lam),
             "eigenvector": {v: float(x) for v, x in zip(vertices, self.vectors[:, j])}}
            for j, lam in enumerate(self.values)
        ]


def eigendecompose(net: Network) -> SpectrumP:
    """Full eigendecomposition of P via the symmetrised conductance matrix.

    ``C_hat(x, y) = c(xy) / sqrt(m0(x) m0(y))`` is diagonalised by Jacobi
    rotations and eigenvectors are mapped back by ``g = v / sqrt(m0)``.
    """
    m0 = net.m0
    n = net.n_vertices
    root = np.sqrt(m0)
    chat = np.zeros((n, n))
    w = net.conductances / (root[net.tails] * root[net.heads])
    chat[net.tails, net.heads] = w
    chat[net.heads, net.tails] = w

    lam, v = jacobi_eigh(chat)
    order = np.argsort(-lam, kind="stable")
    lam, v = lam[order], v[:, order]
    g = v / root[:, None]

    inner = lambda a, b: float(np.sum(a * b * m0))  # noqa: E731
    # re-orthonormalise inside clusters of (numerically) equal eigenvalues
    cols = []
    start = 0
    for stop in range(1, n + 1):
        if stop == n or lam[stop - 1] - lam[stop] >= CLUSTER_GAP:
            block = gram_schmidt([g[:, k] for k in range(start, stop)], inner)
            if len(block) != stop - start:
                raise RuntimeError("eigenvector cluster lost rank during orthonormalisation")
            cols.extend(block)
            start = stop
    g = np.column_stack(cols)
    for j in range(n):
        k = np.argmax(np.abs(g[:, j]))
        if g[k, j] < 0:
            g[:, j] = -g[:, j]

    lam = lam.copy()
    out_of_range = np.abs(lam) > 1.0 + PM_ONE_TOL
    if out_of_range.any():
        warnings.warn(f"clamping eigenvalues {lam[out_of_range]} to [-1, 1]")
    lam = np.clip(lam, -1.0, 1.0)
    plus = np.abs(lam - 1.0) <= PM_ONE_TOL
    minus = np.abs(lam + 1.0) <= PM_ONE_TOL
    lam[plus] = 1.0
    lam[minus] = -1.0
    return SpectrumP(lam, g, m0, bool(plus.any()), bool(minus.any()))


def reconstruct_P(sp: SpectrumP) -> np.ndarray:
    """Matrix of P rebuilt from the eigenpairs: sum_j lambda_j g_j <., g_j>."""
    g = sp.vectors
    return (g * sp.values) @ (g * sp.m0[:, None]).T
