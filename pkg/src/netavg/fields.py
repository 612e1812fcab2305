"""Functions on the one-skeleton X1 and the averaging operator A.

An :class:`EdgeField` keeps one :class:`UnitFunction` per unoriented edge,
parametrised along the canonical orientation tail -> head. The value at
``(yx, a)`` is the value at ``(xy, 1 - a)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .network import Network
from .spectrum import SpectrumP, apply_P, weighted_inner
from .unitfunc import (ONE, J, J_lambda, S, UnitFunction, _cosc, _moments, _sinc, unit_inner,
                       unit_inner_lambda)


@dataclass(frozen=True, eq=False)
class EdgeField:
    net: Network
    funcs: tuple

    def __post_init__(self):
        if len(self.funcs) != self.net.n_edges:
            raise ValueError("one function per edge required")

    def on(self, x: int, e: int) -> UnitFunction:
        """The function a -> F(xy, a) where e = [x, y], read from x."""
        f = self.funcs[e]
        return f if self.net.tails[e] == x else S(f)

    def evaluate(self, x: int, y: int, alpha):
        e = self.net.edge_between(x, y).index
        if self.net.tails[e] == x:
            return self.funcs[e](alpha)
        return self.funcs[e](1.0 - np.asarray(alpha, dtype=float))

    def __add__(self, other):
        return EdgeField(self.net, tuple(f + g for f, g in zip(self.funcs, other.funcs)))

    def __sub__(self, other):
        return EdgeField(self.net, tuple(f - g for f, g in zip(self.funcs, other.funcs)))

    def __mul__(self, k):
        return EdgeField(self.net, tuple(f * k for f in self.funcs))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def to_json(self) -> dict:
        v = self.net.vertices
        return {"edges": [
            {"tail": v[int(a)], "head": v[int(b)], "terms": f.terms()}
            for a, b, f in zip(self.net.tails, self.net.heads, self.funcs)]}


def constant_field(net: Network, c: float) -> EdgeField:
    return EdgeField(net, tuple(UnitFunction.constant(c) for _ in range(net.n_edges)))


def zero_field(net: Network) -> EdgeField:
    return constant_field(net, 0.0)


def interpolate(net: Network, g, u: UnitFunction) -> EdgeField:
    """F_{g,u}(xy, a) = u(1 - a) g(x) + u(a) g(y)."""
    g = np.asarray(g, dtype=float)
    su = S(u)
    return EdgeField(net, tuple(
        su * g[x] + u * g[y] for x, y in zip(net.tails, net.heads)))


def field_inner(F1: EdgeField, F2: EdgeField) -> float:
    """(1/2) sum over oriented edges of c(xy) * integral of F1 F2.

    Both orientations give the same integral, so this is a sum over edges.
    """
    c = F1.net.conductances
    return float(sum(ce * unit_inner(f, g) for ce, f, g in zip(c, F1.funcs, F2.funcs)))


def field_norm(F: EdgeField) -> float:
    return math.sqrt(max(field_inner(F, F), 0.0))


def apply_A(F: EdgeField) -> EdgeField:
    """Exact averaging over radius-one balls.

    AF(xy, a) = 1/m0(x) sum_{u~x} c(xu) int_0^{1-a} F(xu, .)
              + 1/m0(y) sum_{v~y} c(yv) int_0^{a} F(yv, .)
    """
    net = F.net
    m0 = net.m0
    c = net.conductances
    # outward[x] = 1/m0(x) * sum_u c(xu) J(F(xu, .)), a function of the radius
    outward = []
    for x in range(net.n_vertices):
        acc = UnitFunction.constant(0.0)
        for _, e in net.adjacency[x]:
            acc = acc + J(F.on(x, e)) * c[e]
        outward.append(acc / m0[x])
    return EdgeField(net, tuple(
        S(outward[x]) + outward[y] for x, y in zip(net.tails, net.heads)))


def sample(F: EdgeField, grid) -> list:
    """Rows (edge index, tail, head, alpha, value) along canonical orientations."""
    grid = np.asarray(grid, dtype=float)
    rows = []
    v = F.net.vertices
    for e, f in enumerate(F.funcs):
        vals = f(grid)
        t, h = v[int(F.net.tails[e])], v[int(F.net.heads[e])]
        rows.extend((e, t, h, float(a), float(val)) for a, val in zip(grid, vals))
    return rows


def inner_product_identity(net, g1, g2, u1, u2):
    """Both sides of <F_{g1,u1}, F_{g2,u2}> = <g1,g2><u1,u2> + <Pg1,g2><u1,Su2>."""
    lhs = field_inner(interpolate(net, g1, u1), interpolate(net, g2, u2))
    rhs = (weighted_inner(net, g1, g2) * unit_inner(u1, u2)
           + weighted_inner(net, apply_P(net, g1), g2) * unit_inner(u1, S(u2)))
    return lhs, float(rhs)


def action_identity_residual(net, g, u) -> float:
    """Norm of A F_{g,u} - (F_{g,JSu} + F_{Pg,Ju})."""
    lhs = apply_A(interpolate(net, g, u))
    rhs = interpolate(net, g, J(S(u))) + interpolate(net, apply_P(net, g), J(u))
    return field_norm(lhs - rhs)


def power_identity_check(net: Network, sp: SpectrumP, g1, g2, u1, u2, n: int):
    """(lhs, rhs, residual) for <A^n F_{g1,u1}, F_{g2,u2}> against the finite
    eigen-sum of <J_lambda^n u1, u2>_lambda <g1, g_j> <g2, g_j>.
    """
    F = interpolate(net, g1, u1)
    for _ in range(n):
        F = apply_A(F)
    lhs = field_inner(F, interpolate(net, g2, u2))
    c1 = sp.projection_coeffs(g1)
    c2 = sp.projection_coeffs(g2)
    rhs = 0.0
    for j, lam in enumerate(sp.values):
        w = u1
        for _ in range(n):
            w = J_lambda(w, lam)
        rhs += unit_inner_lambda(w, u2, lam) * c1[j] * c2[j]
    return lhs, float(rhs), abs(lhs - rhs)


def special_function_image(net, g, u):
    """A F_{g,u} predicted for g in H1: F_{g, <u,1> 1}."""
    return interpolate(net, g, ONE * unit_inner(u, ONE))


def _dictionary(funcs):
    """Common dictionary (max degree, merged frequency list) for many functions."""
    deg = max(len(f.poly) for f in funcs) - 1
    allf = np.concatenate([f.freqs for f in funcs]) if funcs else np.zeros(0)
    allf = np.unique(allf)
    merged = []
    for f in allf:
        if not merged or f - merged[-1] > 1e-9:
            merged.append(f)
    return deg, np.array(merged)


def _coefficients(f, deg, freqs):
    out = np.zeros(deg + 1 + 2 * len(freqs))
    out[: len(f.poly)] = f.poly
    if f.freqs.size:
        pos = np.searchsorted(freqs, f.freqs - 1e-9)
        out[deg + 1 + pos] += f.cos_coef
        out[deg + 1 + len(freqs) + pos] += f.sin_coef
    return out


def _dictionary_gram(deg, freqs):
    """Exact L2[0,1] Gram matrix of [1, a, ..., a^deg, cos(f a)..., sin(f a)...]."""
    k = deg + 1
    nf = len(freqs)
    G = np.zeros((k + 2 * nf, k + 2 * nf))
    i = np.arange(k)
    G[:k, :k] = 1.0 / (i[:, None] + i[None, :] + 1)
    for t, f in enumerate(freqs):
        C, Sn = _moments(deg, f)
        G[:k, k + t] = G[k + t, :k] = C
        G[:k, k + nf + t] = G[k + nf + t, :k] = Sn
    if nf:
        dm = freqs[:, None] - freqs[None, :]
        dp = freqs[:, None] + freqs[None, :]
        G[k:k + nf, k:k + nf] = 0.5 * (_sinc(dm) + _sinc(dp))
        G[k + nf:, k + nf:] = 0.5 * (_sinc(dm) - _sinc(dp))
        sc = 0.5 * (_cosc(dp) + _cosc(dm))   # sin(f_r a) cos(f_s a)
        G[k + nf:, k:k + nf] = sc
        G[k:k + nf, k + nf:] = sc.T
    return G


def field_gram(fields) -> np.ndarray:
    """Gram matrix of EdgeFields on a common network, in closed form."""
    fields = list(fields)
    if not fields:
        return np.zeros((0, 0))
    net = fields[0].net
    deg, freqs = _dictionary([f for F in fields for f in F.funcs])
    G0 = _dictionary_gram(deg, freqs)
    out = np.zeros((len(fields), len(fields)))
    for e in range(net.n_edges):
        Ce = np.array([_coefficients(F.funcs[e], deg, freqs) for F in fields])
        out += net.conductances[e] * Ce @ G0 @ Ce.T
    return 0.5 * (out + out.T)
