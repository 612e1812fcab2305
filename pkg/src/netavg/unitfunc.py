"""Exact algebra of functions on [0, 1] of the form

    p(a) + sum_k ( A_k cos(t_k a) + B_k sin(t_k a) ),   t_k > 0,

with p a polynomial. The class is closed under the reflection S, the
integration operator J and linear combinations, and all L2 inner products
are available in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from math import comb

FREQ_MERGE_TOL = 1e-9
PRUNE_TOL = 1e-15


def _canonical(poly, freqs, a, b):
    poly = np.array(poly, dtype=float).ravel()
    if poly.size == 0:
        poly = np.zeros(1)
    freqs = np.asarray(freqs, dtype=float).ravel()
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    # fold negative frequencies, move zero frequency into the constant term
    neg = freqs < 0
    freqs = np.abs(freqs)
    b = np.where(neg, -b, b)
    zero = freqs <= FREQ_MERGE_TOL
    if zero.any():
        poly = poly.copy()
        poly[0] += float(np.sum(a[zero]))
        freqs, a, b = freqs[~zero], a[~zero], b[~zero]

    order = np.argsort(freqs, kind="stable")
    freqs, a, b = freqs[order], a[order], b[order]
    fs, As, Bs = [], [], []
    for f, x, y in zip(freqs, a, b):
        if fs and f - fs[-1] <= FREQ_MERGE_TOL:
            As[-1] += x
            Bs[-1] += y
        else:
            fs.append(f)
            As.append(x)
            Bs.append(y)
    fs, As, Bs = np.array(fs), np.array(As), np.array(Bs)
    keep = (np.abs(As) > PRUNE_TOL) | (np.abs(Bs) > PRUNE_TOL)
    fs, As, Bs = fs[keep], As[keep], Bs[keep]

    poly = np.where(np.abs(poly) > PRUNE_TOL, poly, 0.0)
    nz = np.flatnonzero(poly)
    poly = poly[: nz[-1] + 1] if nz.size else np.zeros(1)
    return poly, fs, As, Bs


@dataclass(frozen=True, eq=False)
class UnitFunction:
    """Polynomial plus trigonometric terms on [0, 1]; treat as immutable.

    ``poly[k]`` multiplies ``a**k``; ``cos_coef[i]`` and ``sin_coef[i]``
    multiply ``cos(freqs[i] a)`` and ``sin(freqs[i] a)``.
    """

    poly: np.ndarray
    freqs: np.ndarray
    cos_coef: np.ndarray
    sin_coef: np.ndarray

    @classmethod
    def make(cls, poly=(0.0,), trig=None):
        """Build from a coefficient list and ``{freq: (a, b)}``."""
        trig = trig or {}
        fs = list(trig.keys())
        a = [trig[f][0] for f in fs]
        b = [trig[f][1] for f in fs]
        return cls(*_canonical(poly, fs, a, b))

    @classmethod
    def constant(cls, c=1.0):
        return cls.make([c])

    @classmethod
    def sin(cls, theta, amp=1.0):
        return cls.make(trig={theta: (0.0, amp)})

    @classmethod
    def cos(cls, theta, amp=1.0):
        return cls.make(trig={theta: (amp, 0.0)})

    @property
    def degree(self):
        return len(self.poly) - 1

    def __call__(self, alpha):
        x = np.asarray(alpha, dtype=float)
        val = np.polynomial.polynomial.polyval(x, self.poly)
        if self.freqs.size:
            ph = np.multiply.outer(x, self.freqs)
            val = val + np.cos(ph) @ self.cos_coef + np.sin(ph) @ self.sin_coef
        return val

    def __add__(self, other):
        if not isinstance(other, UnitFunction):
            other = UnitFunction.constant(float(other))
        n = max(len(self.poly), len(other.poly))
        poly = np.zeros(n)
        poly[: len(self.poly)] += self.poly
        poly[: len(other.poly)] += other.poly
        return UnitFunction(*_canonical(
            poly,
            np.concatenate([self.freqs, other.freqs]),
            np.concatenate([self.cos_coef, other.cos_coef]),
            np.concatenate([self.sin_coef, other.sin_coef])))

    __radd__ = __add__

    def __mul__(self, k):
        k = float(k)
        return UnitFunction(*_canonical(self.poly * k, self.freqs, self.cos_coef * k,
                                        self.sin_coef * k))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __truediv__(self, k):
        return self * (1.0 / float(k))

    def terms(self) -> dict:
        return {
            "poly": [float(c) for c in self.poly],
            "trig": [{"freq": float(f), "cos": float(a), "sin": float(b)}
                     for f, a, b in zip(self.freqs, self.cos_coef, self.sin_coef)],
        }

    @classmethod
    def from_terms(cls, d):
        return cls(*_canonical(d["poly"], [t["freq"] for t in d["trig"]],
                               [t["cos"] for t in d["trig"]], [t["sin"] for t in d["trig"]]))

    def __repr__(self):
        parts = [f"{c:+.6g}*a^{k}" for k, c in enumerate(self.poly) if c]
        parts += [f"{a:+.6g}cos({f:.6g}a){b:+.6g}sin({f:.6g}a)"
                  for f, a, b in zip(self.freqs, self.cos_coef, self.sin_coef)]
        return "UnitFunction(" + (" ".join(parts) or "0") + ")"


ONE = UnitFunction.constant(1.0)


def S(u: UnitFunction) -> UnitFunction:
    """Reflection (Su)(a) = u(1 - a)."""
    d = len(u.poly)
    poly = np.zeros(d)
    # (1 - a)^k = sum_i C(k, i) (-a)^i
    for k, c in enumerate(u.poly):
        if c:
            for i in range(k + 1):
                poly[i] += c * comb(k, i) * (-1) ** i
    ct, st = np.cos(u.freqs), np.sin(u.freqs)
    a, b = u.cos_coef, u.sin_coef
    return UnitFunction(*_canonical(poly, u.freqs, a * ct + b * st, a * st - b * ct))


def J(u: UnitFunction) -> UnitFunction:
    """Antiderivative (Ju)(a) = integral of u over [0, a]."""
    poly = np.zeros(len(u.poly) + 1)
    poly[1:] = u.poly / np.arange(1, len(u.poly) + 1)
    f, a, b = u.freqs, u.cos_coef, u.sin_coef
    # a cos(ft) -> (a/f) sin(fa);  b sin(ft) -> (b/f)(1 - cos(fa))
    poly[0] += float(np.sum(b / f)) if f.size else 0.0
    return UnitFunction(*_canonical(poly, f, -b / f, a / f))


def J_lambda(u: UnitFunction, lam: float) -> UnitFunction:
    """J S u + lam J u."""
    return J(S(u)) + J(u) * lam


# --- closed-form integrals over [0, 1] -------------------------------------

def _sinc(d):
    """integral of cos(d a) over [0, 1] = sin(d)/d."""
    return np.sinc(np.asarray(d, dtype=float) / np.pi)


def _cosc(d):
    """integral of sin(d a) over [0, 1] = (1 - cos d)/d."""
    d = np.asarray(d, dtype=float)
    return np.sin(d / 2) * np.sinc(d / (2 * np.pi))


def _moments(k_max, theta):
    """Arrays C[k] = int a^k cos(theta a), S[k] = int a^k sin(theta a), k <= k_max."""
    C = np.zeros(k_max + 1)
    Sn = np.zeros(k_max + 1)
    if theta >= max(k_max, 1):
        c, s = math.cos(theta), math.sin(theta)
        C[0] = s / theta
        Sn[0] = (1 - c) / theta
        for k in range(1, k_max + 1):
            C[k] = s / theta - k / theta * Sn[k - 1]
            Sn[k] = -c / theta + k / theta * C[k - 1]
        return C, Sn
    # power series, accurate for moderate theta
    for k in range(k_max + 1):
        cs, ss = 0.0, 0.0
        term = 1.0  # theta^j / j!
        j = 0
        while True:
            if j % 2 == 0:
                cs += (-1) ** (j // 2) * term / (k + j + 1)
            else:
                ss += (-1) ** (j // 2) * term / (k + j + 1)
            j += 1
            term *= theta / j
            if j > theta and term < 1e-18:
                break
        C[k], Sn[k] = cs, ss
    return C, Sn


def unit_inner(u: UnitFunction, v: UnitFunction) -> float:
    """integral over [0, 1] of u(a) v(a)."""
    p, q = u.poly, v.poly
    total = 0.0
    for i, pi in enumerate(p):
        if pi:
            total += pi * float(np.sum(q / (i + 1 + np.arange(len(q)))))
    for poly, w in ((p, v), (q, u)):
        if not poly.any():
            continue
        for f, a, b in zip(w.freqs, w.cos_coef, w.sin_coef):
            C, Sn = _moments(len(poly) - 1, f)
            total += float(poly @ (a * C + b * Sn))
    if u.freqs.size and v.freqs.size:
        f1 = u.freqs[:, None]
        f2 = v.freqs[None, :]
        dm, dp = f1 - f2, f1 + f2
        cc = 0.5 * (_sinc(dm) + _sinc(dp))
        ss = 0.5 * (_sinc(dm) - _sinc(dp))
        sc = 0.5 * (_cosc(dp) + _cosc(dm))   # sin(f1 a) cos(f2 a)
        cs = 0.5 * (_cosc(dp) - _cosc(dm))   # cos(f1 a) sin(f2 a)
        a1, b1 = u.cos_coef[:, None], u.sin_coef[:, None]
        a2, b2 = v.cos_coef[None, :], v.sin_coef[None, :]
        total += float(np.sum(a1 * a2 * cc + b1 * b2 * ss + b1 * a2 * sc + a1 * b2 * cs))
    return total


def unit_inner_lambda(u: UnitFunction, v: UnitFunction, lam: float) -> float:
    """<u, v> + lam <u, S v>."""
    return unit_inner(u, v) + lam * unit_inner(u, S(v))


def unit_norm(u: UnitFunction) -> float:
    return math.sqrt(max(unit_inner(u, u), 0.0))


def even_part(u):
    return (u + S(u)) * 0.5


def odd_part(u):
    return (u - S(u)) * 0.5


def u_basis(lam: float, n: int):
    """(u_{lam,n}, mu_{lam,n}): the J_lambda eigenfunction
    sqrt(2)/sin(w) * sin((w + 2 pi n) a) with w = arccos(lam).
    """
    if not -1.0 < lam < 1.0:
        raise ValueError(f"|lambda| < 1 required, got {lam}")
    w = math.acos(lam)
    theta = w + 2 * math.pi * n
    u = UnitFunction.sin(theta, math.sqrt(2.0) / math.sin(w))
    return u, math.sin(w) / theta


def random_unit_function(rng, n_poly=3, n_trig=3, max_freq=15.0):
    """Random element of the class, used by the property tests and checks."""
    poly = rng.normal(size=rng.integers(1, n_poly + 1))
    trig = {float(f): (float(rng.normal()), float(rng.normal()))
            for f in rng.uniform(0.1, max_freq, size=rng.integers(0, n_trig + 1))}
    return UnitFunction.make(poly, trig)
