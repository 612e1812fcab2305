"""Orthonormal eigenbasis of A on a finite network, and its verification."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import EdgeField, apply_A, field_gram, field_norm, interpolate
from .flows import even_flow_basis, mperp_basis, odd_flow_basis
from .network import Network, bipartite_classes, total_measures
from .quadrature import discretize_A
from .spectral_map import spectrum_A_finite
from .spectrum import SpectrumP
from .unitfunc import UnitFunction, u_basis

DEFAULT_BASIS_N_MAX = 3
SIN_FLOOR = 1e-6


class ConditioningError(ValueError):
    """An eigenvalue of P is too close to +-1 to normalise its eigenfunctions."""


@dataclass(frozen=True)
class EigenField:
    field: EdgeField
    mu: float
    provenance: tuple

    def to_json(self) -> dict:
        return {"mu": self.mu, "provenance": list(self.provenance), **self.field.to_json()}


def assemble_basis(net: Network, sp: SpectrumP, n_max: int = DEFAULT_BASIS_N_MAX) -> list:
    """Eigenfields of A spanning the interpolation space, |n| <= n_max.

    Order: the constant field, the H1 cosines, the H-1 sines (bipartite
    only), then for every eigenpair with |lambda| < 1 the fields
    F_{g_j, u_{lambda_j, n}} for n = -n_max..n_max.
    """
    _, m1 = total_measures(net)
    scale = 1.0 / math.sqrt(m1)
    two = math.sqrt(2.0)
    E = net.n_edges
    out = [EigenField(EdgeField(net, (UnitFunction.constant(scale),) * E), 1.0, ("constant", 1, 0))]
    for n in range(1, n_max + 1):
        f = UnitFunction.cos(2 * math.pi * n, two * scale)
        out.append(EigenField(EdgeField(net, (f,) * E), 0.0, ("H1 cosine", n)))
    colour = bipartite_classes(net)
    if colour is not None:
        # (-1)^{i(x)} with i = 1 on the class of the first vertex
        sign = np.where(colour[net.tails] == 0, -1.0, 1.0)
        for n in range(1, n_max + 1):
            funcs = tuple(UnitFunction.sin(2 * math.pi * n, two * scale * s) for s in sign)
            out.append(EigenField(EdgeField(net, funcs), 0.0, ("H-1 sine", n)))
    for j in sp.interior():
        lam = float(sp.values[j])
        if math.sin(math.acos(lam)) < SIN_FLOOR:
            raise ConditioningError(f"lambda_{j} = {lam!r} is within conditioning range of +-1")
        g = sp.vectors[:, j]
        for n in range(-n_max, n_max + 1):
            u, m = u_basis(lam, n)
            out.append(EigenField(interpolate(net, g, u), m, ("pair", j, n)))
    return out


def kernel_fields(net: Network, n_max: int = DEFAULT_BASIS_N_MAX) -> list:
    """Orthonormal fields of the flow part of ker A, as EigenFields with mu = 0."""
    return [EigenField(F, 0.0, ("flow",) + label) for F, label in mperp_basis(net, n_max)]


def expected_basis_size(net: Network, sp: SpectrumP, n_max: int) -> int:
    bip = bipartite_classes(net) is not None
    return 1 + n_max + n_max * int(bip) + len(sp.interior()) * (2 * n_max + 1)


def verify_eigenbasis(net: Network, basis, extra=()) -> dict:
    """Gram deviation and eigen-residuals of a list of EigenFields."""
    fields = list(basis) + list(extra)
    G = field_gram([b.field for b in fields])
    gram_dev = float(np.max(np.abs(G - np.eye(len(fields))))) if fields else 0.0
    residuals = [field_norm(apply_A(b.field) - b.field * b.mu) for b in fields]
    return {
        "n_fields": len(fields),
        "gram_deviation": gram_dev,
        "max_eigen_residual": max(residuals, default=0.0),
        "max_norm_deviation": float(np.max(np.abs(np.diag(G) - 1.0))) if fields else 0.0,
    }


def kernel_summary(net: Network, sp: SpectrumP, n_max: int = DEFAULT_BASIS_N_MAX) -> dict:
    """Count independent kernel fields of A by source, for |n| <= n_max."""
    bip = bipartite_classes(net) is not None
    d_odd = odd_flow_basis(net).dimension
    d_even = even_flow_basis(net).dimension
    return {
        "h1_cosines": n_max,
        "hminus1_sines": n_max if bip else 0,
        "flow_fields": d_even * (n_max + 1) + d_odd * n_max,
        "d_even": d_even,
        "d_odd": d_odd,
        "zero_in_point_spectrum": True,
        "is_tree": net.cyclomatic_number == 0,
    }


def compare_with_oracle(net: Network, sp: SpectrumP, M: int = 64, threshold: float = 0.01,
                        tol: float = 1e-5, n_check: int = 2, eigenvalues=None) -> dict:
    """Match quadrature-oracle eigenvalues against the predicted atoms.

    Every oracle eigenvalue with |mu| > threshold must lie within ``tol`` of a
    predicted atom with matching multiplicity, and every predicted atom with
    |mu| > threshold and |n| <= n_check must appear in the oracle spectrum.
    Precomputed oracle ``eigenvalues`` may be passed to skip the solve.
    """
    # every atom with |mu| > threshold has |w + 2 pi n| < 1/threshold
    n_pred = int(math.ceil(1.0 / threshold / (2 * math.pi))) + 1
    desc = spectrum_A_finite(sp, n_max=n_pred)
    atoms = [(a.mu, a.multiplicity, a.provenance) for a in desc.atoms]
    ev = discretize_A(net, M).eigenvalues() if eigenvalues is None else np.asarray(eigenvalues)
    big = ev[np.abs(ev) > threshold]

    unmatched, mult_mismatch = [], []
    worst = 0.0
    atom_vals = np.array([a[0] for a in atoms])
    for x in big:
        d = np.abs(atom_vals - x)
        k = int(np.argmin(d))
        worst = max(worst, float(d[k]))
        if d[k] > tol:
            unmatched.append(float(x))
    for value, mult, prov in atoms:
        if abs(value) <= threshold + tol:
            continue
        count = int(np.sum(np.abs(ev - value) <= tol))
        if count != mult:
            mult_mismatch.append((value, mult, count))
    missing = []
    for value, mult, prov in atoms:
        if abs(value) <= threshold:
            continue
        if all(p[0] == "lambda=1" or abs(p[1]) <= n_check for p in prov):
            if np.min(np.abs(ev - value)) > tol:
                missing.append(value)
    return {
        "oracle_count": int(big.size),
        "max_match_error": worst,
        "unmatched": unmatched,
        "multiplicity_mismatch": mult_mismatch,
        "missing_atoms": missing,
        "ok": not unmatched and not mult_mismatch and not missing,
    }


def ring_exponential_overlap(net: Network, basis, N: int) -> float:
    """Residual of the cycle-graph basis against translated exponentials.

    On the cycle 0-1-...-N-1 every pair field F^{(j,n)} should lie in the
    span of Re and Im of exp(i k (x + t) 2 pi / N) with k = +-(j' + nN) for
    the lambda-class of j. Returns the largest projection residual.
    """
    worst = 0.0
    pairs = [b for b in basis if b.provenance[0] == "pair"]
    for b in pairs:
        targets = []
        for k in _ring_wavenumbers(b.mu, N):
            theta = 2 * math.pi * k / N
            cos_f, sin_f = [], []
            for x, y in zip(net.tails, net.heads):
                x, y = int(x), int(y)
                # the closing edge [0, N-1] runs backwards from 0
                direction = 1.0 if (y - x) % N == 1 else -1.0
                start = x
                cos_f.append(_shifted_exp(theta, start, direction, real=True))
                sin_f.append(_shifted_exp(theta, start, direction, real=False))
            targets.append(EdgeField(net, tuple(cos_f)))
            targets.append(EdgeField(net, tuple(sin_f)))
        coef = np.linalg.lstsq(field_gram(targets), field_gram(targets + [b.field])[:-1, -1],
                               rcond=None)[0]
        rest = b.field
        for a, T in zip(coef, targets):
            rest = rest - T * a
        worst = max(worst, field_norm(rest))
    return worst


def _ring_wavenumbers(value, N):
    """Integers k with sinc(2 pi k / N) equal to ``value``, |k| small."""
    out = []
    for k in range(-20 * N, 20 * N + 1):
        if k == 0:
            continue
        w = 2 * math.pi * k / N
        if abs(math.sin(w) / w - value) < 1e-10:
            out.append(k)
    return out


def _shifted_exp(theta, start, direction, real):
    """cos or sin of theta * (start + direction * t) as a UnitFunction in t."""
    c0, s0 = math.cos(theta * start), math.sin(theta * start)
    f = theta * direction
    # cos(theta s + f t) = c0 cos(f t) - s0 sin(f t); sin(...) = s0 cos(f t) + c0 sin(f t)
    if real:
        return UnitFunction.make(trig={f: (c0, -s0)})
    return UnitFunction.make(trig={f: (s0, c0)})


def completeness_check(net: Network, sp: SpectrumP, basis, M: int = 64, tol: float = 1e-5,
                       eigenvalues=None) -> dict:
    """Oracle eigenvalues above the truncation level against assembled fields.

    Every oracle eigenvalue with |mu| above the largest |mu_{lambda,n_max}|
    left out of the basis must be matched by exactly as many basis fields.
    """
    n_max = max((b.provenance[2] for b in basis if b.provenance[0] == "pair"), default=0)
    cut = 0.0
    for j in sp.interior():
        w = math.acos(float(sp.values[j]))
        for n in (n_max + 1, -n_max - 1):
            cut = max(cut, abs(math.sin(w) / (w + 2 * math.pi * n)))
    mus = np.array([b.mu for b in basis])
    ev = discretize_A(net, M).eigenvalues() if eigenvalues is None else np.asarray(eigenvalues)
    ev = ev[np.abs(ev) > cut + tol]
    bad = []
    for x in np.unique(np.round(ev, 7)):
        k_oracle = int(np.sum(np.abs(ev - x) <= tol))
        k_basis = int(np.sum(np.abs(mus - x) <= tol))
        if k_oracle != k_basis:
            bad.append((float(x), k_oracle, k_basis))
    return {"cut": cut, "checked": int(ev.size), "mismatch": bad, "ok": not bad}


def ring_kernel_overlap(net: Network, N: int, n_max: int = DEFAULT_BASIS_N_MAX) -> dict:
    """Compare the flow kernel fields of the cycle with its kernel exponentials.

    The exponentials exp(i k (x + t) 2 pi / N) lie in ker A when 2k/N is a
    nonzero integer. Both families are reported with their Gram overlap and
    the residual of each flow field after projection onto the exponentials
    with |k| <= K; for even N the even flow fields are only reached in the
    limit K -> infinity.
    """
    flows = kernel_fields(net, n_max)
    exps = []
    step = N / 2.0
    kmax = (2 * n_max + 4) * N
    for m in range(1, int(kmax / step) + 1):
        if (m * N) % 2:
            continue
        k = m * N // 2
        theta = 2 * math.pi * k / N
        for real in (True, False):
            funcs = tuple(_shifted_exp(theta, int(x), 1.0 if (int(y) - int(x)) % N == 1 else -1.0, real)
                          for x, y in zip(net.tails, net.heads))
            exps.append(EdgeField(net, funcs))
    G = field_gram([f.field for f in flows] + exps)
    nf = len(flows)
    overlap = G[:nf, nf:]
    T = G[nf:, nf:]
    residuals = []
    for i in range(nf):
        coef = np.linalg.lstsq(T, overlap[i], rcond=None)[0]
        residuals.append(math.sqrt(max(G[i, i] - overlap[i] @ coef, 0.0)))
    return {"flow_labels": [f.provenance for f in flows], "n_exponentials": len(exps),
            "overlap": overlap, "projection_residuals": residuals}
