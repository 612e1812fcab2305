"""Correspondence lambda -> mu between spec(P) and spec(A), and closed-form
spectra for the infinite families (line, cycle, homogeneous tree,
Diestel-Leader graphs).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

ATOM_MERGE_TOL = 1e-12
DEFAULT_N_MAX = 8
DEFAULT_N_CAP = 64


def mu(lam: float, n: int) -> float:
    """sin(w) / (w + 2 pi n) with w = arccos(lam).

    ``lam = 1`` is accepted only for ``n = 0`` (continuous extension, value 1);
    ``lam = -1`` is never accepted.
    """
    lam = float(lam)
    n = int(n)
    if not -1.0 <= lam <= 1.0:
        raise ValueError(f"lambda={lam} outside [-1, 1]")
    if lam == 1.0:
        if n != 0:
            raise ValueError("lambda=1 only allowed with n=0")
        return 1.0
    if lam == -1.0:
        raise ValueError("lambda=-1 has no mu-image")
    w = math.acos(lam)
    return math.sin(w) / (w + 2.0 * math.pi * n)


def sinc(w: float) -> float:
    """sin(w)/w with the value 1 at 0."""
    return 1.0 if w == 0 else math.sin(w) / w


def spectral_radius_A(rho: float) -> float:
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho={rho} outside [0, 1]")
    if rho == 1.0:
        return 1.0
    return math.sqrt(1.0 - rho * rho) / math.acos(rho)


# --- tan w = w -------------------------------------------------------------

def _tan_fixed_point_f(w):
    return math.sin(w) - w * math.cos(w)


def tan_root(k: int, tol: float = 1e-14) -> float:
    """Root of tan w = w in (k pi, k pi + pi/2), k >= 1.

    Bisection on sin w - w cos w to a narrow bracket, then Newton.
    """
    if k < 1:
        raise ValueError("k >= 1 required")
    lo, hi = k * math.pi, k * math.pi + math.pi / 2
    flo = _tan_fixed_point_f(lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = _tan_fixed_point_f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < 1e-6:
            break
    w = 0.5 * (lo + hi)
    for _ in range(50):
        f = _tan_fixed_point_f(w)
        step = f / (w * math.sin(w))  # f'(w) = w sin w
        w_new = min(max(w - step, lo), hi)
        if abs(w_new - w) <= tol * w:
            w = w_new
            break
        w = w_new
    return w


def omega_star(tol: float = 1e-12) -> float:
    """Smallest positive solution of tan w = w (about 4.4934)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = tan_root(1)
    for _ in range(20):
        if abs(_tan_fixed_point_f(w)) <= tol:
            break
        w -= _tan_fixed_point_f(w) / (w * math.sin(w))
    return w


def line_spectrum() -> dict:
    """spec(A) on the integer line: the interval [sin(w*)/w*, 1]."""
    w = omega_star()
    return {"family": "line", "intervals": [[math.sin(w) / w, 1.0]], "point_spectrum": [],
            "omega_star": w}


# --- finite networks ---------------------------------------------------------

@dataclass
class Atom:
    mu: float
    multiplicity: int | None      # None: infinite (the kernel of A)
    provenance: list = field(default_factory=list)


@dataclass
class SpectrumADescription:
    atoms: list
    contains_zero: bool
    zero_reasons: list
    contains_one: bool
    n_max: int
    family: str = "finite"

    def values(self) -> np.ndarray:
        return np.array([a.mu for a in self.atoms])

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n_max": self.n_max,
            "truncation": f"|n| <= {self.n_max}",
            "contains_zero": self.contains_zero,
            "zero_reasons": self.zero_reasons,
            "contains_one": self.contains_one,
            "atoms": [{"mu": a.mu, "multiplicity": a.multiplicity,
                       "provenance": [list(p) for p in a.provenance]} for a in self.atoms],
        }


def _merge_atoms(items, tol=ATOM_MERGE_TOL):
    """items: iterable of (mu, provenance). Merge values within tol."""
    items = sorted(items, key=lambda t: -t[0])
    atoms: list[Atom] = []
    for value, prov in items:
        if atoms and abs(atoms[-1].mu - value) <= tol:
            atoms[-1].multiplicity += 1
            atoms[-1].provenance.append(prov)
        else:
            atoms.append(Atom(value, 1, [prov]))
    return atoms


def spectrum_A_finite(sp, n_max: int = DEFAULT_N_MAX, is_tree: bool | None = None,
                      bipartite: bool | None = None) -> SpectrumADescription:
    """Nonzero spectrum of A from spec(P), with the index n truncated to |n| <= n_max.

    The atom mu = 1 comes from lambda = 1. Zero is always in the point
    spectrum of a finite network; the recorded reasons say which kernel
    sources are present.
    """
    items = []
    for j in sp.interior():
        lam = float(sp.values[j])
        for n in range(-n_max, n_max + 1):
            items.append((mu(lam, n), (j, n)))
    atoms = _merge_atoms(items)
    contains_one = bool(sp.has_plus_one)
    if contains_one:
        atoms.insert(0, Atom(1.0, 1, [("lambda=1", 0)]))
    atoms.append(Atom(0.0, None, [("kernel", 0)]))
    atoms.sort(key=lambda a: -a.mu)
    reasons = ["H1 cosines (finite total measure)"]
    if bipartite if bipartite is not None else sp.has_minus_one:
        reasons.append("H-1 sines (bipartite)")
    if is_tree is False:
        reasons.append("flow space")
    elif is_tree is None:
        reasons.append("flow space if not a tree")
    return SpectrumADescription(atoms, True, reasons, contains_one, n_max)


def mu_image_set(lams, n_max: int) -> np.ndarray:
    """Directly tabulated {0, 1} u {sin w / w : cos w = lambda} for |n| <= n_max."""
    out = [0.0]
    for lam in lams:
        lam = float(lam)
        if lam >= 1.0:
            out.append(1.0)
            continue
        if lam <= -1.0:
            continue
        base = math.acos(lam)
        for n in range(-n_max, n_max + 1):
            for w in (base + 2 * math.pi * n, -base + 2 * math.pi * n):
                if w != 0:
                    out.append(math.sin(w) / w)
    return np.array(out)


def cycle_spectrum_analytic(N: int, n_max: int = DEFAULT_N_MAX) -> SpectrumADescription:
    """Point set {sin(2 pi n/N) / (2 pi n/N)} over |n| <= n_max * N + N//2."""
    if N < 3:
        raise ValueError("N >= 3 required")
    reach = n_max * N + N // 2
    items = [(sinc(2 * math.pi * n / N), (n,)) for n in range(-reach, reach + 1)]
    atoms = _merge_atoms(items)
    zero = any(abs(a.mu) <= ATOM_MERGE_TOL for a in atoms)
    return SpectrumADescription(atoms, True, ["kernel"] if zero else ["kernel (beyond truncation)"],
                                True, n_max, family=f"cycle:{N}")


# --- homogeneous tree --------------------------------------------------------

@dataclass
class TreeAnalysis:
    q: int
    rho_P: float
    rho_A: float
    omega_rho: float
    omega_minus_rho: float
    m: list
    M: list
    n0: int | None
    n_cap: int
    min_spec: float
    case_flag: str
    intervals: list

    def to_json(self) -> dict:
        return {
            "q": self.q, "rho_P": self.rho_P, "rho_A": self.rho_A,
            "omega_rho": self.omega_rho, "omega_minus_rho": self.omega_minus_rho,
            "m": self.m, "M": self.M,
            "n0": self.n0, "n0_certified_up_to": self.n_cap,
            "min_spec": self.min_spec, "case_flag": self.case_flag,
            "intervals": self.intervals,
        }


def _abs_sinc_extrema(lo: float, hi: float, n: int):
    """(min, max) of |sin w|/w over [lo, hi] inside (n pi, (n+1) pi)."""
    f = lambda w: abs(math.sin(w)) / w  # noqa: E731
    cand = [f(lo), f(hi)]
    if n >= 1:
        r = tan_root(n)
        if lo < r < hi:
            cand.append(f(r))
    return min(cand), max(cand)


def tree_analysis(q: int, n_cap: int = DEFAULT_N_CAP) -> TreeAnalysis:
    """Interval structure of spec(A) for the homogeneous tree of degree q+1."""
    if q < 2:
        raise ValueError("q >= 2 required")
    rho = 2.0 * math.sqrt(q) / (q + 1)
    rho_a = spectral_radius_A(rho)
    w_rho = math.acos(rho)
    w_mrho = math.pi - w_rho
    ms, Ms = [], []
    for n in range(n_cap + 1):
        lo, hi = n * math.pi + w_rho, n * math.pi + w_mrho
        a, b = _abs_sinc_extrema(lo, hi, n)
        ms.append(a)
        Ms.append(b)

    def overlaps(n):
        return ms[n] <= Ms[n + 2] and ms[n + 2] <= Ms[n]

    # least n0 with [m_k, M_k] and [m_{k+2}, M_{k+2}] overlapping for n0 <= k <= n_cap - 2
    n0 = None
    for n in range(n_cap - 2, -1, -1):
        if not overlaps(n):
            break
        n0 = n

    ws = omega_star()
    if math.pi + w_rho < ws:
        case, min_spec = "interior root", math.cos(ws)
    else:
        w = math.pi + w_rho
        case, min_spec = "endpoint", math.sin(w) / w

    intervals = _tree_intervals(ms, Ms, n0)
    return TreeAnalysis(q, rho, rho_a, w_rho, w_mrho, ms, Ms, n0, n_cap, min_spec, case,
                        intervals)


def _tree_intervals(ms, Ms, n0):
    """Merged spec(A) intervals: [m_n, M_n] for even n, [-M_n, -m_n] for odd n.

    From n0 on consecutive same-parity intervals overlap and accumulate at 0,
    so their union is one interval [-M_odd, M_even] (0 included).
    """
    limit = len(ms) if n0 is None else n0
    pieces = []
    for n in range(limit):
        pieces.append([ms[n], Ms[n]] if n % 2 == 0 else [-Ms[n], -ms[n]])
    if n0 is not None:
        first_even = n0 if n0 % 2 == 0 else n0 + 1
        first_odd = n0 if n0 % 2 == 1 else n0 + 1
        pieces.append([-Ms[first_odd], Ms[first_even]])
    pieces.sort()
    merged = []
    for lo, hi in pieces:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return merged


# --- Diestel-Leader ----------------------------------------------------------

def dl_rho(q: int, r: int) -> float:
    return 2.0 * math.sqrt(q * r) / (q + r)


def dl_point_spectrum(q: int, r: int, n_max_frac: int = 6, n_max_shift: int = 2) -> dict:
    """Point spectra of P and A on DL(q, r), truncated in both indices."""
    if q < 2 or r < 2:
        raise ValueError("q, r >= 2 required")
    rho = dl_rho(q, r)
    lam_items = []
    for n in range(2, n_max_frac + 1):
        for m in range(1, n):
            lam_items.append({"m": m, "n": n, "lambda": rho * math.cos(m * math.pi / n)})
    mu_items = []
    for it in lam_items:
        lam = min(max(it["lambda"], -1.0), 1.0)
        for k in range(-n_max_shift, n_max_shift + 1):
            entry = {"m": it["m"], "n": it["n"], "k": k, "mu": mu(lam, k)}
            if q == r:
                frac = it["m"] / it["n"]
                entry["mu_closed_form"] = math.sin(frac * math.pi) / ((frac + 2 * k) * math.pi)
            mu_items.append(entry)
    return {"q": q, "r": r, "rho_P": rho, "lambda": lam_items, "mu": mu_items,
            "contains_zero": True, "truncation": {"n_max_frac": n_max_frac,
                                                 "n_max_shift": n_max_shift}}


def sinc_grid(w_min: float, w_max: float, num: int):
    """Rows (w, sin w / w) on an even grid, for plotting."""
    ws = np.linspace(w_min, w_max, num)
    return [(float(w), sinc(float(w))) for w in ws]


def lambda_images(lams, n_max: int = DEFAULT_N_MAX):
    """Rows (lambda, n, mu) for each supplied lambda in (-1, 1) and |n| <= n_max."""
    rows = []
    for lam in lams:
        if lam >= 1.0:
            rows.append((float(lam), 0, 1.0))
            continue
        if lam <= -1.0:
            continue
        for n in range(-n_max, n_max + 1):
            rows.append((float(lam), n, mu(lam, n)))
    return rows
