"""Dense symmetric eigensolver and orthonormalisation helpers."""
from __future__ import annotations

import numpy as np


class ConvergenceError(RuntimeError):
    pass


def _round_robin(n):
    """Yield rounds of disjoint index pairs covering every pair once (n even)."""
    idx = list(range(n))
    for _ in range(n - 1):
        yield [(idx[i], idx[n - 1 - i]) for i in range(n // 2)]
        idx = [idx[0], idx[-1]] + idx[1:-1]


def _off_norm(a):
    d = a - np.diag(np.diag(a))
    return np.sqrt(np.sum(d * d))


def jacobi_eigh(a, rtol=1e-13, max_sweeps=60, vectors=True):
    """Eigen-decompose a real symmetric matrix by cyclic Jacobi rotations.

    Rotations are applied in round-robin order, so each round annihilates
    ``n/2`` disjoint off-diagonal entries at once. Sweeps stop when the
    off-diagonal Frobenius norm drops below ``rtol * ||a||_F``.

    Returns ``(w, v)`` with eigenvalues ``w`` (unsorted) and orthonormal
    eigenvectors in the columns of ``v``; ``v`` is ``None`` when
    ``vectors=False``.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("square matrix required")
    n0 = a.shape[0]
    a = 0.5 * (a + a.T)
    norm = np.linalg.norm(a)
    if norm == 0.0 or n0 == 1:
        return np.diag(a).copy(), (np.eye(n0) if vectors else None)
    if n0 % 2:
        a = np.pad(a, ((0, 1), (0, 1)))
    n = a.shape[0]
    h = n // 2
    vt = np.eye(n) if vectors else None

    # Work in a permuted frame where round k pairs slot i with slot h + i.
    # ``order[slot]`` is the original index held at that slot.
    layouts = []
    for pairs in _round_robin(n):
        layouts.append(np.array([p for p, _ in pairs] + [q for _, q in pairs]))
    order = np.arange(n)
    converged = False
    for _ in range(max_sweeps):
        if _off_norm(a) <= rtol * norm:
            converged = True
            break
        for layout in layouts:
            where = np.empty(n, dtype=int)
            where[order] = np.arange(n)
            perm = where[layout]
            a = a[np.ix_(perm, perm)]
            if vectors:
                vt = vt[perm]
            order = layout
            _rotate_pairs(a, vt, h)
    if not converged and _off_norm(a) > rtol * norm:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {_off_norm(a):.3e})")

    # undo the frame permutation; a padding coordinate is never rotated
    where = np.empty(n, dtype=int)
    where[order] = np.arange(n)
    slots = where[:n0]
    w = np.diag(a)[slots].copy()
    if not vectors:
        return w, None
    return w, vt[slots, :n0].T.copy()


def _rotate_pairs(a, vt, h):
    """Annihilate a[i, h+i] for all i < h in place."""
    idx = np.arange(h)
    app = a[idx, idx]
    aqq = a[idx + h, idx + h]
    apq = a[idx, idx + h]
    active = np.abs(apq) > 1e-300
    if not active.any():
        return
    with np.errstate(divide="ignore", invalid="ignore"):
        theta = np.where(active, (aqq - app) / (2.0 * np.where(active, apq, 1.0)), 0.0)
    theta = np.clip(theta, -1e150, 1e150)
    t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
    t[theta == 0] = 1.0
    t[~active] = 0.0
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    top, bot = a[:h], a[h:]
    new_top = c[:, None] * top - s[:, None] * bot
    bot *= c[:, None]
    bot += s[:, None] * top
    top[...] = new_top
    left, right = a[:, :h], a[:, h:]
    new_left = left * c - right * s
    right *= c
    right += left * s
    left[...] = new_left
    a[idx, idx + h] = 0.0
    a[idx + h, idx] = 0.0
    if vt is not None:
        top, bot = vt[:h], vt[h:]
        new_top = c[:, None] * top - s[:, None] * bot
        bot *= c[:, None]
        bot += s[:, None] * top
        top[...] = new_top


def gram_schmidt(vectors, inner, tol=1e-12):
    """Classical Gram-Schmidt with one re-orthogonalisation pass.

    ``inner(x, y)`` is the inner product. Vectors whose residual norm falls
    below ``tol`` are dropped as dependent.
    """
    basis = []
    for x in vectors:
        y = np.array(x, dtype=float)
        for _ in range(2):
            coeffs = [inner(y, b) for b in basis]
            for cf, b in zip(coeffs, basis):
                y = y - cf * b
        nrm = np.sqrt(max(inner(y, y), 0.0))
        if nrm < tol:
            continue
        basis.append(y / nrm)
    return basis
