"""Odd and even flows on finite networks and the resulting basis of the
orthogonal complement of the interpolation space (part of ker A).

A flow is stored as one value per unoriented edge, taken along the canonical
orientation; parity decides the value on the reversed edge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import EdgeField
from .linalg import gram_schmidt
from .network import Network, bipartite_classes, spanning_tree_and_cycles
from .unitfunc import UnitFunction

KIRCHHOFF_TOL = 1e-9


class FlowConstructionError(RuntimeError):
    """A constructed flow violated Kirchhoff's law or its parity."""


@dataclass(frozen=True)
class Flow:
    values: np.ndarray   # value on each canonical oriented edge
    parity: str          # "odd" or "even"

    def value(self, net: Network, x: int, y: int) -> float:
        e = net.edge_between(x, y).index
        v = self.values[e]
        if net.tails[e] != x and self.parity == "odd":
            return -v
        return v

    def to_json(self, net: Network) -> dict:
        out = {}
        for e, v in enumerate(self.values):
            a, b = net.vertices[int(net.tails[e])], net.vertices[int(net.heads[e])]
            out[f"{a}->{b}"] = float(v)
            out[f"{b}->{a}"] = float(-v if self.parity == "odd" else v)
        return {"parity": self.parity, "values": out}


@dataclass(frozen=True)
class FlowBasis:
    parity: str
    flows: tuple
    flagged: tuple = ()
    fallback: bool = False      # True when the oracle replaced a failed construction

    @property
    def dimension(self) -> int:
        return len(self.flows)

    def matrix(self) -> np.ndarray:
        """Flows as rows."""
        if not self.flows:
            return np.zeros((0, 0))
        return np.array([f.values for f in self.flows])


def resistance_inner(net: Network, phi: Flow, psi: Flow) -> float:
    """(1/2) sum over oriented edges of phi psi / c."""
    if phi.parity != psi.parity:
        return 0.0
    return float(np.sum(phi.values * psi.values / net.conductances))


def _res_inner(net):
    r = 1.0 / net.conductances
    return lambda a, b: float(np.sum(a * b * r))


def kirchhoff_residual(net: Network, phi: Flow) -> float:
    """max over x of |sum_y phi(xy)|."""
    out = np.zeros(net.n_vertices)
    v = phi.values
    np.add.at(out, net.tails, v)
    np.add.at(out, net.heads, -v if phi.parity == "odd" else v)
    return float(np.max(np.abs(out))) if out.size else 0.0


def _edge_value_setter(net, values, parity):
    def put(x, y, val):
        e = net.edge_between(x, y).index
        if parity == "odd" and net.tails[e] != x:
            val = -val
        values[e] += val
    return put


def cycle_flow(net: Network, cycle) -> Flow:
    """+1 along each step x_i -> x_{i+1} of the closed vertex sequence."""
    cycle = [net.vertex_index(x) for x in cycle]
    if cycle[0] != cycle[-1] or len(cycle) < 4:
        raise ValueError("cycle must be closed with at least 3 edges")
    values = np.zeros(net.n_edges)
    put = _edge_value_setter(net, values, "odd")
    for a, b in zip(cycle[:-1], cycle[1:]):
        put(a, b, 1.0)
    return Flow(values, "odd")


def _alternating_cycle(net, cycle, start_edge_value=1.0):
    """Even flow alternating +-s around an even closed vertex sequence."""
    values = np.zeros(net.n_edges)
    put = _edge_value_setter(net, values, "even")
    s = start_edge_value
    for a, b in zip(cycle[:-1], cycle[1:]):
        put(a, b, s)
        s = -s
    return values


def _check(net, phi: Flow, what: str):
    res = kirchhoff_residual(net, phi)
    if res > KIRCHHOFF_TOL:
        raise FlowConstructionError(f"{what}: Kirchhoff residual {res:.3e}")


def bipartite_transform(net: Network, phi: Flow) -> Flow:
    """(-1)^i phi(xy) for x in class C_i; swaps odd and even flows."""
    colour = bipartite_classes(net)
    if colour is None:
        raise ValueError("network is not bipartite")
    # class index i = colour + 1 of the canonical tail
    sign = np.where(colour[net.tails] == 0, -1.0, 1.0)
    new_parity = "even" if phi.parity == "odd" else "odd"
    return Flow(sign * phi.values, new_parity)


def odd_flow_basis(net: Network, orthonormal: bool = True) -> FlowBasis:
    tree = spanning_tree_and_cycles(net)
    flows = [cycle_flow(net, c) for c in tree.cycles]
    for f in flows:
        _check(net, f, "cycle flow")
    return _finish(net, "odd", flows, orthonormal)


def _even_raw_flows(net: Network):
    """Flows of the even-cycle decomposition, each with value 1 on its generating edge.

    Returns the flows, their generating edges and the flagged generating edges.
    """
    tree = spanning_tree_and_cycles(net)
    flows, gens, flagged = [], [], []
    odd = [(edge, cyc) for edge, cyc in zip(tree.non_tree_edges, tree.cycles)
           if (len(cyc) - 1) % 2 == 1]
    for edge, cyc in zip(tree.non_tree_edges, tree.cycles):
        if (len(cyc) - 1) % 2 == 0:
            vals = _alternating_cycle(net, cyc)
            flows.append(Flow(_normalise_on(vals, edge.index), "even"))
            gens.append(edge.index)
    if odd:
        (edge0, c0), rest = odd[0], odd[1:]
        for edge, c in rest:
            vals, flag = _paired_odd_cycles(net, tree, c0, c)
            phi = Flow(_normalise_on(vals, edge.index), "even")
            flows.append(phi)
            gens.append(edge.index)
            if flag:
                flagged.append(edge.index)
    return flows, gens, flagged


def _normalise_on(vals, e):
    if abs(vals[e]) < 1e-12:
        raise FlowConstructionError("constructed flow vanishes on its generating edge")
    return vals / vals[e]


def _paired_odd_cycles(net, tree, c0, c):
    """Even flow supported on two odd fundamental cycles (and a tree path).

    Returns ``(values, flagged)``; ``flagged`` marks cycles that share
    exactly one vertex and no edge.
    """
    edges0 = _cycle_edges(net, c0)
    edges1 = _cycle_edges(net, c)
    shared = edges0 & edges1
    if shared:
        # theta graph: the symmetric difference is an even cycle, alternate on it
        sym = edges0 ^ edges1
        loop = _walk_cycle(net, sym)
        return _alternating_cycle(net, loop), False

    verts0 = list(dict.fromkeys(c0[:-1]))
    verts1 = list(dict.fromkeys(c[:-1]))
    set0, set1 = set(verts0), set(verts1)
    common = set0 & set1
    if common:
        a = b = next(v for v in verts0 if v in common)
        path = [a]
        flagged = True
    else:
        path = tree.tree_path(verts0[0], verts1[0])
        i = max(k for k, v in enumerate(path) if v in set0)
        j = min(k for k, v in enumerate(path) if v in set1 and k >= i)
        path = path[i: j + 1]
        a, b = path[0], path[-1]
        flagged = False

    values = np.zeros(net.n_edges)
    put = _edge_value_setter(net, values, "even")
    # alternate +-1 around c0 starting at a: vertex a collects 2s, others 0
    _put_alternating_from(put, c0, a, 1.0)
    # path edges alternate -+2 so that a balances and interior vertices cancel
    s = -2.0
    for u, v in zip(path[:-1], path[1:]):
        put(u, v, s)
        s = -s
    # c cancels what arrives at b: the last path value, or c0's 2 if a == b
    arriving = -s if len(path) > 1 else 2.0
    _put_alternating_from(put, c, b, -arriving / 2.0)
    return values, flagged


def _put_alternating_from(put, cycle, start, s):
    seq = list(cycle[:-1])
    k = seq.index(start)
    seq = seq[k:] + seq[:k] + [start]
    for u, v in zip(seq[:-1], seq[1:]):
        put(u, v, s)
        s = -s


def _cycle_edges(net, cycle):
    return {net.edge_between(a, b).index for a, b in zip(cycle[:-1], cycle[1:])}


def _walk_cycle(net, edge_set):
    """Closed vertex sequence through a set of edges forming one simple cycle."""
    nbrs = {}
    for e in edge_set:
        a, b = int(net.tails[e]), int(net.heads[e])
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    start = min(nbrs)
    seq = [start]
    prev, cur = None, start
    while True:
        nxt = [v for v in nbrs[cur] if v != prev]
        nxt = nxt[0] if prev is not None else min(nbrs[cur])
        if nxt == start:
            seq.append(start)
            break
        seq.append(nxt)
        prev, cur = cur, nxt
        if len(seq) > len(edge_set) + 1:
            raise FlowConstructionError("edge set is not a single cycle")
    if len(seq) - 1 != len(edge_set):
        raise FlowConstructionError("edge set is not a single cycle")
    return seq


def even_flow_basis(net: Network, orthonormal: bool = True) -> FlowBasis:
    """Even flows from even fundamental cycles and pairs of odd ones.

    A flow from two odd cycles meeting in a single vertex is the one case the
    construction is not pinned down for; if such a flow ever fails the
    Kirchhoff check the null-space oracle basis is returned instead, flagged.
    Any other failure is a construction bug and raises.
    """
    flows, gens, flagged = _even_raw_flows(net)
    for f, e in zip(flows, gens):
        try:
            _check(net, f, "even flow")
        except FlowConstructionError:
            if e not in flagged:
                raise
            oracle = flow_nullspace_oracle(net, "even")
            return FlowBasis("even", oracle.flows, tuple(flagged), fallback=True)
    basis = _finish(net, "even", flows, orthonormal)
    return FlowBasis(basis.parity, basis.flows, tuple(flagged))


def _finish(net, parity, flows, orthonormal):
    if not orthonormal:
        return FlowBasis(parity, tuple(flows))
    vecs = gram_schmidt([f.values for f in flows], _res_inner(net))
    if len(vecs) != len(flows):
        raise FlowConstructionError(f"{parity} flows are linearly dependent")
    return FlowBasis(parity, tuple(Flow(v, parity) for v in vecs))


def incidence_constraints(net: Network, parity: str) -> np.ndarray:
    """Vertex-by-edge matrix of Kirchhoff's law for canonical edge values."""
    K = np.zeros((net.n_vertices, net.n_edges))
    e = np.arange(net.n_edges)
    K[net.tails, e] = 1.0
    K[net.heads, e] = -1.0 if parity == "odd" else 1.0
    return K


def nullspace_gauss(K: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Null-space basis (as rows) by Gaussian elimination with partial pivoting."""
    A = np.array(K, dtype=float)
    rows, cols = A.shape
    pivots = []
    r = 0
    for col in range(cols):
        if r >= rows:
            break
        p = r + int(np.argmax(np.abs(A[r:, col])))
        if abs(A[p, col]) <= tol:
            continue
        A[[r, p]] = A[[p, r]]
        A[r] /= A[r, col]
        for i in range(rows):
            if i != r and A[i, col] != 0.0:
                A[i] -= A[i, col] * A[r]
        pivots.append(col)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols)
        v[f] = 1.0
        for i, pc in enumerate(pivots):
            v[pc] = -A[i, f]
        basis.append(v)
    return np.array(basis).reshape(len(basis), cols)


def flow_nullspace_oracle(net: Network, parity: str) -> FlowBasis:
    """Independent flow basis from the null space of the incidence constraints."""
    raw = nullspace_gauss(incidence_constraints(net, parity))
    vecs = gram_schmidt(list(raw), _res_inner(net))
    return FlowBasis(parity, tuple(Flow(v, parity) for v in vecs))


def span_residual(net: Network, A: FlowBasis, B: FlowBasis) -> float:
    """Largest residual of projecting a flow of one basis onto the other span.

    Both bases must be orthonormal in the resistance inner product.
    """
    inner = _res_inner(net)
    worst = 0.0
    for X, Y in ((A, B), (B, A)):
        for f in X.flows:
            v = f.values.copy()
            for g in Y.flows:
                v = v - inner(v, g.values) * g.values
            worst = max(worst, math.sqrt(max(inner(v, v), 0.0)))
    return worst


def expected_dimensions(net: Network) -> tuple[int, int]:
    """(dim odd flows, dim even flows) for a finite connected network."""
    b = net.cyclomatic_number
    bip = bipartite_classes(net) is not None
    return b, b - 1 + int(bip)


def mperp_basis(net: Network, n_max: int, odd: FlowBasis | None = None,
                even: FlowBasis | None = None) -> list:
    """Orthonormal kernel fields built from orthonormal flow bases.

    Returns ``(field, label)`` pairs with labels ``("even", m, n)`` or
    ``("odd", m, n)``.
    """
    odd = odd if odd is not None else odd_flow_basis(net)
    even = even if even is not None else even_flow_basis(net)
    r = 1.0 / net.conductances
    out = []
    two = math.sqrt(2.0)
    for m, phi in enumerate(even.flows):
        for n in range(0, n_max + 1):
            funcs = []
            for e in range(net.n_edges):
                k = phi.values[e] * r[e]
                funcs.append(UnitFunction.constant(k) if n == 0
                             else UnitFunction.cos(2 * math.pi * n, two * k))
            out.append((EdgeField(net, tuple(funcs)), ("even", m, n)))
    for m, phi in enumerate(odd.flows):
        for n in range(1, n_max + 1):
            funcs = tuple(UnitFunction.sin(2 * math.pi * n, two * phi.values[e] * r[e])
                          for e in range(net.n_edges))
            out.append((EdgeField(net, funcs), ("odd", m, n)))
    return out
