"""Finite networks: connected graphs with positive edge conductances.

Vertices are addressed by string labels externally and by dense integer
indices internally, in insertion order. Every unoriented edge is stored once
in its canonical orientation ``tail -> head`` with ``tail < head``.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class NetworkError(ValueError):
    """Base class for invalid network input."""


class LoopError(NetworkError):
    pass


class DuplicateEdgeError(NetworkError):
    pass


class ConductanceError(NetworkError):
    pass


class DisconnectedError(NetworkError):
    pass


class UnknownVertexError(NetworkError, KeyError):
    pass


@dataclass(frozen=True)
class OrientedEdge:
    tail: int
    head: int
    index: int

    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.head, self.tail, self.index)


@dataclass(frozen=True, eq=False)
class Network:
    """Connected weighted graph, immutable after construction.

    Use :func:`build_network` rather than calling the constructor directly.
    """

    vertices: tuple[str, ...]
    tails: np.ndarray
    heads: np.ndarray
    conductances: np.ndarray
    adjacency: tuple[tuple[tuple[int, int], ...], ...]
    index: dict[str, int] = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.conductances)

    @property
    def m0(self) -> np.ndarray:
        """Vertex measure: total conductance at each vertex."""
        m = np.zeros(self.n_vertices)
        np.add.at(m, self.tails, self.conductances)
        np.add.at(m, self.heads, self.conductances)
        return m

    @property
    def cyclomatic_number(self) -> int:
        return self.n_edges - self.n_vertices + 1

    def vertex_index(self, x: str | int) -> int:
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            if 0 <= x < self.n_vertices:
                return int(x)
            raise UnknownVertexError(x)
        try:
            return self.index[x]
        except KeyError:
            raise UnknownVertexError(x) from None

    def edge_between(self, x: int, y: int) -> OrientedEdge:
        for nb, e in self.adjacency[x]:
            if nb == y:
                return OrientedEdge(x, y, e)
        raise KeyError((x, y))

    def edge_sign(self, x: int, e: int) -> int:
        """+1 if ``x`` is the canonical tail of edge ``e``, -1 if it is the head."""
        return 1 if self.tails[e] == x else -1

    def edge_list(self) -> list[tuple[str, str, float]]:
        return [(self.vertices[a], self.vertices[b], float(c))
                for a, b, c in zip(self.tails, self.heads, self.conductances)]

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"u": u, "v": v, "c": c} for u, v, c in self.edge_list()],
        }


def build_network(edge_list, vertices=None) -> Network:
    """Validate an edge list ``[(u, v, c), ...]`` and build a :class:`Network`.

    Vertex order is ``vertices`` if given, otherwise first appearance in the
    edge list. Raises a distinct :class:`NetworkError` subclass for loops,
    duplicate edges, bad conductances and disconnected input.
    """
    edge_list = list(edge_list)
    if not edge_list:
        raise NetworkError("empty edge list")

    labels: list[str] = [str(v) for v in vertices] if vertices is not None else []
    index = {v: i for i, v in enumerate(labels)}
    if len(index) != len(labels):
        raise NetworkError("duplicate vertex label")
    for u, v, _ in edge_list:
        for w in (str(u), str(v)):
            if w not in index:
                if vertices is not None:
                    raise UnknownVertexError(w)
                index[w] = len(labels)
                labels.append(w)

    seen = set()
    tails, heads, cs = [], [], []
    for u, v, c in edge_list:
        a, b = index[str(u)], index[str(v)]
        if a == b:
            raise LoopError(f"loop at vertex {u!r}")
        try:
            c = float(c)
        except (TypeError, ValueError):
            raise ConductanceError(f"conductance {c!r} on edge {u}-{v}") from None
        if not math.isfinite(c) or c <= 0:
            raise ConductanceError(f"conductance {c!r} on edge {u}-{v} must be positive and finite")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {u}-{v}")
        seen.add(key)
        tails.append(key[0])
        heads.append(key[1])
        cs.append(c)

    n = len(labels)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e, (a, b) in enumerate(zip(tails, heads)):
        adj[a].append((b, e))
        adj[b].append((a, e))

    reached = _bfs_order(adj, 0)
    if len(reached) != n:
        raise DisconnectedError(
            f"disconnected: {n - len(reached)} of {n} vertices unreachable from {labels[0]!r}")

    return Network(
        vertices=tuple(labels),
        tails=np.array(tails, dtype=int),
        heads=np.array(heads, dtype=int),
        conductances=np.array(cs, dtype=float),
        adjacency=tuple(tuple(a) for a in adj),
        index=index,
    )


def _bfs_order(adj, root):
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y, _ in adj[x]:
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


def vertex_measure(net: Network, x) -> float:
    i = net.vertex_index(x)
    return float(sum(net.conductances[e] for _, e in net.adjacency[i]))


def total_measures(net: Network) -> tuple[float, float]:
    """Return ``(m0(X0), m1(X1))``; the second is half the first."""
    m1 = float(np.sum(net.conductances))
    return float(np.sum(net.m0)), m1


def is_bipartite(net: Network):
    """Two-colouring ``(C1, C2)`` as sets of vertex indices, or ``None``.

    ``C1`` always contains vertex 0.
    """
    colour = bipartite_classes(net)
    if colour is None:
        return None
    c1 = {i for i in range(net.n_vertices) if colour[i] == 0}
    c2 = set(range(net.n_vertices)) - c1
    return c1, c2


def bipartite_classes(net: Network):
    """Array with entry 0 for class C1 and 1 for class C2, or ``None``."""
    colour = np.full(net.n_vertices, -1, dtype=int)
    colour[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y, _ in net.adjacency[x]:
            if colour[y] < 0:
                colour[y] = 1 - colour[x]
                queue.append(y)
            elif colour[y] == colour[x]:
                return None
    return colour


@dataclass(frozen=True)
class SpanningTreeData:
    """BFS spanning tree with its fundamental cycles.

    ``cycles[k]`` is the vertex sequence ``[x0, ..., x_m = x0]`` of the cycle
    closed by ``non_tree_edges[k]``; it traverses that edge from its tail to
    its head exactly once.
    """

    tree_edges: frozenset
    parent: tuple
    depth: tuple
    non_tree_edges: tuple[OrientedEdge, ...]
    cycles: tuple[tuple[int, ...], ...]

    def tree_path(self, x: int, y: int) -> list[int]:
        """Vertex sequence of the unique tree path from ``x`` to ``y``."""
        left, right = [x], [y]
        a, b = x, y
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
            left.append(a)
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
            right.append(b)
        while a != b:
            a = self.parent[a]
            b = self.parent[b]
            left.append(a)
            right.append(b)
        return left + right[-2::-1]


def spanning_tree_and_cycles(net: Network) -> SpanningTreeData:
    n = net.n_vertices
    parent = [-1] * n
    depth = [0] * n
    tree = set()
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y, e in net.adjacency[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                depth[y] = depth[x] + 1
                tree.add(e)
                queue.append(y)

    data = SpanningTreeData(frozenset(tree), tuple(parent), tuple(depth), (), ())
    non_tree = []
    cycles = []
    for e in range(net.n_edges):
        if e in tree:
            continue
        x, y = int(net.tails[e]), int(net.heads[e])
        non_tree.append(OrientedEdge(x, y, e))
        # tree path y -> x, then the edge x -> y closes the cycle
        path = data.tree_path(y, x)
        cycles.append(tuple(path + [y]))
    return SpanningTreeData(frozenset(tree), tuple(parent), tuple(depth),
                            tuple(non_tree), tuple(cycles))


def generate(kind: str, n: int, conductance: float = 1.0) -> Network:
    """Standard graphs with uniform conductance.

    ``cycle n`` and ``complete n`` have n vertices, ``path n`` has n vertices,
    ``star n`` has a centre with n spokes.
    """
    kind = kind.lower()
    if kind == "cycle":
        if n < 3:
            raise NetworkError("cycle needs N >= 3")
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif kind == "path":
        if n < 2:
            raise NetworkError("path needs N >= 2")
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "complete":
        if n < 3:
            raise NetworkError("complete graph needs N >= 3")
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif kind == "star":
        if n < 2:
            raise NetworkError("star needs N >= 2")
        edges = [(0, i) for i in range(1, n + 1)]
    else:
        raise NetworkError(f"unknown generator {kind!r}")
    return build_network([(str(a), str(b), conductance) for a, b in edges])


def parse_generator(spec: str, conductance: float = 1.0) -> Network:
    """Build a network from an inline ``kind:N`` string such as ``cycle:4``."""
    kind, sep, num = spec.partition(":")
    if not sep:
        raise NetworkError(f"generator must look like kind:N, got {spec!r}")
    try:
        n = int(num)
    except ValueError:
        raise NetworkError(f"generator size {num!r} is not an integer") from None
    return generate(kind, n, conductance)


def load_network(path) -> Network:
    with open(Path(path), encoding="utf-8") as fh:
        data = json.load(fh)
    return network_from_json(data)


def network_from_json(data: dict) -> Network:
    try:
        edges = [(e["u"], e["v"], e["c"]) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise NetworkError(f"malformed network JSON: {exc}") from None
    return build_network(edges, data.get("vertices"))
