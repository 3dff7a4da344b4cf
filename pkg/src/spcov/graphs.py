"""Unweighted graphs, BFS distance tables, diameter paths, graph rulers.

Supported families: path, cycle, star, grid, complete, and explicit edge
lists.  Everything is dense and exact; scale target is a few thousand nodes,
so BFS from every source is the simplest correct choice.

Node numbering is fixed per family so downstream block structure is
deterministic: stars put the center at 0 followed by whole branches in
order; grids are row-major.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from spcov.errors import NotConnectedError, NotRulerError, SpcovError
from spcov.rulers import Ruler

GRAPH_KINDS = ("path", "cycle", "star", "grid", "complete", "edges")


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph with the construction recipe retained.

    ``adjacency[u]`` is a sorted tuple of neighbors.  ``kind`` and
    ``params`` record how the graph was built so instances serialize
    compactly.
    """

    node_count: int
    adjacency: tuple
    kind: str
    params: tuple  # sorted (name, value) pairs for the generator

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def param(self, name: str):
        for key, value in self.params:
            if key == name:
                return value
        raise SpcovError(f"graph has no parameter {name!r}")


@dataclass(frozen=True)
class DistanceTable:
    """All-pairs shortest path distances plus the diameter and where it
    is attained (lowest (u, v) pair among maximizers)."""

    dist: np.ndarray
    diameter: int
    endpoints: tuple


@dataclass(frozen=True)
class DiameterPath:
    """Node sequence v_0..v_D realizing the diameter, one hop per step."""

    nodes: tuple


@dataclass(frozen=True)
class GraphRuler:
    """Diameter-path nodes sitting at ruler marks.

    ``nodes[k]`` is the path node at position ``positions[k]``; pairwise
    graph distances of these nodes cover {0..D} exactly because distances
    along a shortest path are position differences.
    """

    nodes: tuple
    positions: tuple
    diameter: int

    @property
    def size(self) -> int:
        return len(self.nodes)


def _adjacency_from_edges(d: int, edges) -> tuple:
    neighbor_sets = [set() for _ in range(d)]
    seen = set()
    for edge in edges:
        if len(edge) != 2:
            raise SpcovError(f"edge {edge!r} is not a pair")
        u, v = int(edge[0]), int(edge[1])
        if u == v:
            raise SpcovError(f"self-loop at node {u} is not allowed")
        if not (0 <= u < d and 0 <= v < d):
            raise SpcovError(f"edge ({u},{v}) out of range for {d} nodes")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise SpcovError(f"duplicate edge ({key[0]},{key[1]})")
        seen.add(key)
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)
    return tuple(tuple(sorted(nbrs)) for nbrs in neighbor_sets)


def _require_positive(params: dict, names) -> None:
    for name in names:
        if name not in params or params[name] is None:
            raise SpcovError(f"graph kind requires parameter {name!r}")
        if int(params[name]) < 1:
            raise SpcovError(f"parameter {name!r} must be >= 1")


def make_graph(kind: str, **params) -> Graph:
    """Build one of the supported graph families.

    path: d nodes in a line.  cycle: d >= 3 nodes in a ring.  star:
    ``branches`` >= 2 paths of ``depth`` nodes joined at a center (node 0;
    branch b occupies nodes 1 + b*depth .. (b+1)*depth, ordered by depth).
    grid: rows x cols lattice, row-major.  complete: all pairs adjacent.
    edges: explicit list, must be connected.
    """
    if kind == "path":
        _require_positive(params, ("d",))
        d = int(params["d"])
        edges = [(i, i + 1) for i in range(d - 1)]
        kept = (("d", d),)
    elif kind == "cycle":
        _require_positive(params, ("d",))
        d = int(params["d"])
        if d < 3:
            raise SpcovError("cycle requires d >= 3")
        edges = [(i, (i + 1) % d) for i in range(d)]
        kept = (("d", d),)
    elif kind == "star":
        _require_positive(params, ("branches", "depth"))
        branches = int(params["branches"])
        depth = int(params["depth"])
        if branches < 2:
            raise SpcovError("star requires branches >= 2")
        d = 1 + branches * depth
        edges = []
        for b in range(branches):
            start = 1 + b * depth
            edges.append((0, start))
            for k in range(depth - 1):
                edges.append((start + k, start + k + 1))
        kept = (("branches", branches), ("depth", depth))
    elif kind == "grid":
        _require_positive(params, ("rows", "cols"))
        rows, cols = int(params["rows"]), int(params["cols"])
        d = rows * cols
        edges = []
        for r in range(rows):
            for c in range(cols):
                node = r * cols + c
                if c + 1 < cols:
                    edges.append((node, node + 1))
                if r + 1 < rows:
                    edges.append((node, node + cols))
        kept = (("cols", cols), ("rows", rows))
    elif kind == "complete":
        _require_positive(params, ("d",))
        d = int(params["d"])
        edges = [(i, j) for i in range(d) for j in range(i + 1, d)]
        kept = (("d", d),)
    elif kind == "edges":
        _require_positive(params, ("d",))
        d = int(params["d"])
        edge_list = params.get("edges")
        if edge_list is None:
            raise SpcovError("graph kind 'edges' requires parameter 'edges'")
        edges = [(int(u), int(v)) for u, v in edge_list]
        kept = (("d", d), ("edges", tuple(sorted((min(u, v), max(u, v))
                                                 for u, v in edges))))
    else:
        raise SpcovError(f"unknown graph kind {kind!r}")

    adjacency = _adjacency_from_edges(d, edges)
    g = Graph(node_count=d, adjacency=adjacency, kind=kind, params=kept)
    if kind == "edges":
        # generators above are connected by construction; explicit lists
        # must be checked because the model assumes a single finite diameter
        if np.min(_bfs(g, 0)) < 0:
            raise NotConnectedError("edge list does not form a connected graph")
    return g


def _bfs(g: Graph, source: int) -> np.ndarray:
    dist = np.full(g.node_count, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        base = dist[u] + 1
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = base
                queue.append(w)
    return dist


def all_pairs_shortest_paths(g: Graph) -> DistanceTable:
    """BFS from every node; rejects disconnected graphs.

    The diameter endpoints are the lexicographically smallest (u, v) pair
    attaining the maximum distance, which keeps downstream path and ruler
    placement reproducible.
    """
    d = g.node_count
    dist = np.empty((d, d), dtype=np.int64)
    for u in range(d):
        row = _bfs(g, u)
        if np.min(row) < 0:
            raise NotConnectedError("graph is not connected")
        dist[u] = row
    diameter = 0
    endpoints = (0, 0)
    for u in range(d):
        for v in range(u + 1, d):
            if dist[u, v] > diameter:
                diameter = int(dist[u, v])
                endpoints = (u, v)
    dist.setflags(write=False)
    return DistanceTable(dist=dist, diameter=diameter, endpoints=endpoints)


def diameter_path(g: Graph, t: DistanceTable) -> DiameterPath:
    """Shortest path between the diameter endpoints, one node per distance.

    Walks from u toward v, always stepping to the lowest-index neighbor
    that still lies on a shortest path; dist(nodes[i], nodes[j]) = |i - j|
    for every pair on the result.
    """
    u, v = t.endpoints
    nodes = [u]
    current = u
    remaining = t.diameter
    while current != v:
        remaining -= 1
        for w in g.adjacency[current]:
            if t.dist[w, v] == remaining:
                current = w
                break
        else:  # unreachable on a valid table
            raise SpcovError("distance table inconsistent with adjacency")
        nodes.append(current)
    return DiameterPath(nodes=tuple(nodes))


def graph_sparse_ruler(g: Graph, t: DistanceTable, r: Ruler) -> GraphRuler:
    """Place ruler marks on a diameter path.

    The ruler's span must equal the graph diameter.  Returns the path nodes
    at the marked positions; their pairwise distances inherit the ruler's
    coverage of {0..D}.
    """
    if r.D != t.diameter:
        raise NotRulerError(
            f"ruler span {r.D} does not match graph diameter {t.diameter}"
        )
    path = diameter_path(g, t)
    nodes = tuple(path.nodes[p] for p in r.marks)
    return GraphRuler(nodes=nodes, positions=r.marks, diameter=t.diameter)
