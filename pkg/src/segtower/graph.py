"""Dart-based finite multigraphs with ramification marks.

An undirected edge is a pair of mutually inverse darts.  Loops and parallel
edges are allowed; a loop contributes 2 to the degree of its vertex.  Vertex
and edge identifiers are stable, so derived objects (segments, cover fibers)
can refer back to base objects.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    u: object
    v: object

    @property
    def is_loop(self):
        return self.u == self.v

    def other(self, w):
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise GraphError(f"vertex {w!r} is not an endpoint of edge {self.id!r}")


@dataclass(frozen=True)
class Dart:
    """One of the two orientations of an edge."""

    edge: Edge
    forward: bool

    @property
    def origin(self):
        return self.edge.u if self.forward else self.edge.v

    @property
    def terminus(self):
        return self.edge.v if self.forward else self.edge.u

    @property
    def inverse(self):
        return Dart(self.edge, not self.forward)


class Multigraph:
    """Immutable-by-convention multigraph. Do not mutate after construction."""

    def __init__(self, vertices, edges):
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate vertex id")
        vset = set(vs)
        es = tuple(edges)
        ids = [e.id for e in es]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate edge id")
        for e in es:
            if e.u not in vset or e.v not in vset:
                raise GraphError(f"edge {e.id!r} has unknown endpoint")
        self.vertices = vs
        self.edges = es
        self._edge_by_id = {e.id: e for e in es}
        incident = {v: [] for v in vs}
        for e in es:
            incident[e.u].append(e)
            incident[e.v].append(e)  # loops listed twice: degree contribution 2
        self._incident = incident

    def edge(self, edge_id) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise GraphError(f"unknown edge id {edge_id!r}") from None

    def has_vertex(self, v):
        return v in self._incident

    def darts(self):
        out = []
        for e in self.edges:
            out.append(Dart(e, True))
            out.append(Dart(e, False))
        return out

    def degree(self, v):
        return len(self._incident[v])

    def incident_edges(self, v):
        """Edges at v; loops appear twice (once per dart)."""
        return list(self._incident[v])

    def neighbors(self, v):
        """Other endpoints of non-loop edges at v (v itself for loops)."""
        return {e.other(v) for e in self._incident[v]}

    def edges_between(self, u, v):
        return [e for e in self._incident[u] if e.other(u) == v]

    def connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        todo = deque(seen)
        while todo:
            w = todo.popleft()
            for e in self._incident[w]:
                x = e.other(w)
                if x not in seen:
                    seen.add(x)
                    todo.append(x)
        return len(seen) == len(self.vertices)

    def __repr__(self):
        return f"Multigraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


class RamificationData:
    """Map vertex -> ramification depth k_v >= 0; absent vertices unramified.

    Depth 0 means totally ramified (a single vertex above at every level).
    """

    def __init__(self, depths=None):
        self.depths = {}
        for v, k in (depths or {}).items():
            k = int(k)
            if k < 0:
                raise GraphError("ramification depth must be non-negative")
            self.depths[v] = k

    @classmethod
    def totally_ramified(cls, vertices):
        return cls({v: 0 for v in vertices})

    @property
    def ramified(self):
        return tuple(self.depths)

    def is_ramified(self, v):
        return v in self.depths

    def restrict(self, vertices):
        vs = set(vertices)
        return RamificationData({v: k for v, k in self.depths.items() if v in vs})

    def __eq__(self, other):
        if not isinstance(other, RamificationData):
            return NotImplemented
        return self.depths == other.depths

    def __repr__(self):
        return f"RamificationData({self.depths})"


def build_graph(vertex_ids, edges) -> Multigraph:
    """Build a multigraph from (u, v) or (u, v, edge_id) tuples.

    Edges without an explicit id get consecutive ids e0, e1, ...
    """
    out = []
    used = set()
    auto = 0
    for spec in edges:
        if isinstance(spec, Edge):
            e = spec
        elif len(spec) == 2:
            u, v = spec
            while f"e{auto}" in used:
                auto += 1
            e = Edge(f"e{auto}", u, v)
        else:
            u, v, eid = spec
            e = Edge(eid, u, v)
        if e.id in used:
            raise GraphError(f"duplicate edge id {e.id!r}")
        used.add(e.id)
        out.append(e)
    return Multigraph(vertex_ids, out)


def laplacian(g: Multigraph, order=None):
    """Laplacian Val - A as a list of integer rows.

    Loops add 2 to both the degree and the adjacency diagonal, so they cancel.
    """
    order = list(order) if order is not None else list(g.vertices)
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    m = [[0] * n for _ in range(n)]
    for v in order:
        m[index[v]][index[v]] = g.degree(v)
    for e in g.edges:
        i, j = index[e.u], index[e.v]
        m[i][j] -= 1
        m[j][i] -= 1
    return m


def prune_tails(g: Multigraph, r: RamificationData) -> Multigraph:
    """Iteratively delete unramified vertices with a single neighbour joined
    by a single edge.  The spanning-tree count is unchanged."""
    vertices = list(g.vertices)
    edges = list(g.edges)
    while True:
        incident = {v: [] for v in vertices}
        for e in edges:
            incident[e.u].append(e)
            incident[e.v].append(e)
        victim = None
        for v in vertices:
            if r.is_ramified(v):
                continue
            es = incident[v]
            if len(es) == 1 and not es[0].is_loop:
                victim = v
                break
        if victim is None:
            break
        vertices.remove(victim)
        edges.remove(incident[victim][0])
    return Multigraph(vertices, edges)


def glue(g1: Multigraph, r1: RamificationData, g2: Multigraph, r2: RamificationData, identification):
    """Glue g2 onto g1 by identifying g ramified vertex pairs (1 <= g <= 2).

    identification is a list of (vertex_in_g1, vertex_in_g2) pairs.  Vertices
    and edges of g2 whose ids collide with g1 are renamed with a "'" suffix.
    Identified vertices keep g1's id and depth.
    """
    pairs = list(identification)
    if not 1 <= len(pairs) <= 2:
        raise GraphError("identification must list 1 or 2 vertex pairs")
    for a, b in pairs:
        if not g1.has_vertex(a) or not g2.has_vertex(b):
            raise GraphError(f"identification pair ({a!r}, {b!r}) references a missing vertex")
        if not r1.is_ramified(a) or not r2.is_ramified(b):
            raise GraphError(f"identification pair ({a!r}, {b!r}) references an unramified vertex")
    if len({a for a, _ in pairs}) != len(pairs) or len({b for _, b in pairs}) != len(pairs):
        raise GraphError("identification pairs must be distinct on both sides")

    taken = set(g1.vertices)
    vmap = {b: a for a, b in pairs}
    for v in g2.vertices:
        if v in vmap:
            continue
        name = v
        while name in taken:
            name = f"{name}'"
        vmap[v] = name
        taken.add(name)

    edge_ids = {e.id for e in g1.edges}
    edges = list(g1.edges)
    for e in g2.edges:
        eid = e.id
        while eid in edge_ids:
            eid = f"{eid}'"
        edge_ids.add(eid)
        edges.append(Edge(eid, vmap[e.u], vmap[e.v]))

    vertices = list(g1.vertices) + [vmap[v] for v in g2.vertices if vmap[v] not in set(g1.vertices)]
    depths = dict(r1.depths)
    for v, k in r2.depths.items():
        depths.setdefault(vmap[v], k)
    return Multigraph(vertices, edges), RamificationData(depths)


# --- shared JSON format -----------------------------------------------------

def graph_to_json(g: Multigraph, r: RamificationData, voltage=None) -> dict:
    voltage = voltage or {}
    return {
        "vertices": list(g.vertices),
        "edges": [
            {"id": e.id, "from": e.u, "to": e.v, **({"voltage": voltage[e.id]} if voltage.get(e.id) else {})}
            for e in g.edges
        ],
        "ramified": [{"vertex": v, "depth": k} for v, k in r.depths.items()],
    }


def graph_from_json(obj):
    """Parse the shared JSON format; returns (graph, ramification, voltage)."""
    if not isinstance(obj, dict):
        raise GraphError("graph JSON must be an object")
    try:
        vertices = obj["vertices"]
        raw_edges = obj["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"graph JSON missing field: {exc}") from None
    edges = []
    voltage = {}
    for i, e in enumerate(raw_edges):
        try:
            u, v = e["from"], e["to"]
        except (KeyError, TypeError):
            raise GraphError(f"edge #{i} missing from/to") from None
        eid = e.get("id", f"e{i}")
        edges.append(Edge(str(eid), u, v))
        a = int(e.get("voltage", 0))
        if a:
            voltage[str(eid)] = a
    depths = {}
    for m in obj.get("ramified", []):
        try:
            depths[m["vertex"]] = int(m.get("depth", 0))
        except (KeyError, TypeError):
            raise GraphError("ramified entries need a 'vertex' field") from None
    g = Multigraph(vertices, edges)
    return g, RamificationData(depths), voltage


def load_graph(path):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from None
    return graph_from_json(obj)
