"""Derived covers of voltage graphs at finite tower levels.

At level n the deck group is Z/p^n.  The fiber over a vertex v has
p^min(n, k_v) elements (k_v the ramification depth, unramified vertices
behave like k_v = infinity), and every edge fiber has p^n elements.  The
edge (e, t) joins (o(e), t mod m_o) to (t(e), (t + a_e) mod m_t) where a_e
is the voltage exponent of e and m_v the fiber modulus of v.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Edge, GraphError, Multigraph, RamificationData


@dataclass(frozen=True)
class CoverGraph:
    graph: Multigraph
    base: Multigraph
    ram: RamificationData  # residual ramification of the cover's vertices
    vertex_projection: dict  # cover vertex -> base vertex
    edge_projection: dict  # cover edge id -> base edge id
    p: int
    n: int

    def fiber(self, base_vertex):
        return [v for v in self.graph.vertices if self.vertex_projection[v] == base_vertex]


def _modulus(r: RamificationData, p: int, n: int, v) -> int:
    if r.is_ramified(v):
        return p ** min(n, r.depths[v])
    return p ** n


def build_cover(g: Multigraph, r: RamificationData, voltage, p: int, n: int) -> CoverGraph:
    """Build the level-n derived cover as an explicit multigraph.

    voltage maps base edge id to the exponent a_e carried by the edge in its
    stored direction (u -> v); the reverse dart carries -a_e.  Missing edges
    default to voltage 0.  n = 0 returns an isomorphic copy of the base.
    """
    if n < 0:
        raise GraphError("cover level must be non-negative")
    if p < 2:
        raise GraphError("p must be a prime >= 2")
    voltage = voltage or {}
    pn = p ** n
    mods = {v: _modulus(r, p, n, v) for v in g.vertices}

    vertices = [(v, i) for v in g.vertices for i in range(mods[v])]
    vproj = {cv: cv[0] for cv in vertices}
    edges = []
    eproj = {}
    for e in g.edges:
        a = voltage.get(e.id, 0)
        for t in range(pn):
            cu = (e.u, t % mods[e.u])
            cv = (e.v, (t + a) % mods[e.v])
            eid = f"{e.id}@{t}"
            edges.append(Edge(eid, cu, cv))
            eproj[eid] = e.id

    graph = Multigraph(vertices, edges)
    residual = RamificationData(
        {(v, i): max(k - n, 0) for v, k in r.depths.items() for i in range(mods[v])}
    )
    return CoverGraph(graph, g, residual, vproj, eproj, p, n)


def segment_preimage(c: CoverGraph, segment):
    """Induced subgraph of the cover over a base segment.

    Returns (graph, ramification) where the ramification marks all cover
    vertices lying over the segment's ramified endpoints.
    """
    edge_ids = set(segment.edge_ids)
    for eid in edge_ids:
        if eid not in {e.id for e in c.base.edges}:
            raise GraphError(f"segment edge {eid!r} is not an edge of the cover's base")
    edges = [e for e in c.graph.edges if c.edge_projection[e.id] in edge_ids]
    vset = []
    seen = set()
    for e in edges:
        for w in (e.u, e.v):
            if w not in seen:
                seen.add(w)
                vset.append(w)
    sub = Multigraph(vset, edges)
    marked = {v: k for v, k in c.ram.depths.items() if v in seen and c.vertex_projection[v] in segment.ramified}
    return sub, RamificationData(marked)
