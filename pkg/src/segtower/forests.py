"""Spanning-tree and segmental spanning-forest counts.

kappa counts spanning trees by the matrix-tree theorem (determinant of a
Laplacian minor); forest_count_det counts spanning forests with t components,
each containing exactly one marked vertex, by deleting the t marked
rows/columns.  Every determinant route has an exhaustive-enumeration oracle
with a configurable edge cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import GraphError, Multigraph, laplacian


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ForestCount:
    value: int
    method: str  # "determinant" or "enumeration"

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, ForestCount):
            return self.value == other.value and self.method == other.method
        return NotImplemented


def _delete_rows_cols(m, indices):
    keep = [i for i in range(len(m)) if i not in indices]
    return [[m[i][j] for j in keep] for i in keep]


def kappa(g: Multigraph) -> ForestCount:
    """Number of spanning trees by matrix-tree.  A disconnected graph gives 0."""
    from .linalg import det_int

    if not g.vertices:
        raise GraphError("kappa of the empty graph")
    lap = laplacian(g)
    return ForestCount(det_int(_delete_rows_cols(lap, {0})), "determinant")


def forest_count_det(g: Multigraph, marked) -> ForestCount:
    """F_t by determinant: delete the rows/columns of the t marked vertices.

    The empty minor has determinant 1, so a graph whose vertices are all
    marked (e.g. a single edge between two marked vertices) yields 1.
    """
    from .linalg import det_int

    marked = list(marked)
    if len(marked) not in (1, 2):
        raise GraphError("marked must contain 1 or 2 vertices")
    if len(set(marked)) != len(marked):
        raise GraphError("marked vertices must be distinct")
    for v in marked:
        if not g.has_vertex(v):
            raise GraphError(f"marked vertex {v!r} is not in the graph")
    index = {v: i for i, v in enumerate(g.vertices)}
    lap = laplacian(g)
    return ForestCount(det_int(_delete_rows_cols(lap, {index[v] for v in marked})), "determinant")


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent[x]
        while p != self.parent[p]:
            self.parent[p] = self.parent[self.parent[p]]
            p = self.parent[p]
        self.parent[x] = p
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _forest_subsets(g: Multigraph, size):
    """Yield acyclic edge subsets of the given size (as tuples of Edge)."""
    edges = g.edges
    for combo in combinations(edges, size):
        uf = _UnionFind(g.vertices)
        ok = True
        for e in combo:
            if e.is_loop or not uf.union(e.u, e.v):
                ok = False
                break
        if ok:
            yield combo, uf


def kappa_enumerate(g: Multigraph, cap=20) -> ForestCount:
    """Exhaustive spanning-tree count (oracle for kappa)."""
    if len(g.edges) > cap:
        raise CapExceeded(f"{len(g.edges)} edges exceeds enumeration cap {cap}")
    size = len(g.vertices) - 1
    if size < 0:
        raise GraphError("kappa of the empty graph")
    count = sum(1 for _ in _forest_subsets(g, size))
    return ForestCount(count, "enumeration")


def enumerate_spanning_trees(g: Multigraph, cap=20):
    """All spanning trees as frozensets of edge ids."""
    if len(g.edges) > cap:
        raise CapExceeded(f"{len(g.edges)} edges exceeds enumeration cap {cap}")
    size = len(g.vertices) - 1
    return [frozenset(e.id for e in combo) for combo, _ in _forest_subsets(g, size)]


def forest_count_bruteforce(g: Multigraph, marked, cap=20) -> ForestCount:
    """Exhaustive F_t count (oracle for forest_count_det).

    Counts spanning forests with exactly t = len(marked) tree components,
    each containing exactly one marked vertex.
    """
    marked = list(marked)
    if len(marked) not in (1, 2):
        raise GraphError("marked must contain 1 or 2 vertices")
    if len(g.edges) > cap:
        raise CapExceeded(f"{len(g.edges)} edges exceeds enumeration cap {cap}")
    t = len(marked)
    size = len(g.vertices) - t
    if size < 0:
        raise GraphError("more marked vertices than vertices")
    count = 0
    for _, uf in _forest_subsets(g, size):
        # acyclic with |V| - t edges means exactly t components; they each
        # contain exactly one marked vertex iff the marked roots are distinct
        if len({uf.find(v) for v in marked}) == t:
            count += 1
    return ForestCount(count, "enumeration")
