import json
import random
from pathlib import Path

import pytest

from segtower.graph import build_graph, graph_from_json

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name):
    """Returns (graph, ramification, voltage) for a fixture file."""
    with open(FIXTURES / name) as fh:
        return graph_from_json(json.load(fh))


def fixture_path(name):
    return str(FIXTURES / name)


def all_fixture_names():
    return sorted(p.name for p in FIXTURES.glob("*.json"))


def random_connected_graph(rng, max_vertices=8, max_edges=14):
    """Random connected multigraph (loops and parallel edges allowed)."""
    while True:
        nv = rng.randint(2, max_vertices)
        vertices = [f"v{i}" for i in range(nv)]
        ne = rng.randint(nv - 1, max_edges)
        edges = []
        # random spanning tree first so connectivity is likely
        for i in range(1, nv):
            edges.append((f"v{rng.randrange(i)}", f"v{i}", f"t{i}"))
        for i in range(ne - (nv - 1)):
            u = rng.randrange(nv)
            v = rng.randrange(nv)
            edges.append((f"v{u}", f"v{v}", f"x{i}"))
        g = build_graph(vertices, edges)
        if g.connected():
            return g


@pytest.fixture
def rng():
    return random.Random(20260824)
