import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gonlab.graph import Multigraph, named_graph
from gonlab.randgraph import ConfigModelParams, sample_configuration


def complete_graph(n: int) -> Multigraph:
    return Multigraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def erdos_renyi_connected(n: int, p: float, seed: int) -> Multigraph | None:
    """Simple G(n, p) sample; None when disconnected."""
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    if not edges:
        return None
    g = Multigraph.from_edges(n, edges)
    return g if g.is_connected() else None


def small_connected_corpus(min_count: int = 200):
    """Seeded corpus for the property suites: configuration-model samples
    with k in {2, 3, 4} plus Erdos-Renyi fillers, all connected, n <= 10."""
    graphs = []
    for k in (2, 3, 4):
        for n in range(4, 11):
            if (k * n) % 2 != 0:
                continue
            for attempt in range(4):
                params = ConfigModelParams(k=k, n=n, seed=1000 * k + 10 * n + attempt)
                g = sample_configuration(params)
                if g.is_connected():
                    graphs.append(g)
    seed = 0
    while len(graphs) < min_count:
        n = 4 + seed % 7
        p = (0.3, 0.45, 0.6)[seed % 3]
        g = erdos_renyi_connected(n, p, seed=777 + seed)
        if g is not None:
            graphs.append(g)
        seed += 1
    return graphs


@pytest.fixture(scope="session")
def pappus() -> Multigraph:
    return named_graph("pappus")


@pytest.fixture(scope="session")
def corpus():
    return small_connected_corpus()
