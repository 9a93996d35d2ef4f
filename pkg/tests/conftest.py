"""Shared fixtures and random-instance generators for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from distsparse import EdgeFamily, WeightedGraph

# --- element-indexed families -------------------------------------------
# Set-system examples use abstract elements 1..N; we realize element e as
# the path edge (e, e+1) so families can live over a concrete graph.

EXAMPLE1_SETS = [
    {1, 2, 3},
    {2, 3, 4},
    {4, 5, 1},
    {3, 2, 6},
    {4, 7, 1},
    {2, 3},
    {5, 6, 7},
    {1, 3, 5},
    {2, 4},
]


def elem_edge(e: int) -> tuple[int, int]:
    return (e, e + 1)


def family_from_index_sets(index_sets) -> EdgeFamily:
    """Realize abstract element sets as path edges over a base graph whose
    edge set is exactly the union."""
    union = sorted(set().union(*index_sets))
    n = max(union) + 2
    base = WeightedGraph(n, tuple((e, e + 1, 1.0) for e in union))
    sets = tuple(frozenset(elem_edge(e) for e in s) for s in index_sets)
    return EdgeFamily(base, sets)


@pytest.fixture
def example1_family() -> EdgeFamily:
    return family_from_index_sets(EXAMPLE1_SETS)


# --- random graphs and coverings ----------------------------------------


def random_graph(rng, n, p=0.4, max_weight=3.0) -> WeightedGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, float(rng.uniform(0.1, max_weight))))
    if not edges:
        u, v = sorted(rng.choice(n, size=2, replace=False))
        edges.append((int(u), int(v), 1.0))
    return WeightedGraph(n, tuple(edges))


def random_covering_family(rng, g: WeightedGraph, t: int) -> EdgeFamily:
    """Random family of t nonempty subsets whose union is E(g)."""
    pairs = sorted(g.pairs())
    members = [set() for _ in range(t)]
    for p in pairs:
        home = int(rng.integers(t))
        members[home].add(p)
        for i in range(t):
            if i != home and rng.random() < 0.3:
                members[i].add(p)
    for i, s in enumerate(members):
        if not s:
            s.add(pairs[int(rng.integers(len(pairs)))])
    return EdgeFamily(g, tuple(frozenset(s) for s in members))


# --- sunflower-shaped families ------------------------------------------


def delta_system_index_sets(rng, s, kernel_size, petal_sizes=None):
    """Index sets forming a sunflower: shared kernel plus disjoint petals."""
    if petal_sizes is None:
        petal_sizes = [int(rng.integers(1, 4)) for _ in range(s)]
    kernel = list(range(1, kernel_size + 1))
    nxt = kernel_size + 1
    sets = []
    for size in petal_sizes:
        petal = list(range(nxt, nxt + size))
        nxt += size
        sets.append(set(kernel) | set(petal))
    return sets


def random_delta_family(rng, s, kernel_size=None) -> EdgeFamily:
    if kernel_size is None:
        kernel_size = int(rng.integers(0, 3))
    sets = delta_system_index_sets(rng, s, kernel_size)
    return family_from_index_sets(sets)


def uniform_star_index_sets(s, ell, lam):
    """Sunflower with kernel size lam and uniform set size ell."""
    assert 0 <= lam < ell or (lam == ell)
    kernel = list(range(1, lam + 1))
    sets = []
    nxt = lam + 1
    for _ in range(s):
        petal = list(range(nxt, nxt + (ell - lam)))
        nxt += ell - lam
        sets.append(set(kernel) | set(petal))
    return sets


def near_sunflower_index_sets(s, ell, lam):
    """One deviant pair: E_1 and E_2 share an extra element beyond the
    common kernel, all other pairwise intersections equal the kernel."""
    sets = uniform_star_index_sets(s, ell, lam)
    extra = max(max(x) for x in sets) + 1
    # swap one private petal element of sets 0 and 1 for a shared one
    for i in (0, 1):
        private = sorted(sets[i] - set(range(1, lam + 1)))[0]
        sets[i].discard(private)
        sets[i].add(extra)
    return sets


# --- planted block graphs -----------------------------------------------


def planted_three_block_graph(rng, n=30, p_in=0.9, p_out=0.05) -> tuple[WeightedGraph, list[int]]:
    """Three equal blocks, dense inside, sparse across; returns the graph
    and the planted labels."""
    assert n % 3 == 0
    size = n // 3
    labels = [i // size for i in range(n)]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            p = p_in if labels[u] == labels[v] else p_out
            if rng.random() < p:
                edges.append((u, v, 1.0))
    return WeightedGraph(n, tuple(edges)), labels


def star_family_over_graph(g: WeightedGraph) -> EdgeFamily:
    """Allocate a graph's edges as a sunflower with kernel one edge and one
    private petal edge per site (set size 2, s = m - 1 sites)."""
    pairs = sorted(g.pairs())
    kernel = pairs[0]
    petals = pairs[1:]
    sets = tuple(frozenset({kernel, p}) for p in petals)
    return EdgeFamily(g, sets)


def block_star_family(rng, n=30, s=9, ell=3) -> tuple[EdgeFamily, list[int]]:
    """Sunflower allocation with |E_k| = ell over a sparse three-block
    graph: one kernel edge plus (ell-1) private intra-block edges per site."""
    assert n % 3 == 0
    size = n // 3
    labels = [i // size for i in range(n)]
    need = s * (ell - 1)  # petal edges
    blocks = [list(range(b * size, (b + 1) * size)) for b in range(3)]
    chosen: set[tuple[int, int]] = set()
    kernel = (0, 1)
    chosen.add(kernel)
    petals = []
    b = 0
    while len(petals) < need:
        block = blocks[b % 3]
        u, v = sorted(rng.choice(block, size=2, replace=False))
        e = (int(u), int(v))
        if e not in chosen:
            chosen.add(e)
            petals.append(e)
        b += 1
    g = WeightedGraph(n, tuple((u, v, 1.0) for u, v in sorted(chosen)))
    sets = []
    for i in range(s):
        mine = petals[i * (ell - 1) : (i + 1) * (ell - 1)]
        sets.append(frozenset({kernel, *mine}))
    return EdgeFamily(g, tuple(sets)), labels


@pytest.fixture
def planted_blocks():
    rng = np.random.default_rng(7)
    return planted_three_block_graph(rng)
