"""Occurrence numbers, overlapping cardinalities and the partition they induce.

A family of edge subsets over a shared base graph is grouped by how many
sets each edge appears in; the resulting partition lets the sum of the
per-set Laplacians be rewritten as an integer combination of the partition
classes' Laplacians (checked numerically by `combined_laplacian_residual`).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .graph import Edge, WeightedGraph, induced_subgraph, laplacian, load_graph_file, norm_pair


@dataclass(frozen=True)
class EdgeFamily:
    """Ordered collection of nonempty edge subsets covering E(base)."""

    base: WeightedGraph
    sets: tuple[frozenset[Edge], ...]

    def __post_init__(self):
        base_pairs = self.base.pairs()
        norm_sets = []
        for i, s in enumerate(self.sets):
            pairs = frozenset(norm_pair(u, v) for u, v in s)
            if not pairs:
                raise ValueError(f"set {i} is empty")
            extra = pairs - base_pairs
            if extra:
                raise ValueError(f"set {i} contains edges not in the base graph: {sorted(extra)}")
            norm_sets.append(pairs)
        covered = frozenset().union(*norm_sets)
        if covered != base_pairs:
            missing = sorted(base_pairs - covered)
            raise ValueError(f"family does not cover the base edge set; missing {missing}")
        object.__setattr__(self, "sets", tuple(norm_sets))

    @property
    def t(self) -> int:
        return len(self.sets)

    def union(self) -> frozenset[Edge]:
        return self.base.pairs()


@dataclass(frozen=True)
class OverlapPartition:
    """Partition classes (cardinality, edge set) with strictly increasing
    cardinalities."""

    classes: tuple[tuple[int, frozenset[Edge]], ...]

    @property
    def cardinalities(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.classes)


def occurrence_number(f: EdgeFamily, edge) -> int:
    """Number of family sets containing the edge (0 if in none)."""
    p = norm_pair(*edge)
    return sum(1 for s in f.sets if p in s)


def overlapping_cardinality(f: EdgeFamily, subset) -> int:
    """Common occurrence number of the subset's edges, or 0 if they differ.

    Undefined (and rejected) for the empty set.
    """
    pairs = [norm_pair(u, v) for u, v in subset]
    if not pairs:
        raise ValueError("overlapping cardinality is undefined for the empty set")
    outside = [p for p in pairs if p not in f.union()]
    if outside:
        raise ValueError(f"edges outside the family union: {sorted(outside)}")
    counts = {occurrence_number(f, p) for p in pairs}
    if len(counts) == 1:
        return counts.pop()
    return 0


def overlapping_cardinality_partition(f: EdgeFamily) -> OverlapPartition:
    """Group edges by occurrence number, classes ordered by increasing count."""
    by_count: dict[int, set[Edge]] = {}
    for p in f.union():
        by_count.setdefault(occurrence_number(f, p), set()).add(p)
    classes = tuple((c, frozenset(by_count[c])) for c in sorted(by_count))
    return OverlapPartition(classes)


def combined_laplacian_residual(f: EdgeFamily) -> float:
    """Max-absolute-entry difference between the sum of per-set Laplacians
    and the cardinality-weighted sum over the partition classes.

    Zero (up to roundoff) for every valid family.
    """
    lhs = np.zeros((f.base.n, f.base.n))
    for s in f.sets:
        lhs += laplacian(induced_subgraph(f.base, s)).matrix
    rhs = np.zeros_like(lhs)
    for c, cls in overlapping_cardinality_partition(f).classes:
        rhs += c * laplacian(induced_subgraph(f.base, cls)).matrix
    return float(np.max(np.abs(lhs - rhs)))


def family_from_dict(doc: dict, base_dir=".") -> EdgeFamily:
    """Build a family from the JSON document format
    `{"graph": <path>, "sets": [[[u, v], ...], ...]}`.

    The graph path is resolved relative to `base_dir`.
    """
    if not isinstance(doc, dict) or "graph" not in doc or "sets" not in doc:
        raise ParseError("family document must have 'graph' and 'sets' keys")
    graph_path = os.path.join(base_dir, doc["graph"])
    base = load_graph_file(graph_path)
    try:
        sets = tuple(
            frozenset((int(u), int(v)) for u, v in s) for s in doc["sets"]
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed 'sets' entry: {exc}") from None
    try:
        return EdgeFamily(base, sets)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_family(path) -> EdgeFamily:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from None
    return family_from_dict(doc, base_dir=os.path.dirname(os.path.abspath(path)))
