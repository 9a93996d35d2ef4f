"""Deterministic simulator of Number-On-Forehead blackboard protocols.

Each site sees every input set except its own. Protocols append writes to a
shared transcript with exact bit and edge cost accounting. The three
protocols: sunflower verification (one bit per site), whole-graph broadcast
exploiting the sunflower kernel, and a two-round sparsifier exchange that
leaves every site with a spectral sparsifier of the full graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import PreconditionError
from .graph import Edge, WeightedGraph, induced_subgraph
from .overlap import EdgeFamily
from .sparsify import SparsifierResult, UnionSparsifier, sparsify_er, union_sparsifiers, verify_epsilon

BIT = "bit"
EDGE_SET = "edge-set"
WEIGHTED_EDGE_SET = "weighted-edge-set"


@dataclass(frozen=True)
class Write:
    site: int
    round: int
    kind: str
    payload: tuple
    bit_cost: int
    edge_cost: int


@dataclass(frozen=True)
class Transcript:
    writes: tuple[Write, ...]

    @property
    def bit_cost(self) -> int:
        return sum(w.bit_cost for w in self.writes)

    @property
    def edge_cost(self) -> int:
        return sum(w.edge_cost for w in self.writes)

    @property
    def num_rounds(self) -> int:
        return max((w.round for w in self.writes), default=0)

    def round_edge_cost(self, r: int) -> int:
        return sum(w.edge_cost for w in self.writes if w.round == r)

    def to_dict(self) -> dict:
        rounds = []
        for r in range(1, self.num_rounds + 1):
            rounds.append(
                {
                    "round": r,
                    "writes": [
                        {
                            "site": w.site,
                            "kind": w.kind,
                            "payload": _payload_to_json(w),
                            "bit_cost": w.bit_cost,
                            "edge_cost": w.edge_cost,
                        }
                        for w in self.writes
                        if w.round == r
                    ],
                }
            )
        return {"rounds": rounds, "bit_cost": self.bit_cost, "edge_cost": self.edge_cost}


def _payload_to_json(w: Write):
    if w.kind == BIT:
        return w.payload[0]
    return [list(item) for item in w.payload]


@dataclass(frozen=True)
class SiteView:
    site_id: int
    visible: tuple[frozenset[Edge], ...]


@dataclass(frozen=True)
class DeltaSystemReport:
    is_delta: bool
    kernel: frozenset[Edge] | None
    is_weak_delta: bool
    lam: int | None
    ell: int


def bits_per_edge(n: int, weighted: bool = True) -> int:
    """Encoding cost of one edge write: two vertex ids at ceil(log2 n) bits
    each, plus 64 bits for a weight when present."""
    if n < 2:
        raise ValueError("need at least two vertices to encode an edge")
    return 2 * (n - 1).bit_length() + (64 if weighted else 0)


def site_view(f: EdgeFamily, j: int) -> SiteView:
    """All input sets except site j's own (sites are 1-based)."""
    s = f.t
    if s < 2:
        raise PreconditionError("the NOF model needs at least two sites")
    if not (1 <= j <= s):
        raise PreconditionError(f"site id {j} out of range 1..{s}")
    visible = tuple(f.sets[i] for i in range(s) if i != j - 1)
    return SiteView(site_id=j, visible=visible)


def is_delta_system(sets) -> DeltaSystemReport:
    """Classify a family: sunflower (all pairwise intersections equal the
    global one), weak sunflower (all pairwise intersection sizes equal),
    neither."""
    sets = [frozenset(s) for s in sets]
    if len(sets) < 2:
        raise PreconditionError("delta-system check needs at least two sets")
    kernel = frozenset.intersection(*sets)
    sizes = set()
    is_delta = True
    for a, b in combinations(sets, 2):
        inter = a & b
        sizes.add(len(inter))
        if inter != kernel:
            is_delta = False
    is_weak = len(sizes) == 1
    lam = sizes.pop() if is_weak else None
    ell = max(len(s) for s in sets)
    return DeltaSystemReport(
        is_delta=is_delta,
        kernel=kernel if is_delta else None,
        is_weak_delta=is_weak,
        lam=lam,
        ell=ell,
    )


def deza_threshold(ell: int) -> int:
    """Family size at which a weak sunflower of max set size ell is forced
    to be a sunflower."""
    if ell < 1:
        raise ValueError("ell must be positive")
    return ell * ell - ell + 2


def symmetric_difference_on_site(f: EdgeFamily, j: int) -> frozenset[Edge]:
    """Petal union of the sets visible to site j: union minus kernel.

    Requires the visible family to be a sunflower; matches the accounting
    |union| = |petals| + kernel size.
    """
    view = site_view(f, j)
    rep = is_delta_system(view.visible)
    if not rep.is_delta:
        raise PreconditionError(f"the sets visible to site {j} are not a delta-system")
    return frozenset.union(*view.visible) - rep.kernel


def lemma2_check(f: EdgeFamily) -> bool:
    """With >= 3 sunflower-allocated sites, every site's view is a sunflower
    with the same kernel."""
    if f.t < 3:
        raise PreconditionError("need at least three sites")
    rep = is_delta_system(f.sets)
    if not rep.is_delta:
        raise PreconditionError("family is not a delta-system")
    for j in range(1, f.t + 1):
        vrep = is_delta_system(site_view(f, j).visible)
        if not (vrep.is_delta and vrep.kernel == rep.kernel):
            return False
    return True


def lemma3_check(f: EdgeFamily) -> bool:
    """With >= 4 sites: if every site's view is a sunflower then so is the
    whole family. Evaluates the implication concretely."""
    if f.t < 4:
        raise PreconditionError("need at least four sites")
    all_views_delta = all(
        is_delta_system(site_view(f, j).visible).is_delta for j in range(1, f.t + 1)
    )
    if not all_views_delta:
        return True
    return is_delta_system(f.sets).is_delta


def protocol_verify_sunflower(f: EdgeFamily) -> tuple[Transcript, bool]:
    """Sites 1..s-1 each write one bit saying whether their view is a
    sunflower; the family is a sunflower iff all bits are 1. Cost s-1 bits."""
    s = f.t
    if s < 4:
        raise PreconditionError("need at least four sites")
    writes = []
    verdict = True
    for j in range(1, s):
        bit = 1 if is_delta_system(site_view(f, j).visible).is_delta else 0
        verdict = verdict and bool(bit)
        writes.append(Write(site=j, round=1, kind=BIT, payload=(bit,), bit_cost=1, edge_cost=0))
    return Transcript(tuple(writes)), verdict


def overlapping_coefficient(f: EdgeFamily, j: int) -> float:
    """|intersection| / |union| over the sets visible to site j."""
    view = site_view(f, j)
    union = frozenset.union(*view.visible)
    if not union:
        raise PreconditionError(f"union of sets visible to site {j} is empty")
    inter = frozenset.intersection(*view.visible)
    return len(inter) / len(union)


def greatest_overlapping_coefficient(f: EdgeFamily) -> float:
    return max(overlapping_coefficient(f, j) for j in range(1, f.t + 1))


def _check_uniform_weak_delta(f: EdgeFamily) -> tuple[DeltaSystemReport, int]:
    sizes = {len(s) for s in f.sets}
    if len(sizes) != 1:
        raise PreconditionError(f"set sizes are not uniform: {sorted(sizes)}")
    ell = sizes.pop()
    rep = is_delta_system(f.sets)
    if not rep.is_weak_delta:
        raise PreconditionError("family is not a weak delta-system")
    need = deza_threshold(ell) + 1
    if f.t < need:
        raise PreconditionError(
            f"need at least {need} sites for set size {ell}, got {f.t}"
        )
    if not rep.is_delta:
        # unreachable for uniform weak systems above the size threshold
        raise PreconditionError("family is not a delta-system")
    return rep, ell


def protocol_broadcast_graph(f: EdgeFamily, j: int) -> tuple[Transcript, dict[int, frozenset[Edge]]]:
    """Two-round broadcast: site j writes its petal union, everyone else
    reconstructs the full edge set from it plus the kernel and their own
    view; then one other site writes E_j so site j can finish too."""
    rep, ell = _check_uniform_weak_delta(f)
    s = f.t
    view_j = site_view(f, j)  # validates j
    kernel = rep.kernel
    delta_j = frozenset.union(*view_j.visible) - kernel

    weights = f.base.weights()
    n = f.base.n
    bpe = bits_per_edge(n, weighted=True)

    writes = [
        Write(
            site=j,
            round=1,
            kind=WEIGHTED_EDGE_SET,
            payload=tuple((u, v, weights[(u, v)]) for u, v in sorted(delta_j)),
            bit_cost=len(delta_j) * bpe,
            edge_cost=len(delta_j),
        )
    ]

    reconstructions: dict[int, frozenset[Edge]] = {}
    for i in range(1, s + 1):
        if i == j:
            continue
        own_view = frozenset.union(*site_view(f, i).visible)
        reconstructions[i] = delta_j | kernel | own_view

    writer = min(i for i in range(1, s + 1) if i != j)
    e_j = f.sets[j - 1]
    writes.append(
        Write(
            site=writer,
            round=2,
            kind=WEIGHTED_EDGE_SET,
            payload=tuple((u, v, weights[(u, v)]) for u, v in sorted(e_j)),
            bit_cost=len(e_j) * bpe,
            edge_cost=len(e_j),
        )
    )
    reconstructions[j] = frozenset.union(*view_j.visible) | e_j
    return Transcript(tuple(writes)), reconstructions


def protocol_sparsifier_exchange(
    f: EdgeFamily, j: int, epsilon: float, seed: int
) -> tuple[Transcript, dict[int, UnionSparsifier]]:
    """Two-round exchange after which every site holds a sparsifier of the
    full graph.

    Round 1: site j sparsifies the subgraph on its petal union and writes
    the weighted result. Every other site sparsifies (V, E_j) locally and
    unions the two parts. Round 2: the lowest-numbered other site writes its
    local sparsifier of (V, E_j) so site j can union as well.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    rep, ell = _check_uniform_weak_delta(f)
    s = f.t
    view_j = site_view(f, j)
    kernel = rep.kernel
    delta_j = frozenset.union(*view_j.visible) - kernel
    e_j = f.sets[j - 1]
    n = f.base.n
    bpe = bits_per_edge(n, weighted=True)

    rng = np.random.default_rng(seed)
    others = [i for i in range(1, s + 1) if i != j]
    site_seeds = {j: int(rng.integers(2**63))}
    for i in others:
        site_seeds[i] = int(rng.integers(2**63))

    # the two-part allocation the union theorem is applied to
    if delta_j:
        two_part = EdgeFamily(f.base, (delta_j, e_j))
        g_delta = induced_subgraph(f.base, delta_j)
        part_delta = sparsify_er(g_delta, epsilon, site_seeds[j])
    else:
        two_part = EdgeFamily(f.base, (e_j,))
        part_delta = None

    g_ej = induced_subgraph(f.base, e_j)

    writes = [
        Write(
            site=j,
            round=1,
            kind=WEIGHTED_EDGE_SET,
            payload=tuple(part_delta.h.edges) if part_delta is not None else (),
            bit_cost=(part_delta.h.m if part_delta is not None else 0) * bpe,
            edge_cost=part_delta.h.m if part_delta is not None else 0,
        )
    ]

    results: dict[int, UnionSparsifier] = {}
    local_ej_parts: dict[int, SparsifierResult] = {}
    for i in others:
        part_ej = sparsify_er(g_ej, epsilon, site_seeds[i])
        local_ej_parts[i] = part_ej
        parts = [part_delta, part_ej] if part_delta is not None else [part_ej]
        results[i] = union_sparsifiers(parts, two_part)

    writer = min(others)
    round2_part = local_ej_parts[writer]
    writes.append(
        Write(
            site=writer,
            round=2,
            kind=WEIGHTED_EDGE_SET,
            payload=tuple(round2_part.h.edges),
            bit_cost=round2_part.h.m * bpe,
            edge_cost=round2_part.h.m,
        )
    )
    parts_j = [part_delta, round2_part] if part_delta is not None else [round2_part]
    results[j] = union_sparsifiers(parts_j, two_part)
    return Transcript(tuple(writes)), results
