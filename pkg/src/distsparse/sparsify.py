"""Spectral sparsifiers: construction, exact verification, and unions.

The base construction samples edges by effective resistance; the verifier
computes the exact approximation factor by a dense eigensolve, so nothing
downstream relies on the sampler's theory. Unions of per-set sparsifiers
are combined with explicit weights and an approximation factor driven by
the extreme overlapping cardinalities of the allocation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .graph import Edge, WeightedGraph, laplacian, norm_pair
from .overlap import EdgeFamily, overlapping_cardinality_partition

# Relative eigenvalue cutoff below which a direction counts as kernel.
_KERNEL_RTOL = 1e-10


@dataclass(frozen=True)
class SparsifierResult:
    h: WeightedGraph
    epsilon_target: float
    epsilon_certified: float
    seed: int | None = None


@dataclass(frozen=True)
class UnionSparsifier:
    h: WeightedGraph
    epsilon_prime: float
    c1: int
    ck: int


def effective_resistances(g: WeightedGraph) -> dict[Edge, float]:
    """Per-edge effective resistance via the Laplacian pseudoinverse.

    Works per connected component since the pseudoinverse is block diagonal.
    """
    L = laplacian(g).matrix
    Lp = np.linalg.pinv(L, hermitian=True)
    out = {}
    for u, v, _ in g.edges:
        out[(u, v)] = float(Lp[u, u] + Lp[v, v] - 2.0 * Lp[u, v])
    return out


def sparsify_er(
    g: WeightedGraph, epsilon: float, seed: int, constant: float = 9.0
) -> SparsifierResult:
    """Effective-resistance sampling sparsifier.

    Draws q = ceil(C * n * ln(n) / eps^2) edges with replacement, with
    probability proportional to weight times effective resistance, and
    accumulates w(e) / (q * p_e) per sampled copy. If the sampled support
    covers every original edge the input graph is returned verbatim with a
    certified factor of 0.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if g.m == 0:
        raise ValueError("cannot sparsify an edgeless graph")
    q = math.ceil(constant * g.n * math.log(g.n) / epsilon**2) if g.n > 1 else 1
    q = max(q, 1)

    resist = effective_resistances(g)
    w = np.array([e[2] for e in g.edges])
    r = np.array([resist[(u, v)] for u, v, _ in g.edges])
    scores = w * np.maximum(r, 0.0)
    if scores.sum() <= 0:
        scores = np.ones_like(scores)
    probs = scores / scores.sum()

    rng = np.random.default_rng(seed)
    counts = rng.multinomial(q, probs)
    support = counts > 0
    if int(support.sum()) >= g.m:
        return SparsifierResult(h=g, epsilon_target=epsilon, epsilon_certified=0.0, seed=seed)

    new_edges = []
    for (u, v, we), c, p in zip(g.edges, counts, probs):
        if c > 0:
            new_edges.append((u, v, c * we / (q * p)))
    h = WeightedGraph(g.n, tuple(new_edges))
    cert = verify_epsilon(g, h)
    return SparsifierResult(h=h, epsilon_target=epsilon, epsilon_certified=cert, seed=seed)


def verify_epsilon(g: WeightedGraph, h: WeightedGraph) -> float:
    """Smallest eps with (1-eps) x'L_G x <= x'L_H x <= (1+eps) x'L_G x for all x.

    Eigensolve of L_H pre/post-multiplied by the pseudo-inverse square root
    of L_G, restricted to range(L_G). Returns +inf when some kernel vector
    of L_G is not in the kernel of L_H (then no finite eps satisfies the
    upper bound).
    """
    if g.n != h.n:
        raise DimensionMismatch(f"vertex counts differ: {g.n} vs {h.n}")
    Lg = laplacian(g).matrix
    Lh = laplacian(h).matrix
    evals, U = np.linalg.eigh(Lg)
    lam_max = float(evals[-1]) if evals.size else 0.0
    tol = _KERNEL_RTOL * max(lam_max, 1.0)
    nonzero = evals > tol

    # kernel of L_G must stay inside kernel of L_H
    U0 = U[:, ~nonzero]
    if U0.shape[1] > 0:
        M0 = U0.T @ Lh @ U0
        scale = max(float(np.max(np.abs(Lh))), 1.0)
        if float(np.max(np.abs(M0))) > 1e-8 * scale:
            return math.inf

    if not nonzero.any():
        # L_G is zero; any surviving L_H mass was caught above
        return 0.0

    Ur = U[:, nonzero]
    inv_sqrt = 1.0 / np.sqrt(evals[nonzero])
    A = Ur * inv_sqrt[None, :]
    M = A.T @ Lh @ A
    mu = np.linalg.eigvalsh((M + M.T) / 2.0)
    return max(1.0 - float(mu[0]), float(mu[-1]) - 1.0, 0.0)


def epsilon_prime(epsilon: float, c1: int, ck: int) -> float:
    """Approximation factor for a union of eps-sparsifiers whose allocation
    has extreme overlapping cardinalities c1 <= ck.

    Smallest eps' making both one-sided bounds hold:
    max(1 - (1-eps)/ck, (1+eps)/c1 - 1, eps). Accepts eps = 0 (exact parts).
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    if not (1 <= c1 <= ck):
        raise ValueError(f"need 1 <= c1 <= ck, got c1={c1}, ck={ck}")
    return max(1.0 - (1.0 - epsilon) / ck, (1.0 + epsilon) / c1 - 1.0, epsilon)


def union_sparsifiers(parts, f: EdgeFamily) -> UnionSparsifier:
    """Union of per-set sparsifiers with weights summed and rescaled by
    1/(c1*ck); the certified part factors feed the union's factor."""
    parts = list(parts)
    if not parts:
        raise ValueError("empty parts list")
    if len(parts) != f.t:
        raise ValueError(f"got {len(parts)} parts for a family of {f.t} sets")
    n = f.base.n
    for i, p in enumerate(parts):
        if p.h.n != n:
            raise DimensionMismatch(f"part {i} has n={p.h.n}, base has n={n}")

    partition = overlapping_cardinality_partition(f)
    cards = partition.cardinalities
    c1, ck = cards[0], cards[-1]

    acc: dict[Edge, float] = {}
    for p in parts:
        for u, v, w in p.h.edges:
            key = norm_pair(u, v)
            acc[key] = acc.get(key, 0.0) + w
    scale = 1.0 / (c1 * ck)
    edges = tuple((u, v, w * scale) for (u, v), w in sorted(acc.items()))
    h = WeightedGraph(n, edges)

    eps = max(p.epsilon_certified for p in parts)
    return UnionSparsifier(h=h, epsilon_prime=epsilon_prime(eps, c1, ck), c1=c1, ck=ck)
