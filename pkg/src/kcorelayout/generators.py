"""Erdős–Rényi and Barabási–Albert random graphs."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class GeneratorSpec:
    model: str
    n: int
    mean_degree: float = 0.0
    m: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.model not in ("er", "ba"):
            raise ValueError(f"unknown model {self.model!r}; expected 'er' or 'ba'")
        if self.n <= 0:
            raise ValueError("n must be positive")
        if self.model == "ba" and not (self.m >= 1 and self.n > self.m):
            raise ValueError("BA needs m >= 1 and n > m")

    def generate(self) -> Graph:
        if self.model == "er":
            return erdos_renyi(self.n, self.mean_degree, self.seed)
        return barabasi_albert(self.n, self.m, self.seed)


def _pair_from_index(idx: np.ndarray) -> np.ndarray:
    """Invert ``idx = j*(j-1)/2 + i`` for pairs ``i < j``."""
    j = np.floor((1.0 + np.sqrt(1.0 + 8.0 * idx.astype(float))) / 2.0).astype(np.int64)
    # float sqrt can be one off for large indices
    j -= (j * (j - 1) // 2) > idx
    j += ((j + 1) * j // 2) <= idx
    i = idx - j * (j - 1) // 2
    return np.column_stack([i, j])


def erdos_renyi(n: int, mean_degree: float, seed: int = 0) -> Graph:
    """G(n, p) with ``p = mean_degree / (n - 1)``.

    Each of the ``n(n-1)/2`` pairs is present independently. Present pairs
    are found by geometric skips over the pair index, which takes time
    proportional to ``n + e`` rather than ``n**2``.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    if mean_degree < 0:
        raise ValueError("mean_degree must be non-negative")
    if mean_degree == 0:
        return Graph.from_edges(n, np.zeros((0, 2), dtype=np.int64))
    if n == 1:
        raise ValueError("a single vertex admits no positive mean degree")
    p = mean_degree / (n - 1)
    if p > 1.0:
        raise ValueError(f"edge probability {p} exceeds 1")

    rng = np.random.default_rng(seed)
    n_pairs = n * (n - 1) // 2
    chunk = max(1024, int(1.2 * p * n_pairs) + 1024)
    found = []
    last = -1
    while True:
        idx = last + np.cumsum(rng.geometric(p, size=chunk))
        found.append(idx[idx < n_pairs])
        if idx[-1] >= n_pairs:
            break
        last = int(idx[-1])
    idx = np.concatenate(found)
    return Graph.from_edges(n, _pair_from_index(idx))


def barabasi_albert(n: int, m: int, seed: int = 0) -> Graph:
    """Preferential attachment grown from a clique on ``m + 1`` vertices.

    Each new vertex links to ``m`` distinct earlier vertices, each picked
    with probability proportional to its current degree; picks that repeat
    a target are redrawn.
    """
    if not (m >= 1 and n > m):
        raise ValueError("need m >= 1 and n > m")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(m + 1) for v in range(u + 1, m + 1)]
    # every vertex appears here once per unit of degree
    endpoints = [v for e in edges for v in e]
    for v in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(endpoints[int(rng.random() * len(endpoints))])
        for t in sorted(targets):
            edges.append((t, v))
            endpoints.append(t)
            endpoints.append(v)
    return Graph.from_edges(n, edges)


def expected_ba_edges(n: int, m: int) -> int:
    return m * (n - m - 1) + math.comb(m + 1, 2)
