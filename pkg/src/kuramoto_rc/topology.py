"""Network construction: complete graphs, Erdos-Renyi samples, components.

Adjacency is stored in CSR form (``indptr``/``indices``) so the integration
kernels can walk neighbor lists directly. The all-to-all graph is flagged
instead of materialized; its adjacency includes the diagonal, so every
degree equals n (the self term contributes sin(0) = 0 to the dynamics and
only shifts the normalization by one part in n).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class NetworkSpec:
    """Symmetric unweighted network plus degree bookkeeping."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    degrees: np.ndarray
    mean_degree: float
    complete: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    def neighbors(self, i: int) -> np.ndarray:
        if self.complete:
            return np.arange(self.n, dtype=np.int64)
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def to_dense(self) -> np.ndarray:
        """Dense 0/1 adjacency (diagonal included for the complete graph)."""
        if self.complete:
            return np.ones((self.n, self.n), dtype=np.int8)
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for i in range(self.n):
            a[i, self.neighbors(i)] = 1
        return a


def _csr_from_pairs(n: int, rows: np.ndarray, cols: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Build sorted CSR arrays from symmetric (row, col) entry lists."""
    order = np.lexsort((cols, rows))
    rows = rows[order]
    cols = cols[order]
    counts = np.bincount(rows, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, cols.astype(np.int64)


def from_edges(n: int, edges, meta: dict | None = None) -> NetworkSpec:
    """NetworkSpec from an iterable of (i, j) pairs.

    Pairs are undirected; duplicates collapse. A self pair (i, i) adds a
    single diagonal entry. Every node must end up with degree >= 1.
    """
    if n < 1:
        raise ConfigurationError(f"need n >= 1, got {n}")
    seen = set()
    for i, j in edges:
        i, j = int(i), int(j)
        if not (0 <= i < n and 0 <= j < n):
            raise ConfigurationError(f"edge ({i}, {j}) outside [0, {n})")
        seen.add((min(i, j), max(i, j)))
    rows_list: list[int] = []
    cols_list: list[int] = []
    for i, j in seen:
        rows_list.append(i)
        cols_list.append(j)
        if i != j:
            rows_list.append(j)
            cols_list.append(i)
    rows = np.asarray(rows_list, dtype=np.int64)
    cols = np.asarray(cols_list, dtype=np.int64)
    indptr, indices = _csr_from_pairs(n, rows, cols)
    degrees = np.diff(indptr).astype(np.int64)
    if np.any(degrees < 1):
        bad = int(np.flatnonzero(degrees < 1)[0])
        raise ConfigurationError(f"node {bad} has degree 0; every node needs k >= 1")
    return NetworkSpec(
        n=n,
        indptr=indptr,
        indices=indices,
        degrees=degrees,
        mean_degree=float(degrees.mean()),
        complete=False,
        meta=meta or {},
    )


def complete_graph(n: int) -> NetworkSpec:
    """All-to-all network, diagonal included: A_ij = 1 for all i, j."""
    if n < 2:
        raise ConfigurationError(f"complete graph needs n >= 2, got {n}")
    return NetworkSpec(
        n=n,
        indptr=np.zeros(1, dtype=np.int64),
        indices=np.zeros(0, dtype=np.int64),
        degrees=np.full(n, n, dtype=np.int64),
        mean_degree=float(n),
        complete=True,
    )


def erdos_renyi(n: int, mean_degree: float, seed=None) -> NetworkSpec:
    """G(n, p) sample with p = mean_degree / (n - 1), no self loops.

    Nodes left isolated by the draw are repaired by attaching one edge to a
    uniformly random partner; repaired node ids are recorded in
    ``meta['repaired']``. The stored ``mean_degree`` is the realized value.
    """
    if n < 2:
        raise ConfigurationError(f"need n >= 2, got {n}")
    if not 1.0 <= mean_degree < n:
        raise ConfigurationError(f"mean_degree must lie in [1, n), got {mean_degree}")
    rng = np.random.default_rng(seed)
    p = mean_degree / (n - 1)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    iu, ju = iu[keep], ju[keep]

    deg = np.bincount(iu, minlength=n) + np.bincount(ju, minlength=n)
    repaired = []
    extra_i, extra_j = [], []
    for node in np.flatnonzero(deg == 0):
        partner = int(rng.integers(n - 1))
        if partner >= node:
            partner += 1
        extra_i.append(min(node, partner))
        extra_j.append(max(node, partner))
        repaired.append(int(node))
    if extra_i:
        iu = np.concatenate([iu, np.asarray(extra_i)])
        ju = np.concatenate([ju, np.asarray(extra_j)])

    net = from_edges(n, zip(iu.tolist(), ju.tolist()),
                     meta={"target_mean_degree": float(mean_degree),
                           "repaired": repaired,
                           "seed": seed})
    return net


def connected_components(net: NetworkSpec) -> list[int]:
    """Component sizes (descending) by breadth-first traversal."""
    if net.complete:
        return [net.n]
    seen = np.zeros(net.n, dtype=bool)
    sizes = []
    for start in range(net.n):
        if seen[start]:
            continue
        size = 0
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            size += 1
            for w in net.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    queue.append(int(w))
        sizes.append(size)
    return sorted(sizes, reverse=True)


def save_edge_list(net: NetworkSpec, path) -> None:
    """Text edge list: header ``n=<N>``, then one zero-based ``i j`` per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n={net.n}\n")
        if net.complete:
            for i in range(net.n):
                for j in range(i, net.n):
                    fh.write(f"{i} {j}\n")
            return
        for i in range(net.n):
            for j in net.neighbors(i):
                if j >= i:
                    fh.write(f"{i} {j}\n")


def load_edge_list(path) -> NetworkSpec:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("n="):
            raise ConfigurationError(f"{path}: expected 'n=<N>' header")
        n = int(header[2:])
        edges = []
        for line in fh:
            line = line.strip()
            if line:
                i, j = line.split()
                edges.append((int(i), int(j)))
    return from_edges(n, edges)
