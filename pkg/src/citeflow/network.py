"""Directed network model for citation analysis.

Vertices are 1-based contiguous ids with string labels.  Arcs are stored as
parallel numpy arrays (tail, head, weight) plus CSR-style adjacency indices,
which keeps million-arc networks cheap to traverse.  An arc (u, v) points from
the cited (earlier) work u to the citing (later) work v, so arc direction
follows the flow of knowledge forward in time.

Parallel arcs and loops are representable; `simplify` merges parallels.
Networks are immutable after construction.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from typing import Literal

import numpy as np

# Numeric modes used by weight computations and understood by the writers:
#   "float" - 64-bit floating point, fails loudly on overflow to infinity
#   "exact" - arbitrary-precision integers (Fractions after normalization)
#   "log"   - natural logarithms of the counts, sums via log-add-exp
Mode = Literal["float", "exact", "log"]
MODES: tuple[str, ...] = ("float", "exact", "log")


class ArcWeights:
    """Per-arc weight vector aligned with a network's arc order.

    `values` is a numpy float array in "float"/"log" mode, or a tuple of ints
    (or Fractions, after normalization) in "exact" mode.
    """

    __slots__ = ("values", "mode")

    def __init__(self, values, mode: Mode = "float"):
        if mode not in MODES:
            raise ValueError(f"unknown numeric mode: {mode!r}")
        if mode == "exact":
            self.values = tuple(values)
        else:
            arr = np.asarray(values, dtype=np.float64)
            arr.flags.writeable = False
            self.values = arr
        self.mode = mode

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def tolist(self) -> list:
        if self.mode == "exact":
            return list(self.values)
        return self.values.tolist()

    def __repr__(self) -> str:
        return f"ArcWeights(m={len(self)}, mode={self.mode!r})"


class Network:
    """Immutable directed multigraph with labels and arc weights."""

    __slots__ = ("n", "labels", "tails", "heads", "weights",
                 "_out_ptr", "_out_idx", "_in_ptr", "_in_idx")

    def __init__(self, n: int, arcs: Iterable[tuple] = (),
                 labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        rows = list(arcs)
        m = len(rows)
        tails = np.empty(m, dtype=np.int64)
        heads = np.empty(m, dtype=np.int64)
        weights = np.ones(m, dtype=np.float64)
        for i, row in enumerate(rows):
            if len(row) == 2:
                tails[i], heads[i] = row
            else:
                tails[i], heads[i], weights[i] = row
        self._init_from_arrays(n, tails, heads, weights, labels)

    @classmethod
    def from_arrays(cls, n: int, tails: np.ndarray, heads: np.ndarray,
                    weights: np.ndarray | None = None,
                    labels: Sequence[str] | None = None) -> "Network":
        """Fast path used by generators and transforms."""
        net = cls.__new__(cls)
        tails = np.ascontiguousarray(tails, dtype=np.int64)
        heads = np.ascontiguousarray(heads, dtype=np.int64)
        if weights is None:
            weights = np.ones(len(tails), dtype=np.float64)
        else:
            weights = np.ascontiguousarray(weights, dtype=np.float64)
        net._init_from_arrays(n, tails, heads, weights, labels)
        return net

    def _init_from_arrays(self, n, tails, heads, weights, labels):
        if len(tails) != len(heads) or len(tails) != len(weights):
            raise ValueError("arc arrays must have equal length")
        if len(tails) and (tails.min() < 1 or tails.max() > n
                           or heads.min() < 1 or heads.max() > n):
            raise ValueError("arc endpoint out of range 1..n")
        if labels is None:
            labels = tuple(str(v) for v in range(1, n + 1))
        else:
            # a dict would silently iterate its keys, so reject it outright
            if isinstance(labels, Mapping):
                raise TypeError("labels must be a sequence in vertex order, "
                                "not a mapping")
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels must have one entry per vertex")
            if any(not isinstance(lab, str) for lab in labels):
                raise TypeError("labels must be strings")
        self.n = int(n)
        self.labels = labels
        self.tails = tails
        self.heads = heads
        self.weights = weights
        for arr in (tails, heads, weights):
            arr.flags.writeable = False
        self._out_ptr, self._out_idx = _csr(n, tails, heads)
        self._in_ptr, self._in_idx = _csr(n, heads, tails)

    # --- basic accessors ---

    @property
    def m(self) -> int:
        return len(self.tails)

    def label(self, v: int) -> str:
        return self.labels[v - 1]

    def arc(self, i: int) -> tuple[int, int, float]:
        return (int(self.tails[i]), int(self.heads[i]), float(self.weights[i]))

    @property
    def arcs(self) -> list[tuple[int, int, float]]:
        """Arc list as (tail, head, weight) tuples; O(m), meant for small nets."""
        return [self.arc(i) for i in range(self.m)]

    def iter_arcs(self) -> Iterator[tuple[int, int, float]]:
        for i in range(self.m):
            yield self.arc(i)

    # --- adjacency ---
    # Arc indices within each list are ordered by (tail, head, input position),
    # so iteration order is deterministic for equal inputs.

    def out_arcs(self, v: int) -> np.ndarray:
        return self._out_idx[self._out_ptr[v]:self._out_ptr[v + 1]]

    def in_arcs(self, v: int) -> np.ndarray:
        return self._in_idx[self._in_ptr[v]:self._in_ptr[v + 1]]

    def successors(self, v: int) -> np.ndarray:
        return self.heads[self.out_arcs(v)]

    def predecessors(self, v: int) -> np.ndarray:
        return self.tails[self.in_arcs(v)]

    def out_degree(self, v: int) -> int:
        return int(self._out_ptr[v + 1] - self._out_ptr[v])

    def in_degree(self, v: int) -> int:
        return int(self._in_ptr[v + 1] - self._in_ptr[v])

    # --- derived views ---

    def reverse(self) -> "Network":
        """Same vertices, every arc flipped; arc order preserved."""
        return Network.from_arrays(self.n, self.heads, self.tails,
                                   self.weights, self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return (self.n == other.n and self.labels == other.labels
                and np.array_equal(self.tails, other.tails)
                and np.array_equal(self.heads, other.heads)
                and np.array_equal(self.weights, other.weights))

    __hash__ = None  # mutable-feeling equality; not meant for dict keys

    def __repr__(self) -> str:
        return f"Network(n={self.n}, m={self.m})"


def _csr(n: int, keys: np.ndarray, minor: np.ndarray):
    """Arc indices grouped by `keys` (1..n), ties by `minor` then position."""
    order = np.lexsort((minor, keys)).astype(np.int64)
    counts = np.bincount(keys, minlength=n + 1)
    ptr = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    ptr.flags.writeable = False
    order.flags.writeable = False
    return ptr, order


def simplify(net: Network) -> Network:
    """Merge parallel arcs, summing their weights.

    Weight computations count one path per arc, so parallel citations must be
    collapsed first.  First occurrence fixes the merged arc's position; loops
    are kept (the repair step deals with them).
    """
    seen: dict[tuple[int, int], int] = {}
    tails: list[int] = []
    heads: list[int] = []
    weights: list[float] = []
    for i in range(net.m):
        key = (int(net.tails[i]), int(net.heads[i]))
        at = seen.get(key)
        if at is None:
            seen[key] = len(tails)
            tails.append(key[0])
            heads.append(key[1])
            weights.append(float(net.weights[i]))
        else:
            weights[at] += float(net.weights[i])
    return Network.from_arrays(net.n, np.array(tails, dtype=np.int64),
                               np.array(heads, dtype=np.int64),
                               np.array(weights, dtype=np.float64), net.labels)


# --- generators ---

def complete_acyclic(n: int) -> Network:
    """Network on 1..n with an arc (i, j) for every i < j."""
    if n < 1:
        raise ValueError("n must be positive")
    tails, heads = np.triu_indices(n, k=1)
    return Network.from_arrays(n, tails + 1, heads + 1)


def random_dag(n: int, density: float, seed: int) -> Network:
    """Random acyclic network: each pair i < j gets an arc with p = density.

    Deterministic for a fixed seed: a single PCG64 stream (numpy
    ``default_rng``) draws one uniform per pair in row-major (i, j) order and
    keeps the arc when the draw is below `density`.  density 1.0 gives the
    complete acyclic network.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    tails, heads = np.triu_indices(n, k=1)
    rng = np.random.default_rng(seed)
    keep = rng.random(len(tails)) < density
    return Network.from_arrays(n, tails[keep] + 1, heads[keep] + 1)
