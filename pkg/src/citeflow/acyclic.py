"""Acyclicity analysis and repair, standard form, depths.

Citation data is acyclic in principle but never in practice: loops and small
strongly connected components show up through bad timestamps and mutual
citations.  This module detects them, offers the two repairs (shrinking each
component to one vertex, or splitting each member into a preprint/published
pair), and builds the standard form with a single source s, a single sink t
and the closing feedback arc (t, s) that the weight routines expect.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .network import Network


class CycleError(Exception):
    """Raised when an operation needs an acyclic network; carries a witness
    vertex that lies on some cycle."""

    def __init__(self, vertex: int):
        super().__init__(f"network is not acyclic: vertex {vertex} lies on a cycle")
        self.vertex = vertex


# --- strongly connected components ---

@dataclass(frozen=True)
class Partition:
    """Vertex partition into classes 1..class_count (gap-free)."""

    class_of: tuple[int, ...]  # index v-1 -> class id
    class_count: int

    def members(self, cls: int) -> list[int]:
        return [v for v in range(1, len(self.class_of) + 1)
                if self.class_of[v - 1] == cls]

    def sizes(self) -> list[int]:
        counts = [0] * self.class_count
        for cls in self.class_of:
            counts[cls - 1] += 1
        return counts


def strong_components(net: Network) -> Partition:
    """Tarjan's algorithm, iterative.  Classes are numbered 1..k in order of
    their smallest member, so the labelling is deterministic."""
    n = net.n
    index = [0] * (n + 1)        # 0 = unvisited
    low = [0] * (n + 1)
    on_stack = [False] * (n + 1)
    stack: list[int] = []
    comp = [0] * (n + 1)
    counter = 1
    ncomp = 0

    for root in range(1, n + 1):
        if index[root]:
            continue
        # explicit DFS stack: (vertex, iterator over successors)
        work = [(root, iter(net.successors(root).tolist()))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not index[w]:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(net.successors(w).tolist())))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                ncomp += 1
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break

    # renumber classes by smallest member
    remap: dict[int, int] = {}
    for v in range(1, n + 1):
        remap.setdefault(comp[v], len(remap) + 1)
    return Partition(tuple(remap[comp[v]] for v in range(1, n + 1)), ncomp)


def _cyclic_classes(net: Network, part: Partition) -> set[int]:
    """Classes that carry a cycle: size >= 2, or a singleton with a loop."""
    sizes = part.sizes()
    bad = {c + 1 for c, size in enumerate(sizes) if size >= 2}
    for i in range(net.m):
        if net.tails[i] == net.heads[i]:
            bad.add(part.class_of[int(net.tails[i]) - 1])
    return bad


# --- repairs ---

def remove_loops(net: Network) -> Network:
    """Drop every arc (v, v); everything else is untouched."""
    keep = net.tails != net.heads
    return Network.from_arrays(net.n, net.tails[keep], net.heads[keep],
                               net.weights[keep], net.labels)


def shrink_components(net: Network, part: Partition | None = None) -> Network:
    """Collapse each strongly connected class to a single vertex.

    Arc (u, v) maps to (class(u), class(v)); intra-class arcs (including
    loops) disappear, parallel images are merged with summed weights.  The
    shrunk vertex takes the label of the class's smallest member.
    """
    if part is None:
        part = strong_components(net)
    cls = part.class_of
    labels = [""] * part.class_count
    for v in range(net.n, 0, -1):  # downward so the smallest member wins
        labels[cls[v - 1] - 1] = net.label(v)
    seen: dict[tuple[int, int], int] = {}
    tails: list[int] = []
    heads: list[int] = []
    weights: list[float] = []
    for i in range(net.m):
        a = cls[int(net.tails[i]) - 1]
        b = cls[int(net.heads[i]) - 1]
        if a == b:
            continue
        at = seen.get((a, b))
        if at is None:
            seen[(a, b)] = len(tails)
            tails.append(a)
            heads.append(b)
            weights.append(float(net.weights[i]))
        else:
            weights[at] += float(net.weights[i])
    return Network.from_arrays(part.class_count,
                               np.array(tails, dtype=np.int64),
                               np.array(heads, dtype=np.int64),
                               np.array(weights, dtype=np.float64), labels)


def preprint_transform(net: Network) -> Network:
    """Break cycles by giving every vertex of a cyclic component a preprint.

    Each member u of a cyclic strongly connected component gets a twin u'
    (appended after the original ids, in ascending order of u) with an arc
    (u', u): the published version cites its own preprint.  Every arc (u, v)
    inside such a component is redirected to start at the preprint, (u', v).
    Arcs between components are untouched.  The result is acyclic.
    """
    part = strong_components(net)
    bad = _cyclic_classes(net, part)
    twins: dict[int, int] = {}
    labels = list(net.labels)
    for v in range(1, net.n + 1):
        if part.class_of[v - 1] in bad:
            twins[v] = net.n + len(twins) + 1
            labels.append(net.label(v) + "'")
    cls = part.class_of
    tails = net.tails.copy()
    heads = net.heads
    for i in range(net.m):
        u = int(tails[i])
        if u in twins and cls[u - 1] == cls[int(heads[i]) - 1]:
            tails[i] = twins[u]
    extra_tails = [twins[v] for v in sorted(twins)]
    extra_heads = sorted(twins)
    all_tails = np.concatenate([tails, np.array(extra_tails, dtype=np.int64)])
    all_heads = np.concatenate([heads, np.array(extra_heads, dtype=np.int64)])
    all_weights = np.concatenate([net.weights,
                                  np.ones(len(extra_tails), dtype=np.float64)])
    return Network.from_arrays(net.n + len(twins), all_tails, all_heads,
                               all_weights, labels)


# --- topological order ---

@dataclass(frozen=True)
class TopologicalOrder:
    order: tuple[int, ...]     # vertices in topological sequence
    position: tuple[int, ...]  # index v-1 -> 1-based rank in `order`


def topological_order(net: Network) -> TopologicalOrder:
    """Kahn's algorithm, smallest-id-first among the available vertices.

    Raises CycleError (with a witness vertex) if the network has a cycle;
    a loop counts as a cycle.
    """
    n = net.n
    indeg = [net.in_degree(v) for v in range(1, n + 1)]
    ready = [v for v in range(1, n + 1) if indeg[v - 1] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in net.successors(v).tolist():
            indeg[w - 1] -= 1
            if indeg[w - 1] == 0:
                heapq.heappush(ready, w)
    if len(order) < n:
        raise CycleError(_cycle_witness(net, {v for v in range(1, n + 1)
                                              if indeg[v - 1] > 0}))
    position = [0] * n
    for rank, v in enumerate(order, start=1):
        position[v - 1] = rank
    return TopologicalOrder(tuple(order), tuple(position))


def _cycle_witness(net: Network, remaining: set[int]) -> int:
    """Walk predecessors inside `remaining` until a vertex repeats; every
    vertex left over by Kahn's algorithm has one there."""
    v = min(remaining)
    seen: set[int] = set()
    while v not in seen:
        seen.add(v)
        for u in net.predecessors(v).tolist():
            if u in remaining:
                v = u
                break
        else:  # pragma: no cover - cannot happen with a correct `remaining`
            return v
    return v


def _levels(net: Network, skip_arc: int | None = None, reverse: bool = False):
    """Longest-path depth of every vertex from the in-degree-0 frontier.

    Frontier-batched Kahn sweep: level(v) = length of the longest arc path
    from any source to v.  With `reverse` the arcs are walked backwards.
    `skip_arc` treats one arc index as absent (the feedback arc).  Returns
    (level array indexed 1..n with -1 for vertices stuck on cycles, vertex
    order as one flat array, acyclic flag, witness vertex or None).
    """
    n = net.n
    heads = net.tails if reverse else net.heads
    arcs_of = net.in_arcs if reverse else net.out_arcs
    indeg = np.bincount(heads, minlength=n + 1)
    if skip_arc is not None:
        indeg[heads[skip_arc]] -= 1
    level = np.full(n + 1, -1, dtype=np.int64)
    frontier = np.flatnonzero(indeg[1:] == 0) + 1
    parts: list[np.ndarray] = []
    lev = 0
    done = 0
    while frontier.size:
        level[frontier] = lev
        parts.append(frontier)
        done += frontier.size
        chunks = [arcs_of(int(v)) for v in frontier.tolist()]
        idx = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)
        if skip_arc is not None:
            idx = idx[idx != skip_arc]
        hs = heads[idx]
        np.subtract.at(indeg, hs, 1)
        cand = np.unique(hs)
        frontier = cand[indeg[cand] == 0]
        lev += 1
    order = (np.concatenate(parts) if parts else np.empty(0, dtype=np.int64))
    if done < n:
        remaining = {v for v in range(1, n + 1) if level[v] < 0}
        witness = _cycle_witness_masked(net, remaining, skip_arc, reverse)
        return level, order, False, witness
    return level, order, True, None


def _cycle_witness_masked(net, remaining, skip_arc, reverse) -> int:
    arcs_of = net.out_arcs if reverse else net.in_arcs
    ends = net.heads if reverse else net.tails
    v = min(remaining)
    seen: set[int] = set()
    while v not in seen:
        seen.add(v)
        for ai in arcs_of(v).tolist():
            if ai == skip_arc:
                continue
            u = int(ends[ai])
            if u in remaining:
                v = u
                break
        else:  # pragma: no cover
            return v
    return v


def is_acyclic(net: Network) -> bool:
    return _levels(net)[2]


# --- standard form ---

@dataclass(frozen=True)
class StandardizedNetwork:
    """A network extended with source s, sink t and the feedback arc (t, s).

    `base` holds the extended network: original arcs first (order kept),
    then (s, u) for every minimal u, then (u, t) for every maximal u, then
    the feedback arc last.  s = n+1, t = n+2.
    """

    base: Network
    s: int
    t: int
    feedback_arc: int
    added_arcs: tuple[int, ...]

    @property
    def original_n(self) -> int:
        return self.s - 1

    @property
    def original_m(self) -> int:
        return self.base.m - len(self.added_arcs) - 1

    def without_feedback(self) -> Network:
        """The acyclic extension: every arc except (t, s)."""
        return Network.from_arrays(self.base.n, self.base.tails[:-1],
                                   self.base.heads[:-1],
                                   self.base.weights[:-1], self.base.labels)


def standardize(net: Network) -> StandardizedNetwork:
    """Attach s before all minimal vertices, t after all maximal ones, and
    close the flow with (t, s).  Requires an acyclic, loop-free input; an
    isolated vertex counts as both minimal and maximal.
    """
    level, _, ok, witness = _levels(net)
    if not ok:
        raise CycleError(witness)
    n = net.n
    s, t = n + 1, n + 2
    mins = [v for v in range(1, n + 1) if net.in_degree(v) == 0]
    maxs = [v for v in range(1, n + 1) if net.out_degree(v) == 0]
    tails = np.concatenate([net.tails,
                            np.full(len(mins), s, dtype=np.int64),
                            np.array(maxs, dtype=np.int64),
                            np.array([t], dtype=np.int64)])
    heads = np.concatenate([net.heads,
                            np.array(mins, dtype=np.int64),
                            np.full(len(maxs), t, dtype=np.int64),
                            np.array([s], dtype=np.int64)])
    weights = np.concatenate([net.weights,
                              np.ones(len(mins) + len(maxs) + 1,
                                      dtype=np.float64)])
    labels = list(net.labels) + ["s", "t"]
    base = Network.from_arrays(t, tails, heads, weights, labels)
    added = tuple(range(net.m, net.m + len(mins) + len(maxs)))
    return StandardizedNetwork(base, s, t, base.m - 1, added)


# --- depths ---

@dataclass(frozen=True)
class DepthMap:
    """Longest-path depths on a standardized network, feedback arc ignored.

    h[v-1]: longest arc count over paths s -> v (h[s-1] == 0).
    h_minus[v-1]: longest arc count over paths v -> t.
    H: h of t, the standardized network's full depth.
    """

    h: tuple[int, ...]
    h_minus: tuple[int, ...]
    H: int


def depths(std: StandardizedNetwork) -> DepthMap:
    fwd, _, ok, witness = _levels(std.base, skip_arc=std.feedback_arc)
    if not ok:  # pragma: no cover - standardize() guarantees acyclicity
        raise CycleError(witness)
    bwd, _, _, _ = _levels(std.base, skip_arc=std.feedback_arc, reverse=True)
    return DepthMap(tuple(int(x) for x in fwd[1:]),
                    tuple(int(x) for x in bwd[1:]),
                    int(fwd[std.t]))
