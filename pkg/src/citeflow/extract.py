"""Substructure extraction: main paths, critical paths, arc cuts, islands.

All extractors consume a weight vector and return vertex/arc index sets, so
any weighting method can drive them.  Float weight comparisons treat values
within a relative 1e-12 as tied; exact-integer weights compare exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .acyclic import StandardizedNetwork
from .network import ArcWeights, Network
from .pajek import write_pajek

_REL_TIE = 1e-12


def _tied(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= _REL_TIE * max(abs(a), abs(b))


@dataclass(frozen=True)
class Subnetwork:
    """A vertex/arc selection inside a parent network.

    `arcs` holds parent arc indices (ascending).  For arc cuts the weak
    components of the selection are reported so callers can keep only the
    main chunk.
    """

    parent: Network
    vertices: frozenset[int]
    arcs: tuple[int, ...]
    kind: str  # "main_path" | "cpm_path" | "arc_cut" | "island"
    components: tuple[frozenset[int], ...] = ()

    def to_network(self) -> Network:
        """Materialize with dense 1-based ids (original labels kept)."""
        verts = sorted(self.vertices)
        remap = {v: i + 1 for i, v in enumerate(verts)}
        arcs = [(remap[int(self.parent.tails[i])],
                 remap[int(self.parent.heads[i])],
                 float(self.parent.weights[i])) for i in self.arcs]
        return Network(len(verts), arcs, [self.parent.label(v) for v in verts])


def write_subnetwork(sub: Subnetwork, weights: ArcWeights | None = None) -> str:
    """Pajek text for a subnetwork; `weights` (aligned with the parent's
    arcs) overrides the written arc weight column."""
    verts = sorted(sub.vertices)
    remap = {v: i + 1 for i, v in enumerate(verts)}
    net = Network(
        len(verts),
        [(remap[int(sub.parent.tails[i])], remap[int(sub.parent.heads[i])],
          float(weights[i]) if weights is not None
          else float(sub.parent.weights[i])) for i in sub.arcs],
        [sub.parent.label(v) for v in verts])
    return write_pajek(net)


def _aligned(std: StandardizedNetwork, w: ArcWeights):
    """Weight vector stretched to the standardized arc list.

    Flow-method vectors already line up.  Vectors computed on the original
    network (closure methods) get weight 0 on the auxiliary s/t arcs and the
    feedback arc, which keeps the traversals well-defined.
    """
    if len(w) == std.base.m:
        return list(w), w.mode == "exact"
    if len(w) == std.original_m:
        vals = list(w) + [0] * (std.base.m - std.original_m)
        return vals, w.mode == "exact"
    raise ValueError("weight vector matches neither the standardized nor "
                     "the original arc count")


# --- main path ---

def main_path(std: StandardizedNetwork, w: ArcWeights,
              single: bool = False) -> Subnetwork:
    """Greedy forward closure along locally heaviest arcs.

    Starting at the source, every visited vertex contributes its maximum
    weight out-arcs (all of them when tied), so the result can branch; with
    `single` ties break toward the smallest head id and exactly one chain
    comes back.  The source, sink and their auxiliary arcs are stripped from
    the report.
    """
    vals, exact = _aligned(std, w)
    base, fb = std.base, std.feedback_arc
    visited = {std.s}
    chosen: set[int] = set()
    frontier = [std.s]
    while frontier:
        nxt: list[int] = []
        for v in sorted(frontier):
            out = [ai for ai in base.out_arcs(v).tolist() if ai != fb]
            if not out:
                continue
            best = max(vals[ai] for ai in out)
            take = [ai for ai in out if _tied(vals[ai], best, exact)]
            if single:
                take = [min(take, key=lambda ai: (int(base.heads[ai]), ai))]
            for ai in take:
                chosen.add(ai)
                head = int(base.heads[ai])
                if head not in visited:
                    visited.add(head)
                    nxt.append(head)
        frontier = nxt
    keep = tuple(sorted(ai for ai in chosen if ai < std.original_m))
    verts = frozenset(visited - {std.s, std.t})
    return Subnetwork(base, verts, keep, "main_path")


# --- critical path ---

def cpm_path(std: StandardizedNetwork, w: ArcWeights) -> Subnetwork:
    """Arcs and vertices lying on maximum-total-weight source-sink paths.

    Classic two-sweep longest-path dynamic program over the topological
    stages; every optimal path is reported when totals tie (exactly in
    integer weights, within relative 1e-12 in float).
    """
    from .acyclic import _levels

    vals, exact = _aligned(std, w)
    base, fb = std.base, std.feedback_arc
    _, order, ok, _ = _levels(base, skip_arc=fb)
    assert ok  # standardized networks are acyclic without the feedback arc
    seq = order.tolist()
    zero = 0 if exact else 0.0
    fdist = [None] * (base.n + 1)  # best total s -> v
    fdist[std.s] = zero
    for v in seq:
        if v == std.s:
            continue
        best = None
        for ai in base.in_arcs(v).tolist():
            if ai == fb:
                continue
            d = fdist[int(base.tails[ai])]
            if d is None:
                continue
            cand = d + vals[ai]
            if best is None or cand > best:
                best = cand
        fdist[v] = best
    gdist = [None] * (base.n + 1)  # best total v -> t
    gdist[std.t] = zero
    for v in reversed(seq):
        if v == std.t:
            continue
        best = None
        for ai in base.out_arcs(v).tolist():
            if ai == fb:
                continue
            d = gdist[int(base.heads[ai])]
            if d is None:
                continue
            cand = d + vals[ai]
            if best is None or cand > best:
                best = cand
        gdist[v] = best
    optimum = fdist[std.t]
    chosen = []
    for ai in range(base.m):
        if ai == fb:
            continue
        u, v = int(base.tails[ai]), int(base.heads[ai])
        if fdist[u] is None or gdist[v] is None:
            continue
        if _tied(fdist[u] + vals[ai] + gdist[v], optimum, exact):
            chosen.append(ai)
    verts = {v for v in range(1, base.n + 1)
             if fdist[v] is not None and gdist[v] is not None
             and _tied(fdist[v] + gdist[v], optimum, exact)}
    keep = tuple(ai for ai in chosen if ai < std.original_m)
    return Subnetwork(base, frozenset(verts - {std.s, std.t}), keep, "cpm_path")


# --- arc cut ---

def arc_cut(net: Network, w: ArcWeights, threshold) -> Subnetwork:
    """Keep arcs with weight >= threshold, drop vertices the cut isolates."""
    if len(w) != net.m:
        raise ValueError("weight vector does not match arc count")
    keep = tuple(i for i in range(net.m) if w[i] >= threshold)
    verts = set()
    for i in keep:
        verts.add(int(net.tails[i]))
        verts.add(int(net.heads[i]))
    comps = _weak_components(net, keep, verts)
    return Subnetwork(net, frozenset(verts), keep, "arc_cut", comps)


def _weak_components(net, arc_ids, verts) -> tuple[frozenset[int], ...]:
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in arc_ids:
        a, b = find(int(net.tails[i])), find(int(net.heads[i]))
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = {}
    for v in verts:
        groups.setdefault(find(v), set()).add(v)
    return tuple(frozenset(groups[r]) for r in sorted(groups))


# --- islands ---

@dataclass(frozen=True)
class Island:
    """A locally heavy cluster: internally connected by arcs of weight >=
    internal_min while every arc to the outside is strictly lighter.
    external_max is None when no outside arc touches the island at all."""

    vertices: frozenset[int]
    internal_min: object
    external_max: object

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class IslandSet:
    islands: tuple[Island, ...]
    min_size: int
    max_size: int

    def membership(self, n: int) -> list[int]:
        """Per-vertex island number (1-based, 0 = no island)."""
        out = [0] * n
        for num, isl in enumerate(self.islands, start=1):
            for v in isl.vertices:
                out[v - 1] = num
        return out

    def size_frequencies(self) -> dict[int, int]:
        freq: dict[int, int] = {}
        for isl in self.islands:
            freq[isl.size] = freq.get(isl.size, 0) + 1
        return freq


def islands(net: Network, w: ArcWeights, min_size: int = 2,
            max_size: int | None = None) -> IslandSet:
    """All maximal clusters with size in [min_size, max_size] that a weight
    threshold can isolate.

    Arcs are processed in decreasing weight order (equal weights together);
    union-find merges build the cluster hierarchy and a cluster freezes into
    an island at the last moment its size stays within max_size.  Loops are
    ignored; vertices never touched by an arc belong to no island.
    """
    if len(w) != net.m:
        raise ValueError("weight vector does not match arc count")
    if max_size is None:
        max_size = net.n
    if min_size < 1 or max_size < min_size:
        raise ValueError("need 1 <= min_size <= max_size")

    vals = list(w)
    by_weight = sorted((i for i in range(net.m)
                        if net.tails[i] != net.heads[i]),
                       key=lambda i: vals[i], reverse=True)

    parent: dict[int, int] = {}
    node_of: dict[int, int] = {}   # union-find root vertex -> dendrogram node
    # dendrogram node: [level, size, child_a, child_b, vertex_or_None]
    nodes: list[list] = []
    node_parent_level: list = []

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def leaf(v: int) -> None:
        if v not in parent:
            parent[v] = v
            node_of[v] = len(nodes)
            nodes.append([None, 1, None, None, v])
            node_parent_level.append(None)

    pos = 0
    while pos < len(by_weight):
        level = vals[by_weight[pos]]
        end = pos
        while end < len(by_weight) and vals[by_weight[end]] == level:
            end += 1
        for i in by_weight[pos:end]:
            t, h = int(net.tails[i]), int(net.heads[i])
            leaf(t)
            leaf(h)
            rt, rh = find(t), find(h)
            if rt == rh:
                continue
            a, b = node_of[rt], node_of[rh]
            node_parent_level[a] = level
            node_parent_level[b] = level
            nodes.append([level, nodes[a][1] + nodes[b][1], a, b, None])
            node_parent_level.append(None)
            parent[rh] = rt
            node_of[rt] = len(nodes) - 1
        pos = end

    found: list[Island] = []
    roots = [node_of[v] for v in node_of if find(v) == v]
    stack = list(roots)
    while stack:
        ni = stack.pop()
        level, size, a, b, v = nodes[ni]
        if v is not None or size < min_size:
            continue  # leaves and undersized clusters carry nothing below
        up = node_parent_level[ni]
        real = up is None or up < level
        if real and size <= max_size:
            members = _collect(nodes, ni)
            found.append(Island(frozenset(members), level, up))
        else:
            stack.append(a)
            stack.append(b)

    found.sort(key=lambda isl: min(isl.vertices))
    found.sort(key=lambda isl: isl.internal_min, reverse=True)
    return IslandSet(tuple(found), min_size, max_size)


def _collect(nodes, ni) -> list[int]:
    out = []
    stack = [ni]
    while stack:
        i = stack.pop()
        _, _, a, b, v = nodes[i]
        if v is not None:
            out.append(v)
        else:
            stack.extend((a, b))
    return out
