"""Graphs, partial colorings, and connected-subgraph enumeration.

Vertices are 0-based integers internally and in instance files; log and
dump output uses 1-based labels.  Colors are 1-based everywhere; ``None``
marks an uncolored vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

DEFAULT_ENUMERATION_CAP = 20


class EnumerationCapError(ValueError):
    """Raised when connected-subgraph enumeration would be too large."""


def _mask_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_connected(mask: int, adj_masks: Sequence[int]) -> bool:
    """Check that the vertices in ``mask`` induce a connected subgraph."""
    if mask == 0:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        nxt = 0
        for v in _mask_bits(frontier):
            nxt |= adj_masks[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


@dataclass(frozen=True)
class Graph:
    """Connected simple graph with a detected kind (path, tree, general)."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    kind: str = field(init=False)
    adj_masks: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        adj = [0] * n
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "adj_masks", tuple(adj))
        if not _mask_connected((1 << n) - 1, adj) and n > 1:
            raise ValueError("graph must be connected")
        path_edges = frozenset((i, i + 1) for i in range(n - 1))
        if self.edges == path_edges:
            kind = "path"
        elif len(self.edges) == n - 1:
            kind = "tree"
        else:
            kind = "general"
        object.__setattr__(self, "kind", kind)

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        norm = frozenset((min(u, v), max(u, v)) for u, v in edges)
        return cls(n, norm)

    def neighbors(self, v: int) -> list[int]:
        return list(_mask_bits(self.adj_masks[v]))


@dataclass(frozen=True)
class PartialColoring:
    """Assignment of colors in {1..k} (or None) to each vertex."""

    color_count: int
    assignment: tuple[Optional[int], ...]

    def __post_init__(self):
        if self.color_count < 1:
            raise ValueError("color_count must be positive")
        for v, c in enumerate(self.assignment):
            if c is not None and not (1 <= c <= self.color_count):
                raise ValueError(f"vertex {v} has color {c} outside 1..{self.color_count}")

    def color_class(self, c: int) -> frozenset[int]:
        return frozenset(v for v, cv in enumerate(self.assignment) if cv == c)

    def colored_vertices(self) -> list[int]:
        return [v for v, cv in enumerate(self.assignment) if cv is not None]

    def class_mask(self, c: int) -> int:
        mask = 0
        for v, cv in enumerate(self.assignment):
            if cv == c:
                mask |= 1 << v
        return mask


@dataclass(frozen=True)
class Instance:
    """A connected graph with a partial coloring and nonnegative weights.

    Uncolored vertices must carry weight 0; instances violating this are
    rejected rather than silently normalized.
    """

    graph: Graph
    coloring: PartialColoring
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        n = self.graph.vertex_count
        if len(self.coloring.assignment) != n or len(self.weights) != n:
            raise ValueError("coloring/weights length must match vertex count")
        for v, w in enumerate(self.weights):
            if w < 0:
                raise ValueError(f"vertex {v} has negative weight {w}")
            if self.coloring.assignment[v] is None and w != 0:
                raise ValueError(
                    f"uncolored vertex {v} has nonzero weight {w}; "
                    "zero it explicitly before building an instance"
                )

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))


@dataclass(frozen=True)
class ConnectedSet:
    """A vertex subset inducing a connected subgraph.

    ``interval`` is populated on paths, where every connected set is a
    contiguous run ``{lo..hi}``.
    """

    members: frozenset[int]
    mask: int
    interval: Optional[tuple[int, int]] = None

    @property
    def size(self) -> int:
        return len(self.members)

    def __repr__(self):
        if self.interval is not None:
            return f"ConnectedSet[{self.interval[0] + 1}..{self.interval[1] + 1}]"
        return f"ConnectedSet({sorted(v + 1 for v in self.members)})"


def _interval_set(lo: int, hi: int) -> ConnectedSet:
    mask = ((1 << (hi + 1)) - 1) ^ ((1 << lo) - 1)
    return ConnectedSet(frozenset(range(lo, hi + 1)), mask, (lo, hi))


def _enumerate_masks_general(adj_masks: Sequence[int], n: int) -> list[int]:
    # Grow from singletons; a set is accepted only from its canonical
    # parent (remove the largest non-minimum vertex whose removal keeps
    # the set connected), so each set is produced exactly once.
    out: list[int] = []
    stack = [1 << v for v in range(n)]
    out.extend(stack)
    while stack:
        s = stack.pop()
        mn_bit = s & -s
        nbr = 0
        for v in _mask_bits(s):
            nbr |= adj_masks[v]
        for w in _mask_bits(nbr & ~s):
            child = s | (1 << w)
            accepted = False
            for u in reversed(list(_mask_bits(child & ~(child & -child)))):
                if _mask_connected(child ^ (1 << u), adj_masks):
                    accepted = u == w
                    break
            if accepted:
                out.append(child)
                stack.append(child)
    return out


def enumerate_connected_sets(graph: Graph, cap: int = DEFAULT_ENUMERATION_CAP) -> list[ConnectedSet]:
    """All connected vertex subsets, in a canonical deterministic order.

    Order: ascending minimum vertex, then size, then lexicographic
    membership.  Paths enumerate their intervals directly; other graphs
    are refused above ``cap`` vertices because the count grows
    exponentially.
    """
    n = graph.vertex_count
    if graph.kind == "path":
        sets = []
        for lo in range(n):
            for hi in range(lo, n):
                sets.append(_interval_set(lo, hi))
        return sets
    if n > cap:
        raise EnumerationCapError(
            f"connected-subgraph enumeration refused: n={n} exceeds cap={cap} "
            "for non-path graphs (pass a larger cap explicitly to override)"
        )
    masks = _enumerate_masks_general(graph.adj_masks, n)
    sets = [ConnectedSet(frozenset(_mask_bits(m)), m) for m in masks]
    sets.sort(key=lambda s: (min(s.members), s.size, tuple(sorted(s.members))))
    return sets


def intersects(a: ConnectedSet, b: ConnectedSet) -> bool:
    """True iff the two sets share a vertex."""
    if a.interval is not None and b.interval is not None:
        return a.interval[0] <= b.interval[1] and b.interval[0] <= a.interval[1]
    return (a.mask & b.mask) != 0


def contains(outer: ConnectedSet, inner: ConnectedSet) -> bool:
    """True iff ``inner`` is a subset of ``outer``."""
    if outer.interval is not None and inner.interval is not None:
        return outer.interval[0] <= inner.interval[0] and inner.interval[1] <= outer.interval[1]
    return (inner.mask & ~outer.mask) == 0


def is_convex(graph: Graph, coloring: PartialColoring) -> bool:
    """True iff every nonempty color class induces a connected subgraph."""
    for c in range(1, coloring.color_count + 1):
        mask = coloring.class_mask(c)
        if mask and not _mask_connected(mask, graph.adj_masks):
            return False
    return True


def recolored_weight(instance: Instance, recoloring: PartialColoring) -> Fraction:
    """Total weight of originally colored vertices whose color changed.

    A vertex left uncolored by the recoloring counts as recolored when it
    was colored initially.
    """
    if recoloring.color_count != instance.coloring.color_count:
        raise ValueError("recoloring must use the same color set")
    total = Fraction(0)
    for v, c in enumerate(instance.coloring.assignment):
        if c is not None and recoloring.assignment[v] != c:
            total += instance.weights[v]
    return total


def kept_weight(instance: Instance, recoloring: PartialColoring) -> Fraction:
    """Total weight of vertices that keep their initial color."""
    if recoloring.color_count != instance.coloring.color_count:
        raise ValueError("recoloring must use the same color set")
    total = Fraction(0)
    for v, c in enumerate(instance.coloring.assignment):
        if c is not None and recoloring.assignment[v] == c:
            total += instance.weights[v]
    return total


def _weight_to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if x == int(x):
            return Fraction(int(x))
        return Fraction(x)
    raise TypeError(f"unsupported weight type {type(x)!r}")


def instance_from_json(obj: dict) -> Instance:
    """Build an instance from the JSON file schema.

    Schema: ``{"n": int, "edges": [[u,v],...], "k": int,
    "colors": [int-or-null,...], "weights": [number,...]}``.
    ``edges`` may be omitted when ``"kind": "path"`` is given.  Vertices
    are 0-based, colors 1-based.
    """
    n = int(obj["n"])
    if obj.get("kind") == "path" or "edges" not in obj:
        graph = Graph.path(n)
    else:
        graph = Graph.from_edges(n, obj["edges"])
    k = int(obj["k"])
    colors = tuple(None if c is None else int(c) for c in obj["colors"])
    coloring = PartialColoring(k, colors)
    weights = tuple(_weight_to_fraction(w) for w in obj["weights"])
    return Instance(graph, coloring, weights)


def instance_to_json(instance: Instance) -> dict:
    obj: dict = {"n": instance.graph.vertex_count, "k": instance.coloring.color_count}
    if instance.graph.kind == "path":
        obj["kind"] = "path"
    else:
        obj["edges"] = sorted([u, v] for u, v in instance.graph.edges)
    obj["colors"] = list(instance.coloring.assignment)
    obj["weights"] = [
        int(w) if w.denominator == 1 else float(w) for w in instance.weights
    ]
    return obj


def load_instance(path: str) -> Instance:
    with open(path) as fh:
        return instance_from_json(json.load(fh))


def save_instance(instance: Instance, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_json(instance), fh)
        fh.write("\n")
