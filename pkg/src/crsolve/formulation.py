"""The connected-subgraph integer program and its coloring correspondence.

Variables are pairs (connected set H, color c) flattened to
``set_index * k + (color - 1)``.  The base model carries one row per
vertex (each vertex covered at most once) and one row per color (each
color used on at most one set); both row families are <=-rows with
right-hand side 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from crsolve.graph import (
    ConnectedSet,
    Graph,
    Instance,
    PartialColoring,
    _mask_bits,
    enumerate_connected_sets,
    is_convex,
)

INTEGRALITY_TOL = 1e-6


class DecodeError(ValueError):
    """Raised when a point cannot be decoded into a coloring."""


@dataclass(frozen=True)
class VarId:
    """Identifier of one variable: index into the canonical set list plus a color."""

    set_index: int
    color: int

    def flat(self, k: int) -> int:
        return self.set_index * k + (self.color - 1)


@dataclass
class Model:
    """Objective and base rows of the integer program for one instance."""

    instance: Instance
    sets: list[ConnectedSet]
    k: int
    objective: dict[int, Fraction]
    rows: list  # list[Cut]; base rows only, cuts are managed by the solver
    objective_kind: str = "kept"  # "kept" for recoloring, "gain" for array assignment
    _mask_index: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._mask_index:
            self._mask_index = {s.mask: i for i, s in enumerate(self.sets)}

    @property
    def eta(self) -> int:
        return len(self.sets)

    @property
    def var_count(self) -> int:
        return len(self.sets) * self.k

    def flat(self, set_index: int, color: int) -> int:
        return set_index * self.k + (color - 1)

    def unflat(self, j: int) -> VarId:
        return VarId(j // self.k, j % self.k + 1)

    def set_index(self, H: ConnectedSet) -> int:
        try:
            return self._mask_index[H.mask]
        except KeyError:
            raise KeyError(f"{H!r} is not a connected set of this model's graph") from None

    def var_name(self, j: int) -> str:
        vid = self.unflat(j)
        s = self.sets[vid.set_index]
        if s.interval is not None:
            lo, hi = s.interval
            return f"x_H{lo + 1}_{hi + 1}_c{vid.color}"
        return f"x_s{vid.set_index}_c{vid.color}"

    def objective_dense(self) -> np.ndarray:
        c = np.zeros(self.var_count)
        for j, w in self.objective.items():
            c[j] = float(w)
        return c

    def is_path(self) -> bool:
        return self.instance.graph.kind == "path"

    def interval_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Arrays of interval endpoints, only meaningful on paths."""
        lo = np.array([s.interval[0] for s in self.sets], dtype=np.int64)
        hi = np.array([s.interval[1] for s in self.sets], dtype=np.int64)
        return lo, hi

    def dump_lp_text(self, extra_rows: Sequence = ()) -> str:
        """Debug dump in an LP-format-like text."""
        lines = ["\\ max objective"]
        terms = [
            f"{float(w):g} {self.var_name(j)}"
            for j, w in sorted(self.objective.items())
            if w != 0
        ]
        lines.append("max: " + (" + ".join(terms) if terms else "0") + ";")
        for row in list(self.rows) + list(extra_rows):
            lines.append(row.to_lp_text(self))
        return "\n".join(lines) + "\n"


def _assemble(instance: Instance, sets: list[ConnectedSet],
              objective: dict[int, Fraction], kind: str) -> Model:
    from crsolve.cuts import Cut  # deferred; cuts imports this module's types

    k = instance.coloring.color_count
    rows = []
    n = instance.graph.vertex_count
    for v in range(n):
        coeffs = {}
        for i, s in enumerate(sets):
            if (s.mask >> v) & 1:
                for c in range(1, k + 1):
                    coeffs[i * k + (c - 1)] = 1
        rows.append(Cut(coeffs=coeffs, rhs=1, provenance=("vertex", v)))
    for c in range(1, k + 1):
        coeffs = {i * k + (c - 1): 1 for i in range(len(sets))}
        rows.append(Cut(coeffs=coeffs, rhs=1, provenance=("color", c)))
    return Model(instance=instance, sets=sets, k=k, objective=objective, rows=rows,
                 objective_kind=kind)


def build_model(instance: Instance, cap: Optional[int] = None) -> Model:
    """Build the integer program for a recoloring instance.

    The objective coefficient of (H, c) is the total weight of vertices
    of H whose initial color is c.
    """
    k = instance.coloring.color_count
    if k < 2:
        raise ValueError("model construction needs at least 2 colors")
    sets = (
        enumerate_connected_sets(instance.graph)
        if cap is None
        else enumerate_connected_sets(instance.graph, cap)
    )
    coloring = instance.coloring.assignment
    weights = instance.weights
    objective: dict[int, Fraction] = {}
    for i, s in enumerate(sets):
        per_color: dict[int, Fraction] = {}
        for v in _mask_bits(s.mask):
            c = coloring[v]
            if c is not None and weights[v] != 0:
                per_color[c] = per_color.get(c, Fraction(0)) + weights[v]
        for c, w in per_color.items():
            objective[i * k + (c - 1)] = w
    return _assemble(instance, sets, objective, "kept")


def chi(model: Model, coloring: PartialColoring) -> np.ndarray:
    """Incidence vector of a convex coloring: entry (H, c) is 1 iff H is
    exactly the class of color c."""
    if coloring.color_count != model.k:
        raise ValueError("coloring uses a different color count than the model")
    if not is_convex(model.instance.graph, coloring):
        raise ValueError("coloring is not convex; no incidence vector exists")
    x = np.zeros(model.var_count)
    for c in range(1, model.k + 1):
        mask = coloring.class_mask(c)
        if mask:
            i = model._mask_index[mask]
            x[model.flat(i, c)] = 1.0
    return x


def decode(model: Model, point: np.ndarray) -> PartialColoring:
    """Recover the partial coloring of an integral feasible point.

    Vertices covered by a set with x[H,c] = 1 receive color c; all other
    vertices stay uncolored.
    """
    x = np.asarray(point, dtype=float)
    if x.shape != (model.var_count,):
        raise DecodeError(f"point has shape {x.shape}, expected ({model.var_count},)")
    rounded = np.rint(x)
    if np.max(np.abs(x - rounded)) > INTEGRALITY_TOL:
        j = int(np.argmax(np.abs(x - rounded)))
        raise DecodeError(f"point is fractional at {model.var_name(j)} = {x[j]!r}")
    ints = rounded.astype(np.int64)
    if np.any(ints < 0) or np.any(ints > 1):
        j = int(np.argmax((ints < 0) | (ints > 1)))
        raise DecodeError(f"entry {model.var_name(j)} = {ints[j]} outside {{0,1}}")
    for row in model.rows:
        lhs = sum(coef * ints[j] for j, coef in row.coeffs.items())
        if lhs > row.rhs:
            raise DecodeError(f"point violates row {row.describe(model)}: {lhs} > {row.rhs}")
    assignment: list[Optional[int]] = [None] * model.instance.graph.vertex_count
    for j in np.flatnonzero(ints):
        vid = model.unflat(int(j))
        for v in model.sets[vid.set_index].members:
            assignment[v] = vid.color
    return PartialColoring(model.k, tuple(assignment))


def extend_to_total(graph: Graph, coloring: PartialColoring,
                    prefer: str = "adjacent") -> PartialColoring:
    """Extend a convex partial coloring to a convex total coloring.

    ``prefer="adjacent"`` grows existing classes outward; ``prefer="fresh"``
    gives each uncovered region an unused color when one is available.
    Both strategies preserve convexity.
    """
    if not is_convex(graph, coloring):
        raise ValueError("cannot extend a non-convex coloring")
    n = graph.vertex_count
    assignment = list(coloring.assignment)
    k = coloring.color_count
    used = {c for c in assignment if c is not None}
    unused = [c for c in range(1, k + 1) if c not in used]

    if prefer == "fresh":
        # color each maximal uncovered connected region with one fresh color
        seen = [a is not None for a in assignment]
        for v in range(n):
            if seen[v]:
                continue
            comp = [v]
            seen[v] = True
            queue = [v]
            while queue:
                u = queue.pop()
                for w in graph.neighbors(u):
                    if not seen[w] and assignment[w] is None:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            if unused:
                c = unused.pop(0)
                for u in comp:
                    assignment[u] = c
            else:
                assignment = _grow_adjacent(graph, assignment)
                break
        if any(a is None for a in assignment):
            assignment = _grow_adjacent(graph, assignment)
    else:
        assignment = _grow_adjacent(graph, assignment)
        if any(a is None for a in assignment):  # nothing was colored at all
            c = unused[0] if unused else 1
            assignment = [c] * n
    return PartialColoring(k, tuple(assignment))


def _grow_adjacent(graph: Graph, assignment: list) -> list:
    # BFS outward from colored vertices; an uncovered vertex takes the
    # color of the class that reaches it first, which keeps every class
    # connected.
    frontier = [v for v, a in enumerate(assignment) if a is not None]
    out = list(assignment)
    while frontier:
        nxt = []
        for v in frontier:
            for w in graph.neighbors(v):
                if out[w] is None:
                    out[w] = out[v]
                    nxt.append(w)
        frontier = nxt
    return out


def kept_to_recolored(instance: Instance, kept_value):
    """Convert a kept-weight value into the recoloring cost it implies."""
    total = instance.total_weight
    if isinstance(kept_value, (int, Fraction)):
        return total - Fraction(kept_value)
    return float(total) - float(kept_value)
