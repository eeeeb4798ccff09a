"""Colored r-partite graphs, complexes (templates) and partitionwise maps.

Vertices are dense integer indices inside each part, colors are small
integer ids into a per-part (vertices) or per-pair (edges) palette.
Template vertices of a complex are addressed as ``(part, slot)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb, prod
from typing import Iterator, Mapping, Optional, Sequence, Union

import numpy as np

Pair = tuple[int, int]
Slot = tuple[int, int]
EdgeSlot = tuple[int, int, int, int]


class GraphError(ValueError):
    """A graph, complex or map violates one of its structural invariants."""


class WorkCapExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the caller's work cap."""

    def __init__(self, work: int, cap: int):
        super().__init__(f"exhaustive enumeration needs {work} steps, cap is {cap}")
        self.work = work
        self.cap = cap


def _frozen(a, dtype=np.int64) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ColoredGraph:
    """A ``(b1, b2)``-colored r-partite graph.

    ``edge_colors[(i, j)]`` (with ``i < j``) is an ``|part i| x |part j|``
    matrix of color ids. Construction normalizes and freezes the arrays but
    does not validate; call :func:`validate_graph` for that.
    """

    part_sizes: tuple[int, ...]
    vertex_colors: tuple[np.ndarray, ...]
    edge_colors: Mapping[Pair, np.ndarray]
    vertex_palettes: tuple[int, ...]
    edge_palettes: Mapping[Pair, int]
    b: tuple[int, int]

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "part_sizes", tuple(int(n) for n in self.part_sizes))
        set_(self, "vertex_colors", tuple(_frozen(v) for v in self.vertex_colors))
        set_(self, "edge_colors", {tuple(k): _frozen(m) for k, m in sorted(self.edge_colors.items())})
        set_(self, "vertex_palettes", tuple(int(p) for p in self.vertex_palettes))
        set_(self, "edge_palettes", {tuple(k): int(p) for k, p in sorted(self.edge_palettes.items())})
        set_(self, "b", (int(self.b[0]), int(self.b[1])))

    @property
    def r(self) -> int:
        return len(self.part_sizes)

    @property
    def pairs(self) -> list[Pair]:
        return list(itertools.combinations(range(self.r), 2))

    def matrix(self, i: int, j: int) -> np.ndarray:
        """Edge colors between parts i and j, rows indexed by part i."""
        if i < j:
            return self.edge_colors[(i, j)]
        return self.edge_colors[(j, i)].T

    def edge_color(self, i: int, vi: int, j: int, vj: int) -> int:
        if i < j:
            return int(self.edge_colors[(i, j)][vi, vj])
        return int(self.edge_colors[(j, i)][vj, vi])

    def palette(self, index: tuple[int, ...]) -> int:
        """|C_I| for a one-part or two-part index."""
        if len(index) == 1:
            return self.vertex_palettes[index[0]]
        return self.edge_palettes[tuple(sorted(index))]


def validate_graph(g: ColoredGraph) -> None:
    """Raise :class:`GraphError` naming the first violated invariant."""
    r = g.r
    if r < 2:
        raise GraphError(f"need at least 2 parts, got {r}")
    b1, b2 = g.b
    for i, n in enumerate(g.part_sizes):
        if n < 1:
            raise GraphError(f"part {i}: size {n} < 1")
    if len(g.vertex_colors) != r or len(g.vertex_palettes) != r:
        raise GraphError(f"expected vertex colors and palettes for {r} parts")
    for i, (colors, pal) in enumerate(zip(g.vertex_colors, g.vertex_palettes)):
        if pal < 1 or pal > b1:
            raise GraphError(f"part {i}: vertex palette size {pal} outside [1, b1={b1}]")
        if colors.shape != (g.part_sizes[i],):
            raise GraphError(f"part {i}: expected {g.part_sizes[i]} vertex colors, got shape {colors.shape}")
        bad = np.flatnonzero((colors < 0) | (colors >= pal))
        if bad.size:
            v = int(bad[0])
            raise GraphError(f"part {i} vertex {v}: color {int(colors[v])} overflows palette of size {pal}")
    expected = set(g.pairs)
    for key in g.edge_colors:
        if key not in expected:
            raise GraphError(f"unexpected pair {key}")
    for i, j in g.pairs:
        if (i, j) not in g.edge_colors:
            raise GraphError(f"missing pair ({i}, {j})")
        if (i, j) not in g.edge_palettes:
            raise GraphError(f"pair ({i}, {j}): missing palette size")
        pal = g.edge_palettes[(i, j)]
        if pal < 1 or pal > b2:
            raise GraphError(f"pair ({i}, {j}): palette size {pal} outside [1, b2={b2}]")
        m = g.edge_colors[(i, j)]
        if m.shape != (g.part_sizes[i], g.part_sizes[j]):
            raise GraphError(f"pair ({i}, {j}): matrix shape {m.shape}, expected "
                             f"{(g.part_sizes[i], g.part_sizes[j])}")
        bad = np.argwhere((m < 0) | (m >= pal))
        if bad.size:
            a, c = (int(x) for x in bad[0])
            raise GraphError(f"pair ({i}, {j}) entry [{a}, {c}]: color {int(m[a, c])} "
                             f"overflows palette of size {pal}")


@dataclass(frozen=True)
class TotalColor:
    """Total color of a vertex or a pair edge.

    For a vertex ``index == (i,)``, ``color`` is the vertex color and
    ``frame`` is empty. For an edge ``index == (i, j)`` with ``i < j``,
    ``color`` is the edge color and ``frame`` the endpoint colors in
    part order.
    """

    index: tuple[int, ...]
    color: int
    frame: tuple[int, ...] = ()

    def __post_init__(self):
        expected_frame = {1: 0, 2: 2}.get(len(self.index))
        if expected_frame is None or len(self.frame) != expected_frame:
            raise GraphError(f"malformed total color {self.index}, {self.frame}")

    @property
    def is_vertex(self) -> bool:
        return len(self.index) == 1

    def to_list(self) -> list:
        return [list(self.index), self.color, list(self.frame)]


Locator = Union[tuple[int, int], tuple[tuple[int, int], tuple[int, int]]]


def total_color(g: ColoredGraph, loc: Locator) -> TotalColor:
    """Total color at a vertex ``(part, v)`` or an edge ``((i, vi), (j, vj))``."""
    if isinstance(loc[0], (tuple, list)):
        (i, vi), (j, vj) = loc
        if i == j:
            raise GraphError(f"edge endpoints lie in the same part {i}")
        if i > j:
            (i, vi), (j, vj) = (j, vj), (i, vi)
        _check_vertex(g, i, vi)
        _check_vertex(g, j, vj)
        return TotalColor((i, j), g.edge_color(i, vi, j, vj),
                          (int(g.vertex_colors[i][vi]), int(g.vertex_colors[j][vj])))
    i, v = loc
    _check_vertex(g, i, v)
    return TotalColor((i,), int(g.vertex_colors[i][v]))


def _check_vertex(g: ColoredGraph, i: int, v: int) -> None:
    if not 0 <= i < g.r or not 0 <= v < g.part_sizes[i]:
        raise GraphError(f"no vertex {v} in part {i}")


@dataclass(frozen=True, eq=False)
class Complex:
    """A template with ``h`` vertices per part; ``None`` marks invisible.

    ``edges`` holds visible pair edges only, keyed ``(i, a, j, b)`` with
    ``i < j`` for template vertices ``(i, a)`` and ``(j, b)``.
    """

    r: int
    h: int
    vertices: tuple[tuple[Optional[int], ...], ...]
    edges: Mapping[EdgeSlot, int]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(row) for row in self.vertices))
        edges = {}
        for (i, a, j, b), c in self.edges.items():
            key = (i, a, j, b) if i < j else (j, b, i, a)
            if key in edges:
                raise GraphError(f"edge {key} given twice")
            edges[key] = int(c)
        object.__setattr__(self, "edges", dict(sorted(edges.items())))

    @classmethod
    def build(cls, r: int, h: int, vertices: Mapping[Slot, int] = (),
              edges: Mapping[EdgeSlot, int] = ()) -> "Complex":
        """Complex with the given visible vertices and edges, all else invisible."""
        rows = [[None] * h for _ in range(r)]
        for (i, a), c in dict(vertices).items():
            rows[i][a] = c
        return cls(r, h, rows, dict(edges))

    def visible_vertices(self) -> list[tuple[int, int, int]]:
        return [(i, a, c) for i, row in enumerate(self.vertices)
                for a, c in enumerate(row) if c is not None]

    def visible_edges(self) -> list[tuple[int, int, int, int, int]]:
        return [(i, a, j, b, c) for (i, a, j, b), c in self.edges.items()]

    def edge_total_color(self, key: EdgeSlot) -> TotalColor:
        i, a, j, b = key
        return TotalColor((i, j), self.edges[key], (self.vertices[i][a], self.vertices[j][b]))

    def vertex_total_color(self, i: int, a: int) -> TotalColor:
        return TotalColor((i,), self.vertices[i][a])

    def active_slots(self) -> list[Slot]:
        """Template vertices constrained by some visible vertex or edge."""
        slots = {(i, a) for i, a, _ in self.visible_vertices()}
        for i, a, j, b, _ in self.visible_edges():
            slots.update([(i, a), (j, b)])
        return sorted(slots)

    def to_dict(self) -> dict:
        return {"r": self.r, "h": self.h, "vertices": [list(row) for row in self.vertices],
                "edges": [[i, a, j, b, c] for (i, a, j, b), c in self.edges.items()]}


def validate_complex(s: Complex, g: ColoredGraph) -> None:
    """Raise :class:`GraphError` unless ``s`` is a complex usable against ``g``."""
    if s.r != g.r:
        raise GraphError(f"complex has {s.r} parts, graph has {g.r}")
    if s.h < 0 or len(s.vertices) != s.r or any(len(row) != s.h for row in s.vertices):
        raise GraphError(f"every part of the complex must hold exactly h={s.h} vertices")
    for i, a, c in s.visible_vertices():
        if not 0 <= c < g.vertex_palettes[i]:
            raise GraphError(f"template vertex ({i}, {a}): unknown color {c} "
                             f"(palette size {g.vertex_palettes[i]})")
    for i, a, j, b, c in s.visible_edges():
        if not (0 <= i < j < s.r and 0 <= a < s.h and 0 <= b < s.h):
            raise GraphError(f"template edge {(i, a, j, b)} out of range")
        if s.vertices[i][a] is None or s.vertices[j][b] is None:
            raise GraphError(f"closure violated: edge {(i, a, j, b)} is visible but an endpoint is invisible")
        pal = g.edge_palettes[(i, j)]
        if not 0 <= c < pal:
            raise GraphError(f"template edge {(i, a, j, b)}: unknown color {c} (palette size {pal})")
    n1, n2 = len(s.visible_vertices()), len(s.edges)
    assert n1 <= s.r * s.h and n2 <= comb(s.r, 2) * s.h ** 2


@dataclass(frozen=True)
class PartitionwiseMap:
    """Target vertices per part, one entry per template slot."""

    slots: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(tuple(int(v) for v in row) for row in self.slots))

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.slots)

    @classmethod
    def empty(cls, r: int) -> "PartitionwiseMap":
        return cls(((),) * r)


def random_partitionwise_map(part_sizes: Sequence[int], counts: Sequence[int],
                             rng: np.random.Generator) -> PartitionwiseMap:
    """Each slot drawn uniformly and independently from its part."""
    slots = []
    for i, (n, k) in enumerate(zip(part_sizes, counts)):
        if k < 0:
            raise GraphError(f"part {i}: negative sample count {k}")
        if k > 0 and n < 1:
            raise GraphError(f"part {i} is empty but {k} samples were requested")
        slots.append(tuple(rng.integers(0, n, size=k).tolist()) if k else ())
    return PartitionwiseMap(tuple(slots))


def count_maps(part_sizes: Sequence[int], counts: Sequence[int], cap: Optional[int] = None) -> int:
    """Number of maps, or ``cap + 1`` when it provably exceeds ``cap``."""
    if cap is not None:
        log_work = sum(int(k) * math.log2(n) for n, k in zip(part_sizes, counts) if n > 1)
        if log_work > math.log2(cap) + 1:
            return cap + 1
    return prod(int(n) ** int(k) for n, k in zip(part_sizes, counts))


def enumerate_maps(part_sizes: Sequence[int], counts: Sequence[int],
                   work_cap: int) -> Iterator[PartitionwiseMap]:
    """Every partitionwise map exactly once, in lexicographic order."""
    total = count_maps(part_sizes, counts, work_cap)
    if total > work_cap:
        raise WorkCapExceeded(total, work_cap)
    per_part = [list(itertools.product(range(n), repeat=k)) for n, k in zip(part_sizes, counts)]
    for combo in itertools.product(*per_part):
        yield PartitionwiseMap(combo)
