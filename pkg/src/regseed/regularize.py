"""One-shot regularization: recolor vertices by adjacency signatures.

A vertex ``v`` in part ``i`` gets the color of the tuple

    (G(v), G({v, u}) for u in the sampled vertices of parts j != i)

ordered by part index, then sample slot. Duplicate samples stay as separate
coordinates. Pair-edge colors are untouched.
"""

from __future__ import annotations

import numpy as np

from .graph import ColoredGraph, GraphError, PartitionwiseMap


def vertex_palette_bound(b: tuple[int, int], r: int, m: int) -> int:
    """B1(b, m) = b1 * b2**((r - 1) * m), the largest possible vertex palette of G/phi."""
    return b[0] * b[1] ** ((r - 1) * m)


def _check_map(g: ColoredGraph, phi: PartitionwiseMap) -> None:
    if len(phi.slots) != g.r:
        raise GraphError(f"map covers {len(phi.slots)} parts, graph has {g.r}")
    for i, row in enumerate(phi.slots):
        for v in row:
            if not 0 <= v < g.part_sizes[i]:
                raise GraphError(f"map sends a slot of part {i} to missing vertex {v}")


def signature_matrix(g: ColoredGraph, part: int, phi: PartitionwiseMap) -> np.ndarray:
    """Signatures of every vertex of ``part`` as rows."""
    cols = [g.vertex_colors[part][:, None]]
    for j in range(g.r):
        if j != part and phi.slots[j]:
            cols.append(g.matrix(part, j)[:, list(phi.slots[j])])
    return np.hstack(cols)


def signature(g: ColoredGraph, vertex: tuple[int, int], phi: PartitionwiseMap) -> tuple[int, ...]:
    _check_map(g, phi)
    part, v = vertex
    if not 0 <= v < g.part_sizes[part]:
        raise GraphError(f"no vertex {v} in part {part}")
    return tuple(int(x) for x in signature_matrix(g, part, phi)[v])


def intern_rows(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ids for the distinct rows, numbered in first-occurrence order.

    Returns ``(ids, distinct)`` with ``distinct[ids[k]] == rows[k]``.
    """
    uniq, first, inverse = np.unique(rows, axis=0, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    return rank[inverse.reshape(-1)], uniq[order]


def regularize_with_signatures(g: ColoredGraph, phi: PartitionwiseMap):
    """``(G/phi, signatures)`` where ``signatures[i][c]`` is the tuple behind new color c."""
    _check_map(g, phi)
    counts = set(phi.counts)
    if len(counts) > 1:
        raise GraphError(f"regularization needs the same sample count in every part, got {phi.counts}")
    m = counts.pop() if counts else 0
    colors, palettes, signatures = [], [], []
    for i in range(g.r):
        ids, distinct = intern_rows(signature_matrix(g, i, phi))
        colors.append(ids)
        palettes.append(len(distinct))
        signatures.append([tuple(int(x) for x in row) for row in distinct])
    b = (vertex_palette_bound(g.b, g.r, m), g.b[1])
    gstar = ColoredGraph(g.part_sizes, colors, g.edge_colors, palettes, g.edge_palettes, b)
    return gstar, signatures


def regularize(g: ColoredGraph, phi: PartitionwiseMap) -> ColoredGraph:
    """The regularization G/phi."""
    return regularize_with_signatures(g, phi)[0]


def compose_samples(phi1: PartitionwiseMap, phi2: PartitionwiseMap) -> PartitionwiseMap:
    """Concatenate sample lists part by part; the result refines both."""
    if len(phi1.slots) != len(phi2.slots):
        raise GraphError("maps cover different part structures")
    return PartitionwiseMap(tuple(a + b for a, b in zip(phi1.slots, phi2.slots)))
