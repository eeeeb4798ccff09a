"""Test-corpus generators and the ``--graph`` source syntax."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import ColoredGraph, GraphError, validate_graph
from .io import read_graph

BLACK, WHITE = 0, 1
KINDS = ("monochromatic", "uniform_random", "half_graph", "planted_blocks")


@dataclass(frozen=True)
class GeneratorSpec:
    """``params``: uniform_random takes b1, b2; half_graph takes n;
    planted_blocks takes k, noise and optionally b2."""

    kind: str
    part_sizes: tuple[int, ...] = (4, 4)
    seed: int = 0
    params: dict = field(default_factory=dict)


def _assemble(sizes, vertex, edges, b) -> ColoredGraph:
    r = len(sizes)
    g = ColoredGraph(sizes, vertex, edges, [b[0]] * r, {k: b[1] for k in edges}, b)
    validate_graph(g)
    return g


def monochromatic(part_sizes: Sequence[int]) -> ColoredGraph:
    sizes = list(part_sizes)
    edges = {(i, j): np.zeros((sizes[i], sizes[j]), dtype=np.int64)
             for i, j in itertools.combinations(range(len(sizes)), 2)}
    return _assemble(sizes, [np.zeros(n, dtype=np.int64) for n in sizes], edges, (1, 1))


def uniform_random(part_sizes: Sequence[int], b1: int, b2: int, seed: int = 0) -> ColoredGraph:
    rng = np.random.default_rng(seed)
    sizes = list(part_sizes)
    vertex = [rng.integers(0, b1, n) for n in sizes]
    edges = {(i, j): rng.integers(0, b2, (sizes[i], sizes[j]))
             for i, j in itertools.combinations(range(len(sizes)), 2)}
    return _assemble(sizes, vertex, edges, (b1, b2))


def half_graph(n: int) -> ColoredGraph:
    """Two parts of size n; edge (i, j) is black iff i <= j."""
    idx = np.arange(n)
    mat = np.where(idx[:, None] <= idx[None, :], BLACK, WHITE)
    return _assemble([n, n], [np.zeros(n, dtype=np.int64)] * 2, {(0, 1): mat}, (1, 2))


def planted_blocks(part_sizes: Sequence[int], k: int, noise: float, seed: int = 0,
                   b2: int = 2) -> ColoredGraph:
    """Vertex v of a part of size n lies in class v*k//n; each class pair gets a
    random color, then every edge is recolored uniformly at random with
    probability ``noise``."""
    if k < 1 or not 0 <= noise <= 1:
        raise GraphError("need k >= 1 and noise in [0, 1]")
    rng = np.random.default_rng(seed)
    sizes = list(part_sizes)
    classes = [np.arange(n) * k // n for n in sizes]
    edges = {}
    for i, j in itertools.combinations(range(len(sizes)), 2):
        table = rng.integers(0, b2, (k, k))
        mat = table[classes[i][:, None], classes[j][None, :]]
        flip = rng.random(mat.shape) < noise
        mat = np.where(flip, rng.integers(0, b2, mat.shape), mat)
        edges[(i, j)] = mat
    return _assemble(sizes, [np.zeros(n, dtype=np.int64) for n in sizes], edges, (1, b2))


def generate(spec: GeneratorSpec) -> ColoredGraph:
    if any(n < 1 for n in spec.part_sizes):
        raise GraphError("part sizes must be at least 1")
    p = spec.params
    if spec.kind == "monochromatic":
        return monochromatic(spec.part_sizes)
    if spec.kind == "uniform_random":
        return uniform_random(spec.part_sizes, p.get("b1", 1), p.get("b2", 2), spec.seed)
    if spec.kind == "half_graph":
        return half_graph(p.get("n", spec.part_sizes[0]))
    if spec.kind == "planted_blocks":
        return planted_blocks(spec.part_sizes, p.get("k", 2), p.get("noise", 0.0), spec.seed,
                              p.get("b2", 2))
    raise GraphError(f"unknown generator {spec.kind!r}")


def _sizes(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def parse_source(source: str, seed: int = 0) -> GeneratorSpec | str:
    """``half:N``, ``mono:S``, ``uniform:S:B1:B2``, ``planted:S:K:NOISE``
    (S a comma-separated size list) or else a file path."""
    kind, _, rest = source.partition(":")
    args = rest.split(":") if rest else []
    try:
        if kind == "half" and len(args) == 1:
            n = int(args[0])
            return GeneratorSpec("half_graph", (n, n), seed, {"n": n})
        if kind == "mono" and len(args) == 1:
            return GeneratorSpec("monochromatic", _sizes(args[0]), seed)
        if kind == "uniform" and len(args) == 3:
            return GeneratorSpec("uniform_random", _sizes(args[0]), seed,
                                 {"b1": int(args[1]), "b2": int(args[2])})
        if kind == "planted" and len(args) == 3:
            return GeneratorSpec("planted_blocks", _sizes(args[0]), seed,
                                 {"k": int(args[1]), "noise": float(args[2])})
    except ValueError as exc:
        raise GraphError(f"bad graph source {source!r}: {exc}") from None
    if kind in ("half", "mono", "uniform", "planted") and not os.path.exists(source):
        raise GraphError(f"bad graph source {source!r}")
    return source


def load_source(source: str, seed: int = 0) -> ColoredGraph:
    spec = parse_source(source, seed)
    return read_graph(spec) if isinstance(spec, str) else generate(spec)
