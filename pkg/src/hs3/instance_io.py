"""Instance text format and a seeded random generator.

Format::

    c optional comment
    p hs3 <n> <m> <k>
    e 1 2 3
    e 2 4

Vertices are 1..n.  ``m`` is the number of edge lines that follow;
duplicate edges collapse.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .hypergraph import Hypergraph
from .rules import Instance


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class GenerationError(ValueError):
    pass


def _ints(parts: list[str], lineno: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(parts)!r}") from None


def parse(text: str) -> Instance:
    header = None
    edges: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise ParseError(lineno, "second header")
            if len(parts) != 5 or parts[1] != "hs3":
                raise ParseError(lineno, "header must be 'p hs3 <n> <m> <k>'")
            n, m, k = _ints(parts[2:], lineno)
            if n < 0 or m < 0:
                raise ParseError(lineno, "n and m must be non-negative")
            header = (n, m, k)
        elif tag == "e":
            ids = _ints(parts[1:], lineno)
            if not 1 <= len(ids) <= 3:
                raise ParseError(lineno, f"edge has {len(ids)} vertices, expected 1 to 3")
            if len(set(ids)) != len(ids):
                raise ParseError(lineno, "repeated vertex in edge")
            if header is None:
                raise ParseError(lineno, "edge before header")
            bad = [v for v in ids if not 1 <= v <= header[0]]
            if bad:
                raise ParseError(lineno, f"vertex {bad[0]} outside [1, {header[0]}]")
            edges.append(tuple(sorted(ids)))
        else:
            raise ParseError(lineno, f"unknown line type {tag!r}")
    if header is None:
        raise ParseError(0, "missing header")
    n, _, k = header
    return Instance(Hypergraph.from_edges(edges, range(1, n + 1)), k)


def serialize(inst: Instance) -> str:
    G = inst.graph
    n = max(G.vertices, default=0)
    if any(v < 1 for v in G.vertices):
        raise ValueError("vertex ids must be positive to serialize")
    edges = G.sorted_edges()
    lines = [f"p hs3 {n} {len(edges)} {inst.k}"]
    lines += ["e " + " ".join(map(str, e)) for e in edges]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GenConfig:
    n: int
    edge_count: int
    size_distribution: tuple[float, float] = (0.5, 0.5)  # P(size 2), P(size 3)
    seed: int = 0
    k: int = 0

    def __post_init__(self):
        if any(p < 0 for p in self.size_distribution) or abs(sum(self.size_distribution) - 1) > 1e-9:
            raise GenerationError(f"size probabilities {self.size_distribution} must be >= 0 and sum to 1")


def generate(cfg: GenConfig) -> Instance:
    """Random instance with ``edge_count`` distinct edges on vertices 1..n."""
    rng = random.Random(cfg.seed)
    sizes = [s for s, p in zip((2, 3), cfg.size_distribution) if p > 0]
    weights = [p for p in cfg.size_distribution if p > 0]
    room = {s: comb(cfg.n, s) for s in sizes}
    if cfg.edge_count > sum(room.values()):
        raise GenerationError(f"{cfg.edge_count} edges requested but only {sum(room.values())} are available")
    verts = list(range(1, cfg.n + 1))
    chosen: set[tuple[int, ...]] = set()
    used = dict.fromkeys(sizes, 0)
    while len(chosen) < cfg.edge_count:
        open_sizes = [(s, w) for s, w in zip(sizes, weights) if used[s] < room[s]]
        s = rng.choices([s for s, _ in open_sizes], [w for _, w in open_sizes])[0]
        if used[s] * 2 > room[s]:
            # dense: pick uniformly among the remaining subsets
            free = [e for e in combinations(verts, s) if e not in chosen]
            e = rng.choice(free)
        else:
            e = tuple(sorted(rng.sample(verts, s)))
            if e in chosen:
                continue
        chosen.add(e)
        used[s] += 1
    return Instance(Hypergraph.from_edges(sorted(chosen), verts), cfg.k)
