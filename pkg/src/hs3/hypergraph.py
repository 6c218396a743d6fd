"""Immutable 3-hypergraph values and the structural queries used by the rules."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

Edge = tuple[int, ...]
Op = tuple[str, int]

PLUS = "+"
MINUS = "-"


class InvariantViolation(AssertionError):
    """Raised when an internal invariant of the algorithm is broken."""


class UnionFind:
    """Disjoint-set forest with path halving and union by size."""

    def __init__(self, items: Iterable[int] = ()):
        self._parent: dict[int, int] = {}
        self._size: dict[int, int] = {}
        for item in items:
            self.add(item)

    def add(self, a: int) -> None:
        if a not in self._parent:
            self._parent[a] = a
            self._size[a] = 1

    def find(self, a: int) -> int:
        parent = self._parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for a in self._parent:
            out.setdefault(self.find(a), []).append(a)
        blocks = [sorted(b) for b in out.values()]
        blocks.sort(key=lambda b: b[0])
        return blocks


def _edge(e: Iterable[int]) -> Edge:
    return tuple(sorted(set(e)))


@dataclass(frozen=True, eq=True)
class Hypergraph:
    """A hypergraph whose hyperedges have size at most 3.

    Hyperedges are stored as sorted tuples, so a hypergraph compares equal to
    another one with the same vertex set and the same family of vertex sets.
    Empty hyperedges are representable (they mark a no-instance) but never
    produced by :func:`minus` without raising.
    """

    vertices: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self):
        for e in self.edges:
            if len(e) > 3:
                raise ValueError(f"hyperedge {e} has more than 3 vertices")
            if not self.vertices.issuperset(e):
                raise ValueError(f"hyperedge {e} uses unknown vertices")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], vertices: Iterable[int] = ()) -> "Hypergraph":
        es = frozenset(_edge(e) for e in edges)
        vs = set(vertices)
        for e in es:
            if len(e) == 0:
                raise ValueError("empty hyperedge")
            vs.update(e)
        return cls(frozenset(vs), es)

    def __repr__(self) -> str:
        return f"Hypergraph(V={sorted(self.vertices)}, E={self.sorted_edges()})"

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (len(e), e))

    @cached_property
    def incidence(self) -> dict[int, list[Edge]]:
        """Map each vertex to the hyperedges containing it (sorted)."""
        inc: dict[int, list[Edge]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            for v in e:
                inc[v].append(e)
        return inc

    @cached_property
    def max_degree(self) -> int:
        return max((len(es) for es in self.incidence.values()), default=0)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degree_s(self, v: int, s: int) -> int:
        return sum(1 for e in self.incidence[v] if len(e) == s)

    def neighbors(self, v: int) -> set[int]:
        out: set[int] = set()
        for e in self.incidence[v]:
            out.update(e)
        out.discard(v)
        return out

    def edges_of_size(self, s: int) -> list[Edge]:
        return sorted(e for e in self.edges if len(e) == s)

    @cached_property
    def max_degree2(self) -> int:
        """d_2(G): the largest number of 2-hyperedges sharing a vertex."""
        return max((self.degree_s(v, 2) for v in self.vertices), default=0)

    def __len__(self) -> int:
        return len(self.edges)


class VertexStats(NamedTuple):
    d: int
    d2: int
    d3: int
    D2: int
    I: int


class TwoSectionSummary(NamedTuple):
    m2: int
    c2: int
    d2_max: int
    components: list[list[Edge]]


def _check_vertex(G: Hypergraph, v: int) -> None:
    if v not in G.vertices:
        raise KeyError(f"vertex {v} is not in the hypergraph")


def plus(G: Hypergraph, v: int) -> Hypergraph:
    """G[+v]: put v in the solution, dropping v and every hyperedge through it."""
    _check_vertex(G, v)
    return Hypergraph(G.vertices - {v}, frozenset(e for e in G.edges if v not in e))


def minus(G: Hypergraph, v: int) -> Hypergraph:
    """G[-v]: exclude v, deleting it from every hyperedge.

    Hyperedges that become equal collapse into one.
    """
    _check_vertex(G, v)
    out = set()
    for e in G.edges:
        if v in e:
            e = tuple(u for u in e if u != v)
            if not e:
                raise InvariantViolation(f"G[-{v}] creates an empty hyperedge")
        out.add(e)
    return Hypergraph(G.vertices - {v}, frozenset(out))


def apply_seq(G: Hypergraph, ops: Iterable[Op]) -> Hypergraph:
    for sign, v in ops:
        if sign == PLUS:
            G = plus(G, v)
        elif sign == MINUS:
            G = minus(G, v)
        else:
            raise ValueError(f"unknown op sign {sign!r}")
    return G


def stats(G: Hypergraph, v: int) -> VertexStats:
    _check_vertex(G, v)
    inc = G.incidence[v]
    d2 = sum(1 for e in inc if len(e) == 2)
    d3 = sum(1 for e in inc if len(e) == 3)
    own2 = [e for e in inc if len(e) == 2]
    near: set[Edge] = set(own2)
    for e in own2:
        for u in e:
            near.update(f for f in G.incidence[u] if len(f) == 2)
    nbrs = G.neighbors(v)
    flag = 0
    for e in G.edges:
        if v not in e and sum(1 for u in e if u in nbrs) >= 2:
            flag = 1
            break
    return VertexStats(len(inc), d2, d3, len(near), flag)


def two_section(G: Hypergraph) -> TwoSectionSummary:
    e2 = G.edges_of_size(2)
    uf = UnionFind()
    for a, b in e2:
        uf.add(a)
        uf.add(b)
        uf.union(a, b)
    by_root: dict[int, list[Edge]] = {}
    for e in e2:
        by_root.setdefault(uf.find(e[0]), []).append(e)
    comps = sorted(by_root.values(), key=lambda es: es[0])
    return TwoSectionSummary(len(e2), len(comps), G.max_degree2, comps)


def components(G: Hypergraph) -> list[list[int]]:
    """Vertex blocks of G connected through shared hyperedges, ordered by smallest id."""
    uf = UnionFind(G.vertices)
    for e in G.edges:
        for u in e[1:]:
            uf.union(e[0], u)
    return uf.groups()


def induced(G: Hypergraph, block: Iterable[int]) -> Hypergraph:
    """The sub-hypergraph on ``block`` keeping hyperedges inside it."""
    vs = frozenset(block)
    return Hypergraph(vs, frozenset(e for e in G.edges if vs.issuperset(e)))


def remove_block(G: Hypergraph, block: Iterable[int]) -> Hypergraph:
    """G - H: delete the vertices of ``block`` and every hyperedge touching them."""
    vs = frozenset(block)
    return Hypergraph(G.vertices - vs, frozenset(e for e in G.edges if vs.isdisjoint(e)))


def dominating_vertex(G: Hypergraph, x: int) -> Optional[int]:
    """Smallest vertex v != x lying in every hyperedge that contains x."""
    _check_vertex(G, x)
    inc = G.incidence[x]
    if not inc:
        others = G.vertices - {x}
        return min(others) if others else None
    common = set(inc[0])
    for e in inc[1:]:
        common.intersection_update(e)
    common.discard(x)
    return min(common) if common else None


def is_simple(G: Hypergraph) -> bool:
    return all(not _has_proper_subset(G, e) for e in G.edges)


def _has_proper_subset(G: Hypergraph, e: Edge) -> bool:
    if len(e) == 1:
        return False
    if len(e) == 2:
        return (e[0],) in G.edges or (e[1],) in G.edges
    a, b, c = e
    return any(
        s in G.edges
        for s in ((a,), (b,), (c,), (a, b), (a, c), (b, c))
    )


def minimalize(G: Hypergraph) -> Hypergraph:
    """Keep only the inclusion-minimal hyperedges."""
    return Hypergraph(G.vertices, frozenset(e for e in G.edges if not _has_proper_subset(G, e)))


def normalize_isolated(G: Hypergraph) -> Hypergraph:
    used = frozenset(v for e in G.edges for v in e)
    if used == G.vertices:
        return G
    return Hypergraph(used, G.edges)


def is_good(G: Hypergraph) -> bool:
    """A 3-hypergraph of max degree <= 3 whose every component has a small edge or a low-degree vertex."""
    if any(len(e) > 3 for e in G.edges) or G.max_degree > 3:
        return False
    for block in components(G):
        H = induced(G, block)
        small_edge = any(len(e) <= 2 for e in H.edges)
        low_vertex = any(H.degree(v) <= 2 for v in H.vertices)
        if not (small_edge or low_vertex):
            return False
    return True


def diff_two_edges(G: Hypergraph, G2: Hypergraph) -> tuple[set[Edge], set[Edge]]:
    """(removed, added) 2-hyperedges when passing from G to G2."""
    a = set(G.edges_of_size(2))
    b = set(G2.edges_of_size(2))
    return a - b, b - a
