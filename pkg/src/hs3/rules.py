"""Reduction and branching rules of the 3-Hitting Set search tree.

:func:`select_rule` finds the first applicable rule in the fixed order
R1..R6, B1..B8 and describes its children as sequences of ``+v`` / ``-v``
operations together with the budget decrease.  Applying the operations is
left to the caller (see :mod:`hs3.solver`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .hypergraph import (
    MINUS,
    PLUS,
    Edge,
    Hypergraph,
    Op,
    apply_seq,
    components,
    dominating_vertex,
    induced,
    is_simple,
    minimalize,
    minus,
    remove_block,
    stats,
    two_section,
)

RULE_ORDER = (
    "R1", "R2", "R3", "R4", "R5", "R6",
    "B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8",
)
REDUCTION_RULES = frozenset(RULE_ORDER[:6])
BRANCHING_RULES = frozenset(RULE_ORDER[6:])
DONE_YES = "DONE_YES"
DONE_NO = "DONE_NO"


@dataclass(frozen=True)
class Instance:
    graph: Hypergraph
    k: int


@dataclass(frozen=True)
class Child:
    """One child instance: apply ``ops`` to the parent graph, lower k by ``k_delta``.

    ``graph`` is set when the child is not a plain op sequence (R2, R3); it
    then holds the child hypergraph itself.
    """

    ops: tuple[Op, ...]
    k_delta: int
    graph: Optional[Hypergraph] = None

    def build(self, G: Hypergraph) -> Hypergraph:
        if self.graph is not None:
            return self.graph
        return apply_seq(G, self.ops)

    @property
    def taken(self) -> list[int]:
        return [v for sign, v in self.ops if sign == PLUS]


@dataclass
class RuleApplication:
    rule: str
    bindings: dict = field(default_factory=dict)
    children: list[Child] = field(default_factory=list)


@dataclass(frozen=True)
class Violation:
    name: str
    detail: str


def _child(*ops: Op) -> Child:
    return Child(tuple(ops), sum(1 for s, _ in ops if s == PLUS))


def _p(v: int) -> Op:
    return (PLUS, v)


def _m(v: int) -> Op:
    return (MINUS, v)


# ---------------------------------------------------------------------------
# R3 helper


def _hits_within(edges: list[int], budget: int) -> bool:
    """Bounded search: can ``budget`` vertices hit every edge bitmask?"""
    for e in edges:
        break
    else:
        return True
    if budget == 0:
        return False
    bit = e
    while bit:
        low = bit & -bit
        bit ^= low
        if _hits_within([f for f in edges if not f & low], budget - 1):
            return True
    return False


def small_hitting_set(H: Hypergraph, limit: int = 3) -> Optional[frozenset[int]]:
    """A minimum hitting set of H if one of size <= ``limit`` exists.

    Among minimum sets the lexicographically smallest sorted tuple is returned.
    """
    order = sorted(H.vertices)
    bit = {v: 1 << i for i, v in enumerate(order)}
    masks = [sum(bit[v] for v in e) for e in H.edges]
    for size in range(limit + 1):
        if not _hits_within(masks, size):
            continue
        for combo in combinations(range(len(order)), size):
            s = 0
            for i in combo:
                s |= 1 << i
            if all(m & s for m in masks):
                return frozenset(order[i] for i in combo)
    return None


# ---------------------------------------------------------------------------
# individual rule detectors; each returns a RuleApplication or None


def _rule_r1(G: Hypergraph):
    ones = G.edges_of_size(1)
    if ones:
        x = ones[0][0]
        return RuleApplication("R1", {"x": x}, [_child(_p(x))])
    return None


def _rule_r2(G: Hypergraph):
    if not is_simple(G):
        return RuleApplication("R2", {}, [Child((), 0, minimalize(G))])
    return None


def _rule_r3(G: Hypergraph):
    for block in components(G):
        if len(block) < 2:
            continue
        S = small_hitting_set(induced(G, block))
        if S is not None:
            ops = tuple(_p(v) for v in sorted(S))
            return RuleApplication(
                "R3",
                {"component": tuple(block), "S_H": tuple(sorted(S))},
                [Child(ops, len(S), remove_block(G, block))],
            )
    return None


def _rule_r4(G: Hypergraph):
    for x in sorted(G.vertices):
        v = dominating_vertex(G, x)
        if v is not None:
            return RuleApplication("R4", {"x": x, "by": v}, [_child(_m(x))])
    return None


def _rule_r5(G: Hypergraph):
    for x in sorted(G.vertices):
        if G.degree(x) != 2:
            continue
        nbrs = G.neighbors(x)
        for p in sorted(nbrs):
            for e in G.incidence[p]:
                if nbrs.issuperset(e):
                    return RuleApplication("R5", {"x": x, "e": e}, [_child(_m(x))])
    return None


def _outer_edges(G: Hypergraph, x: int) -> list[Edge]:
    """Hyperedges avoiding x that meet N(x)."""
    seen: set[Edge] = set()
    for p in G.neighbors(x):
        for e in G.incidence[p]:
            if x not in e:
                seen.add(e)
    return sorted(seen)


def _rule_r6(G: Hypergraph):
    order = sorted(G.vertices)
    for x in order:
        outer = _outer_edges(G, x)
        if outer:
            common = set(outer[0])
            for e in outer[1:]:
                common.intersection_update(e)
                if not common:
                    break
            common.discard(x)
            if not common:
                continue
            u = min(common)
        else:
            others = [v for v in order if v != x]
            if not others:
                continue
            u = others[0]
        return RuleApplication("R6", {"x": x, "u": u}, [_child(_p(x))])
    return None


def _rule_b1(G: Hypergraph, summary):
    if summary.d2_max != 2:
        return None
    for comp in summary.components:
        if len(comp) != 4:
            continue
        verts = sorted({v for e in comp for v in e})
        if len(verts) != 4:
            continue
        adj = {v: sorted(u for e in comp if v in e for u in e if u != v) for v in verts}
        if any(len(n) != 2 for n in adj.values()):
            continue
        v1 = verts[0]
        v2, v4 = adj[v1]
        v3 = next(u for u in adj[v2] if u != v1)
        return RuleApplication(
            "B1",
            {"v1": v1, "v2": v2, "v3": v3, "v4": v4},
            [_child(_p(v1), _p(v3)), _child(_p(v2), _p(v4))],
        )
    return None


def _rule_b2(G: Hypergraph, summary):
    d2 = summary.d2_max
    if d2 not in (1, 2):
        return None
    for x in sorted(G.vertices):
        if G.degree(x) != 2 or G.degree_s(x, 2) != d2:
            continue
        e1, e2 = sorted(G.incidence[x], key=lambda e: (len(e), e))
        if d2 == 2:
            y = next(u for u in e1 if u != x)
            z = next(u for u in e2 if u != x)
            y, z = min(y, z), max(y, z)
            return RuleApplication(
                "B2",
                {"case": 1, "x": x, "y": y, "z": z},
                [_child(_p(x), _m(y), _m(z)), _child(_m(x), _p(y), _p(z))],
            )
        if len(e2) != 3:
            continue
        y = next(u for u in e1 if u != x)
        z, w = (u for u in e2 if u != x)
        return RuleApplication(
            "B2",
            {"case": 2, "x": x, "y": y, "z": z, "w": w},
            [_child(_p(x), _m(y), _m(z), _m(w)), _child(_m(x), _p(y))],
        )
    return None


def _rule_b3(G: Hypergraph, summary):
    if summary.m2 == 0:
        return None
    best = None
    for x in sorted(G.vertices):
        if G.degree_s(x, 2) != summary.d2_max:
            continue
        st = stats(G, x)
        score = st.d3 - st.D2
        if best is None or score > best[0]:
            best = (score, x)
    x = best[1]
    return RuleApplication("B3", {"x": x, "score": best[0]}, [_child(_p(x)), _child(_m(x))])


def _rule_b4(G: Hypergraph):
    if G.max_degree != 4:
        return None
    for x in sorted(G.vertices):
        counts: dict[int, int] = {}
        for e in G.incidence[x]:
            for y in e:
                if y > x:
                    counts[y] = counts.get(y, 0) + 1
        pair = sorted(y for y, c in counts.items() if c >= 3)
        if pair:
            y = pair[0]
            return RuleApplication(
                "B4",
                {"x": x, "y": y},
                [_child(_p(x), _m(y)), _child(_m(x), _p(y)), _child(_m(x), _m(y))],
            )
    return None


def _split_deg2(G: Hypergraph, x: int) -> tuple[int, int, int, int]:
    e1, e2 = sorted(G.incidence[x])
    y, z = (u for u in e1 if u != x)
    v, w = (u for u in e2 if u != x)
    return y, z, v, w


def bipartite_B(G: Hypergraph, x: int) -> tuple[set[Edge], dict[int, set[Edge]]]:
    """The set B and the adjacency of the bipartite graph H used by B5.

    B holds ``e minus N(x)`` for hyperedges e avoiding x that meet N(x); p in N(x)
    is joined to b in B when ``{p} | b`` is a hyperedge.
    """
    nbrs = G.neighbors(x)
    B: set[Edge] = set()
    for e in _outer_edges(G, x):
        B.add(tuple(u for u in e if u not in nbrs))
    adj = {p: set() for p in nbrs}
    for p in nbrs:
        for b in B:
            if tuple(sorted((p,) + b)) in G.edges:
                adj[p].add(b)
    return B, adj


def _h_components(adj: dict[int, set[Edge]]) -> tuple[list[set], dict]:
    """Connected components of the bipartite graph H and its adjacency.

    Nodes are tagged ``("p", vertex)`` or ``("b", pair)``.
    """
    graph: dict = {}
    for p, bs in adj.items():
        graph.setdefault(("p", p), set())
        for b in bs:
            graph.setdefault(("b", b), set())
            graph[("p", p)].add(("b", b))
            graph[("b", b)].add(("p", p))
    comps: list[set] = []
    seen: set = set()
    for start in sorted(graph):
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            n = stack.pop()
            if n not in comp:
                comp.add(n)
                stack.extend(graph[n] - comp)
        seen |= comp
        comps.append(comp)
    return comps, graph


def _rule_b5(G: Hypergraph, violations: Optional[list]):
    if G.max_degree > 4:
        return None
    for x in sorted(G.vertices):
        if G.degree(x) != 2:
            continue
        if stats(G, x).I != 0:
            continue
        nbrs = G.neighbors(x)
        if any(G.degree(p) != 3 for p in nbrs):
            continue
        B, adj = bipartite_B(G, x)
        if len(B) != 4:
            continue
        y, z, v, w = _split_deg2(G, x)
        comps, graph = _h_components(adj)
        all_deg2 = all(len(graph[n]) == 2 for n in graph)
        if violations is not None and not (all_deg2 and len(graph) == 8):
            violations.append(Violation("b5-h-not-cycles", f"x={x}: H is not a union of cycles"))
        sides = [{n[1] for n in comp if n[0] == "p"} for comp in comps]
        case1 = (
            all_deg2
            and len(comps) == 2
            and all(len(c) == 4 for c in comps)
            and all(len(ps & {y, z}) == 1 and len(ps & {v, w}) == 1 for ps in sides)
        )
        if case1:
            ycycle = next(ps for ps in sides if y in ps)
            if w in ycycle:
                v, w = w, v
            return RuleApplication(
                "B5",
                {"case": 1, "x": x, "y": y, "z": z, "v": v, "w": w},
                [
                    _child(_p(x), _m(y), _m(z), _m(v), _m(w)),
                    _child(_p(y), _p(v), _m(x)),
                    _child(_p(z), _p(w), _m(x)),
                ],
            )
        return RuleApplication(
            "B5",
            {"case": 2, "x": x, "y": y, "z": z, "v": v, "w": w},
            [
                _child(_p(x), _m(y), _m(z), _m(v), _m(w)),
                _child(_p(y), _p(z), _p(v), _p(w), _m(x)),
            ],
        )
    return None


def _rule_b6(G: Hypergraph):
    if G.max_degree > 4:
        return None
    best = None
    for x in sorted(G.vertices):
        if G.degree(x) != 2:
            continue
        flag = stats(G, x).I
        if best is None or flag > best[0]:
            best = (flag, x)
    if best is None:
        return None
    x = best[1]
    y, z, v, w = _split_deg2(G, x)
    return RuleApplication(
        "B6",
        {"x": x, "y": y, "z": z, "v": v, "w": w, "I": best[0]},
        [_child(_p(x), _m(y), _m(z), _m(v), _m(w)), _child(_m(x))],
    )


def edge_blocks(G: Hypergraph) -> list[list[int]]:
    """Connected components that contain at least one hyperedge."""
    return [b for b in components(G) if len(b) > 1 or G.degree(b[0]) > 0]


def _rule_b7(G: Hypergraph):
    if G.max_degree > 3:
        return None
    blocks = edge_blocks(G)
    if len(blocks) < 2:
        return None
    return RuleApplication("B7", {"component": tuple(blocks[0])}, [])


def _rule_b8(G: Hypergraph):
    d = G.max_degree
    best = None
    for u in sorted(G.vertices):
        if G.degree(u) != d:
            continue
        score = minus(G, u).max_degree2
        if best is None or score > best[0]:
            best = (score, u)
    u = best[1]
    return RuleApplication("B8", {"u": u, "d": d}, [_child(_p(u)), _child(_m(u))])


# ---------------------------------------------------------------------------
# structural claims that must hold once earlier rules are exhausted


def _check_after_r4(G: Hypergraph, out: list) -> None:
    for v in G.vertices:
        inc = G.incidence[v]
        if len(inc) == 1:
            out.append(Violation("degree-one-vertex", f"vertex {v} has degree 1"))
        elif len(inc) == 2 and set(inc[0]) & set(inc[1]) != {v}:
            out.append(Violation("degree-two-overlap", f"edges of {v} meet in {set(inc[0]) & set(inc[1])}"))


def _check_after_b2(G: Hypergraph, summary, out: list) -> None:
    if summary.m2 == 0:
        return
    for v in G.vertices:
        if G.degree_s(v, 2) == summary.d2_max and G.degree(v) < 3:
            out.append(Violation("max-d2-low-degree", f"vertex {v} has d2=d2(G) but degree {G.degree(v)}"))


def _check_after_b3(G: Hypergraph, out: list) -> None:
    for e in G.edges:
        if len(e) != 3:
            out.append(Violation("small-edge-left", f"edge {e} is not a 3-hyperedge"))


def _check_after_b4(G: Hypergraph, out: list) -> None:
    if G.max_degree > 4:
        return
    for x in G.vertices:
        counts: dict[int, int] = {}
        for e in G.incidence[x]:
            for y in e:
                if y > x:
                    counts[y] = counts.get(y, 0) + 1
        for y, c in counts.items():
            if c >= 3:
                out.append(Violation("pair-in-three-edges", f"vertices {x},{y} share {c} edges"))


def _check_after_b6(G: Hypergraph, out: list) -> None:
    if G.max_degree > 4:
        return
    for v in G.vertices:
        if 0 < G.degree(v) < 3:
            out.append(Violation("degree-two-left", f"vertex {v} has degree {G.degree(v)}"))


def select_rule(inst: Instance, violations: Optional[list] = None) -> RuleApplication:
    """The first applicable rule on ``inst`` (or a terminal verdict).

    When ``violations`` is a list, the structural claims that hold after
    earlier rules are exhausted are checked and failures appended to it.
    """
    G = inst.graph
    if inst.k < 0:
        return RuleApplication(DONE_NO)
    if not G.edges:
        return RuleApplication(DONE_YES)

    for detect in (_rule_r1, _rule_r2, _rule_r3, _rule_r4):
        app = detect(G)
        if app is not None:
            return app
    if violations is not None:
        _check_after_r4(G, violations)
    for detect in (_rule_r5, _rule_r6):
        app = detect(G)
        if app is not None:
            return app

    summary = two_section(G)
    app = _rule_b1(G, summary) or _rule_b2(G, summary)
    if app is not None:
        return app
    if violations is not None:
        _check_after_b2(G, summary, violations)
    app = _rule_b3(G, summary)
    if app is not None:
        return app
    if violations is not None:
        _check_after_b3(G, violations)
    app = _rule_b4(G)
    if app is not None:
        return app
    if violations is not None:
        _check_after_b4(G, violations)
    app = _rule_b5(G, violations) or _rule_b6(G)
    if app is not None:
        return app
    if violations is not None:
        _check_after_b6(G, violations)
    return _rule_b7(G) or _rule_b8(G)
