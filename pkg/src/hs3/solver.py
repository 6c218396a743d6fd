"""The recursive decision procedure with certificates and instrumentation."""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .hypergraph import (
    Hypergraph,
    InvariantViolation,
    induced,
    normalize_isolated,
    remove_block,
)
from .rules import (
    DONE_NO,
    DONE_YES,
    REDUCTION_RULES,
    Instance,
    Violation,
    select_rule,
)

ReductionHook = Callable[[str, Hypergraph, int, Hypergraph, int], None]


class SolverError(RuntimeError):
    """The search exceeded its depth guard."""


@dataclass
class SolverConfig:
    """Knobs for :func:`solve`.

    ``full_tree`` explores every child of a branching rule even after a
    yes-answer, so that ``leaves`` counts the whole recursion tree.
    ``on_reduction`` is called as ``(rule, G, k, G2, k2)`` for each
    reduction step.
    """

    full_tree: bool = False
    check_invariants: bool = True
    on_reduction: Optional[ReductionHook] = None


@dataclass
class SolveReport:
    decision: bool
    certificate: Optional[frozenset[int]]
    leaves: int = 0
    nodes: int = 0
    rule_counts: Counter = field(default_factory=Counter)
    alpha_flag: int = 0
    max_b8_low_d_per_path: int = 0
    violations: list[Violation] = field(default_factory=list)


def verify_hitting(G: Hypergraph, S: Iterable[int]) -> bool:
    S = set(S)
    return all(not S.isdisjoint(e) for e in G.edges)


class _Search:
    def __init__(self, config: SolverConfig, depth_limit: int):
        self.config = config
        self.depth_limit = depth_limit
        self.report = SolveReport(False, None)

    def run(self, G: Hypergraph, k: int, depth: int, low_b8: int) -> Optional[frozenset[int]]:
        """Certificate (set of taken vertices) if (G, k) is a yes-instance, else None."""
        report = self.report
        report.nodes += 1
        if depth > self.depth_limit:
            raise SolverError(f"recursion depth {depth} exceeds guard {self.depth_limit}")
        if () in G.edges:
            report.violations.append(Violation("empty-edge", f"empty hyperedge at depth {depth}"))
            raise InvariantViolation("empty hyperedge reached the search")
        report.max_b8_low_d_per_path = max(report.max_b8_low_d_per_path, low_b8)

        checks = report.violations if self.config.check_invariants else None
        app = select_rule(Instance(G, k), checks)
        rule = app.rule
        if rule == DONE_NO or rule == DONE_YES:
            report.leaves += 1
            return frozenset() if rule == DONE_YES else None
        report.rule_counts[rule] += 1

        if rule == "B7":
            return self._component_loop(G, k, app.bindings["component"], depth, low_b8)

        if rule == "B8" and G.max_degree <= 3:
            if low_b8 >= 1:
                report.violations.append(
                    Violation("repeated-low-degree-b8", f"second low-degree B8 on a path at depth {depth}")
                )
            low_b8 += 1
            report.alpha_flag = 3

        found = None
        for child in app.children:
            G2 = normalize_isolated(child.build(G))
            k2 = k - child.k_delta
            if rule in REDUCTION_RULES and self.config.on_reduction is not None:
                self.config.on_reduction(rule, G, k, G2, k2)
            cert = self.run(G2, k2, depth + 1, low_b8)
            if cert is not None and found is None:
                found = cert | frozenset(child.taken)
                if not self.config.full_tree:
                    break
        return found

    def _component_loop(self, G, k, block, depth, low_b8):
        H = induced(G, block)
        rest = normalize_isolated(remove_block(G, block))
        budgets = range(4, k - 3)
        if not budgets:
            # no recursive call at all: this node is a leaf
            self.report.leaves += 1
        for kp in budgets:
            cert_h = self.run(H, kp, depth + 1, low_b8)
            if cert_h is not None:
                cert_rest = self.run(rest, k - kp, depth + 1, low_b8)
                if cert_rest is None:
                    return None
                return cert_h | cert_rest
        return None


def solve(inst: Instance, config: Optional[SolverConfig] = None) -> SolveReport:
    """Decide whether ``inst.graph`` has a hitting set of at most ``inst.k`` vertices."""
    config = config or SolverConfig()
    G = inst.graph
    if () in G.edges:
        raise ValueError("input contains an empty hyperedge")
    limit = 2 * len(G.vertices) + max(inst.k, 0) + 2
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * limit + 1000))
    search = _Search(config, limit)
    cert = search.run(normalize_isolated(G), inst.k, 0, 0)
    report = search.report
    report.decision = cert is not None
    if cert is not None:
        if len(cert) > inst.k or not verify_hitting(G, cert):
            raise InvariantViolation(f"certificate {sorted(cert)} does not verify")
        report.certificate = cert
    return report
