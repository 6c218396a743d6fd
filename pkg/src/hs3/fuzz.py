"""Differential testing of the solver against the brute-force oracle."""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .hypergraph import InvariantViolation
from .instance_io import GenConfig, generate
from .measure import PsiTable, bundled_psi4, check_reduction_monotonicity
from .oracle import oracle_decide, oracle_min
from .rules import Instance
from .solver import SolverConfig, solve, verify_hitting

LEAF_BASE = 2.0409
LEAF_SLACK = 15  # 2 * dhat + alpha with dhat <= 6, alpha <= 3


def fuzz_instance(seed: int, index: int, min_n: int = 4, max_n: int = 14) -> Instance:
    """Case ``index`` of the seeded suite: n in [min_n, max_n], n..3n edges of sizes 2 and 3."""
    rng = random.Random(f"hs3-fuzz:{seed}:{index}")
    n = rng.randint(min_n, max_n)
    room = math.comb(n, 2) + math.comb(n, 3)
    edges = rng.randint(n, min(3 * n, room))
    return generate(GenConfig(n, edges, (0.5, 0.5), rng.getrandbits(32)))


@dataclass
class CaseResult:
    index: int
    opt: int
    checked: int = 0
    mismatches: list[int] = field(default_factory=list)  # budgets k with a wrong decision
    bad_certificates: list[int] = field(default_factory=list)
    leaf_violations: list[tuple[int, int]] = field(default_factory=list)  # (k, leaves)
    leaf_exponent: float = -math.inf  # max over k of log_base(leaves) - k
    invariant_violations: list[str] = field(default_factory=list)
    reductions_checked: int = 0
    monotonicity_violations: int = 0

    @property
    def ok(self) -> bool:
        return not (
            self.mismatches or self.bad_certificates or self.leaf_violations
            or self.invariant_violations or self.monotonicity_violations
        )


def check_instance(inst: Instance, index: int = 0, table: Optional[PsiTable] = None) -> CaseResult:
    """Solve for every k in [0, opt + 1] in full-tree mode and check everything."""
    table = table or bundled_psi4()
    G = inst.graph
    opt = oracle_min(G)
    res = CaseResult(index, opt)
    for k in range(opt + 2):
        trace = []
        cfg = SolverConfig(full_tree=True, on_reduction=lambda *step: trace.append(step))
        res.checked += 1
        try:
            rep = solve(Instance(G, k), cfg)
        except InvariantViolation as exc:
            res.invariant_violations.append(f"k={k}: {exc}")
            continue
        if rep.decision != oracle_decide(G, k):
            res.mismatches.append(k)
        if rep.decision and (rep.certificate is None or len(rep.certificate) > k
                             or not verify_hitting(G, rep.certificate)):
            res.bad_certificates.append(k)
        res.leaf_exponent = max(res.leaf_exponent, math.log(rep.leaves, LEAF_BASE) - k)
        if rep.leaves > LEAF_BASE ** (k + LEAF_SLACK):
            res.leaf_violations.append((k, rep.leaves))
        res.invariant_violations += [f"k={k}: {v.name}: {v.detail}" for v in rep.violations]
        mono = check_reduction_monotonicity(table, trace)
        res.reductions_checked += mono.checked
        res.monotonicity_violations += len(mono.violations)
    return res


def _run_one(args: tuple[int, int, int]) -> CaseResult:
    seed, index, max_n = args
    return check_instance(fuzz_instance(seed, index, max_n=max_n), index)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("HS3_THREADS", "1")))
    except ValueError:
        return 1


def run_fuzz(count: int, seed: int = 0, max_n: int = 14, workers: Optional[int] = None) -> Iterator[CaseResult]:
    """Yield case results in index order."""
    workers = workers or thread_count()
    jobs = [(seed, i, max_n) for i in range(count)]
    if workers <= 1:
        yield from map(_run_one, jobs)
        return
    with ProcessPoolExecutor(workers) as pool:
        yield from pool.map(_run_one, jobs, chunksize=8)
