"""Brute-force minimum hitting set, used as ground truth in tests and the CLI."""

from __future__ import annotations

from itertools import combinations
from typing import Optional

from .hypergraph import Hypergraph


def oracle_min(G: Hypergraph, cap: Optional[int] = None) -> Optional[int]:
    """Size of a minimum hitting set of G, or None if it exceeds ``cap``.

    Subsets of the non-isolated vertices are tried by increasing size.
    """
    if any(len(e) == 0 for e in G.edges):
        return None
    order = sorted({v for e in G.edges for v in e})
    bit = {v: 1 << i for i, v in enumerate(order)}
    masks = sorted({sum(bit[v] for v in e) for e in G.edges}, key=int.bit_count)
    top = len(order) if cap is None else min(cap, len(order))
    for size in range(top + 1):
        for combo in combinations(range(len(order)), size):
            s = 0
            for i in combo:
                s |= 1 << i
            for m in masks:
                if not m & s:
                    break
            else:
                return size
    return None


def oracle_decide(G: Hypergraph, k: int) -> bool:
    if k < 0:
        return False
    return oracle_min(G, cap=k) is not None
