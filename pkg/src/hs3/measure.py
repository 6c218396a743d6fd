"""Measure tables, the potential mu(G, k), and branching-number arithmetic."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence

from .hypergraph import Hypergraph, plus, two_section
from .rules import Instance

TABLE_ROWS = 8  # rows beyond this repeat psi(8, 1)
SLACK = 1e-6


class TableFormatError(ValueError):
    pass


@dataclass(frozen=True)
class RangeWithDefault:
    """The integers lo..hi, or just ``default`` when that range is empty."""

    lo: int
    hi: int
    default: int

    def __iter__(self) -> Iterator[int]:
        if self.lo <= self.hi:
            return iter(range(self.lo, self.hi + 1))
        return iter((self.default,))


def span(lo: int, hi: int, default: int | None = None) -> Iterable[int]:
    if default is None:
        return range(lo, hi + 1)
    return RangeWithDefault(lo, hi, default)


@dataclass
class PsiTable:
    """Psi_dhat(m, c) for 0 <= c <= m <= 8, with the padding conventions.

    Cells with c = 0 or c > m read as 0, missing cells read as 0, and every
    row m > 8 equals psi(8, 1).
    """

    dhat: int
    values: dict[tuple[int, int], float] = field(default_factory=dict)

    def psi(self, m: int, c: int) -> float:
        if m > TABLE_ROWS:
            return self.values.get((TABLE_ROWS, 1), 0.0)
        if c <= 0 or c > m:
            return 0.0
        return self.values.get((m, c), 0.0)

    def star(self, m: int) -> float:
        """Psi(m, *): the minimum over c in [1, m], or Psi(0, 0) for m = 0."""
        return min(self.psi(m, c) for c in span(1, m, 0))

    def delta(self, m: int, alpha: int, c: int, cp: int) -> float:
        return self.psi(m, c) - self.psi(max(0, m - alpha), cp)

    @classmethod
    def from_text(cls, text: str) -> "PsiTable":
        dhat = None
        values: dict[tuple[int, int], float] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "psi":
                if dhat is not None or len(parts) != 2:
                    raise TableFormatError(f"line {lineno}: bad header {line!r}")
                dhat = int(parts[1])
                if not 3 <= dhat <= 6:
                    raise TableFormatError(f"line {lineno}: dhat must be in [3, 6]")
                continue
            if dhat is None:
                raise TableFormatError(f"line {lineno}: cell before 'psi <dhat>' header")
            if len(parts) != 3:
                raise TableFormatError(f"line {lineno}: expected 'm c value'")
            try:
                m, c, val = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError as exc:
                raise TableFormatError(f"line {lineno}: {exc}") from None
            if not (0 <= c <= m <= TABLE_ROWS):
                raise TableFormatError(f"line {lineno}: cell ({m}, {c}) outside 0 <= c <= m <= 8")
            values[(m, c)] = val
        if dhat is None:
            raise TableFormatError("missing 'psi <dhat>' header")
        return cls(dhat, values)

    def to_text(self) -> str:
        lines = [f"psi {self.dhat}"]
        lines += [f"{m} {c} {v!r}" for (m, c), v in sorted(self.values.items())]
        return "\n".join(lines) + "\n"


def load_table(path: str | Path) -> PsiTable:
    return PsiTable.from_text(Path(path).read_text())


def bundled_psi4() -> PsiTable:
    text = resources.files("hs3").joinpath("data/psi4.txt").read_text()
    return PsiTable.from_text(text)


def psi(table: PsiTable, m: int, c: int) -> float:
    return table.psi(m, c)


def psi_star(table: PsiTable, m: int) -> float:
    return table.star(m)


def delta(table: PsiTable, m: int, alpha: int, c: int, cp: int) -> float:
    return table.delta(m, alpha, c, cp)


def dhat(G: Hypergraph) -> int:
    return min(6, max(3, G.max_degree))


def mu(table: PsiTable, inst: Instance) -> float:
    s = two_section(inst.graph)
    return inst.k - table.psi(s.m2, s.c2)


# ---------------------------------------------------------------------------
# branching numbers


def branching_number(vector: Sequence[float], tol: float = 1e-9) -> float:
    """Largest real root x of sum(x ** -a for a in vector) == 1.

    The left side is strictly decreasing for x > 0, so bisection on (1, hi]
    finds the unique root above 1; hi starts at 64 and doubles as needed.
    """
    if not vector:
        raise ValueError("empty branching vector")
    if any(a <= 0 for a in vector):
        raise ValueError(f"branching vector {tuple(vector)} has a non-positive entry")
    if len(vector) == 1:
        return 1.0

    def excess(x: float) -> float:
        return sum(x ** -a for a in vector) - 1.0

    lo, hi = 1.0, 64.0
    while excess(hi) > 0:
        lo, hi = hi, hi * 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if not lo < mid < hi:
            break  # huge roots: float spacing exceeds tol
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff vector ``a`` is dominated by ``b``.

    That is, some injective map sends each a_i to a b_j with a_i >= b_j.
    Matching the sorted entries pairwise is optimal.
    """
    if len(a) > len(b):
        return False
    return all(x >= y for x, y in zip(sorted(a), sorted(b)))


def dominates_exhaustive(a: Sequence[float], b: Sequence[float]) -> bool:
    if len(a) > len(b):
        return False
    return any(all(x >= b[j] for x, j in zip(a, f)) for f in permutations(range(len(b)), len(a)))


# ---------------------------------------------------------------------------
# table and measure checks


class PropertyFailure(NamedTuple):
    prop: str
    m: int
    c: int
    a: int | None
    cp: int | None
    detail: str


def check_properties(table: PsiTable, m_max: int = TABLE_ROWS + 1, slack: float = SLACK) -> list[PropertyFailure]:
    """Check the range, zero, monotonicity and bounded-drop properties.

    Returns the list of failures (empty when the table is valid).
    """
    out: list[PropertyFailure] = []
    top = 1.0 if table.dhat == 6 else 2.0
    for m in range(m_max + 1):
        for c in range(m_max + 1):
            val = table.psi(m, c)
            if not (-slack <= val <= top + slack):
                out.append(PropertyFailure("P1", m, c, None, None, f"psi={val} outside [0, {top}]"))
    if abs(table.psi(0, 0)) > slack:
        out.append(PropertyFailure("P2", 0, 0, None, None, f"psi(0,0)={table.psi(0, 0)}"))
    for m in range(1, m_max):
        for c in range(1, m + 1):
            for cp in range(1, m + 2):
                if table.psi(m + 1, cp) < table.psi(m, c) - slack:
                    out.append(PropertyFailure(
                        "P3", m, c, None, cp,
                        f"psi({m + 1},{cp})={table.psi(m + 1, cp)} < psi({m},{c})={table.psi(m, c)}",
                    ))
    if table.dhat <= 5:
        for m in range(1, m_max + 1):
            for a in range(0, min(table.dhat, m) + 1):
                for c in range(1, m + 1):
                    for cp in span(1, m - a, 0):
                        drop = table.psi(m, c) - table.psi(m - a, cp)
                        if drop > 1 + slack:
                            out.append(PropertyFailure("P4", m, c, a, cp, f"drop {drop} > 1"))
    return out


class MonotonicityViolation(NamedTuple):
    rule: str
    mu_before: float
    mu_after: float
    graph: Hypergraph
    k: int


@dataclass
class MonotonicityReport:
    checked: int = 0
    skipped: int = 0
    violations: list[MonotonicityViolation] = field(default_factory=list)


def exhaust_singletons(G: Hypergraph, k: int) -> tuple[Hypergraph, int]:
    """Apply G[+x], k-1 while some hyperedge {x} exists."""
    while True:
        ones = G.edges_of_size(1)
        if not ones:
            return G, k
        G, k = plus(G, ones[0][0]), k - 1


def check_reduction_monotonicity(table: PsiTable, trace: Iterable, slack: float = SLACK) -> MonotonicityReport:
    """Verify that mu never increases across traced reduction steps.

    ``trace`` yields ``(rule, G, k, G2, k2)``; steps whose parent has a
    different dhat than the table are skipped.  Singleton hyperedges left by
    a step are taken before comparing.
    """
    report = MonotonicityReport()
    for rule, G, k, G2, k2 in trace:
        if dhat(G) != table.dhat:
            report.skipped += 1
            continue
        G3, k3 = exhaust_singletons(G2, k2)
        before = mu(table, Instance(G, k))
        after = mu(table, Instance(G3, k3))
        report.checked += 1
        if after > before + slack:
            report.violations.append(MonotonicityViolation(rule, before, after, G, k))
    return report
