"""Dominating branching-vector families for each branching rule.

Every family is a function of the measure table and, for most of them, the
number m of 2-hyperedges in the instance being branched on.  Families are
materialized for m up to ``8 + shift + 1``: beyond that every table lookup
lands in the constant rows m > 8 and the family stops changing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .measure import PsiTable, branching_number, span

C_CAP = 9  # psi(m, c) is constant in c once c exceeds 8 or m exceeds 8
D_MAX = 10  # largest d_2(G) materialized for the "d_2(G) = d >= 3" family of B3

Vector = tuple[float, ...]
FamilyFn = Callable[[PsiTable, int], Iterator[tuple[Vector, dict]]]


def cspan(lo: int, hi: int, default: Optional[int] = None):
    return span(lo, min(hi, C_CAP), default)


@dataclass(frozen=True)
class Family:
    rule: str
    name: str
    fn: FamilyFn
    m_min: Optional[int] = None  # None: the family does not depend on m
    shift: int = 0  # largest m-offset read from the table

    @property
    def m_max(self) -> int:
        return 8 + max(0, self.shift) + 1

    def at(self, table: PsiTable, m: int) -> Iterator[tuple[Vector, dict]]:
        return self.fn(table, m)

    def vectors(self, table: PsiTable) -> Iterator[tuple[Vector, dict]]:
        if self.m_min is None:
            yield from self.fn(table, 0)
            return
        for m in range(self.m_min, self.m_max + 1):
            yield from self.fn(table, m)


# --- B1: a 4-cycle component of the 2-section -------------------------------


def _b1(t: PsiTable, m: int):
    for c in cspan(2, m - 3, 1):
        a = 2 - t.delta(m, 4, c, c - 1)
        yield (a, a), {"m": m, "c": c}


# --- B2: degree-2 vertex with maximum 2-degree ------------------------------


def _b2_two_pairs_light(t: PsiTable, m: int):
    for c in cspan(2, m - 1, 1):
        for cp in cspan(1, m - 1):
            yield (1 - t.delta(m, 1, c, cp), 2 - t.delta(m, 2, c, c - 1)), {"m": m, "c": c, "c'": cp}


def _b2_two_pairs_heavy(t: PsiTable, m: int):
    for c in cspan(1, m - 1):
        for cp in cspan(1, m - 5, 0):
            for cpp in cspan(1, m - 4, 0):
                vec = (2 - t.delta(m, 5, c, cp), 2 - t.delta(m, 4, c, cpp))
                yield vec, {"m": m, "c": c, "c'": cp, "c''": cpp}


def _b2_pair_triple_light(t: PsiTable, m: int):
    for cp in cspan(1, m + 1):
        yield (1 - t.delta(m, -1, m, cp), 1.0), {"m": m, "c'": cp}


def _b2_pair_triple_heavy(t: PsiTable, m: int):
    for cp in cspan(1, m - 3, 0):
        for cpp in cspan(1, m):
            vec = (2 - t.delta(m, 3, m, cp), 1 - t.delta(m, 0, m, cpp))
            yield vec, {"m": m, "c'": cp, "c''": cpp}


# --- B3: branch on a vertex of maximum 2-degree -----------------------------


def _b3_d1(t: PsiTable, m: int):
    first = 1 - t.delta(m, 1, m, m - 1)
    for cp in cspan(1, m + 1):
        yield (first, 1 - t.delta(m, -1, m, cp)), {"m": m, "c'": cp}


def _b3_d1_heavy(t: PsiTable, m: int):
    first = 1 - t.delta(m, 1, m, m - 1)
    for cp in cspan(1, m + 2):
        yield (first, 1 - t.delta(m, -2, m, cp)), {"m": m, "c'": cp}


def _b3_d2(t: PsiTable, m: int):
    if m == 4:
        return
    back = min(m, 4) - 1
    for c in cspan(1, m - 1):
        for cp in cspan(1, m - 2, 0):
            for cpp in cspan(1, m - 3, 1):
                vec = (1 - t.delta(m, 2, c, cp), 2 - t.delta(m, back, c, cpp))
                yield vec, {"m": m, "c": c, "c'": cp, "c''": cpp}


def _b3_d2_m4(t: PsiTable, m: int):
    for c in range(1, 4):
        for cp in range(1, 3):
            for cpp in range(1, 3):
                vec = (1 - t.delta(4, 2, c, cp), 2 - t.delta(4, 2, c, cpp))
                yield vec, {"m": 4, "c": c, "c'": cp, "c''": cpp}


def _b3_dd(d: int) -> FamilyFn:
    def fn(t: PsiTable, m: int):
        back = min(m, d * d)
        for c in cspan(1, m - d + 1):
            for cp in cspan(1, m - d, 0):
                for cpp in cspan(1, m - back, 0):
                    vec = (1 - t.delta(m, d, c, cp), d - t.delta(m, back, c, cpp))
                    yield vec, {"d": d, "m": m, "c": c, "c'": cp, "c''": cpp}

    return fn


# --- B4..B6: all hyperedges have size 3 -------------------------------------


def _const(*vecs: Callable[[PsiTable], Vector]) -> FamilyFn:
    def fn(t: PsiTable, m: int):
        for i, make in enumerate(vecs):
            yield make(t), {"case": i}

    return fn


def _b6_tail(t: PsiTable, head: float, extra: Vector) -> list[Vector]:
    """The five B6 vectors with every entry raised by ``head`` and ``extra`` appended."""
    s, p = t.star, t.psi
    base = [
        (1 + s(5), p(2, 2)),
        (1 + s(4), min(2, p(4, 2))),
        (1 + s(4), 1 + s(3), 1 + p(2, 2)),
        (1 + s(4), 2, 1 + s(2)),
        (min(3, 2 + p(1, 1)), p(2, 2)),
    ]
    return [tuple(x + head for x in v) + extra for v in base]


def _b6(t: PsiTable, m: int):
    for i, v in enumerate(_b6_tail(t, 0.0, ())):
        yield v, {"case": i}


def _b8(t: PsiTable, m: int):
    s, p = t.star, t.psi
    d = t.dhat
    if d == 6:
        yield (1.0, s(6)), {"d": "6+"}
        return
    if d == 3:
        return
    vecs: list[tuple[str, Vector]] = [
        ("R3/R6", (1.0, 1.0)),
        ("R4/R5 grow", (1.0, s(d + 1))),
        ("B1", (1.0, 2.0, 2.0)),
        ("B2.1 light", (1.0, 1 + s(d - 1), 2 + s(d - 2))),
        ("B2.1 heavy", (1.0, 2.0, 2 + s(d - 4))),
        ("B2.2 light", (1.0, 1 + s(d + 1), 1 + p(d, d))),
        ("B2.2 heavy", (1.0, 2 + s(d - 3), 1 + s(d))),
    ]
    if d == 5:
        vecs += [
            ("B3 d'=1", (1.0, 1 + p(4, 4), 1 + s(6))),
            ("B3 d'=2", (1.0, 1 + s(3), 2 + s(2))),
            ("B3 d'=3", (1.0, 1 + s(2), 3.0)),
            ("B3 d'=4", (1.0, 1 + s(1), 4.0)),
        ]
    else:
        vecs.append(("B3 d'=1 d3=3", (1.0, 1 + p(3, 3), 1 + s(6))))
        # d' = 1, d3 = 2: G1 then meets one of R3..B6
        tail1 = (1 + p(3, 3), 1 + s(5))
        vecs += [
            ("d'=1 R3/R6", (2.0,) + tail1),
            ("d'=1 R4/R5", (1 + s(2),) + tail1),
            ("d'=1 B4", (2 + p(1, 1), 2 + p(1, 1), 4.0) + tail1),
            ("d'=1 B5", (2 + s(4), 3.0, 3.0) + tail1),
        ]
        vecs += [(f"d'=1 B6.{i}", v) for i, v in enumerate(_b6_tail(t, 1.0, tail1))]
        # d' = 2
        tail2 = (1 + s(2), 2 + s(2))
        vecs += [
            ("d'=2 R3/R6", (2.0, 1 + s(2), 1 + s(2))),
            ("d'=2 R4/R5", (1 + p(1, 1),) + tail2),
            ("d'=2 B4", (2 + p(1, 1), 2 + p(1, 1), 4.0) + tail2),
            ("d'=2 B5", (2 + s(4), 3.0, 3.0) + tail2),
        ]
        vecs += [(f"d'=2 B6.{i}", v) for i, v in enumerate(_b6_tail(t, 1.0, tail2))]
    for name, v in vecs:
        yield v, {"case": name}


def b3_d_cap(dhat: int, d_max: int = D_MAX) -> int:
    """Largest d_2(G) materialized for B3.

    Below dhat 6 the clamp is exact, so d_2(G) <= d(G) = dhat.
    """
    return d_max if dhat >= 6 else min(d_max, dhat)


def families(rule: str, dhat: int, d_max: int = D_MAX) -> list[Family]:
    """The dominating families of ``rule`` when the instance has the given dhat."""
    if rule == "B1":
        return [Family("B1", "4-cycle", _b1, 4, 4)]
    if rule == "B2":
        return [
            Family("B2", "two 2-edges, light", _b2_two_pairs_light, 2, 2),
            Family("B2", "two 2-edges, heavy", _b2_two_pairs_heavy, 2, 5),
            Family("B2", "2-edge and 3-edge, light", _b2_pair_triple_light, 1, -1),
            Family("B2", "2-edge and 3-edge, heavy", _b2_pair_triple_heavy, 1, 3),
        ]
    if rule == "B3":
        out = [
            Family("B3", "d2=1", _b3_d1, 1, 1),
            Family("B3", "d2=1, d3>=3", _b3_d1_heavy, 1, 1),
            Family("B3", "d2=2", _b3_d2, 2, 3),
            Family("B3", "d2=2, m=4", _b3_d2_m4),
        ]
        out += [Family("B3", f"d2={d}", _b3_dd(d), d, d * d) for d in range(3, b3_d_cap(dhat, d_max) + 1)]
        return out
    if rule == "B4":
        if dhat != 4:
            return []
        return [Family("B4", "pair in three edges", _const(lambda t: (1 + t.psi(1, 1), 1 + t.psi(1, 1), 3.0)))]
    if rule == "B5":
        if dhat > 4:
            return []
        return [Family("B5", "two 4-cycles", _const(lambda t: (1 + t.star(4), 2.0, 2.0)))]
    if rule == "B6":
        if dhat > 4:
            return []
        return [Family("B6", "degree-2 vertex", _b6)]
    if rule == "B8":
        return [Family("B8", "max-degree vertex", _b8)]
    raise ValueError(f"no branching-vector family for rule {rule!r}")


@dataclass
class Tagged:
    vector: Vector
    family: str
    params: dict


def enumerate_vectors(table: PsiTable, rule: str, d_max: int = D_MAX) -> list[Tagged]:
    out = []
    for fam in families(rule, table.dhat, d_max):
        for vec, params in fam.vectors(table):
            out.append(Tagged(vec, fam.name, params))
    return out


@dataclass
class RuleCheck:
    rule: str
    dhat: int
    max_bn: Optional[float]
    argmax: Optional[Tagged]
    count: int
    failures: list[Tagged] = field(default_factory=list)
    tail_unchecked: bool = False  # B3 at dhat 6: d_2(G) > D_MAX is not materialized


def verify_rule(table: PsiTable, rule: str, d_max: int = D_MAX) -> RuleCheck:
    """Largest branching number over the rule's families.

    Vectors with a non-positive entry cannot be evaluated; they are collected
    in ``failures``.  ``max_bn`` is None when the rule has no vectors at this
    dhat.
    """
    best: Optional[float] = None
    arg: Optional[Tagged] = None
    cache: dict[Vector, float] = {}
    tagged = enumerate_vectors(table, rule, d_max)
    failures = []
    for item in tagged:
        vec = item.vector
        if any(a <= 0 for a in vec):
            failures.append(item)
            continue
        bn = cache.get(vec)
        if bn is None:
            bn = cache[vec] = branching_number(vec)
        if best is None or bn > best:
            best, arg = bn, item
    tail = rule == "B3" and table.dhat >= 6
    return RuleCheck(rule, table.dhat, best, arg, len(tagged), failures, tail)


VERIFIED_RULES = ("B1", "B2", "B3", "B4", "B5", "B6", "B8")
