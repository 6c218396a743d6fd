import pytest

from hs3.measure import PsiTable, bundled_psi4
from hs3.vectors import D_MAX, VERIFIED_RULES, b3_d_cap, enumerate_vectors, families, verify_rule

T4 = bundled_psi4()


def vectors(table, rule):
    return [t.vector for t in enumerate_vectors(table, rule)]


def test_b1_contains_the_square_vector():
    a = 2 - (0.8441 - 0)
    assert any(v == pytest.approx((a, a)) for v in vectors(T4, "B1"))


def test_b4_single_vector():
    assert vectors(T4, "B4") == [pytest.approx((1.244, 1.244, 3.0))]


def test_b8_at_dhat6():
    t6 = PsiTable(6, {(m, c): 0.1 * m / 8 for m in range(9) for c in range(m + 1)})
    assert vectors(t6, "B8") == [pytest.approx((1.0, t6.star(6)))]


def test_not_applicable_gives_empty_family():
    t5 = PsiTable(5, dict(T4.values))
    assert vectors(t5, "B4") == []
    assert vectors(t5, "B5") == []
    t3 = PsiTable(3, dict(T4.values))
    assert vectors(t3, "B8") == []
    assert verify_rule(t3, "B8").max_bn is None


def test_unknown_rule():
    with pytest.raises(ValueError):
        families("B7", 4)


def test_nonpositive_entries_are_reported_not_raised():
    t6 = PsiTable(6, {(m, c): 0.0 for m in range(9) for c in range(m + 1)})
    rc = verify_rule(t6, "B8")
    assert rc.max_bn is None and len(rc.failures) == 1
    assert rc.failures[0].params == {"d": "6+"}


def test_b3_depth_cap():
    assert b3_d_cap(4) == 4
    assert b3_d_cap(6) == D_MAX
    assert verify_rule(PsiTable(6, dict(T4.values)), "B3").tail_unchecked
    assert not verify_rule(T4, "B3").tail_unchecked


def test_family_constant_beyond_enumerated_m():
    """One step past the enumeration bound every family repeats itself."""
    for rule in VERIFIED_RULES:
        for fam in families(rule, 4):
            if fam.m_min is None:
                continue
            last = sorted(v for v, _ in fam.at(T4, fam.m_max))
            nxt = sorted(v for v, _ in fam.at(T4, fam.m_max + 1))
            assert set(nxt) <= set(last), fam.name


def test_b2_families_hit_two_exactly():
    rc = verify_rule(T4, "B2")
    assert rc.max_bn == pytest.approx(2.0, abs=1e-6)
    assert rc.argmax.vector == (1.0, 1.0)
