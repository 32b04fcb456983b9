from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from endolab.constructors import family_census, nonidempotent_group_elements, f_set
from endolab.counting import (
    PHI,
    SQRT5,
    ArithmeticFault,
    CountReport,
    GoldenInt,
    binomial,
    centralizer_order,
    delta,
    endo_count,
    fibonacci,
    golden_power_diff,
    idempotent_count_formula,
    idempotent_total,
    po_idempotents_closed_form,
    property3_count,
    property4_count,
)
from endolab.endo import TagKind
from endolab.transform import MonoidSpec, compose, is_member

from helpers import M_TYPES, SIX, T_TYPES, all_maps, endos, monoid

golden = st.builds(GoldenInt, st.integers(-50, 50), st.integers(-50, 50))


# --- Z[phi] ----------------------------------------------------------------------


@given(golden, golden, golden)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0 and x + (-x) == GoldenInt(0, 0)


@given(golden, golden)
def test_conjugation_is_a_ring_map(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x * y).norm() == x.norm() * y.norm()


@given(golden, st.integers(0, 12))
def test_power_matches_repeated_product(x, k):
    want = GoldenInt(1, 0)
    for _ in range(k):
        want = want * x
    assert x**k == want


def test_golden_identities():
    assert PHI * PHI == PHI + 1
    assert SQRT5 * SQRT5 == 5
    assert PHI * (PHI - 1) == 1
    assert not PHI.is_rational
    with pytest.raises(ArithmeticFault):
        int(PHI)
    assert int(GoldenInt(7, 0)) == 7


@pytest.mark.parametrize("k", range(1, 40))
def test_phi_powers_carry_fibonacci(k):
    # phi^k = F_{k-1} + F_k phi
    assert PHI**k == GoldenInt(fibonacci(k - 1), fibonacci(k))


# --- integer helpers ---------------------------------------------------------------


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_fibonacci_convention():
    assert [fibonacci(j) for j in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    assert fibonacci(90) == 2880067194370816120
    with pytest.raises(ValueError):
        fibonacci(-1)


def test_golden_power_diff_values():
    assert [golden_power_diff(k) for k in range(1, 6)] == [1, 5, 20, 75, 275]
    with pytest.raises(ValueError):
        golden_power_diff(0)


@pytest.mark.parametrize("k", range(1, 65))
def test_golden_power_diff_recurrence(k):
    # a_k = 5 a_{k-1} - 5 a_{k-2}, a_0 = 0, a_1 = 1, by plain integers
    a, b = 0, 1
    for _ in range(k - 1):
        a, b = b, 5 * b - 5 * a
    assert golden_power_diff(k) == b


# --- idempotents -------------------------------------------------------------------


def scan_idempotents(fam, n):
    spec = MonoidSpec(fam, n)
    by_rank = {}
    for s in all_maps(n):
        if is_member(s, spec) and compose(s, s) == s:
            by_rank[s.rank] = by_rank.get(s.rank, 0) + 1
    return by_rank


def test_idempotent_formula_examples():
    assert idempotent_count_formula("po", 2, 1) == 4
    assert idempotent_count_formula("poi", 4, 4) == 1
    assert idempotent_count_formula("o", 3, 3) == 1
    with pytest.raises(ValueError):
        idempotent_count_formula("od", 3, 1)
    with pytest.raises(ValueError):
        idempotent_count_formula("po", 3, 0)


@pytest.mark.parametrize("fam", T_TYPES)
@pytest.mark.parametrize("n", range(1, 7))
def test_idempotent_formula_matches_scan(fam, n):
    by_rank = scan_idempotents(fam, n)
    for i in range(1, n + 1):
        assert idempotent_count_formula(fam, n, i) == by_rank[i]
    assert idempotent_total(fam, n) == sum(by_rank.values())


@pytest.mark.parametrize("n", range(1, 11))
def test_po_idempotents_closed_form(n):
    assert po_idempotents_closed_form(n) == idempotent_total("po", n)


@pytest.mark.parametrize("n", range(2, 7))
def test_m_type_idempotents_equal_core(n):
    for m, t in (("od", "o"), ("podi", "poi"), ("pod", "po")):
        assert scan_idempotents(m, n) == scan_idempotents(t, n)


# --- delta and property counts ---------------------------------------------------


def test_delta_examples():
    assert delta(4, "pod") == 0
    assert delta(3, "podi") == 1
    assert delta(5, "pod") == 4
    assert delta(3, "od") == 1
    with pytest.raises(ValueError):
        delta(1, "pod")
    with pytest.raises(ValueError):
        delta(3, "po")


@pytest.mark.parametrize("fam", M_TYPES)
@pytest.mark.parametrize("n", range(2, 6))
def test_property_counts_match_structure(fam, n):
    S = monoid(fam, n)
    groups = nonidempotent_group_elements(S)
    n_groups = sum(len(hs) for hs in groups.values())
    pairs = sum(len(f_set(S, h)) for hs in groups.values() for h in hs)
    assert property4_count(fam, n) == pairs
    assert property3_count(fam, n) == (0 if fam == "od" else n_groups)


def test_centralizer_order():
    for n in range(1, 9):
        t = list(range(n, 0, -1))
        brute = sum(
            1
            for p in itertools.permutations(range(1, n + 1))
            if all(p[t[i] - 1] == t[p[i] - 1] for i in range(n))
        )
        assert centralizer_order(n) == brute


# --- endo_count --------------------------------------------------------------------


# n = 2..6; every entry except n=2 and (poi|po|pod, 6) is also brute-forced below
FORMULA = {
    "o": [7, 25, 105, 458, 2011],
    "poi": [13, 35, 107, 365, 1451],
    "po": [19, 96, 569, 3548, 22580],
    "od": [7, 26, 111, 480, 2077],
    "podi": [14, 36, 106, 290, 862],
    "pod": [20, 102, 616, 3757, 23364],
}


@pytest.mark.parametrize("fam", SIX)
def test_endo_count_values(fam):
    assert [endo_count(MonoidSpec(fam, n)).total for n in range(2, 7)] == FORMULA[fam]


def test_endo_count_examples():
    assert endo_count(MonoidSpec("podi", 3)).total == 36
    assert endo_count(MonoidSpec("od", 2)).total == 7
    assert endo_count(MonoidSpec("od", 3)).total == 26


@pytest.mark.parametrize("fam", SIX)
@pytest.mark.parametrize("n", range(2, 31))
def test_report_is_consistent(fam, n):
    rep = endo_count(MonoidSpec(fam, n))
    assert sum(rep.per_family.values()) == rep.total == rep.formula_terms["total"]
    assert all(v >= 0 for v in rep.per_family.values())
    if fam in M_TYPES:
        assert rep.formula_terms["via_core_identity"] == rep.total


@pytest.mark.parametrize("fam", SIX)
def test_totals_increase(fam):
    totals = [endo_count(MonoidSpec(fam, n)).total for n in range(2, 16)]
    assert all(a < b for a, b in zip(totals, totals[1:]))


def test_endo_count_rejects():
    with pytest.raises(ValueError):
        endo_count(MonoidSpec("pod", 1))
    with pytest.raises(ValueError):
        endo_count(MonoidSpec("i1one", 3))


def test_report_checks_its_sum():
    with pytest.raises(ArithmeticFault):
        CountReport(MonoidSpec("od", 2), 8, {"Identity": 1})
    rep = endo_count(MonoidSpec("pod", 3))
    assert rep.to_json()["total"] == 102


# --- against brute force ----------------------------------------------------------


BRUTE = [(f, n) for f in SIX for n in (3, 4, 5) if (f, n) != ("po", 5)]


@pytest.mark.parametrize("fam,n", BRUTE)
def test_formula_equals_search(fam, n):
    assert endo_count(MonoidSpec(fam, n)).total == len(endos(fam, n))


@pytest.mark.slow
@pytest.mark.parametrize("fam,n", [("po", 5), ("o", 6), ("od", 6), ("podi", 6)])
def test_formula_equals_search_large(fam, n):
    assert endo_count(MonoidSpec(fam, n)).total == len(endos(fam, n))


@pytest.mark.parametrize("fam", ["poi", "po", "podi", "pod"])
def test_n2_formula_overcounts_by_the_phi_sigma_overlap(fam):
    rep = endo_count(MonoidSpec(fam, 2))
    census = family_census(monoid(fam, 2))
    lost = sum(census.raw.values()) - census.total
    assert rep.total - len(endos(fam, 2)) == lost == 2
    assert census.raw[TagKind.PHI_SIGMA] - census.distinct[TagKind.PHI_SIGMA] == 2


@pytest.mark.parametrize("fam", ["o", "od"])
def test_n2_formula_exact_without_phi_sigma(fam):
    assert endo_count(MonoidSpec(fam, 2)).total == len(endos(fam, 2)) == 7
