from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endolab.transform import (
    BOTTOM,
    ChainMap,
    Family,
    MonoidSpec,
    Monotonicity,
    SizeMismatchError,
    TransformParseError,
    compose,
    compose_all,
    format_map,
    is_member,
    make_canonical,
    monotonicity,
    parse_map,
    profile,
    tau,
)

from helpers import ALL_EIGHT, all_maps


def chain_maps(n_min=1, n_max=6):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.tuples(*[st.integers(0, n)] * n).map(lambda t: ChainMap(n, t))
    )


def triples(n_max=6):
    def build(n):
        one = st.tuples(*[st.integers(0, n)] * n).map(lambda t: ChainMap(n, t))
        return st.tuples(one, one, one)

    return st.integers(1, n_max).flatmap(build)


def m(n, **pairs):
    return ChainMap.from_dict(n, {int(k[1:]): v for k, v in pairs.items()})


# --- compose -----------------------------------------------------------------


def test_tau_is_an_involution():
    assert compose(tau(3), tau(3)) == ChainMap.identity(3)


@pytest.mark.parametrize("s", list(all_maps(2)))
def test_empty_absorbs_on_the_left(s):
    assert compose(ChainMap.empty(2), s) == ChainMap.empty(2)


def test_x1_x0_by_hand():
    x0, x1, x2 = (make_canonical("x", 3, i) for i in range(3))
    assert x1 == m(3, p1=1, p2=3)
    assert x0 == m(3, p2=1, p3=2)
    assert compose(x1, x0) == m(3, p2=2)
    assert compose(x1, x0) == compose(x0, x2)


def test_compose_size_mismatch():
    with pytest.raises(SizeMismatchError):
        compose(ChainMap.identity(2), ChainMap.identity(3))


def test_right_action_order():
    # s = 1->2, t = 2->3: x(st) = (xs)t
    s, t = m(3, p1=2), m(3, p2=3)
    assert compose(s, t) == m(3, p1=3)
    assert compose(t, s) == ChainMap.empty(3)


@pytest.mark.parametrize("n", [1, 2])
def test_associativity_exhaustive_small(n):
    maps = list(all_maps(n))
    for s, t, u in itertools.product(maps, repeat=3):
        assert compose(compose(s, t), u) == compose(s, compose(t, u))


@pytest.mark.slow
def test_associativity_exhaustive_n3():
    maps = list(all_maps(3))
    prod = {(s, t): compose(s, t) for s in maps for t in maps}
    for s, t, u in itertools.product(maps, repeat=3):
        assert prod[prod[s, t], u] == prod[s, prod[t, u]]


@given(triples())
@settings(max_examples=300)
def test_associativity_random(stu):
    s, t, u = stu
    assert compose(compose(s, t), u) == compose(s, compose(t, u))


@given(chain_maps())
def test_compose_domain_rule(s):
    t = tau(s.n)
    st_ = compose(s, t)
    assert st_.domain == s.domain
    assert all(st_(x) == t(s(x)) for x in s.domain)


# --- monotonicity ------------------------------------------------------------


def test_tau_reverses():
    for n in range(2, 6):
        assert monotonicity(tau(n)) is Monotonicity.REVERSING_ONLY


@given(chain_maps())
def test_rank_at_most_one_is_both(s):
    if s.rank <= 1:
        assert monotonicity(s) is Monotonicity.BOTH
    if monotonicity(s) is Monotonicity.BOTH:
        assert s.rank <= 1


def test_neither_example():
    assert monotonicity(ChainMap(3, (2, 1, 3))) is Monotonicity.NEITHER


@given(chain_maps(1, 5))
def test_monotonicity_matches_pairwise_definition(s):
    pairs = [(x, y) for x in s.domain for y in s.domain if x <= y]
    up = all(s(x) <= s(y) for x, y in pairs)
    down = all(s(x) >= s(y) for x, y in pairs)
    got = monotonicity(s)
    assert got.preserving == up
    assert got.reversing == down


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_monotone_products(n):
    mono = [s for s in all_maps(n) if monotonicity(s) is not Monotonicity.NEITHER]
    for s in mono:
        ms = monotonicity(s)
        for t in mono:
            mt = monotonicity(t)
            mp = monotonicity(compose(s, t))
            if (ms.preserving and mt.preserving) or (ms.reversing and mt.reversing):
                assert mp.preserving
            if (ms.preserving and mt.reversing) or (ms.reversing and mt.preserving):
                assert mp.reversing


# --- membership ----------------------------------------------------------------


def test_membership_of_tau():
    t = tau(2)
    yes = {"pod", "podi", "od", "i1tau"}
    for fam in ALL_EIGHT:
        assert is_member(t, MonoidSpec(fam, 2)) == (fam in yes)


def test_membership_of_empty():
    e = ChainMap.empty(3)
    for fam in ALL_EIGHT:
        assert is_member(e, MonoidSpec(fam, 3)) == (fam not in ("o", "od"))


def test_membership_of_f2():
    f2 = make_canonical("f", 3, 2)
    assert f2 == ChainMap(3, (1, 1, 3))
    for fam in ("o", "po", "od", "pod"):
        assert is_member(f2, MonoidSpec(fam, 3))
    for fam in ("poi", "podi"):
        assert not is_member(f2, MonoidSpec(fam, 3))


def test_membership_size_mismatch():
    with pytest.raises(SizeMismatchError):
        is_member(ChainMap.identity(2), MonoidSpec("pod", 3))


@pytest.mark.parametrize("fam", ALL_EIGHT)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_membership_closed_under_compose(fam, n):
    spec = MonoidSpec(fam, n)
    members = [s for s in all_maps(n) if is_member(s, spec)]
    for s in members:
        for t in members:
            assert is_member(compose(s, t), spec)


# --- profile and canonical elements -----------------------------------------


def test_profile_of_e2():
    p = profile(make_canonical("e", 3, 2))
    assert p.domain == {1, 3} and p.image == {1, 3}
    assert p.rank == 2 and p.idempotent


def test_profile_of_tau():
    p = profile(tau(3))
    assert p.fixed_points == {2}
    assert not p.idempotent


def test_profile_of_empty():
    p = profile(ChainMap.empty(4))
    assert p.rank == 0 and p.idempotent and p.kernel == ()


def test_kernel_is_partition_of_domain():
    s = ChainMap(4, (2, BOTTOM, 2, 1))
    assert s.kernel() == ((1, 3), (4,))


def test_canonical_examples():
    assert make_canonical("x", 3, 0) == m(3, p2=1, p3=2)
    assert make_canonical("g", 3, 2) == ChainMap(3, (2, 2, 3))
    assert make_canonical("e", 2, 1) == m(2, p2=2)
    assert make_canonical("tau", 4) == ChainMap(4, (4, 3, 2, 1))


@pytest.mark.parametrize("kind,index", [("e", 0), ("e", 4), ("f", 1), ("g", 4), ("x", 3), ("x", -1)])
def test_canonical_index_range(kind, index):
    with pytest.raises(ValueError):
        make_canonical(kind, 3, index)


@pytest.mark.parametrize("n", range(2, 8))
def test_x_relations(n):
    x = [make_canonical("x", n, i) for i in range(n)]
    for i in range(1, n - 1):
        assert compose(x[i], x[0]) == compose(x[0], x[i + 1])
        assert compose_all([x[i + 1], x[i], x[i + 1]]) == compose(x[i + 1], x[i])
        assert compose(x[i + 1], x[i]).rank == n - 2
        assert compose(x[0], x[i + 1]).rank == n - 2
    assert compose_all(x + [x[0]]) == x[0]


@pytest.mark.parametrize("n", range(2, 7))
def test_idempotents_in_top_r_classes(n):
    from endolab.semigroup import enumerate_monoid, green

    for fam, per_class in (("o", 2), ("poi", 1)):
        S = enumerate_monoid(MonoidSpec(fam, n), "closure")
        gd = green(S, "by_ideals")
        idem = set(S.idempotents)
        for block in gd.r_classes.blocks:
            if S.ranks[block[0]] == n - 1:
                assert len(idem.intersection(block)) == per_class
    # which idempotents: f_k and g_k share an R-class
    S = enumerate_monoid(MonoidSpec("o", n), "closure")
    gd = green(S, "by_ideals")
    for k in range(2, n + 1):
        f, g = S.id_of(make_canonical("f", n, k)), S.id_of(make_canonical("g", n, k))
        assert gd.r_classes.block_of(f) == gd.r_classes.block_of(g)


# --- text and JSON -----------------------------------------------------------


def test_parse_example():
    assert parse_map("[2,_,3]", n=3) == m(3, p1=2, p3=3)


def test_format_empty():
    assert format_map(ChainMap.empty(2)) == "[_,_]"


@pytest.mark.parametrize("text", ["[4,1]", "[0,1]", "[1,2", "1,2]", "[a,1]", "[1,,2]"])
def test_parse_errors(text):
    with pytest.raises((TransformParseError, ValueError)):
        parse_map(text, n=2)


def test_parse_length_mismatch():
    with pytest.raises(SizeMismatchError):
        parse_map("[1,2,3]", n=2)


@given(chain_maps(1, 12))
def test_text_round_trip(s):
    assert parse_map(format_map(s)) == s


@given(chain_maps(1, 12))
def test_json_round_trip(s):
    text = json.dumps(s.to_json())
    assert ChainMap.from_json(json.loads(text)) == s
    assert json.loads(text)["images"].count(None) == s.n - len(s.domain)


@given(chain_maps(1, 5), chain_maps(1, 5))
def test_canonical_order_is_lexicographic(s, t):
    if s.n == t.n:
        assert (s < t) == (s.images < t.images)


def test_spec_validation():
    assert MonoidSpec("POD", 3).family is Family.POD
    with pytest.raises(ValueError):
        MonoidSpec("pod", 0)
    with pytest.raises(ValueError):
        MonoidSpec("pod", 65)
    with pytest.raises(ValueError):
        MonoidSpec("xyz", 3)


def test_chainmap_rejects_out_of_range():
    with pytest.raises(ValueError):
        ChainMap(2, (3, 1))
    with pytest.raises(SizeMismatchError):
        ChainMap(2, (1,))


def test_inverse_of_partial_injection():
    s = m(4, p1=2, p3=4)
    assert compose(s, s.inverse()) == m(4, p1=1, p3=3)
