import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bmgame.posets import (
    FAMILIES,
    POSETS,
    BinaryStrings,
    Divisibility,
    Intervals,
    PartialFunctions,
    SubPoset,
    avoiding_family,
    dyadic_inside,
    get_poset,
    is_dyadic_interval,
    nth_prime,
    rationals,
    smallest_missing_prime,
    substring_family,
)

SAMPLED = ["divisibility", "binary_strings", "intervals", "partial_functions"]


@pytest.mark.parametrize("name", SAMPLED)
def test_order_axioms_on_sample(name):
    P = get_poset(name)
    xs = P.enumerate(40)
    for x in xs:
        assert P.leq(x, x)
    for x, y in itertools.product(xs, repeat=2):
        if P.leq(x, y) and P.leq(y, x):
            assert x == y
    for x, y, z in itertools.product(xs[:20], repeat=3):
        if P.leq(x, y) and P.leq(y, z):
            assert P.leq(x, z)


@pytest.mark.parametrize("name", SAMPLED)
def test_join_witness_and_compat_agree(name):
    P = get_poset(name)
    xs = P.enumerate(40)
    for x, y in itertools.product(xs, repeat=2):
        z = P.join_witness(x, y)
        if z is not None:
            assert P.leq(x, z) and P.leq(y, z)
        assert P.compat(x, y) == (z is not None)
        if not P.compat(x, y):
            assert not any(P.leq(x, w) and P.leq(y, w) for w in P.enumerate(120))


@pytest.mark.parametrize("name", SAMPLED)
def test_above_is_strictly_above(name):
    P = get_poset(name)
    for x in P.enumerate(10):
        ups = P.above(x, 6)
        assert len(ups) == 6 and len(set(ups)) == 6
        assert all(P.leq(x, u) and u != x for u in ups)


@pytest.mark.parametrize("name", SAMPLED)
def test_encode_round_trip(name):
    P = get_poset(name)
    for x in P.enumerate(30):
        assert P.decode(P.encode(x)) == x


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_family_witnesses_are_valid(name):
    P = get_poset(name)
    fam = FAMILIES[name](6)
    for p in P.enumerate(30):
        for d in fam.sets:
            w = d.witness_above(p)
            assert P.leq(p, w) and d.contains(w)


def test_substring_family():
    fam = substring_family(4)
    assert fam[2].contains("0100") and fam[2].witness_above("1") == "110"


def test_registry_unknown():
    with pytest.raises(KeyError):
        get_poset("nope")
    assert set(SAMPLED) <= set(POSETS)


def test_primes():
    assert [nth_prime(i) for i in range(6)] == [2, 3, 5, 7, 11, 13]
    assert smallest_missing_prime(30) == 7


def test_binary_strings_enumeration_order():
    assert BinaryStrings().enumerate(7) == ["", "0", "1", "00", "01", "10", "11"]


def test_intervals_order_is_reverse_inclusion():
    P = Intervals()
    a = (Fraction(0), Fraction(1))
    b = (Fraction(1, 4), Fraction(1, 2))
    assert P.leq(a, b) and not P.leq(b, a)
    assert not P.compat((Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1)))


@given(st.fractions(0, 1), st.fractions(0, 1))
def test_dyadic_inside(a, b):
    if a == b:
        return
    iv = (min(a, b), max(a, b))
    d = dyadic_inside(iv)
    assert is_dyadic_interval(d)
    assert Intervals().leq(iv, d)


def test_rationals_enumeration():
    qs = list(itertools.islice(rationals(), 6))
    assert qs == [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4)]


@settings(max_examples=50)
@given(st.integers(0, 60))
def test_avoiding_witness(i):
    P = Intervals()
    p = P.enumerate(61)[i]
    for n, d in enumerate(avoiding_family(5).sets):
        w = d.witness_above(p)
        assert P.leq(p, w) and d.contains(w)
        assert w[1] - w[0] <= Fraction(1, 2**n)


def test_partial_functions_enumerates_each_once():
    xs = PartialFunctions().enumerate(200)
    assert len(xs) == len(set(xs))
    assert xs[0] == ()


def test_subposet_of_evens():
    Q = SubPoset(Divisibility(), lambda x: x % 2 == 0)
    assert Q.enumerate(4) == [2, 4, 6, 8]
    assert all(u % 2 == 0 for u in Q.above(6, 5))
    assert Q.join_witness(2, 3) == 6
    assert Q.join_witness(3, 5) is None
