import math

import pytest

from bmgame.core import GenericCheck, RandomStrategy, Status, Transcript, generic_odd_strategy, run_play
from bmgame.errors import WitnessInvalid
from bmgame.posets import (
    BinaryStrings,
    Divisibility,
    OnePoint,
    SubPoset,
    Intervals,
    append_strategy,
    avoiding_family,
    dyadic_inside,
    is_dyadic_interval,
    prime_multiples_family,
    restrict_family,
)
from bmgame.transfer import (
    DominatingMap,
    InducedCheck,
    check_dominating,
    cofinal_inclusion,
    identity_map,
    image,
    pull_odd_strategy,
    push_odd_strategy,
)


def evens_map():
    return cofinal_inclusion(Divisibility(), lambda x: x % 2 == 0, lambda p: p if p % 2 == 0 else 2 * p, id="evens")


def dyadic_map():
    return cofinal_inclusion(Intervals(), is_dyadic_interval, dyadic_inside, id="dyadic")


def test_identity_is_dominating():
    assert check_dominating(identity_map(BinaryStrings())) == []


def test_evens_into_divisibility():
    m = DominatingMap(
        SubPoset(Divisibility(), lambda x: x % 2 == 0),
        Divisibility(),
        lambda x: x,
        lambda q, p: math.lcm(q, 2 * p),
        lambda p: 2 * p,
    )
    assert check_dominating(m) == []
    assert check_dominating(evens_map()) == []


def test_singleton_is_not_cofinal():
    m = DominatingMap(OnePoint(), Divisibility(), lambda x: 1, lambda q, p: q, budget=16)
    kinds = {v.kind for v in check_dominating(m)}
    assert "D1" in kinds


def test_multiples_of_six():
    m = cofinal_inclusion(Divisibility(), lambda x: x % 6 == 0, lambda p: 6 * p)
    assert check_dominating(m) == []
    assert m.dominate(6, 5) % 30 == 0


def test_dyadic_intervals_are_cofinal():
    assert check_dominating(dyadic_map(), samples=40) == []


def test_dominate_checks_postcondition():
    m = DominatingMap(Divisibility(), Divisibility(), lambda x: x, lambda q, p: q)
    with pytest.raises(WitnessInvalid):
        m.dominate(2, 6)


def test_pull_and_push_along_identity_are_the_original():
    P = BinaryStrings()
    odd = generic_odd_strategy(prime_multiples_family(1)) if False else append_strategy("1")
    for seed in range(5):
        base = run_play(P, RandomStrategy(), odd, 8, seed)
        assert run_play(P, RandomStrategy(), pull_odd_strategy(identity_map(P), odd), 8, seed) == base
        assert run_play(P, RandomStrategy(), push_odd_strategy(identity_map(P), odd), 8, seed) == base


def test_pulled_responses_stay_in_source():
    m = evens_map()
    sigma = generic_odd_strategy(prime_multiples_family(5))
    for seed in range(10):
        t = run_play(m.source, RandomStrategy(), pull_odd_strategy(m, sigma), 10, seed)
        assert all(v % 2 == 0 for v in t.moves[1::2])


def test_pulled_target_play_is_image_interleaved():
    m = evens_map()
    s = pull_odd_strategy(m, generic_odd_strategy(prime_multiples_family(4)))
    t = run_play(m.source, RandomStrategy(), s, 8, 3)
    target = s.target_play()
    assert target.is_chain()
    phi_t = image(m, t)
    assert phi_t.is_chain()
    # every image move sits below the target move sigma answered with
    for i in range(0, len(t), 2):
        assert m.target.leq(target.moves[i], phi_t.moves[i])


def test_pulled_strategy_as_eve_opens_in_source():
    m = evens_map()
    s = pull_odd_strategy(m, append_strategy(3) if False else RandomStrategy())
    s.reset(1)
    first = s.respond(Transcript(m.source, ()))
    assert first % 2 == 0


@pytest.mark.parametrize("seed", range(10))
def test_pull_preserves_generic_pass(seed):
    m = evens_map()
    fam = prime_multiples_family(4)
    sigma = generic_odd_strategy(fam)
    t = run_play(m.source, RandomStrategy(), pull_odd_strategy(m, sigma), 8, seed)
    assert InducedCheck(GenericCheck(fam), m)(t).status is Status.PASS


@pytest.mark.parametrize("seed", range(10))
def test_push_preserves_generic_pass(seed):
    m = dyadic_map()
    fam = avoiding_family(4)
    pi = generic_odd_strategy(restrict_family(fam, is_dyadic_interval, dyadic_inside))
    t = run_play(m.target, RandomStrategy(), push_odd_strategy(m, pi), 8, seed)
    assert t.is_chain()
    assert GenericCheck(fam)(t).status is Status.PASS
