import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from bmgame.core import Status, Transcript, run_play
from bmgame.errors import AmalgamationFailure
from bmgame.fraisse import (
    BoundedDegree,
    Forests,
    Graphs,
    LimitCheck,
    LinearOrders,
    MembershipCheck,
    PureSets,
    RandomEve,
    ScriptedEve,
    StructurePoset,
    TargetChain,
    ackermann,
    ackermann_code,
    amalgamate,
    apply_additions,
    bit_adjacent,
    extension_failures,
    extension_property_check,
    eve_universality_strategy,
    get_class,
    joint_embed,
    odd_markov_strategy,
    rado_witness,
    simplest_dyadic,
)
from bmgame.structures import (
    Embedding,
    check_embedding,
    complete_graph,
    find_embedding,
    graph,
    is_isomorphic,
    is_substructure,
    linear_order,
    order_list,
    path_graph,
    pure_set,
)
from fractions import Fraction


# -- random graph presentation -------------------------------------------------


def test_rado_witness_examples():
    assert rado_witness(set(), set(), 4) == 16
    j = rado_witness({0}, {1}, 2)
    assert j > 2 and j & 1 and not j & 2
    j = rado_witness({0, 1}, set(), 3)
    assert j > 3 and j & 3 == 3
    with pytest.raises(ValueError):
        rado_witness({1}, {1}, 0)


@given(st.sets(st.integers(0, 12), max_size=5), st.sets(st.integers(0, 12), max_size=5), st.integers(0, 20))
def test_rado_witness_bits(pos, neg, floor):
    neg = neg - pos
    j = rado_witness(pos, neg, floor)
    assert j > floor and all(j > v for v in pos | neg)
    assert all(bit_adjacent(p, j) for p in pos)
    assert not any(bit_adjacent(q, j) for q in neg)


def test_ackermann_agrees_with_bit_graph():
    U = Graphs().limit
    for i, j in itertools.combinations(range(64), 2):
        assert U.adjacent(ackermann(i), ackermann(j)) == bit_adjacent(i, j)
    assert all(ackermann_code(ackermann(n)) == n for n in range(200))


@pytest.mark.parametrize("name", ["graphs", "linear_orders", "pure_sets"])
def test_prefix_chain(name):
    U = get_class(name).limit
    prev = U.prefix(0)
    for n in range(1, 33):
        cur = U.prefix(n)
        assert is_substructure(prev, cur)
        prev = cur


def test_bit_prefix_matches_bit_predicate():
    P = Graphs().limit.prefix(20)
    for i, j in itertools.combinations(range(20), 2):
        assert P.holds("E", (i, j)) == bit_adjacent(i, j)


def test_simplest_dyadic():
    assert simplest_dyadic(Fraction(0), Fraction(1)) == Fraction(1, 2)
    assert simplest_dyadic(Fraction(1, 3), Fraction(2, 5)) == Fraction(3, 8)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["graphs", "linear_orders", "pure_sets"]), st.integers(0, 2**16), st.integers(0, 8))
def test_realize_extends_input(name, seed, m):
    cls = get_class(name)
    U = cls.limit
    rng = random.Random(seed)
    A = cls.random_extension(U.prefix(0), rng, 3)
    B = cls.random_extension(A, rng, 3)
    f = U.realize({}, A, search=m)
    g = U.realize(f, B, search=m)
    assert all(g[k] == v for k, v in f.items())
    assert U.induced(g) == B


# -- amalgamation and joint embedding --------------------------------------------


def test_graph_amalgam_is_free():
    Z = graph([0])
    X = graph([0, 1], [(0, 1)])
    Y = graph([0, 2], [(0, 2)])
    V, f2, g2 = amalgamate(Graphs(), Embedding.of(Z, X, {0: 0}), Embedding.of(Z, Y, {0: 0}))
    assert len(V) == 3 and len(V.edges()) == 2
    assert is_isomorphic(V, path_graph(3))
    assert V.degree(0) == 2
    assert check_embedding(f2) and check_embedding(g2)


def test_order_amalgam_example():
    # Z = {0}; X is 0 < 1; Y is -1 < 0, written with ids 5 < 0
    Z = linear_order([0])
    X = linear_order([0, 1])
    Y = linear_order([5, 0])
    V, f2, g2 = amalgamate(LinearOrders(), Embedding.of(Z, X, {0: 0}), Embedding.of(Z, Y, {0: 0}))
    assert order_list(V) == [5, 0, f2(1)]


def test_order_amalgam_ties_go_to_x():
    Z = linear_order([0])
    X = linear_order([0, 1])
    Y = linear_order([0, 1])
    V, f2, g2 = amalgamate(LinearOrders(), Embedding.of(Z, X, {0: 0}), Embedding.of(Z, Y, {0: 0}))
    assert order_list(V) == [0, f2(1), 1]


def test_amalgam_of_identities():
    for cls, X in ((Graphs(), path_graph(3)), (LinearOrders(), linear_order([2, 0, 1])), (PureSets(), pure_set([0, 1]))):
        idX = Embedding.of(X, X, {x: x for x in X.universe})
        V, _, _ = amalgamate(cls, idX, idX)
        assert V == X


def random_instance(cls, rng):
    """Z <= X and an embedding of Z into a random Y."""
    Z = cls.random_extension(cls.limit.prefix(0), rng, 3)
    X = cls.random_extension(Z, rng, 3)
    Y = cls.random_extension(Z, rng, 3)
    ids = list(Y.universe)
    rng.shuffle(ids)
    perm = dict(zip(sorted(Y.universe), ids))
    Y = Y.relabel(perm)
    return Embedding.of(Z, X, {z: z for z in Z.universe}), Embedding.of(Z, Y, {z: perm[z] for z in Z.universe})


@pytest.mark.parametrize("name", ["graphs", "linear_orders", "pure_sets"])
def test_amalgam_square_commutes(name):
    cls = get_class(name)
    rng = random.Random(11)
    for _ in range(300):
        f, g = random_instance(cls, rng)
        assert check_embedding(f) and check_embedding(g)
        V, f2, g2 = amalgamate(cls, f, g)
        assert cls.contains(V)
        assert check_embedding(f2) and check_embedding(g2)
        assert all(f2(f(z)) == g2(g(z)) for z in f.domain.universe)


@pytest.mark.parametrize("name", ["graphs", "linear_orders", "pure_sets", "forests", "bounded_degree:2"])
def test_joint_embedding(name):
    cls = get_class(name)
    rng = random.Random(5)
    empty = graph([]) if cls.signature.names == ("E",) else cls.limit.prefix(0)
    for _ in range(500):
        X = cls.random_extension(empty, rng, 3)
        Y = cls.random_extension(empty, rng, 3)
        Z, i, j = joint_embed(cls, X, Y)
        assert cls.contains(Z) and check_embedding(i) and check_embedding(j)
    X = cls.random_extension(empty, rng, 3)
    Z, i, j = joint_embed(cls, X, X)
    assert Z == X and i.mapping == j.mapping == {x: x for x in X.universe}


def test_order_joint_embed_concatenates():
    Z, i, j = joint_embed(LinearOrders(), linear_order([1, 0]), linear_order([0, 1]))
    assert order_list(Z) == [1, 0, j(0), j(1)]


def test_amalgamation_failures():
    Z = graph([0])
    X = graph([0, 1, 2], [(0, 1), (0, 2)])
    Y = graph([0, 3], [(0, 3)])
    with pytest.raises(AmalgamationFailure):
        amalgamate(BoundedDegree(2), Embedding.of(Z, X, {0: 0}), Embedding.of(Z, Y, {0: 0}))
    Z = graph([0, 1])
    X = graph([0, 1, 2], [(0, 2), (1, 2)])
    Y = graph([0, 1, 3], [(0, 3), (1, 3)])
    with pytest.raises(AmalgamationFailure):
        amalgamate(Forests(), Embedding.of(Z, X, {0: 0, 1: 1}), Embedding.of(Z, Y, {0: 0, 1: 1}))


# -- membership and isomorphism types ---------------------------------------------


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["graphs", "forests", "bounded_degree:2", "linear_orders"]), st.integers(0, 2**16))
def test_membership_is_isomorphism_invariant(name, seed):
    cls = get_class(name)
    rng = random.Random(seed)
    start = cls.limit.prefix(0) if cls.limit else graph([])
    X = cls.random_extension(cls.random_extension(start, rng, 3), rng, 3)
    ids = list(range(100, 100 + len(X)))
    rng.shuffle(ids)
    assert cls.contains(X) == cls.contains(X.relabel(dict(zip(X.vertices, ids))))


def test_enumerate_members():
    # graphs on at most 4 vertices: 1 + 1 + 2 + 4 + 11 types
    members = Graphs().enumerate_members(4)
    assert len(members) == 19
    assert not any(is_isomorphic(a, b) for a, b in itertools.combinations(members, 2))
    assert len(LinearOrders().enumerate_members(5)) == 6
    assert len(Forests().enumerate_members(4)) == 1 + 1 + 2 + 3 + 6


def test_structure_poset():
    P = StructurePoset(Graphs())
    X = path_graph(3)
    ups = P.above(X, 5)
    assert all(P.leq(X, u) and u != X for u in ups)
    assert ups == P.above(X, 5)
    assert P.decode(P.encode(X)) == X


def test_unknown_class():
    with pytest.raises(KeyError):
        get_class("rings")


# -- extension property ----------------------------------------------------------


def brute_force_failures(G, bound):
    """Non-empty bases of size <= bound and neighbour sets no outside vertex realizes."""
    out = set()
    for k in range(1, bound + 1):
        for base in itertools.combinations(G.vertices, k):
            seen = {frozenset(G.neighbors(m) & set(base)) for m in G.universe if m not in base}
            for r in range(k + 1):
                for S in itertools.combinations(base, r):
                    if frozenset(S) not in seen:
                        out.add((base, frozenset(S)))
    return out


def as_pairs(failures):
    return {(f.base, frozenset(f.neighbors())) for f in failures}


def test_extension_examples():
    assert extension_property_check(Graphs(), graph([]), 0).status is Status.PASS
    assert extension_property_check(Graphs(), graph([0]), 0).status is Status.PASS
    v = extension_property_check(Graphs(), complete_graph(3), 1)
    assert v.status is Status.FAIL
    assert ((0,), frozenset()) in as_pairs(v.witness)


def test_bit_prefix_sixteen_against_oracle():
    P = Graphs().limit.prefix(16)
    assert as_pairs(extension_failures(Graphs(), P, 2)) == brute_force_failures(P, 2)
    assert extension_property_check(Graphs(), P, 1).status is Status.PASS
    # too few points to realize every pattern over two of them
    assert extension_property_check(Graphs(), P, 2).status is Status.FAIL


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**20), st.integers(0, 2))
def test_extension_failures_match_oracle(n, bits, bound):
    pairs = list(itertools.combinations(range(n), 2))
    G = graph(range(n), [p for k, p in enumerate(pairs) if bits >> k & 1])
    assert as_pairs(extension_failures(Graphs(), G, bound)) == brute_force_failures(G, bound)
    # the generic path agrees with the bitmask one
    assert as_pairs(extension_failures(BoundedDegree(n), G, bound)) <= brute_force_failures(G, bound)


# -- Odd's strategy ----------------------------------------------------------------


def test_pure_sets_response_size():
    odd = odd_markov_strategy(PureSets())
    for seed in range(5):
        t = run_play(StructurePoset(PureSets()), RandomEve(PureSets()), odd, 6, seed)
        for n in range(3):
            V, U = t.moves[2 * n], t.moves[2 * n + 1]
            assert len(U) == max(len(V), n + 1)


def test_single_vertex_covers_first_prefix():
    cls = Graphs()
    odd = odd_markov_strategy(cls)
    odd.reset()
    V = graph([0])
    U = odd.respond(Transcript(StructurePoset(cls), (V,)))
    assert is_substructure(V, U)
    f = odd.embeddings[-1]
    assert cls.limit.point(0) in f.values()
    assert cls.limit.induced(f) == U


@pytest.mark.parametrize("name", ["graphs", "linear_orders", "pure_sets"])
def test_embeddings_nested_and_cover_prefix(name):
    cls = get_class(name)
    for seed in range(4):
        odd = odd_markov_strategy(cls)
        t = run_play(StructurePoset(cls), RandomEve(cls), odd, 12, seed)
        fs = odd.embeddings
        assert len(fs) == 6
        for a, b in zip(fs, fs[1:]):
            assert all(b[k] == v for k, v in a.items())
        assert set(cls.limit.points(6)) <= set(fs[-1].values())
        assert find_embedding(cls.limit.prefix(6), t.last) is not None
        assert LimitCheck(cls)(t).status is Status.PASS
        assert MembershipCheck(cls)(t).status is Status.PASS


def test_limit_strategy_needs_a_limit():
    with pytest.raises(ValueError):
        odd_markov_strategy(Forests())


# -- Eve's universality strategy -----------------------------------------------------


def test_universality_opening():
    chain = TargetChain((path_graph(2), path_graph(3)))
    eve = eve_universality_strategy(Graphs(), chain)
    eve.reset()
    assert eve.respond(Transcript(StructurePoset(Graphs()), ())) == path_graph(2)


def test_target_chain_must_increase():
    with pytest.raises(ValueError):
        TargetChain((path_graph(3), path_graph(2)))
    with pytest.raises(ValueError):
        TargetChain(())


def test_universality_constant_chain():
    cls = Graphs()
    X = complete_graph(3)
    eve = eve_universality_strategy(cls, TargetChain((X,)))
    t = run_play(StructurePoset(cls), eve, odd_markov_strategy(cls), 6, 0)
    assert check_embedding(eve.final_embedding(t.last))


def test_universality_paths():
    cls = Graphs()
    chain = TargetChain(tuple(path_graph(n) for n in range(1, 7)))
    eve = eve_universality_strategy(cls, chain)
    t = run_play(StructurePoset(cls), eve, odd_markov_strategy(cls), 12, 0)
    e = eve.final_embedding(t.last)
    assert e.domain == path_graph(6)
    assert check_embedding(e)
    for a, b in zip(eve.embeddings, eve.embeddings[1:]):
        assert all(b.mapping[k] == v for k, v in a.mapping.items())


def test_universality_orders():
    cls = LinearOrders()
    chain = TargetChain((linear_order([0]), linear_order([1, 0]), linear_order([1, 0, 2])))
    eve = eve_universality_strategy(cls, chain)
    t = run_play(StructurePoset(cls), eve, odd_markov_strategy(cls), 6, 2)
    assert check_embedding(eve.final_embedding(t.last))


# -- scripted additions -------------------------------------------------------------


def test_apply_additions_graphs():
    cls = Graphs()
    X = apply_additions(cls, None, "0 1-0")
    assert X == graph([0, 1], [(0, 1)])
    assert apply_additions(cls, X, "") == X
    for bad in ("0", "0-1", "x", "2-2"):
        with pytest.raises(ValueError):
            apply_additions(cls, X, bad)


def test_apply_additions_orders_and_sets():
    X = apply_additions(LinearOrders(), None, "3 5@0")
    assert order_list(X) == [5, 3]
    with pytest.raises(ValueError):
        apply_additions(LinearOrders(), X, "7@9")
    assert apply_additions(PureSets(), None, "1 2") == pure_set([1, 2])


def test_apply_additions_respects_class():
    X = apply_additions(Forests(), None, "0 1-0 2-0")
    with pytest.raises(ValueError):
        apply_additions(BoundedDegree(1), X, "3-0")


def test_scripted_eve_stalls_when_done():
    cls = Graphs()
    t = run_play(StructurePoset(cls), ScriptedEve(cls, ["0"]), odd_markov_strategy(cls), 4, 0)
    assert t.moves[2] == t.moves[1]
