import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bmgame.core import Transcript, run_play
from bmgame.errors import CycleDetected, DegreeExceeded
from bmgame.fraisse.sparse import connected_regular, regular_of_size
from bmgame.fraisse import (
    BoundedDegree,
    Forests,
    RandomEve,
    StructurePoset,
    bounded_degree_odd_strategy,
    catalogue,
    complete_tree_graph,
    contains_complete_tree,
    forest_odd_strategy,
    is_regular,
    n_complete_embed,
)
from bmgame.structures import (
    back_and_forth_equiv,
    complete_graph,
    components,
    cycle_graph,
    find_embedding,
    graph,
    induced_substructure,
    is_forest,
    is_isomorphic,
    is_substructure,
    path_graph,
)


def all_cycles(H):
    return all(is_isomorphic(induced_substructure(H, c), cycle_graph(len(c))) for c in components(H))


def test_regular_graph_is_kept():
    assert n_complete_embed(cycle_graph(5), 2) == cycle_graph(5)
    assert n_complete_embed(complete_graph(4), 3) == complete_graph(4)


def test_edge_to_square():
    H = n_complete_embed(path_graph(2), 2)
    assert is_isomorphic(H, cycle_graph(4))
    assert is_substructure(path_graph(2), H)


def test_vertex_to_edge():
    assert is_isomorphic(n_complete_embed(graph([0]), 1), complete_graph(2))


def test_degree_exceeded():
    star = graph(range(4), [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(DegreeExceeded):
        n_complete_embed(star, 2)
    with pytest.raises(ValueError):
        n_complete_embed(graph([0]), 0)


@pytest.mark.parametrize("n", range(2, 7))
def test_paths_complete_to_cycles(n):
    H = n_complete_embed(path_graph(n), 2)
    assert is_regular(H, 2) and all_cycles(H)
    assert is_substructure(path_graph(n), H)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**21), st.integers(1, 3))
def test_n_complete_embed_properties(n, bits, N):
    pairs = list(itertools.combinations(range(n), 2))
    G = graph(range(n), [p for k, p in enumerate(pairs) if bits >> k & 1])
    if max((G.degree(v) for v in G.universe), default=0) > N:
        with pytest.raises(DegreeExceeded):
            n_complete_embed(G, N)
        return
    H = n_complete_embed(G, N)
    assert is_regular(H, N) and is_substructure(G, H)


def test_catalogue_counts():
    # connected 2-regular graphs are the cycles
    assert [len(connected_regular(n, 2)) for n in range(3, 8)] == [1, 1, 1, 1, 1]
    # published counts of connected cubic and quartic graphs
    assert [len(connected_regular(n, 3)) for n in (4, 6, 8, 10)] == [1, 2, 5, 19]
    assert [len(connected_regular(n, 4)) for n in (5, 6, 7, 8)] == [1, 1, 2, 6]
    # 2-regular graphs on 6 vertices: C6 and two triangles
    assert len(regular_of_size(6, 2)) == 2
    cat = catalogue(2)
    assert [len(cat[i]) for i in range(4)] == [3, 4, 5, 6]
    for a, b in itertools.combinations([cat[i] for i in range(6)], 2):
        assert not is_isomorphic(a, b)


def bd_play(N, rounds, seed):
    cls = BoundedDegree(N)
    return run_play(StructurePoset(cls), RandomEve(cls), bounded_degree_odd_strategy(N), rounds, seed)


def test_empty_opening_gives_first_catalogue_graph():
    odd = bounded_degree_odd_strategy(2)
    U = odd.respond(Transcript(StructurePoset(BoundedDegree(2)), (graph([]),)))
    assert is_isomorphic(U, catalogue(2)[0])


def test_path_answer_has_long_cycle():
    odd = bounded_degree_odd_strategy(2)
    U = odd.respond(Transcript(StructurePoset(BoundedDegree(2)), (path_graph(3),)))
    assert is_substructure(path_graph(3), U)
    comp = next(c for c in components(U) if 0 in c)
    assert len(comp) >= 4


@pytest.mark.parametrize("N", [1, 2, 3])
def test_bounded_degree_play(N):
    for seed in range(4):
        t = bd_play(N, 8, seed)
        assert t.is_chain()
        cls = BoundedDegree(N)
        for n in range(4):
            U = t.moves[2 * n + 1]
            assert cls.contains(U) and is_regular(U, N)
            assert len(components(U)) >= n
            assert find_embedding(t.moves[2 * n], U) is not None


def test_bounded_degree_rejects_high_degree():
    odd = bounded_degree_odd_strategy(1)
    with pytest.raises(DegreeExceeded):
        odd.respond(Transcript(StructurePoset(BoundedDegree(1)), (path_graph(3),)))


def test_bounded_degree_is_markov():
    odd = bounded_degree_odd_strategy(2)
    P = StructurePoset(BoundedDegree(2))
    a = odd.respond(Transcript(P, (graph([]), cycle_graph(3), cycle_graph(3))))
    b = odd.respond(Transcript(P, (cycle_graph(3), cycle_graph(3), cycle_graph(3))))
    assert a == b


# -- forests ------------------------------------------------------------------------


def test_complete_tree_graph():
    T = complete_tree_graph(3, 2)
    assert len(T) == 13 and is_forest(T)
    assert contains_complete_tree(T, 3, 2) and not contains_complete_tree(T, 3, 3)


def test_forest_stage_one():
    odd = forest_odd_strategy()
    P = StructurePoset(Forests())
    edge = graph([0, 1], [(0, 1)])
    U = odd.respond(Transcript(P, (edge, edge, edge)))
    assert is_forest(U) and is_substructure(edge, U)
    assert len(components(U)) >= 1 and contains_complete_tree(U, 1, 1)


def test_forest_stage_three():
    odd = forest_odd_strategy()
    P = StructurePoset(Forests())
    G = graph([0, 1, 2, 5], [(0, 1), (1, 2)])
    U = odd.respond(Transcript(P, (G,) * 7))
    assert is_forest(U) and is_substructure(G, U)
    comps = components(U)
    assert len(comps) >= 3
    assert all(contains_complete_tree(induced_substructure(U, c), 3, 3) for c in comps)


def test_forest_rejects_cycles():
    with pytest.raises(CycleDetected):
        forest_odd_strategy().respond(Transcript(StructurePoset(Forests()), (cycle_graph(3),)))


def forest_play(seed, rounds=8):
    cls = Forests()
    return run_play(StructurePoset(cls), RandomEve(cls), forest_odd_strategy(), rounds, seed)


def test_forest_plays():
    for seed in range(5):
        t = forest_play(seed)
        for n in range(4):
            U = t.moves[2 * n + 1]
            assert is_forest(U)
            comps = components(U)
            assert len(comps) >= n
            assert all(contains_complete_tree(induced_substructure(U, c), n, n) for c in comps)


def test_forest_plays_agree_to_depth_two():
    assert back_and_forth_equiv(forest_play(1).last, forest_play(2).last, 2)
