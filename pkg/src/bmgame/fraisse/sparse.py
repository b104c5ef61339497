"""Odd's strategies for two classes without amalgamation: graphs of bounded
degree and finite forests."""
from __future__ import annotations

import itertools
from functools import lru_cache

from ..core import Strategy
from ..errors import CycleDetected, DegreeExceeded
from ..structures import FinStructure, components, graph, induced_substructure, is_forest, is_isomorphic


def max_degree(G: FinStructure) -> int:
    return max((G.degree(v) for v in G.universe), default=0)


def is_regular(G: FinStructure, N: int) -> bool:
    return all(G.degree(v) == N for v in G.universe)


def n_complete_embed(G: FinStructure, N: int, start: int | None = None) -> FinStructure:
    """An N-regular graph containing G as an induced subgraph.

    Doubling: put down a copy of the current graph on fresh ids and join
    every vertex of degree < N to its twin; repeat until regular.  Each
    round raises every deficient degree by one.  Copies use ids from
    ``start`` on (default: above G's ids).
    """
    if N < 1:
        raise ValueError("N must be positive")
    if max_degree(G) > N:
        raise DegreeExceeded(f"max degree {max_degree(G)} exceeds {N}")
    H = G
    nxt = max(G.max_id() + 1, start if start is not None else 0)
    while not is_regular(H, N):
        twin = {v: nxt + i for i, v in enumerate(H.vertices)}
        nxt += len(twin)
        edges = H.edges() + [(twin[a], twin[b]) for a, b in H.edges()]
        edges += [(v, twin[v]) for v in H.vertices if H.degree(v) < N]
        H = graph(list(H.universe) + list(twin.values()), edges)
    return H


# -- catalogue of N-regular graphs ------------------------------------------------


def _connected_regular_labelled(n: int, N: int):
    """Connected N-regular graphs on ids 0..n-1 labelled in breadth-first
    order from 0, by backtracking over edges.

    Every connected graph has such a labelling: the neighbours a vertex
    meets first are the next unused ids, so a vertex reached with no edge
    yet would start a second component and is pruned.
    """
    if n * N % 2 or N >= n:
        return
    deg = [0] * n
    edges = []

    def fill(v, fresh):
        # fresh: least id not yet touched by any edge
        if v == n:
            yield list(edges)
            return
        if v > 0 and deg[v] == 0:
            return
        need = N - deg[v]
        touched = [u for u in range(v + 1, fresh) if deg[u] < N]
        for k in range(max(0, need - (n - fresh)), need + 1):
            new = list(range(fresh, fresh + need - k))
            for old in itertools.combinations(touched, k):
                chosen = list(old) + new
                for u in chosen:
                    deg[u] += 1
                    edges.append((v, u))
                deg[v] = N
                yield from fill(v + 1, max(fresh, v + 1) + len(new))
                deg[v] -= need
                for u in chosen:
                    deg[u] -= 1
                    edges.pop()

    yield from fill(0, 1)


def _invariant(G: FinStructure):
    """Isomorphism invariant: per vertex, its triangle count and distance
    profile, refined twice over neighbourhoods."""
    nbr = {v: G.neighbors(v) for v in G.universe}
    col = {}
    for v in G.universe:
        tri = sum(1 for a, b in itertools.combinations(sorted(nbr[v]), 2) if b in nbr[a])
        seen, frontier, profile = {v}, {v}, []
        while frontier:
            frontier = {u for w in frontier for u in nbr[w]} - seen
            seen |= frontier
            profile.append(len(frontier))
        col[v] = (tri, tuple(profile))
    for _ in range(2):
        col = {v: (col[v], tuple(sorted(col[u] for u in nbr[v]))) for v in G.universe}
    return tuple(sorted(col.values()))


@lru_cache(maxsize=None)
def connected_regular(n: int, N: int) -> tuple:
    """Connected N-regular graphs on n vertices, one per isomorphism type."""
    found = {}
    for edges in _connected_regular_labelled(n, N):
        G = graph(range(n), edges)
        bucket = found.setdefault(_invariant(G), [])
        if not any(is_isomorphic(G, H) for H in bucket):
            bucket.append(G)
    return tuple(H for key in sorted(found) for H in found[key])


def _disjoint(parts) -> FinStructure:
    vs, edges, off = [], [], 0
    for P in parts:
        shift = {v: off + i for i, v in enumerate(P.vertices)}
        vs += list(shift.values())
        edges += [(shift[a], shift[b]) for a, b in P.edges()]
        off += len(P)
    return graph(vs, edges)


@lru_cache(maxsize=None)
def regular_of_size(n: int, N: int) -> tuple:
    """All N-regular graphs on n vertices up to isomorphism, as multisets of
    connected ones."""
    pieces = [(m, H) for m in range(N + 1, n + 1) for H in connected_regular(m, N)]
    out = []

    def build(i, left, chosen):
        if left == 0:
            out.append(_disjoint(chosen))
            return
        for j in range(i, len(pieces)):
            m, H = pieces[j]
            if m <= left:
                build(j, left - m, chosen + [H])

    if n:
        build(0, n, [])
    return tuple(out)


class Catalogue:
    """H_0, H_1, ...: the N-regular graphs by increasing size, one per
    isomorphism type.  Entries are computed on demand and cached."""

    def __init__(self, N: int, max_size: int = 64):
        self.N = N
        self.max_size = max_size
        self.items = []
        self._size = 0

    def __getitem__(self, i: int) -> FinStructure:
        while len(self.items) <= i:
            self._size += 1
            if self._size > self.max_size:
                raise IndexError("catalogue exhausted within max_size")
            self.items.extend(regular_of_size(self._size, self.N))
        return self.items[i]


_CATALOGUES = {}


def catalogue(N: int) -> Catalogue:
    return _CATALOGUES.setdefault(N, Catalogue(N))


def _place(H: FinStructure, start: int) -> FinStructure:
    return H.relabel({v: start + i for i, v in enumerate(H.vertices)})


class BoundedDegreeOdd(Strategy):
    """Odd answers with a disjoint union of N-regular graphs.

    Every component of Eve's move is completed with ``n_complete_embed``
    (regular ones are kept); then, for each i < n + 1 at stage n, a copy of
    the catalogue graph H_i is added unless an unused component already is
    isomorphic to it.  The answer depends only on Eve's move and the stage.
    """

    markov = True

    def __init__(self, N: int):
        self.N = N
        self.name = f"bounded_degree:{N}"
        self.catalogue = catalogue(N)

    def respond(self, transcript):
        G = transcript.last
        n = len(transcript) // 2
        if max_degree(G) > self.N:
            raise DegreeExceeded(f"max degree {max_degree(G)} exceeds {self.N}")
        nxt = G.max_id() + 1
        parts = []
        for comp in components(G):
            C = induced_substructure(G, comp)
            H = n_complete_embed(C, self.N, start=nxt)
            nxt = max(nxt, H.max_id() + 1)
            parts.append(H)
        free = list(parts)
        for i in range(n + 1):
            Hi = self.catalogue[i]
            match = next((P for P in free if is_isomorphic(P, Hi)), None)
            if match is not None:
                free.remove(match)
                continue
            P = _place(Hi, nxt)
            nxt += len(P)
            parts.append(P)
        return graph(
            [v for P in parts for v in P.universe],
            [e for P in parts for e in P.edges()],
        )


def bounded_degree_odd_strategy(N: int) -> BoundedDegreeOdd:
    return BoundedDegreeOdd(N)


# -- forests ----------------------------------------------------------------------


def complete_tree_graph(branching: int, depth: int, start: int = 0) -> FinStructure:
    """Rooted complete tree, root ``start``, ids in breadth-first order."""
    vs, edges = [start], []
    frontier, nxt = [start], start + 1
    for _ in range(depth):
        new = []
        for v in frontier:
            for _ in range(branching):
                edges.append((v, nxt))
                new.append(nxt)
                nxt += 1
        vs += new
        frontier = new
    return graph(vs, edges)


class ForestOdd(Strategy):
    """At stage n Odd grows every component so that, from its least vertex,
    a complete n-ary tree of depth n hangs inside it, then adds complete
    trees as new components until there are at least n (and at least one).
    Only new leaves are attached, so the result stays a forest."""

    markov = True
    name = "forest"

    def respond(self, transcript):
        G = transcript.last
        n = len(transcript) // 2
        if not is_forest(G):
            raise CycleDetected("Eve's move has a cycle")
        vs, edges = list(G.universe), G.edges()
        adj = {v: set(G.neighbors(v)) for v in vs}
        nxt = G.max_id() + 1

        def attach(v):
            nonlocal nxt
            u = nxt
            nxt += 1
            vs.append(u)
            edges.append((v, u))
            adj[v].add(u)
            adj[u] = {v}
            return u

        comps = components(G)
        for comp in comps:
            root = min(comp)
            frontier = [(root, None)]
            for _ in range(n):
                nxt_frontier = []
                for v, parent in frontier:
                    kids = sorted(adj[v] - {parent})
                    while len(kids) < n:
                        kids.append(attach(v))
                    nxt_frontier += [(k, v) for k in kids[:n]]
                frontier = nxt_frontier
        count = len(comps)
        while count < max(n, 1):
            T = complete_tree_graph(n, n, nxt)
            vs += T.vertices
            edges += T.edges()
            nxt = T.max_id() + 1
            count += 1
        return graph(vs, edges)


def forest_odd_strategy() -> ForestOdd:
    return ForestOdd()


def contains_complete_tree(G: FinStructure, branching: int, depth: int) -> bool:
    """Whether some vertex of the forest G roots a complete tree of the given
    shape (as a subgraph; in a forest that is also induced)."""

    def grows(v, parent, d):
        if d == 0:
            return True
        good = sum(1 for u in G.neighbors(v) if u != parent and grows(u, v, d - 1))
        return good >= branching

    return any(grows(v, None, depth) for v in G.universe)
