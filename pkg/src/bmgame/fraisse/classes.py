"""Classes of finite structures: membership, joint embedding, amalgamation,
isomorphism types, one-point extensions and random one-step growth."""
from __future__ import annotations

import itertools
import random
import zlib
from typing import Iterator

from ..core import Poset
from ..errors import AmalgamationFailure
from ..structures import (
    EMPTY,
    GRAPH,
    ORDER,
    Embedding,
    FinStructure,
    Signature,
    components,
    graph,
    identity,
    is_forest,
    is_graph,
    is_isomorphic,
    is_substructure,
    linear_order,
    order_list,
    pure_set,
)
from .limits import DenseOrderLimit, LimitPresentation, PureSetLimit, RandomGraphLimit


def _fresh_ids(taken, count) -> list:
    start = max(taken, default=-1) + 1
    return list(range(start, start + count))


class StructureClass:
    """A class K of finite structures over one relational signature.

    ``limit`` is an explicit presentation of the limit when K is a Fraisse
    class, and None otherwise.  ``closure_bound`` is the size of the sets
    over which Odd's limit strategy keeps one-point extensions realized.
    """

    name = "class"
    signature: Signature = EMPTY
    limit: LimitPresentation | None = None
    closure_bound = 0

    def contains(self, X: FinStructure) -> bool:
        raise NotImplementedError

    # -- (F1) and (F2) --------------------------------------------------------

    def joint_embed(self, X: FinStructure, Y: FinStructure):
        """Disjoint union, Y moved to fresh ids.  Returns (Z, i, j)."""
        if X == Y:
            return X, identity(X), identity(X)
        shift = dict(zip(Y.vertices, _fresh_ids(X.universe, len(Y))))
        Z = self._union(X, Y.relabel(shift))
        return Z, Embedding.of(X, Z, {x: x for x in X.universe}), Embedding.of(Y, Z, shift)

    @staticmethod
    def _union(X, Y) -> FinStructure:
        return FinStructure(X.signature, X.universe | Y.universe, tuple(a | b for a, b in zip(X.tables, Y.tables)))

    def free_amalgam(self, f: Embedding, g: Embedding):
        """Glue X and Y along Z with no new relations.

        Y keeps its ids, so ``g'`` is the inclusion; X's vertices outside
        f(Z) get fresh ids above Y's.
        """
        X, Y = f.codomain, g.codomain
        back = {f(z): g(z) for z in f.domain.universe}
        rest = [x for x in X.vertices if x not in back]
        back.update(zip(rest, _fresh_ids(Y.universe, len(rest))))
        V = self._union(Y, X.relabel(back))
        return V, Embedding.of(X, V, back), Embedding.of(Y, V, {y: y for y in Y.universe})

    def amalgamate(self, f: Embedding, g: Embedding):
        V, f2, g2 = self.free_amalgam(f, g)
        if not self.contains(V):
            raise AmalgamationFailure(f"{self.name}: the free amalgam leaves the class")
        return V, f2, g2

    # -- isomorphism types ----------------------------------------------------

    def raw_structures(self, n: int) -> Iterator[FinStructure]:
        """Every structure on ids 0..n-1 (not yet filtered by membership)."""
        slots = [
            (name, t)
            for name, arity in self.signature.relations
            for t in itertools.product(range(n), repeat=arity)
        ]
        for bits in itertools.product((False, True), repeat=len(slots)):
            rel = {}
            for (name, t), b in zip(slots, bits):
                if b:
                    rel.setdefault(name, []).append(t)
            yield FinStructure.make(self.signature, range(n), rel)

    def enumerate_members(self, size_bound: int) -> list:
        """One member per isomorphism type, by increasing size."""
        out = []
        for n in range(size_bound + 1):
            found = []
            for X in self.raw_structures(n):
                if self.contains(X) and not any(is_isomorphic(X, Y) for Y in found):
                    found.append(X)
            out.extend(found)
        return out

    # -- one-point extensions ---------------------------------------------------

    def one_point_extensions(self, A: FinStructure, new) -> list:
        """Members B on A's universe plus ``new`` with B restricted to A equal to A.

        Each extension is the set of relation tuples that mention ``new``.
        """
        ids = A.vertices + [new]
        slots = [
            (name, t)
            for name, arity in self.signature.relations
            for t in itertools.product(ids, repeat=arity)
            if new in t
        ]
        out = []
        for bits in itertools.product((False, True), repeat=len(slots)):
            rel = {name: set(A.table(name)) for name in self.signature.names}
            for (name, t), b in zip(slots, bits):
                if b:
                    rel[name].add(t)
            B = FinStructure.make(self.signature, ids, rel)
            if self.contains(B):
                out.append(B)
        return out

    # -- random growth, used for random Eve -------------------------------------

    def random_extension(self, X: FinStructure, rng: random.Random, max_new: int = 2) -> FinStructure:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class Graphs(StructureClass):
    name = "graphs"
    signature = GRAPH
    closure_bound = 2

    def __init__(self):
        self.limit = RandomGraphLimit()

    def contains(self, X):
        return X.signature == GRAPH and is_graph(X)

    def raw_structures(self, n):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in itertools.product((False, True), repeat=len(pairs)):
            yield graph(range(n), [p for p, b in zip(pairs, bits) if b])

    def one_point_extensions(self, A, new):
        vs = A.vertices
        return [
            graph(vs + [new], A.edges() + [(new, v) for v in nb])
            for r in range(len(vs) + 1)
            for nb in itertools.combinations(vs, r)
        ]

    def _new_vertex_edges(self, X, v, rng, allowed):
        return [(v, u) for u in allowed if rng.random() < 0.5]

    def random_extension(self, X, rng, max_new=2):
        edges = X.edges()
        vs = X.vertices
        for v in _fresh_ids(X.universe, rng.randint(1, max_new)):
            edges += self._new_vertex_edges(X, v, rng, vs)
            vs = vs + [v]
        return graph(vs, edges)


class LinearOrders(StructureClass):
    name = "linear_orders"
    signature = ORDER

    def __init__(self):
        self.limit = DenseOrderLimit()

    def contains(self, X):
        if X.signature != ORDER:
            return False
        lt = X.table("<")
        vs = X.vertices
        for a in vs:
            if (a, a) in lt:
                return False
            for b in vs:
                if a != b and ((a, b) in lt) == ((b, a) in lt):
                    return False
                for c in vs:
                    if (a, b) in lt and (b, c) in lt and (a, c) not in lt:
                        return False
        return True

    def raw_structures(self, n):
        yield linear_order(range(n))

    def joint_embed(self, X, Y):
        if X == Y:
            return X, identity(X), identity(X)
        shift = dict(zip(Y.vertices, _fresh_ids(X.universe, len(Y))))
        Z = linear_order(order_list(X) + [shift[y] for y in order_list(Y)])
        return Z, Embedding.of(X, Z, {x: x for x in X.universe}), Embedding.of(Y, Z, shift)

    def amalgamate(self, f, g):
        """Merge the two orders; inside a gap of Z, X's points go below Y's."""
        X, Y, Z = f.codomain, g.codomain, f.domain
        zs = order_list(Z)
        fz = {f(z): i for i, z in enumerate(zs)}
        gz = {g(z): i for i, z in enumerate(zs)}
        back = {f(z): g(z) for z in zs}
        rest = [x for x in order_list(X) if x not in back]
        back.update(zip(rest, _fresh_ids(Y.universe, len(rest))))

        def keys(chain, images, side, rename):
            # key (2*gap, side, rank) for points in a gap of Z, (2i+1, 0, 0) for Z's i-th
            out, gap = [], 0
            for rank, v in enumerate(chain):
                if v in images:
                    gap = images[v] + 1
                    if side:
                        out.append(((2 * images[v] + 1, 0, 0), rename(v)))
                else:
                    out.append(((2 * gap, side, rank), rename(v)))
            return out

        merged = keys(order_list(X), fz, 0, back.get) + keys(order_list(Y), gz, 1, lambda y: y)
        V = linear_order([v for _, v in sorted(merged)])
        return V, Embedding.of(X, V, back), Embedding.of(Y, V, {y: y for y in Y.universe})

    def one_point_extensions(self, A, new):
        chain = order_list(A)
        return [linear_order(chain[:i] + [new] + chain[i:]) for i in range(len(chain) + 1)]

    def random_extension(self, X, rng, max_new=2):
        chain = order_list(X)
        for v in _fresh_ids(X.universe, rng.randint(1, max_new)):
            chain.insert(rng.randint(0, len(chain)), v)
        return linear_order(chain)


class PureSets(StructureClass):
    name = "pure_sets"
    signature = EMPTY

    def __init__(self):
        self.limit = PureSetLimit()

    def contains(self, X):
        return X.signature == EMPTY

    def raw_structures(self, n):
        yield pure_set(range(n))

    def random_extension(self, X, rng, max_new=2):
        return pure_set(sorted(X.universe) + _fresh_ids(X.universe, rng.randint(1, max_new)))


class BoundedDegree(Graphs):
    """Graphs of maximum degree at most N.  No amalgamation, no limit."""

    closure_bound = 0

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("N must be positive")
        self.N = N
        self.name = f"bounded_degree:{N}"
        self.limit = None

    def contains(self, X):
        return super().contains(X) and all(X.degree(v) <= self.N for v in X.universe)

    def one_point_extensions(self, A, new):
        return [B for B in super().one_point_extensions(A, new) if self.contains(B)]

    def raw_structures(self, n):
        return (G for G in super().raw_structures(n) if self.contains(G))

    def random_extension(self, X, rng, max_new=2):
        edges = X.edges()
        deg = {v: X.degree(v) for v in X.universe}
        for v in _fresh_ids(X.universe, rng.randint(1, max_new)):
            deg[v] = 0
            for u in sorted(deg):
                if u != v and deg[u] < self.N and deg[v] < self.N and rng.random() < 0.4:
                    edges.append((v, u))
                    deg[u] += 1
                    deg[v] += 1
        return graph(sorted(deg), edges)


class Forests(Graphs):
    """Finite cycle-free graphs.  No amalgamation, no limit."""

    name = "forests"
    closure_bound = 0

    def __init__(self):
        self.limit = None

    def contains(self, X):
        return super().contains(X) and is_forest(X)

    def one_point_extensions(self, A, new):
        return [B for B in super().one_point_extensions(A, new) if self.contains(B)]

    def raw_structures(self, n):
        return (G for G in super().raw_structures(n) if is_forest(G))

    def random_extension(self, X, rng, max_new=2):
        edges = X.edges()
        vs = X.vertices
        for v in _fresh_ids(X.universe, rng.randint(1, max_new)):
            # attach to at most one vertex per component: stays acyclic
            comps = components(graph(vs, edges)) if vs else []
            for comp in comps:
                if rng.random() < 0.3:
                    edges.append((v, rng.choice(comp)))
            vs = vs + [v]
        return graph(vs, edges)


class StructurePoset(Poset):
    """Members of a class ordered by "induced substructure on a subset of ids"."""

    exact_joins = False

    def __init__(self, cls: StructureClass):
        self.cls = cls
        self.id = cls.name

    def leq(self, x, y):
        return is_substructure(x, y)

    def encode(self, x):
        return x.to_json()

    def decode(self, data):
        return FinStructure.from_json(data, self.cls.signature)

    def above(self, x, budget, scan=4096):
        rng = random.Random(zlib.crc32(x.dumps().encode()))
        return [self.cls.random_extension(x, rng) for _ in range(budget)]


def get_class(name: str) -> StructureClass:
    if name.startswith("bounded_degree"):
        _, _, n = name.partition(":")
        return BoundedDegree(int(n or 2))
    table = {"graphs": Graphs, "linear_orders": LinearOrders, "pure_sets": PureSets, "forests": Forests}
    try:
        return table[name]()
    except KeyError:
        raise KeyError(f"unknown class {name!r}; choose from {sorted(table) + ['bounded_degree:N']}") from None
