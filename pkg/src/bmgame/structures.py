"""Finite relational structures, embeddings, induced substructures and
finite-depth back-and-forth equivalence.

Vertex ids are natural numbers.  Every search runs in increasing id order
so results are deterministic.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


@dataclass(frozen=True)
class Signature:
    relations: tuple  # ((name, arity), ...)

    def __post_init__(self):
        names = [n for n, _ in self.relations]
        if len(set(names)) != len(names):
            raise ValueError("relation names must be unique")
        if any(a < 1 for _, a in self.relations):
            raise ValueError("arities must be positive")

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.relations)

    def arity(self, name: str) -> int:
        return dict(self.relations)[name]


EMPTY = Signature(())
GRAPH = Signature((("E", 2),))
ORDER = Signature((("<", 2),))


@dataclass(frozen=True)
class FinStructure:
    signature: Signature
    universe: frozenset
    tables: tuple  # one frozenset of tuples per relation, in signature order

    def __post_init__(self):
        if len(self.tables) != len(self.signature.relations):
            raise ValueError("one table per relation is required")
        for (name, arity), table in zip(self.signature.relations, self.tables):
            for t in table:
                if len(t) != arity or any(x not in self.universe for x in t):
                    raise ValueError(f"bad tuple {t!r} in relation {name}")

    @classmethod
    def make(cls, signature: Signature, universe: Iterable, relations: Mapping | None = None) -> "FinStructure":
        relations = relations or {}
        unknown = set(relations) - set(signature.names)
        if unknown:
            raise ValueError(f"relations {sorted(unknown)} are not in the signature")
        tables = tuple(frozenset(tuple(t) for t in relations.get(n, ())) for n in signature.names)
        return cls(signature, frozenset(universe), tables)

    def table(self, name: str) -> frozenset:
        return self.tables[self.signature.names.index(name)]

    def holds(self, name: str, t) -> bool:
        return tuple(t) in self.table(name)

    def __len__(self):
        return len(self.universe)

    @property
    def vertices(self) -> list:
        return sorted(self.universe)

    def max_id(self) -> int:
        return max(self.universe, default=-1)

    def relabel(self, mapping: Mapping) -> "FinStructure":
        return FinStructure(
            self.signature,
            frozenset(mapping[x] for x in self.universe),
            tuple(frozenset(tuple(mapping[x] for x in t) for t in tab) for tab in self.tables),
        )

    # graph conveniences
    def edges(self) -> list:
        return sorted((a, b) for a, b in self.table("E") if a < b)

    def neighbors(self, v) -> set:
        return {b for a, b in self.table("E") if a == v}

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def to_json(self) -> dict:
        return {
            "universe": self.vertices,
            "relations": {n: sorted(list(t) for t in tab) for n, tab in zip(self.signature.names, self.tables)},
        }

    @classmethod
    def from_json(cls, data: dict, signature: Signature) -> "FinStructure":
        return cls.make(signature, data["universe"], {n: [tuple(t) for t in ts] for n, ts in data["relations"].items()})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        rels = ", ".join(f"{n}={len(t)}" for n, t in zip(self.signature.names, self.tables))
        return f"FinStructure(|U|={len(self.universe)}, {rels})"


def graph(vertices: Iterable, edges: Iterable = ()) -> FinStructure:
    sym = set()
    for a, b in edges:
        if a == b:
            raise ValueError("graphs have no loops")
        sym.add((a, b))
        sym.add((b, a))
    return FinStructure.make(GRAPH, vertices, {"E": sym})


def path_graph(n: int, start: int = 0) -> FinStructure:
    vs = list(range(start, start + n))
    return graph(vs, zip(vs, vs[1:]))


def cycle_graph(n: int) -> FinStructure:
    return graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> FinStructure:
    return graph(range(n), itertools.combinations(range(n), 2))


def linear_order(ids: Iterable) -> FinStructure:
    """The order listing ``ids`` from bottom to top."""
    ids = list(ids)
    return FinStructure.make(ORDER, ids, {"<": itertools.combinations(ids, 2)})


def order_list(X: FinStructure) -> list:
    """Universe of a linear order, bottom to top."""
    below = {v: 0 for v in X.universe}
    for a, b in X.table("<"):
        below[b] += 1
    return sorted(X.universe, key=lambda v: below[v])


def pure_set(ids: Iterable) -> FinStructure:
    return FinStructure.make(EMPTY, ids)


def is_graph(X: FinStructure) -> bool:
    E = X.table("E")
    return all(a != b and (b, a) in E for a, b in E)


def components(G: FinStructure) -> list:
    """Connected components of a graph, each a sorted list of vertices."""
    adj = {v: set() for v in G.universe}
    for a, b in G.table("E"):
        adj[a].add(b)
    seen, out = set(), []
    for v in sorted(G.universe):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_forest(G: FinStructure) -> bool:
    return len(G.edges()) == len(G.universe) - len(components(G))


def to_dot(X: FinStructure, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in X.vertices:
        lines.append(f"  {v};")
    if X.signature == GRAPH:
        for a, b in X.edges():
            lines.append(f"  {a} -- {b};")
    elif X.signature == ORDER:
        chain = order_list(X)
        for a, b in zip(chain, chain[1:]):
            lines.append(f'  {a} -- {b} [label="<"];')
    else:
        for n, tab in zip(X.signature.names, X.tables):
            for t in sorted(tab):
                lines.append(f'  // {n}{t}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_dot(text: str) -> FinStructure:
    """Reads the undirected graphs written by ``to_dot``."""
    vertices, edges = set(), []
    for line in text.splitlines():
        line = line.strip().rstrip(";").split("[")[0].strip()
        if not line or line.startswith(("graph", "}", "//")):
            continue
        if "--" in line:
            a, b = (int(x) for x in line.split("--"))
            edges.append((a, b))
            vertices.update((a, b))
        else:
            vertices.add(int(line))
    return graph(vertices, edges)


# -- embeddings ---------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    domain: FinStructure
    codomain: FinStructure
    pairs: tuple  # sorted ((x, f(x)), ...)

    @classmethod
    def of(cls, domain, codomain, mapping: Mapping) -> "Embedding":
        return cls(domain, codomain, tuple(sorted(dict(mapping).items())))

    @property
    def mapping(self) -> dict:
        return dict(self.pairs)

    def __call__(self, x):
        return self.mapping[x]

    def compose(self, after: "Embedding") -> "Embedding":
        """``after`` applied after ``self``."""
        m, n = self.mapping, after.mapping
        return Embedding.of(self.domain, after.codomain, {x: n[m[x]] for x in m})


def identity(X: FinStructure) -> Embedding:
    return Embedding.of(X, X, {x: x for x in X.universe})


def inclusion(X: FinStructure, Y: FinStructure) -> Embedding:
    return Embedding.of(X, Y, {x: x for x in X.universe})


def check_embedding(e: Embedding) -> bool:
    """Injective, total, and preserves and reflects every relation."""
    m = e.mapping
    A, B = e.domain, e.codomain
    if set(m) != set(A.universe):
        return False
    if len(set(m.values())) != len(m) or not set(m.values()) <= B.universe:
        return False
    for (name, arity), tab in zip(A.signature.relations, A.tables):
        btab = B.table(name)
        for t in itertools.product(A.vertices, repeat=arity):
            if (t in tab) != (tuple(m[x] for x in t) in btab):
                return False
    return True


def _consistent(A, B, assigned: dict, a) -> bool:
    """Relations touching ``a`` agree with the images chosen so far."""
    dom = list(assigned)
    for (name, arity), tab in zip(A.signature.relations, A.tables):
        btab = B.table(name)
        for t in itertools.product(dom, repeat=arity):
            if a not in t:
                continue
            if (t in tab) != (tuple(assigned[x] for x in t) in btab):
                return False
    return True


def iter_embeddings(A: FinStructure, B: FinStructure, fixed: Mapping | None = None) -> Iterator[Embedding]:
    """All embeddings of A into B extending ``fixed``, lexicographically."""
    fixed = dict(fixed or {})
    order = [a for a in A.vertices if a not in fixed]
    targets = B.vertices
    assigned = {}
    for a, b in fixed.items():
        assigned[a] = b
        if not _consistent(A, B, assigned, a):
            return
    used = set(assigned.values())

    def search(i):
        if i == len(order):
            yield Embedding.of(A, B, assigned)
            return
        a = order[i]
        for b in targets:
            if b in used:
                continue
            assigned[a] = b
            if _consistent(A, B, assigned, a):
                used.add(b)
                yield from search(i + 1)
                used.discard(b)
            del assigned[a]

    if len(A) <= len(B):
        yield from search(0)


def enumerate_embeddings(A: FinStructure, B: FinStructure) -> list:
    return list(iter_embeddings(A, B))


def find_embedding(A: FinStructure, B: FinStructure, fixed: Mapping | None = None) -> Embedding | None:
    return next(iter_embeddings(A, B, fixed), None)


def is_isomorphic(A: FinStructure, B: FinStructure) -> bool:
    if len(A) != len(B) or A.signature != B.signature:
        return False
    if sorted(map(len, A.tables)) != sorted(map(len, B.tables)):
        return False
    return find_embedding(A, B) is not None


def induced_substructure(M: FinStructure, S: Iterable) -> FinStructure:
    S = frozenset(S)
    if not S <= M.universe:
        raise ValueError("S must be a subset of the universe")
    return FinStructure(M.signature, S, tuple(frozenset(t for t in tab if all(x in S for x in t)) for tab in M.tables))


def is_substructure(X: FinStructure, Y: FinStructure) -> bool:
    """X is the substructure of Y induced on X's ids."""
    return X.universe <= Y.universe and induced_substructure(Y, X.universe) == X


# -- back and forth -----------------------------------------------------------


class _TypeTable:
    """Interns nested type descriptions into small integers."""

    def __init__(self):
        self.ids = {}

    def __call__(self, key) -> int:
        return self.ids.setdefault(key, len(self.ids))


def _relative_pattern(M: FinStructure, t: tuple, x) -> tuple:
    """Equalities and relation facts of ``x`` against the tuple ``t``."""
    ext = t + (x,)
    k = len(t)
    eq = tuple(i for i, y in enumerate(t) if y == x)
    facts = []
    for (name, arity), tab in zip(M.signature.relations, M.tables):
        for pos in itertools.product(range(k + 1), repeat=arity):
            if k in pos:
                facts.append(tuple(ext[p] for p in pos) in tab)
    return eq, tuple(facts)


class _Atoms:
    """Atomic facts between pairs, precomputed when every relation has
    arity at most two."""

    def __init__(self, M: FinStructure):
        self.M = M
        self.fast = all(a <= 2 for _, a in M.signature.relations)
        if not self.fast:
            return
        vs = M.vertices
        self.own = {x: 0 for x in vs}
        self.rel = {x: dict.fromkeys(vs, 0) for x in vs}
        bit = 1
        for (name, arity), tab in zip(M.signature.relations, M.tables):
            for t in tab:
                if arity == 1 or t[0] == t[1]:
                    self.own[t[0]] |= bit
                else:
                    self.rel[t[0]][t[1]] |= bit
                    self.rel[t[1]][t[0]] |= bit << 1
            bit <<= 2

    def pattern(self, t: tuple, x):
        if not self.fast:
            return _relative_pattern(self.M, t, x)
        row = self.rel[x]
        return self.own[x], tuple(-1 if y == x else row[y] for y in t)


def _game_type(atoms: _Atoms, t: tuple, rounds: int, intern: _TypeTable, vertices) -> int:
    if rounds == 0:
        return 0
    if rounds == 1:
        return intern(frozenset(atoms.pattern(t, x) for x in vertices))
    return intern(
        frozenset(
            (atoms.pattern(t, x), _game_type(atoms, t + (x,), rounds - 1, intern, vertices))
            for x in vertices
        )
    )


def back_and_forth_equiv(A: FinStructure, B: FinStructure, depth: int) -> bool:
    """Whether the duplicator survives ``depth`` rounds of the
    Ehrenfeucht-Fraisse game on A and B.

    Computed through game types: the type of a tuple records, for every
    possible next pick, the pick's atomic relation to the tuple together
    with the type of the extended tuple.  Two tuples have equal types of
    rank r exactly when they are r-round back-and-forth equivalent.
    """
    if A.signature != B.signature:
        return False
    intern = _TypeTable()
    return _game_type(_Atoms(A), (), depth, intern, A.vertices) == _game_type(_Atoms(B), (), depth, intern, B.vertices)
