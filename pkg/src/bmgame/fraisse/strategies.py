"""Strategies for the game on a class of finite structures.

Moves are structures on natural-number ids; a move extends the previous
one when it is an induced substructure on a subset of the ids.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ..core import StatefulStrategy, Strategy
from ..errors import RealizeFailure
from ..structures import EMPTY, ORDER, Embedding, FinStructure, graph, is_substructure, linear_order, order_list, pure_set
from .classes import StructureClass


class LimitOddStrategy(StatefulStrategy):
    """Odd's strategy that builds the limit.

    The state is an embedding ``f`` of Odd's last move into the limit,
    stored as ``id -> point``.  On Eve's move ``V`` (global index 2n):

    1. ``f`` is extended over the new ids of ``V`` with ``realize``;
    2. every point of ``prefix(n+1)`` missing from the range gets a new id;
    3. for classes with ``closure_bound > 0`` (graphs), points are added
       until every one-point extension over at most two ids is realized.

    The answer is the structure induced on ``f``'s ids.  ``embeddings``
    records every ``f`` so far.
    """

    name = "limit"

    def __init__(self, cls: StructureClass, closure: bool = True):
        if cls.limit is None:
            raise ValueError(f"{cls.name} has no limit presentation")
        self.cls = cls
        self.limit = cls.limit
        self.closure = closure and cls.closure_bound > 0

    def clear(self):
        self.f = {}
        self.embeddings = []

    def step(self, transcript):
        V = transcript.last
        n = (len(transcript) - 1) // 2
        if not set(self.f) <= V.universe:
            raise RealizeFailure("Eve's move dropped ids of Odd's move")
        f = self.limit.realize(self.f, V, search=n + 1)
        used = set(f.values())
        next_id = max(f, default=-1) + 1
        for p in self.limit.points(n + 1):
            if p not in used:
                f[next_id] = p
                used.add(p)
                next_id += 1
        if self.closure:
            self._close(f)
        self.f = f
        self.embeddings.append(dict(f))
        return self.limit.induced(f)

    def _close(self, f):
        """Add realizers until the graph is 2-e.c. over all of its vertices.

        A realizer gets the required neighbours plus a random half of the
        vertices outside the base, so the loop settles once random vertices
        cover every pattern.
        """
        ids = sorted(f)
        pos = {a: i for i, a in enumerate(ids)}
        nbr = dict.fromkeys(ids, 0)
        for a, b in itertools.combinations(ids, 2):
            if self.limit.adjacent(f[a], f[b]):
                nbr[a] |= 1 << pos[b]
                nbr[b] |= 1 << pos[a]
        while True:
            gap = _first_gap(ids, nbr, pos)
            if gap is None:
                return
            adj = set(gap.pos) | {a for a in ids if a not in gap.base and self.rng.random() < 0.5}
            new = ids[-1] + 1
            f[new] = self.limit.fresh({f[a] for a in adj}, f.values())
            pos[new] = len(ids)
            ids.append(new)
            nbr[new] = 0
            for a in adj:
                nbr[a] |= 1 << pos[new]
                nbr[new] |= 1 << pos[a]


@dataclass(frozen=True)
class _Gap:
    base: tuple
    pos: tuple  # base vertices the missing point must be adjacent to


def _first_gap(ids, nbr, pos):
    full = (1 << len(ids)) - 1
    for k in (1, 2):
        for base in itertools.combinations(ids, k):
            rest = full
            for b in base:
                rest &= ~(1 << pos[b])
            for r in range(k + 1):
                for p in itertools.combinations(base, r):
                    mask = rest
                    for b in base:
                        mask &= nbr[b] if b in p else ~nbr[b]
                    if not mask:
                        return _Gap(base, p)
    return None


def odd_markov_strategy(cls: StructureClass, closure: bool = True) -> LimitOddStrategy:
    """Odd's winning strategy for the game whose goal is the limit of ``cls``.

    It keeps the recorded embedding as state, so ``markov`` stays False.
    """
    return LimitOddStrategy(cls, closure)


# -- Eve ------------------------------------------------------------------------


@dataclass(frozen=True)
class TargetChain:
    """X_0 <= X_1 <= ... ; past the end the chain stays at its last member."""

    structures: tuple

    def __post_init__(self):
        if not self.structures:
            raise ValueError("a target chain needs at least one structure")
        for a, b in zip(self.structures, self.structures[1:]):
            if not is_substructure(a, b):
                raise ValueError("target chain is not increasing")

    def chain(self, n: int) -> FinStructure:
        return self.structures[min(n, len(self.structures) - 1)]

    def __len__(self):
        return len(self.structures)


class UniversalityEve(StatefulStrategy):
    """Eve forces a copy of every X_n into the play.

    She opens with X_0 and records e_0 = id.  Facing Odd's U, she
    amalgamates the inclusion X_{n-1} -> X_n with e_{n-1}: X_{n-1} -> U;
    the amalgam is her move and the new leg is e_n, which extends e_{n-1}.
    ``embedding`` is the latest e_n.
    """

    name = "universality"

    def __init__(self, cls: StructureClass, target: TargetChain):
        self.cls = cls
        self.target = target

    def clear(self):
        self.embeddings = []

    @property
    def embedding(self) -> Embedding:
        return self.embeddings[-1]

    def step(self, transcript):
        if not transcript.moves:
            X0 = self.target.chain(0)
            self.embeddings.append(Embedding.of(X0, X0, {x: x for x in X0.universe}))
            return X0
        n = len(self.embeddings)
        prev, cur = self.target.chain(n - 1), self.target.chain(n)
        U = transcript.last
        e_prev = Embedding.of(prev, U, self.embeddings[-1].mapping)
        incl = Embedding.of(prev, cur, {x: x for x in prev.universe})
        V, e_n, _ = self.cls.amalgamate(incl, e_prev)
        self.embeddings.append(e_n)
        return V

    def final_embedding(self, final: FinStructure) -> Embedding:
        """The latest e_n, seen as a map into ``final``."""
        e = self.embedding
        return Embedding.of(e.domain, final, e.mapping)


def eve_universality_strategy(cls: StructureClass, target: TargetChain) -> UniversalityEve:
    return UniversalityEve(cls, target)


class RandomEve(Strategy):
    """Seeded one-step growth: each move adds one or two fresh points."""

    name = "random"

    def __init__(self, cls: StructureClass, max_new: int = 2):
        self.cls = cls
        self.max_new = max_new
        self.rng = random.Random(0)

    def reset(self, seed=0):
        self.rng = random.Random(seed)

    def respond(self, transcript):
        X = transcript.last if transcript.moves else FinStructure.make(self.cls.signature, ())
        return self.cls.random_extension(X, self.rng, self.max_new)


def apply_additions(cls: StructureClass, X: FinStructure | None, line: str) -> FinStructure:
    """Extend X by a line of additions.

    Graph-like classes: ``7`` adds vertex 7, ``7-3`` adds the edge (and any
    new endpoint); an edge must touch a new vertex.  Linear orders: ``7@k``
    inserts the new point 7 at position k.  Pure sets: ``7``.  An empty line
    changes nothing.  Raises ValueError on malformed or illegal input.
    """
    X = X if X is not None else FinStructure.make(cls.signature, ())
    tokens = line.split()
    if not tokens:
        return X

    def vid(tok):
        if not tok.isdigit():
            raise ValueError(f"bad vertex id {tok!r}")
        return int(tok)

    if cls.signature == ORDER:
        chain = order_list(X)
        for tok in tokens:
            v, at, k = tok.partition("@")
            v, k = vid(v), vid(k) if at else len(chain)
            if v in chain:
                raise ValueError(f"point {v} already present")
            if k > len(chain):
                raise ValueError(f"position {k} out of range")
            chain.insert(k, v)
        Y = linear_order(chain)
    elif cls.signature == EMPTY:
        ids = [vid(t) for t in tokens]
        if any(v in X.universe for v in ids):
            raise ValueError("point already present")
        Y = pure_set(set(X.universe) | set(ids))
    else:
        old = set(X.universe)
        vs, edges = set(old), list(X.edges())
        for tok in tokens:
            a, dash, b = tok.partition("-")
            if dash:
                a, b = vid(a), vid(b)
                if a == b:
                    raise ValueError("no loops")
                if a in old and b in old:
                    raise ValueError(f"edge {a}-{b} joins two old vertices")
                vs |= {a, b}
                edges.append((a, b))
            else:
                a = vid(a)
                if a in old:
                    raise ValueError(f"vertex {a} already present")
                vs.add(a)
        Y = graph(vs, edges)
    if not cls.contains(Y):
        raise ValueError(f"the result leaves {cls.name}")
    return Y


class ScriptedEve(Strategy):
    """Applies one line of additions per turn to Odd's last move; stalls
    when the script runs out."""

    name = "script"

    def __init__(self, cls: StructureClass, lines):
        self.cls = cls
        self.lines = list(lines)

    def respond(self, transcript):
        k = len(transcript) // 2
        line = self.lines[k] if k < len(self.lines) else ""
        return apply_additions(self.cls, transcript.last if transcript.moves else None, line)
