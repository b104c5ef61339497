"""Explicit presentations of countable limits as increasing chains of
finite prefixes, together with one-point realizers.

Random graph
    The BIT graph on the naturals: for i < j, i ~ j iff bit i of j is 1.
    Under the Ackermann coding a natural j is the hereditarily finite set of
    its set bits, and adjacency becomes ``u in v or v in u``.  Points are
    stored in that set form so that new realizers never need a numeric code
    (numeric codes of realizers grow like towers of exponentials).

Dense linear order
    The dyadic rationals of (0, 1), enumerated 1/2, 1/4, 3/4, 1/8, ...

Pure set
    The naturals with no structure.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from ..errors import RealizeFailure
from ..structures import EMPTY, GRAPH, ORDER, FinStructure, linear_order


def rado_witness(pos: Iterable[int], neg: Iterable[int], floor: int) -> int:
    """A natural j above ``floor`` and above every given vertex whose bits
    are 1 on ``pos`` and 0 on ``neg``, so that in the BIT graph j is adjacent
    to all of pos and to none of neg."""
    pos, neg = set(pos), set(neg)
    if pos & neg:
        raise ValueError("pos and neg must be disjoint")
    top = max(floor, max(pos | neg, default=-1) + 1)
    return sum(1 << p for p in pos) + (1 << top)


def bit_adjacent(i: int, j: int) -> bool:
    if i == j:
        return False
    if i > j:
        i, j = j, i
    return (j >> i) & 1 == 1


@lru_cache(maxsize=None)
def ackermann(n: int) -> frozenset:
    """The hereditarily finite set coded by n."""
    return frozenset(ackermann(i) for i in range(n.bit_length()) if (n >> i) & 1)


def ackermann_code(s: frozenset) -> int:
    return sum(1 << ackermann_code(x) for x in s)


def hf_rank(s: frozenset) -> int:
    return 1 + max((hf_rank(x) for x in s), default=-1)


class LimitPresentation:
    """Countable limit U written as the union of prefixes U_0 <= U_1 <= ...

    Points of U are hashable objects; ``point(i)`` is the i-th one and
    ``prefix(n)`` the structure induced on the first n points, with vertex
    ids 0..n-1.
    """

    signature = EMPTY

    def point(self, i: int):
        raise NotImplementedError

    def points(self, n: int) -> list:
        return [self.point(i) for i in range(n)]

    def induced(self, mapping: Mapping) -> FinStructure:
        """Structure on ``mapping``'s keys copied from U through ``mapping``."""
        raise NotImplementedError

    def prefix(self, n: int) -> FinStructure:
        return self.induced({i: self.point(i) for i in range(n)})

    def realize_point(self, f: Mapping, B: FinStructure, v, search: int = 0):
        """A point outside f's range extending f to ``v`` inside U.

        ``f`` embeds B minus v; the first ``search`` prefix points are tried
        before a fresh point is made.
        """
        raise NotImplementedError

    def realize(self, f: Mapping, B: FinStructure, search: int = 0) -> dict:
        """Extend f to all of B, one new vertex at a time in id order."""
        g = dict(f)
        for v in B.vertices:
            if v not in g:
                g[v] = self.realize_point(g, B, v, search)
        if self.induced(g) != B:
            raise RealizeFailure("realized map is not an embedding")
        return g


class RandomGraphLimit(LimitPresentation):
    signature = GRAPH

    def point(self, i):
        return ackermann(i)

    @staticmethod
    def adjacent(p, q) -> bool:
        return p != q and (p in q or q in p)

    def induced(self, mapping):
        items = sorted(mapping.items())
        edges = set()
        for (a, p), (b, q) in itertools.combinations(items, 2):
            if self.adjacent(p, q):
                edges.add((a, b))
                edges.add((b, a))
        return FinStructure.make(GRAPH, mapping.keys(), {"E": edges})

    def fresh(self, pos: Iterable, range_: Iterable) -> frozenset:
        """A point adjacent to exactly ``pos`` among the points of ``range_``.

        The extra element ``frozenset(range_)`` has higher rank than every
        point of the range, so the new point is not a member of any of them
        and is not one of them.
        """
        return frozenset(pos) | {frozenset(range_)}

    def realize_point(self, f, B, v, search=0):
        nbrs = B.neighbors(v)
        pos = {f[u] for u in f if u in nbrs}
        neg = {f[u] for u in f if u not in nbrs}
        used = set(f.values())
        for i in range(search):
            p = self.point(i)
            if p in used:
                continue
            if all(self.adjacent(p, q) for q in pos) and not any(self.adjacent(p, q) for q in neg):
                return p
        return self.fresh(pos, used)


def dyadic(i: int) -> Fraction:
    k = (i + 1).bit_length() - 1
    j = i + 1 - (1 << k)
    return Fraction(2 * j + 1, 1 << (k + 1))


def simplest_dyadic(lo: Fraction, hi: Fraction) -> Fraction:
    """The dyadic rational of least denominator strictly between lo and hi."""
    d = 1
    while True:
        d *= 2
        k = (lo * d).__floor__() + 1
        if Fraction(k, d) < hi:
            return Fraction(k, d)


class DenseOrderLimit(LimitPresentation):
    signature = ORDER

    def point(self, i):
        return dyadic(i)

    def induced(self, mapping):
        return linear_order(sorted(mapping, key=lambda k: mapping[k]))

    def realize_point(self, f, B, v, search=0):
        less = B.table("<")
        below = [f[u] for u in f if (u, v) in less]
        above = [f[u] for u in f if (v, u) in less]
        lo = max(below, default=Fraction(0))
        hi = min(above, default=Fraction(1))
        if not lo < hi:
            raise RealizeFailure(f"empty cut ({lo}, {hi})")
        return simplest_dyadic(lo, hi)


class PureSetLimit(LimitPresentation):
    signature = EMPTY

    def point(self, i):
        return i

    def induced(self, mapping):
        return FinStructure.make(EMPTY, mapping.keys())

    def realize_point(self, f, B, v, search=0):
        used = set(f.values())
        return next(i for i in itertools.count() if i not in used)
