"""One-point extension property of a finite structure, and the win checks
built on it."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import PASS, Status, Verdict, WinCheck, fail
from ..structures import GRAPH, FinStructure, find_embedding
from .classes import Graphs, StructureClass

NEW = "*"


@dataclass(frozen=True)
class ExtensionFailure:
    """No vertex outside ``base`` realizes ``pattern`` over it.

    ``pattern`` lists the relation tuples through the new point, written
    with ``"*"`` for that point.
    """

    base: tuple
    pattern: frozenset

    def describe(self) -> str:
        facts = sorted(f"{name}{t}" for name, t in self.pattern)
        return f"over {list(self.base)}: {{{', '.join(facts)}}}"

    def neighbors(self) -> list:
        """For graphs: the base vertices the missing point should be adjacent to."""
        return sorted({t[1] for name, t in self.pattern if t[0] == NEW})


def _key(M: FinStructure, base: tuple, m) -> frozenset:
    """Relation tuples of M on base + m that mention m, with m renamed."""
    pts = set(base) | {m}
    out = set()
    for name, tab in zip(M.signature.names, M.tables):
        for t in tab:
            if m in t and all(x in pts for x in t):
                out.add((name, tuple(NEW if x == m else x for x in t)))
    return frozenset(out)


def _generic_failures(cls, M, restrict, bound, limit):
    failures = []
    pool = sorted(restrict)
    for k in range(1, bound + 1):
        for base in itertools.combinations(pool, k):
            A = FinStructure(
                M.signature,
                frozenset(base),
                tuple(frozenset(t for t in tab if all(x in base for x in t)) for tab in M.tables),
            )
            realized = {_key(M, base, m) for m in M.universe if m not in base}
            for B in cls.one_point_extensions(A, NEW):
                need = _key(B, base, NEW)
                if need not in realized:
                    failures.append(ExtensionFailure(base, need))
                    if len(failures) >= limit:
                        return failures
    return failures


def _graph_failures(M, restrict, bound, limit):
    vs = M.vertices
    bit = {v: 1 << i for i, v in enumerate(vs)}
    nbr = {v: sum(bit[u] for u in M.neighbors(v)) for v in vs}
    full = (1 << len(vs)) - 1
    failures = []
    pool = sorted(restrict)
    for k in range(1, bound + 1):
        for base in itertools.combinations(pool, k):
            rest = full & ~sum(bit[b] for b in base)
            for r in range(k + 1):
                for pos in itertools.combinations(base, r):
                    mask = rest
                    for b in base:
                        mask &= nbr[b] if b in pos else ~nbr[b]
                    if not mask:
                        pattern = frozenset(("E", t) for b in pos for t in ((NEW, b), (b, NEW)))
                        failures.append(ExtensionFailure(base, pattern))
                        if len(failures) >= limit:
                            return failures
    return failures


def extension_failures(cls: StructureClass, M: FinStructure, bound: int, restrict=None, limit: int = 1 << 30) -> list:
    """Every (base, one-point extension) left unrealized in M.

    Bases range over the non-empty subsets of ``restrict`` (default: all of
    M) with at most ``bound`` points, so bound 0 passes vacuously.
    """
    restrict = M.universe if restrict is None else frozenset(restrict) & M.universe
    if M.signature == GRAPH and type(cls) is Graphs:
        return _graph_failures(M, restrict, bound, limit)
    return _generic_failures(cls, M, restrict, bound, limit)


def extension_property_check(cls: StructureClass, M: FinStructure, bound: int, restrict=None) -> Verdict:
    """PASS when every one-point extension of every small base is realized,
    FAIL with the list of missing extensions otherwise."""
    failures = extension_failures(cls, M, bound, restrict)
    return fail(failures) if failures else PASS


class ExtensionCheck(WinCheck):
    """Extension property of the last move, at a fixed bound.

    Not monotone: new points bring new bases that may be unrealized.
    """

    monotone = False

    def __init__(self, cls: StructureClass, bound: int):
        self.cls = cls
        self.bound = bound
        self.name = f"extension:{bound}"

    def __call__(self, transcript, budget=0):
        if not transcript.moves:
            return Verdict(Status.UNDECIDED)
        return extension_property_check(self.cls, transcript.last, self.bound)


class LimitCheck(WinCheck):
    """Finite stand-in for "the union is the limit".

    After k Odd moves the last structure must contain prefix(k) and realize
    every one-point extension over bases of at most ``min(k, closure_bound)``
    points taken from the structure present after k moves.
    """

    monotone = False

    def __init__(self, cls: StructureClass):
        if cls.limit is None:
            raise ValueError(f"{cls.name} has no limit presentation")
        self.cls = cls
        self.name = "limit"

    def __call__(self, transcript, budget=0):
        k = len(transcript) // 2
        if k == 0:
            return Verdict(Status.UNDECIDED)
        M = transcript.last
        if find_embedding(self.cls.limit.prefix(k), M) is None:
            return fail({"missing_prefix": k})
        restrict = transcript.moves[k - 1].universe
        return extension_property_check(self.cls, M, min(k, self.cls.closure_bound), restrict)


class MembershipCheck(WinCheck):
    """Every move stays in the class."""

    monotone = False

    def __init__(self, cls: StructureClass):
        self.cls = cls
        self.name = "member"

    def __call__(self, transcript, budget=0):
        for i, X in enumerate(transcript.moves):
            if not self.cls.contains(X):
                return fail({"index": i})
        return PASS
