"""Dominating maps between posets and the transfer of Odd's strategies
along them, in both directions."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

from .core import Poset, StatefulStrategy, player_at, Strategy, Transcript, WinCheck
from .errors import GameError, NoCofinalWitness, NoJoin, StrategyViolation, WitnessInvalid
from .posets import SubPoset


@dataclass(frozen=True)
class DominatingMap:
    """``phi: source -> target`` with its domination witnesses.

    ``dominate_above(q, p)`` answers the second condition: for
    ``phi(q) <= p`` it returns ``q' >= q`` with ``p <= phi(q')``.
    ``cofinal_witness(p)`` returns some ``q`` with ``p <= phi(q)``; without
    it, the first ``budget`` enumerated source elements are searched.
    """

    source: Poset
    target: Poset
    phi: Callable[[Any], Any]
    dominate_above: Callable[[Any, Any], Any]
    cofinal_witness: Callable[[Any], Any] | None = None
    budget: int = 256

    def witness_for(self, p):
        if self.cofinal_witness is not None:
            q = self.cofinal_witness(p)
            if not self.target.leq(p, self.phi(q)):
                raise WitnessInvalid(f"cofinal witness {q!r} does not cover {p!r}")
            return q
        try:
            pool = self.source.enumerate(self.budget)
        except NotImplementedError:
            pool = []
        for q in pool:
            if self.target.leq(p, self.phi(q)):
                return q
        raise NoCofinalWitness(f"nothing in the first {self.budget} source elements covers {p!r}")

    def dominate(self, q, p):
        """``dominate_above`` with its postcondition checked."""
        q2 = self.dominate_above(q, p)
        if not self.source.leq(q, q2) or not self.target.leq(p, self.phi(q2)):
            raise WitnessInvalid(f"dominate_above({q!r}, {p!r}) returned {q2!r}")
        return q2


def identity_map(poset: Poset) -> DominatingMap:
    return DominatingMap(poset, poset, lambda x: x, lambda q, p: p, lambda p: p)


@dataclass(frozen=True)
class Violation:
    kind: str  # "monotone", "D1" or "D2"
    detail: Any

    def __str__(self):
        return f"{self.kind}: {self.detail}"


def check_dominating(m: DominatingMap, samples: int = 64, seed: int = 0, pool: int = 32) -> list:
    """Random search for violations of the three conditions; empty means none found."""
    rng = random.Random(seed)
    Q, P, phi = m.source, m.target, m.phi
    qs = Q.enumerate(pool)
    ps = P.enumerate(pool)
    found = []

    def note(kind, detail):
        v = Violation(kind, detail)
        if v not in found:
            found.append(v)

    for _ in range(samples):
        q1 = rng.choice(qs)
        q2 = rng.choice([q1] + Q.above(q1, 4) + [q for q in qs if Q.leq(q1, q)])
        if not P.leq(phi(q1), phi(q2)):
            note("monotone", (q1, q2))

        p = rng.choice(ps)
        try:
            m.witness_for(p)
        except GameError as exc:
            note("D1", (p, exc.code))

        q = rng.choice(qs)
        p = rng.choice([phi(q)] + P.above(phi(q), 4))
        try:
            m.dominate(q, p)
        except GameError as exc:
            note("D2", (q, p, exc.code))
    return found


def cofinal_inclusion(P: Poset, contains: Callable, witness_above: Callable, budget: int = 256, id=None) -> DominatingMap:
    """Inclusion of a cofinal subset; ``witness_above(p)`` lies in it and above p."""
    Q = SubPoset(P, contains, id)

    def upper_bound(q, p):
        if P.leq(q, p):
            return p
        z = P.join_witness(q, p)
        if z is not None:
            return z
        for z in P.above(p, budget):
            if P.leq(q, z):
                return z
        raise NoJoin(f"no common upper bound of {q!r} and {p!r} within budget {budget}")

    def dominate_above(q, p):
        q2 = witness_above(upper_bound(q, p))
        if not contains(q2):
            raise WitnessInvalid(f"{q2!r} is outside the cofinal subset")
        return q2

    return DominatingMap(Q, P, lambda x: x, dominate_above, witness_above, budget)


def image(m: DominatingMap, transcript: Transcript) -> Transcript:
    """The phi-image of a source play, as a play in the target."""
    return Transcript(m.target, tuple(m.phi(v) for v in transcript.moves), transcript.seed)


class InducedCheck(WinCheck):
    """Evaluates a target-side check on the phi-image of a source play."""

    def __init__(self, check: WinCheck, m: DominatingMap):
        self.check = check
        self.map = m
        self.name = f"{check.name}^phi"
        self.monotone = check.monotone

    def __call__(self, transcript, budget=0):
        return self.check(image(self.map, transcript), budget)


class PulledStrategy(StatefulStrategy):
    """Odd (or Eve) on the source, driven by ``sigma`` on the target.

    Keeps the target-side play ``phi v_0, u_1, phi v_2, u_3, ...``; each
    ``u_n`` comes from ``sigma`` and is pulled back with ``dominate_above``.
    """

    name = "pulled"

    def __init__(self, m: DominatingMap, sigma: Strategy):
        self.map = m
        self.sigma = sigma

    def clear(self):
        self.target_moves = []
        self.sigma.reset(self.seed)

    def target_play(self) -> Transcript:
        return Transcript(self.map.target, tuple(self.target_moves))

    def step(self, transcript):
        m = self.map
        if not transcript.moves:
            # playing Eve: sigma opens on the target side, lift it with (D1)
            u = self.sigma.respond(self.target_play())
            self.target_moves.append(u)
            return m.witness_for(u)
        v_prev = transcript.last
        self.target_moves.append(m.phi(v_prev))
        u = self.sigma.respond(self.target_play())
        if not m.target.leq(self.target_moves[-1], u):
            raise StrategyViolation(player_at(len(self.target_moves)), len(self.target_moves), self.target_moves[-1], u)
        self.target_moves.append(u)
        return m.dominate(v_prev, u)


class PushedStrategy(StatefulStrategy):
    """Odd (or Eve) on the target, driven by ``pi`` on the source.

    Eve's target moves are lifted into the source (the first one with the
    cofinality witness, the later ones with ``dominate_above``); ``pi``
    answers there and the answer is mapped back by phi.
    """

    name = "pushed"

    def __init__(self, m: DominatingMap, pi: Strategy):
        self.map = m
        self.pi = pi

    def clear(self):
        self.source_moves = []
        self.pi.reset(self.seed)

    def source_play(self) -> Transcript:
        return Transcript(self.map.source, tuple(self.source_moves))

    def step(self, transcript):
        m = self.map
        if not transcript.moves:
            # playing Eve: pi opens on the source side
            w = self.pi.respond(self.source_play())
            self.source_moves.append(w)
            return m.phi(w)
        u = transcript.last
        if not self.source_moves:
            v = m.witness_for(u)
        else:
            v = m.dominate(self.source_moves[-1], u)
        self.source_moves.append(v)
        w = self.pi.respond(self.source_play())
        if not m.source.leq(v, w):
            raise StrategyViolation(player_at(len(self.source_moves)), len(self.source_moves), v, w)
        self.source_moves.append(w)
        return m.phi(w)


def pull_odd_strategy(m: DominatingMap, sigma: Strategy) -> PulledStrategy:
    return PulledStrategy(m, sigma)


def push_odd_strategy(m: DominatingMap, pi: Strategy) -> PushedStrategy:
    return PushedStrategy(m, pi)
