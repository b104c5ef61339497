"""Posets, plays and strategies for the Banach-Mazur game on a partial order.

A play is a finite chain ``u_0 <= u_1 <= ...`` in a poset.  Even indices
belong to Eve, odd indices to Odd.  Who wins is decided by a ``WinCheck``,
a finite-stage stand-in for membership of the generated ideal in the
winning family.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from itertools import islice
from typing import Any, Callable, Iterator, Sequence

from .errors import StrategyViolation, WitnessInvalid

EVE = "eve"
ODD = "odd"


def player_at(index: int) -> str:
    return EVE if index % 2 == 0 else ODD


class Poset:
    """An abstract partial order.

    Subclasses implement ``leq``.  The other capabilities are optional:

    * ``elements()`` -- an iterator over the poset (possibly infinite);
      ``enumerate(budget)`` takes a finite prefix of it.
    * ``join_witness(x, y)`` -- some common upper bound, or ``None``.
    * ``compat(x, y)`` -- exact compatibility.  The default relies on
      ``join_witness``, which is only sound when ``exact_joins`` is set.
    """

    id = "poset"
    exact_joins = False

    def leq(self, x, y) -> bool:
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise NotImplementedError(f"{self.id} cannot enumerate its elements")

    def enumerate(self, budget: int) -> list:
        return list(islice(self.elements(), budget))

    def join_witness(self, x, y):
        if self.leq(x, y):
            return y
        if self.leq(y, x):
            return x
        return None

    def compat(self, x, y) -> bool:
        if self.leq(x, y) or self.leq(y, x):
            return True
        if not self.exact_joins:
            raise NotImplementedError(f"{self.id} has no exact compatibility test")
        return self.join_witness(x, y) is not None

    def above(self, x, budget: int, scan: int = 4096) -> list:
        """First ``budget`` distinct elements strictly above ``x``.

        Found by joining ``x`` with the enumeration, so the order follows the
        enumeration order of the poset.
        """
        found = []
        seen = {x}
        for z in islice(self.elements(), scan):
            j = self.join_witness(x, z)
            if j is None or j in seen:
                continue
            seen.add(j)
            if self.leq(x, j):
                found.append(j)
                if len(found) >= budget:
                    break
        return found

    def encode(self, x):
        return x

    def decode(self, data):
        return data

    def __eq__(self, other):
        return type(self) is type(other) and self.id == other.id

    def __hash__(self):
        return hash((type(self).__name__, self.id))

    def __repr__(self):
        return f"<{type(self).__name__} {self.id}>"


@dataclass(frozen=True)
class Transcript:
    """The chain produced by a (partial) play.  Attribution is by parity."""

    poset: Poset
    moves: tuple = ()
    seed: int | None = None

    def __len__(self):
        return len(self.moves)

    def __getitem__(self, i):
        return self.moves[i]

    @property
    def last(self):
        return self.moves[-1]

    def player(self, index: int) -> str:
        return player_at(index)

    def moves_of(self, player: str) -> tuple:
        start = 0 if player == EVE else 1
        return self.moves[start::2]

    def prefix(self, n: int) -> "Transcript":
        return Transcript(self.poset, self.moves[:n], self.seed)

    def extend(self, move) -> "Transcript":
        return Transcript(self.poset, self.moves + (move,), self.seed)

    def ideal(self) -> "IdealRep":
        return IdealRep(self.poset, self.moves)

    def is_chain(self) -> bool:
        leq = self.poset.leq
        return all(leq(a, b) for a, b in zip(self.moves, self.moves[1:]))

    def to_json(self) -> dict:
        return {
            "poset_id": self.poset.id,
            "seed": self.seed,
            "moves": [self.poset.encode(m) for m in self.moves],
            "length": len(self.moves),
        }

    @classmethod
    def from_json(cls, data: dict, poset: Poset) -> "Transcript":
        if data.get("poset_id") not in (None, poset.id):
            raise ValueError(f"transcript was played on {data['poset_id']!r}, not {poset.id!r}")
        moves = tuple(poset.decode(m) for m in data["moves"])
        if "length" in data and data["length"] != len(moves):
            raise ValueError("transcript length field does not match its moves")
        return cls(poset, moves, data.get("seed"))


@dataclass(frozen=True)
class IdealRep:
    """Ideal generated by an increasing chain of generators."""

    poset: Poset
    generators: tuple

    def __contains__(self, x):
        return ideal_membership(self, x)


def ideal_membership(ideal: IdealRep, x) -> bool:
    if not ideal.generators:
        raise ValueError("the ideal has no generators")
    return any(ideal.poset.leq(x, a) for a in ideal.generators)


# -- winning conditions ------------------------------------------------------


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def exit_code(self) -> int:
        return {Status.PASS: 0, Status.FAIL: 1, Status.UNDECIDED: 2}[self.status]

    def __str__(self):
        if self.witness is None:
            return self.status.value
        return f"{self.status.value} ({self.witness})"


PASS = Verdict(Status.PASS)
UNDECIDED = Verdict(Status.UNDECIDED)


def fail(witness=None) -> Verdict:
    return Verdict(Status.FAIL, witness)


class WinCheck:
    """Finite-stage approximation of "the ideal of the play lies in W".

    ``monotone`` means a PASS survives any enlargement of the ideal, i.e.
    the approximated family is a final segment.
    """

    name = "check"
    monotone = False

    def __call__(self, transcript: Transcript, budget: int = 0) -> Verdict:
        raise NotImplementedError


class AlwaysPass(WinCheck):
    name = "always"
    monotone = True

    def __call__(self, transcript, budget=0):
        return PASS


class PredicateCheck(WinCheck):
    """PASS when ``predicate(transcript)`` holds, else UNDECIDED or FAIL."""

    def __init__(self, predicate, name="predicate", monotone=False, on_false=Status.UNDECIDED):
        self.predicate = predicate
        self.name = name
        self.monotone = monotone
        self.on_false = on_false

    def __call__(self, transcript, budget=0):
        if self.predicate(transcript):
            return PASS
        return Verdict(self.on_false, self.name)


def evaluate(check: WinCheck, transcript: Transcript, budget: int = 0) -> Verdict:
    return check(transcript, budget)


# -- cofinal families and the generic strategy ------------------------------


@dataclass(frozen=True)
class CofinalSet:
    name: str
    contains: Callable[[Any], bool]
    witness_above: Callable[[Any], Any]


@dataclass(frozen=True)
class CofinalFamily:
    sets: tuple = ()

    def __len__(self):
        return len(self.sets)

    def __getitem__(self, n):
        return self.sets[n]


class GenericCheck(WinCheck):
    """PASS once the ideal of the play meets every set of the family.

    A set counts as met if a generator belongs to it, or if some element of
    the first ``budget`` enumerated elements lies below the last move and
    belongs to it.  Unmet sets give UNDECIDED: a longer play may meet them.
    """

    monotone = True

    def __init__(self, family: CofinalFamily, name="generic"):
        self.family = family
        self.name = name

    def unmet(self, transcript: Transcript, budget: int = 0) -> list:
        poset = transcript.poset
        pool = None
        missing = []
        for n, d in enumerate(self.family.sets):
            if any(d.contains(g) for g in transcript.moves):
                continue
            if budget and transcript.moves:
                if pool is None:
                    pool = [x for x in poset.enumerate(budget) if poset.leq(x, transcript.last)]
                if any(d.contains(x) for x in pool):
                    continue
            missing.append(n)
        return missing

    def __call__(self, transcript, budget=0):
        if not transcript.moves:
            return UNDECIDED if len(self.family) else PASS
        missing = self.unmet(transcript, budget)
        if missing:
            return Verdict(Status.UNDECIDED, {"unmet": missing})
        return PASS


# -- strategies --------------------------------------------------------------


class Strategy:
    """Maps a transcript to the next move.

    ``markov`` strategies look only at the last move and the length of the
    transcript.  An empty transcript asks for Eve's opening move.
    """

    markov = False
    name = "strategy"

    def reset(self, seed: int = 0) -> None:
        pass

    def respond(self, transcript: Transcript):
        raise NotImplementedError


class MarkovStrategy(Strategy):
    """Wraps ``fn(last, n)``; ``last`` is None for the opening move."""

    markov = True

    def __init__(self, fn, name="markov"):
        self.fn = fn
        self.name = name

    def respond(self, transcript):
        last = transcript.moves[-1] if transcript.moves else None
        return self.fn(last, len(transcript))


class ConstantStrategy(Strategy):
    """Opens with a fixed element, then echoes."""

    markov = True
    name = "constant"

    def __init__(self, element):
        self.element = element

    def respond(self, transcript):
        return transcript.last if transcript.moves else self.element


class EchoStrategy(Strategy):
    """Stalls: answers with the last move.  Needs an opening to play Eve."""

    markov = True
    name = "echo"

    def __init__(self, opening=None):
        self.opening = opening

    def respond(self, transcript):
        if transcript.moves:
            return transcript.last
        if self.opening is None:
            raise ValueError("echo strategy has no opening move")
        return self.opening


class RandomStrategy(Strategy):
    """Uniform choice among the last move and a few elements above it.

    The opening is drawn from the first ``budget`` enumerated elements.
    """

    name = "random"

    def __init__(self, budget: int = 6, stall: bool = True):
        self.budget = budget
        self.stall = stall
        self.rng = random.Random(0)

    def reset(self, seed=0):
        self.rng = random.Random(seed)

    def respond(self, transcript):
        poset = transcript.poset
        if not transcript.moves:
            return self.rng.choice(poset.enumerate(self.budget))
        options = poset.above(transcript.last, self.budget)
        if self.stall or not options:
            options = [transcript.last] + options
        return self.rng.choice(options)


class StatefulStrategy(Strategy):
    """Base for strategies carrying state across the moves of one play.

    Subclasses implement ``clear()`` and ``step(transcript)``.  When asked
    about a transcript that does not extend the one seen last, the state is
    rebuilt by replaying the strategy's own earlier turns.
    """

    def reset(self, seed=0):
        self.seed = seed
        self.rng = random.Random(seed)
        self._seen = ()
        self.clear()

    def clear(self):
        pass

    def step(self, transcript: Transcript):
        raise NotImplementedError

    def respond(self, transcript):
        if not hasattr(self, "_seen"):
            self.reset()
        moves = transcript.moves
        n = len(self._seen)
        if len(moves) < n or moves[:n] != self._seen:
            self.reset(self.seed)
            for k in range(len(moves) % 2, len(moves), 2):
                self.step(transcript.prefix(k))
        move = self.step(transcript)
        self._seen = moves + (move,)
        return move


class GenericOddStrategy(Strategy):
    """Odd's n-th move lands in the n-th cofinal set above Eve's last move."""

    markov = True
    name = "generic"

    def __init__(self, family: CofinalFamily):
        self.family = family

    def respond(self, transcript):
        p = transcript.last
        n = len(transcript) // 2
        if n >= len(self.family):
            return p
        d = self.family[n].witness_above(p)
        if not transcript.poset.leq(p, d):
            raise WitnessInvalid(f"{self.family[n].name}: {d!r} is not above {p!r}")
        return d


def generic_odd_strategy(family: CofinalFamily) -> GenericOddStrategy:
    return GenericOddStrategy(family)


def _sub_seeds(seed: int) -> tuple[int, int]:
    rng = random.Random(seed)
    return rng.getrandbits(32), rng.getrandbits(32)


def run_play(poset: Poset, eve: Strategy, odd: Strategy, rounds: int, seed: int = 0) -> Transcript:
    """Play ``rounds`` moves, Eve first, and return the transcript."""
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    eve_seed, odd_seed = _sub_seeds(seed)
    eve.reset(eve_seed)
    odd.reset(odd_seed)
    transcript = Transcript(poset, (), seed)
    for i in range(rounds):
        player = eve if i % 2 == 0 else odd
        move = player.respond(transcript)
        if i and not poset.leq(transcript.last, move):
            raise StrategyViolation(player_at(i), i, transcript.last, move)
        transcript = transcript.extend(move)
    return transcript


def markov_consistent(strategy: Strategy, t1: Transcript, t2: Transcript) -> bool:
    """Whether a Markov strategy gives equal answers on equal (last, length)."""
    if len(t1) != len(t2) or (t1.moves and t1.last != t2.last):
        raise ValueError("transcripts differ in length or last move")
    strategy.reset(0)
    a = strategy.respond(t1)
    strategy.reset(0)
    b = strategy.respond(t2)
    return a == b


def chain_ok(poset: Poset, moves: Sequence) -> bool:
    return all(poset.leq(a, b) for a, b in zip(moves, moves[1:]))
