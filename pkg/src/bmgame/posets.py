"""Concrete posets used in the examples, tests and the CLI."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Iterator

from .core import (
    CofinalFamily,
    CofinalSet,
    MarkovStrategy,
    Poset,
)


def primes() -> Iterator[int]:
    found = []
    for n in itertools.count(2):
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n


def nth_prime(n: int) -> int:
    """0-based: nth_prime(0) == 2."""
    return next(itertools.islice(primes(), n, None))


class OnePoint(Poset):
    id = "one_point"
    exact_joins = True

    def __init__(self, point="a"):
        self.point = point

    def leq(self, x, y):
        return x == y == self.point

    def elements(self):
        yield self.point


class Divisibility(Poset):
    """Positive integers ordered by divisibility; the join is the lcm."""

    id = "divisibility"
    exact_joins = True

    def leq(self, x, y):
        return y % x == 0

    def elements(self):
        return itertools.count(1)

    def join_witness(self, x, y):
        return math.lcm(x, y)

    def compat(self, x, y):
        return True

    def above(self, x, budget, scan=4096):
        return [x * k for k in range(2, budget + 2)]


class WordPoset(Poset):
    """Finite words over an alphabet, ordered by prefix extension."""

    exact_joins = True

    def __init__(self, alphabet="01", id=None):
        self.alphabet = alphabet
        self.id = id or ("binary_strings" if alphabet == "01" else f"words:{alphabet}")

    def leq(self, x, y):
        return y.startswith(x)

    def elements(self):
        for n in itertools.count():
            for letters in itertools.product(self.alphabet, repeat=n):
                yield "".join(letters)

    def join_witness(self, x, y):
        if y.startswith(x):
            return y
        if x.startswith(y):
            return x
        return None

    def compat(self, x, y):
        return x.startswith(y) or y.startswith(x)

    def above(self, x, budget, scan=4096):
        out = []
        for n in itertools.count(1):
            for letters in itertools.product(self.alphabet, repeat=n):
                out.append(x + "".join(letters))
                if len(out) >= budget:
                    return out


def BinaryStrings():
    return WordPoset("01")


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


class Intervals(Poset):
    """Nonempty open subintervals (a, b) of (0, 1) with rational endpoints.

    Smaller intervals are larger in the order (reverse inclusion), as for
    nonempty open sets in the classical game.
    """

    id = "intervals"
    exact_joins = True

    def leq(self, x, y):
        return x[0] <= y[0] and y[1] <= x[1]

    def elements(self):
        seen = set()
        for d in itertools.count(1):
            for i in range(d):
                for j in range(i + 1, d + 1):
                    iv = (Fraction(i, d), Fraction(j, d))
                    if iv not in seen:
                        seen.add(iv)
                        yield iv

    def join_witness(self, x, y):
        a, b = max(x[0], y[0]), min(x[1], y[1])
        return (a, b) if a < b else None

    def compat(self, x, y):
        return max(x[0], y[0]) < min(x[1], y[1])

    def above(self, x, budget, scan=4096):
        a, b = x
        out = []
        seen = {x}
        for d in itertools.count(2):
            for i in range(d):
                for j in range(i + 1, d + 1):
                    iv = (a + (b - a) * Fraction(i, d), a + (b - a) * Fraction(j, d))
                    if iv not in seen:
                        seen.add(iv)
                        out.append(iv)
                        if len(out) >= budget:
                            return out

    def encode(self, x):
        return [str(x[0]), str(x[1])]

    def decode(self, data):
        return (Fraction(data[0]), Fraction(data[1]))


def is_dyadic_interval(iv) -> bool:
    return _is_dyadic(iv[0]) and _is_dyadic(iv[1])


def dyadic_inside(iv):
    """A dyadic interval (k/2^n, (k+1)/2^n) contained in ``iv``."""
    a, b = iv
    n = 1
    while Fraction(1, 2 ** n) * 2 >= b - a:
        n += 1
    k = math.floor(a * 2 ** n) + 1
    return (Fraction(k, 2 ** n), Fraction(k + 1, 2 ** n))


class PartialFunctions(Poset):
    """Finite partial functions from the naturals to {0, 1}, ordered by extension.

    Elements are sorted tuples of ``(argument, value)`` pairs.
    """

    id = "partial_functions"
    exact_joins = True

    def leq(self, x, y):
        return set(x) <= set(y)

    def elements(self):
        yield ()
        for n in itertools.count(1):
            # partial functions whose largest argument is n - 1
            for vals in itertools.product((None, 0, 1), repeat=n - 1):
                for last in (0, 1):
                    yield tuple((i, v) for i, v in enumerate(vals) if v is not None) + ((n - 1, last),)

    def above(self, x, budget, scan=4096):
        """Extensions of x on its free arguments, in enumeration order: the
        n-th enumerated function is moved onto the n-th free argument."""
        used = {i for i, _ in x}
        free = [i for i in range(len(used) + budget + 1) if i not in used]
        out = []
        for g in itertools.islice(self.elements(), 1, budget + 1):
            while len(free) <= g[-1][0]:
                free.append(next(i for i in itertools.count(free[-1] + 1) if i not in used))
            out.append(tuple(sorted(x + tuple((free[i], v) for i, v in g))))
        return out

    def compat(self, x, y):
        dx = dict(x)
        return all(dx.get(i, v) == v for i, v in y)

    def join_witness(self, x, y):
        if not self.compat(x, y):
            return None
        return tuple(sorted(set(x) | set(y)))

    def encode(self, x):
        return [list(p) for p in x]

    def decode(self, data):
        return tuple(sorted(tuple(p) for p in data))


class SubPoset(Poset):
    """A subset of another poset with the inherited order."""

    def __init__(self, parent: Poset, contains: Callable, id=None):
        self.parent = parent
        self.contains = contains
        self.id = id or f"sub:{parent.id}"
        self.exact_joins = False

    def leq(self, x, y):
        return self.parent.leq(x, y)

    def elements(self):
        return (x for x in self.parent.elements() if self.contains(x))

    def join_witness(self, x, y):
        z = self.parent.join_witness(x, y)
        return z if z is not None and self.contains(z) else None

    def compat(self, x, y):
        return self.parent.compat(x, y)

    def above(self, x, budget, scan=4096):
        out = []
        for z in self.parent.above(x, budget * 8, scan):
            if self.contains(z):
                out.append(z)
                if len(out) >= budget:
                    break
        return out

    def encode(self, x):
        return self.parent.encode(x)

    def decode(self, data):
        return self.parent.decode(data)


# -- standard cofinal families ----------------------------------------------


def prime_multiples_family(m: int) -> CofinalFamily:
    """D_n = multiples of the (n+1)-th prime, witness p * prime."""
    sets = []
    for n, q in zip(range(m), primes()):
        sets.append(CofinalSet(f"multiples of {q}", lambda x, q=q: x % q == 0, lambda p, q=q: p * q))
    return CofinalFamily(tuple(sets))


def long_strings_family(m: int) -> CofinalFamily:
    """D_n = words of length at least n + 1, witness pads with zeros."""
    sets = []
    for n in range(m):
        k = n + 1
        sets.append(
            CofinalSet(
                f"length >= {k}",
                lambda x, k=k: len(x) >= k,
                lambda p, k=k: p + "0" * max(1, k - len(p)),
            )
        )
    return CofinalFamily(tuple(sets))


def substring_family(m: int) -> CofinalFamily:
    """D_n = words containing the binary code of n."""
    sets = []
    for n in range(m):
        code = format(n, "b")
        sets.append(CofinalSet(f"contains {code}", lambda x, c=code: c in x, lambda p, c=code: p + c))
    return CofinalFamily(tuple(sets))


def rationals() -> Iterator[Fraction]:
    """The rationals of [0, 1], each once, by increasing denominator."""
    seen = set()
    for d in itertools.count(1):
        for k in range(d + 1):
            q = Fraction(k, d)
            if q not in seen:
                seen.add(q)
                yield q


def _avoid(iv, q, width):
    """Subinterval of ``iv`` of width at most ``width`` whose closure misses q."""
    a, b = iv
    third = (b - a) / 3
    if q <= a + third:
        a, b = a + 2 * third, b
    else:
        a, b = a, a + third
    while b - a > width:
        b = a + (b - a) / 2
    return (a, b)


def avoiding_family(m: int) -> CofinalFamily:
    """D_n = intervals of width <= 2^-n whose closure misses the n-th rational.

    Meeting all of them forces the nested intervals away from the first m
    rationals, the finite shadow of "the intersection is irrational".
    """
    sets = []
    for n, q in zip(range(m), rationals()):
        w = Fraction(1, 2 ** n)
        sets.append(
            CofinalSet(
                f"width <= 1/{2 ** n}, avoids {q}",
                lambda iv, q=q, w=w: iv[1] - iv[0] <= w and not (iv[0] <= q <= iv[1]),
                lambda iv, q=q, w=w: _avoid(iv, q, w),
            )
        )
    return CofinalFamily(tuple(sets))


def restrict_family(family: CofinalFamily, contains: Callable, inside: Callable) -> CofinalFamily:
    """Intersect every set with a cofinal subset; ``inside(p)`` moves p into it."""
    return CofinalFamily(
        tuple(
            CofinalSet(
                f"{d.name} (restricted)",
                lambda x, d=d: contains(x) and d.contains(x),
                lambda p, d=d: inside(d.witness_above(p)),
            )
            for d in family.sets
        )
    )


# -- simple named strategies ---------------------------------------------------


def doubling_eve(start=1):
    return MarkovStrategy(lambda last, n: start if last is None else 2 * last, name="double")


def append_strategy(suffix="1"):
    return MarkovStrategy(lambda last, n: (last or "") + suffix, name=f"append{suffix}")


def smallest_missing_prime(x: int) -> int:
    for q in primes():
        if x % q:
            return q


def multiply_missing_prime():
    """Multiplies by the first prime not yet dividing the last move."""
    return MarkovStrategy(lambda last, n: last * smallest_missing_prime(last), name="missing_prime")


def left_third():
    return MarkovStrategy(
        lambda last, n: (last[0], last[0] + (last[1] - last[0]) / 3), name="left_third"
    )


def extend_next_argument(value=1):
    """Partial functions: assigns ``value`` to the least unassigned argument."""

    def fn(last, n):
        dom = {i for i, _ in last}
        k = next(i for i in itertools.count() if i not in dom)
        return tuple(sorted(last + ((k, value),)))

    return MarkovStrategy(fn, name=f"next_arg{value}")


def cohen_family(m: int) -> CofinalFamily:
    """D_n = partial functions defined at n."""
    return CofinalFamily(
        tuple(
            CofinalSet(
                f"defined at {n}",
                lambda x, n=n: any(i == n for i, _ in x),
                lambda p, n=n: p if any(i == n for i, _ in p) else tuple(sorted(p + ((n, 1),))),
            )
            for n in range(m)
        )
    )


POSETS = {
    "one_point": OnePoint,
    "divisibility": Divisibility,
    "binary_strings": BinaryStrings,
    "intervals": Intervals,
    "partial_functions": PartialFunctions,
}

FAMILIES = {
    "divisibility": prime_multiples_family,
    "binary_strings": long_strings_family,
    "intervals": avoiding_family,
    "partial_functions": cohen_family,
}


def get_poset(name: str) -> Poset:
    try:
        return POSETS[name]()
    except KeyError:
        raise KeyError(f"unknown poset {name!r}; choose from {sorted(POSETS)}") from None
