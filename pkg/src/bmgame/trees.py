"""Metric trees of poset elements, their branch spaces, and the two
conversions between Odd strategies and trees of antichains."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import Poset, StatefulStrategy, Strategy, Transcript
from .errors import EmptyLevel, NoCompatibleChild, NotABranch, StrategyViolation


@dataclass(eq=False)
class Node:
    element: Any
    level: int
    parent: "Node | None" = None
    children: list = field(default_factory=list)
    # the partial play whose last (Odd) move is this node
    play: tuple = ()

    def path(self) -> list:
        out, node = [], self
        while node is not None:
            out.append(node)
            node = node.parent
        return out[::-1]

    def __repr__(self):
        return f"Node({self.element!r}, level={self.level})"


class MetricTree:
    """A finite-depth tree whose level ``n`` is the list ``levels[n]``.

    Level 0 may hold several roots; the tree is then forest-shaped, exactly
    like a tree whose first level is a maximal antichain.
    """

    def __init__(self, poset: Poset, levels=None):
        self.poset = poset
        self.levels = levels or []

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def roots(self) -> list:
        return self.levels[0] if self.levels else []

    def nodes(self):
        for level in self.levels:
            yield from level

    def __len__(self):
        return sum(len(level) for level in self.levels)

    def add(self, element, parent: Node | None = None, play=()) -> Node:
        level = 0 if parent is None else parent.level + 1
        node = Node(element, level, parent, [], play)
        while len(self.levels) <= level:
            self.levels.append([])
        self.levels[level].append(node)
        if parent is not None:
            parent.children.append(node)
        return node

    @classmethod
    def from_nested(cls, poset, nested) -> "MetricTree":
        """Build from ``[(element, [children...]), ...]`` for the roots."""
        tree = cls(poset)

        def grow(items, parent):
            for element, kids in items:
                grow(kids, tree.add(element, parent))

        grow(nested, None)
        return tree

    def to_dot(self, name="T") -> str:
        ids = {id(n): f"n{i}" for i, n in enumerate(self.nodes())}
        lines = [f"digraph {name} {{"]
        for level in self.levels:
            ranks = " ".join(ids[id(n)] for n in level)
            lines.append(f"  {{ rank=same; {ranks} }}")
        for n in self.nodes():
            label = str(self.poset.encode(n.element)).replace('"', "'")
            lines.append(f'  {ids[id(n)]} [label="{label}"];')
        for n in self.nodes():
            for c in n.children:
                lines.append(f"  {ids[id(n)]} -> {ids[id(c)]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def complete_tree(branching: int, depth: int, roots: int | None = None) -> MetricTree:
    """Complete tree of words: ``roots`` roots, then ``branching`` children each.

    ``roots`` defaults to ``branching``, giving ``branching ** depth`` branches.
    """
    from .posets import WordPoset

    alphabet = "0123456789"[: max(branching, roots or branching)]
    tree = MetricTree(WordPoset(alphabet))
    if depth == 0:
        return tree
    if roots == 1:
        frontier = [tree.add("")]
    else:
        frontier = [tree.add(a) for a in alphabet[: roots or branching]]
    for _ in range(depth - 1):
        frontier = [tree.add(n.element + a, n) for n in frontier for a in alphabet[:branching]]
    return tree


def branches(tree: MetricTree) -> list:
    out = []

    def walk(node, prefix):
        prefix = prefix + (node,)
        if not node.children:
            out.append(prefix)
        for c in node.children:
            walk(c, prefix)

    for r in tree.roots:
        walk(r, ())
    return out


def _check_branch(tree, X):
    if not X or X[0].parent is not None or X[0] not in tree.roots or X[-1].children:
        raise NotABranch(f"{X!r} is not a root-to-leaf chain")
    for a, b in zip(X, X[1:]):
        if b.parent is not a:
            raise NotABranch(f"{b!r} is not a child of {a!r}")


def branch_distance(tree: MetricTree, X, Y) -> Fraction:
    """0 for equal branches, 1/(n+1) when level n is the deepest shared one,
    and 2 when the branches share no node."""
    _check_branch(tree, X)
    _check_branch(tree, Y)
    # shared nodes form a common prefix
    n = 0
    for a, b in zip(X, Y):
        if a is not b:
            break
        n += 1
    if n == len(X) == len(Y):
        return Fraction(0)
    return Fraction(2) if n == 0 else Fraction(1, n)


# -- strategy -> tree ------------------------------------------------------------


def _odd_reply(poset, odd: Strategy, play: tuple):
    move = odd.respond(Transcript(poset, play))
    if not poset.leq(play[-1], move):
        raise StrategyViolation("odd", len(play), play[-1], move)
    return move


def _greedy_pairs(poset, pairs):
    kept = []
    for pair in pairs:
        if all(not poset.compat(pair[1], k[1]) for k in kept):
            kept.append(pair)
    return kept


def strategy_to_antichain_tree(poset: Poset, odd: Strategy, depth: int, budget: int, seed: int = 0) -> MetricTree:
    """Tree of Odd's replies, one antichain per level.

    Level 0 holds a greedy antichain of Odd's replies to Eve's first
    ``budget`` enumerated openings.  Above a node ``a`` Eve tries the first
    ``budget`` elements strictly above ``a``; Odd's replies to these partial
    plays are thinned to a greedy antichain, the children of ``a``.
    """
    tree = MetricTree(poset)
    if depth <= 0:
        return tree
    odd.reset(seed)
    openings = poset.enumerate(budget)
    if not openings:
        raise EmptyLevel("the poset has no elements to open with")
    pairs = [(e, _odd_reply(poset, odd, (e,))) for e in openings]
    for e, r in _greedy_pairs(poset, pairs):
        tree.add(r, None, (e, r))
    for _ in range(depth - 1):
        for a in list(tree.levels[-1]):
            conts = poset.above(a.element, budget)
            if not conts:
                raise EmptyLevel(f"no Eve move above {a.element!r} within budget {budget}")
            pairs = []
            for c in conts:
                r = _odd_reply(poset, odd, a.play + (c,))
                if r != a.element:
                    pairs.append((c, r))
            kept = _greedy_pairs(poset, pairs)
            if not kept:
                raise EmptyLevel(f"Odd never moves strictly above {a.element!r}")
            for c, r in kept:
                tree.add(r, a, a.play + (c, r))
    return tree


def greedy_elements(poset: Poset, elements) -> list:
    kept = []
    for x in elements:
        if all(not poset.compat(x, k) for k in kept):
            kept.append(x)
    return kept


def is_antichain(poset: Poset, elements) -> bool:
    elements = list(elements)
    return all(
        not poset.compat(x, y) for i, x in enumerate(elements) for y in elements[i + 1 :]
    )


def uncovered(poset: Poset, antichain, pool) -> list:
    """Elements of ``pool`` compatible with no member of ``antichain``."""
    return [p for p in pool if not any(poset.compat(p, a) for a in antichain)]


@dataclass
class TreeReport:
    level_sizes: list
    antichain: list  # per level: pairwise incompatible?
    local_maximal: list  # per level: each A(a) covers the Eve moves tried above a
    global_maximal: list  # per level: covers the first ``budget`` enumerated elements
    strictly_increasing: bool

    @property
    def ok(self) -> bool:
        return (
            all(self.antichain)
            and all(self.local_maximal)
            and all(self.global_maximal)
            and self.strictly_increasing
        )


def verify_antichain_tree(tree: MetricTree, budget: int) -> TreeReport:
    poset = tree.poset
    pool = poset.enumerate(budget)
    anti, local, glob = [], [], []
    for n, level in enumerate(tree.levels):
        elems = [x.element for x in level]
        anti.append(is_antichain(poset, elems))
        glob.append(not uncovered(poset, elems, pool))
        if n == 0:
            local.append(not uncovered(poset, elems, pool))
        else:
            ok = True
            for a in tree.levels[n - 1]:
                kids = [c.element for c in a.children]
                if uncovered(poset, kids, poset.above(a.element, budget)):
                    ok = False
            local.append(ok)
    strict = all(
        poset.leq(n.parent.element, n.element) and n.parent.element != n.element
        for n in tree.nodes()
        if n.parent is not None
    )
    return TreeReport([len(l) for l in tree.levels], anti, local, glob, strict)


def replay_branch(tree: MetricTree, branch, odd: Strategy, seed: int = 0) -> bool:
    """Re-ask a freshly reset ``odd`` about every Eve move stored on the branch."""
    play = branch[-1].play
    odd.reset(seed)
    for i in range(1, len(play), 2):
        if odd.respond(Transcript(tree.poset, play[:i])) != play[i]:
            return False
    return [n.element for n in branch] == list(play[1::2])


# -- tree -> strategy ------------------------------------------------------------


class TreeOddStrategy(StatefulStrategy):
    """Walks down the tree: each reply is a common upper bound of Eve's move
    and a child of the current node.  Past the leaves it echoes."""

    name = "tree"

    def __init__(self, tree: MetricTree, poset: Poset | None = None):
        self.tree = tree
        self.poset = poset or tree.poset

    def clear(self):
        self.node = None
        self.path = []

    def step(self, transcript):
        u = transcript.last
        candidates = self.tree.roots if self.node is None else self.node.children
        if not candidates:
            return u
        for a in candidates:
            if self.poset.leq(a.element, u):
                v = u
            else:
                v = self.poset.join_witness(u, a.element)
                if v is None:
                    continue
            self.node = a
            self.path.append(a)
            return v
        raise NoCompatibleChild(f"no child of {self.node!r} is compatible with {u!r}")


def tree_to_odd_strategy(tree: MetricTree, poset: Poset | None = None) -> TreeOddStrategy:
    if not tree.depth:
        raise ValueError("the tree is empty")
    return TreeOddStrategy(tree, poset)
