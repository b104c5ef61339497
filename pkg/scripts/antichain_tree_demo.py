"""Turn Odd strategies on the standard posets into trees of maximal
antichains, then check the branch metric of each tree."""
import argparse
from dataclasses import dataclass
from itertools import combinations

from bmgame.core import generic_odd_strategy
from bmgame.posets import (
    BinaryStrings,
    Intervals,
    PartialFunctions,
    append_strategy,
    avoiding_family,
    cohen_family,
    extend_next_argument,
    left_third,
    long_strings_family,
)
from bmgame.trees import branch_distance, branches, strategy_to_antichain_tree, verify_antichain_tree


@dataclass
class Config:
    depth: int = 3
    budget: int = 6
    family: int = 8
    dot: str = ""


def cases(m: int):
    yield "binary_strings/append1", BinaryStrings(), append_strategy("1")
    yield "binary_strings/generic", BinaryStrings(), generic_odd_strategy(long_strings_family(m))
    yield "partial_functions/next_arg", PartialFunctions(), extend_next_argument()
    yield "partial_functions/generic", PartialFunctions(), generic_odd_strategy(cohen_family(m))
    yield "intervals/left_third", Intervals(), left_third()
    yield "intervals/generic", Intervals(), generic_odd_strategy(avoiding_family(m))


def main(cfg: Config) -> None:
    for name, poset, odd in cases(cfg.family):
        tree = strategy_to_antichain_tree(poset, odd, cfg.depth, cfg.budget)
        report = verify_antichain_tree(tree, cfg.budget)
        bs = branches(tree)
        dists = sorted({branch_distance(tree, x, y) for x, y in combinations(bs, 2)})
        print(f"{name:28s} levels={report.level_sizes} ok={report.ok} branches={len(bs)} distances={[str(d) for d in dists]}")
        if cfg.dot:
            with open(f"{cfg.dot}{name.replace('/', '_')}.dot", "w") as fh:
                fh.write(tree.to_dot())


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--depth", type=int, default=Config.depth)
    p.add_argument("--budget", type=int, default=Config.budget)
    p.add_argument("--family", type=int, default=Config.family)
    p.add_argument("--dot", default=Config.dot, help="prefix for DOT files; empty writes none")
    main(Config(**vars(p.parse_args())))
