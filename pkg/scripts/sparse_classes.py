"""The two classes without amalgamation: Odd's strategies for graphs of
degree at most N and for forests, stage by stage."""
import argparse
from dataclasses import dataclass

from bmgame.core import run_play
from bmgame.fraisse import (
    BoundedDegree,
    Forests,
    RandomEve,
    StructurePoset,
    bounded_degree_odd_strategy,
    contains_complete_tree,
    forest_odd_strategy,
)
from bmgame.structures import back_and_forth_equiv, components, induced_substructure


@dataclass
class Config:
    N: int = 2
    rounds: int = 8
    seed: int = 0


def stage_lines(t, describe):
    for n in range(len(t) // 2):
        U = t.moves[2 * n + 1]
        yield f"  stage {n}: |V|={len(U)} components={len(components(U))} {describe(U, n)}"


def main(cfg: Config) -> None:
    cls = BoundedDegree(cfg.N)
    t = run_play(StructurePoset(cls), RandomEve(cls), bounded_degree_odd_strategy(cfg.N), cfg.rounds, cfg.seed)
    print(f"degree <= {cfg.N}:")
    sizes = lambda U, n: "sizes=" + str(sorted(len(c) for c in components(U)))
    print("\n".join(stage_lines(t, sizes)))

    cls = Forests()
    plays = [run_play(StructurePoset(cls), RandomEve(cls), forest_odd_strategy(), cfg.rounds, cfg.seed + i) for i in range(2)]
    trees = lambda U, n: "complete trees=" + str(
        all(contains_complete_tree(induced_substructure(U, c), n, n) for c in components(U))
    )
    print("forests:")
    print("\n".join(stage_lines(plays[0], trees)))
    print(f"two seeds agree to depth 2: {back_and_forth_equiv(plays[0].last, plays[1].last, 2)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for name, value in vars(Config()).items():
        p.add_argument(f"--{name}", type=int, default=value)
    main(Config(**vars(p.parse_args())))
