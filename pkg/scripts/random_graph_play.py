"""Build finite stages of the random graph by playing Odd's limit strategy
against seeded random Eves, and report how close each stage is to the limit."""
import argparse
import time
from dataclasses import dataclass

from bmgame.core import run_play
from bmgame.fraisse import Graphs, RandomEve, StructurePoset, extension_failures, odd_markov_strategy
from bmgame.structures import back_and_forth_equiv, find_embedding


@dataclass
class Config:
    rounds: int = 16
    seeds: int = 10
    bound: int = 2
    depth: int = 3


def main(cfg: Config) -> None:
    cls = Graphs()
    finals = []
    k = cfg.rounds // 2
    for seed in range(cfg.seeds):
        start = time.perf_counter()
        t = run_play(StructurePoset(cls), RandomEve(cls), odd_markov_strategy(cls), cfg.rounds, seed)
        M = t.last
        missing = extension_failures(cls, M, cfg.bound, restrict=t.moves[k - 1].universe)
        has_prefix = find_embedding(cls.limit.prefix(k), M) is not None
        finals.append(M)
        print(
            f"seed {seed:3d}: |V|={len(M):4d} |E|={len(M.edges()):5d} "
            f"prefix({k})={'yes' if has_prefix else 'no'} missing extensions={len(missing)} "
            f"({time.perf_counter() - start:.2f} s)"
        )
    pairs = list(zip(finals[::2], finals[1::2]))
    agree = sum(back_and_forth_equiv(a, b, cfg.depth) for a, b in pairs)
    print(f"depth-{cfg.depth} back-and-forth agreement: {agree}/{len(pairs)} pairs")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for name, value in vars(Config()).items():
        p.add_argument(f"--{name}", type=int, default=value)
    main(Config(**vars(p.parse_args())))
