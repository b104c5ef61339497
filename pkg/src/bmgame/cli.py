"""Command-line front end.

Exit codes: 0 PASS, 1 FAIL, 2 UNDECIDED, 3 end of input in interactive
mode, 4 empty tree level, 64 usage error, 65 bad config or data, 70 other
game error, 74 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import posets as P
from .core import (
    AlwaysPass,
    EchoStrategy,
    GenericCheck,
    RandomStrategy,
    Strategy,
    Transcript,
    generic_odd_strategy,
    run_play,
)
from .errors import EmptyLevel, GameError
from .fraisse import (
    ExtensionCheck,
    LimitCheck,
    MembershipCheck,
    RandomEve,
    ScriptedEve,
    StructurePoset,
    TargetChain,
    apply_additions,
    bounded_degree_odd_strategy,
    eve_universality_strategy,
    forest_odd_strategy,
    get_class,
    odd_markov_strategy,
)
from .fraisse.classes import BoundedDegree, Forests
from .structures import EMPTY, ORDER, FinStructure, order_list, path_graph, to_dot
from .trees import strategy_to_antichain_tree, verify_antichain_tree

EXIT_EOF = 3
EXIT_EMPTY_LEVEL = 4
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_SOFTWARE = 70
EXIT_IO = 74

DEFAULTS = {
    "class": None,
    "poset": None,
    "eve": "random",
    "odd": "markov",
    "rounds": 8,
    "seed": 0,
    "check": None,
    "budget": 8,
    "depth": 3,
    "out": None,
    "input": None,
    "format": "json",
    "prefix": None,
}
INT_KEYS = {"rounds", "seed", "budget", "depth", "prefix"}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- game assembly ----------------------------------------------------------------


def _int(arg: str, default: int) -> int:
    if not arg:
        return default
    try:
        return int(arg)
    except ValueError:
        raise DataError(f"expected a number, got {arg!r}") from None


class Game:
    """The resolved pieces of a run: poset, optional class, strategies, check."""

    def __init__(self, cfg: dict):
        self.cfg = cfg
        if bool(cfg["class"]) == bool(cfg["poset"]):
            raise UsageError("give exactly one of --class and --poset")
        try:
            if cfg["class"]:
                self.cls = get_class(cfg["class"])
                self.poset = StructurePoset(self.cls)
            else:
                self.cls = None
                self.poset = P.get_poset(cfg["poset"])
        except (KeyError, ValueError) as exc:
            raise DataError(str(exc.args[0] if exc.args else exc)) from None

    @property
    def name(self) -> str:
        return self.cfg["class"] or self.cfg["poset"]

    def family(self, m: int):
        try:
            return P.FAMILIES[self.cfg["poset"]](m)
        except KeyError:
            raise DataError(f"no cofinal family for {self.name!r}") from None

    def opening(self):
        if self.cls is not None:
            return FinStructure.make(self.cls.signature, ())
        return self.poset.enumerate(1)[0]

    def eve(self, choice: str) -> Strategy:
        kind, _, arg = choice.partition(":")
        if kind == "random":
            return RandomEve(self.cls) if self.cls else RandomStrategy(self.cfg["budget"])
        if kind == "echo":
            return EchoStrategy(self.opening())
        if kind == "script":
            lines = _read_lines(arg)
            return CheckedScriptEve(self.cls, lines) if self.cls else PosetScriptEve(lines)
        if kind == "universality" and self.cls is not None:
            size = _int(arg, 6)
            return eve_universality_strategy(self.cls, TargetChain(tuple(path_graph(k) for k in range(1, size + 1))))
        if kind == "double" and self.cfg["poset"] == "divisibility":
            return P.doubling_eve()
        raise DataError(f"unknown Eve strategy {choice!r} for {self.name!r}")

    def odd(self, choice: str) -> Strategy:
        kind, _, arg = choice.partition(":")
        if self.cls is not None:
            if kind == "markov":
                if isinstance(self.cls, BoundedDegree):
                    return bounded_degree_odd_strategy(self.cls.N)
                if isinstance(self.cls, Forests):
                    return forest_odd_strategy()
                return odd_markov_strategy(self.cls)
            if kind == "echo":
                return EchoStrategy()
            raise DataError(f"unknown Odd strategy {choice!r} for {self.name!r}")
        named = {
            "echo": lambda: EchoStrategy(),
            "append0": lambda: P.append_strategy("0"),
            "append1": lambda: P.append_strategy("1"),
            "left_third": P.left_third,
            "next_arg": P.extend_next_argument,
            "missing_prime": P.multiply_missing_prime,
        }
        if kind in ("markov", "generic"):
            return generic_odd_strategy(self.family(_int(arg, 10)))
        if kind in named:
            return named[kind]()
        raise DataError(f"unknown Odd strategy {choice!r}; choose from markov, generic[:m], {', '.join(named)}")

    def check(self, choice: str | None):
        if choice is None:
            if self.cls is None:
                choice = "generic:10"
            elif self.cls.limit is not None:
                choice = "limit"
            else:
                choice = "member"
        kind, _, arg = choice.partition(":")
        if kind == "always":
            return AlwaysPass()
        if kind == "generic" and self.cls is None:
            return GenericCheck(self.family(_int(arg, 10)))
        if self.cls is not None:
            if kind == "extension":
                return ExtensionCheck(self.cls, _int(arg, 2))
            if kind == "limit" and self.cls.limit is not None:
                return LimitCheck(self.cls)
            if kind == "member":
                return MembershipCheck(self.cls)
        raise DataError(f"unknown check {choice!r} for {self.name!r}")


class PosetScriptEve(Strategy):
    """Poset moves given as one JSON-encoded element per line; stalls after."""

    name = "script"

    def __init__(self, lines):
        self.lines = list(lines)

    def respond(self, transcript):
        k = len(transcript) // 2
        if k < len(self.lines) and self.lines[k].strip():
            try:
                return transcript.poset.decode(json.loads(self.lines[k]))
            except (ValueError, TypeError, KeyError) as exc:
                raise DataError(f"script line {k + 1}: {exc}") from None
        if not transcript.moves:
            raise DataError("the script has no opening move")
        return transcript.last


class CheckedScriptEve(ScriptedEve):
    """A script whose illegal lines are data errors."""

    def respond(self, transcript):
        try:
            return super().respond(transcript)
        except ValueError as exc:
            raise DataError(f"script line {len(transcript) // 2 + 1}: {exc}") from None


class _EndOfInput(Exception):
    pass


def render(poset, x) -> str:
    cls = getattr(poset, "cls", None)
    if cls is None:
        return json.dumps(poset.encode(x))
    if cls.signature == ORDER:
        return "order: " + " < ".join(map(str, order_list(x))) if len(x) else "order: (empty)"
    if cls.signature == EMPTY:
        return f"points: {x.vertices}"
    return f"vertices: {x.vertices}\nedges: {' '.join(f'{a}-{b}' for a, b in x.edges()) or '(none)'}"


class InteractiveEve(Strategy):
    """A human types Eve's moves.  Bad input re-prompts; EOF aborts."""

    name = "interactive"

    def __init__(self, game: Game, stdin, stdout):
        self.game = game
        self.stdin = stdin
        self.stdout = stdout

    def _say(self, text):
        self.stdout.write(text + "\n")
        self.stdout.flush()

    def respond(self, transcript):
        poset, cls = self.game.poset, self.game.cls
        last = transcript.last if transcript.moves else None
        self._say(f"-- round {len(transcript)} (Eve)")
        if last is not None:
            self._say(render(poset, last))
        while True:
            self.stdout.write("eve> ")
            self.stdout.flush()
            line = self.stdin.readline()
            if not line:
                raise _EndOfInput()
            line = line.strip()
            try:
                if cls is not None:
                    return apply_additions(cls, last, line)
                if not line:
                    if last is None:
                        raise ValueError("the opening move cannot be empty")
                    return last
                x = poset.decode(json.loads(line))
                if last is not None and not poset.leq(last, x):
                    raise ValueError("the move must extend the previous one")
                return x
            except (ValueError, TypeError, KeyError) as exc:
                self._say(f"invalid: {exc}")


# -- helpers ------------------------------------------------------------------------


def _read_lines(path: str) -> list:
    if not path:
        raise UsageError("script: needs a file name")
    with open(path) as fh:
        return fh.read().splitlines()


def _write(path: str | None, text: str, stdout):
    if path is None or path == "-":
        stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def transcript_text(t: Transcript) -> str:
    return json.dumps(t.to_json(), sort_keys=True, indent=1) + "\n"


def _load_transcript(game: Game, path: str) -> Transcript:
    if not path:
        raise UsageError("--in is required")
    with open(path) as fh:
        data = json.load(fh)
    try:
        return Transcript.from_json(data, game.poset)
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"bad transcript: {exc}") from None


def _verdict(check, t, stdout) -> int:
    v = check(t, 0)
    stdout.write(f"check {check.name}: {v}\n")
    return v.exit_code


# -- commands -----------------------------------------------------------------------


def cmd_play(cfg, stdin, stdout) -> int:
    if cfg["rounds"] < 1:
        raise UsageError("--rounds must be at least 1")
    game = Game(cfg)
    check = game.check(cfg["check"])
    t = run_play(game.poset, game.eve(cfg["eve"]), game.odd(cfg["odd"]), cfg["rounds"], cfg["seed"])
    if cfg["format"] == "dot":
        if game.cls is None:
            raise UsageError("--format dot needs --class")
        _write(cfg["out"], to_dot(t.last), stdout)
    else:
        _write(cfg["out"] or "transcript.json", transcript_text(t), stdout)
    return _verdict(check, t, stdout)


def cmd_interactive(cfg, stdin, stdout) -> int:
    if cfg["rounds"] < 1:
        raise UsageError("--rounds must be at least 1")
    game = Game(cfg)
    check = game.check(cfg["check"])
    eve = InteractiveEve(game, stdin, stdout)
    try:
        t = run_play(game.poset, eve, game.odd(cfg["odd"]), cfg["rounds"], cfg["seed"])
    except _EndOfInput:
        stdout.write("\nend of input\n")
        return EXIT_EOF
    stdout.write(f"-- final ({len(t)} moves)\n{render(game.poset, t.last)}\n")
    if cfg["out"]:
        _write(cfg["out"], transcript_text(t), stdout)
    return _verdict(check, t, stdout)


def cmd_tree(cfg, stdin, stdout) -> int:
    game = Game(cfg)
    if game.cls is not None:
        raise UsageError("tree works on --poset games")
    odd = game.odd(cfg["odd"])
    tree = strategy_to_antichain_tree(game.poset, odd, cfg["depth"], cfg["budget"], cfg["seed"])
    _write(cfg["out"] or "tree.dot", tree.to_dot(), stdout)
    report = verify_antichain_tree(tree, cfg["budget"])
    for n, size in enumerate(report.level_sizes):
        stdout.write(
            f"level {n}: {size} nodes, antichain={report.antichain[n]}, "
            f"maximal={report.local_maximal[n] and report.global_maximal[n]}\n"
        )
    stdout.write(f"tree ok: {report.ok}\n")
    return 0 if report.ok else 1


def cmd_verify(cfg, stdin, stdout) -> int:
    game = Game(cfg)
    t = _load_transcript(game, cfg["input"])
    if not t.is_chain():
        stdout.write("transcript is not a chain\n")
        return 1
    return _verdict(game.check(cfg["check"]), t, stdout)


def cmd_export(cfg, stdin, stdout) -> int:
    game = Game(cfg)
    if cfg["prefix"] is not None:
        if game.cls is None or game.cls.limit is None:
            raise DataError("--prefix needs a class with a limit")
        X = game.cls.limit.prefix(cfg["prefix"])
    elif cfg["input"]:
        t = _load_transcript(game, cfg["input"])
        if not t.moves:
            raise DataError("empty transcript")
        X = t.last
    else:
        raise UsageError("give --prefix N or --in TRANSCRIPT")
    if cfg["format"] == "dot":
        if game.cls is None:
            raise UsageError("--format dot needs --class")
        text = to_dot(X)
    else:
        text = json.dumps(game.poset.encode(X), sort_keys=True) + "\n"
    _write(cfg["out"], text, stdout)
    return 0


COMMANDS = {
    "play": cmd_play,
    "interactive": cmd_interactive,
    "tree": cmd_tree,
    "verify": cmd_verify,
    "export": cmd_export,
}


HELP = {
    "play": "run a play and print the verdict of a check",
    "interactive": "play Eve by typing moves",
    "tree": "build the antichain tree of an Odd strategy",
    "verify": "evaluate a check on a saved transcript",
    "export": "write a final structure or a limit prefix",
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bmgame", description="Banach-Mazur games on posets and classes of finite structures.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("--config", help="flat JSON file with the same keys; flags override it")
        g = p.add_mutually_exclusive_group()
        g.add_argument("--class", dest="class", help="graphs, linear_orders, pure_sets, bounded_degree:N, forests")
        g.add_argument("--poset", help=", ".join(sorted(P.POSETS)))
        p.add_argument("--eve", help="random, echo, script:FILE, universality[:K], double")
        p.add_argument("--odd", help="markov, generic[:m], echo, append0, append1, left_third, next_arg, missing_prime")
        p.add_argument("--rounds", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--check", help="always, generic[:m], extension[:k], limit, member")
        p.add_argument("--budget", type=int)
        p.add_argument("--depth", type=int, help="tree depth (tree command)")
        p.add_argument("--out", help="output path, '-' for stdout")
        p.add_argument("--in", dest="input", help="transcript to read (verify, export)")
        p.add_argument("--format", choices=["json", "dot"])
        p.add_argument("--prefix", type=int, help="export prefix(N) of the class limit")
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        with open(args.config) as fh:
            try:
                data = json.load(fh)
            except ValueError as exc:
                raise DataError(f"bad config file: {exc}") from None
        if not isinstance(data, dict):
            raise DataError("the config file must hold a JSON object")
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise DataError(f"unknown config keys {sorted(unknown)}")
        for key, value in data.items():
            want = int if key in INT_KEYS else str
            if value is not None and (not isinstance(value, want) or isinstance(value, bool)):
                raise DataError(f"config key {key!r} must be {want.__name__}")
        cfg.update(data)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    # a --class or --poset flag replaces whichever game the file named
    if getattr(args, "class") is not None:
        cfg["poset"] = None
    elif args.poset is not None:
        cfg["class"] = None
    return cfg


def main(argv=None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg, stdin, stdout)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except DataError as exc:
        sys.stderr.write(f"data error: {exc}\n")
        return EXIT_DATA
    except EmptyLevel as exc:
        sys.stderr.write(f"empty level: {exc}\n")
        return EXIT_EMPTY_LEVEL
    except GameError as exc:
        sys.stderr.write(f"game error [{exc.code}]: {exc}\n")
        return EXIT_SOFTWARE
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
