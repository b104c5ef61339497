"""Banach-Mazur games on posets and on classes of finite structures."""
from .core import (
    EVE,
    ODD,
    PASS,
    UNDECIDED,
    AlwaysPass,
    CofinalFamily,
    CofinalSet,
    ConstantStrategy,
    EchoStrategy,
    GenericCheck,
    IdealRep,
    MarkovStrategy,
    Poset,
    PredicateCheck,
    RandomStrategy,
    StatefulStrategy,
    Status,
    Strategy,
    Transcript,
    Verdict,
    WinCheck,
    evaluate,
    fail,
    generic_odd_strategy,
    ideal_membership,
    markov_consistent,
    run_play,
)
from .errors import GameError

__version__ = "0.1.0"
