"""Exception hierarchy shared by every module of the package."""


class GameError(Exception):
    """Base class for errors raised while building or playing games."""

    code = "GAME_ERROR"


class StrategyViolation(GameError):
    """A strategy answered with an element that is not above the previous move."""

    code = "STRATEGY_VIOLATION"

    def __init__(self, player, index, previous, move):
        self.player = player
        self.index = index
        self.previous = previous
        self.move = move
        super().__init__(
            f"{player} broke the chain at index {index}: {move!r} is not above {previous!r}"
        )


class WitnessInvalid(GameError):
    code = "WITNESS_INVALID"


class EmptyLevel(GameError):
    code = "EMPTY_LEVEL"


class NotABranch(GameError):
    code = "NOT_A_BRANCH"


class NoCompatibleChild(GameError):
    code = "NO_COMPATIBLE_CHILD"


class NoCofinalWitness(GameError):
    code = "NO_COFINAL_WITNESS"


class NoJoin(GameError):
    code = "NO_JOIN"


class AmalgamationFailure(GameError):
    code = "AMALGAMATION_FAILURE"


class RealizeFailure(GameError):
    code = "REALIZE_FAILURE"


class DegreeExceeded(GameError):
    code = "DEGREE_EXCEEDED"


class CycleDetected(GameError):
    code = "CYCLE_DETECTED"
