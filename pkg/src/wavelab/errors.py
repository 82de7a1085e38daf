"""Exception hierarchy for wavelab."""


class WaveLabError(Exception):
    """Base class for all library errors."""


class GridError(WaveLabError, ValueError):
    pass


class NonPositiveSpacing(GridError):
    pass


class DomainTooSmall(GridError):
    pass


class NonIntegralSpan(GridError):
    pass


class InvalidState(WaveLabError, ValueError):
    pass


class WrongDomain(WaveLabError, ValueError):
    """Operation requires the other kind of grid (exterior r>=1 vs whole space r>=0)."""


class NonPositiveLambda(WaveLabError, ValueError):
    pass


class ROutOfRange(WaveLabError, ValueError):
    pass


class HorizonExceedsGrid(WaveLabError, ValueError):
    pass


class TimeOutOfHorizon(WaveLabError, ValueError):
    pass


class NegativeTime(WaveLabError, ValueError):
    pass


class NonIntegrableField(WaveLabError, ValueError):
    pass


class DomainTooSmallForHorizon(WaveLabError, ValueError):
    pass


class GridMismatch(WaveLabError, ValueError):
    pass


class ZeroEll(WaveLabError, ValueError):
    pass


class NoBlowUpFound(WaveLabError, RuntimeError):
    pass


class TooCloseToSingularity(WaveLabError, ValueError):
    pass


class HorizonTooShort(WaveLabError, RuntimeError):
    pass


class BlowUpRun(WaveLabError, ValueError):
    pass


class NonSquareIntegrable(WaveLabError, ValueError):
    pass


class IndexOutOfRange(WaveLabError, IndexError):
    pass


class ConfigParseError(WaveLabError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class ScenarioFailed(WaveLabError, RuntimeError):
    pass
