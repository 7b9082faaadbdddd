class AdgError(Exception):
    """Base error; ``exit_code`` is what the command line returns for it."""

    exit_code = 3


class ConfigurationError(AdgError, ValueError):
    exit_code = 2


class PreconditionError(AdgError, ValueError):
    exit_code = 2


class DomainError(PreconditionError):
    pass


class IsomorphismError(PreconditionError):
    pass


class OracleRangeError(PreconditionError):
    pass


class DeltaRangeError(AdgError, ArithmeticError):
    pass


class RootFindingError(AdgError, ArithmeticError):
    pass


class NoSignChangeError(RootFindingError):
    pass


class NonFiniteEvaluationError(RootFindingError):
    pass


class BracketNotFoundError(RootFindingError):
    pass


class WitnessError(AdgError):
    pass


class ClosureError(WitnessError):
    pass


class VertexCollisionError(WitnessError):
    pass


class DistinctnessError(WitnessError):
    pass


class WitnessVerificationError(WitnessError):
    pass
