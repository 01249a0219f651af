"""Exception hierarchy shared across the engine."""


class EngineError(Exception):
    """Base class for all engine-raised errors."""


class DomainError(EngineError):
    """An argument lies outside the mathematical domain of an operation."""


class CutoffExplosion(EngineError):
    """An enumeration exceeded its configured hard limit."""


class ShapeMismatch(EngineError):
    """Operator systems with incompatible spaces, ranks, or contexts."""


class DegreeViolation(EngineError):
    """An operator entry violates the degree bookkeeping it must satisfy."""


class NonInvertibleLinearPart(EngineError):
    """A solve required an invertible linear part and did not get one."""


class ContractionInvalid(EngineError):
    """Contraction data fails its defining identities."""


class InvalidInterval(EngineError):
    """An integration interval [a, b] is not 0 <= a <= b <= 1."""


class DivergenceError(EngineError):
    """A series was evaluated outside its convergence domain."""


class NegativeEnergy(EngineError):
    """An energy relabeling pushed a term below valuation zero."""


class StepInadmissible(EngineError):
    """A continuation step violates its reverse-isoperimetric bound."""


class ParseError(EngineError):
    """A spec document failed to parse."""


class SchemaError(EngineError):
    """A parsed spec document failed schema or invariant validation."""


class UnknownFixture(EngineError):
    """Requested built-in fixture name does not exist."""
