"""Exception hierarchy for the package.

Every error raised on purpose derives from :class:`DesignError`, so the CLI
can tell a tool failure from a programming bug.
"""


class DesignError(Exception):
    """Base class for all package errors."""


class ParseError(DesignError):
    """Malformed configuration or index-set text."""

    def __init__(self, message, line=None, column=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.column = column
        self.field = field


class DimensionMismatch(DesignError):
    pass


class ClusterAmbiguity(DesignError):
    pass


class AllZeroVectors(DesignError):
    pass


class NonUnitNorm(DesignError):
    pass


class NonHermitianGramian(DesignError):
    pass


class DimensionTooSmall(DesignError):
    pass


class QuadratureDegreeExceeded(DesignError):
    pass


class DegreeOverflow(DesignError):
    """Exact integer arithmetic left the signed 64-bit range."""


class UnknownFamily(DesignError):
    pass


class UnknownName(DesignError):
    pass


class EmptyIndexSet(DesignError):
    pass


class ComplexCoefficients(DesignError):
    pass


class InvalidPotential(DesignError):
    pass


class PreconditionFailed(DesignError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ZeroAtOne(DesignError):
    pass


class AngleAtOne(DesignError):
    pass


class OutOfValidityDomain(DesignError):
    def __init__(self, message, inequality=None):
        super().__init__(message)
        self.inequality = inequality


class DidNotConverge(DesignError):
    """Synthesis ended above tolerance; ``result`` holds the best attempt."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
