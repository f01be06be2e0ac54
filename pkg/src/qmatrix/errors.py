"""Exception hierarchy.

Every error carries a short category name (the class name) so the CLI can
print a stable, machine-parsable prefix. ``ValidationError`` covers broken
invariants of values handed to the library; ``UsageError`` covers arguments
that are well formed but do not fit together (unknown labels, mismatched
lengths chosen by the caller).
"""


class QFSError(ValueError):
    """Base class for all library errors."""

    exit_code = 2

    @property
    def category(self) -> str:
        return type(self).__name__


class ValidationError(QFSError):
    """A value violates one of its construction-time invariants."""


class ParseError(QFSError):
    """A document could not be decoded into the expected structure."""


class UsageError(QFSError):
    """Caller-supplied arguments are inconsistent with the data."""

    exit_code = 4


# density matrices
class NotHermitian(ValidationError):
    pass


class NotPositiveSemidefinite(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class NotSquare(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class BasisNotOrthonormal(ValidationError):
    pass


# labelled collections
class DuplicateLabel(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class HeterogeneousDims(ValidationError):
    pass


class LabelMismatch(ValidationError):
    pass


class UnknownLabel(UsageError):
    pass


class EmptyKeepSet(UsageError):
    pass


class OverlappingParts(UsageError):
    pass


# channels and morphisms
class EmptyKrausList(ValidationError):
    pass


class NotTracePreserving(ValidationError):
    pass


class MorphismConditionViolated(ValidationError):
    pass


class SourceTargetMismatch(ValidationError):
    pass


class NotIso(ValidationError):
    pass


class NotUnitary(ValidationError):
    pass


# measurement and ensembles
class EffectNotHermitian(ValidationError):
    pass


class EffectNotPSD(ValidationError):
    pass


class NotComplete(ValidationError):
    pass


class WeightMismatch(UsageError):
    pass


class WeightNotNormalized(UsageError):
    pass


class UnknownExample(UsageError):
    pass
