"""Exception hierarchy.

Every error carries a ``witness`` (cells, vertices or indices locating the
problem) so reports can point at the offending data.
"""


class CellcxError(Exception):
    """Base class for all library errors."""

    def __init__(self, message="", witness=None, **info):
        super().__init__(message)
        self.witness = witness
        self.info = info

    @property
    def name(self):
        return type(self).__name__


# construction / validation
class AxiomViolation(CellcxError):
    def __init__(self, axiom, witness, message=""):
        super().__init__(message or f"axiom {axiom} violated by {witness!r}", witness)
        self.axiom = axiom


class MissingSingleton(CellcxError):
    pass


class DuplicateCell(CellcxError):
    pass


class RankOfMinimalNonZero(CellcxError):
    pass


class EmptyCellError(CellcxError):
    pass


# lookups
class CellNotInComplex(CellcxError):
    pass


class UnknownVertex(CellcxError):
    pass


class MaximalCellHasNoFigure(CellcxError):
    pass


class EmptySet(CellcxError):
    pass


class NotPure(CellcxError):
    pass


# duality and maps
class NotClosed(CellcxError):
    pass


class NotInC(CellcxError):
    pass


class NotSurjective(CellcxError):
    pass


class NotOrderPreserving(CellcxError):
    pass


class NoEqualRankPreimage(CellcxError):
    pass


class DomainMismatch(CellcxError):
    pass


class IncompleteMap(CellcxError):
    pass


# relative complexes
class NotASubcomplex(CellcxError):
    pass


class DegenerateCellInComplement(CellcxError):
    pass


class EmptyCollar(CellcxError):
    pass


class NonConnectedTrace(CellcxError):
    pass


class NotPureRelative(CellcxError):
    pass


class UniformityViolated(CellcxError):
    pass


class PreconditionFailed(CellcxError):
    pass


class ShapeMismatch(CellcxError):
    pass


class JunctionViolation(CellcxError):
    def __init__(self, index, clause, witness=None):
        super().__init__(f"junction {index}: {clause}", witness)
        self.index = index
        self.clause = clause


# slices and cobordisms
class NotASlice(CellcxError):
    def __init__(self, failures):
        text = "; ".join(f"{c}: {w!r}" for c, w in failures)
        super().__init__(f"not a slice ({text})", failures)
        self.failures = failures


class RelationViolated(CellcxError):
    pass


class Degenerate(CellcxError):
    pass


class NotLocalRelative(CellcxError):
    pass


class CompatibilityViolated(CellcxError):
    pass


class NotConnecting(CellcxError):
    pass


class ReflectivityViolated(CellcxError):
    pass


class VertexClash(CellcxError):
    pass


# category layer
class FragmentInvalid(CellcxError):
    pass


class EndpointMismatch(CellcxError):
    pass


# io
class UnknownGenerator(CellcxError):
    pass


class BadParams(CellcxError):
    pass


class ParseError(CellcxError):
    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc, (line, column))
        self.line = line
        self.column = column


class SchemaVersionUnsupported(CellcxError):
    pass
