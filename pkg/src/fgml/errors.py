"""Exception hierarchy shared by all fgml modules."""


class FgmlError(Exception):
    """Base class for every error raised by this package."""


class InvalidLatticeError(FgmlError):
    """Denominator does not define a grade lattice (d < 1)."""


class LatticeMismatchError(FgmlError):
    """Grades or fuzzy sets from different lattices were combined."""


class CarrierMismatchError(FgmlError):
    """Fuzzy sets, maps or relations over incompatible carriers."""


class MalformedFrameError(FgmlError):
    """Order table is not a partial order or references unknown elements."""


class ResourceLimitError(FgmlError):
    """An enumeration would exceed the configured size guard."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what} needs {size} entries, above the guard of {limit}; "
                         "raise max_size to override")
        self.size = size
        self.limit = limit


class ParseError(FgmlError):
    """Formula text is not well-formed; carries line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownModalityError(FgmlError):
    """A modal operator names no lifting of the signature."""


class ArityMismatchError(FgmlError):
    """A modal operator was applied to the wrong number of arguments."""


class UnboundPropositionError(FgmlError):
    """A formula uses a proposition the valuation does not define."""


class PreconditionError(FgmlError):
    """An operation was called on inputs violating its stated precondition."""


class NotSoberError(PreconditionError):
    """Duality checks require a sober space."""


class DiscontinuousMapError(PreconditionError):
    """A map required to be fuzzy continuous is not."""


class DocumentError(FgmlError):
    """A model document failed to parse or validate."""
