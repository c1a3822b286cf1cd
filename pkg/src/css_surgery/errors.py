"""Exception types shared across the package."""


class CssSurgeryError(Exception):
    """Base class for all library errors."""


class CommutationError(CssSurgeryError):
    """X and Z checks fail to commute: ``P_X P_Z^T != 0``."""


class CommutingSquareError(CssSurgeryError):
    """A code map square fails to commute."""

    def __init__(self, square: str, message: str):
        super().__init__(f"square {square}: {message}")
        self.square = square


class ChainMapError(CssSurgeryError):
    """Malformed chain map or complex (shapes or commuting squares)."""


class SearchBudgetExceeded(CssSurgeryError):
    """An exhaustive search would exceed the configured budget."""


class NotLogical(CssSurgeryError):
    """The chosen operator is a stabilizer or is detectable."""


class StructureMismatch(CssSurgeryError):
    """Two operator subcomplexes differ under the support bijection."""


class NotSeparated(CssSurgeryError):
    """The merge along the chosen operators is not separated."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class NotGaugeFixable(CssSurgeryError):
    """Some support qubit of the operator cannot be safely corrected."""

    def __init__(self, qubit: int):
        super().__init__(f"support qubit {qubit} admits no fixing operator")
        self.qubit = qubit


class NoCocone(CssSurgeryError):
    """A pushout of cubical complexes does not exist."""


class ProtocolError(CssSurgeryError):
    """A simulated protocol step violated its expected stabilizer algebra."""
