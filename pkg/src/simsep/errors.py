"""Exception hierarchy.  Every named invariant violation gets its own class
so callers can catch precisely."""


class SimsepError(Exception):
    """Base class for all package errors."""


# --- tree construction / queries -------------------------------------------

class DisconnectedError(SimsepError):
    pass


class CyclicError(SimsepError):
    pass


class DuplicateLabelError(SimsepError):
    pass


class LabelOutOfRangeError(SimsepError):
    pass


class DegreeExceededError(SimsepError):
    pass


class InvalidEdgeError(SimsepError):
    pass


class InvalidAnchorError(SimsepError):
    pass


class EmptyKeepError(SimsepError):
    pass


class WidthMismatchError(SimsepError):
    """LabelSet operands of different fixed widths."""


# --- solver -----------------------------------------------------------------

class InvalidCutError(SimsepError):
    pass


class BudgetExceededError(SimsepError):
    def __init__(self, required, allowed):
        super().__init__(
            f"enumeration requires {required} cut vectors, budget allows {allowed}"
        )
        self.required = required
        self.allowed = allowed


class TooLargeError(SimsepError):
    """Instance exceeds the naive reference solver's hard limits."""


# --- constructive algorithms ------------------------------------------------

class NoLabelsError(SimsepError):
    pass


class NotAPathError(SimsepError):
    pass


class DegreeTooHighError(SimsepError):
    pass


class ContractViolationError(SimsepError):
    """A guaranteed bound failed; indicates an implementation bug."""


# --- generators ---------------------------------------------------------------

class SpecMismatchError(SimsepError):
    pass


class TooSmallError(SimsepError):
    pass


class SlotMismatchError(SimsepError):
    pass


class TooSmallNError(SimsepError):
    pass


class DivisibilityError(SimsepError):
    pass


class ConstructionFailedError(SimsepError):
    pass


# --- phylo --------------------------------------------------------------------

class NotBinaryError(SimsepError):
    pass


class UnresolvedQuartetError(SimsepError):
    pass


# --- io -------------------------------------------------------------------------

class NewickSyntaxError(SimsepError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonIntegerLeafError(SimsepError):
    pass


class DuplicateLeafError(SimsepError):
    pass


class DanglingTextError(SimsepError):
    pass


class SchemaError(SimsepError):
    pass
