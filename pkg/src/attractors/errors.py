"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class AttractorError(Exception):
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details

    def record(self, prefix=None):
        code = f"{prefix}:{self.code}" if prefix else self.code
        rec = {"error": code, "message": str(self)}
        rec.update({k: v for k, v in self.details.items() if v is not None})
        return rec


class EmptyText(AttractorError):
    code = "empty-text"


class PositionOutOfRange(AttractorError):
    code = "position-out-of-range"


class IntervalOutOfRange(AttractorError):
    code = "interval-out-of-range"


class InputTooLarge(AttractorError):
    code = "input-too-large"


class InvalidAttractor(AttractorError):
    code = "invalid-attractor"


class GrammarInvalid(AttractorError):
    code = "grammar-invalid"


class UncoveredPosition(AttractorError):
    code = "uncovered-position"


class UnresolvableCycle(AttractorError):
    code = "unresolvable-cycle"


class InconsistentDirectives(AttractorError):
    code = "inconsistent-directives"


class ParameterOutOfRange(AttractorError):
    code = "parameter-out-of-range"


class RangeOutOfBounds(AttractorError):
    code = "range-out-of-bounds"


class EdgeNotInTree(AttractorError):
    code = "edge-not-in-tree"


class EmptyUniverse(AttractorError):
    code = "empty-universe"


class FormatError(AttractorError):
    code = "bad-format"


class BoundViolated(AttractorError):
    code = "bound-violated"
