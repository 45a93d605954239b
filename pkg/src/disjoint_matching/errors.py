"""Exception hierarchy shared by the pipeline stages."""


class DegeneracyError(ValueError):
    """Two curves overlap or one passes through the other's endpoint."""


class GuaranteeViolation(RuntimeError):
    """A step that is proved to succeed on valid input did not.

    Raised either because the input drawing is not a simple complete drawing
    or because of a bug; never as part of normal control flow.
    """


class ClaimViolation(GuaranteeViolation):
    """An edge between two neighbours of ``u`` broke the crossing dichotomy."""


class EquivalenceViolation(GuaranteeViolation):
    """A derived drawing does not have the crossing pairs of its source."""


class CertificationError(GuaranteeViolation):
    """A returned edge set is not pairwise disjoint in the original drawing."""


class LimitExceeded(RuntimeError):
    """The exact search hit its node limit; ``result`` holds the best found."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class GenerationFailure(RuntimeError):
    """The generator exhausted its rejection budget."""
