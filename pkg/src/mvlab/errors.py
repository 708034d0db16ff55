"""Exception hierarchy shared by all mvlab modules."""


class MvlabError(Exception):
    """Base class for all library errors."""


class DegenerateInput(MvlabError):
    """Input points span a lower-dimensional affine subspace."""


class UnsupportedDimension(MvlabError):
    """Requested ambient dimension is not 2 or 3."""


class DimensionMismatch(MvlabError):
    """Operands live in different ambient dimensions."""


class ArityMismatch(MvlabError):
    """Wrong number of bodies for the requested functional."""


class NonpositiveScale(MvlabError):
    """Dilation factor must be strictly positive."""


class OriginNotInterior(MvlabError):
    """Operation requires the origin strictly inside the body."""


class InfeasibleIntersection(MvlabError):
    """Halfspace intersection came out empty or unbounded (internal bug)."""


class IllConditionedFit(MvlabError):
    """Volume-polynomial fit is underdetermined or its residual is too large."""


class IndexOutOfRange(MvlabError):
    """Quermassintegral or surface-measure index outside the valid range."""


class PhiInvalid(MvlabError):
    """Candidate function violates a class condition (named in the message)."""


class ZeroMass(MvlabError):
    """Cannot normalize a measure with zero total mass."""


class LogOfNonpositive(MvlabError):
    """Log-expectation integrand is nonpositive at some atom."""


class NonpositiveSupport(MvlabError):
    """A measure atom received a negative weight from a support value."""


class PreconditionViolated(MvlabError):
    """An inequality check precondition failed; the message names it."""


class SpecError(MvlabError):
    """Declarative body or phi specification failed to parse."""
