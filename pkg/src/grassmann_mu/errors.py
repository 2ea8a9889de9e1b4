"""Exception types raised across the toolkit."""


class InvalidArgument(ValueError):
    pass


class PreconditionViolation(ValueError):
    pass


class DegenerateFrameError(ValueError):
    """A frame that should have rank 3 is numerically rank deficient."""


class IllConditionedClassification(ValueError):
    """A singular value sits inside the ambiguity band above the rank tolerance."""


class TransversalityFailure(ArithmeticError):
    pass


class StencilOutOfDomain(ValueError):
    pass


class InconsistentLimit(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


class DescriptorError(ValueError):
    """Malformed connection descriptor; ``path`` names the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
