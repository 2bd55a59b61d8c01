"""Exception types shared by all tamemod modules."""


class ValidationError(ValueError):
    """Malformed input data: bad partitions, unknown edges, bad JSON fields."""


class StructuralError(ValidationError):
    """Mismatched rings, free modules, or map shapes.

    Raised for structural incompatibilities, as opposed to a mathematical
    check (injectivity, exactness, tameness) coming out false.
    """


class ResourceCapError(RuntimeError):
    """A configurable enumeration or computation cap was exceeded."""


class CertificateError(ValidationError):
    """A certificate failed a precondition (e.g. transform of an unverifiable input)."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
