"""Exception hierarchy shared by all flatchain modules."""


class FlatchainError(Exception):
    """Base class for all library errors."""


class SignatureMismatch(FlatchainError):
    """Operands disagree on ambient dimension, degree or coefficient group."""


class DomainError(FlatchainError):
    """Operation applied outside its domain (e.g. boundary of a 0-chain)."""


class DegenerateInput(FlatchainError):
    """Input violates a construction invariant (degenerate interval/simplex)."""


class DegenerateSlice(FlatchainError):
    """Slice plane or grid shift hits a null set; caller should perturb or skip."""


class UnsupportedInput(FlatchainError):
    """Exact backend cannot handle this input; fall back to sampling."""


class ValidationError(FlatchainError):
    """Document parsing or validation failure (carries a human diagnostic)."""
