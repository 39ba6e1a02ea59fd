"""Exception types shared across the toolkit."""


class HomcountError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(HomcountError):
    """A structure or input file violates an invariant."""


class EmptyUniverse(ValidationError):
    pass


class DuplicateElement(ValidationError):
    pass


class ForeignElement(ValidationError):
    pass


class ArityMismatch(ValidationError):
    pass


class UnknownSymbol(ValidationError):
    pass


class FormatError(ValidationError):
    """Malformed JSON input; the message names the offending field."""


class SignatureMismatch(HomcountError):
    """Two structures passed to a binary operation have different signatures."""


class ZeroCopies(HomcountError):
    """n_fold_union was asked for zero copies (the empty structure is rejected)."""


class SliceTooLarge(HomcountError):
    """An isomorphism-class slice exceeds the materialization guard."""


class ProbeExhausted(HomcountError):
    """No probe structure found within the requested size bound."""


class NotEquivalentClass(HomcountError):
    """Distinguisher input is not a pairwise non-isomorphic, pairwise
    homomorphically equivalent family."""


class DuplicateNodes(HomcountError):
    """Vandermonde nodes must be pairwise distinct."""


class OracleInconsistent(HomcountError):
    """Oracle answers are not consistent with any integer homomorphism counts."""
