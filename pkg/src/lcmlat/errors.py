"""Exception hierarchy.  Every error carries a short machine-readable ``code``."""

from __future__ import annotations


class LcmlatError(Exception):
    code = "Error"


class LatticeError(LcmlatError, ValueError):
    code = "InvalidLattice"


class AtomCapacityExceeded(LatticeError):
    code = "AtomCapacityExceeded"


class InvalidAtomSet(LatticeError):
    code = "InvalidAtomSet"


class MissingRequiredSet(LatticeError):
    code = "MissingRequiredSet"

    def __init__(self, missing: int, n: int):
        from .lattice import atoms_of

        self.missing = missing
        super().__init__(f"required set {atoms_of(missing)} absent from family on {n} atoms")


class NotIntersectionClosed(LatticeError):
    code = "NotIntersectionClosed"

    def __init__(self, a: int, b: int):
        from .lattice import atoms_of

        self.witness = (a, b)
        super().__init__(
            f"{atoms_of(a)} ∩ {atoms_of(b)} = {atoms_of(a & b)} is not in the family"
        )


class NotMinimal(LcmlatError, ValueError):
    code = "NotMinimal"


class InvalidLabeling(LcmlatError, ValueError):
    code = "InvalidLabeling"


class AtomCountMismatch(LcmlatError, ValueError):
    code = "AtomCountMismatch"


class NotComparable(LcmlatError, ValueError):
    code = "NotComparable"


class OutOfSupportedRange(LcmlatError, ValueError):
    code = "OutOfSupportedRange"


class ShapeMismatch(LcmlatError, ValueError):
    code = "ShapeMismatch"


class HomotopyMismatch(LcmlatError, RuntimeError):
    code = "HomotopyMismatch"


class NotGradedRankN(LcmlatError, ValueError):
    code = "NotGradedRankN"

    def __init__(self, message: str, chain=None):
        self.chain = chain
        super().__init__(message)


class LabelInconsistent(LcmlatError, ValueError):
    code = "LabelInconsistent"


class ParseError(LcmlatError, ValueError):
    code = "ParseError"

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
