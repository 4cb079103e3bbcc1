"""Exception hierarchy.

Every error carries a stable short ``code`` used by the CLI when it prints
one-line diagnostics to stderr.
"""


class BoundsError(ValueError):
    code = "E_BOUNDS"


class NotSquare(BoundsError):
    code = "E_NOT_SQUARE"


class NotHermitian(BoundsError):
    code = "E_NOT_HERMITIAN"


class DimMismatch(BoundsError):
    code = "E_DIM_MISMATCH"


class NotUnitTrace(BoundsError):
    code = "E_NOT_UNIT_TRACE"


class NotPSD(BoundsError):
    code = "E_NOT_PSD"

    def __init__(self, min_eig: float):
        super().__init__(f"minimum eigenvalue {min_eig:.3e} below tolerance")
        self.min_eig = min_eig


class NotFinite(BoundsError):
    code = "E_NOT_FINITE"


class NotBijection(BoundsError):
    code = "E_NOT_BIJECTION"


class NotSquareDims(BoundsError):
    code = "E_NOT_SQUARE_DIMS"


class TOutsideProvenDomain(BoundsError):
    code = "E_T_DOMAIN"


class NotFullCycle(BoundsError):
    code = "E_NOT_FULL_CYCLE"


class NonpositiveParameter(BoundsError):
    code = "E_NONPOSITIVE"


class StateFormatError(BoundsError):
    code = "E_STATE_FORMAT"
