import logging

import numpy as np
import scipy.linalg

from rmtscope.ensembles.types import HermitianMatrix, SquareComplexMatrix
from rmtscope.errors import DimensionError, NumericalError
from rmtscope.spectra.types import Spectrum, SpectrumKind

logger = logging.getLogger(__name__)

TRACE_RTOL = 1e-6


def eig_hermitian(H: HermitianMatrix, c: float | None = None) -> Spectrum:
    """Real eigenvalues in ascending order (LAPACK divide-and-conquer)."""
    try:
        values = scipy.linalg.eigh(H.entries, eigvals_only=True, check_finite=True)
    except ValueError as exc:
        raise DimensionError(f"cannot diagonalize: {exc}") from exc
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"hermitian eigensolver did not converge: {exc}") from exc
    return Spectrum(eigenvalues=np.asarray(values, dtype=float), n=H.n, kind=SpectrumKind.HERMITIAN, c=c)


def eig_general(A: SquareComplexMatrix, c: float | None = None) -> Spectrum:
    """
    Complex eigenvalues of a general square matrix (QR algorithm).

    The trace identity is checked on the way out: a spectrum whose sum drifts from
    Tr(A) is reported as a numerical failure instead of being returned.
    """
    try:
        values = scipy.linalg.eigvals(A.entries, check_finite=True)
    except ValueError as exc:
        raise DimensionError(f"cannot diagonalize: {exc}") from exc
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"general eigensolver did not converge: {exc}") from exc

    values = np.asarray(values, dtype=np.complex128)
    trace = np.trace(A.entries)
    scale = max(abs(trace), np.linalg.norm(A.entries), np.finfo(float).tiny)
    drift = abs(values.sum() - trace)
    if drift > TRACE_RTOL * scale:
        raise NumericalError(
            f"eigenvalue sum deviates from the trace by {drift:.3e} (scale {scale:.3e})"
        )
    return Spectrum(eigenvalues=values, n=A.n, kind=SpectrumKind.GENERAL, c=c)
