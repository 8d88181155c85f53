"""Dense complex linear algebra on small matrices.

Matrices are 2-D numpy complex128 arrays in row-major order; scalars are
double precision throughout. Nothing here overloads operators: callers use
the named functions so that tolerances stay explicit.
"""
from __future__ import annotations

import cmath

import numpy as np

DEFAULT_TOL = 1e-9


def _check_tol(tol: float) -> None:
    if not 0.0 < tol < 1.0:
        raise ValueError(f"tolerance must lie in (0, 1), got {tol!r}")


def as_matrix(data) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting NaN or infinite entries."""
    m = np.asarray(data, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got array of shape {m.shape}")
    if m.size == 0:
        raise ValueError("matrix must be non-empty")
    if not np.isfinite(m.real).all() or not np.isfinite(m.imag).all():
        raise ValueError("matrix entries must be finite")
    return m


def conjugate_transpose(m) -> np.ndarray:
    """Adjoint of m: transpose with every entry conjugated."""
    return as_matrix(m).conj().T


def mat_mul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; the left factor indexes the high-order blocks."""
    return np.kron(as_matrix(a), as_matrix(b))


def approx_equal(a, b, tol: float = DEFAULT_TOL) -> bool:
    """True iff a and b share a shape and agree entrywise within tol."""
    _check_tol(tol)
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        return False
    return float(np.abs(a - b).max()) <= tol


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    return approx_equal(m, conjugate_transpose(m), tol)


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff m·m† and m†·m both equal the identity within tol."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    eye = np.eye(m.shape[0], dtype=np.complex128)
    mh = conjugate_transpose(m)
    return approx_equal(mat_mul(m, mh), eye, tol) and approx_equal(mat_mul(mh, m), eye, tol)


def eigenvalues_2x2(m) -> tuple[complex, complex]:
    """Both roots of the characteristic polynomial of a 2x2 matrix.

    Closed form via the quadratic formula on lambda^2 - tr*lambda + det.
    The root taking the principal square root with '+' comes first.
    """
    m = as_matrix(m)
    if m.shape != (2, 2):
        raise ValueError(f"eigenvalues_2x2 needs a 2x2 matrix, got shape {m.shape}")
    tr = complex(m[0, 0] + m[1, 1])
    det = complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    root = cmath.sqrt(tr * tr - 4.0 * det)
    return (tr + root) / 2.0, (tr - root) / 2.0
