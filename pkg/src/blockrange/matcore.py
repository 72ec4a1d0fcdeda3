"""Dense complex matrix primitives.

Hermitian structure validation, spectral decomposition, 2x2-block assembly,
and the two unitary congruences (J-congruence and phase rotation of the
off-diagonal block) used throughout the verification machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Relative tolerance for accepting a matrix as Hermitian.
HERM_RTOL = 1e-10
# Relative tolerance for positive semidefiniteness of validated blocks.
PSD_RTOL = 1e-9


class MatrixError(ValueError):
    """Bad matrix input: shape, finiteness, or structure."""


class HermitianError(MatrixError):
    """Hermiticity residual exceeds tolerance."""


class PositivityError(MatrixError):
    """A positive semidefiniteness requirement fails; carries the witness."""

    def __init__(self, message: str, lambda_min: float):
        super().__init__(message)
        self.lambda_min = float(lambda_min)


class EigenSolverError(MatrixError):
    """The Hermitian eigensolver failed to converge."""


def as_matrix(entries) -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting NaN/Inf entries."""
    M = np.asarray(entries, dtype=complex)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise MatrixError(f"expected a 2-D matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise MatrixError("matrix has non-finite entries")
    return M


def adjoint(M: np.ndarray) -> np.ndarray:
    return np.conj(M).T


def herm_tolerance(M: np.ndarray) -> float:
    return HERM_RTOL * (1.0 + float(np.max(np.abs(M))))


def hermitian_residual(M: np.ndarray) -> float:
    if M.shape[0] != M.shape[1]:
        return np.inf
    return float(np.max(np.abs(M - adjoint(M)))) if M.size else 0.0


def is_hermitian(M: np.ndarray, tol: float | None = None) -> bool:
    if tol is None:
        tol = herm_tolerance(M)
    return hermitian_residual(M) <= tol


def require_hermitian(entries, tol: float | None = None) -> np.ndarray:
    """Validate Hermiticity and return the canonical symmetrization.

    Inputs beyond the residual tolerance are rejected, not repaired.
    """
    M = as_matrix(entries)
    if M.shape[0] != M.shape[1]:
        raise HermitianError(f"Hermitian matrix must be square, got {M.shape}")
    res = hermitian_residual(M)
    if tol is None:
        tol = herm_tolerance(M)
    if res > tol:
        raise HermitianError(
            f"Hermiticity residual {res:.3e} exceeds tolerance {tol:.3e}"
        )
    return (M + adjoint(M)) / 2.0


def real_part(M) -> np.ndarray:
    """(M + M*)/2, the Hermitian real part of a square matrix."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise MatrixError(f"real_part needs a square matrix, got {M.shape}")
    return (M + adjoint(M)) / 2.0


def hermitian_eig(H) -> tuple[np.ndarray, np.ndarray]:
    """Spectral decomposition of a Hermitian matrix.

    Returns (values, vectors) with eigenvalues in non-increasing order and
    eigenvectors as matching columns of a unitary matrix.
    """
    H = require_hermitian(H)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigensolver did not converge: {exc}") from exc
    return w[::-1].copy(), V[:, ::-1].copy()


def eigvals_desc(H) -> np.ndarray:
    H = require_hermitian(H)
    try:
        w = np.linalg.eigvalsh(H)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigensolver did not converge: {exc}") from exc
    return w[::-1].copy()


def eigvals_asc(H) -> np.ndarray:
    return eigvals_desc(H)[::-1].copy()


def is_positive_semidefinite(H, tol: float = PSD_RTOL) -> tuple[bool, float]:
    """PSD verdict with the minimal-eigenvalue witness.

    Accepts lambda_min >= -tol * max(1, lambda_max).
    """
    w = eigvals_desc(H)
    lam_max = float(w[0])
    lam_min = float(w[-1])
    return lam_min >= -tol * max(1.0, lam_max), lam_min


@dataclass(frozen=True)
class BlockPSD:
    """A validated positive 2n x 2n matrix [[A, X], [X*, B]] with n x n blocks.

    A and B are Hermitian PSD; construction fails loudly (PositivityError)
    rather than clamping negative eigenvalues.
    """

    n: int
    A: np.ndarray
    X: np.ndarray
    B: np.ndarray
    lambda_min: float  # witness from PSD validation of the assembled matrix

    @property
    def full(self) -> np.ndarray:
        return assemble_block(self)

    @property
    def half_sum(self) -> np.ndarray:
        return (self.A + self.B) / 2.0


def block_psd(A, X, B, psd_tol: float = PSD_RTOL) -> BlockPSD:
    """Validate and build a BlockPSD from its three blocks."""
    A = require_hermitian(A)
    B = require_hermitian(B)
    X = as_matrix(X)
    n = A.shape[0]
    if B.shape != (n, n) or X.shape != (n, n):
        raise MatrixError(
            f"block shapes disagree: A {A.shape}, X {X.shape}, B {B.shape}"
        )
    M = np.block([[A, X], [adjoint(X), B]])
    ok, lam_min = is_positive_semidefinite(M, psd_tol)
    if not ok:
        raise PositivityError(
            f"assembled block matrix is not PSD (lambda_min={lam_min:.6e})",
            lam_min,
        )
    for name, D in (("A", A), ("B", B)):
        ok_d, lam_d = is_positive_semidefinite(D, psd_tol)
        if not ok_d:
            raise PositivityError(
                f"diagonal block {name} is not PSD (lambda_min={lam_d:.6e})",
                lam_d,
            )
    return BlockPSD(n=n, A=A, X=X, B=B, lambda_min=lam_min)


def assemble_block(b: BlockPSD) -> np.ndarray:
    """Lay out [[A, X], [X*, B]] with A in the top-left corner."""
    return np.block([[b.A, b.X], [adjoint(b.X), b.B]])


def split_blocks(M) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Read back (A, X, Y, B) quadrants of an even-order matrix."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1] or M.shape[0] % 2 != 0:
        raise MatrixError(f"need an even-order square matrix, got {M.shape}")
    n = M.shape[0] // 2
    return M[:n, :n], M[:n, n:], M[n:, :n], M[n:, n:]


def j_congruence(M) -> np.ndarray:
    """Conjugate by J = (1/sqrt(2)) [[I, -I], [I, I]].

    A unitary congruence, so the spectrum is preserved; on block-diagonal
    input it produces half-sum / half-difference blocks.
    """
    M = as_matrix(M)
    if M.shape[0] != M.shape[1] or M.shape[0] % 2 != 0:
        raise MatrixError(f"J-congruence needs even order, got {M.shape}")
    n = M.shape[0] // 2
    eye = np.eye(n)
    J = np.block([[eye, -eye], [eye, eye]]) / np.sqrt(2.0)
    return J @ M @ J.T


def phase_rotate_block(b: BlockPSD, theta: float) -> BlockPSD:
    """Replace X by e^{i theta} X; a unitary congruence of the assembly."""
    X = np.exp(1j * theta) * b.X
    # Spectrum is preserved, so revalidation cannot fail beyond roundoff.
    return BlockPSD(n=b.n, A=b.A, X=X, B=b.B, lambda_min=b.lambda_min)
