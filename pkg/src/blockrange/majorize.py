"""Ky Fan norms/anti-norms, (weak) majorization, and pinchings.

All predicates return a MajorizationReport carrying the full partial-sum
evidence so verdicts can be audited downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .matcore import MatrixError, PositivityError

MAJ_RTOL = 1e-9


class MajorizationFailure(ValueError):
    """An input pair that must majorize does not; carries the report."""

    def __init__(self, message: str, report: "MajorizationReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class MajorizationReport:
    """Partial-sum evidence for a majorization / dominance claim.

    min_slack is oriented so that >= -tol means the claim holds at every
    partial sum index; worst_k is the 1-based index attaining it.
    """

    relation: str  # "weak-majorization" | "majorization" | "antinorm-dominance"
    left_sums: list = field(default_factory=list)
    right_sums: list = field(default_factory=list)
    min_slack: float = 0.0
    trace_gap: float = 0.0
    worst_k: int = 1
    verdict: str = "holds"  # "holds" | "fails" | "holds-weakly-only"


def default_tol(B) -> float:
    return MAJ_RTOL * max(1.0, abs(float(np.trace(np.asarray(B)).real)))


def _psd_spectrum(A, what: str) -> np.ndarray:
    w = matcore.eigvals_desc(A)
    tol = matcore.PSD_RTOL * max(1.0, float(w[0]) if w.size else 1.0)
    if w[-1] < -tol:
        raise PositivityError(f"{what} must be PSD (lambda_min={w[-1]:.3e})", w[-1])
    return w


def ky_fan_norm(A, k: int) -> float:
    """Sum of the k largest eigenvalues of a PSD matrix."""
    w = _psd_spectrum(A, "ky_fan_norm argument")
    if not 1 <= k <= len(w):
        raise MatrixError(f"k={k} out of range 1..{len(w)}")
    return float(np.sum(w[:k]))


def ky_fan_antinorm(A, k: int) -> float:
    """Sum of the k smallest eigenvalues of a PSD matrix."""
    w = _psd_spectrum(A, "ky_fan_antinorm argument")
    if not 1 <= k <= len(w):
        raise MatrixError(f"k={k} out of range 1..{len(w)}")
    return float(np.sum(w[::-1][:k]))


def _partial_sums_desc(w: np.ndarray) -> np.ndarray:
    return np.cumsum(np.sort(w)[::-1])


def weak_majorization_spectra(
    wa: np.ndarray, wb: np.ndarray, tol: float, relation: str = "weak-majorization"
) -> MajorizationReport:
    """Partial-sum comparison of two spectra (descending sums, A <=_w B)."""
    if len(wa) != len(wb):
        raise MatrixError(f"order mismatch: {len(wa)} vs {len(wb)}")
    left = _partial_sums_desc(np.asarray(wa, dtype=float))
    right = _partial_sums_desc(np.asarray(wb, dtype=float))
    slacks = right - left
    worst = int(np.argmin(slacks))
    min_slack = float(slacks[worst])
    trace_gap = float(left[-1] - right[-1])
    verdict = "holds" if min_slack >= -tol else "fails"
    return MajorizationReport(
        relation=relation,
        left_sums=[float(v) for v in left],
        right_sums=[float(v) for v in right],
        min_slack=min_slack,
        trace_gap=trace_gap,
        worst_k=worst + 1,
        verdict=verdict,
    )


def weak_majorization(A, B, tol: float | None = None) -> MajorizationReport:
    """A <=_w B: every Ky Fan partial sum of A is at most that of B."""
    if tol is None:
        tol = default_tol(B)
    return weak_majorization_spectra(
        matcore.eigvals_desc(A), matcore.eigvals_desc(B), tol
    )


def majorization_spectra(wa, wb, tol: float) -> MajorizationReport:
    rep = weak_majorization_spectra(wa, wb, tol, relation="majorization")
    if rep.verdict == "holds" and abs(rep.trace_gap) > tol:
        return MajorizationReport(
            relation=rep.relation,
            left_sums=rep.left_sums,
            right_sums=rep.right_sums,
            min_slack=rep.min_slack,
            trace_gap=rep.trace_gap,
            worst_k=rep.worst_k,
            verdict="holds-weakly-only",
        )
    return rep


def majorization(A, B, tol: float | None = None) -> MajorizationReport:
    """A < B: weak majorization plus equality of traces."""
    if tol is None:
        tol = default_tol(B)
    return majorization_spectra(
        matcore.eigvals_desc(A), matcore.eigvals_desc(B), tol
    )


def antinorm_dominance_spectra(wa, wb, tol: float) -> MajorizationReport:
    """Every Ky Fan anti-norm of A is at least that of B."""
    if len(wa) != len(wb):
        raise MatrixError(f"order mismatch: {len(wa)} vs {len(wb)}")
    left = np.cumsum(np.sort(np.asarray(wa, dtype=float)))
    right = np.cumsum(np.sort(np.asarray(wb, dtype=float)))
    slacks = left - right
    worst = int(np.argmin(slacks))
    min_slack = float(slacks[worst])
    trace_gap = float(left[-1] - right[-1])
    verdict = "holds" if min_slack >= -tol else "fails"
    return MajorizationReport(
        relation="antinorm-dominance",
        left_sums=[float(v) for v in left],
        right_sums=[float(v) for v in right],
        min_slack=min_slack,
        trace_gap=trace_gap,
        worst_k=worst + 1,
        verdict=verdict,
    )


def antinorm_dominance(A, B, tol: float | None = None) -> MajorizationReport:
    if tol is None:
        tol = default_tol(B)
    return antinorm_dominance_spectra(
        matcore.eigvals_desc(A), matcore.eigvals_desc(B), tol
    )


def pinch_to_diagonal(H, basis, tol: float | None = None) -> np.ndarray:
    """Diagonal pinching of H in an orthonormal basis (columns of `basis`).

    Extracting a diagonal is doubly stochastic, so the result is always
    majorized by H.
    """
    H = matcore.require_hermitian(H)
    V = np.asarray(basis, dtype=complex)
    n = H.shape[0]
    if V.shape != (n, n):
        raise MatrixError(f"basis must be {n}x{n}, got {V.shape}")
    if tol is None:
        tol = 1e-8
    gram = matcore.adjoint(V) @ V
    if float(np.max(np.abs(gram - np.eye(n)))) > tol:
        raise MatrixError("basis is not orthonormal within tolerance")
    diag = np.einsum("ak,ab,bk->k", V.conj(), H, V).real  # <v_k, H v_k>
    return np.diag(diag).astype(complex)


def block_diag_pinch(M) -> np.ndarray:
    """Zero the off-diagonal n x n blocks of an even-order Hermitian matrix."""
    A, _, _, B = matcore.split_blocks(M)
    n = A.shape[0]
    out = np.zeros_like(np.asarray(M, dtype=complex))
    out[:n, :n] = A
    out[n:, n:] = B
    return out


def direct_sum(*mats) -> np.ndarray:
    """Block-diagonal direct sum of square matrices."""
    mats = [np.asarray(M, dtype=complex) for M in mats]
    total = sum(M.shape[0] for M in mats)
    out = np.zeros((total, total), dtype=complex)
    pos = 0
    for M in mats:
        r = M.shape[0]
        out[pos:pos + r, pos:pos + r] = M
        pos += r
    return out


def lemma1_direct_sum(pairs, tol: float | None = None) -> MajorizationReport:
    """Majorization of direct sums built from per-pair majorizations.

    Each (A_k, B_k) must satisfy A_k < B_k; a failing pair raises
    MajorizationFailure rather than passing through silently. The direct
    sums are then assembled and the combined majorization re-verified.
    """
    if not pairs:
        raise MatrixError("empty pair list")
    for idx, (Ak, Bk) in enumerate(pairs):
        rep = majorization(Ak, Bk, tol)
        if rep.verdict != "holds":
            raise MajorizationFailure(
                f"pair {idx} fails its majorization ({rep.verdict}, "
                f"min_slack={rep.min_slack:.3e})",
                rep,
            )
    left = direct_sum(*(Ak for Ak, _ in pairs))
    right = direct_sum(*(Bk for _, Bk in pairs))
    return majorization(left, right, tol)
