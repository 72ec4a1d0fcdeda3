"""Wire formats for the service and CLI.

Complex matrices travel as row-major nested arrays of [re, im] pairs:
{"n": 2, "A": [[[1,0],[0,0]],[[0,0],[1,0]]], "X": ..., "B": ...}.
"""

from __future__ import annotations

from dataclasses import asdict

import numpy as np
from pydantic import BaseModel, Field

from . import matcore
from .matcore import MatrixError

MatrixRows = list[list[list[float]]]


def encode_matrix(M) -> MatrixRows:
    M = np.asarray(M, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in M]


def decode_matrix(rows, field: str) -> np.ndarray:
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MatrixError(f"field {field!r}: not a nested numeric array ({exc})")
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise MatrixError(
            f"field {field!r}: expected rows of [re, im] pairs, got shape {arr.shape}"
        )
    return matcore.as_matrix(arr[:, :, 0] + 1j * arr[:, :, 1])


class BlockMatrixIn(BaseModel):
    """JSON form of a candidate positive block matrix."""

    n: int = Field(ge=1)
    A: MatrixRows
    X: MatrixRows
    B: MatrixRows

    def to_block_psd(self, psd_tol: float = matcore.PSD_RTOL) -> matcore.BlockPSD:
        A = decode_matrix(self.A, "A")
        X = decode_matrix(self.X, "X")
        B = decode_matrix(self.B, "B")
        for name, M in (("A", A), ("X", X), ("B", B)):
            if M.shape != (self.n, self.n):
                raise MatrixError(
                    f"field {name!r}: expected {self.n}x{self.n}, got {M.shape}"
                )
        return matcore.block_psd(A, X, B, psd_tol)


def block_to_json(b: matcore.BlockPSD) -> dict:
    return {
        "n": b.n,
        "A": encode_matrix(b.A),
        "X": encode_matrix(b.X),
        "B": encode_matrix(b.B),
    }


class RangeRequest(BaseModel):
    X: MatrixRows
    m: int = 720
    boundary: bool = False


class BoundaryPoint(BaseModel):
    theta: float
    re: float
    im: float


class RangeSummaryModel(BaseModel):
    d_lower: float
    d_upper: float
    width_lower: float
    width_upper: float
    radius_lower: float
    radius_upper: float
    diam_lower: float
    diam_upper: float
    contains_zero: str


class RangeResponse(BaseModel):
    summary: RangeSummaryModel
    boundary: list[BoundaryPoint] | None = None
    config: dict


class CheckReportModel(BaseModel):
    claim: str
    digest: dict
    left: float | None = None
    right: float | None = None
    slack: float
    verdict: str
    notes: str = ""
    details: dict = {}


def report_to_model(report) -> CheckReportModel:
    return CheckReportModel(**asdict(report))


class VerifyRequest(BaseModel):
    block: BlockMatrixIn
    m: int = 720
    psd_tol: float = matcore.PSD_RTOL
    check_tol: float | None = None  # absolute; default derived from the trace


class VerifyResponse(BaseModel):
    all_hold: bool
    reports: list[CheckReportModel]
    config: dict


class TraceResponse(BaseModel):
    report: CheckReportModel
    config: dict


class SweepRequest(BaseModel):
    family: str
    n: int = Field(default=4, ge=1)
    seed: int = 0
    count: int = Field(default=500)
    rank: int | None = None
    alpha: float | None = None
    m: int = 720
    check_tol: float | None = None


class SweepFailure(BaseModel):
    seed: int
    claim: str
    slack: float


class SweepResponse(BaseModel):
    all_hold: bool
    count: int
    min_slack_per_claim: dict[str, float]
    failures: list[SweepFailure]
    config: dict


class AlphaDemoRequest(BaseModel):
    alphas: list[float]
    m: int = 720


class AlphaDemoRow(BaseModel):
    alpha: float
    diam_full: float
    diam_block_diag: float
    difference: float
    d: float
    rho: float
    notes: str


class AlphaDemoResponse(BaseModel):
    rows: list[AlphaDemoRow]
    config: dict
