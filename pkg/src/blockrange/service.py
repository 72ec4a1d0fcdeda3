"""FastAPI service exposing the range computations and theorem checkers.

The CLI is a thin client of this app; error codes are part of the
contract: "parse" (bad input), "psd-validation" (a candidate block matrix
fails positivity, with the minimal-eigenvalue witness), and "numerical"
(eigensolver failure).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from fastapi import FastAPI, HTTPException

from . import gen, matcore, numrange, schemas, theorems
from .matcore import EigenSolverError, MatrixError, PositivityError

app = FastAPI(title="blockrange", version="0.1.0")


def _bad_request(code: str, message: str, **extra):
    return HTTPException(status_code=400, detail={"code": code, "message": message, **extra})


def _translate(exc: Exception) -> HTTPException:
    if isinstance(exc, PositivityError):
        return _bad_request("psd-validation", str(exc), lambda_min=exc.lambda_min)
    if isinstance(exc, EigenSolverError):
        return _bad_request("numerical", str(exc))
    if isinstance(exc, MatrixError):
        return _bad_request("parse", str(exc))
    raise exc


def _thread_count() -> int:
    env = os.environ.get("BLOCKRANGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/range", response_model=schemas.RangeResponse)
def range_endpoint(req: schemas.RangeRequest) -> schemas.RangeResponse:
    try:
        X = schemas.decode_matrix(req.X, "X")
        sample = numrange.sample_range(X, req.m)
        d_lo, d_up, verdict = numrange.distance_to_zero(X, req.m, sample)
        w_lo, w_up = numrange.width(X, req.m, sample)
        r_lo, r_up = numrange.numerical_radius(X, req.m, sample)
        dm_lo, dm_up = numrange.diameter(X, req.m, sample)
    except (MatrixError, EigenSolverError) as exc:
        raise _translate(exc)
    summary = numrange.RangeSummary(
        d_lower=d_lo, d_upper=d_up, width_lower=w_lo, width_upper=w_up,
        radius_lower=r_lo, radius_upper=r_up, diam_lower=dm_lo,
        diam_upper=dm_up, contains_zero=verdict,
    )
    boundary = None
    if req.boundary:
        boundary = [
            schemas.BoundaryPoint(
                theta=float(t), re=float(p.real), im=float(p.imag)
            )
            for t, p in zip(sample.angles, sample.witnesses)
        ]
    return schemas.RangeResponse(
        summary=schemas.RangeSummaryModel(**summary.__dict__),
        boundary=boundary,
        config={"m": req.m},
    )


@app.post("/verify", response_model=schemas.VerifyResponse)
def verify_endpoint(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    try:
        b = req.block.to_block_psd(req.psd_tol)
        reports = theorems.run_all_checks(b, req.m, tol=req.check_tol)
    except (MatrixError, EigenSolverError) as exc:
        raise _translate(exc)
    return schemas.VerifyResponse(
        all_hold=all(r.holds for r in reports),
        reports=[schemas.report_to_model(r) for r in reports],
        config={"m": req.m, "psd_tol": req.psd_tol, "n": req.block.n},
    )


@app.post("/trace", response_model=schemas.TraceResponse)
def trace_endpoint(req: schemas.VerifyRequest) -> schemas.TraceResponse:
    try:
        b = req.block.to_block_psd(req.psd_tol)
        report = theorems.proof_trace(b, req.m, tol=req.check_tol)
    except (MatrixError, EigenSolverError) as exc:
        raise _translate(exc)
    return schemas.TraceResponse(
        report=schemas.report_to_model(report),
        config={"m": req.m, "psd_tol": req.psd_tol, "n": req.block.n},
    )


def _sweep_instance(spec: gen.GeneratorSpec, m: int, tol: float | None = None):
    b = gen.generate(spec)
    reports = theorems.run_all_checks(b, m, tol=tol)
    for r in reports:
        r.digest["seed"] = spec.seed
        r.digest["family"] = spec.family
    return reports


@app.post("/sweep", response_model=schemas.SweepResponse)
def sweep_endpoint(req: schemas.SweepRequest) -> schemas.SweepResponse:
    if req.count < 1:
        raise _bad_request("parse", "empty sweep rejected: count must be >= 1")
    try:
        specs = [
            gen.GeneratorSpec(
                family=req.family,
                n=req.n,
                seed=req.seed + i,
                rank=req.rank,
                alpha=req.alpha,
            )
            for i in range(req.count)
        ]
    except MatrixError as exc:
        raise _translate(exc)
    try:
        with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
            per_instance = list(
                pool.map(lambda s: _sweep_instance(s, req.m, req.check_tol), specs)
            )
    except (MatrixError, EigenSolverError) as exc:
        raise _translate(exc)
    min_slack: dict[str, float] = {}
    failures: list[schemas.SweepFailure] = []
    for spec, reports in zip(specs, per_instance):
        for r in reports:
            prev = min_slack.get(r.claim)
            if prev is None or r.slack < prev:
                min_slack[r.claim] = r.slack
            if not r.holds:
                failures.append(
                    schemas.SweepFailure(seed=spec.seed, claim=r.claim, slack=r.slack)
                )
    config = {
        "family": req.family,
        "n": req.n,
        "seed": req.seed,
        "count": req.count,
        "rank": req.rank,
        "alpha": req.alpha,
        "m": req.m,
        "seed_rule": "instance i uses seed = seed + i",
    }
    return schemas.SweepResponse(
        all_hold=not failures,
        count=req.count,
        min_slack_per_claim=min_slack,
        failures=failures,
        config=config,
    )


@app.post("/demo-alpha", response_model=schemas.AlphaDemoResponse)
def demo_alpha_endpoint(req: schemas.AlphaDemoRequest) -> schemas.AlphaDemoResponse:
    rows = []
    try:
        for alpha in req.alphas:
            b = gen.alpha_example(alpha)
            info = theorems.range_info(b, req.m)
            w_full = matcore.eigvals_desc(b.full)
            bd = np.concatenate(
                [matcore.eigvals_desc(b.A), matcore.eigvals_desc(b.B)]
            )
            diam_full = float(w_full[0] - w_full[-1])
            diam_bd = float(np.max(bd) - np.min(bd))
            diff = diam_full - diam_bd
            rho = theorems.compute_rho(b, req.m, info)
            rows.append(
                schemas.AlphaDemoRow(
                    alpha=alpha,
                    diam_full=diam_full,
                    diam_block_diag=diam_bd,
                    difference=diff,
                    d=info.d_lower,
                    rho=rho,
                    notes=(
                        "difference = 2/alpha; rho = difference / (2 d) = 1/alpha "
                        "(the ratio and the raw difference differ by the factor 2d)"
                    ),
                )
            )
    except (MatrixError, EigenSolverError) as exc:
        raise _translate(exc)
    ok = all(
        abs(row.difference - 2.0 / row.alpha) <= 1e-9 for row in rows
    ) and all(
        rows[i].rho > rows[i + 1].rho
        for i in range(len(rows) - 1)
        if rows[i].alpha < rows[i + 1].alpha
    )
    return schemas.AlphaDemoResponse(
        rows=rows, config={"m": req.m, "verified": ok}
    )
