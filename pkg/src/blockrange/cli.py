"""Command-line front end; a thin client of the service app.

By default requests run against the in-process app (no network); pass
--server to target a running instance instead. Exit codes are a contract:
0 everything holds, 1 a checker fails, 2 usage or parse error,
3 numerical failure, 4 positivity validation failure.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click
import httpx
from fastapi.testclient import TestClient

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_VALIDATION = 4

_ERROR_EXIT = {
    "parse": EXIT_USAGE,
    "numerical": EXIT_NUMERICAL,
    "psd-validation": EXIT_VALIDATION,
}


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    from .service import app

    return TestClient(app)


def _post(server: str | None, path: str, payload: dict):
    with _client(server) as client:
        resp = client.post(path, json=payload)
    if resp.status_code == 200:
        return resp.json()
    if resp.status_code == 422:
        click.echo(f"error: invalid request: {resp.text}", err=True)
        sys.exit(EXIT_USAGE)
    try:
        detail = resp.json().get("detail", {})
    except ValueError:
        detail = {}
    code = detail.get("code", "numerical")
    message = detail.get("message", resp.text)
    if "lambda_min" in detail:
        message += f" (lambda_min={detail['lambda_min']:.6e})"
    click.echo(f"error [{code}]: {message}", err=True)
    sys.exit(_ERROR_EXIT.get(code, EXIT_NUMERICAL))


def _read_json(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error [parse]: cannot read input: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
        if not text.endswith("\n"):
            click.echo()


def _reports_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["claim", "slack", "verdict", "notes"])
    for r in reports:
        writer.writerow([r["claim"], r["slack"], r["verdict"], r["notes"]])
    return buf.getvalue()


@click.group()
@click.option("--server", default=None, help="Base URL of a running service.")
@click.pass_context
def main(ctx, server):
    """Certified numerical-range brackets and block-matrix inequality checks."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command("range")
@click.argument("input_path", default="-")
@click.option("--m", default=720, show_default=True, help="Angle count (even, >= 8).")
@click.option("--boundary", is_flag=True, help="Also emit boundary witnesses as CSV.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", default=None, help="Output path (default stdout).")
@click.pass_context
def cmd_range(ctx, input_path, m, boundary, fmt, out):
    """Bracket distance-to-zero, width, radius, and diameter of W(X).

    INPUT is a JSON file ('-' for stdin) holding either {"X": rows} or a
    full block object; rows are nested [re, im] pairs.
    """
    data = _read_json(input_path)
    rows = data.get("X", data) if isinstance(data, dict) else data
    body = _post(
        ctx.obj["server"], "/range", {"X": rows, "m": m, "boundary": boundary}
    )
    if boundary and fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["theta", "re", "im"])
        for p in body["boundary"] or []:
            writer.writerow([p["theta"], p["re"], p["im"]])
        _emit(buf.getvalue(), out)
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        summary = body["summary"]
        writer.writerow(sorted(summary))
        writer.writerow([summary[k] for k in sorted(summary)])
        _emit(buf.getvalue(), out)
    else:
        _emit(json.dumps(body, indent=2), out)
    sys.exit(EXIT_OK)


def _verify_like(ctx, verb: str, input_path, m, tol_psd, tol_check, fmt, out):
    data = _read_json(input_path)
    payload = {
        "block": data,
        "m": m,
        "psd_tol": tol_psd,
        "check_tol": tol_check,
    }
    body = _post(ctx.obj["server"], f"/{verb}", payload)
    if verb == "verify":
        reports = body["reports"]
        ok = body["all_hold"]
    else:
        reports = [body["report"]]
        ok = body["report"]["verdict"] == "holds"
    if fmt == "csv":
        _emit(_reports_csv(reports), out)
    else:
        _emit(json.dumps(body, indent=2), out)
    sys.exit(EXIT_OK if ok else EXIT_CHECK_FAILED)


@main.command("verify")
@click.argument("input_path", default="-")
@click.option("--m", default=720, show_default=True)
@click.option("--tol-psd", default=1e-9, show_default=True)
@click.option("--tol-check", default=None, type=float, help="Absolute check tolerance.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", default=None)
@click.pass_context
def cmd_verify(ctx, input_path, m, tol_psd, tol_check, fmt, out):
    """Run every checker on one block-matrix instance."""
    _verify_like(ctx, "verify", input_path, m, tol_psd, tol_check, fmt, out)


@main.command("trace")
@click.argument("input_path", default="-")
@click.option("--m", default=720, show_default=True)
@click.option("--tol-psd", default=1e-9, show_default=True)
@click.option("--tol-check", default=None, type=float)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", default=None)
@click.pass_context
def cmd_trace(ctx, input_path, m, tol_psd, tol_check, fmt, out):
    """Replay the constructive majorization proof on one instance."""
    _verify_like(ctx, "trace", input_path, m, tol_psd, tol_check, fmt, out)


@main.command("sweep")
@click.option("--family", required=True)
@click.option("--n", default=4, show_default=True)
@click.option("--count", default=500, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--rank", default=None, type=int)
@click.option("--alpha", default=None, type=float)
@click.option("--m", default=720, show_default=True)
@click.option("--tol-check", default=None, type=float)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", default=None)
@click.pass_context
def cmd_sweep(ctx, family, n, count, seed, rank, alpha, m, tol_check, fmt, out):
    """Generate seeded instances and run every checker on each."""
    payload = {
        "family": family,
        "n": n,
        "count": count,
        "seed": seed,
        "rank": rank,
        "alpha": alpha,
        "m": m,
        "check_tol": tol_check,
    }
    body = _post(ctx.obj["server"], "/sweep", payload)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["claim", "min_slack"])
        for claim, slack in sorted(body["min_slack_per_claim"].items()):
            writer.writerow([claim, slack])
        _emit(buf.getvalue(), out)
    else:
        _emit(json.dumps(body, indent=2), out)
    if not body["all_hold"]:
        for f in body["failures"]:
            click.echo(
                f"FAIL seed={f['seed']} claim={f['claim']} slack={f['slack']:.3e}",
                err=True,
            )
        sys.exit(EXIT_CHECK_FAILED)
    sys.exit(EXIT_OK)


@main.command("demo-alpha")
@click.option("--alpha", "alphas", multiple=True, type=float, required=True)
@click.option("--m", default=720, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", default=None)
@click.pass_context
def cmd_demo_alpha(ctx, alphas, m, fmt, out):
    """Tabulate the shrinking diameter-gap ratio over a list of alphas."""
    body = _post(ctx.obj["server"], "/demo-alpha", {"alphas": list(alphas), "m": m})
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        cols = ["alpha", "diam_full", "diam_block_diag", "difference", "d", "rho"]
        writer.writerow(cols)
        for row in body["rows"]:
            writer.writerow([row[c] for c in cols])
        _emit(buf.getvalue(), out)
    else:
        _emit(json.dumps(body, indent=2), out)
    sys.exit(EXIT_OK if body["config"].get("verified") else EXIT_CHECK_FAILED)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
