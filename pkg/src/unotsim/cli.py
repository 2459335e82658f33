"""Command-line front end; a thin client of the HTTP service.

Requests go to the in-process app by default, or to a running server with
--server. Exit codes: 0 success, 1 verification failure, 2 usage/config
errors (including I/O problems and capacity bounds).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

from . import report
from .errors import UnotSimError

REQUEST_TIMEOUT = 900.0


class CliError(Exception):
    """Fatal CLI problem; message printed, exit status 2."""


async def _post_async(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        async with httpx.AsyncClient(base_url=server, timeout=REQUEST_TIMEOUT) as client:
            return await client.post(path, json=payload)
    from .service.app import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(
        transport=transport, base_url="http://unotsim.internal", timeout=REQUEST_TIMEOUT
    ) as client:
        return await client.post(path, json=payload)


def call_service(server: str | None, path: str, payload: dict) -> dict:
    try:
        response = asyncio.run(_post_async(server, path, payload))
    except httpx.HTTPError as exc:
        raise CliError(f"could not reach service: {exc}") from exc
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise CliError(f"service rejected the request ({response.status_code}): {detail}")
    return response.json()


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {out_path!r}: {exc}") from exc


def _cmd_sweep(args) -> int:
    try:
        config = report.SweepConfig(
            n_min=args.n_min,
            n_max=args.n_max,
            m_min=args.m_min,
            m_max=args.m_max,
            samples=args.samples,
            seed=args.seed,
            output_format=args.format,
            output_path=args.out,
        )
    except UnotSimError as exc:
        raise CliError(str(exc)) from exc
    payload = {
        "n_min": config.n_min,
        "n_max": config.n_max,
        "m_min": config.m_min,
        "m_max": config.m_max,
        "samples": config.samples,
        "seed": config.seed,
    }
    rows = call_service(args.server, "/sweep", payload)["rows"]
    _write_output(report.render_sweep(rows, config), config.output_path)
    return 0


def _cmd_verify(args) -> int:
    payload = {"level": args.level, "seed": args.seed}
    result = call_service(args.server, "/verify", payload)
    for check in result["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        line = (
            f"{status}  {check['name']}: deviation {check['deviation']:.3e}"
            f" (tolerance {check['tolerance']:.1e})"
        )
        if check.get("detail"):
            line += f" [{check['detail']}]"
        print(line)
    failed = [c for c in result["checks"] if not c["passed"]]
    if failed:
        print(f"{result['level']}: {len(failed)} of {len(result['checks'])} checks FAILED")
        return 1
    print(f"{result['level']}: all {len(result['checks'])} checks passed")
    return 0


REAL_COLUMNS = ["N", "quantum", "classical", "gap"]


def _render_real(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        out_rows = [
            {
                "N": int(r["N"]),
                "quantum": report.format_real(r["quantum"]),
                "classical": report.format_real(r["classical"]),
                "gap": report.format_real(r["gap"]),
            }
            for r in rows
        ]
        return json.dumps({"columns": REAL_COLUMNS, "rows": out_rows}, indent=2) + "\n"
    lines = [",".join(REAL_COLUMNS)]
    for r in rows:
        lines.append(
            ",".join(
                [str(int(r["N"]))]
                + [report.format_real(r[c]) for c in ("quantum", "classical", "gap")]
            )
        )
    return "\n".join(lines) + "\n"


def _cmd_report_real(args) -> int:
    rows = call_service(args.server, "/report-real", {"n_min": args.n_min, "n_max": args.n_max})[
        "rows"
    ]
    _write_output(_render_real(rows, args.format), args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("unotsim.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unotsim",
        description="Universal qubit-complementation gate simulator and verifier",
    )
    parser.add_argument("--server", default=None, help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="fidelity table over a range of (N, M)")
    sweep.add_argument("--n-min", type=int, default=1)
    sweep.add_argument("--n-max", type=int, default=3)
    sweep.add_argument("--m-min", type=int, default=1)
    sweep.add_argument("--m-max", type=int, default=2)
    sweep.add_argument("--samples", type=int, default=0, help="monte-carlo samples per row (0 = analytic only)")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--out", default=None, help="output file (default: stdout)")
    sweep.set_defaults(func=_cmd_sweep)

    ver = sub.add_parser("verify", help="run the invariant suites")
    ver.add_argument("--level", choices=("quick", "full"), default="quick")
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=_cmd_verify)

    real = sub.add_parser("report-real", help="quantum vs estimation fidelity for real-amplitude inputs")
    real.add_argument("--n-min", type=int, default=1)
    real.add_argument("--n-max", type=int, default=10)
    real.add_argument("--format", choices=("csv", "json"), default="csv")
    real.add_argument("--out", default=None)
    real.set_defaults(func=_cmd_report_real)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
