"""Command-line client.

``run`` posts the request to the HTTP service and writes the returned
files; by default the service runs in-process, ``--server`` points the
same client at a live instance.  Exit codes: 0 success, 2 configuration
error, 3 solver failure or unreachable server.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import httpx

from .scenarios import SCENARIOS

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _schema_epilog() -> str:
    lines = ["scenario output files:"]
    for name in sorted(SCENARIOS):
        _, desc, columns = SCENARIOS[name]
        lines.append(f"  {name:<20s} {desc}")
        lines.append(f"  {'':<20s} {columns}")
    lines.append("")
    lines.append("numbers are written with 12 significant digits and are "
                 "byte-identical across runs")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="packetatom",
        description="single-photon packet vs excited atom: kinetics, "
                    "spectra and the semiclassical comparison")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser(
        "run", help="run one scenario and write its files",
        epilog=_schema_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter)
    run.add_argument("scenario", choices=sorted(SCENARIOS),
                     help="which scenario to run")
    run.add_argument("--config", metavar="FILE",
                     help="INI file overriding the built-in defaults")
    run.add_argument("--out", metavar="DIR", default=".",
                     help="directory for the output files (default: .)")
    run.add_argument("--svg", action="store_true",
                     help="also render an SVG figure")
    run.add_argument("--set", metavar="KEY=VALUE", action="append",
                     dest="overrides", default=[],
                     help="override one config entry, e.g. atom.gamma=0.02; "
                          "repeatable")
    run.add_argument("--server", metavar="URL",
                     help="POST to this service instead of running "
                          "in-process")

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _post_run(server: str | None, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post("/run", json=payload)

    import asyncio

    from .service import create_app

    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://packetatom",
                                     timeout=None) as client:
            return await client.post("/run", json=payload)

    return asyncio.run(go())


def run_command(args) -> int:
    payload = {"scenario": args.scenario, "overrides": args.overrides,
               "svg": args.svg}
    if args.config:
        try:
            payload["config_text"] = Path(args.config).read_text()
        except OSError as exc:
            print(f"config error: cannot read {args.config}: {exc}",
                  file=sys.stderr)
            return EXIT_CONFIG

    try:
        resp = _post_run(args.server, payload)
    except httpx.HTTPError as exc:
        print(f"solver error: request failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        if resp.status_code in (400, 422):
            print(f"config error: {detail}", file=sys.stderr)
            return EXIT_CONFIG
        print(f"solver error: {detail}", file=sys.stderr)
        return EXIT_SOLVER

    body = resp.json()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in sorted(body["files"]):
        path = out_dir / name
        path.write_bytes(body["files"][name].encode("utf-8"))
        print(f"wrote {path}")
    print(body["summary"], end="")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("packetatom.service:app", host=args.host, port=args.port)
        return EXIT_OK
    return run_command(args)


def entry() -> None:
    sys.exit(main())
