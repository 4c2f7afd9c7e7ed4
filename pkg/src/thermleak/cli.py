"""Command-line client of the estimation service.

Subcommands mirror the service endpoints one-to-one: `leakage`, `thermal`,
`cosim` and `verify` build the endpoint's request model from a project file
plus flags and render the response; by default the handler runs in-process,
with `--server URL` the same payload goes over HTTP.  `serve` starts the
service.

Exit codes: 0 success/converged, 2 validation error, 3 runaway or
non-convergence (and failed verification), 4 internal numerical failure.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import gridfile
from .errors import ProjectValidationError, ThermleakError
from .project import load_project
from .schemas import (
    CosimRequest,
    CosimResponse,
    GridModel,
    LeakageRequest,
    LeakageResponse,
    ThermalRequest,
    ThermalResponse,
    VerifyRequest,
    VerifyResponse,
)
from .thermal import ThermalGrid

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NOT_CONVERGED = 3
EXIT_NUMERICAL = 4


def _post(server: str, endpoint: str, request, response_cls):
    import httpx

    resp = httpx.post(
        server.rstrip("/") + endpoint,
        json=request.model_dump(mode="json"),
        timeout=300.0,
    )
    if resp.status_code == 422:
        raise ProjectValidationError(resp.text)
    resp.raise_for_status()
    return response_cls.model_validate(resp.json())


def _dispatch(args, endpoint: str, request, handler, response_cls):
    if args.server:
        return _post(args.server, endpoint, request, response_cls)
    return handler(request)


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _grid_from_model(g: GridModel) -> ThermalGrid:
    return ThermalGrid(
        nx=g.nx, ny=g.ny, dx=g.dx, dy=g.dy, values=np.array(g.values), mode=g.mode
    )


def _leakage_csv(resp: LeakageResponse) -> str:
    lines = [f"# temp={resp.temp!r}", "gate,inputs,side,w_eff_um,i_off_a,p_static_w"]
    for r in resp.rows:
        lines.append(
            f"{r.gate},{r.inputs},{r.side},{r.w_eff_um!r},{r.i_off_a!r},{r.p_static_w!r}"
        )
    return "\n".join(lines) + "\n"


def _verify_text(resp: VerifyResponse) -> str:
    lines = []
    for case in resp.cases:
        lines.append(f"== {case.name}: {'PASS' if case.passed else 'FAIL'} "
                     f"(max rel err {case.max_rel_err:.4g})")
        for r in case.rows:
            lines.append(
                f"  [{'ok' if r.passed else 'XX'}] {r.label}: "
                f"model={r.model_value!r} ref={r.reference!r} "
                f"rel_err={r.rel_err:.4g} tol={r.tolerance:g}"
            )
        for chk in case.checks:
            lines.append(f"  [{'ok' if chk.passed else 'XX'}] {chk.name}")
    lines.append(f"overall: {'PASS' if resp.all_passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def cmd_leakage(args) -> int:
    from .service import run_leakage

    project = load_project(args.project)
    req = LeakageRequest(
        project=project, temp=args.temp, all_vectors=args.all_vectors
    )
    resp = _dispatch(args, "/leakage", req, run_leakage, LeakageResponse)
    for issue in resp.issues:
        print(
            f"warning: gate {issue.gate} inputs {issue.inputs}: {issue.error}",
            file=sys.stderr,
        )
    _write(_leakage_csv(resp), args.output)
    return EXIT_OK


def cmd_thermal(args) -> int:
    from .service import run_thermal

    project = load_project(args.project)
    req = ThermalRequest(project=project, nx=args.nx, ny=args.ny, mode=args.mode)
    resp = _dispatch(args, "/thermal", req, run_thermal, ThermalResponse)
    _write(gridfile.grid_to_csv(_grid_from_model(resp.grid)), args.output)
    return EXIT_OK


def cmd_cosim(args) -> int:
    from .service import run_cosim

    project = load_project(args.project)
    req = CosimRequest(
        project=project,
        trace=args.trace,
        max_iter=args.max_iter,
        nx=args.nx,
        ny=args.ny,
    )
    resp = _dispatch(args, "/cosim", req, run_cosim, CosimResponse)
    report = resp.model_dump(exclude={"grid"})
    if not args.trace:
        report.pop("trace")
    import json

    _write(json.dumps(report, indent=2, sort_keys=True) + "\n", args.output)
    if args.grid and resp.grid is not None:
        gridfile.write_grid(_grid_from_model(resp.grid), args.grid)
    return EXIT_OK if resp.status == "converged" else EXIT_NOT_CONVERGED


def cmd_verify(args) -> int:
    from .service import run_verify

    project = load_project(args.project)
    resp = _dispatch(args, "/verify", VerifyRequest(project=project), run_verify, VerifyResponse)
    _write(_verify_text(resp), args.output)
    return EXIT_OK if resp.all_passed else EXIT_NOT_CONVERGED


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermleak",
        description="Analytic electro-thermal leakage estimation for digital ICs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("project", help="project JSON file")
        p.add_argument("--server", help="remote service URL (default: in-process)")
        p.add_argument("-o", "--output", help="output file (default: stdout)")

    p = sub.add_parser("leakage", help="per-gate static leakage table")
    add_common(p)
    p.add_argument("--temp", type=float, help="evaluation temperature, K")
    p.add_argument(
        "--all-vectors", action="store_true", help="enumerate every input vector"
    )
    p.set_defaults(func=cmd_leakage)

    p = sub.add_parser("thermal", help="dynamic-power-only thermal map")
    add_common(p)
    p.add_argument("--nx", type=int, default=64)
    p.add_argument("--ny", type=int, default=64)
    p.add_argument("--mode", choices=["rise", "absolute"], default="rise")
    p.set_defaults(func=cmd_thermal)

    p = sub.add_parser("cosim", help="self-consistent electro-thermal solve")
    add_common(p)
    p.add_argument("--trace", action="store_true", help="include per-iteration records")
    p.add_argument("--max-iter", type=int, help="override the project iteration budget")
    p.add_argument("--grid", help="write the final temperature grid CSV here")
    p.add_argument("--nx", type=int, default=64)
    p.add_argument("--ny", type=int, default=64)
    p.set_defaults(func=cmd_cosim)

    p = sub.add_parser("verify", help="model-vs-oracle comparison tables")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProjectValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ThermleakError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
