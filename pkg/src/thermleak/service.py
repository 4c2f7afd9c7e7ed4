"""Estimation service: handler functions plus the FastAPI wrapper.

The handlers are plain functions over the pydantic schemas so the CLI can
call them in-process; the FastAPI app is a thin routing layer on top.
Results are deterministic functions of the request payload.
"""
from __future__ import annotations

from dataclasses import replace

from fastapi import FastAPI, HTTPException

from . import cosim as cosim_mod
from . import project as prj
from . import verify as verify_mod
from .errors import ProjectValidationError, ThermleakError, TopologyError
from .leakage import gate_static_power
from .schemas import (
    CosimIteration,
    CosimRequest,
    CosimResponse,
    GridModel,
    LeakageIssue,
    LeakageRequest,
    LeakageResponse,
    LeakageRow,
    ThermalRequest,
    ThermalResponse,
    VerifyCaseModel,
    VerifyCheckModel,
    VerifyRequest,
    VerifyResponse,
    VerifyRowModel,
)
from .thermal import ThermalGrid, sample_grid


def _grid_model(grid: ThermalGrid) -> GridModel:
    return GridModel(
        nx=grid.nx,
        ny=grid.ny,
        dx=grid.dx,
        dy=grid.dy,
        mode=grid.mode,
        values=[[float(v) for v in row] for row in grid.values],
    )


def _gate_vectors(project: prj.Project, all_vectors: bool) -> list[tuple[str, str]]:
    """(gate, vector) pairs to report.

    Default reports the vectors instantiated by blocks; with no blocks (a
    pure library project) or with ``all_vectors`` every vector of every
    library gate is enumerated.
    """
    if not all_vectors and project.blocks:
        seen: list[tuple[str, str]] = []
        for blk in project.blocks:
            for gi in blk.gates:
                if (gi.gate, gi.inputs) not in seen:
                    seen.append((gi.gate, gi.inputs))
        return seen
    pairs = []
    for name in sorted(project.gates):
        n = project.gates[name].num_inputs
        for vec in range(2**n):
            bits = "".join(str((vec >> i) & 1) for i in range(n))
            pairs.append((name, bits))
    return pairs


def run_leakage(req: LeakageRequest) -> LeakageResponse:
    project = req.project
    project.validate_cross_references()
    tech = project.technology
    n_params = prj.device_params(tech.nmos, "nmos")
    p_params = prj.device_params(tech.pmos, "pmos")
    temp = req.temp if req.temp is not None else tech.nmos.t_ref
    rows: list[LeakageRow] = []
    issues: list[LeakageIssue] = []
    for gate_name, bits in _gate_vectors(project, req.all_vectors):
        gate = prj.gate_network(gate_name, project.gates[gate_name])
        try:
            res = gate_static_power(
                gate, prj.parse_vector(bits), n_params, p_params, tech.v_dd, temp
            )
        except TopologyError as exc:
            issues.append(LeakageIssue(gate=gate_name, inputs=bits, error=str(exc)))
            continue
        rows.append(
            LeakageRow(
                gate=gate_name,
                inputs=bits,
                side=res.side,
                w_eff_um=res.w_eff / prj.UM,
                i_off_a=res.i_off,
                p_static_w=res.p_static,
            )
        )
    return LeakageResponse(temp=temp, rows=rows, issues=issues)


def run_thermal(req: ThermalRequest) -> ThermalResponse:
    project = req.project
    project.validate_cross_references()
    scene = prj.scene_template(project)
    sources = tuple(
        b.footprint(b.dynamic_power) for b in prj.blocks(project)
    )
    scene = replace(scene, sources=sources)
    grid = sample_grid(scene, req.nx, req.ny, req.mode)
    return ThermalResponse(grid=_grid_model(grid))


def run_cosim(req: CosimRequest) -> CosimResponse:
    project = req.project
    project.validate_cross_references()
    tech = project.technology
    n_params = prj.device_params(tech.nmos, "nmos")
    p_params = prj.device_params(tech.pmos, "pmos")
    scene = prj.scene_template(project)
    blocks = prj.blocks(project)
    config = prj.cosim_config(project)
    if req.max_iter is not None:
        config = replace(config, max_iter=req.max_iter)
    report = cosim_mod.solve(scene, blocks, n_params, p_params, tech.v_dd, config)

    grid = None
    if report.records:
        final = report.records[-1]
        final_sources = tuple(
            b.footprint(b.dynamic_power + final.static_power[b.id]) for b in blocks
        )
        grid = _grid_model(
            sample_grid(replace(scene, sources=final_sources), req.nx, req.ny, req.grid_mode)
        )
        final_static = final.static_power
        final_total = final.total_power
    else:
        final_static = {b.id: 0.0 for b in blocks}
        final_total = 0.0
    return CosimResponse(
        status=report.status,
        iterations=report.iterations,
        final_temps=report.final_temps,
        final_static_power=final_static,
        final_total_power=final_total,
        trace=(
            [
                CosimIteration(
                    index=r.index,
                    block_temps=r.block_temps,
                    static_power=r.static_power,
                    total_power=r.total_power,
                    delta_t_max=r.delta_t_max,
                )
                for r in report.records
            ]
            if req.trace
            else None
        ),
        grid=grid,
    )


def run_verify(req: VerifyRequest) -> VerifyResponse:
    project = req.project
    project.validate_cross_references()
    tech = project.technology
    n_params = prj.device_params(tech.nmos, "nmos")
    cases = verify_mod.run_all(
        n_params, tech.v_dd, tech.nmos.t_ref, tech.k_si
    )
    case_models = [
        VerifyCaseModel(
            name=c.name,
            max_rel_err=c.max_rel_err,
            passed=c.passed,
            rows=[
                VerifyRowModel(
                    label=r.label,
                    model_value=r.model,
                    reference=r.reference,
                    rel_err=r.rel_err,
                    tolerance=r.tolerance,
                    passed=r.passed,
                )
                for r in c.rows
            ],
            checks=[VerifyCheckModel(name=n, passed=ok) for n, ok in c.extra_checks],
        )
        for c in cases
    ]
    return VerifyResponse(cases=case_models, all_passed=all(c.passed for c in case_models))


def create_app() -> FastAPI:
    app = FastAPI(
        title="thermleak",
        description="Analytic leakage/thermal estimation service for digital ICs",
    )

    @app.exception_handler(ProjectValidationError)
    async def _validation_handler(request, exc):  # pragma: no cover - fastapi glue
        raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/leakage", response_model=LeakageResponse)
    def leakage(req: LeakageRequest) -> LeakageResponse:
        return _guarded(run_leakage, req)

    @app.post("/thermal", response_model=ThermalResponse)
    def thermal(req: ThermalRequest) -> ThermalResponse:
        return _guarded(run_thermal, req)

    @app.post("/cosim", response_model=CosimResponse)
    def cosim(req: CosimRequest) -> CosimResponse:
        return _guarded(run_cosim, req)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        return _guarded(run_verify, req)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    return app


def _guarded(handler, req):
    try:
        return handler(req)
    except ProjectValidationError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except ThermleakError as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc


app = create_app()
