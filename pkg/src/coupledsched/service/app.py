"""HTTP face of the scheduler: generation, solving, validation, rendering.

Every endpoint is stateless; payloads use the same shapes as the JSON
file formats, so a file produced by the CLI can be posted verbatim.
Domain errors (bad parameters, unsupported instance classes, size caps)
come back as 400 with the message in ``detail``.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, experiment, gantt, generators, serialize
from ..approx import approx_solve
from ..errors import CoupledSchedError
from ..exact import exact_optimum
from ..model import Instance, Schedule, classify, makespan, validate
from . import schemas


def _instance_in(payload: schemas.InstancePayload) -> Instance:
    return serialize.instance_from_dict(payload.model_dump(exclude_none=True))


def _instance_out(inst: Instance) -> schemas.InstancePayload:
    return schemas.InstancePayload.model_validate(serialize.instance_to_dict(inst))


def _schedule_out(inst: Instance, schedule: Schedule) -> schemas.SchedulePayload:
    return schemas.SchedulePayload.model_validate(serialize.schedule_to_dict(inst, schedule))


def _original_units(value: int, scale: int) -> str:
    return str(Fraction(value, scale))


def create_app() -> FastAPI:
    app = FastAPI(
        title="coupledsched",
        version=__version__,
        description="Scheduling service for stretched coupled-tasks "
        "with compatibility constraints.",
    )

    @app.exception_handler(CoupledSchedError)
    async def _domain_error(request: Request, exc: CoupledSchedError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": str(exc), "error_kind": type(exc).__name__},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/generate/tightness", response_model=schemas.InstanceEnvelope)
    def generate_tightness() -> schemas.InstanceEnvelope:
        return schemas.InstanceEnvelope(instance=_instance_out(generators.gen_tightness()))

    @app.post("/generate/3dm", response_model=schemas.Generate3dmResponse)
    def generate_3dm(req: schemas.Generate3dmRequest) -> schemas.Generate3dmResponse:
        if (req.source is None) == (req.random_n is None):
            raise CoupledSchedError("give exactly one of source or random_n")
        if req.source is not None:
            src = serialize.threedm_from_dict(req.source.model_dump())
        else:
            src = generators.random_3dm2(req.random_n, req.seed)
        inst, target = generators.gen_3dm(src, req.eps_num, req.eps_den)
        return schemas.Generate3dmResponse(
            instance=_instance_out(inst),
            source=schemas.ThreeDMSourcePayload.model_validate(serialize.threedm_to_dict(src)),
            target=schemas.ThreeDMTargetPayload(
                n=target.n,
                eps_num=target.eps_num,
                eps_den=target.eps_den,
                scale=target.scale,
                value_at_zero=target.value(0),
            ),
        )

    @app.post("/generate/pit", response_model=schemas.GeneratePitResponse)
    def generate_pit(req: schemas.GeneratePitRequest) -> schemas.GeneratePitResponse:
        if (req.source is None) == (req.random_q is None):
            raise CoupledSchedError("give exactly one of source or random_q")
        if req.source is not None:
            src = serialize.tripartite_from_dict(req.source.model_dump())
        else:
            src = generators.random_tripartite(req.random_q, req.density, req.seed)
        inst, target = generators.gen_pit(src)
        return schemas.GeneratePitResponse(
            instance=_instance_out(inst),
            source=schemas.TripartiteSourcePayload.model_validate(
                serialize.tripartite_to_dict(src)
            ),
            target_makespan=target,
        )

    @app.post("/generate/random", response_model=schemas.InstanceEnvelope)
    def generate_random(req: schemas.GenerateRandomRequest) -> schemas.InstanceEnvelope:
        inst = generators.gen_random_quasi_split(
            req.nx, req.ny, req.alpha_y, req.density, req.seed
        )
        return schemas.InstanceEnvelope(instance=_instance_out(inst))

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify_instance(req: schemas.InstanceEnvelope) -> schemas.ClassifyResponse:
        report = classify(_instance_in(req.instance))
        return schemas.ClassifyResponse(
            kind=report.kind,
            stretch_class_counts=report.stretch_class_counts,
            degree_ranges=report.degree_ranges,
            x_connected=report.x_connected,
            x_complete=report.x_complete,
            y_independent=report.y_independent,
        )

    @app.post("/solve", response_model=schemas.SolveResponse)
    def solve(req: schemas.SolveRequest) -> schemas.SolveResponse:
        inst = _instance_in(req.instance)
        if req.algo == "approx":
            sol = approx_solve(inst)
            return schemas.SolveResponse(
                algo="approx",
                makespan=sol.makespan,
                scale=inst.scale,
                makespan_original=_original_units(sol.makespan, inst.scale),
                schedule=_schedule_out(inst, sol.schedule),
                counts=schemas.ApproxCountsPayload(f=sol.f, m=sol.m, s=sol.s),
                bound_value=sol.bound_value,
                bound_value_normalized=sol.bound_value_normalized,
                nest_assignment=sol.nest_assignment,
            )
        sol = exact_optimum(inst, max_x=req.max_x)
        dec = sol.decomposition
        return schemas.SolveResponse(
            algo="exact",
            makespan=sol.optimum,
            scale=inst.scale,
            makespan_original=_original_units(sol.optimum, inst.scale),
            schedule=_schedule_out(inst, sol.schedule),
            decomposition=schemas.DecompositionPayload(
                nested_pairs=list(dec.nested_pairs),
                nested_singles=list(dec.nested_singles),
                outside_pairs=list(dec.outside_pairs),
                isolated=list(dec.isolated),
                p=dec.p,
                r=dec.r,
                m=dec.m,
                s=dec.s,
            ),
        )

    @app.post("/validate", response_model=schemas.ValidateResponse)
    def validate_schedule(req: schemas.ValidateRequest) -> schemas.ValidateResponse:
        inst = _instance_in(req.instance)
        schedule = Schedule(dict(req.schedule.starts))
        violations = validate(inst, schedule)
        hash_matches = (
            req.schedule.instance_hash == ""
            or req.schedule.instance_hash == serialize.instance_hash(inst)
        )
        return schemas.ValidateResponse(
            ok=not violations,
            makespan=makespan(inst, schedule),
            hash_matches=hash_matches,
            violations=[
                schemas.ViolationPayload(kind=v.kind, tasks=v.tasks, detail=v.detail)
                for v in violations
            ],
        )

    @app.post("/experiment", response_model=schemas.ExperimentResponse)
    def run_experiment(req: schemas.ExperimentRequest) -> schemas.ExperimentResponse:
        report = experiment.run_experiment(
            corpus_size=req.corpus_size,
            seed=req.seed,
            max_x=req.max_x,
            max_y=req.max_y,
            max_alpha_y=req.max_alpha_y,
        )
        payload = report.to_dict()
        return schemas.ExperimentResponse(
            rows=[schemas.ExperimentRowPayload.model_validate(r) for r in payload["rows"]],
            summary=schemas.ExperimentSummaryPayload.model_validate(payload["summary"]),
        )

    @app.post("/render/gantt", response_model=schemas.GanttResponse)
    def render_gantt(req: schemas.GanttRequest) -> schemas.GanttResponse:
        inst = _instance_in(req.instance)
        schedule = Schedule(dict(req.schedule.starts))
        if req.format == "svg":
            content = gantt.render_svg(inst, schedule)
        else:
            content = gantt.render_text(inst, schedule)
        return schemas.GanttResponse(format=req.format, content=content)

    return app
