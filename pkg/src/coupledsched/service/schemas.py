"""Pydantic request/response models mirroring the JSON file formats."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class TaskPayload(BaseModel):
    id: str
    alpha: int | None = None
    a: int | None = None
    L: int | None = None
    b: int | None = None


class PartitionPayload(BaseModel):
    x: list[str]
    y: list[str]


class InstancePayload(BaseModel):
    scale: int = 1
    tasks: list[TaskPayload]
    edges: list[tuple[str, str]] = Field(default_factory=list)
    partition: PartitionPayload | None = None


class SchedulePayload(BaseModel):
    instance_hash: str = ""
    starts: dict[str, int]


class InstanceEnvelope(BaseModel):
    instance: InstancePayload


class ThreeDMSourcePayload(BaseModel):
    n: int
    triples: list[tuple[str, str, str]]


class ThreeDMTargetPayload(BaseModel):
    n: int
    eps_num: int
    eps_den: int
    scale: int
    value_at_zero: int


class Generate3dmRequest(BaseModel):
    source: ThreeDMSourcePayload | None = None
    random_n: int | None = None
    seed: int = 0
    eps_num: int = 1
    eps_den: int = 3


class Generate3dmResponse(BaseModel):
    instance: InstancePayload
    source: ThreeDMSourcePayload
    target: ThreeDMTargetPayload


class TripartiteSourcePayload(BaseModel):
    parts: dict[Literal["A", "B", "C"], list[str]]
    edges: list[tuple[str, str]] = Field(default_factory=list)


class GeneratePitRequest(BaseModel):
    source: TripartiteSourcePayload | None = None
    random_q: int | None = None
    density: float = 0.5
    seed: int = 0


class GeneratePitResponse(BaseModel):
    instance: InstancePayload
    source: TripartiteSourcePayload
    target_makespan: int


class GenerateRandomRequest(BaseModel):
    nx: int
    ny: int
    alpha_y: int
    density: float = 0.5
    seed: int = 0


class ClassifyResponse(BaseModel):
    kind: str
    stretch_class_counts: dict[str, int]
    degree_ranges: dict[str, tuple[int, int]]
    x_connected: bool | None = None
    x_complete: bool | None = None
    y_independent: bool | None = None


class SolveRequest(BaseModel):
    algo: Literal["approx", "exact"]
    instance: InstancePayload
    max_x: int = 20


class ApproxCountsPayload(BaseModel):
    f: int
    m: int
    s: int


class DecompositionPayload(BaseModel):
    nested_pairs: list[tuple[tuple[str, str], str]]
    nested_singles: list[tuple[str, str]]
    outside_pairs: list[tuple[str, str]]
    isolated: list[str]
    p: int
    r: int
    m: int
    s: int


class SolveResponse(BaseModel):
    algo: str
    makespan: int
    scale: int
    makespan_original: str
    schedule: SchedulePayload
    counts: ApproxCountsPayload | None = None
    bound_value: int | None = None
    bound_value_normalized: int | None = None
    nest_assignment: dict[str, str] | None = None
    decomposition: DecompositionPayload | None = None


class ValidateRequest(BaseModel):
    instance: InstancePayload
    schedule: SchedulePayload


class ViolationPayload(BaseModel):
    kind: str
    tasks: tuple[str, str]
    detail: str


class ValidateResponse(BaseModel):
    ok: bool
    makespan: int
    hash_matches: bool
    violations: list[ViolationPayload]


class ExperimentRequest(BaseModel):
    corpus_size: int
    seed: int = 0
    max_x: int = 10
    max_y: int = 3
    max_alpha_y: int = 12


class ExperimentRowPayload(BaseModel):
    instance_id: str
    x_count: int
    y_count: int
    alpha_y: int
    approx_makespan: int
    exact_makespan: int
    ratio: float


class ExperimentSummaryPayload(BaseModel):
    max_ratio: float
    mean_ratio: float


class ExperimentResponse(BaseModel):
    rows: list[ExperimentRowPayload]
    summary: ExperimentSummaryPayload


class GanttRequest(BaseModel):
    instance: InstancePayload
    schedule: SchedulePayload
    format: Literal["text", "svg"] = "text"


class GanttResponse(BaseModel):
    format: str
    content: str
