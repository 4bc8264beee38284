"""JSON formats for instances, schedules and reduction sources.

Instance files: ``{"scale": int, "tasks": [{"id", "alpha"} | {"id", "a",
"L", "b"}], "edges": [[id, id], ...], "partition": {"x": [...], "y":
[...]}?}``.  Schedule files: ``{"instance_hash": str, "starts": {id:
int}}``.  Serialization is canonical (sorted keys, two-space indent,
trailing newline), so parse/serialize round-trips are byte-identical
and the instance hash is stable across formatting.
"""

from __future__ import annotations

import hashlib
import json

from .errors import ParseError
from .generators import ThreeDMInstance, TripartiteGraph
from .model import CompatibilityGraph, CoupledTask, Instance, Schedule


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse_json(text: str, where: str = "input") -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected a JSON object at top level")
    return data


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{path}: expected an integer, got {value!r}")
    return value


def _as_str(value, path: str) -> str:
    if not isinstance(value, str):
        raise ParseError(f"{path}: expected a string, got {value!r}")
    return value


def _as_list(value, path: str) -> list:
    if not isinstance(value, (list, tuple)):
        raise ParseError(f"{path}: expected an array, got {value!r}")
    return list(value)


def instance_to_dict(inst: Instance) -> dict:
    tasks = []
    for t in inst.tasks:
        if t.is_stretched:
            tasks.append({"id": t.id, "alpha": t.alpha})
        else:
            tasks.append({"id": t.id, "a": t.a, "L": t.L, "b": t.b})
    payload: dict = {
        "scale": inst.scale,
        "tasks": tasks,
        "edges": [[u, v] for u, v in inst.graph.edges],
    }
    if inst.partition is not None:
        xs, ys = inst.partition
        payload["partition"] = {"x": list(xs), "y": list(ys)}
    return payload


def instance_from_dict(data: dict, where: str = "instance") -> Instance:
    scale = _as_int(data.get("scale", 1), f"{where}.scale")
    raw_tasks = _as_list(data.get("tasks"), f"{where}.tasks")
    tasks = []
    for i, entry in enumerate(raw_tasks):
        path = f"{where}.tasks[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{path}: expected an object")
        task_id = _as_str(entry.get("id"), f"{path}.id")
        has_alpha = "alpha" in entry
        has_parts = any(k in entry for k in ("a", "L", "b"))
        if has_alpha and has_parts:
            raise ParseError(f"{path}: give either alpha or a/L/b, not both")
        if has_alpha:
            alpha = _as_int(entry["alpha"], f"{path}.alpha")
            tasks.append(CoupledTask(task_id, alpha, alpha, alpha, alpha))
        elif has_parts:
            missing = [k for k in ("a", "L", "b") if k not in entry]
            if missing:
                raise ParseError(f"{path}: missing fields {missing}")
            tasks.append(
                CoupledTask(
                    task_id,
                    _as_int(entry["a"], f"{path}.a"),
                    _as_int(entry["L"], f"{path}.L"),
                    _as_int(entry["b"], f"{path}.b"),
                )
            )
        else:
            raise ParseError(f"{path}: needs alpha or a/L/b fields")

    raw_edges = _as_list(data.get("edges", []), f"{where}.edges")
    edges = []
    for i, pair in enumerate(raw_edges):
        path = f"{where}.edges[{i}]"
        pair = _as_list(pair, path)
        if len(pair) != 2:
            raise ParseError(f"{path}: expected a pair of task ids")
        edges.append((_as_str(pair[0], f"{path}[0]"), _as_str(pair[1], f"{path}[1]")))

    partition = None
    if data.get("partition") is not None:
        raw_part = data["partition"]
        if not isinstance(raw_part, dict):
            raise ParseError(f"{where}.partition: expected an object with x and y arrays")
        xs = [
            _as_str(v, f"{where}.partition.x[{i}]")
            for i, v in enumerate(_as_list(raw_part.get("x"), f"{where}.partition.x"))
        ]
        ys = [
            _as_str(v, f"{where}.partition.y[{i}]")
            for i, v in enumerate(_as_list(raw_part.get("y"), f"{where}.partition.y"))
        ]
        partition = (tuple(xs), tuple(ys))

    graph = CompatibilityGraph([t.id for t in tasks], edges)
    return Instance(tasks, graph, scale=scale, partition=partition)


def instance_hash(inst: Instance) -> str:
    canonical = json.dumps(instance_to_dict(inst), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def schedule_to_dict(inst: Instance, schedule: Schedule) -> dict:
    return {
        "instance_hash": instance_hash(inst),
        "starts": {task_id: start for task_id, start in sorted(schedule.starts.items())},
    }


def schedule_from_dict(data: dict, where: str = "schedule") -> tuple[str, Schedule]:
    digest = _as_str(data.get("instance_hash", ""), f"{where}.instance_hash")
    raw = data.get("starts")
    if not isinstance(raw, dict):
        raise ParseError(f"{where}.starts: expected an object mapping task id to start time")
    starts = {
        _as_str(k, f"{where}.starts key"): _as_int(v, f"{where}.starts[{k!r}]")
        for k, v in raw.items()
    }
    return digest, Schedule(starts)


def threedm_to_dict(src: ThreeDMInstance) -> dict:
    return {"n": src.n, "triples": [list(t) for t in src.triples]}


def threedm_from_dict(data: dict, where: str = "3dm source") -> ThreeDMInstance:
    n = _as_int(data.get("n"), f"{where}.n")
    raw = _as_list(data.get("triples"), f"{where}.triples")
    triples = []
    for i, t in enumerate(raw):
        t = _as_list(t, f"{where}.triples[{i}]")
        if len(t) != 3:
            raise ParseError(f"{where}.triples[{i}]: expected three elements")
        triples.append(tuple(_as_str(e, f"{where}.triples[{i}][{j}]") for j, e in enumerate(t)))

    def part(pos: int, name: str) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for t in triples:
            seen.setdefault(t[pos], None)
        if len(seen) != n:
            raise ParseError(
                f"{where}: triples name {len(seen)} distinct {name}-elements, expected n={n}"
            )
        return tuple(seen)

    return ThreeDMInstance(part(0, "A"), part(1, "B"), part(2, "C"), tuple(triples))


def tripartite_to_dict(src: TripartiteGraph) -> dict:
    return {
        "parts": {"A": list(src.a_part), "B": list(src.b_part), "C": list(src.c_part)},
        "edges": [list(e) for e in src.edges],
    }


def tripartite_from_dict(data: dict, where: str = "tripartite source") -> TripartiteGraph:
    raw_parts = data.get("parts")
    if not isinstance(raw_parts, dict):
        raise ParseError(f"{where}.parts: expected an object with A, B and C arrays")
    parts = {}
    for name in ("A", "B", "C"):
        parts[name] = tuple(
            _as_str(v, f"{where}.parts.{name}[{i}]")
            for i, v in enumerate(_as_list(raw_parts.get(name), f"{where}.parts.{name}"))
        )
    raw_edges = _as_list(data.get("edges", []), f"{where}.edges")
    edges = []
    for i, pair in enumerate(raw_edges):
        pair = _as_list(pair, f"{where}.edges[{i}]")
        if len(pair) != 2:
            raise ParseError(f"{where}.edges[{i}]: expected a pair of vertex names")
        edges.append(
            (
                _as_str(pair[0], f"{where}.edges[{i}][0]"),
                _as_str(pair[1], f"{where}.edges[{i}][1]"),
            )
        )
    return TripartiteGraph(parts["A"], parts["B"], parts["C"], tuple(edges))
