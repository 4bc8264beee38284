"""Tasks, compatibility graphs, instances, schedules.

A coupled-task ``(a, L, b)`` runs two sub-tasks of lengths ``a`` and ``b``
on one machine, separated by an exact idle gap ``L``.  A *stretched* task
has ``a = L = b = alpha``.  A compatibility edge between two tasks allows
one to occupy the other's idle gap: two equal-stretch tasks interleave
(``a_x a_y b_x b_y``, 4*alpha total), and a task nests entirely inside a
partner whose stretch is at least three times larger.

All times are non-negative integers; instances carry a global ``scale``
denominator so fractional stretch factors stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    IncompleteScheduleError,
    InvalidParameterError,
    InvalidPartitionError,
    UnsupportedTaskShapeError,
)

GENERAL = "general"
ONE_STAGE_BIPARTITE = "one-stage-bipartite"
QUASI_SPLIT = "quasi-split"

INTERLEAVE = "interleave"
NEST_X_IN_Y = "nest_x_in_y"
NEST_Y_IN_X = "nest_y_in_x"
INCOMPATIBLE = "incompatible"


@dataclass(frozen=True)
class CoupledTask:
    """A task (a, L, b); ``alpha`` is set iff the task is stretched."""

    id: str
    a: int
    L: int
    b: int
    alpha: int | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise InvalidParameterError("task id must be a non-empty string")
        if self.a < 1 or self.b < 1:
            raise InvalidParameterError(f"task {self.id!r}: sub-task lengths must be >= 1")
        if self.L < 0:
            raise InvalidParameterError(f"task {self.id!r}: idle gap must be >= 0")
        if self.alpha is not None and not (self.a == self.L == self.b == self.alpha):
            raise InvalidParameterError(
                f"task {self.id!r}: alpha={self.alpha} requires a = L = b = alpha"
            )

    @property
    def is_stretched(self) -> bool:
        return self.alpha is not None


def new_stretched(task_id: str, alpha: int) -> CoupledTask:
    """Build the stretched task (alpha, alpha, alpha)."""
    if alpha < 1:
        raise InvalidParameterError(f"stretch factor must be >= 1, got {alpha}")
    return CoupledTask(task_id, alpha, alpha, alpha, alpha)


def task_span(t: CoupledTask) -> int:
    """Total machine occupation a + L + b (3*alpha for stretched tasks)."""
    return t.a + t.L + t.b


class CompatibilityGraph:
    """Undirected simple graph over task ids, edges kept in insertion order.

    Insertion order is significant downstream: the flow network built from
    an instance scans arcs in declaration order, so generators can pin
    which maximum flow a deterministic solver returns.
    """

    def __init__(self, vertices, edges=()):
        self._vertices: tuple[str, ...] = tuple(vertices)
        if len(set(self._vertices)) != len(self._vertices):
            raise InvalidParameterError("duplicate vertex ids in compatibility graph")
        vset = set(self._vertices)
        ordered: list[tuple[str, str]] = []
        seen: set[frozenset[str]] = set()
        for u, v in edges:
            if u == v:
                raise InvalidParameterError(f"self-loop on {u!r} is not allowed")
            if u not in vset or v not in vset:
                raise InvalidParameterError(f"edge ({u!r}, {v!r}) references unknown vertex")
            key = frozenset((u, v))
            if key in seen:
                raise InvalidParameterError(f"duplicate edge ({u!r}, {v!r})")
            seen.add(key)
            ordered.append((u, v))
        self._edges: tuple[tuple[str, str], ...] = tuple(ordered)
        self._edge_set = seen
        self._adj: dict[str, list[str]] = {v: [] for v in self._vertices}
        for u, v in self._edges:
            self._adj[u].append(v)
            self._adj[v].append(u)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        return self._edges

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._edge_set

    def neighbors(self, v: str) -> tuple[str, ...]:
        """Neighbors of ``v`` in edge insertion order."""
        return tuple(self._adj[v])

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CompatibilityGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __repr__(self) -> str:
        return f"CompatibilityGraph({len(self._vertices)} vertices, {len(self._edges)} edges)"


class Instance:
    """Task set plus compatibility graph; the solver input.

    ``scale`` is the global integer denominator applied so that all
    durations are integers (1 when no scaling happened).  ``partition``
    optionally splits the ids into an X side and a Y side for the
    bipartite / quasi-split instance classes; edges stay undirected and
    the X-to-Y nesting orientation is recovered from stretch factors.
    """

    def __init__(
        self,
        tasks,
        graph: CompatibilityGraph,
        scale: int = 1,
        partition: tuple[tuple[str, ...], tuple[str, ...]] | None = None,
    ):
        self._tasks: tuple[CoupledTask, ...] = tuple(tasks)
        ids = [t.id for t in self._tasks]
        if len(set(ids)) != len(ids):
            raise InvalidParameterError("duplicate task ids in instance")
        if scale < 1:
            raise InvalidParameterError(f"scale must be a positive integer, got {scale}")
        if set(graph.vertices) != set(ids):
            raise InvalidParameterError("graph vertices must match the instance task ids")
        self._graph = graph
        self._scale = scale
        self._by_id = {t.id: t for t in self._tasks}
        for u, v in graph.edges:
            tu, tv = self._by_id[u], self._by_id[v]
            if tu.is_stretched and tv.is_stretched:
                au, av = tu.alpha, tv.alpha
                if au != av and 3 * min(au, av) > max(au, av):
                    raise InvalidParameterError(
                        f"edge ({u!r}, {v!r}) violates stretch compatibility: "
                        f"alphas {au} and {av} neither match nor nest"
                    )
        if partition is not None:
            xs, ys = tuple(partition[0]), tuple(partition[1])
            unknown = (set(xs) | set(ys)) - set(ids)
            if unknown:
                raise InvalidPartitionError(f"partition references unknown ids: {sorted(unknown)}")
            if set(xs) & set(ys):
                raise InvalidPartitionError("partition sides must be disjoint")
            if set(xs) | set(ys) != set(ids):
                raise InvalidPartitionError("partition must cover every task id")
            partition = (xs, ys)
        self._partition = partition

    @property
    def tasks(self) -> tuple[CoupledTask, ...]:
        return self._tasks

    @property
    def graph(self) -> CompatibilityGraph:
        return self._graph

    @property
    def scale(self) -> int:
        return self._scale

    @property
    def partition(self) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
        return self._partition

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(t.id for t in self._tasks)

    @property
    def x_ids(self) -> tuple[str, ...]:
        if self._partition is None:
            raise InvalidPartitionError("instance has no X/Y partition")
        return self._partition[0]

    @property
    def y_ids(self) -> tuple[str, ...]:
        if self._partition is None:
            raise InvalidPartitionError("instance has no X/Y partition")
        return self._partition[1]

    def task(self, task_id: str) -> CoupledTask:
        try:
            return self._by_id[task_id]
        except KeyError:
            raise KeyError(f"unknown task id {task_id!r}") from None

    def alpha(self, task_id: str) -> int:
        t = self.task(task_id)
        if t.alpha is None:
            raise UnsupportedTaskShapeError(f"task {task_id!r} is not stretched")
        return t.alpha

    @property
    def all_stretched(self) -> bool:
        return all(t.is_stretched for t in self._tasks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self._tasks == other._tasks
            and self._graph == other._graph
            and self._scale == other._scale
            and self._partition == other._partition
        )

    def __repr__(self) -> str:
        part = "" if self._partition is None else ", partitioned"
        return f"Instance({len(self._tasks)} tasks, {len(self._graph.edges)} edges{part})"


@dataclass(frozen=True)
class Schedule:
    """Start times of each task's first sub-task (second start is implied)."""

    starts: dict[str, int]

    def __post_init__(self) -> None:
        for task_id, start in self.starts.items():
            if start < 0:
                raise InvalidParameterError(f"task {task_id!r} has negative start {start}")

    def start(self, task_id: str) -> int:
        return self.starts[task_id]


@dataclass(frozen=True)
class Violation:
    """One schedule defect: overlapping sub-tasks or an edge-less nesting."""

    kind: str  # "overlap" | "incompatible-nesting"
    tasks: tuple[str, str]
    detail: str


def compatibility_kind(x: CoupledTask, y: CoupledTask, g: CompatibilityGraph) -> str:
    """How two stretched tasks may share time, given the graph."""
    if not (x.is_stretched and y.is_stretched):
        raise UnsupportedTaskShapeError("compatibility_kind only applies to stretched tasks")
    if not g.has_edge(x.id, y.id):
        return INCOMPATIBLE
    if x.alpha == y.alpha:
        return INTERLEAVE
    if 3 * x.alpha <= y.alpha:
        return NEST_X_IN_Y
    if 3 * y.alpha <= x.alpha:
        return NEST_Y_IN_X
    # Unreachable for edges accepted by Instance construction.
    return INCOMPATIBLE


def _intervals(t: CoupledTask, start: int) -> list[tuple[str, int, int]]:
    return [
        ("a", start, start + t.a),
        ("b", start + t.a + t.L, start + t.a + t.L + t.b),
    ]


def _check_complete(inst: Instance, s: Schedule) -> None:
    ids = set(inst.ids)
    missing = ids - set(s.starts)
    if missing:
        raise IncompleteScheduleError(f"schedule is missing tasks: {sorted(missing)}")
    unknown = set(s.starts) - ids
    if unknown:
        raise IncompleteScheduleError(f"schedule names unknown tasks: {sorted(unknown)}")


def validate(inst: Instance, s: Schedule) -> list[Violation]:
    """Check a complete schedule; an empty list means it is valid.

    Valid means: (i) all sub-task intervals are pairwise disjoint, and
    (ii) whenever a sub-task runs inside another task's idle window, the
    two tasks share a compatibility edge.  A sub-task that straddles a
    window boundary necessarily overlaps the host's own sub-tasks and is
    already caught by (i).  All violations are reported, one per
    (kind, pair), to keep diagnostics useful.
    """
    _check_complete(inst, s)
    placed = [(t, s.start(t.id)) for t in inst.tasks]
    segs = [
        (t.id, part, lo, hi)
        for t, start in placed
        for part, lo, hi in _intervals(t, start)
    ]
    violations: dict[tuple[str, frozenset[str]], Violation] = {}

    for i in range(len(segs)):
        id_i, part_i, lo_i, hi_i = segs[i]
        for j in range(i + 1, len(segs)):
            id_j, part_j, lo_j, hi_j = segs[j]
            if id_i == id_j:
                continue
            if lo_i < hi_j and lo_j < hi_i:
                key = ("overlap", frozenset((id_i, id_j)))
                if key not in violations:
                    pair = tuple(sorted((id_i, id_j)))
                    violations[key] = Violation(
                        "overlap",
                        pair,  # type: ignore[arg-type]
                        f"{id_i}.{part_i} [{lo_i},{hi_i}) overlaps {id_j}.{part_j} [{lo_j},{hi_j})",
                    )

    for host, host_start in placed:
        w_lo = host_start + host.a
        w_hi = w_lo + host.L
        if w_lo == w_hi:
            continue
        for other_id, part, lo, hi in segs:
            if other_id == host.id:
                continue
            if w_lo <= lo and hi <= w_hi and not inst.graph.has_edge(host.id, other_id):
                key = ("incompatible-nesting", frozenset((host.id, other_id)))
                if key not in violations:
                    pair = tuple(sorted((host.id, other_id)))
                    violations[key] = Violation(
                        "incompatible-nesting",
                        pair,  # type: ignore[arg-type]
                        f"{other_id}.{part} [{lo},{hi}) runs inside the idle window "
                        f"[{w_lo},{w_hi}) of {host.id} without a compatibility edge",
                    )

    return list(violations.values())


def makespan(inst: Instance, s: Schedule) -> int:
    """Completion time of the last sub-task."""
    _check_complete(inst, s)
    return max(s.start(t.id) + task_span(t) for t in inst.tasks)


@dataclass(frozen=True)
class ClassReport:
    """Structural classification of an instance's compatibility graph."""

    kind: str  # one of GENERAL, ONE_STAGE_BIPARTITE, QUASI_SPLIT
    stretch_class_counts: dict[str, int]
    degree_ranges: dict[str, tuple[int, int]]
    x_connected: bool | None = None
    x_complete: bool | None = None
    y_independent: bool | None = None


def _distinct_alphas(inst: Instance, ids) -> int:
    return len({inst.task(i).alpha for i in ids if inst.task(i).is_stretched})


def _degree_range(inst: Instance, ids) -> tuple[int, int]:
    if not ids:
        return (0, 0)
    degrees = [inst.graph.degree(i) for i in ids]
    return (min(degrees), max(degrees))


def _subgraph_connected(ids: set[str], graph: CompatibilityGraph) -> bool:
    if not ids:
        return False
    start = next(iter(ids))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in graph.neighbors(v):
            if w in ids and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == ids


def classify(inst: Instance) -> ClassReport:
    """Report the instance class plus the statistics behind the call.

    ``quasi-split`` needs a connected, non-complete subgraph on X, an
    independent Y, and every X-Y edge orientable as an X-into-Y nesting;
    ``one-stage-bipartite`` needs all edges to be such X-Y edges.  Both
    require a partition of stretched tasks; anything else is ``general``.
    """
    if inst.partition is None:
        return ClassReport(
            kind=GENERAL,
            stretch_class_counts={"all": _distinct_alphas(inst, inst.ids)},
            degree_ranges={"all": _degree_range(inst, inst.ids)},
        )

    xs, ys = inst.partition
    xset, yset = set(xs), set(ys)
    x_edges = [(u, v) for u, v in inst.graph.edges if u in xset and v in xset]
    y_edges = [(u, v) for u, v in inst.graph.edges if u in yset and v in yset]
    xy_edges = [
        (u, v) for u, v in inst.graph.edges if (u in xset) != (v in xset)
    ]

    x_connected = _subgraph_connected(xset, inst.graph) if xs else False
    x_complete = len(x_edges) == len(xs) * (len(xs) - 1) // 2
    y_independent = not y_edges

    kind = GENERAL
    if inst.all_stretched:
        oriented = True
        for u, v in xy_edges:
            x_id, y_id = (u, v) if u in xset else (v, u)
            if 3 * inst.alpha(x_id) > inst.alpha(y_id):
                oriented = False
                break
        if oriented and y_independent:
            if not x_edges:
                kind = ONE_STAGE_BIPARTITE
            elif x_connected and not x_complete:
                kind = QUASI_SPLIT

    return ClassReport(
        kind=kind,
        stretch_class_counts={"x": _distinct_alphas(inst, xs), "y": _distinct_alphas(inst, ys)},
        degree_ranges={"x": _degree_range(inst, xs), "y": _degree_range(inst, ys)},
        x_connected=x_connected,
        x_complete=x_complete,
        y_independent=y_independent,
    )
