"""The 5/4-approximation pipeline for quasi-split style instances.

The algorithm nests single X-tasks into Y idle windows via a maximum
flow (each window holds floor(alpha_y / 3) singles after normalizing
the X stretch to 1), matches the leftover X-tasks pairwise on the
X-subgraph, and schedules: Y-tasks with their nested singles first,
then the matched pairs, then the isolated tasks.  Pair-nesting inside
Y windows is deliberately not attempted; that restraint is exactly
what the worst-case ratio accounts for.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedInstanceError
from .graphalg import FlowNetwork, MatchingResult, max_flow, max_matching
from .model import Instance, Schedule, makespan, task_span, validate
from .structure import SplitStructure, split_structure

FLOW_SOURCE = "__source__"
FLOW_SINK = "__sink__"


@dataclass(frozen=True)
class NormalizedInstance:
    """An instance re-expressed with X stretch 1.

    ``normalized_alpha_y`` maps each Y id to floor(alpha_y / alpha_x);
    the base instance keeps its original values so reported makespans
    can be rescaled.
    """

    base: Instance
    alpha_x: int
    normalized_alpha_y: dict[str, int]

    def capacity(self, y_id: str) -> int:
        """How many normalized singles fit in y's idle window."""
        return self.normalized_alpha_y[y_id] // 3


def _structure(inst: Instance) -> SplitStructure:
    return split_structure(inst, require_single_x_class=True, require_single_y_class=True)


def normalize(inst: Instance) -> NormalizedInstance:
    """Divide all stretch factors by the common X stretch (flooring Y)."""
    st = _structure(inst)
    alpha_x = st.alpha[st.xs[0]] if st.xs else 1
    normalized = {y: st.alpha[y] // alpha_x for y in st.ys}
    for y in st.ys:
        if st.yx_adj[y] and normalized[y] < 3:
            raise UnsupportedInstanceError(
                f"Y task {y} has incident X arcs but normalized stretch {normalized[y]} < 3"
            )
    return NormalizedInstance(base=inst, alpha_x=alpha_x, normalized_alpha_y=normalized)


def build_network(norm: NormalizedInstance) -> FlowNetwork:
    """Flow model of the nesting choice, arcs in declaration order.

    source -> x (capacity 1), x -> y per compatibility edge (capacity 1),
    y -> sink (capacity floor(normalized_alpha_y / 3)).
    """
    st = _structure(norm.base)
    for task_id in norm.base.ids:
        if task_id in (FLOW_SOURCE, FLOW_SINK):
            raise UnsupportedInstanceError(f"task id {task_id!r} collides with a flow terminal")
    net = FlowNetwork(FLOW_SOURCE, FLOW_SINK)
    for x in st.xs:
        net.add_arc(FLOW_SOURCE, x, 1)
    for x, y in st.xy_edges:
        net.add_arc(x, y, 1)
    for y in st.ys:
        net.add_arc(y, FLOW_SINK, norm.capacity(y))
    return net


@dataclass(frozen=True)
class ApproxSolution:
    """Schedule plus the counts entering the performance bound.

    ``f`` singles were nested into Y windows, ``m`` leftover pairs were
    interleaved, ``s`` tasks ran isolated; 2m + s + f = |X| always.
    ``bound_value`` is the realized makespan identity
    sum_y 3*alpha_y + alpha_x*(4m + 3s) in instance time units;
    ``bound_value_normalized`` is the same expression with normalized
    (floored) Y stretches, the units the guarantee is stated in.
    """

    schedule: Schedule
    f: int
    m: int
    s: int
    nest_assignment: dict[str, str]
    pairs: tuple[tuple[str, str], ...]
    isolated: tuple[str, ...]
    makespan: int
    bound_value: int
    bound_value_normalized: int
    alpha_x: int


def _leftover_matching(st: SplitStructure, uncovered: list[str]) -> MatchingResult:
    uncovered_set = set(uncovered)
    sub_edges = [
        (u, v) for u, v in st.x_edges if u in uncovered_set and v in uncovered_set
    ]
    return max_matching(uncovered, sub_edges)


def approx_solve(inst: Instance) -> ApproxSolution:
    """Run the full pipeline and return a validated schedule."""
    norm = normalize(inst)
    st = _structure(inst)
    net = build_network(norm)
    flow = max_flow(net)

    xset = set(st.xs)
    nest_assignment: dict[str, str] = {}
    nested_by_y: dict[str, list[str]] = {y: [] for y in st.ys}
    for (u, v, cap), carried in zip(net.arcs, flow.arc_flows):
        if u in xset and carried == 1:
            nest_assignment[u] = v
            nested_by_y[v].append(u)
    f = flow.value

    uncovered = [x for x in st.xs if x not in nest_assignment]
    matching = _leftover_matching(st, uncovered)
    decl_index = {x: i for i, x in enumerate(st.xs)}
    pairs = tuple(
        sorted(
            (tuple(sorted(pair, key=decl_index.__getitem__)) for pair in matching.edges),
            key=lambda p: decl_index[p[0]],
        )
    )
    matched = {x for pair in pairs for x in pair}
    isolated = tuple(x for x in uncovered if x not in matched)
    m, s = len(pairs), len(isolated)

    alpha_x = norm.alpha_x
    starts: dict[str, int] = {}
    cursor = 0
    for y in sorted(st.ys):
        y_task = inst.task(y)
        starts[y] = cursor
        inner = cursor + y_task.a
        for x in nested_by_y[y]:
            starts[x] = inner
            inner += task_span(inst.task(x))
        cursor += task_span(y_task)
    for u, v in pairs:
        starts[u] = cursor
        starts[v] = cursor + alpha_x
        cursor += 4 * alpha_x
    for x in isolated:
        starts[x] = cursor
        cursor += 3 * alpha_x

    schedule = Schedule(starts)
    achieved = makespan(inst, schedule)
    sum_y = sum(3 * st.alpha[y] for y in st.ys)
    bound_value = sum_y + alpha_x * (4 * m + 3 * s)
    bound_normalized = sum(3 * norm.normalized_alpha_y[y] for y in st.ys) + 4 * m + 3 * s

    if 2 * m + s + f != len(st.xs):
        raise RuntimeError("count identity 2m + s + f = |X| failed")
    if achieved != bound_value:
        raise RuntimeError(f"makespan {achieved} does not match bound value {bound_value}")
    if f > sum(norm.capacity(y) for y in st.ys) or f > len(st.xs):
        raise RuntimeError("flow value exceeds its cut bounds")
    for y in st.ys:
        if len(nested_by_y[y]) > norm.capacity(y):
            raise RuntimeError(f"host {y} exceeds its nesting capacity")
    problems = validate(inst, schedule)
    if problems:
        raise RuntimeError(f"emitted schedule fails validation: {problems[0].detail}")

    return ApproxSolution(
        schedule=schedule,
        f=f,
        m=m,
        s=s,
        nest_assignment=nest_assignment,
        pairs=pairs,
        isolated=isolated,
        makespan=achieved,
        bound_value=bound_value,
        bound_value_normalized=bound_normalized,
        alpha_x=alpha_x,
    )
