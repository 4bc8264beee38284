"""Exact optimum via branch-and-bound over nesting decompositions.

Every schedule in the supported class decomposes into: Y-tasks run
back-to-back, each idle window hosting nested X-pairs (4*alpha each)
and nested singles (3*alpha each), followed by interleaved outside
pairs and isolated tasks.  The makespan is then

    sum_y 3*alpha(y) + sum_{outside pairs} 4*alpha + sum_{isolated} 3*alpha

and minimizing it is a role-assignment search over the X-tasks.  The
decomposition's completeness is an assumption inherited from the ratio
analysis; ``timeline_oracle`` exists to test that assumption on small
instances by exhausting all sub-task orderings, independently of this
formulation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeLimitError
from .model import Instance, Schedule, makespan, task_span, validate
from .structure import SplitStructure, split_structure

_NEST_PAIR = 0
_NEST_SINGLE = 1
_OUTSIDE_PAIR = 2
_ISOLATED = 3


@dataclass(frozen=True)
class Decomposition:
    """Role assignment of the X-tasks around the fixed Y block."""

    nested_pairs: tuple[tuple[tuple[str, str], str], ...]  # ((x, x'), host)
    nested_singles: tuple[tuple[str, str], ...]  # (x, host)
    outside_pairs: tuple[tuple[str, str], ...]
    isolated: tuple[str, ...]

    @property
    def p(self) -> int:
        return len(self.nested_pairs)

    @property
    def r(self) -> int:
        return len(self.nested_singles)

    @property
    def m(self) -> int:
        return len(self.outside_pairs)

    @property
    def s(self) -> int:
        return len(self.isolated)


@dataclass(frozen=True)
class ExactSolution:
    optimum: int
    decomposition: Decomposition
    schedule: Schedule


class _Search:
    """Shared state for the two branch-and-bound passes.

    Pass one finds the optimal extra cost (cost beyond the mandatory Y
    block), branching X-tasks by descending degree and pruning with the
    relaxation that every undecided task nests for free, tightened by a
    capacity argument: nesting consumes at least 2/3 of a task's span in
    window capacity, and outside placement costs at least 2/3 of span.
    Pass two re-searches in task-id order, trying moves in encoding
    order, and returns the first optimal completion, which is therefore
    the lexicographically smallest optimal decomposition.
    """

    def __init__(self, inst: Instance, st: SplitStructure):
        self.inst = inst
        self.st = st
        self.alpha = st.alpha
        self.residual = {y: st.alpha[y] for y in st.ys}
        self.decided: dict[str, tuple] = {}
        degree = {x: inst.graph.degree(x) for x in st.xs}
        decl = {x: i for i, x in enumerate(st.xs)}
        self.value_order = sorted(st.xs, key=lambda x: (-degree[x], decl[x]))
        self.lex_order = sorted(st.xs)
        self.total_span = sum(3 * st.alpha[x] for x in st.xs)
        self.total_capacity = sum(self.residual.values())

    def lower_bound(self, cost: int, span_left: int, cap_left: int) -> int:
        over = 2 * span_left - 3 * cap_left
        return cost + (over + 2) // 3 if over > 0 else cost

    def moves_for(self, x: str) -> list[tuple[tuple, tuple]]:
        """All feasible moves for x as (encoding entry, move) pairs.

        Entries order by role (pair < single < outside < isolated) and
        then by host / partner id, which defines the decomposition
        encoding used for tie-breaking.
        """
        ax = self.alpha[x]
        moves: list[tuple[tuple, tuple]] = []
        for partner in self.st.x_adj[x]:
            if partner in self.decided:
                continue
            partner_hosts = set(self.st.xy_adj[partner])
            for host in self.st.xy_adj[x]:
                if host in partner_hosts and self.residual[host] >= 4 * ax:
                    moves.append(((_NEST_PAIR, host, partner), ("P", partner, host)))
        for host in self.st.xy_adj[x]:
            if self.residual[host] >= 3 * ax:
                moves.append(((_NEST_SINGLE, host, ""), ("S", host)))
        for partner in self.st.x_adj[x]:
            if partner not in self.decided:
                moves.append(((_OUTSIDE_PAIR, partner, ""), ("O", partner)))
        moves.append(((_ISOLATED, "", ""), ("I",)))
        return moves

    def apply(self, x: str, move: tuple) -> tuple[int, int, int]:
        """Apply a move; returns (cost delta, span delta, capacity delta)."""
        ax = self.alpha[x]
        kind = move[0]
        if kind == "P":
            _, partner, host = move
            self.decided[x] = move
            self.decided[partner] = ("p", x, host)
            self.residual[host] -= 4 * ax
            return 0, 6 * ax, 4 * ax
        if kind == "S":
            _, host = move
            self.decided[x] = move
            self.residual[host] -= 3 * ax
            return 0, 3 * ax, 3 * ax
        if kind == "O":
            _, partner = move
            self.decided[x] = move
            self.decided[partner] = ("o", x)
            return 4 * ax, 6 * ax, 0
        self.decided[x] = move
        return 3 * ax, 3 * ax, 0

    def undo(self, x: str, move: tuple) -> None:
        ax = self.alpha[x]
        kind = move[0]
        del self.decided[x]
        if kind == "P":
            _, partner, host = move
            del self.decided[partner]
            self.residual[host] += 4 * ax
        elif kind == "S":
            self.residual[move[1]] += 3 * ax
        elif kind == "O":
            del self.decided[move[1]]

    def optimal_extra(self) -> int:
        best = [sum(3 * self.alpha[x] for x in self.st.xs)]  # all isolated

        def dfs(pos: int, cost: int, span_left: int, cap_left: int) -> None:
            order = self.value_order
            while pos < len(order) and order[pos] in self.decided:
                pos += 1
            if pos == len(order):
                if cost < best[0]:
                    best[0] = cost
                return
            if self.lower_bound(cost, span_left, cap_left) >= best[0]:
                return
            x = order[pos]
            for _, move in self.moves_for(x):
                dc, ds, dcap = self.apply(x, move)
                dfs(pos + 1, cost + dc, span_left - ds, cap_left - dcap)
                self.undo(x, move)

        dfs(0, 0, self.total_span, self.total_capacity)
        return best[0]

    def lex_optimal(self, target_extra: int) -> dict[str, tuple]:
        found: dict[str, tuple] = {}

        def dfs(pos: int, cost: int, span_left: int, cap_left: int) -> bool:
            order = self.lex_order
            while pos < len(order) and order[pos] in self.decided:
                pos += 1
            if pos == len(order):
                if cost < target_extra:
                    raise RuntimeError("completed below the proven optimum")
                if cost > target_extra:
                    return False
                found.update(self.decided)
                return True
            if self.lower_bound(cost, span_left, cap_left) > target_extra:
                return False
            x = order[pos]
            for _, move in sorted(self.moves_for(x), key=lambda em: em[0]):
                dc, ds, dcap = self.apply(x, move)
                done = dfs(pos + 1, cost + dc, span_left - ds, cap_left - dcap)
                self.undo(x, move)
                if done:
                    return True
            return False

        if not dfs(0, 0, self.total_span, self.total_capacity):
            raise RuntimeError("no decomposition reaches the proven optimum")
        return found


def _build_decomposition(decided: dict[str, tuple]) -> Decomposition:
    nested_pairs = []
    nested_singles = []
    outside_pairs = []
    isolated = []
    for x, move in decided.items():
        kind = move[0]
        if kind == "P":
            pair = tuple(sorted((x, move[1])))
            nested_pairs.append((pair, move[2]))
        elif kind == "S":
            nested_singles.append((x, move[1]))
        elif kind == "O":
            pair = tuple(sorted((x, move[1])))
            outside_pairs.append(pair)
        elif kind == "I":
            isolated.append(x)
    return Decomposition(
        nested_pairs=tuple(sorted(set(nested_pairs))),
        nested_singles=tuple(sorted(nested_singles)),
        outside_pairs=tuple(sorted(set(outside_pairs))),
        isolated=tuple(sorted(isolated)),
    )


def _emit_schedule(inst: Instance, st: SplitStructure, dec: Decomposition) -> Schedule:
    by_host_pairs: dict[str, list[tuple[str, str]]] = {y: [] for y in st.ys}
    by_host_singles: dict[str, list[str]] = {y: [] for y in st.ys}
    for pair, host in dec.nested_pairs:
        by_host_pairs[host].append(pair)
    for x, host in dec.nested_singles:
        by_host_singles[host].append(x)

    starts: dict[str, int] = {}
    cursor = 0
    for y in sorted(st.ys):
        y_task = inst.task(y)
        starts[y] = cursor
        inner = cursor + y_task.a
        for u, v in sorted(by_host_pairs[y]):
            ax = st.alpha[u]
            starts[u] = inner
            starts[v] = inner + ax
            inner += 4 * ax
        for x in sorted(by_host_singles[y]):
            starts[x] = inner
            inner += 3 * st.alpha[x]
        if inner > cursor + y_task.a + y_task.L:
            raise RuntimeError(f"host {y} overfilled, capacity check failed")
        cursor += task_span(y_task)
    for u, v in dec.outside_pairs:
        ax = st.alpha[u]
        starts[u] = cursor
        starts[v] = cursor + ax
        cursor += 4 * ax
    for x in dec.isolated:
        starts[x] = cursor
        cursor += 3 * st.alpha[x]
    return Schedule(starts)


def exact_optimum(inst: Instance, max_x: int = 20) -> ExactSolution:
    """Minimize the makespan over all nesting decompositions.

    Supports partitioned stretched instances with one Y stretch class;
    X stretch classes are unrestricted (a nested single costs 3*alpha(x)
    of window capacity, a nested or outside pair 4*alpha of its equal
    stretch).  Both members of a nested pair must be compatible with
    the host.  |X| is capped because the search is exponential.
    """
    st = split_structure(inst, require_single_x_class=False, require_single_y_class=True)
    if len(st.xs) > max_x:
        raise SizeLimitError(f"exact solver capped at |X| <= {max_x}, got {len(st.xs)}")

    base = sum(task_span(inst.task(y)) for y in st.ys)
    search = _Search(inst, st)
    extra = search.optimal_extra()
    decided = search.lex_optimal(extra)
    dec = _build_decomposition(decided)
    schedule = _emit_schedule(inst, st, dec)

    optimum = base + extra
    if 2 * (dec.p + dec.m) + dec.r + dec.s != len(st.xs):
        raise RuntimeError("decomposition does not cover X: 2(p+m) + r + s != |X|")
    achieved = makespan(inst, schedule) if inst.tasks else 0
    if achieved != optimum:
        raise RuntimeError(f"emitted schedule has makespan {achieved}, expected {optimum}")
    problems = validate(inst, schedule)
    if problems:
        raise RuntimeError(f"emitted schedule fails validation: {problems[0].detail}")
    return ExactSolution(optimum=optimum, decomposition=dec, schedule=schedule)


def timeline_oracle(inst: Instance, max_tasks: int = 6, max_total_span: int = 120) -> int:
    """Minimum makespan by exhausting sub-task orderings; cross-check only.

    Enumerates every order of the 2n sub-tasks (first sub-task before
    its partner), rejecting orders that put a sub-task inside the idle
    window of an incompatible task, and computes for each order its
    earliest integral timing under the rigid gap constraints.  This
    covers every valid schedule, so the minimum over orders is the true
    optimum, with no reference to the decomposition formulation.
    """
    tasks = list(inst.tasks)
    n = len(tasks)
    if n > max_tasks:
        raise SizeLimitError(f"timeline oracle capped at {max_tasks} tasks, got {n}")
    spans = [task_span(t) for t in tasks]
    horizon = sum(spans)
    if horizon > max_total_span:
        raise SizeLimitError(
            f"timeline oracle capped at total span {max_total_span}, got {horizon}"
        )
    if n == 0:
        return 0

    ids = [t.id for t in tasks]
    edge = [
        [i != j and inst.graph.has_edge(ids[i], ids[j]) for j in range(n)] for i in range(n)
    ]
    a_len = [t.a for t in tasks]
    b_len = [t.b for t in tasks]
    b_off = [t.a + t.L for t in tasks]
    end_off = {("a", i): a_len[i] for i in range(n)}
    end_off.update({("b", i): spans[i] for i in range(n)})

    t_min = [0] * n
    constraints: list[tuple[int, int, int]] = []  # t[v] >= t[u] + c
    placed_a = [False] * n
    placed_b = [False] * n
    best = [horizon]  # back-to-back schedule is always valid

    def earliest_times() -> list[int] | None:
        times = [0] * n
        for _ in range(n + 1):
            changed = False
            for u, v, c in constraints:
                nv = times[u] + c
                if nv > times[v]:
                    times[v] = nv
                    changed = True
            if not changed:
                return times
        return None  # positive cycle: the order is infeasible

    def dfs(placed: int, last: tuple[str, int] | None) -> None:
        if placed == 2 * n:
            ms = max(t_min[i] + spans[i] for i in range(n))
            if ms < best[0]:
                best[0] = ms
            return

        open_tasks = [i for i in range(n) if placed_a[i] and not placed_b[i]]
        last_end = 0 if last is None else t_min[last[1]] + end_off[last]
        started_bound = max(
            (t_min[i] + spans[i] for i in range(n) if placed_a[i]), default=0
        )
        pending = sum(a_len[j] + b_len[j] for j in range(n) if not placed_a[j])
        pending += sum(b_len[i] for i in open_tasks)
        if max(started_bound, last_end + pending) >= best[0]:
            return

        # Close an open task: its second sub-task's start is rigid.
        for i in open_tasks:
            if any(k != i and not edge[i][k] for k in open_tasks):
                continue
            if last is not None:
                c = end_off[last] - b_off[i]
                constraints.append((last[1], i, c))
                if t_min[i] + b_off[i] >= last_end:
                    placed_b[i] = True
                    dfs(placed + 1, ("b", i))
                    placed_b[i] = False
                else:
                    retimed = earliest_times()
                    if retimed is not None:
                        saved = t_min[:]
                        t_min[:] = retimed
                        placed_b[i] = True
                        dfs(placed + 1, ("b", i))
                        placed_b[i] = False
                        t_min[:] = saved
                constraints.pop()
            else:
                placed_b[i] = True
                dfs(placed + 1, ("b", i))
                placed_b[i] = False

        # Start a new task inside every currently open, compatible window.
        for j in range(n):
            if placed_a[j]:
                continue
            if any(not edge[j][k] for k in open_tasks):
                continue
            saved_t = t_min[j]
            t_min[j] = last_end
            if last is not None:
                constraints.append((last[1], j, end_off[last]))
            placed_a[j] = True
            dfs(placed + 1, ("a", j))
            placed_a[j] = False
            if last is not None:
                constraints.pop()
            t_min[j] = saved_t

    dfs(0, None)
    return best[0]
