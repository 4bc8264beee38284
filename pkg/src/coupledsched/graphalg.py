"""Integral maximum flow and general-graph maximum matching.

Both routines are deterministic under input order: adjacency is scanned
in arc/edge insertion order and ties between equally good augmenting
paths resolve to the lowest-insertion-order arc.  Callers rely on this
to pin down which optimum is returned on instances with several.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InvalidParameterError, SizeLimitError


class FlowNetwork:
    """Directed network with integer capacities and a fixed arc order."""

    def __init__(self, source: str, sink: str):
        if source == sink:
            raise InvalidParameterError("source and sink must differ")
        self.source = source
        self.sink = sink
        self._nodes: dict[str, None] = {source: None, sink: None}
        self._arcs: list[tuple[str, str, int]] = []

    def add_node(self, node: str) -> None:
        self._nodes.setdefault(node, None)

    def add_arc(self, tail: str, head: str, capacity: int) -> None:
        if capacity < 0 or not isinstance(capacity, int):
            raise InvalidParameterError(f"capacity must be a non-negative integer, got {capacity}")
        if head == self.source:
            raise InvalidParameterError("arcs into the source are not allowed")
        if tail == self.sink:
            raise InvalidParameterError("arcs out of the sink are not allowed")
        self.add_node(tail)
        self.add_node(head)
        self._arcs.append((tail, head, capacity))

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(self._nodes)

    @property
    def arcs(self) -> tuple[tuple[str, str, int], ...]:
        return tuple(self._arcs)


@dataclass(frozen=True)
class FlowResult:
    """A feasible integral flow; ``arc_flows`` aligns with the arc order."""

    value: int
    arc_flows: tuple[int, ...]

    def saturated(self, net: FlowNetwork) -> list[tuple[str, str]]:
        """Arcs carrying flow equal to their (positive) capacity."""
        return [
            (u, v)
            for (u, v, cap), f in zip(net.arcs, self.arc_flows)
            if cap > 0 and f == cap
        ]


def _verify_flow(net: FlowNetwork, flows: list[int], value: int) -> None:
    balance: dict[str, int] = {n: 0 for n in net.nodes}
    for (u, v, cap), f in zip(net.arcs, flows):
        if not (0 <= f <= cap):
            raise RuntimeError(f"flow {f} outside [0, {cap}] on arc ({u}, {v})")
        balance[u] -= f
        balance[v] += f
    for node, net_in in balance.items():
        if node == net.source or node == net.sink:
            continue
        if net_in != 0:
            raise RuntimeError(f"flow not conserved at node {node!r}: imbalance {net_in}")
    if -balance[net.source] != value or balance[net.sink] != value:
        raise RuntimeError("flow value does not match the source/sink imbalance")


def max_flow(net: FlowNetwork) -> FlowResult:
    """Maximum integral flow via layered (blocking-flow) augmentation.

    Conservation, capacity bounds and integrality of the result are
    re-checked before returning; a failure here is a bug, not bad input.
    """
    order = list(net.nodes)
    idx = {n: i for i, n in enumerate(order)}
    n = len(order)
    s, t = idx[net.source], idx[net.sink]

    # Paired residual arcs: forward at even slots, reverse at odd slots.
    head: list[int] = []
    cap: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, c in net.arcs:
        ui, vi = idx[u], idx[v]
        adj[ui].append(len(head))
        head.append(vi)
        cap.append(c)
        adj[vi].append(len(head))
        head.append(ui)
        cap.append(0)

    original_caps = list(cap)
    level = [0] * n
    it = [0] * n
    INF = 1 + sum(c for _, _, c in net.arcs)

    def bfs() -> bool:
        for i in range(n):
            level[i] = -1
        level[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for e in adj[v]:
                if cap[e] > 0 and level[head[e]] < 0:
                    level[head[e]] = level[v] + 1
                    q.append(head[e])
        return level[t] >= 0

    def dfs(v: int, pushed: int) -> int:
        if v == t:
            return pushed
        while it[v] < len(adj[v]):
            e = adj[v][it[v]]
            w = head[e]
            if cap[e] > 0 and level[w] == level[v] + 1:
                got = dfs(w, min(pushed, cap[e]))
                if got > 0:
                    cap[e] -= got
                    cap[e ^ 1] += got
                    return got
            it[v] += 1
        return 0

    value = 0
    while bfs():
        it[:] = [0] * n
        while True:
            pushed = dfs(s, INF)
            if pushed == 0:
                break
            value += pushed

    flows = [original_caps[2 * k] - cap[2 * k] for k in range(len(net.arcs))]
    _verify_flow(net, flows, value)
    return FlowResult(value=value, arc_flows=tuple(flows))


@dataclass(frozen=True)
class MatchingResult:
    """Pairwise vertex-disjoint edges of the input graph."""

    edges: tuple[tuple[str, str], ...]
    size: int


def max_matching(vertices, edges) -> MatchingResult:
    """Maximum-cardinality matching on a general graph.

    Uses alternating-tree search with blossom (odd cycle) contraction,
    so odd components do not fool it the way they would a bipartite
    augmenting-path routine.  Deterministic given vertex and edge order.
    """
    order = list(vertices)
    index = {v: i for i, v in enumerate(order)}
    if len(index) != len(order):
        raise InvalidParameterError("duplicate vertices")
    n = len(order)
    adj: list[list[int]] = [[] for _ in range(n)]
    seen: set[frozenset[int]] = set()
    for u, v in edges:
        if u == v:
            raise InvalidParameterError(f"self-loop on {u!r}")
        ui, vi = index[u], index[v]
        key = frozenset((ui, vi))
        if key in seen:
            continue
        seen.add(key)
        adj[ui].append(vi)
        adj[vi].append(ui)

    match = [-1] * n
    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        used = [False] * n
        while True:
            a = base[a]
            used[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if used[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting_path(root: int) -> int:
        nonlocal parent, base
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # Odd cycle: contract the blossom down to its base.
                    cur_base = lca(v, to)
                    in_blossom = [False] * n
                    mark_path(v, cur_base, to, in_blossom)
                    mark_path(to, cur_base, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur_base
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    q.append(match[to])
        return -1

    for v in range(n):
        if match[v] == -1:
            end = find_augmenting_path(v)
            while end != -1:
                prev = parent[end]
                nxt = match[prev]
                match[end] = prev
                match[prev] = end
                end = nxt

    pairs = tuple(
        (order[i], order[match[i]]) for i in range(n) if match[i] > i
    )
    return MatchingResult(edges=pairs, size=len(pairs))


def brute_matching(vertices, edges) -> int:
    """Maximum matching size by exhaustive search; test oracle, |V| <= 16."""
    order = list(vertices)
    n = len(order)
    if n > 16:
        raise SizeLimitError(f"brute_matching handles at most 16 vertices, got {n}")
    index = {v: i for i, v in enumerate(order)}
    adj_mask = [0] * n
    for u, v in edges:
        if u == v:
            raise InvalidParameterError(f"self-loop on {u!r}")
        ui, vi = index[u], index[v]
        adj_mask[ui] |= 1 << vi
        adj_mask[vi] |= 1 << ui

    memo: dict[int, int] = {0: 0}

    def best(avail: int) -> int:
        hit = memo.get(avail)
        if hit is not None:
            return hit
        v = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << v)
        res = best(rest)
        candidates = adj_mask[v] & rest
        while candidates:
            u_bit = candidates & -candidates
            res = max(res, 1 + best(rest & ~u_bit))
            candidates &= candidates - 1
        memo[avail] = res
        return res

    return best((1 << n) - 1) if n else 0
