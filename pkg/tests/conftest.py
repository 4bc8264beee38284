"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

from itertools import combinations

import pytest

from coupledsched.graphalg import FlowNetwork
from coupledsched.model import CompatibilityGraph, Instance, new_stretched
from coupledsched.structure import split_structure


def build_stretched(
    alphas: dict[str, int],
    edges,
    partition: tuple[tuple[str, ...], tuple[str, ...]] | None = None,
    scale: int = 1,
) -> Instance:
    tasks = [new_stretched(task_id, alpha) for task_id, alpha in alphas.items()]
    graph = CompatibilityGraph(list(alphas), edges)
    return Instance(tasks, graph, scale=scale, partition=partition)


def brute_min_cut(net: FlowNetwork) -> int:
    """Exhaustive minimum s-t cut; with a feasibility check on the returned
    flow this pins the maximum flow value by weak duality."""
    inner = [node for node in net.nodes if node not in (net.source, net.sink)]
    best = None
    for size in range(len(inner) + 1):
        for subset in combinations(inner, size):
            s_side = {net.source, *subset}
            capacity = sum(cap for u, v, cap in net.arcs if u in s_side and v not in s_side)
            best = capacity if best is None else min(best, capacity)
    return best


def brute_decomposition_optimum(inst: Instance) -> int:
    """Plain exhaustive role assignment, no bounds, no ordering tricks.

    Same decomposition formulation as the production solver but none of
    its search machinery; usable for |X| up to about 8.
    """
    st = split_structure(inst, require_single_y_class=True)
    xs = list(st.xs)
    base = sum(3 * st.alpha[y] for y in st.ys)
    residual = {y: st.alpha[y] for y in st.ys}
    decided: set[str] = set()
    best = [sum(3 * st.alpha[x] for x in xs)]

    def rec(i: int, cost: int) -> None:
        while i < len(xs) and xs[i] in decided:
            i += 1
        if i == len(xs):
            best[0] = min(best[0], cost)
            return
        x = xs[i]
        ax = st.alpha[x]
        for partner in st.x_adj[x]:
            if partner in decided:
                continue
            partner_hosts = set(st.xy_adj[partner])
            for host in st.xy_adj[x]:
                if host in partner_hosts and residual[host] >= 4 * ax:
                    decided.update((x, partner))
                    residual[host] -= 4 * ax
                    rec(i + 1, cost)
                    residual[host] += 4 * ax
                    decided.difference_update((x, partner))
            decided.update((x, partner))
            rec(i + 1, cost + 4 * ax)
            decided.difference_update((x, partner))
        for host in st.xy_adj[x]:
            if residual[host] >= 3 * ax:
                decided.add(x)
                residual[host] -= 3 * ax
                rec(i + 1, cost)
                residual[host] += 3 * ax
                decided.remove(x)
        decided.add(x)
        rec(i + 1, cost + 3 * ax)
        decided.remove(x)

    rec(0, 0)
    return base + best[0]


def detect_nesting_pairs(inst: Instance, starts: dict[str, int]) -> set[frozenset[str]]:
    """Pairs (host, guest) where a guest sub-task runs inside the host's
    idle window; these are exactly the edges the schedule relies on."""
    used: set[frozenset[str]] = set()
    for host in inst.tasks:
        w_lo = starts[host.id] + host.a
        w_hi = w_lo + host.L
        if w_lo == w_hi:
            continue
        for guest in inst.tasks:
            if guest.id == host.id:
                continue
            g = starts[guest.id]
            for lo, hi in ((g, g + guest.a), (g + guest.a + guest.L, g + guest.a + guest.L + guest.b)):
                if w_lo <= lo and hi <= w_hi:
                    used.add(frozenset((host.id, guest.id)))
    return used


def drop_edge(inst: Instance, u: str, v: str) -> Instance:
    kept = [e for e in inst.graph.edges if frozenset(e) != frozenset((u, v))]
    graph = CompatibilityGraph(inst.graph.vertices, kept)
    return Instance(inst.tasks, graph, scale=inst.scale, partition=inst.partition)


@pytest.fixture
def tightness_instance():
    from coupledsched.generators import gen_tightness

    return gen_tightness()
