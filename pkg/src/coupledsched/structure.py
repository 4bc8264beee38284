"""Structural view of a partitioned stretched instance.

Both solvers work on instances whose partition behaves like a split
graph: Y is an independent set, every X-Y edge is orientable as an
X-into-Y nesting (3*alpha(x) <= alpha(y)), and every X-X edge joins
equal stretch factors (an interleave edge).  Connectivity or
completeness of the X side is irrelevant to the algorithms, so it is
deliberately not required here; ``model.classify`` reports it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedInstanceError
from .model import Instance


@dataclass(frozen=True)
class SplitStructure:
    """Ids, stretch factors and edge views of an accepted instance."""

    xs: tuple[str, ...]
    ys: tuple[str, ...]
    alpha: dict[str, int]
    x_edges: tuple[tuple[str, str], ...]
    xy_edges: tuple[tuple[str, str], ...]  # oriented (x, y), insertion order
    x_adj: dict[str, tuple[str, ...]]
    xy_adj: dict[str, tuple[str, ...]]  # x -> hosts, insertion order
    yx_adj: dict[str, tuple[str, ...]]  # y -> nested candidates, insertion order


def split_structure(
    inst: Instance,
    require_single_x_class: bool = False,
    require_single_y_class: bool = False,
) -> SplitStructure:
    """Extract the X/Y structure, or raise ``UnsupportedInstanceError``."""
    if inst.partition is None:
        raise UnsupportedInstanceError("instance has no X/Y partition")
    if not inst.all_stretched:
        raise UnsupportedInstanceError("all tasks must be stretched")

    xs, ys = inst.partition
    xset, yset = set(xs), set(ys)
    alpha = {t.id: t.alpha for t in inst.tasks}

    x_edges: list[tuple[str, str]] = []
    xy_edges: list[tuple[str, str]] = []
    for u, v in inst.graph.edges:
        if u in yset and v in yset:
            raise UnsupportedInstanceError(f"Y side must be independent, found edge ({u}, {v})")
        if u in xset and v in xset:
            if alpha[u] != alpha[v]:
                raise UnsupportedInstanceError(
                    f"X-X edge ({u}, {v}) joins different stretch factors; "
                    "only interleave edges are supported inside X"
                )
            x_edges.append((u, v))
        else:
            x_id, y_id = (u, v) if u in xset else (v, u)
            if 3 * alpha[x_id] > alpha[y_id]:
                raise UnsupportedInstanceError(
                    f"X-Y edge ({x_id}, {y_id}) cannot be oriented X into Y: "
                    f"3*{alpha[x_id]} > {alpha[y_id]}"
                )
            xy_edges.append((x_id, y_id))

    if require_single_x_class and len({alpha[x] for x in xs}) > 1:
        raise UnsupportedInstanceError("X side must carry a single stretch factor")
    if require_single_y_class and len({alpha[y] for y in ys}) > 1:
        raise UnsupportedInstanceError("Y side must carry a single stretch factor")

    x_adj: dict[str, list[str]] = {x: [] for x in xs}
    xy_adj: dict[str, list[str]] = {x: [] for x in xs}
    yx_adj: dict[str, list[str]] = {y: [] for y in ys}
    for u, v in x_edges:
        x_adj[u].append(v)
        x_adj[v].append(u)
    for x_id, y_id in xy_edges:
        xy_adj[x_id].append(y_id)
        yx_adj[y_id].append(x_id)

    return SplitStructure(
        xs=tuple(xs),
        ys=tuple(ys),
        alpha=alpha,
        x_edges=tuple(x_edges),
        xy_edges=tuple(xy_edges),
        x_adj={k: tuple(v) for k, v in x_adj.items()},
        xy_adj={k: tuple(v) for k, v in xy_adj.items()},
        yx_adj={k: tuple(v) for k, v in yx_adj.items()},
    )
