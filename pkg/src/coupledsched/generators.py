"""Instance generators: reduction gadgets, the tightness example, random corpora.

The two gadget families encode classic hard problems as scheduling
instances: three-dimensional matching sources become boxes (stretch 9)
holding either their three element tasks (stretch 1) or a filler item
(stretch 2 + eps), and triangle-partition sources become stretch-4
boxes that each absorb one interleaved pair of stretch-1 tasks.  Both
come with exhaustive oracles for their source problem so the
optimum-vs-target equivalences can be tested end to end.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidParameterError, InvalidSourceError, SizeLimitError
from .model import CompatibilityGraph, Instance, new_stretched


@dataclass(frozen=True)
class ThreeDMInstance:
    """A three-dimensional matching source over disjoint equal-size parts."""

    a_part: tuple[str, ...]
    b_part: tuple[str, ...]
    c_part: tuple[str, ...]
    triples: tuple[tuple[str, str, str], ...]

    def __post_init__(self) -> None:
        parts = (self.a_part, self.b_part, self.c_part)
        if len({len(p) for p in parts}) != 1:
            raise InvalidSourceError("parts must have equal size")
        all_elems = [e for p in parts for e in p]
        if len(set(all_elems)) != len(all_elems):
            raise InvalidSourceError("parts must be disjoint with unique element names")
        a_set, b_set, c_set = map(set, parts)
        for t in self.triples:
            if len(t) != 3 or t[0] not in a_set or t[1] not in b_set or t[2] not in c_set:
                raise InvalidSourceError(f"triple {t!r} is not in A x B x C")

    @property
    def n(self) -> int:
        return len(self.a_part)

    @property
    def m(self) -> int:
        return len(self.triples)

    def occurrences(self) -> dict[str, int]:
        counts = {e: 0 for p in (self.a_part, self.b_part, self.c_part) for e in p}
        for t in self.triples:
            for e in t:
                counts[e] += 1
        return counts

    @property
    def is_two_occurrence(self) -> bool:
        """True for the restricted variant: every element in exactly two triples."""
        return self.m == 2 * self.n and all(c == 2 for c in self.occurrences().values())


@dataclass(frozen=True)
class ThreeDMTarget:
    """Scaled makespan target 63n - 3k(1 - eps) as a function of k."""

    n: int
    eps_num: int
    eps_den: int
    scale: int

    def value(self, k: int) -> int:
        return 63 * self.n * self.scale - 3 * k * (self.scale - self.eps_num)


def gen_3dm(
    src: ThreeDMInstance, eps_num: int = 1, eps_den: int = 3
) -> tuple[Instance, ThreeDMTarget]:
    """Encode a 3DM source as a one-stage-bipartite scheduling instance.

    One stretch-1 task per element, and per triple one stretch-9 box
    task on the Y side plus one stretch-(2+eps) item task; the box is
    compatible with its three elements and its item.  All stretches are
    scaled by eps_den so time stays integral; a size-k matching in the
    source corresponds exactly to a schedule of length target.value(k).
    """
    if not (0 < eps_num < eps_den):
        raise InvalidParameterError(
            f"eps must satisfy 0 < eps_num/eps_den < 1, got {eps_num}/{eps_den}"
        )
    scale = eps_den
    elements = list(src.a_part) + list(src.b_part) + list(src.c_part)
    tasks = [new_stretched(e, scale) for e in elements]
    boxes = [f"box{i}" for i in range(src.m)]
    items = [f"item{i}" for i in range(src.m)]
    tasks += [new_stretched(box, 9 * scale) for box in boxes]
    tasks += [new_stretched(item, 2 * scale + eps_num) for item in items]

    edges: list[tuple[str, str]] = []
    for i, triple in enumerate(src.triples):
        for e in triple:
            edges.append((e, boxes[i]))
        edges.append((items[i], boxes[i]))

    graph = CompatibilityGraph([t.id for t in tasks], edges)
    inst = Instance(
        tasks,
        graph,
        scale=scale,
        partition=(tuple(elements) + tuple(items), tuple(boxes)),
    )
    return inst, ThreeDMTarget(n=src.n, eps_num=eps_num, eps_den=eps_den, scale=scale)


def brute_3dm(src: ThreeDMInstance, max_triples: int = 20) -> int:
    """Maximum number of mutually disjoint triples, by exhaustive search."""
    if src.m > max_triples:
        raise SizeLimitError(f"brute_3dm capped at {max_triples} triples, got {src.m}")
    triples = [frozenset(t) for t in src.triples]
    best = [0]

    def rec(i: int, used: frozenset, count: int) -> None:
        if count > best[0]:
            best[0] = count
        if i == len(triples) or count + (len(triples) - i) <= best[0]:
            return
        if not (triples[i] & used):
            rec(i + 1, used | triples[i], count + 1)
        rec(i + 1, used, count)

    rec(0, frozenset(), 0)
    return best[0]


def random_3dm2(n: int, seed: int) -> ThreeDMInstance:
    """Random two-occurrence source: each element in exactly two triples."""
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    rng = random.Random(seed)
    a = [f"a{i + 1}" for i in range(n)]
    b = [f"b{i + 1}" for i in range(n)]
    c = [f"c{i + 1}" for i in range(n)]
    slots_a = a * 2
    slots_b = b * 2
    slots_c = c * 2
    rng.shuffle(slots_a)
    rng.shuffle(slots_b)
    rng.shuffle(slots_c)
    triples = tuple(zip(slots_a, slots_b, slots_c))
    return ThreeDMInstance(tuple(a), tuple(b), tuple(c), triples)


@dataclass(frozen=True)
class TripartiteGraph:
    """Graph over three equal independent parts; edges run between parts."""

    a_part: tuple[str, ...]
    b_part: tuple[str, ...]
    c_part: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        parts = (self.a_part, self.b_part, self.c_part)
        if len({len(p) for p in parts}) != 1:
            raise InvalidSourceError("parts must have equal size")
        all_v = [v for p in parts for v in p]
        if len(set(all_v)) != len(all_v):
            raise InvalidSourceError("parts must be disjoint with unique vertex names")
        part_of = {}
        for name, p in zip("ABC", parts):
            for v in p:
                part_of[v] = name
        seen = set()
        for u, v in self.edges:
            if u not in part_of or v not in part_of:
                raise InvalidSourceError(f"edge ({u!r}, {v!r}) references unknown vertex")
            if part_of[u] == part_of[v]:
                raise InvalidSourceError(
                    f"edge ({u!r}, {v!r}) lies inside part {part_of[u]}; parts must be independent"
                )
            key = frozenset((u, v))
            if key in seen:
                raise InvalidSourceError(f"duplicate edge ({u!r}, {v!r})")
            seen.add(key)

    @property
    def q(self) -> int:
        return len(self.a_part)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.a_part + self.b_part + self.c_part


def gen_pit(src: TripartiteGraph) -> tuple[Instance, int]:
    """Encode a triangle-partition source as a quasi-split instance.

    A and B vertices become stretch-1 X-tasks, C vertices stretch-4
    Y-tasks; A-B edges stay inside X while A-C and B-C edges become
    nesting edges.  Two hub tasks z0, z1 (joined to all of A resp. B
    and to each other) plus one extra box z2 make the X side connected
    without affecting which schedules reach the target; a triangle
    partition of the source exists iff length 12 * (|C| + 1) is
    reachable.
    """
    if src.q < 1:
        raise InvalidSourceError("source must have at least one vertex per part")
    x_of = {v: f"A_{v}" for v in src.a_part}
    x_of.update({v: f"B_{v}" for v in src.b_part})
    y_of = {v: f"C_{v}" for v in src.c_part}

    xs = [x_of[v] for v in src.a_part] + [x_of[v] for v in src.b_part] + ["z0", "z1"]
    ys = [y_of[v] for v in src.c_part] + ["z2"]
    tasks = [new_stretched(x, 1) for x in xs] + [new_stretched(y, 4) for y in ys]

    rename = {**x_of, **y_of}
    edges = [(rename[u], rename[v]) for u, v in src.edges]
    edges += [("z0", x_of[v]) for v in src.a_part]
    edges += [("z1", x_of[v]) for v in src.b_part]
    edges += [("z0", "z1"), ("z0", "z2"), ("z1", "z2")]

    graph = CompatibilityGraph([t.id for t in tasks], edges)
    inst = Instance(tasks, graph, partition=(tuple(xs), tuple(ys)))
    return inst, 12 * (len(src.c_part) + 1)


def brute_pit(src: TripartiteGraph, max_vertices: int = 15) -> bool:
    """Whether the source partitions into vertex-disjoint triangles."""
    vertices = src.vertices
    if len(vertices) > max_vertices:
        raise SizeLimitError(
            f"brute_pit capped at {max_vertices} vertices, got {len(vertices)}"
        )
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for u, v in src.edges:
        adj[u].add(v)
        adj[v].add(u)

    def rec(remaining: frozenset) -> bool:
        if not remaining:
            return True
        v = min(remaining)
        rest = remaining - {v}
        partners = sorted(adj[v] & rest)
        for i, u in enumerate(partners):
            for w in partners[i + 1:]:
                if w in adj[u] and rec(rest - {u, w}):
                    return True
        return False

    return rec(frozenset(vertices))


def random_tripartite(q: int, density: float, seed: int) -> TripartiteGraph:
    """Random tripartite source; edge kept with probability ``density``."""
    if q < 1:
        raise InvalidParameterError(f"q must be >= 1, got {q}")
    if not (0.0 <= density <= 1.0):
        raise InvalidParameterError(f"density must be in [0, 1], got {density}")
    rng = random.Random(seed)
    a = tuple(f"a{i + 1}" for i in range(q))
    b = tuple(f"b{i + 1}" for i in range(q))
    c = tuple(f"c{i + 1}" for i in range(q))
    edges = []
    for left, right in ((a, b), (a, c), (b, c)):
        for u in left:
            for v in right:
                if rng.random() < density:
                    edges.append((u, v))
    return TripartiteGraph(a, b, c, tuple(edges))


def gen_tightness() -> Instance:
    """The 6+3 instance on which the approximation meets its 5/4 bound.

    Three interleavable X-pairs each form a triangle with their own
    stretch-4 box, plus three cross edges (x2,y3), (x3,y1), (x5,y2).
    The optimum nests the three pairs, one per box (makespan 36).  Task
    and edge declaration order is pinned so the insertion-order
    deterministic flow saturates exactly the cross edges, stranding
    x1, x4, x6 with no leftover matching (makespan 45).
    """
    x_order = ["x2", "x3", "x5", "x1", "x4", "x6"]
    y_order = ["y1", "y2", "y3"]
    tasks = [new_stretched(x, 1) for x in x_order] + [new_stretched(y, 4) for y in y_order]
    edges = [
        ("x1", "x2"),
        ("x3", "x4"),
        ("x5", "x6"),
        ("x2", "y3"),
        ("x3", "y1"),
        ("x5", "y2"),
        ("x1", "y1"),
        ("x2", "y1"),
        ("x3", "y2"),
        ("x4", "y2"),
        ("x5", "y3"),
        ("x6", "y3"),
    ]
    graph = CompatibilityGraph([t.id for t in tasks], edges)
    return Instance(tasks, graph, partition=(tuple(x_order), tuple(y_order)))


def gen_random_quasi_split(
    nx: int, ny: int, alpha_y: int, edge_density: float, seed: int
) -> Instance:
    """Random quasi-split instance: stretch-1 X side, independent Y side.

    The X-subgraph is a random spanning tree plus density-driven extra
    edges (one edge dropped again if that made it complete); X-Y edges
    are sampled independently.  Deterministic under ``seed``.
    """
    if nx < 2 or ny < 1:
        raise InvalidParameterError(f"need nx >= 2 and ny >= 1, got nx={nx}, ny={ny}")
    if nx == 2:
        raise InvalidParameterError("nx = 2 forces a complete X-subgraph")
    if alpha_y < 3:
        raise InvalidParameterError(f"alpha_y must be >= 3, got {alpha_y}")
    if not (0.0 <= edge_density <= 1.0):
        raise InvalidParameterError(f"edge_density must be in [0, 1], got {edge_density}")

    rng = random.Random(seed)
    xs = [f"x{i + 1}" for i in range(nx)]
    ys = [f"y{j + 1}" for j in range(ny)]

    tree = [(xs[rng.randrange(i)], xs[i]) for i in range(1, nx)]
    in_tree = {frozenset(e) for e in tree}
    extras = []
    for i in range(nx):
        for j in range(i + 1, nx):
            pair = (xs[i], xs[j])
            if frozenset(pair) not in in_tree and rng.random() < edge_density:
                extras.append(pair)
    if len(tree) + len(extras) == nx * (nx - 1) // 2:
        extras.pop()

    xy = []
    for x in xs:
        for y in ys:
            if rng.random() < edge_density:
                xy.append((x, y))

    tasks = [new_stretched(x, 1) for x in xs] + [new_stretched(y, alpha_y) for y in ys]
    graph = CompatibilityGraph([t.id for t in tasks], tree + extras + xy)
    return Instance(tasks, graph, partition=(tuple(xs), tuple(ys)))
