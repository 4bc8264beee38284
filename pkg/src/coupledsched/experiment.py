"""Seeded approx-vs-exact ratio experiments over random corpora."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .approx import approx_solve
from .errors import InvalidParameterError
from .exact import exact_optimum
from .generators import gen_random_quasi_split

DENSITIES = (0.15, 0.3, 0.5, 0.8)


@dataclass(frozen=True)
class ExperimentRow:
    instance_id: str
    nx: int
    ny: int
    alpha_y: int
    approx_makespan: int
    exact_makespan: int
    ratio: float


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple[ExperimentRow, ...]
    max_ratio: float
    mean_ratio: float

    def to_dict(self) -> dict:
        return {
            "rows": [
                {
                    "instance_id": r.instance_id,
                    "x_count": r.nx,
                    "y_count": r.ny,
                    "alpha_y": r.alpha_y,
                    "approx_makespan": r.approx_makespan,
                    "exact_makespan": r.exact_makespan,
                    "ratio": r.ratio,
                }
                for r in self.rows
            ],
            "summary": {"max_ratio": self.max_ratio, "mean_ratio": self.mean_ratio},
        }


def run_experiment(
    corpus_size: int,
    seed: int,
    max_x: int = 10,
    max_y: int = 3,
    max_alpha_y: int = 12,
) -> ExperimentReport:
    """Solve a seeded random quasi-split corpus with both algorithms.

    Each row cross-checks the proven guarantee with exact integer
    arithmetic (4 * approx <= 5 * exact) before the float ratio is
    reported; a violation would be an algorithm bug and raises.
    """
    if corpus_size < 1:
        raise InvalidParameterError(f"corpus_size must be >= 1, got {corpus_size}")
    if max_x < 3 or max_y < 1 or max_alpha_y < 3:
        raise InvalidParameterError("need max_x >= 3, max_y >= 1, max_alpha_y >= 3")
    rng = random.Random(seed)
    rows = []
    for k in range(corpus_size):
        nx = rng.randint(3, max_x)
        ny = rng.randint(1, max_y)
        alpha_y = rng.randint(3, max_alpha_y)
        density = rng.choice(DENSITIES)
        inst = gen_random_quasi_split(nx, ny, alpha_y, density, rng.randrange(2**32))
        approx = approx_solve(inst)
        exact = exact_optimum(inst)
        if 4 * approx.makespan > 5 * exact.optimum:
            raise RuntimeError(
                f"ratio bound violated on corpus item {k}: "
                f"{approx.makespan} / {exact.optimum} > 5/4"
            )
        rows.append(
            ExperimentRow(
                instance_id=f"qs-{k:05d}",
                nx=nx,
                ny=ny,
                alpha_y=alpha_y,
                approx_makespan=approx.makespan,
                exact_makespan=exact.optimum,
                ratio=approx.makespan / exact.optimum,
            )
        )
    rows.sort(key=lambda r: r.instance_id)
    ratios = [r.ratio for r in rows]
    return ExperimentReport(
        rows=tuple(rows),
        max_ratio=max(ratios),
        mean_ratio=sum(ratios) / len(ratios),
    )
