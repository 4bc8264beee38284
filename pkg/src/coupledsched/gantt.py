"""Static schedule rendering: per-task text timelines and SVG."""

from __future__ import annotations

from .model import Instance, Schedule, makespan

SVG_COLORS = {"a": "#4c78a8", "b": "#f28e2b", "idle": "#e5e5e5"}


def render_text(inst: Instance, schedule: Schedule) -> str:
    """One row per task: 'a' and 'b' sub-tasks, '.' for the idle window."""
    total = makespan(inst, schedule)
    width = max(len(t.id) for t in inst.tasks)
    rows = sorted(inst.tasks, key=lambda t: (schedule.start(t.id), t.id))
    lines = []
    ruler = "".join(str(u % 10) for u in range(total))
    lines.append(" " * (width + 2) + ruler)
    for t in rows:
        start = schedule.start(t.id)
        cells = [" "] * total
        for u in range(start, start + t.a):
            cells[u] = "a"
        for u in range(start + t.a, start + t.a + t.L):
            cells[u] = "."
        for u in range(start + t.a + t.L, start + t.a + t.L + t.b):
            cells[u] = "b"
        lines.append(f"{t.id:>{width}} |" + "".join(cells) + "|")
    lines.append(f"makespan {total}")
    return "\n".join(lines) + "\n"


def render_svg(inst: Instance, schedule: Schedule, unit_px: int = 14) -> str:
    """Self-contained SVG with one bar row per task and a unit grid."""
    total = makespan(inst, schedule)
    rows = sorted(inst.tasks, key=lambda t: (schedule.start(t.id), t.id))
    row_h, bar_h, pad = 26, 18, 6
    label_w = 10 + 8 * max(len(t.id) for t in inst.tasks)
    width = label_w + total * unit_px + pad * 2
    height = pad * 2 + row_h * len(rows) + 22

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    grid_top = pad
    grid_bottom = pad + row_h * len(rows)
    step = 1 if total <= 60 else 5
    for u in range(0, total + 1, step):
        x = label_w + u * unit_px
        parts.append(
            f'<line x1="{x}" y1="{grid_top}" x2="{x}" y2="{grid_bottom}" '
            f'stroke="#cccccc" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x}" y="{grid_bottom + 14}" fill="#666666">{u}</text>'
        )
    for row, t in enumerate(rows):
        y = pad + row * row_h + (row_h - bar_h) // 2
        start = schedule.start(t.id)
        parts.append(
            f'<text x="{pad}" y="{y + bar_h - 4}" fill="#222222">{t.id}</text>'
        )
        segments = (
            (start, t.a, SVG_COLORS["a"]),
            (start + t.a, t.L, SVG_COLORS["idle"]),
            (start + t.a + t.L, t.b, SVG_COLORS["b"]),
        )
        for seg_start, seg_len, color in segments:
            if seg_len == 0:
                continue
            x = label_w + seg_start * unit_px
            parts.append(
                f'<rect x="{x}" y="{y}" width="{seg_len * unit_px}" height="{bar_h}" '
                f'fill="{color}" stroke="#555555" stroke-width="0.5"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
