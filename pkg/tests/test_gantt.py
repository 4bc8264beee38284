import xml.etree.ElementTree as ET

from coupledsched.approx import approx_solve
from coupledsched.gantt import render_svg, render_text
from coupledsched.generators import gen_tightness


def test_text_render_shows_segments():
    inst = gen_tightness()
    solution = approx_solve(inst)
    text = render_text(inst, solution.schedule)
    lines = text.splitlines()
    assert lines[-1] == "makespan 45"
    assert len(lines) == len(inst.tasks) + 2  # ruler + rows + footer
    y1_row = next(line for line in lines if line.lstrip().startswith("y1"))
    assert "aaaa....bbbb" in y1_row
    x3_row = next(line for line in lines if line.lstrip().startswith("x3"))
    assert "a.b" in x3_row


def test_text_render_row_alignment():
    inst = gen_tightness()
    solution = approx_solve(inst)
    lines = render_text(inst, solution.schedule).splitlines()
    body = lines[1:-1]
    assert len({len(line) for line in body}) == 1  # constant row width


def test_svg_render_is_wellformed():
    inst = gen_tightness()
    solution = approx_solve(inst)
    svg = render_svg(inst, solution.schedule)
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    rects = [el for el in root.iter() if el.tag.endswith("rect")]
    # background plus one rect per non-empty segment (three per stretched task)
    assert len(rects) == 1 + 3 * len(inst.tasks)
    labels = {el.text for el in root.iter() if el.tag.endswith("text")}
    assert {t.id for t in inst.tasks} <= labels
