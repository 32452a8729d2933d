from fractions import Fraction as F

import pytest

from helpers import fr
from tcrisk import InvalidObject, Measure, RiskMeasure
from tcrisk.simplex import CORNER_A, SimplexScene, project, render_svg, to_csv, to_xy


def test_project_worked(worked):
    scene = project(worked, [0], [1])
    pts = dict(scene.points)
    assert pts["g1"] == fr("3/5", "1/5", "1/5") and pts["g2"] == fr("1/5", "3/5", "1/5")
    assert pts["Z6"] == fr("2/15", "3/5", "4/15")
    assert all(sum(t) == 1 and min(t) >= 0 for _, t in scene.points)
    assert [s[0] for s in scene.segments] == ["sigma(A) paste level", "sigma(B) paste ray"]


def test_project_corner_cases(u3):
    simplex = RiskMeasure(u3, tuple(Measure.point_mass(u3, i) for i in range(3)))
    scene = project(simplex, [0], [1])
    gens = [t for label, t in scene.points if label.startswith("g")]
    assert gens == [fr(1, 0, 0), fr(0, 1, 0), fr(0, 0, 1)]
    lin = RiskMeasure.from_vectors(u3, [fr("1/2", "1/4", "1/4")])
    assert [t for label, t in project(lin, [0], [1]).points if label.startswith("g")] == [fr("1/2", "1/4", "1/4")]
    with pytest.raises(InvalidObject):
        project(lin, [0], [0, 1])


def test_svg_layout(worked):
    svg = render_svg(project(worked, [0], [1])).decode()
    assert 'width="600" height="520"' in svg
    assert svg.count('font-size="12">Z') == 6
    assert svg.count("stroke-dasharray=\"4,4\"") == 2
    empty = render_svg(SimplexScene(((0,), (1,), (2,)))).decode()
    assert "<circle" not in empty and ">A</text>" in empty
    x, y = to_xy(fr(1, 0, 0))
    assert (x, y) == CORNER_A


def test_svg_deterministic_and_matches_golden(worked, data_dir):
    a = render_svg(project(worked, [0], [1]))
    b = render_svg(project(worked, [0], [1]))
    assert a == b
    assert a == (data_dir / "worked_simplex.svg").read_bytes()


def test_csv(worked):
    text = to_csv(project(worked, [0], [1]))
    lines = text.splitlines()
    assert lines[0] == "label,pA,pB,pRest"
    assert "Z6,2/15,3/5,4/15" in lines


def test_scene_rejects_non_barycentric():
    scene = SimplexScene(((0,), (1,), (2,)))
    with pytest.raises(InvalidObject):
        scene.add_point("bad", (F(1, 2), F(1, 2), F(1, 2)))
