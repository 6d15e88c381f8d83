import json
import math
import os
import pathlib

import pytest

import psfig

DATA = pathlib.Path(os.environ.get("PSFIG_TEST_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"))
SEED = (DATA / "paper.tex").read_text()


def test_parse_document_counts():
    doc = psfig.parse_document(SEED)
    assert doc["unit"] == (0.5, "cm")
    kinds = [[c["command"] for c in p["commands"]] for p in doc["pictures"]]
    assert [k.count("psline") for k in kinds] == [3, 5, 12]
    assert [k.count("pnode") for k in kinds] == [0, 8, 11]
    assert [k.count("psccurve") for k in kinds] == [1, 1, 1]


def test_resolve_document_geometry():
    pics = psfig.resolve_document(SEED)
    ray = pics[0].elements[1].points[1]
    assert ray[0] == pytest.approx(-5.5 * math.sqrt(3) / 2, abs=1e-12)
    assert ray[1] == pytest.approx(-2.75, abs=1e-12)
    assert pics[1].nodes["A"] == pytest.approx([0.0, 7.5], abs=1e-12)
    assert pics[2].nodes["A"] == pytest.approx([3 * math.sqrt(3), -3.0], abs=1e-12)
    assert pics[1].nodes["D"] == pytest.approx([6 * math.sqrt(3), 0.0], abs=1e-12)
    assert [e.kind for e in pics[0].elements] == ["polyline"] * 3 + ["closed_curve"]


def test_spline_and_sampling():
    chain = psfig.closed_spline([(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert len(chain) == 4 and chain.closed
    p0, c1, c2, p3 = chain.segments[0]
    assert c1 == pytest.approx([1, 1 / 3], abs=1e-12)
    assert c2 == pytest.approx([1 / 3, 1], abs=1e-12)
    samples = psfig.sample_chain(chain, 1)
    assert samples == [[1, 0], [0, 1], [-1, 0], [0, -1]]
    with pytest.raises(psfig.CurveError):
        psfig.closed_spline([(0, 0), (1, 1)])


def test_render_matches_golden_files():
    svgs = psfig.render_svg(SEED)
    for k, svg in enumerate(svgs, start=1):
        assert svg == (DATA / "golden" / f"paper-{k}.svg").read_text()
    text = psfig.render_json(SEED)
    assert text == (DATA / "golden" / "paper.resolved.json").read_text()
    assert len(json.loads(text)["pictures"]) == 3


def test_errors_carry_positions():
    with pytest.raises(psfig.ParseError) as err:
        psfig.parse_document((DATA / "newpage_inside.tex").read_text())
    message, line, column, snippet = err.value.args
    assert (line, column, snippet) == (4, 3, "\\newpage")
    assert "newpage" in message

    with pytest.raises(psfig.ResolveError) as err:
        psfig.resolve_document((DATA / "unbound_node.tex").read_text())
    assert err.value.args[3] == "Q"

    with pytest.raises(psfig.ParseError, match="bare number"):
        psfig.parse_point("(5)")


def test_dimensions():
    assert psfig.parse_dimension("2pt") == (2.0, "pt")
    assert psfig.to_cm("1in") == pytest.approx(2.54)
    assert psfig.parse_point("([nodesep=6,angle=30]V)") == {"kind": "offset", "angle": 30.0, "nodesep": 6.0, "base": "V"}
    with pytest.raises(psfig.DimensionError):
        psfig.parse_dimension("3")
