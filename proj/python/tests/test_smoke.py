from fractions import Fraction
import xml.etree.ElementTree as ET

import pytest

import tropenum


def test_lines_and_conics():
    assert tropenum.count(1)["n_trop"] == 1
    r = tropenum.count(2, seed=3)
    assert r["schema"] == "tropenum.count"
    assert r["n_trop"] == 1
    assert len(r["points"]) == 5


def test_dp6():
    r = tropenum.count("anticanonical", fan="dp6", seed=2)
    assert r["n_trop"] == 12
    assert r["w_trop"] == 8


def test_min_convention_reflects_points():
    a = tropenum.count(2, seed=4)
    b = tropenum.count(2, seed=4, convention="min")
    for p, q in zip(a["points"], b["points"]):
        assert [Fraction(x) for x in p] == [-Fraction(x) for x in q]


def test_scatter_is_consistent():
    d = tropenum.scatter(3, seed=2)
    assert d["consistency"]["consistent"]
    assert any(w["scattered"] for w in d["walls"])


def test_potential_without_points():
    w = tropenum.potential(0, (10, 7))
    assert w["value"]["text"] == "y0 + x2 + x1 + x0"


def test_disks_match_potential():
    q = (Fraction(7, 3), Fraction(11, 5))
    disks = sorted(d["monomial"] for d in tropenum.disks(2, q)["disks"])
    lines = sorted(line["monomial"] for line in tropenum.potential(2, q)["lines"])
    assert disks == lines


def test_render_is_svg():
    svg = tropenum.render(tropenum.scatter(2))
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")


def test_errors():
    with pytest.raises(ValueError):
        tropenum.count(1, fan="nope")
    with pytest.raises(ValueError):
        tropenum.count(2, convention="sideways")
