import csv
import io
import random
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from slipknot.census import enumerate_knot_diagrams
from slipknot.knotid import ResourceLimitError, knot_type, spectrum
from slipknot.maps import DiagramError, classify, trivial
from slipknot.ops import connect_sum_insert, cut, double
from slipknot.sampler import sample_knot_diagram
from slipknot.scanner import (
    ArcSpec, all_arcs, arc_subdiagram, disk_matrix, find_slipknots, find_subknots, grade,
    strongest,
)
from slipknot.table import standard_diagram

TREFOIL = standard_diagram("3_1")


def test_full_arcs_recover_the_knot_type():
    for name in ("3_1", "4_1", "5_2"):
        D = standard_diagram(name)
        M = disk_matrix(D)
        for s in range(M.total):
            fp, p = M.cells[ArcSpec(s, M.total)].top()
            assert (fp.label, p) == (name, 1)


def test_short_arcs_are_trivial():
    M = disk_matrix(TREFOIL)
    for s in range(6):
        assert M.cells[ArcSpec(s, 1)].p_unknot == 1
        assert arc_subdiagram(TREFOIL, ArcSpec(s, 2)).n == 0


def test_trefoil_near_full_arcs_are_half_knotted():
    M = disk_matrix(TREFOIL)
    for s in range(6):
        t = M.cells[ArcSpec(s, 5)]
        assert sorted(p for p in t.values()) == [Fraction(1, 2), Fraction(1, 2)]
    assert find_slipknots(TREFOIL, matrix=M) == []


@pytest.mark.parametrize("seed", range(8))
def test_arc_subdiagrams_are_planar_knotoids(seed):
    D = sample_knot_diagram(6, seed)
    for arc in all_arcs(D)[::5]:
        S = arc_subdiagram(D, arc)
        if S.n:
            c = classify(S)
            assert (c.kind, c.genus) == ("knotoid", 0)


def test_arc_errors():
    with pytest.raises(DiagramError):
        arc_subdiagram(TREFOIL, ArcSpec(6, 1))
    with pytest.raises(DiagramError):
        arc_subdiagram(cut(TREFOIL, TREFOIL.edges()[0]), ArcSpec(0, 1))
    assert arc_subdiagram(trivial(False), ArcSpec(0, 1)) == trivial(True)


def test_arc_containment_wraps():
    assert ArcSpec(4, 4).passages(6) == [4, 5, 0, 1]
    assert ArcSpec(4, 4).contains(ArcSpec(5, 2), 6)
    assert not ArcSpec(4, 4).contains(ArcSpec(1, 2), 6)


def test_connect_sum_disk_matrix_palette():
    F = standard_diagram("4_1")
    D = connect_sum_insert(F, F.edges()[0], cut(TREFOIL, TREFOIL.edges()[0]))
    present = disk_matrix(D).types_present()
    assert {"3_1", "4_1", "3_1#4_1"} <= present


def test_torus_five_one_matrix():
    M = disk_matrix(standard_diagram("5_1"))
    present = M.types_present()
    assert {"3_1", "5_1"} <= present
    full = [M.cells[ArcSpec(s, 9)] for s in range(10)]
    assert all(t.p_of(knot_type(standard_diagram("5_1"))) > 0 for t in full)


def test_csv_and_svg():
    M = disk_matrix(TREFOIL)
    rows = list(csv.DictReader(io.StringIO(M.to_csv())))
    assert len(rows) == 36
    assert list(rows[0]) == ["start", "len", "radius", "angle", "p_unknot", "top_type", "top_p",
                             "fingerprint_hash"]
    assert rows[-1]["top_type"] == "3_1" and rows[-1]["radius"] == "1.000000"
    svg = ET.fromstring(M.to_svg())
    assert svg.tag.endswith("svg")
    assert M.to_svg() == disk_matrix(TREFOIL).to_svg()


def test_scan_ceiling():
    big = sample_knot_diagram(15, 1)
    with pytest.raises(ResourceLimitError):
        disk_matrix(big)


def test_grades():
    assert grade(Fraction(1)) == "strong"
    assert grade(Fraction(1, 2)) == "probabilistic"
    assert grade(Fraction(1, 4)) == "weak"
    assert grade(Fraction(0)) is None


def test_subknots_of_connect_sum_include_both_factors():
    F = standard_diagram("4_1")
    D = connect_sum_insert(F, F.edges()[0], cut(TREFOIL, TREFOIL.edges()[0]))
    labels = {s.knot.label for s in find_subknots(D)}
    assert {"3_1", "4_1"} <= labels


def test_doubled_trefoil_in_unknot_is_a_strong_slipknot():
    hosts = [D for n in (1, 2) for D in enumerate_knot_diagrams(n) if knot_type(D).is_unknot]
    T2 = double(TREFOIL)
    three_one = knot_type(TREFOIL)
    rng = random.Random(2)
    for _ in range(4):
        H = rng.choice(hosts)
        D = connect_sum_insert(H, rng.choice(H.edges()), T2)
        assert knot_type(D).is_unknot
        reports = find_slipknots(D)
        assert strongest(reports, three_one) == "strong"
        r = next(r for r in reports if r.knot == three_one and r.grade == "strong")
        assert r.outer.contains(r.inner, 2 * D.n) and r.p_unknot == 1


def test_knotted_diagrams_have_no_slipknot_at_the_top_level():
    # a slipknot outer arc unknots; the whole 3_1#4_1 arc does not
    F = standard_diagram("4_1")
    D = connect_sum_insert(F, F.edges()[0], cut(TREFOIL, TREFOIL.edges()[0]))
    for r in find_slipknots(D):
        assert r.outer.length < 2 * D.n
        assert spectrum(arc_subdiagram(D, r.outer)).p_unknot == r.p_unknot
