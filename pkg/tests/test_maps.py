import random

import pytest
from hypothesis import given, settings, strategies as st

from slipknot.maps import (
    Diagram, DiagramError, KdgSyntaxError, canonical_code, canonical_form, classify, components,
    faces, genus, open_transits, parse, parse_stream, random_relabel, relabel, serialize,
    serialize_stream, trivial,
)
from slipknot.sampler import sample_knot_diagram, sample_multiknotoid

FIG1 = "kdg1\nn=2\nsigns=--\nedges=0-7,1-5,3-4\nlegs=2,6\n"
KINK = Diagram(1, (1, 0, 3, 2), (1,), (), 0, False)


def test_fig1_faces():
    D = parse(FIG1)
    assert sorted(tuple(sorted(c)) for c in faces(D)) == [(0, 4), (1, 6, 7), (2, 3, 5)]


def test_fig1_transits_follow_the_open_strand():
    assert open_transits(parse(FIG1)) == [(2, 0), (7, 5), (1, 3), (4, 6)]


def test_fig1_classification():
    c = classify(parse(FIG1))
    assert (c.kind, c.genus, c.faces) == ("knotoid", 0, 3)


def test_kink_faces_and_class():
    assert sorted(faces(KINK)) == [(0, 2), (1,), (3,)]
    c = classify(KINK)
    assert (c.kind, c.genus) == ("knot", 0)
    assert len(components(KINK).cycles) == 2


def test_two_kinks_form_a_link():
    D = Diagram(2, (1, 0, 3, 2, 5, 4, 7, 6))
    assert len(components(D).cycles) == 4
    assert classify(D).kind == "link"


def test_virtual_pairing_has_genus_one():
    D = Diagram(1, (2, 3, 0, 1))
    assert len(faces(D)) == 1
    assert genus(D) == 1
    assert not classify(D).planar


def test_trivial_knotoid_has_no_faces():
    assert faces(trivial(True)) == []


def test_kink_rootings_at_0_and_2_agree():
    assert canonical_code(KINK, 0) == canonical_code(KINK, 2)
    assert canonical_code(KINK, 0) != canonical_code(KINK, 1)


def test_fig1_tail_and_head_rootings_differ():
    D = parse(FIG1)
    assert canonical_code(D, 2) != canonical_code(D, 6)


def test_closed_components_pair_reverse_cycles():
    D = sample_knot_diagram(6, 3)
    comp = components(D)
    assert len(comp.closed) == 1
    fwd, back = comp.closed[0]
    assert set(fwd) | set(back) == set(range(24))


def test_round_trip_text():
    assert serialize(parse(FIG1)) == FIG1


def test_stream_round_trip():
    ds = [parse(FIG1), KINK, trivial(True), trivial(False)]
    text = "".join(serialize_stream(ds))
    assert list(parse_stream(text)) == ds


@pytest.mark.parametrize("text,exc", [
    ("kdg1\nn=1\nsigns=+\nedges=0-0,1-2\nlegs=3,3\n", (DiagramError, KdgSyntaxError)),
    ("kdg1\nn=1\nsigns=+\nedges=0-9,1-2\n", (DiagramError, KdgSyntaxError)),
    ("kdg1\nn=1\nsigns=+\nedges=0-1,0-2\n", (DiagramError, KdgSyntaxError)),
    ("kdg1\nn=2\nsigns=--\nedges=0-7,1-5,3-4\n", (DiagramError, KdgSyntaxError)),
    ("kdg1\nn=x\n", KdgSyntaxError),
    ("kdg2\nn=1\n", KdgSyntaxError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_syntax_error_reports_position():
    with pytest.raises(KdgSyntaxError) as info:
        parse("kdg1\nn=1\nsigns=+\nedges=0-1,2-q\n")
    assert info.value.line == 4


def test_canonical_form_is_rooted_at_flag_zero():
    D = sample_knot_diagram(5, 11)
    C = canonical_form(D)
    assert C.root == 0
    assert canonical_code(C) == canonical_code(D)


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 9))
def test_canonical_code_ignores_relabeling(seed, n):
    rng = random.Random(seed)
    D = sample_multiknotoid(n, seed).with_signs([rng.choice((1, -1)) for _ in range(n)])
    E, new_of = random_relabel(D, rng)
    assert canonical_code(E, new_of[D.tail]) == canonical_code(D, D.tail)
    assert classify(E) == classify(D)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 8))
def test_closed_code_follows_the_root(seed, n):
    rng = random.Random(seed)
    D = sample_knot_diagram(n, seed)
    E, new_of = random_relabel(D, rng)
    root = rng.randrange(4 * n)
    assert canonical_code(E, new_of[root]) == canonical_code(D, root)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 9))
def test_serialize_parse_round_trip(seed, n):
    D = sample_multiknotoid(n, seed)
    # with no crossings "signs=" cannot say shadow or diagram; it reads as signed
    assert parse(serialize(D)) == (D if n else D.with_signs(()))
    signed = D.with_signs([1 if (seed >> k) & 1 else -1 for k in range(n)]) if n else D.with_signs(())
    assert parse(serialize(signed)) == signed


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 8))
def test_every_flag_in_one_face_and_planar(seed, n):
    D = sample_multiknotoid(n, seed)
    seen = [f for cyc in faces(D) for f in cyc]
    assert sorted(seen) == list(range(4 * n))
    assert len(faces(D)) == n + 1
    assert genus(D) == 0


def test_relabel_identity():
    D = parse(FIG1)
    assert relabel(D, [0, 1], [0, 0]) == D
