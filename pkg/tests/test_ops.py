import random

import pytest
from hypothesis import given, settings, strategies as st

from slipknot.census import enumerate_shadows, shadow_counts, unknotting_number
from slipknot.knotid import UNKNOT_FP, geodesic_distance, knot_type, spectrum
from slipknot.maps import (
    Diagram, DiagramError, canonical_code, classify, parse, random_relabel, trivial, unrooted_key,
)
from slipknot.ops import (
    close_legs, connect_sum_insert, contains_in_diagram, contains_knotoid, contract,
    crossing_replace, cut, double, find_disconnecting_edges, four_tangle, join, leg_face_class,
    split, toggle,
)
from slipknot.sampler import sample_knot_diagram, sample_knotoid
from slipknot.table import primes, standard_diagram

FIG1 = parse("kdg1\nn=2\nsigns=--\nedges=0-7,1-5,3-4\nlegs=2,6\n")
KINK = Diagram(1, (1, 0, 3, 2), (1,), (), 0, False)
ONE_CROSSING = Diagram(1, (0, 1, 2, 3), (1,), (0, 1, 2, 3), None, True)
seeds = st.integers(0, 2**32 - 1)


def signed_knotoid(n, seed):
    rng = random.Random(seed)
    S = sample_knotoid(n, seed)
    return S.with_signs([rng.choice((1, -1)) for _ in range(n)])


# cut ------------------------------------------------------------------------


def test_cut_kink():
    S = cut(KINK, (0, 1))
    assert (S.n, S.legs, classify(S).kind) == (1, (0, 1), "knotoid")


def test_cut_rejects_non_edges():
    with pytest.raises(DiagramError):
        cut(KINK, (0, 2))


@pytest.mark.parametrize("seed", range(10))
def test_cut_has_distance_zero(seed):
    D = sample_knot_diagram(7, seed)
    for a, b in D.edges():
        assert geodesic_distance(cut(D, (a, b))) == 0
        assert geodesic_distance(cut(D, (b, a))) == 0


def test_cut_trefoil_anywhere_gives_trefoil():
    D = standard_diagram("3_1")
    for a, b in D.edges():
        sp = spectrum(cut(D, (a, b)))
        assert [fp.label for fp in sp] == ["3_1"] and list(sp.values()) == [1]


# contraction -----------------------------------------------------------------


def test_contract_fig1_tail():
    C = contract(FIG1, 2)
    # surviving crossing 1 is relabeled 0: edge (4,5) -> (0,1), legs (7,6) -> (3,2)
    assert C.n == 1 and C.signs == (-1,)
    assert C.edges() == [(0, 1)] and C.legs == (3, 2)
    assert contract(C, C.tail) == trivial(True)


def test_contract_errors():
    with pytest.raises(DiagramError):
        contract(FIG1, 0)
    with pytest.raises(DiagramError):
        contract(trivial(True), 0)


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(1, 9), st.booleans())
def test_contraction_keeps_planarity_and_one_strand(seed, n, use_tail):
    S = signed_knotoid(n, seed)
    C = contract(S, S.tail if use_tail else S.head)
    assert C.n == S.n - 1
    if C.n:
        c = classify(C)
        assert (c.kind, c.genus) == ("knotoid", 0)


# containment -----------------------------------------------------------------


def test_containment_trivial_cases():
    S = signed_knotoid(6, 1)
    assert contains_knotoid(S, S).found
    assert contains_knotoid(trivial(True), S).found
    assert not contains_knotoid(S, contract(S, S.tail)).found


def test_containment_of_constructed_11_crossing_instance():
    rng = random.Random(4)
    D = sample_knot_diagram(11, 4)
    a, b = D.edges()[3]
    S = cut(D, (a, b))
    T = S
    for _ in range(5):
        T = contract(T, rng.choice(T.legs))
    T_relabeled, _ = random_relabel(T, rng)
    res = contains_knotoid(T_relabeled, S)
    assert res.found and len(res.witness) == 5
    assert contains_in_diagram(D, T_relabeled).found


def test_containment_rejects_foreign_knotoid():
    # a different 3-crossing knotoid type cannot come from a 2-crossing diagram
    assert not contains_knotoid(signed_knotoid(3, 0), signed_knotoid(2, 0)).found


# join / split ------------------------------------------------------------------


def test_join_with_trivial():
    K = signed_knotoid(4, 2)
    assert join(trivial(True), K) == K
    assert join(K, trivial(True)) == K


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 5), st.integers(1, 5))
def test_join_split_round_trip(seed, n, m):
    K1, K2 = signed_knotoid(n, seed), signed_knotoid(m, seed + 1)
    J = join(K1, K2)
    assert J.n == n + m
    e = (K1.head, J.tau[K1.head])
    assert e in find_disconnecting_edges(J) or e[::-1] in find_disconnecting_edges(J)
    A, B = split(J, e)
    assert canonical_code(A) == canonical_code(K1)
    assert canonical_code(B) == canonical_code(K2)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_join_is_associative(seed):
    a, b, c = (signed_knotoid(k, seed + k) for k in (2, 3, 4))
    assert canonical_code(join(join(a, b), c)) == canonical_code(join(a, join(b, c)))


# connect sums and tangles ---------------------------------------------------------


def test_insert_empty_tangle():
    D = standard_diagram("4_1")
    assert connect_sum_insert(D, D.edges()[0], trivial(True)) == D


@pytest.mark.parametrize("host,guest", [("4_1", "3_1"), ("3_1", "3_1"), ("3_1", "3_1m"), ("5_2", "4_1")])
def test_insert_multiplies_fingerprints(host, guest):
    D, G = standard_diagram(host), standard_diagram(guest)
    T = cut(G, G.edges()[0])
    expected = knot_type(D).product(knot_type(G))
    for e in D.edges()[:3]:
        R = connect_sum_insert(D, e, T)
        assert R.n == D.n + G.n
        assert knot_type(R).plain() == expected.plain()


def test_insert_rejects_different_face_legs():
    with pytest.raises(DiagramError):
        connect_sum_insert(KINK, (0, 1), FIG1)


def test_granny_and_square_are_told_apart():
    T = standard_diagram("3_1")
    granny = connect_sum_insert(T, T.edges()[0], cut(T, T.edges()[0]))
    Tm = standard_diagram("3_1m")
    square = connect_sum_insert(T, T.edges()[0], cut(Tm, Tm.edges()[0]))
    assert knot_type(granny).label == "3_1#3_1"
    assert knot_type(square).label == "3_1#3_1m"


def test_unknotted_insert_keeps_unknotting_number():
    rng = random.Random(9)
    U = KINK.with_signs((-1,))
    checked = 0
    for seed in range(40):
        D = sample_knot_diagram(4, seed)
        e = rng.choice(D.edges())
        R = connect_sum_insert(D, e, cut(U, (0, 1)))
        assert unknotting_number(R) == unknotting_number(D)
        checked += 1
    assert checked == 40


def test_crossing_replace_by_single_crossing_is_identity():
    D = standard_diagram("3_1")
    for v in range(D.n):
        R = crossing_replace(D, v, ONE_CROSSING.with_signs((D.signs[v],)))
        assert unrooted_key(R) == unrooted_key(D)


def test_crossing_replace_size():
    T4 = four_tangle(cut(standard_diagram("3_1"), (0, standard_diagram("3_1").tau[0])))
    for seed in range(5):
        D = sample_knot_diagram(5, seed)
        R = crossing_replace(D, seed % 5, T4)
        assert R.n == D.n - 1 + T4.n
        assert classify(R).genus == 0


def test_crossing_replace_rejects_wrong_tangle():
    with pytest.raises(DiagramError):
        crossing_replace(KINK, 0, FIG1)


def test_four_tangle_acts_as_connect_sum():
    F = standard_diagram("4_1")
    for name in ("3_1", "3_1m"):
        K = standard_diagram(name)
        T4 = four_tangle(cut(K, K.edges()[0]))
        assert knot_type(crossing_replace(KINK, 0, T4)).label == name
        assert knot_type(crossing_replace(F, 0, T4)).label == f"{name}#4_1"


def test_double_trefoil():
    T = standard_diagram("3_1")
    T2 = double(T)
    assert T2.n == 4 * T.n
    assert classify(T2).kind == "knotoid" and leg_face_class(T2) == "same-face"
    assert knot_type(connect_sum_insert(trivial(False), None, T2)) == UNKNOT_FP


def test_double_then_four_tangle_into_kink_is_still_unknot():
    T4 = four_tangle(double(standard_diagram("3_1")))
    R = crossing_replace(KINK, 0, T4)
    assert knot_type(R).is_unknot


# toggles and legs -------------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 8))
def test_toggle_is_an_involution_on_signs_only(seed, n):
    D = sample_knot_diagram(n, seed)
    v = seed % n
    assert toggle(toggle(D, v), v) == D
    assert toggle(D, v).shadow() == D.shadow()


def test_toggling_trefoil_crossing_unknots():
    T = standard_diagram("3_1")
    for v in range(3):
        assert knot_type(toggle(T, v)).is_unknot


def test_fig1_legs_on_different_faces():
    assert leg_face_class(FIG1) == "different-faces"
    assert close_legs(FIG1).genus == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_cut_close_inverse_on_census(n):
    for D in enumerate_shadows(n, "knot-shadow"):
        for a, b in D.edges():
            for e in ((a, b), (b, a)):
                S = cut(D, e)
                assert leg_face_class(S) == "same-face"
                closed = close_legs(S)
                assert closed.genus == 0
                assert canonical_code(closed.diagram) == canonical_code(D, e[0])


@pytest.mark.parametrize("n", range(1, 6))
def test_same_face_knotoids_match_knot_shadows(n):
    same = sum(1 for S in enumerate_shadows(n, "knotoid-shadow") if leg_face_class(S) == "same-face")
    assert same == shadow_counts(n)["knot-shadow"]


def test_table_fingerprints_are_distinct_from_unknot():
    assert all(not fp.trivial for fp in primes().values())
