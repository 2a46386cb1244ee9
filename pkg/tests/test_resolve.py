import json

import pytest
from hypothesis import given, settings, strategies as st

from bottpoly import polyhedra
from bottpoly.errors import DomainError
from bottpoly.resolve import (
    CHECK_ORDER,
    construct_m,
    containment_check,
    recursion_bound,
    resolve,
    verify_resolution,
)
from bottpoly.rootsys import RootDatum, is_reduced
from bottpoly.stringpoly import m_of_lambda
from bottpoly.twistedcube import WordMult, cartier_data, satisfies_P

A1 = RootDatum.of("A", 1)
A2 = RootDatum.of("A", 2)
SMALL = [RootDatum.of(f, r) for f, r in [("A", 2), ("A", 3), ("B", 2), ("G", 2)]]


@st.composite
def word_and_weight(draw, max_len=6):
    d = draw(st.sampled_from(SMALL))
    w = tuple(draw(st.lists(st.integers(1, d.rank), min_size=1, max_size=max_len).filter(
        lambda w: is_reduced(d, w))))
    lam = tuple(draw(st.lists(st.integers(0, 3), min_size=d.rank, max_size=d.rank)))
    return d, w, lam


def test_construct_examples():
    assert construct_m(A2, (1, 2, 1), (1, 1)) == (2, 1, 1)
    assert construct_m(A2, (1, 2, 1), (0, 0)) == (2, 1, 1)
    for m in range(5):
        assert construct_m(A1, (1,), (m,)) == (max(m, 1),)


def test_construct_errors():
    with pytest.raises(DomainError):
        construct_m(A2, (1, 2, 1, 2), (1, 1))
    with pytest.raises(DomainError):
        construct_m(A2, (1, 2, 1), (1, -1))
    with pytest.raises(DomainError):
        construct_m(A2, (1, 2, 1), (1, 1), offset=(0, -1, 0))


def test_offset_adds_to_minimal_choice():
    m = construct_m(A2, (1, 2, 1), (1, 1), offset=(0, 0, 2))
    # m_3 = 1 + 2, then m_1 must cover the larger column maximum M_3
    assert m[2] == 3 and m[1] == 1 and m[0] == 4
    assert satisfies_P(WordMult(A2, (1, 2, 1), m)).holds


@settings(max_examples=150, deadline=None)
@given(word_and_weight())
def test_construct_output_properties(case):
    d, w, lam = case
    m = construct_m(d, w, lam)
    mlam = m_of_lambda(d, w, lam)
    assert all(a >= b for a, b in zip(m, mlam))
    assert all(v > 0 for v in m)
    wm = WordMult(d, w, m)
    table = cartier_data(wm)
    assert satisfies_P(wm).holds
    for sigma, r in table.items():
        assert all(v > 0 for s, v in zip(sigma, r) if s == "-")
    assert table.all_distinct()


@settings(max_examples=150, deadline=None)
@given(word_and_weight())
def test_construct_is_minimal(case):
    d, w, lam = case
    m = construct_m(d, w, lam)
    mlam = m_of_lambda(d, w, lam)
    for k in range(1, len(w) + 1):
        assert m[k - 1] == recursion_bound(d, w, mlam, m, k)
        if m[k - 1] - 1 >= max(mlam[k - 1], 1):
            lowered = list(m)
            lowered[k - 1] -= 1
            assert lowered[k - 1] < recursion_bound(d, w, mlam, lowered, k)


def test_verify_examples():
    rep = verify_resolution(A2, (1, 2, 1), (1, 1), (2, 1, 1))
    assert rep.all_passed, rep.failed()
    assert list(rep.checks) == list(CHECK_ORDER)
    assert rep.lattice_counts == {1: 18, 2: 75, 3: 196}

    rep = verify_resolution(A2, (1, 2, 1), (1, 1), (1, 1, 1))
    assert rep.checks["conditionP"].passed and rep.checks["lattice"].passed
    assert not rep.checks["simple"].passed and not rep.checks["smooth"].passed
    assert not rep.checks["M4"].passed

    rep = verify_resolution(A2, (1, 2, 1), (1, 1), (0, 1, 1))
    assert not rep.checks["M2"].passed and rep.checks["M2"].witness == {"indices": [1]}
    assert not rep.checks["conditionP"].passed
    assert rep.checks["conditionP"].witness == "k=1 x=(0,1) A_1=-1"
    assert not rep.checks["delta_equals_P"].passed
    assert not rep.checks["lattice"].passed
    # containment of m(lambda) in itself is reflexive
    assert rep.checks["containment"].passed


def test_report_json_is_deterministic():
    a = resolve(A2, (1, 2, 1), (1, 1)).to_json()
    b = resolve(A2, (1, 2, 1), (1, 1)).to_json()
    assert json.dumps(a) == json.dumps(b)
    assert list(a) == ["input", "m_lambda", "m", "checks", "vertices", "lattice_counts", "info"]
    assert a["m"] == [2, 1, 1] and a["m_lambda"] == [0, 1, 1]
    assert all(isinstance(c, str) and "/" in c for v in a["vertices"] for c in v)
    info = a["info"]
    assert info["reduced_for_longest"] is True
    assert info["m_lambda_polytope"]["lattice"]["pass"] is False


def test_containment_examples():
    rep = containment_check(A2, (1, 2, 1), (0, 1, 1), (0, 1, 1), 3)
    assert rep.contained and all(miss == 0 for _, miss, _ in rep.per_dilate.values())
    rep = containment_check(A2, (1, 2, 1), (0, 1, 1), (2, 1, 1), 3)
    assert rep.contained and rep.componentwise_leq
    assert {k: v[0] for k, v in rep.per_dilate.items()} == {1: 8, 2: 27, 3: 64}
    rep = containment_check(A2, (1, 2, 1), (2, 1, 1), (0, 1, 1), 2)
    assert not rep.contained and not rep.componentwise_leq
    pts, miss, first = rep.per_dilate[2]
    assert pts == 75 and miss > 0 and first is not None
    assert rep.to_json()["label"] == "lattice-level, dilates <= 2"


@settings(max_examples=100, deadline=None)
@given(word_and_weight(max_len=4), st.data())
def test_M3_equals_condition_P(case, data):
    d, w, _ = case
    m = tuple(data.draw(st.lists(st.integers(0, 3), min_size=len(w), max_size=len(w))))
    rep = verify_resolution(d, w, (0,) * d.rank, m, dilates=1)
    assert rep.checks["M3"].passed == rep.checks["conditionP"].passed
    if rep.checks["smooth"].passed:
        assert rep.checks["simple"].passed
    if rep.checks["conditionP"].passed:
        # under (P) the vertices are exactly the Cartier vectors
        assert rep.checks["M4"].passed == (len(rep.vertices) == 2 ** len(w))


@pytest.mark.parametrize("datum,word,lam", [
    (A2, (1, 2, 1), (0, 0)), (A2, (2, 1, 2), (2, 1)), (RootDatum.of("B", 2), (1, 2, 1, 2), (1, 1)),
    (RootDatum.of("B", 2), (2, 1, 2, 1), (0, 2)), (RootDatum.of("G", 2), (1, 2, 1), (1, 1)),
    (RootDatum.of("A", 3), (1, 2, 3, 1, 2, 1), (0, 0, 0)), (RootDatum.of("G", 2), (2, 1, 2, 1), (1, 0)),
])
def test_resolution_passes(datum, word, lam):
    rep = resolve(datum, word, lam)
    assert rep.all_passed, (rep.failed(), rep.to_json()["checks"])


def test_resolution_longest_g2_at_first_dilate():
    G2 = RootDatum.of("G", 2)
    rep = resolve(G2, (1, 2, 1, 2, 1, 2), (0, 0), dilates=1)
    assert rep.m == (18, 14, 4, 2, 1, 1)
    assert rep.all_passed, rep.failed()
    assert len(rep.vertices) == 64


def test_verify_records_failures_without_raising():
    rep = verify_resolution(A2, (1, 2, 1), (3, 3), (0, 0, 0), dilates=1)
    assert not rep.checks["M1"].passed and not rep.checks["M2"].passed
    assert rep.checks["M1"].witness == {"indices": [2, 3]}
    assert not rep.checks["containment"].passed
    assert polyhedra.is_lattice_polytope(rep.vertices)
