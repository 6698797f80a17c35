import pytest

from finhom.errors import FinhomError, NotAdmissibleWithinCap
from finhom.exactlin import QQ
from finhom.quiverpres import (
    PathCombo,
    Presentation,
    Quiver,
    groebner,
    minimal_relation_generators,
    path_of_labels,
    trivial_path,
)

from helpers import (
    brute_force_graded_dims,
    linear_quiver,
    monomial_presentation,
    naka_231_presentation,
    presentation,
    zigzag_a3_presentation,
)


def test_quiver_validation():
    with pytest.raises(FinhomError):
        Quiver([1, 1], [])
    with pytest.raises(FinhomError):
        Quiver([1, 2], [("a", 1, 3)])
    q = linear_quiver(3)
    assert q.sinks() == [3] and q.sources() == [1]
    assert q.opposite().sinks() == [1]


def test_groebner_naka_231():
    gb = groebner(naka_231_presentation())
    assert len(gb.rules) == 2
    assert all(tail.is_zero() for (_, tail) in gb.rules.values())
    basis = gb.path_basis()
    assert len(basis) == 17
    # brute-force path enumeration: the longest surviving path is 3->4->5->6,
    # so every length-4 path dies and admissibility is certified at m = 4
    dims = brute_force_graded_dims(naka_231_presentation(), 6)
    assert dims == {0: 7, 1: 6, 2: 3, 3: 1, 4: 0, 5: 0, 6: 0}
    assert max(len(p.arrows) for p in basis) == 3
    assert gb.admissible_m == 4


def test_groebner_no_relations_a3():
    pres = presentation(QQ, linear_quiver(3), [])
    gb = groebner(pres)
    assert gb.rules == {}
    assert gb.admissible_m == 3
    assert len(gb.path_basis()) == 6


def test_groebner_loop_not_admissible():
    q = Quiver([1], [("x", 1, 1)])
    pres = presentation(QQ, q, [])
    with pytest.raises(NotAdmissibleWithinCap):
        groebner(pres, 10)


def test_normal_form_monomial_and_trivial():
    pres = naka_231_presentation()
    gb = groebner(pres)
    p = path_of_labels(pres.quiver, ["a2", "a3"])
    assert gb.normal_form(p).is_zero()
    e1 = trivial_path(pres.quiver, 1)
    nf = gb.normal_form(e1)
    assert list(nf.terms) == [e1]


def test_normal_form_zigzag_commutation():
    # declaration order a3, a4, a1, a2 makes a2*a1 the leading monomial
    pres = zigzag_a3_presentation(order="alt")
    gb = groebner(pres)
    p = path_of_labels(pres.quiver, ["a2", "a1"])
    nf = gb.normal_form(p)
    assert len(nf.terms) == 1
    (path, coeff), = nf.terms.items()
    assert coeff == 1
    assert [pres.quiver.arrows[i][0] for i in path.arrows] == ["a3", "a4"]


def test_normal_form_linear_idempotent():
    pres = zigzag_a3_presentation()
    gb = groebner(pres)
    combo = PathCombo(QQ)
    combo.add_term(path_of_labels(pres.quiver, ["a2", "a1"]), QQ.coerce(2))
    combo.add_term(path_of_labels(pres.quiver, ["a1", "a2"]), QQ.coerce(-3))
    nf = gb.reduce_combo(combo)
    assert gb.reduce_combo(nf).terms == nf.terms


def test_zigzag_dimension_and_admissibility():
    pres = zigzag_a3_presentation()
    gb = groebner(pres)
    assert len(gb.path_basis()) == 10
    assert gb.admissible_m == 3
    dims = brute_force_graded_dims(pres, 4)
    assert dims == {0: 3, 1: 4, 2: 3, 3: 0, 4: 0}


def test_commutative_square():
    q = Quiver([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)])
    pres = presentation(QQ, q, [[(1, ["a", "b"]), (-1, ["c", "d"])]])
    gb = groebner(pres)
    assert len(gb.path_basis()) == 9
    dims = brute_force_graded_dims(pres, 3)
    assert sum(dims.values()) == 9


def test_every_relation_reduces_to_zero():
    for pres in (naka_231_presentation(), zigzag_a3_presentation()):
        gb = groebner(pres)
        for r in pres.relations:
            assert gb.reduce_combo(r).is_zero()


def test_relation_validation():
    q = linear_quiver(3)
    bad = PathCombo(QQ)
    bad.add_term(path_of_labels(q, ["a1"]), QQ.one)
    with pytest.raises(FinhomError):
        Presentation(QQ, q, [bad])
    mixed = PathCombo(QQ)
    mixed.add_term(path_of_labels(q, ["a1", "a2"]), QQ.one)
    mixed.add_term(trivial_path(q, 1), QQ.one)
    with pytest.raises(FinhomError):
        Presentation(QQ, q, [mixed])


def test_opposite_presentation_roundtrip():
    pres = naka_231_presentation()
    opp = pres.opposite()
    gb = groebner(opp)
    assert len(gb.path_basis()) == 17
    back = opp.opposite()
    assert back.quiver == pres.quiver
    assert [set(r.terms) for r in back.relations] == [set(r.terms) for r in pres.relations]


def test_minimal_relation_generators_drops_consequence():
    q = linear_quiver(5)
    # the length-3 path 1->4 lies in the ideal of the length-2 path 2->4
    pres = monomial_presentation(QQ, q, [["a2", "a3"], ["a1", "a2", "a3"]])
    kept = minimal_relation_generators(QQ, q, pres.relations)
    assert len(kept) == 1


def test_truncated_cycle_admissible():
    q = Quiver([1, 2], [("a", 1, 2), ("b", 2, 1)])
    pres = monomial_presentation(QQ, q, [["a", "b", "a"], ["b", "a", "b"]])
    gb = groebner(pres)
    # N_{2,3}: dimension 6
    assert len(gb.path_basis()) == 6
    assert gb.admissible_m == 3
