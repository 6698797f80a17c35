import pytest

from finhom.algcore import (
    associated_graded,
    corner,
    extract_presentation,
    find_symmetrizing_form,
    from_presentation,
    opposite,
    quotient_by_idempotent_ideal,
    tensor_product,
    trivial_extension,
)
from finhom.errors import FinhomError
from finhom.exactlin import QQ
from finhom.quiverpres import Quiver

from helpers import (
    linear_quiver,
    monomial_presentation,
    naka_231_presentation,
    presentation,
    zigzag_a3_presentation,
)


def semisimple_k3():
    return from_presentation(presentation(QQ, Quiver([1, 2, 3], []), []))


def test_from_presentation_naka231():
    a = from_presentation(naka_231_presentation())
    assert a.dim == 17
    assert a.nvert == 7
    assert a.is_graded()
    assert a.degrees[:7] == [0] * 7
    assert a.loewy_length() == 4
    a.verify_associativity()  # dim 17: full check


def test_from_presentation_semisimple():
    a = semisimple_k3()
    assert a.dim == 3 and a.loewy_length() == 1


def test_from_presentation_zigzag():
    a = from_presentation(zigzag_a3_presentation())
    assert a.dim == 10
    assert a.loewy_length() == 3
    assert [row for row in a.cartan_matrix()] == [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    a.verify_associativity()


def test_opposite_involution():
    a = from_presentation(naka_231_presentation())
    aop = opposite(a)
    aopop = opposite(aop)
    assert aop.dim == a.dim
    assert aop.cartan_matrix() == [list(col) for col in zip(*a.cartan_matrix())]
    assert aopop.cartan_matrix() == a.cartan_matrix()
    assert aopop.presentation.quiver == a.presentation.quiver


def test_corner_full_and_complementary_dims():
    a = from_presentation(zigzag_a3_presentation())
    full = corner(a, [1, 2, 3])
    assert full.dim == a.dim
    e = corner(a, [1])
    f = corner(a, [2, 3])
    dim_eAf = sum(len(a.block(0, y)) for y in (1, 2))
    dim_fAe = sum(len(a.block(y, 0)) for y in (1, 2))
    assert e.dim + f.dim + dim_eAf + dim_fAe == a.dim
    # corner at the middle vertex of the zigzag: e2, both loops identified -> dim 2
    mid = corner(a, [2])
    assert mid.dim == 2
    mid.verify_associativity()


def test_quotient_by_idempotent_ideal():
    a = from_presentation(naka_231_presentation())
    with pytest.raises(FinhomError):
        quotient_by_idempotent_ideal(a, [1, 2, 3, 4, 5, 6, 7])
    q = quotient_by_idempotent_ideal(a, [1])
    assert q.nvert == 6
    # killing vertex 1 of A_7 removes e_1 and every path through 1: paths from 1
    killed = sum(1 for p in a.labels if p.start == a.vertex_index[1])
    assert q.dim == a.dim - killed
    q.verify_associativity()


def test_quotient_zigzag_middle():
    a = from_presentation(zigzag_a3_presentation())
    q = quotient_by_idempotent_ideal(a, [2])
    # what survives: e1, e3 only (every arrow passes through vertex 2)
    assert q.nvert == 2 and q.dim == 2


def test_trivial_extension_of_field():
    k = from_presentation(presentation(QQ, Quiver([1], []), []))
    t = trivial_extension(k)
    assert t.dim == 2
    assert t.loewy_length() == 2
    # delta * delta = 0
    assert t.mult(1, 1) == ()
    form = find_symmetrizing_form(t)
    assert form is not None


def test_trivial_extension_a2():
    b = from_presentation(presentation(QQ, linear_quiver(2), []))
    t = trivial_extension(b)
    assert t.dim == 6
    assert t.nvert == 2
    assert t.loewy_length() == 3
    assert find_symmetrizing_form(t) is not None
    t.verify_associativity()


def test_tensor_with_field_keeps_cartan():
    a = from_presentation(naka_231_presentation())
    k = from_presentation(presentation(QQ, Quiver(["pt"], []), []))
    t = tensor_product(a, k)
    assert t.dim == a.dim
    assert t.cartan_matrix() == a.cartan_matrix()
    assert t.is_graded()


def test_extract_presentation_roundtrip():
    a = from_presentation(naka_231_presentation())
    ext = extract_presentation(a)
    b = ext.realize()
    assert b.dim == a.dim
    assert b.cartan_matrix() == a.cartan_matrix()
    assert len(ext.presentation.quiver.arrows) == 6
    assert len(ext.presentation.relations) == 2


def test_extract_presentation_zigzag_binomial():
    a = from_presentation(zigzag_a3_presentation())
    ext = extract_presentation(a)
    b = ext.realize()
    assert b.dim == 10
    sizes = sorted(len(r.terms) for r in ext.presentation.relations)
    assert sizes == [1, 1, 2]


def test_associated_graded_of_graded_algebra():
    a = from_presentation(zigzag_a3_presentation())
    g = associated_graded(a)
    assert g.dim == a.dim
    assert sorted(g.degrees) == sorted(a.degrees)
    g.verify_associativity()


def test_symmetrizing_form_zigzag_yes_hereditary_no():
    z = from_presentation(zigzag_a3_presentation())
    assert find_symmetrizing_form(z) is not None
    h = from_presentation(presentation(QQ, linear_quiver(3), []))
    assert find_symmetrizing_form(h) is None
