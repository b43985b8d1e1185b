import pytest

from catquot.core import Functor
from catquot.errors import NoAdjoint, NoProducts
from catquot.fixtures import (
    bang_functor,
    diagonal_functor,
    discrete_two,
    pset,
    square,
    terminal_category,
    walking_arrow,
    walking_parallel_pair,
)
from catquot.probe import materialize
from catquot.structure import (
    arrow_category,
    check_adjunction,
    codomain_functor,
    exponential,
    find_equivalence,
    is_locally_cartesian_closed,
    natural_transformations,
    right_adjoint,
    slice_category,
    slice_projection,
    subobject_classifier,
)
from catquot.quotient import classifies_all_monos


def test_exponential_on_sets():
    p = pset()
    s2 = p.objects()[2]
    z, ev = exponential(p, s2, s2)
    assert len(z) == 4


def test_exponential_is_heyting_implication():
    e = square()
    z, ev = exponential(e, "(0|1)", "(1|1)")
    assert z == "(1|1)"
    z, ev = exponential(e, "(1|1)", "(0|1)")
    assert z == "(0|1)"


def test_exponential_requires_products():
    with pytest.raises(NoProducts):
        exponential(discrete_two(), "0", "1")


def test_subobject_classifier_sets():
    p = pset()
    omega, true = subobject_classifier(p)
    assert len(omega) == 2
    assert classifies_all_monos(p, omega, true)


def test_subobject_classifier_square_none():
    assert subobject_classifier(square()) is None


def test_subobject_classifier_trivial():
    one = terminal_category()
    omega, true = subobject_classifier(one)
    assert omega == "*"


def test_right_adjoint_identity():
    a = walking_arrow()
    r = right_adjoint(Functor.identity(a))
    assert r.fobj == {"0": "0", "1": "1"}
    assert check_adjunction(Functor.identity(a), r)


def test_right_adjoint_of_bang_picks_terminal():
    a = walking_arrow()
    bang = bang_functor(a)
    r = right_adjoint(bang)
    assert r.fobj == {"*": "1"}
    assert check_adjunction(bang, r)


def test_right_adjoint_of_diagonal_is_meet():
    a = walking_arrow()
    diag, aa = diagonal_functor(a)
    r = right_adjoint(diag)
    assert r.fobj["(1|0)"] == "0"
    assert r.fobj["(1|1)"] == "1"
    assert check_adjunction(diag, r)


def test_no_adjoint_when_comma_has_no_terminal():
    d2 = discrete_two()
    inc = Functor("in0", terminal_category(), d2, {"*": "0"}, {"id_*": "id_0"}).validate()
    with pytest.raises(NoAdjoint):
        right_adjoint(inc)


def test_lcc_verdicts():
    assert is_locally_cartesian_closed(square())
    v = is_locally_cartesian_closed(walking_parallel_pair())
    assert not v and "s" in v.witness
    assert is_locally_cartesian_closed(pset((0, 1, 2)))


def test_find_equivalence_identity_and_negative():
    a = walking_arrow()
    assert find_equivalence(a, a) is not None
    assert find_equivalence(a, square()) is None


def test_slice_and_projection_shapes():
    e = square()
    sl = slice_category(e, "(1|1)")
    assert len(tuple(sl.objects())) == 4  # morphisms into the top of E
    proj = slice_projection(sl)
    assert proj.on_obj("(f|f)") == "(0|0)"


def test_arrow_category_and_codomain_fibration():
    a = walking_arrow()
    arr = arrow_category(a)
    assert len(tuple(arr.objects())) == 3
    cod = codomain_functor(arr)
    assert cod.on_obj("f") == "1"


def test_natural_transformations_count():
    a = walking_arrow()
    ident = Functor.identity(a)
    nts = natural_transformations(ident, ident)
    assert {tuple(sorted(nt.items())) for nt in nts} == {
        (("0", "id_0"), ("1", "id_1"))
    }
