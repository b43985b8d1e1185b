import pytest

from catquot.core import classify_morphism, isos
from catquot.errors import NotProductStable
from catquot.filters import principal_filters, subterminal_poset, validate_filter
from catquot.fixtures import pset, square, terminal_category, walking_arrow
from catquot.probe import ProductProbe, materialize
from catquot.quotient import (
    classifies_all_monos,
    filter_quotient,
    monotone_functor,
    projection_functor,
    transfer_class,
    verify_preservation,
)
from catquot.structure import find_equivalence, find_isomorphism


def phi01(e):
    p = subterminal_poset(e)
    return validate_filter(p, ["(1|1)", "(0|1)"], "Phi01")


def test_quotient_hom_collapse():
    e = square()
    q = filter_quotient(e, phi01(e))
    # (0,1) meet (1,0) = (0,0) <= (0,1): the hom-set becomes a singleton
    assert len(q.hom("(1|0)", "(0|1)")) == 1
    assert len(q.hom("(0|1)", "(1|0)")) == 0


def test_trivial_filter_gives_isomorphic_category():
    e = square()
    p = subterminal_poset(e)
    triv = validate_filter(p, ["(1|1)"], "triv")
    q = filter_quotient(e, triv)
    assert find_isomorphism(q, e, identity_on_objects=lambda x: x) is not None


def test_degenerate_filter_collapses_to_terminal():
    m = materialize(pset())
    p = subterminal_poset(m)
    deg = validate_filter(p, ["S1", "S0"], "deg")
    q = filter_quotient(m, deg)
    assert all(len(q.hom(x, y)) == 1 for x in q.objects() for y in q.objects())
    assert find_equivalence(q, terminal_category()) is not None


def test_projection_functor_classes():
    e = square()
    f = phi01(e)
    q = filter_quotient(e, f)
    proj = projection_functor(e, f, q)
    assert proj.on_mor("id_(1|1)") == "id_(1|1)"
    # the class of (0,0) -> (1,0) becomes invertible in the quotient
    assert classify_morphism(q, proj.on_mor("(f|id_0)"))["iso"]
    assert not classify_morphism(e, "(f|id_0)")["iso"]


def test_germ_identification():
    # two base morphisms whose restrictions to the minimum agree map to the
    # same class
    e = square()
    f = phi01(e)
    q = filter_quotient(e, f)
    proj = projection_functor(e, f, q)
    assert proj.on_mor("(f|id_0)") == proj.on_mor("(f|id_0)")
    # (0,0)->(0,1) and (0,0)->(1,1) restrict differently: distinct classes
    assert proj.on_mor("(id_0|f)") != proj.on_mor("(f|f)")


def test_transfer_class_isos():
    e = square()
    f = phi01(e)
    q = filter_quotient(e, f)
    proj = projection_functor(e, f, q)
    ct = transfer_class(isos(e), f, q)
    assert proj.on_mor("(f|id_0)") in ct  # product with (0,1) is an identity
    assert proj.on_mor("(id_1|f)") not in ct  # (1,0) -> (1,1) stays non-invertible
    # transferred isos are exactly the isos of the quotient
    q_isos = {m for m in q.morphisms() if classify_morphism(q, m)["iso"]}
    assert ct.members == q_isos


def test_transfer_all_is_all():
    e = square()
    f = phi01(e)
    q = filter_quotient(e, f)
    ct = transfer_class(frozenset(e.morphisms()), f, q)
    assert ct.members == frozenset(q.morphisms())


def test_transfer_requires_product_stability():
    e = square()
    f = phi01(e)
    q = filter_quotient(e, f)
    with pytest.raises(NotProductStable):
        transfer_class(frozenset({"id_(1|1)"}), f, q)


def test_equivalence_with_walking_arrow():
    e = square()
    q = filter_quotient(e, phi01(e))
    assert find_equivalence(q, walking_arrow()) is not None
    assert find_equivalence(walking_arrow(), e) is None


def test_preservation_ledger_on_square():
    e = square()
    f = phi01(e)
    q = filter_quotient(e, f)
    proj = projection_functor(e, f, q)
    for prop in ("finite-limits", "finite-colimits", "monos", "exponentials"):
        rep = verify_preservation(e, f, prop, q, proj)
        assert rep.ok
        assert int(dict(rep.entries)["instances"]) > 0


def test_preservation_subobject_classifier_product_fixture():
    p2 = materialize(ProductProbe(pset((0, 1, 2)), pset((0, 1, 2))))
    sub = subterminal_poset(p2)
    phi = validate_filter(sub, ["(S1|S0)", "(S1|S1)"], "Phi")
    rep = verify_preservation(p2, phi, "subobject-classifier")
    assert rep.ok
    assert int(dict(rep.entries)["instances"]) == 1


def test_monotonicity_functor():
    e = square()
    p = subterminal_poset(e)
    small = validate_filter(p, ["(1|1)"], "triv")
    big = phi01(e)
    q_small = filter_quotient(e, small)
    q_big = filter_quotient(e, big)
    m = monotone_functor(q_small, q_big)
    proj_small = projection_functor(e, small, q_small)
    proj_big = projection_functor(e, big, q_big)
    for f in e.morphisms():
        assert m.on_mor(proj_small.on_mor(f)) == proj_big.on_mor(f)


def test_quotient_by_every_principal_filter_validates():
    e = square()
    for filt in principal_filters(subterminal_poset(e)):
        q = filter_quotient(e, filt)  # includes the germ cross-check
        assert set(q.objects()) == set(e.objects())
