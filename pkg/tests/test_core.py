import pytest

from catquot.core import FinCategory, Functor, classify_morphism, product_category, validate_category
from catquot.errors import InvalidCategory, NotAFunctor, UnknownId
from catquot.fixtures import pset, square, walking_arrow, z2_group


def test_walking_arrow_valid():
    a = walking_arrow()
    assert len(a.morphisms()) == 3
    assert a.hom("0", "1") == ("f",)
    assert a.compose("id_1", "f") == "f"
    assert a.compose("f", "id_0") == "f"


def test_identity_comp_line_rejected():
    with pytest.raises(InvalidCategory) as exc:
        FinCategory.build("bad", ["0", "1"], [("f", "0", "1")], [("f", "id_0", "f")])
    assert any(c == "IdentityCompLine" for c, _ in exc.value.report.failures)


def test_non_composable_comp_line():
    # f o f is not composable in the walking arrow
    with pytest.raises(InvalidCategory) as exc:
        FinCategory.build("bad", ["0", "1"], [("f", "0", "1")], [("f", "f", "f")])
    assert any(c == "MismatchedEndpoints" for c, _ in exc.value.report.failures)


def test_missing_composite_detected():
    with pytest.raises(InvalidCategory) as exc:
        FinCategory.build(
            "bad", ["0", "1", "2"], [("f", "0", "1"), ("g", "1", "2"), ("h", "0", "2")], []
        )
    assert any(c == "MissingComposite" for c, _ in exc.value.report.failures)


def z3_monoid(perturbed=False):
    # Z/3 as a one-object category; a = +1, b = +2
    comp = [("a", "a", "b"), ("a", "b", "id_x"), ("b", "a", "id_x"), ("b", "b", "a")]
    if perturbed:
        comp[3] = ("b", "b", "b")
    return {
        "name": "Z3",
        "objects": ["x"],
        "morphisms": [("a", "x", "x"), ("b", "x", "x")],
        "comp": comp,
    }


def test_associativity_violation_names_triple():
    # oracle: the unperturbed monoid-as-category validates
    validate_category(z3_monoid())
    with pytest.raises(InvalidCategory) as exc:
        validate_category(z3_monoid(perturbed=True))
    clauses = [c for c, _ in exc.value.report.failures]
    assert "NonAssociative" in clauses
    witnesses = [w for c, w in exc.value.report.failures if c == "NonAssociative"]
    assert all(len(w.split(",")) == 3 for w in witnesses)


def test_unknown_ids_reported():
    with pytest.raises(InvalidCategory) as exc:
        FinCategory.build("bad", ["0"], [("f", "0", "9")], [])
    assert any(c == "UnknownId" for c, _ in exc.value.report.failures)


def test_hom_examples():
    a = walking_arrow()
    assert a.hom("0", "1") == ("f",)
    p = pset()
    s0, s1, s2, s3 = p.objects()
    assert len(p.hom(s2, s3)) == 9
    e = square()
    assert e.hom("(1|0)", "(0|1)") == ()
    with pytest.raises(UnknownId):
        a.hom("0", "7")


def test_classify_identity_and_f():
    a = walking_arrow()
    flags = classify_morphism(a, "id_0")
    assert flags["mono"] and flags["epi"] and flags["iso"] and flags["identity"]
    flags = classify_morphism(a, "f")
    assert flags["mono"] and flags["epi"]
    assert not flags["iso"] and not flags["identity"]


def test_classify_empty_domain_map():
    p = pset()
    s0, s1 = p.objects()[0], p.objects()[1]
    m = p.hom(s0, s1)[0]
    flags = classify_morphism(p, m)
    assert flags["mono"] and not flags["epi"]


def test_classify_group_element_iso():
    z2 = z2_group()
    flags = classify_morphism(z2, "s")
    assert flags["iso"] and flags["mono"] and flags["epi"] and not flags["identity"]
    assert flags["inverse"] == "s"


def test_product_category_counts():
    e = square()
    assert len(tuple(e.objects())) == 4
    assert len(e.morphisms()) == 9


def test_functor_validation_catches_breakage():
    a = walking_arrow()
    bad = Functor("bad", a, a, {"0": "0", "1": "0"}, {"id_0": "id_0", "id_1": "id_0", "f": "f"})
    with pytest.raises(NotAFunctor):
        bad.validate()
    good = Functor.identity(a)
    good.validate()
