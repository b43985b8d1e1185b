import pytest

from catquot.core import classify_morphism
from catquot.errors import FLCRequired, NotFibrant, NotStable, PreservationFailure
from catquot.filters import subterminal_poset, validate_filter
from catquot.fixtures import discrete_two, pset, square, terminal_category, walking_arrow
from catquot.model import (
    ModelData,
    check_cem,
    check_cim,
    check_cl,
    check_fe,
    check_model_filter,
    check_model_structure,
    check_right_properness,
    check_tcp,
    check_wfs,
    enumerate_model_structures,
    has_lifting,
    quotient_model_structure,
    two_of_three,
)
from catquot.probe import materialize
from catquot.quotient import filter_quotient, projection_functor


def test_has_lifting_self_square_fails_for_non_iso():
    # the identity square from f to f has no diagonal 1 -> 0
    a = walking_arrow()
    ok, witness = has_lifting(a, "f", "f")
    assert not ok and witness == ("id_0", "id_1")


def test_has_lifting_point_lifts():
    p = materialize(pset((0, 1, 2)))
    i = [m for m in p.morphisms() if p.src(m) == "S0" and p.tgt(m) == "S1"][0]
    surj = [m for m in p.morphisms() if p.src(m) == "S2" and p.tgt(m) == "S1"][0]
    ok, _ = has_lifting(p, i, surj)
    assert ok


def test_has_lifting_through_identity():
    p = materialize(pset((0, 1, 2)))
    inj = [
        m
        for m in p.morphisms()
        if p.src(m) == "S1" and p.tgt(m) == "S2" and classify_morphism(p, m)["mono"]
    ][0]
    ok, _ = has_lifting(p, inj, "id_S1")
    assert ok


def test_wfs_verdicts_on_walking_arrow():
    a = walking_arrow()
    all_m = frozenset(a.morphisms())
    ids = frozenset({"id_0", "id_1"})
    assert check_wfs(a, ids, all_m).ok
    assert check_wfs(a, all_m, ids).ok
    rep = check_wfs(a, ids, ids)
    assert not rep.ok
    assert any(c == "Factorization" and w == "f" for c, w in rep.failures)
    assert not check_wfs(a, all_m, all_m).ok


def test_model_structure_verdicts():
    e = square()
    assert check_model_structure(ModelData(e, "all", "all", "isos")).ok
    # (all, all, all) fails: (all, all) is not a weak factorization system
    assert not check_model_structure(ModelData(e, "all", "all", "all")).ok
    a = walking_arrow()
    rep = check_model_structure(ModelData(a, {"id_0", "id_1", "f"}, {"id_0", "id_1"}, "isos"))
    assert not rep.ok
    assert any(c.startswith("WFS(Cof,FW)") for c, _ in rep.failures)


def test_two_of_three():
    e = square()
    assert two_of_three(e, frozenset(m for m in e.morphisms() if classify_morphism(e, m)["iso"]))
    bad = frozenset({"id_(0|0)", "id_(0|1)", "id_(1|0)", "id_(1|1)", "(id_0|f)"})
    v = two_of_three(e, bad | {"(f|id_1)"})
    assert not v  # the composite (f|f) is missing


def test_model_filter_certificate():
    e = square()
    phi = validate_filter(subterminal_poset(e), ["(1|1)", "(0|1)"], "Phi01")
    m = ModelData(e, "all", "all", "isos")
    cert = check_model_filter(m, phi)
    assert set(cert.fibrancy) == {"(0|1)", "(1|1)"}


def test_model_filter_not_fibrant():
    e = square()
    phi = validate_filter(subterminal_poset(e), ["(1|1)", "(0|1)"], "Phi01")
    with pytest.raises(NotFibrant) as exc:
        check_model_filter(ModelData(e, "identities", "all", "isos"), phi)
    assert "(0|1)" in str(exc.value)


def test_model_filter_not_stable():
    e = square()
    phi = validate_filter(subterminal_poset(e), ["(1|1)", "(0|1)"], "Phi01")
    cof = frozenset(m for m in e.morphisms() if m != "(id_0|f)")
    with pytest.raises(NotStable) as exc:
        check_model_filter(ModelData(e, "all", cof, "isos"), phi)
    assert "(0|1)" in str(exc.value)


def test_quotient_model_structure_trivial_structure():
    e = square()
    phi = validate_filter(subterminal_poset(e), ["(1|1)", "(0|1)"], "Phi01")
    m = ModelData(e, "all", "all", "isos")
    q = filter_quotient(e, phi)
    mq = quotient_model_structure(m, phi, quo=q)
    assert mq.cat is q
    q_isos = frozenset(f for f in q.morphisms() if classify_morphism(q, f)["iso"])
    assert mq.weq == q_isos
    assert mq.fib == frozenset(q.morphisms())
    assert check_model_structure(mq).ok


def test_quotient_model_structure_weq_all():
    p = materialize(pset((0, 1, 2)))
    phi = validate_filter(subterminal_poset(p), ["S1"], "triv")
    m = ModelData(p, "monos", "epis", "all")
    mq = quotient_model_structure(m, phi)
    assert mq.weq == frozenset(mq.cat.morphisms())


def test_right_properness():
    e = square()
    assert check_right_properness(ModelData(e, "all", "all", "isos"))
    assert check_right_properness(ModelData(e, "all", "all", "all"))
    bad = ModelData(e, "all", "all", frozenset({"(f|f)"} | set(e.identities.values())))
    v = check_right_properness(bad)
    assert not v and v.witness is not None


def test_enumerate_on_terminal_category():
    one = terminal_category()
    ms = enumerate_model_structures(one)
    assert len(ms) == 1
    assert ms[0].fib == ms[0].cof == ms[0].weq == frozenset({"id_*"})


def test_enumerate_on_walking_arrow():
    a = walking_arrow()
    ms = enumerate_model_structures(a)
    triples = {(frozenset(m.fib), frozenset(m.cof), frozenset(m.weq)) for m in ms}
    alls = frozenset(a.morphisms())
    ids = frozenset({"id_0", "id_1"})
    assert (alls, alls, ids) in triples
    assert (alls, ids, alls) in triples
    assert (ids, alls, alls) in triples
    assert len(ms) == 3
    assert (alls, alls, alls) not in triples


def test_enumerate_requires_flc():
    with pytest.raises(FLCRequired):
        enumerate_model_structures(discrete_two())


def test_structure_property_checks():
    e = square()
    m = ModelData(e, "all", "all", "isos")
    assert check_cim(m) and check_cem(m)
    assert check_tcp(m) and check_cl(m) and check_fe(m)
    narrower = ModelData(e, "all", "identities", "isos")
    assert not check_cim(narrower)


def test_pset_model_structures():
    pm = materialize(pset((0, 1, 2, 3)))
    assert check_model_structure(ModelData(pm, "all", "all", "isos")).ok
    assert check_model_structure(ModelData(pm, "monos", "epis", "all")).ok
    assert not check_model_structure(ModelData(pm, "all", "all", "all")).ok
