import pytest
from hypothesis import given
from hypothesis import strategies as st

from catquot.errors import SymbolicFilter
from catquot.filters import (
    CofiniteSet,
    FilterViolation,
    Frechet,
    cofinite,
    complement,
    filter_minimum,
    finite,
    intersect,
    is_in_frechet,
    member,
    principal_filter,
    principal_filters,
    subset,
    subterminal_poset,
    union,
    validate_filter,
)
from catquot.fixtures import pset, square, z2_group
from catquot.probe import materialize


def test_subterminal_poset_of_square_is_everything():
    e = square()
    p = subterminal_poset(e)
    assert set(p.elements) == set(e.objects())
    assert p.leq("(0|0)", "(1|1)") and not p.leq("(1|0)", "(0|1)")
    assert p.meet("(1|0)", "(0|1)") == "(0|0)"
    assert p.top() == "(1|1)"


def test_subterminal_poset_of_sets():
    p = subterminal_poset(pset())
    assert [str(x) for x in p.elements] == ["S0", "S1"]


def test_group_category_has_no_subterminals():
    assert subterminal_poset(z2_group()).elements == ()


def test_validate_filter_principal():
    p = subterminal_poset(square())
    f = validate_filter(p, ["(1|1)", "(0|1)"], "Phi01")
    assert filter_minimum(f) == "(0|1)"


def test_validate_filter_violations():
    p = subterminal_poset(square())
    with pytest.raises(FilterViolation) as exc:
        validate_filter(p, ["(0|1)", "(1|0)"])
    clauses = {c for c, _ in exc.value.report.failures}
    assert clauses == {"NotUpwardClosed", "NotDirected"}
    with pytest.raises(FilterViolation) as exc:
        validate_filter(p, [])
    assert {c for c, _ in exc.value.report.failures} == {"Empty"}


def test_trivial_filter_at_terminal():
    ps = subterminal_poset(materialize(pset()))
    f = validate_filter(ps, ["S1"])
    assert filter_minimum(f) == "S1"


def test_symbolic_filter_has_no_minimum():
    ps = subterminal_poset(materialize(pset()))
    f = validate_filter(ps, Frechet("N"))
    assert f.is_symbolic
    with pytest.raises(SymbolicFilter):
        filter_minimum(f)


def test_every_filter_contains_top():
    p = subterminal_poset(square())
    for f in principal_filters(p):
        assert p.top() in f.elements


def test_minimum_is_least_member():
    p = subterminal_poset(square())
    for f in principal_filters(p):
        m = filter_minimum(f)
        assert m in f.elements
        assert all(p.leq(m, u) for u in f.elements)


def test_cofinite_examples():
    assert intersect(cofinite({0, 3}), cofinite({1})) == cofinite({0, 1, 3})
    assert not is_in_frechet(finite(range(10)))
    assert not member(7, cofinite({7}))
    assert member(8, cofinite({7}))


cof_sets = st.builds(
    lambda pol, ex: CofiniteSet(pol, frozenset(ex)),
    st.sampled_from(["finite", "cofinite"]),
    st.sets(st.integers(min_value=0, max_value=30), max_size=6),
)


@given(cof_sets, cof_sets, st.integers(min_value=0, max_value=40))
def test_intersect_union_pointwise(a, b, n):
    assert member(n, intersect(a, b)) == (member(n, a) and member(n, b))
    assert member(n, union(a, b)) == (member(n, a) or member(n, b))
    assert member(n, complement(a)) == (not member(n, a))


@given(cof_sets, cof_sets, cof_sets)
def test_lattice_laws(a, b, c):
    assert intersect(a, b) == intersect(b, a)
    assert union(a, b) == union(b, a)
    assert intersect(a, intersect(b, c)) == intersect(intersect(a, b), c)
    assert union(a, union(b, c)) == union(union(a, b), c)
    assert intersect(a, union(a, b)) == a
    assert union(a, intersect(a, b)) == a


@given(cof_sets, cof_sets)
def test_subset_agrees_with_membership(a, b):
    # checked on a window plus the tail polarity
    window_ok = all(member(n, b) for n in range(64) if member(n, a))
    tail_ok = a.polarity == "finite" or b.polarity == "cofinite"
    assert subset(a, b) == (window_ok and tail_ok)


@given(st.sets(st.integers(min_value=0, max_value=50), max_size=8))
def test_frechet_is_proper(ex):
    assert not is_in_frechet(finite(ex))
    assert is_in_frechet(cofinite(ex))
