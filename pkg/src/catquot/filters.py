"""Subterminal posets, filters on them, and the cofinite-set algebra.

Subterminal objects are taken up to isomorphism class with a canonical
representative (first in input order). An explicit filter is validated
clause by clause (non-empty, upward closed, downward directed); on a
finite poset directedness forces a least element, which the quotient
construction exploits. The symbolic layer supports exactly the Frechet
filter; germ decisions over richer non-principal filters (ultrafilters)
are undecidable and deliberately unrepresentable.
"""

from dataclasses import dataclass

from .errors import CatError, SymbolicFilter, UnknownId
from .report import Report
from .structure import iso_between


class FilterViolation(CatError):
    def __init__(self, report):
        self.report = report
        super().__init__("\n".join(report.render()))


class SubterminalPoset:
    def __init__(self, cat, elements, leq):
        self.cat = cat
        self.elements = tuple(elements)
        self._leq = leq

    def leq(self, u, v):
        return self._leq[(u, v)]

    def top(self):
        tops = [u for u in self.elements if all(self.leq(v, u) for v in self.elements)]
        return tops[0] if tops else None

    def meet(self, u, v):
        lower = [w for w in self.elements if self.leq(w, u) and self.leq(w, v)]
        for w in lower:
            if all(self.leq(w2, w) for w2 in lower):
                return w
        return None

    def __repr__(self):
        return f"SubterminalPoset({self.cat.name}: {list(self.elements)})"


def is_subterminal(cat, u):
    return all(len(cat.hom(x, u)) <= 1 for x in cat.objects())


def subterminal_poset(cat):
    """All subterminal objects up to iso, with the hom-induced order."""
    subs = [u for u in cat.objects() if is_subterminal(cat, u)]
    reps = []
    for u in subs:
        if not any(iso_between(cat, u, r) and iso_between(cat, r, u) for r in reps):
            reps.append(u)
    leq = {}
    for u in reps:
        for v in reps:
            leq[(u, v)] = len(cat.hom(u, v)) > 0
    return SubterminalPoset(cat, reps, leq)


@dataclass(frozen=True)
class Frechet:
    """The symbolic Frechet filter on a countable index set."""

    index_set: str = "N"

    def __str__(self):
        return f"frechet({self.index_set})"


class Filter:
    def __init__(self, poset, elements, name="Phi"):
        self.poset = poset
        self.name = name
        if isinstance(elements, Frechet):
            self.symbolic = elements
            self.elements = None
        else:
            self.symbolic = None
            self.elements = tuple(elements)

    @property
    def is_symbolic(self):
        return self.symbolic is not None

    def __contains__(self, u):
        if self.is_symbolic:
            raise SymbolicFilter(f"{self.name} is symbolic")
        return u in self.elements

    def __iter__(self):
        if self.is_symbolic:
            raise SymbolicFilter(f"{self.name} is symbolic")
        return iter(self.elements)

    def __repr__(self):
        body = str(self.symbolic) if self.is_symbolic else ",".join(self.elements)
        return f"Filter({self.name}={{{body}}})"


def validate_filter(poset, subset, name="Phi"):
    """Validate a subset of the subterminal poset as a filter.

    Raises FilterViolation with a report naming every violated clause and
    its witnesses: Empty, NotUpwardClosed(x, y), NotDirected(x, y).
    """
    if isinstance(subset, Frechet):
        return Filter(poset, subset, name)
    report = Report(f"filter:{name}")
    subset = list(subset)
    for u in subset:
        if u not in poset.elements:
            report.fail("UnknownId", u)
    if report.failures:
        raise FilterViolation(report)
    if not subset:
        report.fail("Empty")
    members = set(subset)
    for x in subset:
        for y in poset.elements:
            if poset.leq(x, y) and y not in members:
                report.fail("NotUpwardClosed", f"{x},{y}")
    for i, x in enumerate(subset):
        for y in subset[i:]:
            if not any(poset.leq(z, x) and poset.leq(z, y) for z in subset):
                report.fail("NotDirected", f"{x},{y}")
    if report.failures:
        raise FilterViolation(report)
    ordered = [u for u in poset.elements if u in members]
    return Filter(poset, ordered, name)


def principal_filter(poset, x, name=None):
    ups = [y for y in poset.elements if poset.leq(x, y)]
    return validate_filter(poset, ups, name or f"up({x})")


def principal_filters(poset):
    """Every filter on a finite poset is principal; this is all of them."""
    return [principal_filter(poset, x) for x in poset.elements]


def filter_minimum(filt):
    """The least element of an explicit filter (exists by directedness)."""
    if filt.is_symbolic:
        raise SymbolicFilter(f"{filt.name} has no minimum element")
    poset = filt.poset
    for u in filt.elements:
        if all(poset.leq(u, v) for v in filt.elements):
            return u
    raise FilterViolation(_no_min_report(filt))


def _no_min_report(filt):
    report = Report(f"filter:{filt.name}")
    report.fail("NoMinimum")
    return report


# -- cofinite-set algebra ----------------------------------------------------

@dataclass(frozen=True)
class CofiniteSet:
    """A subset of N that is either finite or cofinite, given by its
    exceptional finite set."""

    polarity: str  # "finite" | "cofinite"
    exceptional: frozenset

    def __post_init__(self):
        assert self.polarity in ("finite", "cofinite")

    def __str__(self):
        inner = ",".join(str(i) for i in sorted(self.exceptional))
        return f"{self.polarity}{{{inner}}}"


def finite(indices):
    return CofiniteSet("finite", frozenset(indices))


def cofinite(exceptions):
    return CofiniteSet("cofinite", frozenset(exceptions))


def member(n, s):
    if s.polarity == "finite":
        return n in s.exceptional
    return n not in s.exceptional


def intersect(a, b):
    if a.polarity == "finite" and b.polarity == "finite":
        return finite(a.exceptional & b.exceptional)
    if a.polarity == "finite":
        return finite({n for n in a.exceptional if member(n, b)})
    if b.polarity == "finite":
        return finite({n for n in b.exceptional if member(n, a)})
    return cofinite(a.exceptional | b.exceptional)


def union(a, b):
    return complement(intersect(complement(a), complement(b)))


def complement(a):
    return CofiniteSet("cofinite" if a.polarity == "finite" else "finite", a.exceptional)


def subset(a, b):
    """a is a subset of b."""
    if a.polarity == "finite":
        return all(member(n, b) for n in a.exceptional)
    if b.polarity == "finite":
        return False  # a cofinite set is infinite
    return b.exceptional <= a.exceptional


def is_in_frechet(s):
    """Membership in the Frechet filter: exactly the cofinite sets."""
    return s.polarity == "cofinite"
