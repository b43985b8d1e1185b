"""Finite categories given by explicit tables, and functors between them.

A FinCategory stores its objects, morphisms, endpoint maps and a total
composition table. Identities are auto-generated (``id_<obj>``) and never
appear in input comp tables. All iteration follows input order so that
every downstream search and report is reproducible.

The same traversal interface (objects / morphisms / hom / compose) is
implemented by the intensional probe categories in :mod:`catquot.probe`;
everything in :mod:`catquot.limits` and :mod:`catquot.structure` is written
against that interface and works on both.
"""

from .errors import (
    InvalidCategory,
    MismatchedEndpoints,
    MissingComposite,
    NonAssociative,
    NotAFunctor,
    UnknownId,
)
from .report import Report


def identity_name(obj):
    return f"id_{obj}"


class FinCategory:
    """An extensional finite category.

    Construct with :func:`validate_category` (raises on bad input) or the
    :meth:`build` convenience which does the same. Instances are immutable
    after validation; all operations on them are pure.
    """

    exhaustive = True

    def __init__(self, name, objects, mor_src, mor_tgt, comp, identities, input_order):
        self.name = name
        self._objects = tuple(objects)
        self._mor_order = tuple(input_order)
        self.mor_src = dict(mor_src)
        self.mor_tgt = dict(mor_tgt)
        self.comp = dict(comp)
        self.identities = dict(identities)
        self._hom = {}
        for f in self._mor_order:
            key = (self.mor_src[f], self.mor_tgt[f])
            self._hom.setdefault(key, []).append(f)
        self._hom = {k: tuple(v) for k, v in self._hom.items()}

    @classmethod
    def build(cls, name, objects, morphisms, comp_lines):
        """morphisms: iterable of (name, src, tgt); comp_lines: (g, f, h)."""
        return validate_category(
            {"name": name, "objects": list(objects), "morphisms": list(morphisms), "comp": list(comp_lines)}
        )

    # traversal interface shared with probe categories
    def objects(self):
        return self._objects

    def morphisms(self):
        return self._mor_order

    def hom(self, x, y):
        if x not in self.identities or y not in self.identities:
            raise UnknownId(f"{x if x not in self.identities else y} not in {self.name}")
        return self._hom.get((x, y), ())

    def identity(self, x):
        if x not in self.identities:
            raise UnknownId(f"{x} not in {self.name}")
        return self.identities[x]

    def src(self, f):
        if f not in self.mor_src:
            raise UnknownId(f"{f} not in {self.name}")
        return self.mor_src[f]

    def tgt(self, f):
        if f not in self.mor_tgt:
            raise UnknownId(f"{f} not in {self.name}")
        return self.mor_tgt[f]

    def compose(self, g, f):
        """g after f; defined exactly when tgt(f) = src(g)."""
        if (g, f) not in self.comp:
            if self.tgt(f) != self.src(g):
                raise MismatchedEndpoints(f"{g} o {f}: tgt({f})={self.tgt(f)} != src({g})={self.src(g)}")
            raise MissingComposite(f"{g} o {f}")
        return self.comp[(g, f)]

    def compose_path(self, *fs):
        """Compose right-to-left: compose_path(h, g, f) = h o g o f."""
        fs = list(fs)
        out = fs.pop()
        while fs:
            out = self.compose(fs.pop(), out)
        return out

    def is_identity(self, f):
        return self.identities.get(self.src(f)) == f

    def composable_pairs(self):
        for g in self._mor_order:
            for f in self._mor_order:
                if self.tgt(f) == self.src(g):
                    yield g, f

    def __repr__(self):
        return f"FinCategory({self.name}: {len(self._objects)} objects, {len(self._mor_order)} morphisms)"


def validate_category(raw):
    """Check a raw description against the category laws.

    Returns a FinCategory or raises InvalidCategory with a report listing
    every violated law and the witnessing ids. Identities are generated
    here; a comp line mentioning them, or any non-composable pair, is an
    error.
    """
    report = Report(f"validate:{raw.get('name', '?')}")
    name = raw.get("name", "anonymous")
    objects = list(raw["objects"])
    report.add("objects", len(objects))
    seen = set()
    for obj in objects:
        if obj in seen:
            report.fail("DuplicateObject", obj)
        seen.add(obj)

    mor_src, mor_tgt = {}, {}
    order = []
    for obj in objects:
        ident = identity_name(obj)
        mor_src[ident] = obj
        mor_tgt[ident] = obj
        order.append(ident)
    identities = {obj: identity_name(obj) for obj in objects}

    declared = []
    for mor, src, tgt in raw["morphisms"]:
        if mor in mor_src:
            report.fail("DuplicateMorphism", mor)
            continue
        if src not in identities:
            report.fail("UnknownId", f"{mor}:src:{src}")
            continue
        if tgt not in identities:
            report.fail("UnknownId", f"{mor}:tgt:{tgt}")
            continue
        mor_src[mor], mor_tgt[mor] = src, tgt
        order.append(mor)
        declared.append(mor)
    report.add("morphisms", len(order))

    comp = {}
    for g, f, h in raw.get("comp", []):
        missing = [m for m in (g, f, h) if m not in mor_src]
        if missing:
            report.fail("UnknownId", f"comp {g} {f} = {h}: {missing[0]}")
            continue
        if g == identities.get(mor_src[g]) or f == identities.get(mor_src[f]):
            # identity composites are generated, never declared
            report.fail("IdentityCompLine", f"comp {g} {f}")
            continue
        if mor_tgt[f] != mor_src[g]:
            report.fail("MismatchedEndpoints", f"comp {g} {f} (tgt {mor_tgt[f]} != src {mor_src[g]})")
            continue
        if mor_src[h] != mor_src[f] or mor_tgt[h] != mor_tgt[g]:
            report.fail("MismatchedEndpoints", f"comp {g} {f} = {h} (bad endpoints on {h})")
            continue
        if (g, f) in comp:
            report.fail("DuplicateComposite", f"comp {g} {f}")
            continue
        comp[(g, f)] = h

    if report.failures:
        raise InvalidCategory(report)

    # fill identity composites, then demand totality on composable pairs
    for f in order:
        comp[(identities[mor_tgt[f]], f)] = f
        comp[(f, identities[mor_src[f]])] = f
    for g in order:
        for f in order:
            if mor_tgt[f] == mor_src[g] and (g, f) not in comp:
                report.fail("MissingComposite", f"{g} o {f}")
    if report.failures:
        raise InvalidCategory(report)

    for h in order:
        for g in order:
            if mor_tgt[g] != mor_src[h]:
                continue
            for f in order:
                if mor_tgt[f] != mor_src[g]:
                    continue
                if comp[(h, comp[(g, f)])] != comp[(comp[(h, g)], f)]:
                    report.fail("NonAssociative", f"{h},{g},{f}")
    if report.failures:
        raise InvalidCategory(report)

    return FinCategory(name, objects, mor_src, mor_tgt, comp, identities, order)


def classify_morphism(cat, f):
    """Flags {mono, epi, iso, identity} for f, by exhaustive cancellation.

    mono: left-cancellable against every parallel pair out of every
    (probe) object; epi dually; iso: a two-sided inverse exists.
    """
    x, y = cat.src(f), cat.tgt(f)
    mono = True
    for z in cat.objects():
        pool = cat.hom(z, x)
        for i, g in enumerate(pool):
            for h in pool[i + 1 :]:
                if cat.compose(f, g) == cat.compose(f, h):
                    mono = False
                    break
            if not mono:
                break
        if not mono:
            break
    epi = True
    for z in cat.objects():
        pool = cat.hom(y, z)
        for i, g in enumerate(pool):
            for h in pool[i + 1 :]:
                if cat.compose(g, f) == cat.compose(h, f):
                    epi = False
                    break
            if not epi:
                break
        if not epi:
            break
    iso = False
    inverse = None
    for g in cat.hom(y, x):
        if cat.compose(g, f) == cat.identity(x) and cat.compose(f, g) == cat.identity(y):
            iso = True
            inverse = g
            break
    return {
        "mono": mono,
        "epi": epi,
        "iso": iso,
        "identity": cat.identity(x) == f if x == y else False,
        "inverse": inverse,
    }


def isos(cat):
    return tuple(f for f in cat.morphisms() if classify_morphism(cat, f)["iso"])


def monos(cat):
    return tuple(f for f in cat.morphisms() if classify_morphism(cat, f)["mono"])


class Functor:
    """A functor between finite (or probe) categories, given by tables."""

    def __init__(self, name, source, target, fobj, fmor):
        self.name = name
        self.source = source
        self.target = target
        self.fobj = dict(fobj)
        self.fmor = dict(fmor)

    def on_obj(self, x):
        if x not in self.fobj:
            raise UnknownId(f"{self.name}: object {x}")
        return self.fobj[x]

    def on_mor(self, f):
        if f not in self.fmor:
            raise UnknownId(f"{self.name}: morphism {f}")
        return self.fmor[f]

    def validate(self):
        """Exhaustively check endpoint, identity and composition preservation."""
        src, tgt = self.source, self.target
        for x in src.objects():
            if x not in self.fobj:
                raise NotAFunctor(f"{self.name}: no image for object {x}")
        for f in src.morphisms():
            if f not in self.fmor:
                raise NotAFunctor(f"{self.name}: no image for morphism {f}")
            ff = self.fmor[f]
            if tgt.src(ff) != self.fobj[src.src(f)] or tgt.tgt(ff) != self.fobj[src.tgt(f)]:
                raise NotAFunctor(f"{self.name}: endpoints broken at {f}")
        for x in src.objects():
            if self.fmor[src.identity(x)] != tgt.identity(self.fobj[x]):
                raise NotAFunctor(f"{self.name}: identity broken at {x}")
        for g, f in src.composable_pairs():
            if self.fmor[src.compose(g, f)] != tgt.compose(self.fmor[g], self.fmor[f]):
                raise NotAFunctor(f"{self.name}: composition broken at ({g},{f})")
        return self

    def then(self, other):
        """other after self."""
        assert self.target is other.source
        return Functor(
            f"{other.name}.{self.name}",
            self.source,
            other.target,
            {x: other.on_obj(y) for x, y in self.fobj.items()},
            {f: other.on_mor(g) for f, g in self.fmor.items()},
        )

    @staticmethod
    def identity(cat):
        return Functor(
            f"id[{cat.name}]",
            cat,
            cat,
            {x: x for x in cat.objects()},
            {f: f for f in cat.morphisms()},
        )

    def __repr__(self):
        return f"Functor({self.name}: {self.source.name} -> {self.target.name})"


def product_category(a, b, name=None):
    """The product category a x b with pair-encoded ids ``(x|y)``."""
    name = name or f"{a.name}x{b.name}"
    objs = [pair_id(x, y) for x in a.objects() for y in b.objects()]
    mors = []
    back = {}
    for f in a.morphisms():
        for g in b.morphisms():
            if a.is_identity(f) and b.is_identity(g):
                continue
            mor = pair_id(f, g)
            mors.append((mor, pair_id(a.src(f), b.src(g)), pair_id(a.tgt(f), b.tgt(g))))
            back[mor] = (f, g)
    comp = []
    def lift(f, g):
        if a.is_identity(f) and b.is_identity(g):
            return identity_name(pair_id(a.src(f), b.src(g)))
        return pair_id(f, g)
    for f2 in a.morphisms():
        for g2 in b.morphisms():
            for f1 in a.morphisms():
                for g1 in b.morphisms():
                    if a.tgt(f1) != a.src(f2) or b.tgt(g1) != b.src(g2):
                        continue
                    m2, m1 = lift(f2, g2), lift(f1, g1)
                    if m2.startswith("id_") or m1.startswith("id_"):
                        continue
                    comp.append((m2, m1, lift(a.compose(f2, f1), b.compose(g2, g1))))
    cat = FinCategory.build(name, objs, mors, comp)
    cat.pair_components = back
    return cat


def pair_id(x, y):
    return f"({x}|{y})"
