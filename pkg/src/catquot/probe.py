"""Intensional categories checked against a declared probe set.

A probe category knows how to enumerate the morphisms between any two of
its object descriptions; universal properties are only ever quantified
over the declared probes, and every verdict downstream is tagged
accordingly. `materialize` snapshots the full subcategory on the probes as
a FinCategory (with name/value bridges) so the heavier machinery (model
structures, fibrations, universes) can run on explicit tables.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from .core import FinCategory
from .errors import CapExceeded, UnknownId


@dataclass(frozen=True)
class FinSet:
    name: str
    elems: tuple

    def __len__(self):
        return len(self.elems)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class SetMap:
    src: FinSet
    tgt: FinSet
    images: tuple  # aligned with src.elems

    def __call__(self, e):
        return self.images[self.src.elems.index(e)]

    def __str__(self):
        imgs = ",".join(str(i) for i in self.images)
        return f"{self.src.name}>{self.tgt.name}[{imgs}]"


def canonical_set(n):
    """The canonical n-element set S<n> with elements 0..n-1."""
    return FinSet(f"S{n}", tuple(range(n)))


def set_identity(a):
    return SetMap(a, a, a.elems)


def set_compose(g, f):
    assert f.tgt == g.src
    return SetMap(f.src, g.tgt, tuple(g(e) for e in f.images))


def all_maps(a, b):
    """Every function a -> b, in lexicographic order over b's elements."""
    return tuple(SetMap(a, b, images) for images in iproduct(b.elems, repeat=len(a.elems)))


class SetProbe:
    """The category of finite sets, probed at a declared finite list."""

    exhaustive = False
    finitely_bicomplete = True

    def __init__(self, probes, name="PSet", probe_bound=200000):
        self.name = name
        self.probes = tuple(probes)
        self.probe_bound = probe_bound
        assert probe_bound > 0

    def objects(self):
        return self.probes

    def hom(self, a, b):
        # the object language is all finite sets; probes only bound the
        # universal quantifications, not which homs are evaluable
        count = len(b) ** len(a) if len(a) else 1
        if count > self.probe_bound:
            raise CapExceeded(f"hom({a},{b}) has {count} > bound {self.probe_bound}")
        return all_maps(a, b)

    def morphisms(self):
        out = []
        for a in self.probes:
            for b in self.probes:
                out.extend(self.hom(a, b))
        return tuple(out)

    def identity(self, a):
        return set_identity(a)

    def native_product(self, a, b):
        """The actual product set with projections (not probe-bounded)."""
        prod = FinSet(f"({a.name}*{b.name})", tuple((x, y) for x in a.elems for y in b.elems))
        p1 = SetMap(prod, a, tuple(x for x, _ in prod.elems))
        p2 = SetMap(prod, b, tuple(y for _, y in prod.elems))
        return prod, p1, p2

    def native_pair(self, p, q):
        """Mediating map <p, q> into the native product of the targets."""
        assert p.src == q.src
        prod, _, _ = self.native_product(p.tgt, q.tgt)
        return SetMap(p.src, prod, tuple(zip(p.images, q.images)))

    def native_exponential(self, x, y):
        """The actual function set y^x with its evaluation map."""
        maps = all_maps(x, y)
        expo = FinSet(f"({y.name}^{x.name})", tuple(m.images for m in maps))
        prod, p1, p2 = self.native_product(expo, x)
        ev_images = []
        for images, e in prod.elems:
            ev_images.append(images[x.elems.index(e)])
        return expo, SetMap(prod, y, tuple(ev_images))

    def native_pullback(self, f, g):
        """Pullback of the cospan f: A -> Z <- B :g as a pair set."""
        assert f.tgt == g.tgt
        elems = tuple((a, b) for a in f.src.elems for b in g.src.elems if f(a) == g(b))
        apex = FinSet(f"pb({f.src.name},{g.src.name})", elems)
        to_a = SetMap(apex, f.src, tuple(a for a, _ in elems))
        to_b = SetMap(apex, g.src, tuple(b for _, b in elems))
        return apex, to_a, to_b

    def probe_realization(self, value):
        """A probe object of the same shape plus an iso onto the value,
        or None when the probes cannot see an object that large."""
        for probe in self.probes:
            if len(probe) == len(value):
                return probe, SetMap(probe, value, tuple(value.elems))
        return None

    def native_pushforward(self, f, q):
        """Dependent product along f: X -> Y of a family q: Q -> X.

        The fiber over y is the set of sections of q over the fiber of f
        at y; returns (total, projection to f.tgt).
        """
        assert q.tgt == f.src
        y_set = f.tgt
        elems = []
        for y in y_set.elems:
            fiber_x = tuple(x for x in f.src.elems if f(x) == y)
            pools = [
                tuple(e for e in q.src.elems if q(e) == x) for x in fiber_x
            ]
            for combo in iproduct(*pools):
                elems.append((y, tuple(zip(fiber_x, combo))))
        total = FinSet(f"pi({f.src.name}>{y_set.name},{q.src.name})", tuple(elems))
        proj = SetMap(total, y_set, tuple(y for y, _ in elems))
        return total, proj

    def src(self, f):
        return f.src

    def tgt(self, f):
        return f.tgt

    def compose(self, g, f):
        return set_compose(g, f)

    def is_identity(self, f):
        return f.src == f.tgt and f.images == f.src.elems

    def composable_pairs(self):
        for g in self.morphisms():
            for f in self.morphisms():
                if f.tgt == g.src:
                    yield g, f


@dataclass(frozen=True)
class ProbePair:
    left: object
    right: object

    def __str__(self):
        return f"({self.left}|{self.right})"


@dataclass(frozen=True)
class PairMap:
    left: object
    right: object

    def __str__(self):
        return f"({self.left}|{self.right})"


class ProductProbe:
    """The product of two probe categories; morphisms are pairs of maps."""

    exhaustive = False

    @property
    def finitely_bicomplete(self):
        return getattr(self.first, "finitely_bicomplete", False) and getattr(
            self.second, "finitely_bicomplete", False
        )

    def __init__(self, first, second, name=None):
        self.first = first
        self.second = second
        self.name = name or f"{first.name}x{second.name}"
        self.probes = tuple(
            ProbePair(a, b) for a in first.objects() for b in second.objects()
        )

    def objects(self):
        return self.probes

    def hom(self, a, b):
        return tuple(
            PairMap(l, r)
            for l in self.first.hom(a.left, b.left)
            for r in self.second.hom(a.right, b.right)
        )

    def morphisms(self):
        out = []
        for a in self.probes:
            for b in self.probes:
                out.extend(self.hom(a, b))
        return tuple(out)

    def identity(self, a):
        return PairMap(self.first.identity(a.left), self.second.identity(a.right))

    def src(self, f):
        return ProbePair(self.first.src(f.left), self.second.src(f.right))

    def tgt(self, f):
        return ProbePair(self.first.tgt(f.left), self.second.tgt(f.right))

    def compose(self, g, f):
        return PairMap(
            self.first.compose(g.left, f.left), self.second.compose(g.right, f.right)
        )

    def is_identity(self, f):
        return self.first.is_identity(f.left) and self.second.is_identity(f.right)

    def composable_pairs(self):
        for g in self.morphisms():
            for f in self.morphisms():
                if self.tgt(f) == self.src(g):
                    yield g, f

    def native_product(self, a, b):
        pl, l1, l2 = self.first.native_product(a.left, b.left)
        pr, r1, r2 = self.second.native_product(a.right, b.right)
        return ProbePair(pl, pr), PairMap(l1, r1), PairMap(l2, r2)

    def native_pullback(self, f, g):
        al, tl_a, tl_b = self.first.native_pullback(f.left, g.left)
        ar, tr_a, tr_b = self.second.native_pullback(f.right, g.right)
        return ProbePair(al, ar), PairMap(tl_a, tr_a), PairMap(tl_b, tr_b)

    def probe_realization(self, value):
        left = self.first.probe_realization(value.left)
        right = self.second.probe_realization(value.right)
        if left is None or right is None:
            return None
        return ProbePair(left[0], right[0]), PairMap(left[1], right[1])


def materialize(view, name=None):
    """Snapshot the full subcategory on the probes as a FinCategory.

    The result carries bridges: ``obj_value``/``mor_value`` map generated
    names back to probe-language values, and ``value_obj``/``value_mor``
    go the other way. The snapshot is tagged ``probe_source`` so verdict
    tagging survives materialization.
    """
    name = name or f"{view.name}!"
    objs = [str(o) for o in view.objects()]
    obj_value = dict(zip(objs, view.objects()))
    if len(set(objs)) != len(objs):
        raise UnknownId(f"{view.name}: probe names collide")
    mors = []
    mor_value, value_mor = {}, {}
    for a in view.objects():
        for b in view.objects():
            for i, f in enumerate(view.hom(a, b)):
                if view.is_identity(f):
                    mname = f"id_{a}"
                else:
                    mname = f"{a}>{b}#{i}"
                    mors.append((mname, str(a), str(b)))
                mor_value[mname] = f
                value_mor[f] = mname
    comp = []
    for gname, g in mor_value.items():
        if gname.startswith("id_"):
            continue
        for fname, f in mor_value.items():
            if fname.startswith("id_"):
                continue
            if view.tgt(f) != view.src(g):
                continue
            comp.append((gname, fname, value_mor[view.compose(g, f)]))
    cat = FinCategory.build(name, objs, mors, comp)
    cat.obj_value = obj_value
    cat.mor_value = mor_value
    cat.value_mor = value_mor
    cat.value_obj = {v: k for k, v in obj_value.items()}
    cat.probe_source = view
    cat.flc_assumed = getattr(view, "finitely_bicomplete", False)
    return cat
