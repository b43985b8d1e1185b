"""Finite (co)limits by exhaustive cone search.

A limit candidate is any cone; it wins when every other cone factors
through it by exactly one mediating morphism. On an extensional category
that quantification is a proof, on a probe category it quantifies over the
declared probes and the result is tagged probe-verified.

Colimits are limits in the opposite category; the opposite of a traversal
interface is built generically below, so all dual notions share one engine.
"""

from itertools import product as iproduct

from .config import Budget
from .core import FinCategory, Functor, validate_category
from .errors import NoProducts, UnknownId
from .report import Verdict


class DiagramShape:
    """A finite index category together with a labeling functor."""

    def __init__(self, shape, labeling):
        assert isinstance(shape, FinCategory)
        self.shape = shape
        self.labeling = labeling.validate()

    @property
    def target(self):
        return self.labeling.target


class Cone:
    def __init__(self, apex, legs, probe_verified=False, probes=()):
        self.apex = apex
        self.legs = dict(legs)  # shape object -> morphism apex -> label
        self.probe_verified = probe_verified
        self.probes = tuple(probes)

    def __repr__(self):
        return f"Cone(apex={self.apex}, legs={self.legs})"


class OppositeView:
    """Opposite of any category implementing the traversal interface."""

    def __init__(self, base):
        self.base = base
        self.name = f"{base.name}^op"
        self.exhaustive = base.exhaustive

    def objects(self):
        return self.base.objects()

    def morphisms(self):
        return self.base.morphisms()

    def hom(self, x, y):
        return self.base.hom(y, x)

    def identity(self, x):
        return self.base.identity(x)

    def src(self, f):
        return self.base.tgt(f)

    def tgt(self, f):
        return self.base.src(f)

    def compose(self, g, f):
        return self.base.compose(f, g)

    def is_identity(self, f):
        return self.base.is_identity(f)

    def composable_pairs(self):
        for g, f in self.base.composable_pairs():
            yield f, g


def opposite(cat):
    if isinstance(cat, OppositeView):
        return cat.base
    return OppositeView(cat)


def _cones(cat, diagram, apex, budget):
    """All cones over the diagram with the given apex, in search order."""
    shape, lab = diagram.shape, diagram.labeling
    jobjs = list(shape.objects())
    pools = [cat.hom(apex, lab.on_obj(j)) for j in jobjs]
    out = []
    for legs in iproduct(*pools):
        budget.charge()
        assign = dict(zip(jobjs, legs))
        if all(
            cat.compose(lab.on_mor(u), assign[shape.src(u)]) == assign[shape.tgt(u)]
            for u in shape.morphisms()
            if not shape.is_identity(u)
        ):
            out.append(assign)
    return out


def limit(cat, diagram, budget=None):
    """Limiting cone for the diagram, or None.

    Verified against every object (probes on an intensional category):
    each cone must factor through the candidate by a unique mediating
    morphism. Returns the first winning candidate in search order.
    """
    budget = budget or Budget()
    all_cones = []
    for apex in cat.objects():
        for legs in _cones(cat, diagram, apex, budget):
            all_cones.append((apex, legs))
    jobjs = list(diagram.shape.objects())
    for apex, legs in all_cones:
        ok = True
        for b, mu in all_cones:
            mediators = [
                m
                for m in cat.hom(b, apex)
                if all(cat.compose(legs[j], m) == mu[j] for j in jobjs)
            ]
            if len(mediators) != 1:
                ok = False
                break
        if ok:
            return Cone(
                apex,
                legs,
                probe_verified=not cat.exhaustive,
                probes=() if cat.exhaustive else cat.objects(),
            )
    return None


def is_limiting(cat, diagram, cone, budget=None):
    """Check one given cone for the universal property."""
    budget = budget or Budget()
    jobjs = list(diagram.shape.objects())
    shape, lab = diagram.shape, diagram.labeling
    for j in jobjs:
        leg = cone.legs[j]
        if cat.src(leg) != cone.apex or cat.tgt(leg) != lab.on_obj(j):
            return Verdict(False, witness=f"leg {j} has wrong endpoints")
    for u in shape.morphisms():
        if shape.is_identity(u):
            continue
        if cat.compose(lab.on_mor(u), cone.legs[shape.src(u)]) != cone.legs[shape.tgt(u)]:
            return Verdict(False, witness=f"cone does not commute at {u}")
    for b in cat.objects():
        for mu in _cones(cat, diagram, b, budget):
            mediators = [
                m
                for m in cat.hom(b, cone.apex)
                if all(cat.compose(cone.legs[j], m) == mu[j] for j in jobjs)
            ]
            if len(mediators) != 1:
                return Verdict(
                    False,
                    witness=f"{len(mediators)} mediators from cone at {b}",
                    probe_verified=not cat.exhaustive,
                    probes=() if cat.exhaustive else cat.objects(),
                )
    return Verdict(
        True, probe_verified=not cat.exhaustive, probes=() if cat.exhaustive else cat.objects()
    )


def colimit(cat, diagram, budget=None):
    """Colimiting cocone (apex, legs: label -> apex), or None."""
    op = opposite(cat)
    dual = DiagramShape(
        _opposite_fincat(diagram.shape),
        Functor(
            f"{diagram.labeling.name}^op",
            _opposite_fincat(diagram.shape),
            op,
            diagram.labeling.fobj,
            diagram.labeling.fmor,
        ),
    )
    cone = limit(op, dual, budget)
    return cone


def is_colimiting(cat, diagram, cocone, budget=None):
    op = opposite(cat)
    dual = DiagramShape(
        _opposite_fincat(diagram.shape),
        Functor(
            f"{diagram.labeling.name}^op",
            _opposite_fincat(diagram.shape),
            op,
            diagram.labeling.fobj,
            diagram.labeling.fmor,
        ),
    )
    return is_limiting(op, dual, cocone, budget)


_OP_CACHE = {}


def _opposite_fincat(cat):
    """Materialized opposite of a FinCategory (same morphism names)."""
    key = id(cat)
    got = _OP_CACHE.get(key)
    if got is not None and got[0] is cat:
        return got[1]
    mors = [(f, cat.tgt(f), cat.src(f)) for f in cat.morphisms() if not cat.is_identity(f)]
    comp = []
    for g, f in cat.composable_pairs():
        if cat.is_identity(g) or cat.is_identity(f):
            continue
        comp.append((f, g, cat.compose(g, f)))
    out = FinCategory.build(f"{cat.name}^op", cat.objects(), mors, comp)
    _OP_CACHE[key] = (cat, out)
    return out


# -- standard shapes --------------------------------------------------------

def discrete_shape(n):
    return FinCategory.build(f"disc{n}", [f"j{i}" for i in range(n)], [], [])


def parallel_pair_shape():
    return FinCategory.build("ppair", ["j0", "j1"], [("u", "j0", "j1"), ("v", "j0", "j1")], [])


def cospan_shape():
    return FinCategory.build(
        "cospan", ["jl", "jm", "jr"], [("u", "jl", "jm"), ("v", "jr", "jm")], []
    )


def diagram_on(cat, shape, fobj, fmor):
    lab = Functor("lab", shape, cat, fobj, fmor)
    return DiagramShape(shape, lab)


def terminal_object(cat, budget=None):
    cone = limit(cat, diagram_on(cat, discrete_shape(0), {}, {}), budget)
    return cone.apex if cone else None


def initial_object(cat, budget=None):
    cone = colimit(cat, diagram_on(cat, discrete_shape(0), {}, {}), budget)
    return cone.apex if cone else None


def _snapshot_source(cat):
    snap = getattr(cat, "probe_source", None)
    if snap is not None and hasattr(snap, "probe_realization"):
        return snap
    return None


def binary_product(cat, x, y, budget=None):
    snap = _snapshot_source(cat)
    if snap is not None and hasattr(snap, "native_product"):
        apex_v, p1, p2 = snap.native_product(cat.obj_value[x], cat.obj_value[y])
        got = snap.probe_realization(apex_v)
        if got is None:
            return None
        pv, j = got
        return (
            cat.value_obj[pv],
            cat.value_mor[snap.compose(p1, j)],
            cat.value_mor[snap.compose(p2, j)],
        )
    shape = discrete_shape(2)
    cone = limit(cat, diagram_on(cat, shape, {"j0": x, "j1": y}, _id_images(cat, shape, {"j0": x, "j1": y})), budget)
    if cone is None:
        return None
    return cone.apex, cone.legs["j0"], cone.legs["j1"]


def binary_coproduct(cat, x, y, budget=None):
    shape = discrete_shape(2)
    cocone = colimit(cat, diagram_on(cat, shape, {"j0": x, "j1": y}, _id_images(cat, shape, {"j0": x, "j1": y})), budget)
    if cocone is None:
        return None
    return cocone.apex, cocone.legs["j0"], cocone.legs["j1"]


def equalizer(cat, f, g, budget=None):
    assert cat.src(f) == cat.src(g) and cat.tgt(f) == cat.tgt(g)
    shape = parallel_pair_shape()
    d = diagram_on(
        cat,
        shape,
        {"j0": cat.src(f), "j1": cat.tgt(f)},
        _id_images(cat, shape, {"j0": cat.src(f), "j1": cat.tgt(f)}) | {"u": f, "v": g},
    )
    cone = limit(cat, d, budget)
    if cone is None:
        return None
    return cone.apex, cone.legs["j0"]


def coequalizer(cat, f, g, budget=None):
    assert cat.src(f) == cat.src(g) and cat.tgt(f) == cat.tgt(g)
    shape = parallel_pair_shape()
    d = diagram_on(
        cat,
        shape,
        {"j0": cat.src(f), "j1": cat.tgt(f)},
        _id_images(cat, shape, {"j0": cat.src(f), "j1": cat.tgt(f)}) | {"u": f, "v": g},
    )
    cocone = colimit(cat, d, budget)
    if cocone is None:
        return None
    return cocone.apex, cocone.legs["j1"]


def pullback(cat, f, g, budget=None):
    """Pullback of the cospan f: X -> Z <- Y :g. Returns (apex, to_X, to_Y)."""
    assert cat.tgt(f) == cat.tgt(g)
    snap = _snapshot_source(cat)
    if snap is not None and hasattr(snap, "native_pullback"):
        apex_v, ta, tb = snap.native_pullback(cat.mor_value[f], cat.mor_value[g])
        got = snap.probe_realization(apex_v)
        if got is None:
            return None
        pv, j = got
        return (
            cat.value_obj[pv],
            cat.value_mor[snap.compose(ta, j)],
            cat.value_mor[snap.compose(tb, j)],
        )
    shape = cospan_shape()
    d = diagram_on(
        cat,
        shape,
        {"jl": cat.src(f), "jm": cat.tgt(f), "jr": cat.src(g)},
        _id_images(cat, shape, {"jl": cat.src(f), "jm": cat.tgt(f), "jr": cat.src(g)})
        | {"u": f, "v": g},
    )
    cone = limit(cat, d, budget)
    if cone is None:
        return None
    return cone.apex, cone.legs["jl"], cone.legs["jr"]


def pushout(cat, f, g, budget=None):
    assert cat.src(f) == cat.src(g)
    op = opposite(cat)
    got = pullback_on_view(op, f, g, budget)
    return got


def pullback_on_view(cat, f, g, budget=None):
    assert cat.tgt(f) == cat.tgt(g)
    shape = cospan_shape()
    labels = {"jl": cat.src(f), "jm": cat.tgt(f), "jr": cat.src(g)}
    d = DiagramShape(
        shape,
        Functor("lab", shape, cat, labels, _id_images(cat, shape, labels) | {"u": f, "v": g}),
    )
    cone = limit(cat, d, budget)
    if cone is None:
        return None
    return cone.apex, cone.legs["jl"], cone.legs["jr"]


def _id_images(cat, shape, fobj):
    return {shape.identity(j): cat.identity(x) for j, x in fobj.items()}


class Products:
    """Chosen binary products with mediating-morphism computation.

    The choice is deterministic (first limiting cone in search order) and
    cached, so repeated restrictions pick the same projections.
    """

    def __init__(self, cat):
        self.cat = cat
        self._cache = {}

    def get(self, x, y):
        key = (x, y)
        if key not in self._cache:
            if hasattr(self.cat, "native_product"):
                got = self.cat.native_product(x, y)
            else:
                got = binary_product(self.cat, x, y)
            if got is None:
                raise NoProducts(f"{self.cat.name}: no product of ({x}, {y})")
            self._cache[key] = got
        return self._cache[key]

    def has(self, x, y):
        try:
            self.get(x, y)
            return True
        except NoProducts:
            return False

    def pair(self, p, q):
        """Mediating morphism <p, q> into the chosen product of the targets."""
        cat = self.cat
        assert cat.src(p) == cat.src(q)
        if hasattr(cat, "native_pair"):
            self.get(cat.tgt(p), cat.tgt(q))
            return cat.native_pair(p, q)
        apex, pi1, pi2 = self.get(cat.tgt(p), cat.tgt(q))
        for m in cat.hom(cat.src(p), apex):
            if cat.compose(pi1, m) == p and cat.compose(pi2, m) == q:
                return m
        raise NoProducts(f"{cat.name}: no mediating <{p},{q}>")


def has_finite_limits(cat, budget=None):
    """Terminal + binary products + equalizers; jointly all finite limits."""
    budget = budget or Budget()
    if terminal_object(cat, budget) is None:
        return Verdict(False, witness="no terminal object")
    objs = list(cat.objects())
    for x in objs:
        for y in objs:
            if binary_product(cat, x, y, budget) is None:
                return Verdict(False, witness=f"no product ({x},{y})")
    for x in objs:
        for y in objs:
            pool = cat.hom(x, y)
            for i, f in enumerate(pool):
                for g in pool[i + 1 :]:
                    if equalizer(cat, f, g, budget) is None:
                        return Verdict(False, witness=f"no equalizer ({f},{g})")
    return Verdict(True, probe_verified=not cat.exhaustive)


def has_finite_colimits(cat, budget=None):
    return has_finite_limits(opposite(cat), budget)
