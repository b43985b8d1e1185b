"""Filter quotient categories and the projection functor.

For an explicit filter the quotient is built twice, on purpose. The germ
construction takes pairs (U, f: U*X -> Y) for U in the filter and
identifies two when they agree after restriction to a common smaller
filter element. The optimized construction uses the filter's least element
U0 directly: hom(X, Y) = hom(U0*X, Y), with composition
g . <pi_U0, f>. A finite filter always has a least element, so the two are
isomorphic by an identity-on-objects functor; the builder checks that
hom-by-hom and raises OptimizationMismatch on any disagreement, as an
internal bug sentinel.

Quotient morphisms are named ``<f>@<U0>`` after their canonical
representative at the minimum.
"""

from .core import FinCategory, Functor, classify_morphism, identity_name
from .errors import (
    MissingProducts,
    NotProductStable,
    OptimizationMismatch,
    PreservationFailure,
)
from .filters import filter_minimum
from .limits import (
    Products,
    binary_product,
    diagram_on,
    discrete_shape,
    cospan_shape,
    parallel_pair_shape,
    is_limiting,
    is_colimiting,
    Cone,
    equalizer,
    pullback,
    terminal_object,
    initial_object,
    binary_coproduct,
    coequalizer,
    pushout,
    opposite,
)
from .report import Report, Verdict
from .structure import exponential, subobject_classifier
from .config import Budget


class QuotientBuild:
    """Everything the quotient construction fixes: chosen products,
    the minimum, restriction maps, and the class naming."""

    def __init__(self, base, filt):
        if filt.is_symbolic:
            raise MissingProducts("symbolic filters quotient via the germ module")
        self.base = base
        self.filt = filt
        self.minimum = filter_minimum(filt)
        self.prods = Products(base)
        for u in filt:
            for x in base.objects():
                got = binary_product(base, u, x)
                if got is None:
                    raise MissingProducts(f"no product ({u},{x}) in {base.name}")
                self.prods._cache[(u, x)] = got

    def proj(self, u, x):
        """(U*X, pi_U, pi_X) for the chosen product."""
        return self.prods.get(u, x)

    def restrict(self, f, u_from, x, u_to):
        """Restrict f: u_from*X -> Y along u_to <= u_from."""
        base = self.base
        w = base.hom(u_to, u_from)
        assert w, f"{u_to} not below {u_from}"
        _, pi_u, pi_x = self.proj(u_to, x)
        m = self.prods.pair(base.compose(w[0], pi_u), pi_x)
        return base.compose(f, m)

    def matched(self, f, u, x, y):
        """<pi_U, f>: U*X -> U*Y, the matched form of a representative."""
        _, pi_u, _ = self.proj(u, x)
        return self.prods.pair(pi_u, f)

    def times(self, f, u):
        """id_U x f : U*src(f) -> U*tgt(f)."""
        base = self.base
        _, pi_u, pi_x = self.proj(u, base.src(f))
        return self.prods.pair(pi_u, base.compose(f, pi_x))


def class_name(rep, x, base, build):
    """Quotient name of the class over source x with representative rep.

    Distinct sources can share a product apex with the minimum (meets
    collapse), so the name carries the source object to stay unique.
    """
    _, _, pi_x = build.proj(build.minimum, x)
    if rep == pi_x:
        return identity_name(x)
    return f"{rep}@{build.minimum}:{x}"


def filter_quotient(base, filt, cross_check=True):
    """The filter quotient as a validated FinCategory.

    Attributes on the result: ``base``, ``filt``, ``build``, ``class_rep``
    (quotient morphism -> (source object, representative at the minimum)).
    Raises OptimizationMismatch if the germ construction disagrees with
    the minimum optimization (internal sentinel, see module docstring).
    """
    build = QuotientBuild(base, filt)
    u0 = build.minimum
    objs = list(base.objects())
    mors = []
    rep_of = {}
    for x in objs:
        apex, _, _ = build.proj(u0, x)
        for y in objs:
            for f in base.hom(apex, y):
                name = class_name(f, x, base, build)
                rep_of[name] = (x, f)
                if name != identity_name(x):
                    mors.append((name, x, y))
    comp = []
    for gname, (x2, g) in rep_of.items():
        if gname == identity_name(x2):
            continue
        for fname, (x, f) in rep_of.items():
            if fname == identity_name(x):
                continue
            if base.tgt(f) != x2:
                continue
            m = build.matched(f, u0, x, base.tgt(f))
            h = base.compose(g, m)
            comp.append((gname, fname, class_name(h, x, base, build)))
    name = f"{base.name}_{filt.name}"
    quo = FinCategory.build(name, objs, mors, comp)
    quo.base = base
    quo.filt = filt
    quo.build = build
    quo.class_rep = rep_of
    quo.flc_assumed = getattr(base, "flc_assumed", False)
    if cross_check:
        _cross_check_germ(base, filt, build, quo)
    return quo


def _cross_check_germ(base, filt, build, quo):
    """Rebuild every hom-set by germ classes and compare with the
    optimized form, including a composition spot-check at every pair."""
    u0 = build.minimum
    poset = filt.poset
    for x in base.objects():
        for y in base.objects():
            pairs = []
            for u in filt:
                apex, _, _ = build.proj(u, x)
                for f in base.hom(apex, y):
                    pairs.append((u, f))
            classes = []
            for u, f in pairs:
                placed = False
                for cls in classes:
                    v, g = cls[0]
                    if _germ_equivalent(build, poset, filt, x, (u, f), (v, g)):
                        cls.append((u, f))
                        placed = True
                        break
                if not placed:
                    classes.append([(u, f)])
            canon = set()
            for cls in classes:
                u, f = cls[0]
                canon.add(build.restrict(f, u, x, u0))
                for v, g in cls[1:]:
                    if build.restrict(g, v, x, u0) != build.restrict(f, u, x, u0):
                        raise OptimizationMismatch(
                            f"class of ({u},{f}) not constant at minimum"
                        )
            apex0, _, _ = build.proj(u0, x)
            optimized = set(base.hom(apex0, y))
            if canon != optimized:
                raise OptimizationMismatch(
                    f"hom({x},{y}): germ classes {sorted(map(str, canon))} != "
                    f"optimized {sorted(map(str, optimized))}"
                )
    # composition agreement: compose germ-style at a common lower bound
    for x in base.objects():
        for y in base.objects():
            for z in base.objects():
                ax, _, _ = build.proj(u0, x)
                ay, _, _ = build.proj(u0, y)
                for f in base.hom(ax, y):
                    for g in base.hom(ay, z):
                        w = _common_lower_bound(poset, filt, u0, u0)
                        fw = build.restrict(f, u0, x, w)
                        gw = build.restrict(g, u0, y, w)
                        m = build.matched(fw, w, x, y)
                        germ = build.restrict(base.compose(gw, m), w, x, u0)
                        opt = base.compose(g, build.matched(f, u0, x, y))
                        if germ != opt:
                            raise OptimizationMismatch(
                                f"composition of ({g},{f}) disagrees: {germ} != {opt}"
                            )


def _germ_equivalent(build, poset, filt, x, uf, vg):
    u, f = uf
    v, g = vg
    for w in filt:
        if poset.leq(w, u) and poset.leq(w, v):
            if build.restrict(f, u, x, w) == build.restrict(g, v, x, w):
                return True
    return False


def _common_lower_bound(poset, filt, u, v):
    for w in filt:
        if poset.leq(w, u) and poset.leq(w, v):
            return w
    raise AssertionError("filter not directed")


def projection_functor(base, filt, quo=None):
    """P: C -> C_Phi, identity on objects, morphism to its class."""
    quo = quo if quo is not None else filter_quotient(base, filt)
    build = quo.build
    u0 = build.minimum
    fmor = {}
    for f in base.morphisms():
        x = base.src(f)
        _, _, pi_x = build.proj(u0, x)
        rep = base.compose(f, pi_x)
        fmor[f] = class_name(rep, x, base, build)
    return Functor(
        f"P[{filt.name}]", base, quo, {x: x for x in base.objects()}, fmor
    ).validate()


class ClassTransfer:
    """The transferred class S_Phi on a quotient: a quotient morphism is a
    member when some representative's matched form lies in S."""

    def __init__(self, quo, members, witnesses):
        self.quo = quo
        self.members = frozenset(members)
        self.witnesses = dict(witnesses)

    def __contains__(self, name):
        return name in self.members


def transfer_class(s, filt, quo):
    """Transfer a product-stable class along the projection.

    Checks product stability first (NotProductStable names the offending
    pair), then decides membership for every quotient morphism by brute
    force over the filter.
    """
    base = quo.base
    build = quo.build
    u0 = build.minimum
    s = frozenset(s)
    for f in sorted(s):
        for u in filt:
            if build.times(f, u) not in s:
                raise NotProductStable(f"({f},{u})")
    members, witnesses = [], {}
    for name, (x, rep) in quo.class_rep.items():
        y = base.tgt(rep)
        found = None
        for u in filt:
            apex, _, _ = build.proj(u, x)
            for f in base.hom(apex, y):
                if build.restrict(f, u, x, u0) != rep:
                    continue
                if build.matched(f, u, x, y) in s:
                    found = (u, f)
                    break
            if found:
                break
        if found:
            members.append(name)
            witnesses[name] = found
    return ClassTransfer(quo, members, witnesses)


class ImageCones:
    """Binary products in the quotient presented by images of the base's
    chosen cones (limiting there whenever preservation holds)."""

    def __init__(self, quo, proj):
        self.quo = quo
        self.proj = proj
        base = quo.base
        self.base_prods = quo.build.prods

    def get(self, x, y):
        apex, p1, p2 = self.base_prods.get(x, y)
        return apex, self.proj.on_mor(p1), self.proj.on_mor(p2)

    def pair(self, p, q):
        quo = self.quo
        apex, pi1, pi2 = self.get(quo.tgt(p), quo.tgt(q))
        for m in quo.hom(quo.src(p), apex):
            if quo.compose(pi1, m) == p and quo.compose(pi2, m) == q:
                return m
        raise OptimizationMismatch(f"no mediator <{p},{q}> in quotient")


PRESERVATION_PROPERTIES = (
    "finite-limits",
    "finite-colimits",
    "monos",
    "exponentials",
    "subobject-classifier",
    "nno-probe",
)


def verify_preservation(base, filt, prop, quo=None, proj=None, nno=None, budget=None):
    """Re-verify a preserved property's universal property in the quotient.

    The property must hold in the base (that is the caller's precondition;
    instances where it does not are skipped and reported as such). Any
    instance that holds in the base but fails in the quotient raises
    PreservationFailure: the projection provably preserves these, so a
    failure is a bug detector, not a data point.
    """
    assert prop in PRESERVATION_PROPERTIES, prop
    budget = budget or Budget()
    quo = quo if quo is not None else filter_quotient(base, filt)
    proj = proj if proj is not None else projection_functor(base, filt, quo)
    report = Report(f"preserve:{prop}:{base.name}:{filt.name}")
    checked = 0

    def push_cone(cone, legs_names):
        return Cone(cone.apex, {j: proj.on_mor(m) for j, m in cone.legs.items()})

    if prop == "finite-limits":
        t = terminal_object(base, budget)
        if t is not None:
            ok = all(len(quo.hom(z, t)) == 1 for z in quo.objects())
            checked += 1
            if not ok:
                raise PreservationFailure(f"terminal {t} not terminal in {quo.name}")
        for x in base.objects():
            for y in base.objects():
                got = binary_product(base, x, y, budget)
                if got is None:
                    continue
                apex, p1, p2 = got
                shape = discrete_shape(2)
                d = diagram_on(
                    quo,
                    shape,
                    {"j0": x, "j1": y},
                    {shape.identity("j0"): quo.identity(x), shape.identity("j1"): quo.identity(y)},
                )
                cone = Cone(apex, {"j0": proj.on_mor(p1), "j1": proj.on_mor(p2)})
                checked += 1
                if not is_limiting(quo, d, cone, budget):
                    raise PreservationFailure(f"product ({x},{y}) not preserved")
        for x in base.objects():
            for y in base.objects():
                pool = base.hom(x, y)
                for i, f in enumerate(pool):
                    for g in pool[i + 1 :]:
                        got = equalizer(base, f, g, budget)
                        if got is None:
                            continue
                        apex, leg = got
                        shape = parallel_pair_shape()
                        d = diagram_on(
                            quo,
                            shape,
                            {"j0": x, "j1": y},
                            {
                                shape.identity("j0"): quo.identity(x),
                                shape.identity("j1"): quo.identity(y),
                                "u": proj.on_mor(f),
                                "v": proj.on_mor(g),
                            },
                        )
                        cone = Cone(
                            apex,
                            {"j0": proj.on_mor(leg), "j1": proj.on_mor(base.compose(f, leg))},
                        )
                        checked += 1
                        if not is_limiting(quo, d, cone, budget):
                            raise PreservationFailure(f"equalizer ({f},{g}) not preserved")
        for f in base.morphisms():
            for g in base.morphisms():
                if base.tgt(f) != base.tgt(g) or base.is_identity(f):
                    continue
                got = pullback(base, f, g, budget)
                if got is None:
                    continue
                apex, to_l, to_r = got
                shape = cospan_shape()
                d = diagram_on(
                    quo,
                    shape,
                    {"jl": base.src(f), "jm": base.tgt(f), "jr": base.src(g)},
                    {
                        shape.identity("jl"): quo.identity(base.src(f)),
                        shape.identity("jm"): quo.identity(base.tgt(f)),
                        shape.identity("jr"): quo.identity(base.src(g)),
                        "u": proj.on_mor(f),
                        "v": proj.on_mor(g),
                    },
                )
                cone = Cone(
                    apex,
                    {
                        "jl": proj.on_mor(to_l),
                        "jm": proj.on_mor(base.compose(f, to_l)),
                        "jr": proj.on_mor(to_r),
                    },
                )
                checked += 1
                if not is_limiting(quo, d, cone, budget):
                    raise PreservationFailure(f"pullback ({f},{g}) not preserved")

    elif prop == "finite-colimits":
        t = initial_object(base, budget)
        if t is not None:
            ok = all(len(quo.hom(t, z)) == 1 for z in quo.objects())
            checked += 1
            if not ok:
                raise PreservationFailure(f"initial {t} not initial in {quo.name}")
        for x in base.objects():
            for y in base.objects():
                got = binary_coproduct(base, x, y, budget)
                if got is None:
                    continue
                apex, i1, i2 = got
                shape = discrete_shape(2)
                d = diagram_on(
                    quo,
                    shape,
                    {"j0": x, "j1": y},
                    {shape.identity("j0"): quo.identity(x), shape.identity("j1"): quo.identity(y)},
                )
                cocone = Cone(apex, {"j0": proj.on_mor(i1), "j1": proj.on_mor(i2)})
                checked += 1
                if not is_colimiting(quo, d, cocone, budget):
                    raise PreservationFailure(f"coproduct ({x},{y}) not preserved")
        for x in base.objects():
            for y in base.objects():
                pool = base.hom(x, y)
                for i, f in enumerate(pool):
                    for g in pool[i + 1 :]:
                        got = coequalizer(base, f, g, budget)
                        if got is None:
                            continue
                        apex, leg = got
                        shape = parallel_pair_shape()
                        d = diagram_on(
                            quo,
                            shape,
                            {"j0": x, "j1": y},
                            {
                                shape.identity("j0"): quo.identity(x),
                                shape.identity("j1"): quo.identity(y),
                                "u": proj.on_mor(f),
                                "v": proj.on_mor(g),
                            },
                        )
                        cocone = Cone(
                            apex,
                            {"j1": proj.on_mor(leg), "j0": proj.on_mor(base.compose(leg, f))},
                        )
                        checked += 1
                        if not is_colimiting(quo, d, cocone, budget):
                            raise PreservationFailure(f"coequalizer ({f},{g}) not preserved")

    elif prop == "monos":
        for m in base.morphisms():
            if not classify_morphism(base, m)["mono"]:
                continue
            checked += 1
            if not classify_morphism(quo, proj.on_mor(m))["mono"]:
                raise PreservationFailure(f"mono {m} not preserved")

    elif prop == "exponentials":
        cones = ImageCones(quo, proj)
        for x in base.objects():
            for y in base.objects():
                try:
                    got = exponential(base, x, y, budget)
                except Exception:
                    got = None
                if got is None:
                    continue
                z, ev = got
                checked += 1
                if not _exponential_in(quo, cones, x, y, z, proj.on_mor(ev)):
                    raise PreservationFailure(f"exponential ({x},{y}) not preserved")

    elif prop == "subobject-classifier":
        got = subobject_classifier(base, budget)
        if got is not None:
            omega, true = got
            checked += 1
            verdict = classifies_all_monos(quo, omega, proj.on_mor(true), budget)
            if not verdict:
                raise PreservationFailure(f"classifier image fails: {verdict.witness}")

    elif prop == "nno-probe":
        if nno is None:
            report.add("skipped", "no designated nno candidate")
        else:
            n_obj, zero, succ = nno
            for x in base.objects():
                for x0 in base.hom(terminal_object(base), x):
                    for s in base.hom(x, x):
                        sols = [
                            h
                            for h in base.hom(n_obj, x)
                            if base.compose(h, zero) == x0
                            and base.compose(h, succ) == base.compose(s, h)
                        ]
                        for h in sols:
                            checked += 1
                            ph, pz, ps = proj.on_mor(h), proj.on_mor(zero), proj.on_mor(succ)
                            if quo.compose(ph, pz) != proj.on_mor(x0) or quo.compose(
                                ph, ps
                            ) != quo.compose(proj.on_mor(s), ph):
                                raise PreservationFailure(
                                    f"recursion diagram for {h} not preserved"
                                )

    report.add("instances", checked)
    report.add("property", prop)
    return report


def _exponential_in(quo, cones, x, y, z, ev):
    """Verify (z, ev) is an exponential y^x in the quotient, using image
    cones for the products."""
    for w in quo.objects():
        wx, r1, r2 = cones.get(w, x)
        for f in quo.hom(wx, y):
            transposes = []
            for lam in quo.hom(w, z):
                m = cones.pair(quo.compose(lam, r1), r2)
                if quo.compose(ev, m) == f:
                    transposes.append(lam)
            if len(transposes) != 1:
                return False
    return True


def classifies_all_monos(cat, omega, true, budget=None):
    """Does (omega, true) classify every mono of `cat` uniquely?"""
    budget = budget or Budget()
    one = cat.src(true)
    if any(len(cat.hom(z, one)) != 1 for z in cat.objects()):
        return Verdict(False, witness=f"domain of true ({one}) is not terminal")
    if cat.tgt(true) != omega:
        return Verdict(False, witness="true has wrong endpoints")
    bang = {z: cat.hom(z, one)[0] for z in cat.objects()}
    shape = cospan_shape()
    for m in cat.morphisms():
        if not classify_morphism(cat, m)["mono"]:
            continue
        s, xx = cat.src(m), cat.tgt(m)
        classifying = []
        for chi in cat.hom(xx, omega):
            if cat.compose(chi, m) != cat.compose(true, bang[s]):
                continue
            d = diagram_on(
                cat,
                shape,
                {"jl": xx, "jm": omega, "jr": one},
                {
                    shape.identity("jl"): cat.identity(xx),
                    shape.identity("jm"): cat.identity(omega),
                    shape.identity("jr"): cat.identity(one),
                    "u": chi,
                    "v": true,
                },
            )
            cone = Cone(s, {"jl": m, "jm": cat.compose(chi, m), "jr": bang[s]})
            if is_limiting(cat, d, cone, budget):
                classifying.append(chi)
        if len(classifying) != 1:
            return Verdict(
                False, witness=f"mono {m} has {len(classifying)} classifying maps"
            )
    return Verdict(True, probe_verified=not cat.exhaustive)


def monotone_functor(quo_small, quo_big):
    """The canonical functor C_Phi -> C_Psi for Phi a subset of Psi,
    restricting representatives from min(Phi) to min(Psi)."""
    base = quo_small.base
    b_small, b_big = quo_small.build, quo_big.build
    assert base is quo_big.base
    fmor = {}
    for name, (x, rep) in quo_small.class_rep.items():
        restricted = b_big.restrict(rep, b_small.minimum, x, b_big.minimum)
        fmor[name] = class_name(restricted, x, base, b_big)
    return Functor(
        f"mono[{quo_small.name}>{quo_big.name}]",
        quo_small,
        quo_big,
        {x: x for x in quo_small.objects()},
        fmor,
    ).validate()
