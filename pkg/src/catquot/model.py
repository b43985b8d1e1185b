"""Model structures as explicit class triples, verified by enumeration.

Lifting problems, weak factorization systems and the model axioms are all
decided by exhaustive search; per-category tables (lifting matrix,
factorization pairs, composition triples, retract pairs) are precomputed
once and the class checks run on bitmasks, which keeps the enumerator and
the quotient re-checks fast enough for the corpus.

The enumerator exploits a standard fact: in a model structure
(F, C, W), the weak equivalences are exactly the composites r . l with
l a trivial cofibration and r a trivial fibration, so every model
structure arises from an ordered pair of weak factorization systems. The
definitional brute force over raw class triples is deliberately NOT here:
it lives in the test suite as the independent oracle the enumerator is
measured against.
"""

from dataclasses import dataclass

from .config import Budget
from .core import classify_morphism
from .errors import (
    FLCRequired,
    NotFibrant,
    NotStable,
    PreservationFailure,
)
from .limits import has_finite_colimits, has_finite_limits, pullback, terminal_object
from .quotient import filter_quotient, projection_functor, transfer_class
from .report import Report, Verdict
from .structure import Pullbacks, pullback_functor, right_adjoint
from .errors import NoAdjoint, NoProducts


def resolve_class(cat, spec):
    """A morphism class from a name, an iterable, or a predicate."""
    if isinstance(spec, str):
        if spec == "all":
            return frozenset(cat.morphisms())
        if spec == "isos":
            return frozenset(f for f in cat.morphisms() if classify_morphism(cat, f)["iso"])
        if spec == "monos":
            return frozenset(f for f in cat.morphisms() if classify_morphism(cat, f)["mono"])
        if spec == "epis":
            return frozenset(f for f in cat.morphisms() if classify_morphism(cat, f)["epi"])
        if spec == "identities":
            return frozenset(cat.identities.values())
        raise ValueError(f"unknown class spec {spec!r}")
    if callable(spec):
        values = getattr(cat, "mor_value", None)
        return frozenset(
            f for f in cat.morphisms() if spec(values[f] if values else f)
        )
    return frozenset(spec)


class ModelData:
    """A class triple on a category, with per-axiom verification status."""

    def __init__(self, cat, fib, cof, weq):
        self.cat = cat
        self.fib = resolve_class(cat, fib)
        self.cof = resolve_class(cat, cof)
        self.weq = resolve_class(cat, weq)
        self.verified = {}

    def classes(self):
        return self.fib, self.cof, self.weq

    def __repr__(self):
        return (
            f"ModelData({self.cat.name}: |F|={len(self.fib)}, |C|={len(self.cof)}, "
            f"|W|={len(self.weq)})"
        )


def _tables(cat):
    """Per-category combinatorial tables, cached on the category object."""
    got = getattr(cat, "_model_tables", None)
    if got is not None:
        return got
    mors = list(cat.morphisms())
    index = {f: i for i, f in enumerate(mors)}
    n = len(mors)

    lift_right = [0] * n  # lift_right[i]: mask of p such that i has LLP against p
    lift_left = [0] * n  # lift_left[p]: mask of i lifting against p
    for i_name in mors:
        for p_name in mors:
            if _has_lifting_raw(cat, i_name, p_name)[0]:
                lift_right[index[i_name]] |= 1 << index[p_name]
                lift_left[index[p_name]] |= 1 << index[i_name]

    fact = [[] for _ in range(n)]
    for f in mors:
        fi = index[f]
        for m in cat.objects():
            for l in cat.hom(cat.src(f), m):
                for r in cat.hom(m, cat.tgt(f)):
                    if cat.compose(r, l) == f:
                        fact[fi].append((index[l], index[r]))

    comp_triples = []
    for g, f in cat.composable_pairs():
        comp_triples.append((index[f], index[g], index[cat.compose(g, f)]))

    retract_pairs = _retract_pairs(cat, mors, index)
    isos_mask = 0
    for f in mors:
        if classify_morphism(cat, f)["iso"]:
            isos_mask |= 1 << index[f]
    tables = {
        "mors": mors,
        "index": index,
        "n": n,
        "lift_right": lift_right,
        "lift_left": lift_left,
        "fact": fact,
        "comp_triples": comp_triples,
        "retract_pairs": retract_pairs,
        "isos_mask": isos_mask,
    }
    cat._model_tables = tables
    return tables


def _retract_pairs(cat, mors, index):
    """(f, g) with f a retract of g in the arrow category."""
    pairs = []
    for f in mors:
        for g in mors:
            if _is_retract(cat, f, g):
                pairs.append((index[f], index[g]))
    return pairs


def _is_retract(cat, f, g):
    fx, fy = cat.src(f), cat.tgt(f)
    gx, gy = cat.src(g), cat.tgt(g)
    for i in cat.hom(fx, gx):
        for r in cat.hom(gx, fx):
            if cat.compose(r, i) != cat.identity(fx):
                continue
            for j in cat.hom(fy, gy):
                if cat.compose(g, i) != cat.compose(j, f):
                    continue
                for s in cat.hom(gy, fy):
                    if cat.compose(s, j) != cat.identity(fy):
                        continue
                    if cat.compose(f, r) == cat.compose(s, g):
                        return True
    return False


def _has_lifting_raw(cat, i, p):
    """(True, fillers) or (False, witness square (u, v))."""
    a, b = cat.src(i), cat.tgt(i)
    x, y = cat.src(p), cat.tgt(p)
    for u in cat.hom(a, x):
        for v in cat.hom(b, y):
            if cat.compose(p, u) != cat.compose(v, i):
                continue
            fillers = [
                d
                for d in cat.hom(b, x)
                if cat.compose(d, i) == u and cat.compose(p, d) == v
            ]
            if not fillers:
                return False, (u, v)
    return True, None


def has_lifting(cat, i, p):
    """True with a filler for every square, or False with a counterexample
    square (u, v) that admits no diagonal."""
    ok, witness = _has_lifting_raw(cat, i, p)
    if ok:
        return True, None
    return False, witness


def _mask(tables, names):
    m = 0
    for f in names:
        m |= 1 << tables["index"][f]
    return m


def _unmask(tables, mask):
    return frozenset(f for f in tables["mors"] if mask >> tables["index"][f] & 1)


def _llp_mask(tables, r_mask):
    out = 0
    for i in range(tables["n"]):
        if r_mask & ~tables["lift_right"][i] == 0:
            out |= 1 << i
    return out


def _rlp_mask(tables, l_mask):
    out = 0
    for p in range(tables["n"]):
        if l_mask & ~tables["lift_left"][p] == 0:
            out |= 1 << p
    return out


def check_wfs(cat, left, right):
    """Weak factorization system check: factorization through some middle
    object, the two lifting characterizations, and retract closure."""
    tables = _tables(cat)
    lm, rm = _mask(tables, left), _mask(tables, right)
    report = Report(f"wfs:{cat.name}")
    for fi in range(tables["n"]):
        if not any(lm >> l & 1 and rm >> r & 1 for l, r in tables["fact"][fi]):
            report.fail("Factorization", tables["mors"][fi])
    llp = _llp_mask(tables, rm)
    if llp != lm:
        diff = _unmask(tables, llp ^ lm)
        report.fail("LeftClassNotLLP", ",".join(sorted(diff)))
    rlp = _rlp_mask(tables, lm)
    if rlp != rm:
        diff = _unmask(tables, rlp ^ rm)
        report.fail("RightClassNotRLP", ",".join(sorted(diff)))
    for f, g in tables["retract_pairs"]:
        if lm >> g & 1 and not lm >> f & 1:
            report.fail("LeftNotRetractClosed", tables["mors"][f])
        if rm >> g & 1 and not rm >> f & 1:
            report.fail("RightNotRetractClosed", tables["mors"][f])
    return report


def _class_sane(tables, mask, name, report):
    if tables["isos_mask"] & ~mask:
        missing = _unmask(tables, tables["isos_mask"] & ~mask)
        report.fail(f"{name}MissingIso", ",".join(sorted(missing)))
    for f, g, h in tables["comp_triples"]:
        if mask >> f & 1 and mask >> g & 1 and not mask >> h & 1:
            report.fail(f"{name}NotCompositionClosed", tables["mors"][h])
            return


def two_of_three(cat, weq):
    """Does W satisfy 2-of-3? Verdict with the witnessing triple."""
    tables = _tables(cat)
    wm = _mask(tables, weq)
    for f, g, h in tables["comp_triples"]:
        bits = (wm >> f & 1) + (wm >> g & 1) + (wm >> h & 1)
        if bits == 2:
            return Verdict(False, witness=(tables["mors"][f], tables["mors"][g], tables["mors"][h]))
    return Verdict(True)


def _require_flc(cat):
    got = getattr(cat, "_flc_verdict", None)
    if got is None:
        if getattr(cat, "flc_assumed", False):
            # the intensional object language is bicomplete even when the
            # probe snapshot is not closed under the constructions; filter
            # quotients inherit the status from their base
            got = True
        else:
            got = bool(has_finite_limits(cat)) and bool(has_finite_colimits(cat))
        cat._flc_verdict = got
    return got


def check_model_structure(model_or_cat, fib=None, cof=None, weq=None):
    """Per-axiom verdicts for a class triple: class sanity, both weak
    factorization systems, and 2-of-3. Requires finite (co)completeness."""
    if isinstance(model_or_cat, ModelData):
        model = model_or_cat
    else:
        model = ModelData(model_or_cat, fib, cof, weq)
    cat = model.cat
    if not _require_flc(cat):
        raise FLCRequired(f"{cat.name} is not finitely (co)complete")
    tables = _tables(cat)
    report = Report(f"model:{cat.name}")
    for mask_name, cls in (("fib", model.fib), ("cof", model.cof), ("weq", model.weq)):
        _class_sane(tables, _mask(tables, cls), mask_name, report)
    wfs1 = check_wfs(cat, model.cof & model.weq, model.fib)
    if not wfs1.ok:
        for clause, witness in wfs1.failures:
            report.fail(f"WFS(CofW,F):{clause}", witness)
    wfs2 = check_wfs(cat, model.cof, model.fib & model.weq)
    if not wfs2.ok:
        for clause, witness in wfs2.failures:
            report.fail(f"WFS(Cof,FW):{clause}", witness)
    tot = two_of_three(cat, model.weq)
    if not tot:
        report.fail("TwoOfThree", tot.witness)
    model.verified["axioms"] = report.ok
    return report


@dataclass
class ModelFilterCertificate:
    filt: object
    fibrancy: dict  # U -> the fibration U -> 1
    stability: list  # (class name, f, U, f x U)

    @property
    def ok(self):
        return True


def check_model_filter(model, filt, quo_build=None):
    """Certificate that the filter is a model filter: every element is
    fibrant and cofibrations and weak equivalences are product stable."""
    cat = model.cat
    one = terminal_object(cat)
    if one is None:
        raise NotFibrant("no terminal object")
    from .quotient import QuotientBuild

    build = quo_build or QuotientBuild(cat, filt)
    fibrancy = {}
    for u in filt:
        bang = cat.hom(u, one)[0]
        if bang not in model.fib:
            raise NotFibrant(str(u))
        fibrancy[u] = bang
    stability = []
    for cls_name, cls in (("cof", model.cof), ("weq", model.weq)):
        for f in sorted(cls):
            for u in filt:
                fu = build.times(f, u)
                if fu not in cls:
                    raise NotStable(f"({f},{u})")
                stability.append((cls_name, f, u, fu))
    return ModelFilterCertificate(filt, fibrancy, stability)


def quotient_model_structure(model, filt, quo=None, proj=None):
    """Transfer (F, C, W) along the projection and re-verify everything.

    The transfer theorem guarantees the quotient carries the transferred
    model structure, so any re-verification failure is raised as a hard
    error (bug detector), never reported as a negative result.
    """
    cat = model.cat
    quo = quo if quo is not None else filter_quotient(cat, filt)
    proj = proj if proj is not None else projection_functor(cat, filt, quo)
    check_model_filter(model, filt, quo.build)
    axioms = check_model_structure(model)
    if not axioms.ok:
        raise PreservationFailure(f"input is not a model structure: {axioms}")
    fib_t = transfer_class(model.fib, filt, quo)
    cof_t = transfer_class(model.cof, filt, quo)
    weq_t = transfer_class(model.weq, filt, quo)
    out = ModelData(quo, fib_t.members, cof_t.members, weq_t.members)
    requo = check_model_structure(out)
    if not requo.ok:
        raise PreservationFailure(f"quotient model axioms failed: {requo}")
    for cls, transferred, label in (
        (model.fib, fib_t, "fib"),
        (model.cof, cof_t, "cof"),
        (model.weq, weq_t, "weq"),
    ):
        for f in sorted(cls):
            if proj.on_mor(f) not in transferred:
                raise PreservationFailure(f"P does not preserve {label} at {f}")
    if check_right_properness(model):
        if not check_right_properness(out):
            raise PreservationFailure("right properness not preserved")
    out.verified["transfer"] = True
    return out


def check_right_properness(model):
    """Pullbacks of weak equivalences along fibrations stay weak
    equivalences; witness cospan on failure."""
    cat = model.cat
    for w in sorted(model.weq):
        for p in sorted(model.fib):
            if cat.tgt(w) != cat.tgt(p):
                continue
            got = pullback(cat, w, p)
            if got is None:
                continue
            apex, to_w_src, to_p_src = got
            if to_p_src not in model.weq:
                return Verdict(False, witness=(w, p))
    return Verdict(True)


def check_cim(model):
    """Cofibrations include the monomorphisms."""
    cat = model.cat
    for m in cat.morphisms():
        if classify_morphism(cat, m)["mono"] and m not in model.cof:
            return Verdict(False, witness=m)
    return Verdict(True)


def check_cem(model):
    """Cofibrations equal the monomorphisms."""
    cim = check_cim(model)
    if not cim:
        return cim
    cat = model.cat
    for m in sorted(model.cof):
        if not classify_morphism(cat, m)["mono"]:
            return Verdict(False, witness=m)
    return Verdict(True)


def check_tcp(model):
    """Trivial cofibrations closed under pullback along fibrations."""
    cat = model.cat
    triv_cof = model.cof & model.weq
    for i in sorted(triv_cof):
        for p in sorted(model.fib):
            if cat.tgt(i) != cat.tgt(p):
                continue
            got = pullback(cat, i, p)
            if got is None:
                continue
            apex, _, to_p_src = got
            if to_p_src not in triv_cof:
                return Verdict(False, witness=(i, p))
    return Verdict(True)


def check_cl(model):
    """Cofibrations stable under the finite limits that exist, checked on
    binary products of parallel cofibration pairs (the finite fixture
    diagrams) in the arrow category."""
    cat = model.cat
    from .limits import Products, binary_product

    prods = Products(cat)
    cofs = sorted(model.cof)
    for f in cofs:
        for g in cofs:
            try:
                sx = prods.get(cat.src(f), cat.src(g))
                tx = prods.get(cat.tgt(f), cat.tgt(g))
            except NoProducts:
                continue
            fg = prods.pair(
                cat.compose(f, sx[1]),
                cat.compose(g, sx[2]),
            )
            if fg not in model.cof:
                return Verdict(False, witness=(f, g))
    return Verdict(True)


def check_fe(model):
    """Fibrations are exponentiable: the pullback functor along each
    fibration admits a right adjoint."""
    cat = model.cat
    pbs = Pullbacks(cat)
    for p in sorted(model.fib):
        if cat.is_identity(p):
            continue
        try:
            pf = pullback_functor(cat, p, pbs)
            right_adjoint(pf)
        except (NoAdjoint, NoProducts):
            return Verdict(False, witness=p)
    return Verdict(True)


def enumerate_model_structures(cat, budget=None):
    """Every model structure on the category, deterministically ordered.

    Strategy: enumerate weak factorization systems by a fixpoint scan over
    right classes (classes always contain the isos, so only non-iso
    membership varies), then assemble triples using W = {r . l} over pairs
    of WFSs and verify each candidate in full before emitting it.
    """
    budget = budget or Budget()
    if not _require_flc(cat):
        raise FLCRequired(f"{cat.name} is not finitely (co)complete")
    tables = _tables(cat)
    n = tables["n"]
    isos_mask = tables["isos_mask"]
    noniso = [i for i in range(n) if not isos_mask >> i & 1]
    wfs_list = []
    for bits in range(1 << len(noniso)):
        budget.charge()
        r_mask = isos_mask
        for k, i in enumerate(noniso):
            if bits >> k & 1:
                r_mask |= 1 << i
        l_mask = _llp_mask(tables, r_mask)
        if _rlp_mask(tables, l_mask) != r_mask:
            continue
        ok = all(
            any(l_mask >> l & 1 and r_mask >> r & 1 for l, r in tables["fact"][fi])
            for fi in range(n)
        )
        if ok:
            wfs_list.append((l_mask, r_mask))
    out = []
    seen = set()
    for a_mask, f_mask in wfs_list:  # (C cap W, F)
        for c_mask, b_mask in wfs_list:  # (C, F cap W)
            budget.charge()
            w_mask = 0
            for fi, gi, hi in tables["comp_triples"]:
                if a_mask >> fi & 1 and b_mask >> gi & 1:
                    w_mask |= 1 << hi
            if c_mask & w_mask != a_mask or f_mask & w_mask != b_mask:
                continue
            triple = (f_mask, c_mask, w_mask)
            if triple in seen:
                continue
            seen.add(triple)
            model = ModelData(
                cat,
                _unmask(tables, f_mask),
                _unmask(tables, c_mask),
                _unmask(tables, w_mask),
            )
            if check_model_structure(model).ok:
                out.append(model)
    return out
