"""Shared fixture corpus.

Anchors used throughout the tests and the CLI examples: the walking arrow
A, the square E = A x A, the principal filter at (0|1), the finite-sets
probe PSet on {S0..S3}, a family of distributive lattices (the
preservation corpus), and assorted negative fixtures. The corpus choice is
this artifact's; everything here is desk scale by design.
"""

from .core import FinCategory, Functor, product_category
from .probe import SetProbe, canonical_set


def walking_arrow():
    return FinCategory.build("A", ["0", "1"], [("f", "0", "1")], [])


def square():
    """E = A x A, the four-element Boolean lattice as a category."""
    return product_category(walking_arrow(), walking_arrow(), name="E")


def poset_category(name, elems, pairs):
    """Poset as a category; `pairs` lists the strict relations x < y
    (reflexive/transitive closure is taken here)."""
    leq = {(x, x) for x in elems}
    leq |= {tuple(p) for p in pairs}
    changed = True
    while changed:
        changed = False
        for x, y in list(leq):
            for y2, z in list(leq):
                if y == y2 and (x, z) not in leq:
                    leq.add((x, z))
                    changed = True
    mors = [(f"{x}_to_{y}", x, y) for x in elems for y in elems if x != y and (x, y) in leq]
    comp = []
    for g, gy, gz in mors:
        for f, fx, fy in mors:
            if fy != gy:
                continue
            comp.append((g, f, f"{fx}_to_{gz}"))
    return FinCategory.build(name, list(elems), mors, comp)


def chain(n, name=None):
    elems = [f"c{i}" for i in range(n)]
    return poset_category(name or f"C{n}", elems, [(elems[i], elems[i + 1]) for i in range(n - 1)])


def chain_product(n, m, name=None):
    elems = [f"p{i}{j}" for i in range(n) for j in range(m)]
    pairs = []
    for i in range(n):
        for j in range(m):
            if i + 1 < n:
                pairs.append((f"p{i}{j}", f"p{i+1}{j}"))
            if j + 1 < m:
                pairs.append((f"p{i}{j}", f"p{i}{j+1}"))
    return poset_category(name or f"C{n}xC{m}", elems, pairs)


def diamond_stem_up():
    """C2^2 with a pendant top: 0 < a,b < m < 1."""
    return poset_category(
        "DiamUp", ["z", "a", "b", "m", "t"], [("z", "a"), ("z", "b"), ("a", "m"), ("b", "m"), ("m", "t")]
    )


def diamond_stem_down():
    """C2^2 with a pendant bottom: 0 < m < a,b < 1."""
    return poset_category(
        "DiamDown", ["z", "m", "a", "b", "t"], [("z", "m"), ("m", "a"), ("m", "b"), ("a", "t"), ("b", "t")]
    )


def diamond_long_stem():
    """C2^2 with a two-step pendant top."""
    return poset_category(
        "DiamUp2",
        ["z", "a", "b", "m", "n", "t"],
        [("z", "a"), ("z", "b"), ("a", "m"), ("b", "m"), ("m", "n"), ("n", "t")],
    )


def m3():
    """The diamond M3: three incomparable atoms (not distributive)."""
    return poset_category(
        "M3", ["z", "a", "b", "c", "t"], [("z", "a"), ("z", "b"), ("z", "c"), ("a", "t"), ("b", "t"), ("c", "t")]
    )


def n5():
    """The pentagon N5 (not distributive, not modular)."""
    return poset_category(
        "N5", ["z", "a", "c", "b", "t"], [("z", "a"), ("a", "c"), ("c", "t"), ("z", "b"), ("b", "t")]
    )


def hexagon():
    return poset_category(
        "Hex", ["z", "a", "b", "c", "d", "t"], [("z", "a"), ("z", "b"), ("a", "c"), ("b", "d"), ("c", "t"), ("d", "t")]
    )


def preservation_corpus():
    """Ten distributive lattices: the quotient-preservation test corpus.

    Distributivity matters: finite-colimit preservation under a filter
    quotient amounts to meets distributing over the joins being preserved,
    so non-distributive lattices (kept separately as negative fixtures)
    are excluded here by design.
    """
    return [
        chain(2),
        chain(3),
        chain(4),
        chain(5),
        chain(6),
        chain_product(2, 2),
        chain_product(2, 3),
        diamond_stem_up(),
        diamond_stem_down(),
        diamond_long_stem(),
    ]


def pset(sizes=(0, 1, 2, 3), probe_bound=200000):
    return SetProbe([canonical_set(n) for n in sizes], name="PSet", probe_bound=probe_bound)


def discrete_two():
    """Two objects, no non-identity morphisms: no products anywhere."""
    return FinCategory.build("Disc2", ["0", "1"], [], [])


def z2_group():
    """Z/2 as a one-object category; its object is not subterminal."""
    return FinCategory.build("Z2", ["g"], [("s", "g", "g")], [("s", "s", "id_g")])


def walking_parallel_pair():
    return FinCategory.build("PPair", ["a", "b"], [("s", "a", "b"), ("t", "a", "b")], [])


def pointed_two():
    """Pointed-sets flavor: a zero object P1 and a two-point object P2.

    The zero map exposes a non-strict initial object.
    """
    return FinCategory.build(
        "Pointed2",
        ["P1", "P2"],
        [("u", "P1", "P2"), ("c", "P2", "P1"), ("e", "P2", "P2")],
        [("c", "u", "id_P1"), ("u", "c", "e"), ("e", "e", "e"), ("c", "e", "c"), ("e", "u", "u")],
    )


def diagonal_functor(cat, prod_cat=None):
    """The diagonal cat -> cat x cat."""
    from .core import pair_id, identity_name

    pc = prod_cat or product_category(cat, cat)
    fobj = {x: pair_id(x, x) for x in cat.objects()}
    fmor = {}
    for f in cat.morphisms():
        if cat.is_identity(f):
            fmor[f] = identity_name(pair_id(cat.src(f), cat.src(f)))
        else:
            fmor[f] = pair_id(f, f)
    return Functor(f"diag[{cat.name}]", cat, pc, fobj, fmor).validate(), pc


def terminal_category():
    return FinCategory.build("One", ["*"], [], [])


def bang_functor(cat, one=None):
    one = one or terminal_category()
    return Functor(
        f"bang[{cat.name}]",
        cat,
        one,
        {x: "*" for x in cat.objects()},
        {f: "id_*" for f in cat.morphisms()},
    ).validate()
