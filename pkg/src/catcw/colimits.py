"""Colimits of presentations and the one-sided homotopy pushout.

Pushouts are computed on presentations: objects are merged by a union-find
over the span's object identifications, generators and relations are copied
with side prefixes (``L.`` for the left leg's target, ``R.`` for the right),
and each generator of the span's source contributes one identification
relation between its two images.  Callers recover names through the returned
injection functors rather than reconstructing prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fpcat import (
    DEFAULT_RULE_BUDGET,
    CatError,
    FpCategory,
    Functor,
    Generator,
    Path,
    build,
    check_functor,
    compose_functors,
    functors_equal,
)


class EmptySet(CatError):
    """chaotic() needs a nonempty object set."""


@dataclass
class CoproductResult:
    apex: FpCategory
    injections: tuple[Functor, ...]


@dataclass
class PushoutResult:
    apex: FpCategory
    inj_left: Functor
    inj_right: Functor
    from_span: tuple[Functor, Functor]

    def verify(self, budget: int = DEFAULT_RULE_BUDGET) -> bool:
        """Re-check that the injections are functors and the square commutes."""
        f, g = self.from_span
        if not check_functor(self.inj_left, budget) or not check_functor(self.inj_right, budget):
            return False
        left = compose_functors(f, self.inj_left)
        right = compose_functors(g, self.inj_right)
        return functors_equal(left, right, budget)


def _prefixed(cat: FpCategory, prefix: str) -> tuple[FpCategory, Functor]:
    """A renamed copy of ``cat`` plus the renaming functor onto it."""

    def po(x: str) -> str:
        return prefix + x

    def pp(p: Path) -> Path:
        return Path(po(p.at), tuple(prefix + g for g in p.gens))

    out = FpCategory(
        _quiver_prefixed(cat, prefix),
        [(pp(l), pp(r)) for l, r in cat.relations],
        {prefix + a: prefix + b for a, b in cat.inverses.items()},
    )
    iso = Functor(
        cat,
        out,
        {x: po(x) for x in cat.objects},
        {g.name: Path(po(g.src), (prefix + g.name,)) for g in cat.quiver.generators},
    )
    return out, iso


def _quiver_prefixed(cat: FpCategory, prefix: str):
    from .fpcat import Quiver

    return Quiver(
        [prefix + x for x in cat.objects],
        [Generator(prefix + g.name, prefix + g.src, prefix + g.dst) for g in cat.quiver.generators],
    )


def coproduct(cats: Sequence[FpCategory]) -> CoproductResult:
    """Disjoint union with numeric prefixes; injections are cofibrations."""
    objects: list[str] = []
    gens: list[Generator] = []
    rels: list = []
    inverses: dict[str, str] = {}
    injections: list[Functor] = []
    pieces: list[tuple[FpCategory, Functor]] = []
    for i, cat in enumerate(cats):
        pieces.append(_prefixed(cat, f"{i}."))
    for piece, _ in pieces:
        objects.extend(piece.objects)
        gens.extend(piece.quiver.generators)
        rels.extend(piece.relations)
        inverses.update(piece.inverses)
    from .fpcat import Quiver

    apex = FpCategory(Quiver(objects, gens), rels, inverses)
    for cat, (piece, ren) in zip(cats, pieces):
        injections.append(Functor(cat, apex, dict(ren.object_map), dict(ren.gen_map)))
    return CoproductResult(apex, tuple(injections))


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def pushout(f: Functor, g: Functor) -> PushoutResult:
    """Pushout of the span B <-f- A -g-> C in presentations.

    ``inj_left`` embeds f's target, ``inj_right`` embeds g's target.
    """
    if f.source != g.source:
        raise CatError("span legs must share their source")
    if not (f.source_is_fp and f.target_is_fp and g.target_is_fp):
        raise CatError("pushout works on presentations; convert finite inputs first")
    A, B, C = f.source, f.target, g.target
    b_objs = ["L." + x for x in B.objects]
    c_objs = ["R." + x for x in C.objects]
    uf = _UnionFind(b_objs + c_objs)
    for a in A.objects:
        uf.union("L." + f.apply_obj(a), "R." + g.apply_obj(a))

    # representative = earliest member in B-then-C declaration order
    order = {name: i for i, name in enumerate(b_objs + c_objs)}
    rep_of_class: dict[str, str] = {}
    for name in b_objs + c_objs:
        root = uf.find(name)
        cur = rep_of_class.get(root)
        if cur is None or order[name] < order[cur]:
            rep_of_class[root] = name

    def rep(name: str) -> str:
        return rep_of_class[uf.find(name)]

    objects: list[str] = []
    seen = set()
    for name in b_objs + c_objs:
        r = rep(name)
        if r not in seen:
            seen.add(r)
            objects.append(r)

    gens: list[Generator] = []
    for G in B.quiver.generators:
        gens.append(Generator("L." + G.name, rep("L." + G.src), rep("L." + G.dst)))
    for G in C.quiver.generators:
        gens.append(Generator("R." + G.name, rep("R." + G.src), rep("R." + G.dst)))

    def map_path(p: Path, side: str) -> Path:
        return Path(rep(side + p.at), tuple(side + n for n in p.gens))

    rels: list = []
    for l, r in B.relations:
        rels.append((map_path(l, "L."), map_path(r, "L.")))
    for l, r in C.relations:
        rels.append((map_path(l, "R."), map_path(r, "R.")))
    for a in A.quiver.generators:
        li = map_path(f.gen_map[a.name], "L.")
        ri = map_path(g.gen_map[a.name], "R.")
        if li != ri:
            rels.append((li, ri))

    inverses = {("L." + k): ("L." + v) for k, v in B.inverses.items()}
    inverses.update({("R." + k): ("R." + v) for k, v in C.inverses.items()})

    from .fpcat import Quiver

    apex = FpCategory(Quiver(objects, gens), rels, inverses)
    inj_left = Functor(
        B,
        apex,
        {x: rep("L." + x) for x in B.objects},
        {G.name: Path(rep("L." + G.src), ("L." + G.name,)) for G in B.quiver.generators},
    )
    inj_right = Functor(
        C,
        apex,
        {x: rep("R." + x) for x in C.objects},
        {G.name: Path(rep("R." + G.src), ("R." + G.name,)) for G in C.quiver.generators},
    )
    return PushoutResult(apex, inj_left, inj_right, (f, g))


def chaotic(names: Sequence[str]) -> FpCategory:
    """The chaotic category: one morphism between every ordered pair of objects.

    Generators ``x>y`` for distinct objects; every composable pair collapses
    to the direct generator (or the identity), and every generator is
    invertible with mate the reversed generator.
    """
    names = list(names)
    if not names:
        raise EmptySet("chaotic category needs at least one object")
    gens: list[tuple[str, str, str]] = []
    for x in names:
        for y in names:
            if x != y:
                gens.append((f"{x}>{y}", x, y))
    rels: list = []
    for g1 in gens:
        for g2 in gens:
            if g1[2] != g2[1]:
                continue
            x, z = g1[1], g2[2]
            lhs = Path(x, (g1[0], g2[0]))
            rhs = Path(x) if x == z else Path(x, (f"{x}>{z}",))
            rels.append((lhs, rhs))
    return build(names, gens, rels, invertible=[g[0] for g in gens])


def cofibrant_replacement(g: Functor) -> tuple[Functor, Functor]:
    """Factor ``g: X -> Y`` as a cofibration into a cylinder followed by a
    collapse that is an equivalence surjective on objects.

    Returns ``(incl, proj)`` with ``proj . incl = g`` (on generators).  When
    Y is discrete the cylinder is the fiberwise chaotic category (empty
    fibers keep the bare point); otherwise it is the mapping cylinder of Y
    and X joined by invertible connecting generators with naturality
    relations.
    """
    X, Y = g.source, g.target
    if not Y.quiver.generators:
        fibers: dict[str, list[str]] = {y: [] for y in Y.objects}
        for x in X.objects:
            fibers[g.apply_obj(x)].append(x)
        objects: list[str] = []
        gens: list[tuple[str, str, str]] = []
        rels: list = []
        invertible: list[str] = []
        obj_img: dict[str, str] = {}
        proj_obj: dict[str, str] = {}
        for y in Y.objects:
            fib = fibers[y]
            if not fib:
                objects.append("L." + y)
                proj_obj["L." + y] = y
                continue
            part = chaotic(["R." + x for x in fib])
            objects.extend(part.objects)
            for G in part.quiver.generators:
                gens.append((G.name, G.src, G.dst))
                invertible.append(G.name)
            rels.extend(part.relations)
            for x in fib:
                obj_img[x] = "R." + x
                proj_obj["R." + x] = y
        cyl = build(objects, gens, rels, invertible=invertible)
        gen_img: dict[str, Path] = {}
        for G in X.quiver.generators:
            a, b = obj_img[G.src], obj_img[G.dst]
            gen_img[G.name] = Path(a) if a == b else Path(a, (f"{a}>{b}",))
        incl = Functor(X, cyl, obj_img, gen_img)
        proj = Functor(
            cyl,
            Y,
            proj_obj,
            {G.name: Path(proj_obj[G.src]) for G in cyl.quiver.generators},
        )
        return incl, proj

    yc, y_ren = _prefixed(Y, "L.")
    xc, x_ren = _prefixed(X, "R.")
    objects = list(yc.objects) + list(xc.objects)
    gens = [(G.name, G.src, G.dst) for G in yc.quiver.generators]
    gens += [(G.name, G.src, G.dst) for G in xc.quiver.generators]
    rels = list(yc.relations) + list(xc.relations)
    invertible = [k for k in yc.inverses] + [k for k in xc.inverses]
    conn: dict[str, str] = {}
    for x in X.objects:
        name = f"e.{x}"
        conn[x] = name
        gens.append((name, "R." + x, "L." + g.apply_obj(x)))
        invertible.append(name)
    for G in X.quiver.generators:
        img = g.gen_map[G.name]
        lhs = Path("R." + G.src, ("R." + G.name, conn[G.dst]))
        rhs = Path("R." + G.src, (conn[G.src],) + tuple("L." + n for n in img.gens))
        rels.append((lhs, rhs))
    cyl = build(objects, gens, rels, invertible=invertible)
    incl = Functor(
        X,
        cyl,
        {x: "R." + x for x in X.objects},
        {G.name: Path("R." + G.src, ("R." + G.name,)) for G in X.quiver.generators},
    )
    proj_gen: dict[str, Path] = {}
    for G in Y.quiver.generators:
        proj_gen["L." + G.name] = Path(G.src, (G.name,))
    for G in X.quiver.generators:
        proj_gen["R." + G.name] = g.gen_map[G.name]
    for x in X.objects:
        proj_gen[conn[x]] = Path(g.apply_obj(x))
        mate = cyl.inverses[conn[x]]
        proj_gen[mate] = Path(g.apply_obj(x))
    proj_obj = {("L." + y): y for y in Y.objects}
    proj_obj.update({("R." + x): g.apply_obj(x) for x in X.objects})
    proj = Functor(cyl, Y, proj_obj, proj_gen)
    return incl, proj


def one_sided_homotopy_pushout(f: Functor, g: Functor) -> PushoutResult:
    """Pushout of f along a cofibrant replacement of g.

    The right leg is replaced by the cylinder inclusion from
    ``cofibrant_replacement``, so the result computes the homotopy pushout
    whenever f's side needs no replacement.
    """
    incl, _proj = cofibrant_replacement(g)
    return pushout(f, incl)
