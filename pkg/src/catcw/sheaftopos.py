"""Categories internal to sheaves on finite topological spaces.

Only constant presheaves are sheafified here: the sheafification of the
constant presheaf at a finite category A assigns to each open U the product
category A^{components(U)} (locally constant sections), with restrictions
induced by refinement of connected components.  That is enough to state and
check the unit isomorphism over connected spaces, to exhibit an exotic
attaching map over the discrete two-point space, and to recognize the sheaf
avatars of CW objects as the constant-groupoid sheaves.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .fpcat import (
    CatError,
    FiniteCategory,
    Functor,
    check_functor,
)
from .model_structure import (
    DEFAULT_PRODUCT_BOUND,
    _as_finite_functor,
    _fp_view,
    all_functors,
    find_isomorphism,
    groupoid_witness,
    is_groupoid,
)

Open = frozenset


class NotAnOpen(CatError):
    pass


class NotConnected(CatError):
    pass


def _open_key(u: Open) -> tuple:
    return (len(u), tuple(sorted(u)))


class FiniteSpace:
    """A finite set of points with an explicitly listed topology."""

    def __init__(self, points: Sequence[str], opens: Iterable[Iterable[str]]):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise CatError("duplicate point names")
        pset = frozenset(self.points)
        collected = {frozenset(u) for u in opens}
        for u in collected:
            if not u <= pset:
                raise NotAnOpen(f"open {sorted(u)} contains unknown points")
        if frozenset() not in collected or pset not in collected:
            raise CatError("topology must contain the empty set and the full set")
        for u in collected:
            for v in collected:
                if u | v not in collected or u & v not in collected:
                    raise CatError(
                        f"opens not closed under union/intersection: "
                        f"{sorted(u)}, {sorted(v)}"
                    )
        self.opens: tuple[Open, ...] = tuple(sorted(collected, key=_open_key))
        self._open_set = collected

    @property
    def full(self) -> Open:
        return frozenset(self.points)

    def is_open(self, u: Iterable[str]) -> bool:
        return frozenset(u) in self._open_set

    def min_open(self, x: str) -> Open:
        """The smallest open containing x (finite spaces always have one)."""
        if x not in self.points:
            raise CatError(f"unknown point {x!r}")
        out = self.full
        for u in self.opens:
            if x in u:
                out = out & u
        return out

    def to_json_obj(self) -> dict:
        return {
            "points": list(self.points),
            "opens": [sorted(u) for u in self.opens],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        return f"FiniteSpace({len(self.points)} points, {len(self.opens)} opens)"


def space_from_json(doc: Union[str, Mapping]) -> FiniteSpace:
    obj = json.loads(doc) if isinstance(doc, str) else doc
    return FiniteSpace(obj["points"], obj["opens"])


def sierpinski() -> FiniteSpace:
    return FiniteSpace(["u", "v"], [[], ["u"], ["u", "v"]])


def discrete_two_point() -> FiniteSpace:
    return FiniteSpace(["u", "v"], [[], ["u"], ["v"], ["u", "v"]])


def pseudocircle_base() -> FiniteSpace:
    """A 3-point connected non-trivial space: two open points under a join."""
    return FiniteSpace(
        ["a", "b", "c"], [[], ["a"], ["b"], ["a", "b"], ["a", "b", "c"]]
    )


def connected_components(space: FiniteSpace, u: Iterable[str]) -> tuple[tuple[str, ...], ...]:
    """Components of the open subspace, via the specialization preorder.

    Two points are linked when one lies in the minimal open of the other;
    components are the transitive closure classes.  Minimal opens inside an
    open subspace agree with those of the whole space.
    """
    uset = frozenset(u)
    if not space.is_open(uset):
        raise NotAnOpen(f"{sorted(uset)} is not an open")
    pts = sorted(uset)
    parent = {x: x for x in pts}

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in pts:
        for y in space.min_open(x):
            rx, ry = root(x), root(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    buckets: dict[str, list[str]] = {}
    for x in pts:
        buckets.setdefault(root(x), []).append(x)
    return tuple(tuple(sorted(v)) for _, v in sorted(buckets.items()))


def is_connected(space: FiniteSpace) -> bool:
    return len(connected_components(space, space.full)) == 1


# ---------------------------------------------------------------------------
# Product categories with tuple metadata


@dataclass
class ProductMeta:
    """Bookkeeping for A^k: tuple coordinates of every object and morphism."""

    comps: tuple[tuple[str, ...], ...]
    obj_name: dict[tuple, str]
    obj_tuple: dict[str, tuple]
    mor_ix: dict[tuple, int]
    mor_tuple: tuple[tuple, ...]


def _tuple_name(parts: tuple) -> str:
    return "(" + ",".join(parts) + ")"


def product_category(
    base: FiniteCategory, comps: tuple[tuple[str, ...], ...]
) -> tuple[FiniteCategory, ProductMeta]:
    """The product of one copy of ``base`` per connected component."""
    k = len(comps)
    obj_tuples = list(itertools.product(base.objects, repeat=k))
    mor_tuples = list(itertools.product(range(base.n), repeat=k))
    obj_name = {t: _tuple_name(t) for t in obj_tuples}
    objects = [obj_name[t] for t in obj_tuples]
    mor_ix = {t: i for i, t in enumerate(mor_tuples)}
    mor_src = [
        obj_name[tuple(base.mor_src[m] for m in t)] for t in mor_tuples
    ]
    mor_dst = [
        obj_name[tuple(base.mor_dst[m] for m in t)] for t in mor_tuples
    ]
    labels = [_tuple_name(tuple(base.labels[m] for m in t)) for t in mor_tuples]
    compose = {}
    for i, ft in enumerate(mor_tuples):
        for j, gt in enumerate(mor_tuples):
            if all(base.mor_dst[f] == base.mor_src[g] for f, g in zip(ft, gt)):
                compose[(i, j)] = mor_ix[
                    tuple(base.compose_table[(f, g)] for f, g in zip(ft, gt))
                ]
    identities = {
        obj_name[t]: mor_ix[tuple(base.identities[x] for x in t)]
        for t in obj_tuples
    }
    cat = FiniteCategory(objects, mor_src, mor_dst, compose, identities, labels)
    meta = ProductMeta(
        comps,
        obj_name,
        {v: key for key, v in obj_name.items()},
        mor_ix,
        tuple(mor_tuples),
    )
    return cat, meta


def _same_finite_functor(f: Functor, g: Functor) -> bool:
    if f.object_map != g.object_map:
        return False
    return all(f.apply_mor(i) == g.apply_mor(i) for i in range(f.source.n))


# ---------------------------------------------------------------------------
# Presheaves and sheaves


class CatPresheaf:
    """An open-indexed family of finite categories with restriction functors.

    ``values`` is keyed by frozensets of points; ``restrictions`` holds a
    functor value(U) -> value(V) for every inclusion V ⊆ U of opens.
    """

    def __init__(
        self,
        space: FiniteSpace,
        values: Mapping[Open, FiniteCategory],
        restrictions: Mapping[tuple[Open, Open], Functor],
    ):
        self.space = space
        self.values = dict(values)
        self.restrictions = dict(restrictions)
        for u in space.opens:
            if u not in self.values:
                raise CatError(f"no value assigned to open {sorted(u)}")

    def value(self, u: Iterable[str]) -> FiniteCategory:
        key = frozenset(u)
        if key not in self.values:
            raise NotAnOpen(f"{sorted(key)} is not an open")
        return self.values[key]

    def restriction(self, u: Iterable[str], v: Iterable[str]) -> Functor:
        key = (frozenset(u), frozenset(v))
        if key not in self.restrictions:
            raise NotAnOpen(f"no restriction for {sorted(key[0])} -> {sorted(key[1])}")
        return self.restrictions[key]

    def validate(self) -> bool:
        """Identity and composition laws for the restriction functors."""
        opens = self.space.opens
        for u in opens:
            r = self.restriction(u, u)
            ident = Functor(
                self.values[u],
                self.values[u],
                {x: x for x in self.values[u].objects},
                {i: i for i in range(self.values[u].n) if not self.values[u].is_identity(i)},
            )
            if not _same_finite_functor(r, ident):
                raise CatError(f"restriction along identity of {sorted(u)} not identity")
        for u in opens:
            for v in opens:
                if not v <= u:
                    continue
                if not check_functor(self.restriction(u, v)):
                    raise CatError(f"restriction {sorted(u)} -> {sorted(v)} not a functor")
                for w in opens:
                    if not w <= v:
                        continue
                    ruv, rvw, ruw = (
                        self.restriction(u, v),
                        self.restriction(v, w),
                        self.restriction(u, w),
                    )
                    for x in self.values[u].objects:
                        if rvw.apply_obj(ruv.apply_obj(x)) != ruw.apply_obj(x):
                            raise CatError(
                                f"restrictions do not compose on objects: "
                                f"{sorted(u)} -> {sorted(v)} -> {sorted(w)}"
                            )
                    for i in range(self.values[u].n):
                        if rvw.apply_mor(ruv.apply_mor(i)) != ruw.apply_mor(i):
                            raise CatError(
                                f"restrictions do not compose on morphisms: "
                                f"{sorted(u)} -> {sorted(v)} -> {sorted(w)}"
                            )
        return True


def _covers_of(space: FiniteSpace, u: Open) -> list[tuple[Open, ...]]:
    members = [v for v in space.opens if v <= u]
    out = []
    for r in range(len(members) + 1):
        for combo in itertools.combinations(members, r):
            acc: frozenset = frozenset()
            for v in combo:
                acc = acc | v
            if acc == u:
                out.append(combo)
    return out


def check_gluing(F: CatPresheaf) -> tuple[bool, object]:
    """Exhaustive equalizer check over every cover of every open.

    For each cover {V_i} of U the canonical map from F(U) into compatible
    families must be a bijection, on objects and on morphisms.
    """
    for u in F.space.opens:
        cu = F.values[u]
        for cover in _covers_of(F.space, u):
            # objects
            fams = set()
            for combo in itertools.product(*(F.values[v].objects for v in cover)):
                ok = True
                for (v1, a1), (v2, a2) in itertools.combinations(zip(cover, combo), 2):
                    w = v1 & v2
                    if F.restriction(v1, w).apply_obj(a1) != F.restriction(
                        v2, w
                    ).apply_obj(a2):
                        ok = False
                        break
                if ok:
                    fams.add(combo)
            images = {
                tuple(F.restriction(u, v).apply_obj(a) for v in cover): a
                for a in cu.objects
            }
            if len(images) != len(cu.objects) or set(images) != fams:
                return False, ("objects", sorted(u), [sorted(v) for v in cover])
            # morphisms
            mfams = set()
            for combo in itertools.product(*(range(F.values[v].n) for v in cover)):
                ok = True
                for (v1, m1), (v2, m2) in itertools.combinations(zip(cover, combo), 2):
                    w = v1 & v2
                    if F.restriction(v1, w).apply_mor(m1) != F.restriction(
                        v2, w
                    ).apply_mor(m2):
                        ok = False
                        break
                if ok:
                    mfams.add(combo)
            mimages = {
                tuple(F.restriction(u, v).apply_mor(m) for v in cover): m
                for m in range(cu.n)
            }
            if len(mimages) != cu.n or set(mimages) != mfams:
                return False, ("morphisms", sorted(u), [sorted(v) for v in cover])
    return True, None


class CatSheaf(CatPresheaf):
    """A presheaf together with its verified gluing verdict."""

    def __init__(self, space, values, restrictions, base: FiniteCategory | None = None,
                 meta: Mapping[Open, ProductMeta] | None = None):
        super().__init__(space, values, restrictions)
        self.base = base
        self.meta = dict(meta) if meta else None
        self.gluing_ok, self.gluing_witness = check_gluing(self)


@dataclass
class SheafMap:
    """Per-open functors commuting with the restriction functors."""

    source: CatPresheaf
    target: CatPresheaf
    components: dict[Open, Functor]

    def component(self, u: Iterable[str]) -> Functor:
        return self.components[frozenset(u)]

    def validate(self) -> bool:
        space = self.source.space
        for u in space.opens:
            comp = self.components[u]
            if not check_functor(comp):
                raise CatError(f"component at {sorted(u)} is not a functor")
            for v in space.opens:
                if not v <= u:
                    continue
                rs, rt = self.source.restriction(u, v), self.target.restriction(u, v)
                cv = self.components[v]
                for x in self.source.values[u].objects:
                    if rt.apply_obj(comp.apply_obj(x)) != cv.apply_obj(rs.apply_obj(x)):
                        raise CatError(
                            f"naturality fails on objects at {sorted(u)} -> {sorted(v)}"
                        )
                for i in range(self.source.values[u].n):
                    if rt.apply_mor(comp.apply_mor(i)) != cv.apply_mor(rs.apply_mor(i)):
                        raise CatError(
                            f"naturality fails on morphisms at {sorted(u)} -> {sorted(v)}"
                        )
        return True


# ---------------------------------------------------------------------------
# Constantification and sheafification


def _terminal_value(base: FiniteCategory) -> tuple[FiniteCategory, ProductMeta]:
    return product_category(base, ())


def constantify(A: FiniteCategory, space: FiniteSpace) -> CatPresheaf:
    """The constant presheaf: A on every nonempty open, terminal on the empty one."""
    empty_cat, _ = _terminal_value(A)
    values: dict[Open, FiniteCategory] = {}
    for u in space.opens:
        values[u] = A if u else empty_cat
    restrictions: dict[tuple[Open, Open], Functor] = {}
    ident = Functor(
        A, A, {x: x for x in A.objects},
        {i: i for i in range(A.n) if not A.is_identity(i)},
    )
    to_empty = Functor(
        A, empty_cat, {x: "()" for x in A.objects},
        {i: 0 for i in range(A.n) if not A.is_identity(i)},
    )
    empty_ident = Functor(empty_cat, empty_cat, {"()": "()"}, {})
    for u in space.opens:
        for v in space.opens:
            if not v <= u:
                continue
            if u and v:
                restrictions[(u, v)] = ident
            elif u and not v:
                restrictions[(u, v)] = to_empty
            else:
                restrictions[(u, v)] = empty_ident
    return CatPresheaf(space, values, restrictions)


def sheafify_constant(A: FiniteCategory, space: FiniteSpace) -> CatSheaf:
    """Locally constant sections: U ↦ A^{components(U)}.

    Restrictions send a family to its reindexing along the map that assigns
    to each component of the smaller open the component of the larger one
    containing it.
    """
    comps: dict[Open, tuple[tuple[str, ...], ...]] = {
        u: connected_components(space, u) for u in space.opens
    }
    built = {u: product_category(A, comps[u]) for u in space.opens}
    values = {u: cat for u, (cat, _) in built.items()}
    metas = {u: meta for u, (_, meta) in built.items()}
    restrictions: dict[tuple[Open, Open], Functor] = {}
    for u in space.opens:
        mu = metas[u]
        for v in space.opens:
            if not v <= u:
                continue
            mv = metas[v]
            parent = []
            for c in mv.comps:
                hits = [i for i, d in enumerate(mu.comps) if set(c) <= set(d)]
                if len(hits) != 1:
                    raise CatError("component refinement is not a function")
                parent.append(hits[0])
            obj_map = {}
            for t, name in mu.obj_name.items():
                obj_map[name] = mv.obj_name[tuple(t[p] for p in parent)]
            gen_map = {}
            for i, t in enumerate(mu.mor_tuple):
                if values[u].is_identity(i):
                    continue
                gen_map[i] = mv.mor_ix[tuple(t[p] for p in parent)]
            restrictions[(u, v)] = Functor(values[u], values[v], obj_map, gen_map)
    return CatSheaf(space, values, restrictions, base=A, meta=metas)


def global_sections(F: CatPresheaf) -> FiniteCategory:
    return F.value(F.space.full)


def sheafify_functor(g: Functor, FS: CatSheaf, FT: CatSheaf) -> SheafMap:
    """The componentwise image of g: A -> B between constant sheafifications."""
    if FS.base is None or FT.base is None or FS.space is not FT.space:
        raise CatError("both sheaves must be constant sheafifications over one space")
    components = {}
    for u in FS.space.opens:
        ms, mt = FS.meta[u], FT.meta[u]
        obj_map = {
            name: mt.obj_name[tuple(g.apply_obj(x) for x in t)]
            for t, name in ms.obj_name.items()
        }
        gen_map = {}
        for i, t in enumerate(ms.mor_tuple):
            if FS.values[u].is_identity(i):
                continue
            gen_map[i] = mt.mor_ix[tuple(g.apply_mor(m) for m in t)]
        components[u] = Functor(FS.values[u], FT.values[u], obj_map, gen_map)
    return SheafMap(FS, FT, components)


def is_in_constant_image(
    m: SheafMap, product_bound: int = DEFAULT_PRODUCT_BOUND
) -> bool:
    """Does a single functor between the bases sheafify to m, open by open?"""
    FS, FT = m.source, m.target
    if not isinstance(FS, CatSheaf) or FS.base is None:
        raise CatError("source is not a constant sheafification")
    if not isinstance(FT, CatSheaf) or FT.base is None:
        raise CatError("target is not a constant sheafification")
    A, B = FS.base, FT.base
    fp, names = _fp_view(A)
    for cand in all_functors(fp, B, product_bound):
        g = _as_finite_functor(cand, A, names)
        image = sheafify_functor(g, FS, FT)
        if all(
            _same_finite_functor(image.components[u], m.components[u])
            for u in FS.space.opens
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# Unit isomorphism and the exotic attaching map


@dataclass
class IsoCertificate:
    functor: Functor
    inverse: Functor

    def verify(self) -> bool:
        f, h = self.functor, self.inverse
        if not check_functor(f) or not check_functor(h):
            return False
        for x in f.source.objects:
            if h.apply_obj(f.apply_obj(x)) != x:
                return False
        for y in h.source.objects:
            if f.apply_obj(h.apply_obj(y)) != y:
                return False
        for i in range(f.source.n):
            if h.apply_mor(f.apply_mor(i)) != i:
                return False
        for j in range(h.source.n):
            if f.apply_mor(h.apply_mor(j)) != j:
                return False
        return True


@dataclass
class UnitFailure:
    reason: str
    witness: object = None

    def __bool__(self):
        return False


def unit_check(
    A: FiniteCategory, space: FiniteSpace
) -> Union[IsoCertificate, UnitFailure]:
    """Certify that A -> Γ(#(cA)) is an isomorphism of finite categories.

    The canonical comparison sends an object to the constant family over the
    components of the space; it is invertible exactly when the space is
    connected (or A is degenerate enough not to notice).
    """
    F = sheafify_constant(A, space)
    G = global_sections(F)
    meta = F.meta[space.full]
    k = len(meta.comps)
    obj_map = {x: meta.obj_name[(x,) * k] for x in A.objects}
    gen_map = {
        i: meta.mor_ix[(i,) * k] for i in range(A.n) if not A.is_identity(i)
    }
    eta = Functor(A, G, obj_map, gen_map)
    if not check_functor(eta):
        return UnitFailure("not_functorial")
    if len(A.objects) != len(G.objects):
        return UnitFailure("object_count", (len(A.objects), len(G.objects)))
    if A.n != G.n:
        return UnitFailure("morphism_count", (A.n, G.n))
    images = [eta.apply_mor(i) for i in range(A.n)]
    if len(set(images)) != G.n or len(set(obj_map.values())) != len(G.objects):
        return UnitFailure("not_bijective")
    inv_obj = {v: k2 for k2, v in obj_map.items()}
    inv_mor = {}
    for i, j in enumerate(images):
        if not G.is_identity(j):
            inv_mor[j] = i
    inverse = Functor(G, A, inv_obj, inv_mor)
    cert = IsoCertificate(eta, inverse)
    if not cert.verify():
        return UnitFailure("inverse_check")
    return cert


def _discrete_two(space_A: FiniteCategory | None = None) -> FiniteCategory:
    objects = ["0.pt", "1.pt"]
    return FiniteCategory(
        objects, objects, objects, {(0, 0): 0, (1, 1): 1},
        {"0.pt": 0, "1.pt": 1}, labels=["id0", "id1"],
    )


def exotic_map_demo(variant: str = "exotic") -> tuple[SheafMap, bool]:
    """The attaching map over the discrete two-point space.

    The endomorphism of the sheafified two-object discrete category that is
    the identity over one point and constant over the other cannot arise by
    sheafifying any single endofunctor; the positive-control variants
    ("identity", "constant") can.
    """
    if variant not in ("exotic", "identity", "constant"):
        raise CatError(f"unknown variant {variant!r}")
    space = discrete_two_point()
    A = _discrete_two()
    F = sheafify_constant(A, space)
    ident = Functor(
        A, A, {x: x for x in A.objects},
        {i: i for i in range(A.n) if not A.is_identity(i)},
    )
    const0 = Functor(
        A, A, {x: "0.pt" for x in A.objects},
        {i: 0 for i in range(A.n) if not A.is_identity(i)},
    )
    if variant == "exotic":
        per_point = {"u": ident, "v": const0}
    elif variant == "identity":
        per_point = {"u": ident, "v": ident}
    else:
        per_point = {"u": const0, "v": const0}
    components = {}
    for u in space.opens:
        meta = F.meta[u]
        assign = [per_point[c[0]] for c in meta.comps]
        obj_map = {
            name: meta.obj_name[tuple(f.apply_obj(x) for f, x in zip(assign, t))]
            for t, name in meta.obj_name.items()
        }
        gen_map = {}
        for i, t in enumerate(meta.mor_tuple):
            if F.values[u].is_identity(i):
                continue
            gen_map[i] = meta.mor_ix[
                tuple(f.apply_mor(m) for f, m in zip(assign, t))
            ]
        components[u] = Functor(F.values[u], F.values[u], obj_map, gen_map)
    xi = SheafMap(F, F, components)
    xi.validate()
    return xi, is_in_constant_image(xi)


# ---------------------------------------------------------------------------
# CW recognition for sheaves


@dataclass
class CwSheafVerdict:
    kind: str
    witness: object = None

    def __bool__(self):
        return self.kind == "CW"


def classify_cw_sheaf(
    F: CatPresheaf, product_bound: int = DEFAULT_PRODUCT_BOUND
) -> CwSheafVerdict:
    """A sheaf over a connected space is CW iff it is the constant
    sheafification of a groupoid, up to open-by-open isomorphism."""
    if not is_connected(F.space):
        raise NotConnected("classification requires a connected base space")
    G = global_sections(F)
    if not is_groupoid(G):
        return CwSheafVerdict("NotCW", ("not_groupoid", groupoid_witness(G)))
    S = sheafify_constant(G, F.space)
    for u in F.space.opens:
        iso = find_isomorphism(F.value(u), S.value(u), product_bound)
        if iso is None:
            return CwSheafVerdict("NotCW", ("open", sorted(u)))
    return CwSheafVerdict("CW")
