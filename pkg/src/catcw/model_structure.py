"""The three distinguished classes of functors, with checkable certificates.

Cofibrations are the functors injective on objects; weak equivalences are the
categorical equivalences (fully faithful and essentially surjective);
fibrations are the isofibrations.  Equivalence checks run on finite
categories and return either a certificate whose witnesses can be re-checked
independently, or a named counterexample.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Union

from .fpcat import (
    DEFAULT_HOM_BOUND,
    DEFAULT_RULE_BUDGET,
    CatError,
    FiniteCategory,
    FpCategory,
    Functor,
    IncompleteSystem,
    NotFinite,
    Path,
    finite_to_fp,
    to_finite,
)

DEFAULT_PRODUCT_BOUND = 10**6


class NotDecided(CatError):
    """The question was not settled within the configured bounds."""


class SearchSpaceTooLarge(CatError):
    def __init__(self, size: int, bound: int):
        self.size = size
        self.bound = bound
        super().__init__(f"functor search space has {size} candidates (bound {bound})")


def is_cofibration(F: Functor) -> bool:
    """Injective on objects.  Assumes ``F`` is a valid functor."""
    images = list(F.object_map.values())
    return len(images) == len(set(images))


def two_sided_inverses(C: FiniteCategory) -> dict[int, int]:
    return dict(C.inverses())


def _iso_ids_direct(C: FiniteCategory) -> set[int]:
    return set(C.inverses().keys())


def _iso_ids_tuple_construction(C: FiniteCategory) -> set[int]:
    # pairs composing to an identity, then matched middles: 4-tuples
    # (a, b, c, d) with a;b and c;d identities and b = c pick out exactly
    # the morphisms with inverses on both sides
    sections = []  # (a, b) with a;b an identity
    for (a, b), h in C.compose_table.items():
        if C.is_identity(h):
            sections.append((a, b))
    firsts = {a for a, _ in sections}
    out = set()
    for a, b in sections:
        if b in firsts:  # some (c, d) with c = b completes the 4-tuple
            out.add(b)
    return out


def iso_core(C: FiniteCategory) -> FiniteCategory:
    """The wide subcategory of invertible morphisms.

    Built by the identity-pair tuple construction and cross-checked against
    the direct two-sided-inverse scan; a mismatch would be an internal error.
    """
    direct = _iso_ids_direct(C)
    tupled = _iso_ids_tuple_construction(C)
    if direct != tupled:
        raise CatError("iso-core constructions disagree; composition table is inconsistent")
    keep = sorted(direct)
    new_id = {old: i for i, old in enumerate(keep)}
    compose = {
        (new_id[f], new_id[g]): new_id[h]
        for (f, g), h in C.compose_table.items()
        if f in direct and g in direct
    }
    return FiniteCategory(
        C.objects,
        [C.mor_src[i] for i in keep],
        [C.mor_dst[i] for i in keep],
        compose,
        {x: new_id[i] for x, i in C.identities.items()},
        labels=[C.labels[i] for i in keep],
        paths=[C.paths[i] for i in keep] if C.paths is not None else None,
    )


def is_isofibration(F: Functor) -> bool:
    """Every iso in the target starting at an object's image lifts."""
    C: FiniteCategory = F.source
    D: FiniteCategory = F.target
    d_inv = D.inverses()
    c_inv = C.inverses()
    for x in C.objects:
        fx = F.apply_obj(x)
        for h in range(D.n):
            if h not in d_inv or D.mor_src[h] != fx:
                continue
            lifted = False
            for k in range(C.n):
                if k in c_inv and C.mor_src[k] == x and F.apply_mor(k) == h:
                    lifted = True
                    break
            if not lifted:
                return False
    return True


@dataclass
class EquivalenceCertificate:
    """Re-checkable witnesses: per-hom bijections and iso hits per target object."""

    functor: Functor
    fully_faithful: dict[tuple[str, str], tuple[tuple[int, int], ...]]
    essentially_surjective: dict[str, tuple[str, int, int]]

    def verify(self) -> bool:
        F = self.functor
        C: FiniteCategory = F.source
        D: FiniteCategory = F.target
        for (x, y), pairs in self.fully_faithful.items():
            fx, fy = F.apply_obj(x), F.apply_obj(y)
            srcs = [p[0] for p in pairs]
            tgts = [p[1] for p in pairs]
            if sorted(srcs) != sorted(C.hom(x, y)):
                return False
            if sorted(tgts) != sorted(D.hom(fx, fy)):
                return False
            if any(F.apply_mor(f) != g for f, g in pairs):
                return False
        if set(self.fully_faithful) != {(x, y) for x in C.objects for y in C.objects}:
            return False
        d_inv = D.inverses()
        for y, (x, h, hinv) in self.essentially_surjective.items():
            if D.mor_src[h] != F.apply_obj(x) or D.mor_dst[h] != y:
                return False
            if d_inv.get(h) != hinv:
                return False
        return set(self.essentially_surjective) == set(D.objects)

    def to_json_obj(self) -> dict:
        return {
            "functor": self.functor.to_json_obj(),
            "fully_faithful": {
                f"{x}|{y}": [list(p) for p in pairs]
                for (x, y), pairs in sorted(self.fully_faithful.items())
            },
            "essentially_surjective": {
                y: list(w) for y, w in sorted(self.essentially_surjective.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


@dataclass
class NotEquivalence:
    reason: str  # "not_full" | "not_faithful" | "not_essentially_surjective"
    witness: tuple

    def __bool__(self):
        return False


def is_equivalence(F: Functor) -> Union[EquivalenceCertificate, NotEquivalence]:
    """Decide categorical equivalence for a functor between finite categories."""
    C: FiniteCategory = F.source
    D: FiniteCategory = F.target
    ff: dict[tuple[str, str], tuple[tuple[int, int], ...]] = {}
    for x in C.objects:
        for y in C.objects:
            fx, fy = F.apply_obj(x), F.apply_obj(y)
            pairs = tuple((f, F.apply_mor(f)) for f in C.hom(x, y))
            images = [p[1] for p in pairs]
            if len(set(images)) < len(images):
                dup = next(g for g in images if images.count(g) > 1)
                clash = tuple(f for f, g in pairs if g == dup)
                return NotEquivalence("not_faithful", (x, y) + clash)
            missing = set(D.hom(fx, fy)) - set(images)
            if missing:
                return NotEquivalence("not_full", (x, y, min(missing)))
            ff[(x, y)] = pairs
    d_inv = D.inverses()
    es: dict[str, tuple[str, int, int]] = {}
    for y in D.objects:
        hit = None
        for x in C.objects:
            for h in D.hom(F.apply_obj(x), y):
                if h in d_inv:
                    hit = (x, h, d_inv[h])
                    break
            if hit:
                break
        if hit is None:
            return NotEquivalence("not_essentially_surjective", (y,))
        es[y] = hit
    return EquivalenceCertificate(F, ff, es)


def is_groupoid(C: FiniteCategory) -> bool:
    return len(C.inverses()) == C.n


def groupoid_witness(C: FiniteCategory) -> int | None:
    """A morphism id with no two-sided inverse, or None."""
    inv = C.inverses()
    for i in range(C.n):
        if i not in inv:
            return i
    return None


def is_groupoid_fp(
    cat: FpCategory,
    budget: int = DEFAULT_RULE_BUDGET,
    bound: int = DEFAULT_HOM_BOUND,
) -> bool | None:
    """Tri-state groupoid test on a presentation.

    True when every generator is either marked invertible or acquires a
    two-sided inverse provably; False with a definitive witness; None when
    the bounds ran out first.
    """
    pending = [g for g in cat.quiver.generators if g.name not in cat.inverses]
    if not pending:
        return True
    try:
        fin = to_finite(cat, bound, budget)
    except NotFinite:
        fin = None
    except IncompleteSystem:
        return None
    if fin is not None:
        return is_groupoid(fin)
    # infinite (or too large): decide generator by generator via bounded
    # enumeration of candidate inverses
    from .fpcat import irreducible_words

    rs = cat.completion(budget)
    if not rs.complete:
        return None
    words = irreducible_words(cat, max_len=6, budget=budget)
    undecided = False
    for g in pending:
        img = rs.normalize(Path(g.src, (g.name,)))
        found = False
        for q in words.get((g.dst, g.src), []):
            left = rs.normalize(Path(g.src, img.gens + q.gens))
            right = rs.normalize(Path(g.dst, q.gens + img.gens))
            if left.is_identity and right.is_identity:
                found = True
                break
        if not found:
            undecided = True
    return None if undecided else True


def is_contractible(
    C: Union[FpCategory, FiniteCategory], budget: int = DEFAULT_RULE_BUDGET
) -> bool:
    """Nonempty and exactly one morphism in every hom-set."""
    if isinstance(C, FiniteCategory):
        if not C.objects:
            return False
        return all(
            len(C.hom(x, y)) == 1 for x in C.objects for y in C.objects
        )
    if not C.objects:
        return False
    try:
        fin = to_finite(C, bound=1, budget=budget)
    except NotFinite:
        return False
    return is_contractible(fin)


def all_functors(
    src: FpCategory,
    dst: FiniteCategory,
    product_bound: int = DEFAULT_PRODUCT_BOUND,
    object_maps: list[dict[str, str]] | None = None,
) -> Iterator[Functor]:
    """Enumerate valid functors deterministically (declaration-order products).

    Raises SearchSpaceTooLarge once the number of examined candidates would
    exceed ``product_bound``.
    """
    objs = src.objects
    gens = src.quiver.generators
    if object_maps is None:
        object_maps = [
            dict(zip(objs, combo))
            for combo in itertools.product(dst.objects, repeat=len(objs))
        ]
    examined = 0
    for omap in object_maps:
        cands = []
        feasible = True
        size = 1
        for g in gens:
            hom = dst.hom(omap[g.src], omap[g.dst])
            if not hom:
                feasible = False
                break
            cands.append(hom)
            size *= len(hom)
        if not feasible:
            continue
        examined += size
        if examined > product_bound:
            raise SearchSpaceTooLarge(examined, product_bound)
        for combo in itertools.product(*cands):
            gen_map = {g.name: m for g, m in zip(gens, combo)}
            F = Functor(src, dst, omap, gen_map)
            ok = True
            for lhs, rhs in src.relations:
                if F.apply_path(lhs) != F.apply_path(rhs):
                    ok = False
                    break
            if ok:
                yield F


def _fp_view(C: FiniteCategory) -> tuple[FpCategory, dict]:
    fp = finite_to_fp(C)
    return fp, {f"m{i}": i for i in range(C.n) if not C.is_identity(i)}


def _as_finite_functor(F: Functor, C: FiniteCategory, name_to_id: dict) -> Functor:
    mor_map = {}
    for name, i in name_to_id.items():
        mor_map[i] = F.gen_map[name]
    return Functor(C, F.target, F.object_map, mor_map)


def find_equivalence(
    C: FiniteCategory, D: FiniteCategory, product_bound: int = DEFAULT_PRODUCT_BOUND
) -> Functor | None:
    """First functor C -> D (declaration order) that is an equivalence."""
    fp, names = _fp_view(C)
    for F in all_functors(fp, D, product_bound):
        fin = _as_finite_functor(F, C, names)
        if is_equivalence(fin):
            return fin
    return None


def find_isomorphism(
    C: FiniteCategory, D: FiniteCategory, product_bound: int = DEFAULT_PRODUCT_BOUND
) -> Functor | None:
    """An invertible functor C -> D, if one exists within the bound."""
    if len(C.objects) != len(D.objects) or C.n != D.n:
        return None
    fp, names = _fp_view(C)
    object_maps = [
        dict(zip(C.objects, perm)) for perm in itertools.permutations(D.objects)
    ]
    for F in all_functors(fp, D, product_bound, object_maps=object_maps):
        fin = _as_finite_functor(F, C, names)
        images = [fin.apply_mor(i) for i in range(C.n)]
        if len(set(images)) != D.n:
            continue
        cert = is_equivalence(fin)
        if cert:
            return fin
    return None
