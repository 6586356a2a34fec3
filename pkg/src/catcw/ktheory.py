"""Pointed categories, the cone functor, suspension, and K-zero vanishing
witnesses.

The cone of a pointed category is the chaotic category on its objects; the
unit is identity on objects, so it is always a cofibration.  Suspension is
the pushout of the cone unit along the collapse to a point and always has a
single object, which forces the double suspension to be literally terminal.
A vanishing witness materializes the whole argument as five replayable
certificates: two cofiber sequences, two contractibility checks, and the
terminality of the double suspension.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Union

from .colimits import PushoutResult, chaotic, pushout
from .cw import point_collapse
from .fpcat import (
    DEFAULT_HOM_BOUND,
    DEFAULT_RULE_BUDGET,
    CatError,
    FiniteCategory,
    FpCategory,
    Functor,
    Path,
    check_functor,
    finite_to_fp,
    from_json as category_from_json,
    functor_from_json,
    irreducible_words,
    to_finite,
)
from .model_structure import is_cofibration, is_contractible

INVERSE_SEARCH_LEN = 6

K0_SCOPE_NOTE = (
    "closure conditions are checked for the objects occurring in this witness only"
)


class CompletionBudgetExceeded(CatError):
    pass


@dataclass(frozen=True)
class PointedCategory:
    cat: Union[FpCategory, FiniteCategory]
    basepoint: str

    def __post_init__(self):
        if self.basepoint not in self.cat.objects:
            raise CatError(f"basepoint {self.basepoint!r} is not an object")


def as_pointed_fp(X: PointedCategory) -> PointedCategory:
    if isinstance(X.cat, FpCategory):
        return X
    return PointedCategory(finite_to_fp(X.cat), X.basepoint)


def cone(X: PointedCategory) -> PointedCategory:
    """P(X): the chaotic category on X's objects, same basepoint."""
    X = as_pointed_fp(X)
    return PointedCategory(chaotic(X.cat.objects), X.basepoint)


def cone_unit(X: PointedCategory) -> Functor:
    """The identity-on-objects inclusion X -> P(X); a cofibration."""
    X = as_pointed_fp(X)
    target = cone(X).cat
    gen_map = {}
    for g in X.cat.quiver.generators:
        if g.src == g.dst:
            gen_map[g.name] = Path(g.src)
        else:
            gen_map[g.name] = Path(g.src, (f"{g.src}>{g.dst}",))
    return Functor(X.cat, target, {x: x for x in X.cat.objects}, gen_map)


def cone_map(f: Functor, source_cone: FpCategory, target_cone: FpCategory) -> Functor:
    """P(f): the induced functor between chaotic categories."""
    gen_map = {}
    for g in source_cone.quiver.generators:
        x, y = g.src, g.dst
        fx, fy = f.apply_obj(x), f.apply_obj(y)
        gen_map[g.name] = Path(fx) if fx == fy else Path(fx, (f"{fx}>{fy}",))
    return Functor(
        source_cone,
        target_cone,
        {x: f.apply_obj(x) for x in source_cone.objects},
        gen_map,
    )


def _suspension(X: PointedCategory) -> tuple[PointedCategory, PushoutResult, Functor]:
    X = as_pointed_fp(X)
    unit = cone_unit(X)
    po = pushout(unit, point_collapse(X.cat))
    if len(po.apex.objects) != 1:
        raise CatError("suspension did not collapse to one object")
    return PointedCategory(po.apex, po.apex.objects[0]), po, unit


def suspend(X: PointedCategory) -> PointedCategory:
    """ΣX = pushout of cone_unit(X) along the collapse X -> 1."""
    return _suspension(X)[0]


@dataclass
class DoubleSuspensionCertificate:
    category: FpCategory
    basepoint: str
    sigma_objects: int
    sigma2_objects: int
    sigma2_generators: int
    sigma2_morphisms: int

    @property
    def ok(self) -> bool:
        return (
            self.sigma_objects == 1
            and self.sigma2_objects == 1
            and self.sigma2_generators == 0
            and self.sigma2_morphisms == 1
        )

    def verify(self) -> bool:
        fresh = verify_double_suspension(PointedCategory(self.category, self.basepoint))
        return fresh.ok and (
            fresh.sigma_objects,
            fresh.sigma2_objects,
            fresh.sigma2_generators,
            fresh.sigma2_morphisms,
        ) == (
            self.sigma_objects,
            self.sigma2_objects,
            self.sigma2_generators,
            self.sigma2_morphisms,
        )

    def to_json_obj(self) -> dict:
        return {
            "category": self.category.to_json_obj(),
            "basepoint": self.basepoint,
            "sigma_objects": self.sigma_objects,
            "sigma2_objects": self.sigma2_objects,
            "sigma2_generators": self.sigma2_generators,
            "sigma2_morphisms": self.sigma2_morphisms,
        }


def verify_double_suspension(X: PointedCategory) -> DoubleSuspensionCertificate:
    """Compute Σ²X and certify it is the terminal category."""
    X = as_pointed_fp(X)
    sx = suspend(X)
    s2x = suspend(sx)
    try:
        fin = to_finite(s2x.cat, bound=4)
    except CatError as exc:  # pragma: no cover - terminal by construction
        raise CompletionBudgetExceeded(str(exc))
    return DoubleSuspensionCertificate(
        X.cat,
        X.basepoint,
        len(sx.cat.objects),
        len(s2x.cat.objects),
        len(s2x.cat.generators),
        fin.n,
    )


@dataclass
class CofiberFailure:
    reason: str
    witness: object = None

    def __bool__(self):
        return False


@dataclass
class CofiberCertificate:
    """Witness that A -i-> B -q-> C exhibits C as the cofiber B ⊔_A 1.

    ``comparison`` is the induced functor from the recomputed pushout apex to
    C; ``inverse`` is a two-sided inverse found by bounded normal-form search
    (strict mode), or None when the isomorphism was certified on finite
    backends (finite mode, with hom cardinalities recorded).
    """

    i: Functor
    q: Functor
    basepoint: str
    mode: str
    comparison: Functor
    inverse: Functor | None
    hom_card: dict | None

    def to_json_obj(self) -> dict:
        return {
            "A": self.i.source.to_json_obj(),
            "B": self.i.target.to_json_obj(),
            "C": self.q.target.to_json_obj(),
            "i": self.i.to_json_obj(),
            "q": self.q.to_json_obj(),
            "basepoint": self.basepoint,
            "mode": self.mode,
            "comparison": self.comparison.to_json_obj(),
            "inverse": self.inverse.to_json_obj() if self.inverse else None,
            "hom_card": self.hom_card,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    def verify(self, budget: int = DEFAULT_RULE_BUDGET) -> bool:
        """Re-run the full recognition and demand the identical certificate."""
        fresh = is_cofiber_sequence(self.i, self.q, self.basepoint, budget)
        return isinstance(fresh, CofiberCertificate) and fresh.to_json() == self.to_json()

    @staticmethod
    def from_json(doc: Union[str, Mapping]) -> "CofiberCertificate":
        obj = json.loads(doc) if isinstance(doc, str) else doc
        A = category_from_json(obj["A"])
        B = category_from_json(obj["B"])
        C = category_from_json(obj["C"])
        i = functor_from_json(A, B, obj["i"])
        q = functor_from_json(B, C, obj["q"])
        apex = pushout(i, point_collapse(A)).apex
        comparison = functor_from_json(apex, C, obj["comparison"])
        inverse = (
            functor_from_json(C, apex, obj["inverse"]) if obj["inverse"] else None
        )
        return CofiberCertificate(
            i, q, obj["basepoint"], obj["mode"], comparison, inverse, obj["hom_card"]
        )


def _strict_inverse(
    m: Functor, budget: int, search_len: int = INVERSE_SEARCH_LEN
) -> Functor | None:
    """A two-sided inverse of m up to normalization, by normal-form search."""
    apex: FpCategory = m.source
    C: FpCategory = m.target
    rs_apex = apex.completion(budget)
    rs_c = C.completion(budget)
    if not (rs_apex.complete and rs_c.complete):
        return None
    inv_obj = {}
    for x, y in m.object_map.items():
        if y in inv_obj:
            return None
        inv_obj[y] = x
    if set(inv_obj) != set(C.objects):
        return None
    words = irreducible_words(apex, search_len, budget)
    gen_map: dict[str, Path] = {}
    for c in C.quiver.generators:
        want = rs_c.normalize(Path(c.src, (c.name,)))
        found = None
        for w in words.get((inv_obj[c.src], inv_obj[c.dst]), []):
            if rs_c.normalize(m.apply_path(w)) == want:
                found = w
                break
        if found is None:
            return None
        gen_map[c.name] = found
    n = Functor(C, apex, inv_obj, gen_map)
    if not check_functor(n, budget):
        return None
    for g in apex.quiver.generators:
        back = n.apply_path(m.gen_map[g.name])
        if rs_apex.normalize(back) != rs_apex.normalize(Path(g.src, (g.name,))):
            return None
    for c in C.quiver.generators:
        forth = m.apply_path(n.gen_map[c.name])
        if rs_c.normalize(forth) != rs_c.normalize(Path(c.src, (c.name,))):
            return None
    return n


def is_cofiber_sequence(
    i: Functor,
    q: Functor,
    basepoint: str | None = None,
    budget: int = DEFAULT_RULE_BUDGET,
) -> Union[CofiberCertificate, CofiberFailure]:
    """Recognize A -i-> B -q-> C as a cofiber sequence.

    Verifies i is a cofibration, q collapses A to the basepoint, and the
    comparison functor from pushout(i, A -> 1) to C is an isomorphism of
    presentations after completion.
    """
    A, B, C = i.source, i.target, q.target
    if q.source != B:
        return CofiberFailure("not_composable")
    if not check_functor(i, budget) or not check_functor(q, budget):
        return CofiberFailure("invalid_functor")
    if not is_cofibration(i):
        images: dict[str, str] = {}
        for x, y in i.object_map.items():
            if y in images:
                return CofiberFailure("not_cofibration", (images[y], x))
            images[y] = x
    if basepoint is None:
        if A.objects:
            basepoint = q.apply_obj(i.apply_obj(A.objects[0]))
        else:
            extra = [y for y in C.objects if y not in set(q.object_map.values())]
            if len(extra) != 1:
                return CofiberFailure("no_basepoint", tuple(extra))
            basepoint = extra[0]
    if basepoint not in C.objects:
        return CofiberFailure("no_basepoint", (basepoint,))
    rs_c = C.completion(budget)
    for a in A.objects:
        if q.apply_obj(i.apply_obj(a)) != basepoint:
            return CofiberFailure("not_collapsing", (a,))
    for g in A.quiver.generators:
        img = q.apply_path(i.gen_map[g.name])
        if not rs_c.normalize(img).is_identity:
            return CofiberFailure("not_collapsing", (g.name,))

    po = pushout(i, point_collapse(A))
    apex = po.apex
    obj_map: dict[str, str] = {}
    for b in B.objects:
        obj_map[po.inj_left.apply_obj(b)] = q.apply_obj(b)
    for c_obj in po.inj_right.object_map.values():
        obj_map.setdefault(c_obj, basepoint)
    gen_map: dict[str, Path] = {}
    for b in B.quiver.generators:
        gen_map[po.inj_left.gen_map[b.name].gens[0]] = q.gen_map[b.name]
    m = Functor(apex, C, obj_map, gen_map)
    if not check_functor(m, budget):
        return CofiberFailure("comparison_not_functorial")
    vals = sorted(m.object_map.values())
    if vals != sorted(C.objects):
        return CofiberFailure("cofiber_mismatch", tuple(vals))

    n = _strict_inverse(m, budget)
    if n is not None:
        return CofiberCertificate(i, q, basepoint, "strict-inverse", m, n, None)

    # fall back to the finite backends
    try:
        apex_fin = to_finite(apex, DEFAULT_HOM_BOUND, budget)
        c_fin = to_finite(C, DEFAULT_HOM_BOUND, budget)
    except CatError:
        return CofiberFailure("iso_not_certified")
    mor_map = {}
    for idx in range(apex_fin.n):
        if apex_fin.is_identity(idx):
            continue
        img_path = Path(
            m.apply_obj(apex_fin.mor_src[idx]),
            tuple(
                g2 for g in apex_fin.paths[idx].gens for g2 in m.gen_map[g].gens
            ),
        )
        nf = rs_c.normalize(img_path)
        mor_map[idx] = next(
            j for j in range(c_fin.n) if c_fin.paths[j] == nf
        )
    m_fin = Functor(apex_fin, c_fin, dict(m.object_map), mor_map)
    images = [m_fin.apply_mor(j) for j in range(apex_fin.n)]
    if apex_fin.n != c_fin.n or len(set(images)) != c_fin.n:
        return CofiberFailure("cofiber_mismatch", (apex_fin.n, c_fin.n))
    hom_card = {
        f"{x}|{y}": len(apex_fin.hom(x, y))
        for x in apex_fin.objects
        for y in apex_fin.objects
    }
    return CofiberCertificate(i, q, basepoint, "finite", m, None, hom_card)


@dataclass
class ContractibilityCertificate:
    category: FpCategory
    objects: int

    def verify(self, budget: int = DEFAULT_RULE_BUDGET) -> bool:
        return (
            len(self.category.objects) == self.objects
            and self.objects > 0
            and is_contractible(self.category, budget)
        )

    def to_json_obj(self) -> dict:
        return {"category": self.category.to_json_obj(), "objects": self.objects}


@dataclass
class K0Witness:
    """Replayable proof object that [X] = 0 in K₀.

    Chain: X -> PX -> ΣX and ΣX -> PΣX -> Σ²X are cofiber sequences, the two
    cones are contractible, and Σ²X is terminal; together these force the
    class of X to vanish in any admissible home for it.
    """

    x: PointedCategory
    px: FpCategory
    sx: PointedCategory
    psx: FpCategory
    s2x: PointedCategory
    cert1: CofiberCertificate
    cert2: CofiberCertificate
    contract_px: ContractibilityCertificate
    contract_psx: ContractibilityCertificate
    s2x_morphisms: int

    def to_json_obj(self) -> dict:
        return {
            "format": "catcw-k0-witness-1",
            "input": {
                "category": self.x.cat.to_json_obj(),
                "basepoint": self.x.basepoint,
            },
            "stages": {
                "PX": self.px.to_json_obj(),
                "SX": self.sx.cat.to_json_obj(),
                "SX_basepoint": self.sx.basepoint,
                "PSX": self.psx.to_json_obj(),
                "S2X": self.s2x.cat.to_json_obj(),
                "S2X_basepoint": self.s2x.basepoint,
            },
            "cert1": self.cert1.to_json_obj(),
            "cert2": self.cert2.to_json_obj(),
            "contract_PX": self.contract_px.to_json_obj(),
            "contract_PSX": self.contract_psx.to_json_obj(),
            "terminal_S2X": {
                "objects": len(self.s2x.cat.objects),
                "generators": len(self.s2x.cat.generators),
                "morphisms": self.s2x_morphisms,
            },
            "scope": K0_SCOPE_NOTE,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2)

    def replay(self, budget: int = DEFAULT_RULE_BUDGET) -> bool:
        """Re-run all five checks on the stored data."""
        if not self.cert1.verify(budget) or not self.cert2.verify(budget):
            return False
        if not self.contract_px.verify(budget) or not self.contract_psx.verify(budget):
            return False
        # the chain must connect: stage categories appear in the certificates
        if self.cert1.i.source != self.x.cat or self.cert1.i.target != self.px:
            return False
        if self.cert1.q.target != self.sx.cat:
            return False
        if self.cert2.i.source != self.sx.cat or self.cert2.i.target != self.psx:
            return False
        if self.cert2.q.target != self.s2x.cat:
            return False
        if self.contract_px.category != self.px or self.contract_psx.category != self.psx:
            return False
        if len(self.s2x.cat.objects) != 1 or self.s2x.cat.generators:
            return False
        if to_finite(self.s2x.cat, bound=4, budget=budget).n != self.s2x_morphisms:
            return False
        return self.s2x_morphisms == 1

    @staticmethod
    def from_json(doc: Union[str, Mapping]) -> "K0Witness":
        obj = json.loads(doc) if isinstance(doc, str) else doc
        if obj.get("format") != "catcw-k0-witness-1":
            raise CatError("unrecognized witness format")
        x = PointedCategory(
            category_from_json(obj["input"]["category"]), obj["input"]["basepoint"]
        )
        stages = obj["stages"]
        px = category_from_json(stages["PX"])
        sx = PointedCategory(category_from_json(stages["SX"]), stages["SX_basepoint"])
        psx = category_from_json(stages["PSX"])
        s2x = PointedCategory(category_from_json(stages["S2X"]), stages["S2X_basepoint"])
        return K0Witness(
            x,
            px,
            sx,
            psx,
            s2x,
            CofiberCertificate.from_json(obj["cert1"]),
            CofiberCertificate.from_json(obj["cert2"]),
            ContractibilityCertificate(px, obj["contract_PX"]["objects"]),
            ContractibilityCertificate(psx, obj["contract_PSX"]["objects"]),
            obj["terminal_S2X"]["morphisms"],
        )


def k0_vanishing_witness(
    X: PointedCategory, budget: int = DEFAULT_RULE_BUDGET
) -> K0Witness:
    """Assemble and check the five-certificate vanishing witness for X."""
    X = as_pointed_fp(X)
    px = cone(X)
    unit1 = cone_unit(X)
    sx, po1, _ = _suspension(X)
    cert1 = is_cofiber_sequence(unit1, po1.inj_left, sx.basepoint, budget)
    if not isinstance(cert1, CofiberCertificate):
        raise CatError(f"first cofiber sequence failed: {cert1.reason}")
    psx = cone(sx)
    unit2 = cone_unit(sx)
    s2x, po2, _ = _suspension(sx)
    cert2 = is_cofiber_sequence(unit2, po2.inj_left, s2x.basepoint, budget)
    if not isinstance(cert2, CofiberCertificate):
        raise CatError(f"second cofiber sequence failed: {cert2.reason}")
    witness = K0Witness(
        X,
        px.cat,
        sx,
        psx.cat,
        s2x,
        cert1,
        cert2,
        ContractibilityCertificate(px.cat, len(px.cat.objects)),
        ContractibilityCertificate(psx.cat, len(psx.cat.objects)),
        to_finite(s2x.cat, bound=4, budget=budget).n,
    )
    if not witness.replay(budget):
        raise CatError("freshly assembled witness failed to replay")
    return witness
