"""Finite spaces, constant sheaves of categories, the unit isomorphism,
the exotic attaching map, and CW recognition for sheaves."""

import itertools

import pytest

from conftest import arrow_cat, c2_cat, c3_cat, pool8, terminal_cat

from catcw import (
    CatError,
    CatPresheaf,
    FiniteSpace,
    Functor,
    IsoCertificate,
    NotAnOpen,
    NotConnected,
    SheafMap,
    UnitFailure,
    build,
    chaotic,
    classify_cw_sheaf,
    connected_components,
    constantify,
    exotic_map_demo,
    find_isomorphism,
    global_sections,
    is_connected,
    is_equivalence,
    is_in_constant_image,
    sheafify_constant,
    sheafify_functor,
    space_from_json,
    sphere,
    to_finite,
    unit_check,
)
from catcw.sheaftopos import (
    check_gluing,
    discrete_two_point,
    product_category,
    pseudocircle_base,
    sierpinski,
)


def discrete2_fin():
    return to_finite(build(["x", "y"]))


def test_space_rejects_duplicate_points():
    with pytest.raises(CatError):
        FiniteSpace(["u", "u"], [[], ["u"]])


def test_space_requires_empty_and_full():
    with pytest.raises(CatError):
        FiniteSpace(["u", "v"], [["u"], ["u", "v"]])


def test_space_requires_union_and_intersection_closure():
    with pytest.raises(CatError):
        FiniteSpace(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b", "c"]])


def test_space_rejects_unknown_points_in_an_open():
    with pytest.raises(NotAnOpen):
        FiniteSpace(["u"], [[], ["u"], ["w"]])


def test_space_json_round_trip():
    s = pseudocircle_base()
    back = space_from_json(s.to_json())
    assert back.points == s.points
    assert back.opens == s.opens


def test_min_open_on_sierpinski():
    s = sierpinski()
    assert s.min_open("u") == frozenset(["u"])
    assert s.min_open("v") == frozenset(["u", "v"])


def test_connectivity_of_the_three_base_spaces():
    assert is_connected(sierpinski())
    assert is_connected(pseudocircle_base())
    assert not is_connected(discrete_two_point())
    assert is_connected(FiniteSpace(["p"], [[], ["p"]]))


def test_components_of_opens():
    disc = discrete_two_point()
    assert connected_components(disc, disc.full) == (("u",), ("v",))
    pseudo = pseudocircle_base()
    assert connected_components(pseudo, ["a", "b"]) == (("a",), ("b",))
    assert connected_components(pseudo, pseudo.full) == (("a", "b", "c"),)


def test_components_reject_non_opens():
    with pytest.raises(NotAnOpen):
        connected_components(sierpinski(), ["v"])


def test_product_category_squares_the_base():
    d2 = discrete2_fin()
    sq, meta = product_category(d2, (("u",), ("v",)))
    assert sq.objects == ("(x,x)", "(x,y)", "(y,x)", "(y,y)")
    assert sq.n == 4
    assert meta.obj_name[("x", "y")] == "(x,y)"


def test_empty_product_is_terminal():
    one, _ = product_category(discrete2_fin(), ())
    assert one.objects == ("()",)
    assert one.n == 1


def test_constantify_is_a_presheaf_but_not_a_sheaf_when_disconnected():
    pre = constantify(discrete2_fin(), discrete_two_point())
    assert pre.validate()
    ok, witness = check_gluing(pre)
    assert not ok
    # the cover {u}, {v} of the whole space admits 4 compatible families
    assert witness[0] == "objects"
    assert witness[1] == ["u", "v"]


def test_constantify_of_terminal_always_glues():
    pre = constantify(to_finite(terminal_cat()), discrete_two_point())
    ok, _ = check_gluing(pre)
    assert ok


def test_sheafification_glues_everywhere():
    spaces = (sierpinski(), discrete_two_point(), pseudocircle_base())
    for space in spaces:
        for cat in pool8():
            F = sheafify_constant(to_finite(cat), space)
            assert F.validate()
            assert F.gluing_ok, (space, cat.objects)


def test_global_sections_count_components():
    F = sheafify_constant(discrete2_fin(), discrete_two_point())
    assert len(global_sections(F).objects) == 4
    G = sheafify_constant(to_finite(c2_cat()), sierpinski())
    assert find_isomorphism(global_sections(G), to_finite(c2_cat()))
    T = sheafify_constant(to_finite(terminal_cat()), discrete_two_point())
    assert global_sections(T).n == 1


def test_unit_is_isomorphism_on_connected_spaces():
    for space in (sierpinski(), pseudocircle_base()):
        for cat in pool8():
            cert = unit_check(to_finite(cat), space)
            assert isinstance(cert, IsoCertificate), (space, cat.objects)
            assert cert.verify()


def test_unit_fails_on_the_discrete_space():
    r = unit_check(discrete2_fin(), discrete_two_point())
    assert isinstance(r, UnitFailure)
    assert not r
    assert r.reason == "object_count"
    assert r.witness == (2, 4)


def test_unit_degenerate_point_survives_disconnection():
    assert isinstance(
        unit_check(to_finite(terminal_cat()), discrete_two_point()), IsoCertificate
    )


def test_exotic_map_is_not_in_the_constant_image():
    xi, verdict = exotic_map_demo()
    assert xi.validate()
    assert verdict is False


def test_exotic_positive_controls():
    for variant in ("identity", "constant"):
        xi, verdict = exotic_map_demo(variant)
        assert xi.validate()
        assert verdict is True


def test_exotic_rejects_unknown_variant():
    with pytest.raises(CatError):
        exotic_map_demo("mystery")


def per_point_map(F, per_point):
    """Assemble the sheaf endomap acting by per_point[p] over each point."""
    comps = {}
    for u in F.space.opens:
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
            gen_map[i] = meta.mor_ix[tuple(f.apply_mor(m) for f, m in zip(assign, t))]
        comps[u] = Functor(F.values[u], F.values[u], obj_map, gen_map)
    return SheafMap(F, F, comps)


def test_constant_image_agrees_with_pointwise_oracle():
    """Over a discrete base, a per-point family is a single sheafified
    functor exactly when both points carry the same endofunctor."""
    d2 = discrete2_fin()
    F = sheafify_constant(d2, discrete_two_point())
    endos = [
        Functor(d2, d2, {"x": ox, "y": oy}, {})
        for ox in ("x", "y")
        for oy in ("x", "y")
    ]
    for fu, fv in itertools.product(endos, repeat=2):
        m = per_point_map(F, {"u": fu, "v": fv})
        assert m.validate()
        assert is_in_constant_image(m) == (fu.object_map == fv.object_map)


def test_constant_image_over_a_point_recovers_the_functor():
    space = FiniteSpace(["p"], [[], ["p"]])
    d2 = discrete2_fin()
    F = sheafify_constant(d2, space)
    swap = Functor(d2, d2, {"x": "y", "y": "x"}, {})
    m = sheafify_functor(swap, F, F)
    assert is_in_constant_image(m)


def test_constant_image_rejects_plain_presheaves():
    space = sierpinski()
    pre = constantify(discrete2_fin(), space)
    ident = {
        u: Functor(
            pre.values[u],
            pre.values[u],
            {x: x for x in pre.values[u].objects},
            {},
        )
        for u in space.opens
    }
    with pytest.raises(CatError):
        is_in_constant_image(SheafMap(pre, pre, ident))


def test_sheaf_map_naturality_is_enforced():
    d2 = discrete2_fin()
    F = sheafify_constant(d2, sierpinski())
    ident = Functor(d2, d2, {"x": "x", "y": "y"}, {})
    swap = Functor(d2, d2, {"x": "y", "y": "x"}, {})
    m = sheafify_functor(ident, F, F)
    full = frozenset(["u", "v"])
    broken = dict(m.components)
    broken[full] = sheafify_functor(swap, F, F).components[full]
    with pytest.raises(CatError):
        SheafMap(F, F, broken).validate()


def test_sheafified_equivalence_is_equivalence_at_every_open():
    pseudo = pseudocircle_base()
    ch2 = to_finite(chaotic(["p", "q"]))
    one = to_finite(terminal_cat())
    g = Functor(
        ch2,
        one,
        {"p": "pt", "q": "pt"},
        {i: 0 for i in range(ch2.n) if not ch2.is_identity(i)},
    )
    FS = sheafify_constant(ch2, pseudo)
    FT = sheafify_constant(one, pseudo)
    m = sheafify_functor(g, FS, FT)
    assert m.validate()
    for u in pseudo.opens:
        assert is_equivalence(m.components[u])


def test_spheres_stay_spheres_at_connected_opens():
    s0 = to_finite(sphere(0))
    for space in (sierpinski(), pseudocircle_base()):
        F = sheafify_constant(s0, space)
        for u in space.opens:
            if not u:
                continue
            if len(connected_components(space, u)) == 1:
                assert find_isomorphism(F.value(u), s0)
    # the two-component open carries the product instead
    pseudo = pseudocircle_base()
    F = sheafify_constant(s0, pseudo)
    assert len(F.value(["a", "b"]).objects) == 4
    s2 = to_finite(sphere(2), bound=4)
    G = sheafify_constant(s2, pseudocircle_base())
    assert all(G.value(u).n == 1 for u in G.space.opens if u)


def hand_built_non_constant_presheaf():
    sier = sierpinski()
    c2f = to_finite(c2_cat())
    onef = to_finite(terminal_cat())
    e, u, full = frozenset(), frozenset(["u"]), sier.full
    ident_c2 = Functor(c2f, c2f, {"x": "x"}, {1: 1})
    one_id = Functor(onef, onef, {"pt": "pt"}, {})
    values = {full: onef, u: c2f, e: onef}
    restrictions = {
        (full, full): one_id,
        (u, u): ident_c2,
        (e, e): one_id,
        (full, u): Functor(onef, c2f, {"pt": "x"}, {}),
        (full, e): one_id,
        (u, e): Functor(c2f, onef, {"x": "pt"}, {1: 0}),
    }
    return CatPresheaf(sier, values, restrictions)


def test_classify_six_cases():
    sier = sierpinski()
    cw_bases = [c2_cat(), c3_cat(), sphere(0), terminal_cat()]
    for cat in cw_bases:
        v = classify_cw_sheaf(sheafify_constant(to_finite(cat), sier))
        assert v.kind == "CW" and bool(v)
    v = classify_cw_sheaf(sheafify_constant(to_finite(arrow_cat()), sier))
    assert v.kind == "NotCW"
    assert v.witness[0] == "not_groupoid"
    hand = hand_built_non_constant_presheaf()
    assert hand.validate()
    v = classify_cw_sheaf(hand)
    assert v.kind == "NotCW"
    assert v.witness == ("open", ["u"])


def test_classify_requires_connected_base():
    F = sheafify_constant(discrete2_fin(), discrete_two_point())
    with pytest.raises(NotConnected):
        classify_cw_sheaf(F)
