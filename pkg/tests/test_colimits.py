"""Coproducts, pushouts (with a brute-force universal-property oracle),
chaotic categories, and cofibrant replacement."""

import pytest

from catcw import (
    EmptySet,
    Functor,
    Path,
    chaotic,
    check_functor,
    cofibrant_replacement,
    compose_functors,
    coproduct,
    functors_equal,
    irreducible_words,
    is_cofibration,
    is_contractible,
    is_equivalence,
    one_sided_homotopy_pushout,
    pushout,
    sphere,
    to_finite,
)
from conftest import (
    arrow_cat,
    assert_universal_property,
    c2_cat,
    discrete2,
    finite_form,
    interval_cat,
    span_pool,
    terminal_cat,
)


def test_coproduct_prefixes_and_injections():
    res = coproduct([terminal_cat(), arrow_cat()])
    assert res.apex.objects == ("0.pt", "1.a", "1.b")
    assert [g.name for g in res.apex.generators] == ["1.f"]
    for inj in res.injections:
        assert check_functor(inj)
        assert is_cofibration(inj)


def test_empty_coproduct_is_the_empty_category():
    res = coproduct([])
    assert res.apex.objects == ()
    assert res.injections == ()


def test_coproduct_keeps_inverses():
    res = coproduct([c2_cat(), interval_cat()])
    assert res.apex.inverses == {"0.t": "0.t", "1.f": "1.f^-1", "1.f^-1": "1.f"}


def test_chaotic_needs_an_object():
    with pytest.raises(EmptySet):
        chaotic([])


def test_chaotic_is_contractible():
    for k in (1, 2, 3, 4):
        ch = chaotic([f"p{i}" for i in range(k)])
        assert is_contractible(ch)
        assert to_finite(ch).n == k * k


def test_pushout_square_commutes():
    for f, g in span_pool():
        po = pushout(f, g)
        assert po.verify()
        assert check_functor(po.inj_left) and check_functor(po.inj_right)


def test_pushout_glues_objects_to_earliest_representative():
    a2 = discrete2()
    one = terminal_cat()
    ident = Functor(a2, a2, {"x": "x", "y": "y"}, {})
    squash = Functor(a2, one, {"x": "pt", "y": "pt"}, {})
    po = pushout(ident, squash)
    assert len(po.apex.objects) == 1
    # left copy is declared first, so the representative carries its prefix
    assert po.apex.objects[0] == "L.x"
    assert po.inj_right.apply_obj("pt") == "L.x"


def test_circle_from_two_arcs():
    """Gluing two invertible arcs along both endpoints gives the two-vertex
    circle: loops are powers of going around (reduced words of even length,
    so 11 forms of length <= 10), and the two hom-sets between distinct
    vertices hold the odd-length words (10 forms of length <= 10 each)."""
    s0 = sphere(0)
    emb1 = Functor(s0, interval_cat(), {"0.pt": "a", "1.pt": "b"}, {})
    emb2 = Functor(s0, interval_cat(), {"0.pt": "a", "1.pt": "b"}, {})
    po = pushout(emb1, emb2)
    assert po.apex.objects == ("L.a", "L.b")
    assert len(po.apex.generators) == 4
    words = irreducible_words(po.apex, 10)
    assert len(words[("L.a", "L.a")]) == 11
    assert len(words[("L.b", "L.b")]) == 11
    assert len(words[("L.a", "L.b")]) == 10
    assert len(words[("L.b", "L.a")]) == 10


def test_pushout_universal_property_sample():
    targets = [to_finite(c) for c in (terminal_cat(), interval_cat(), c2_cat())]
    total = 0
    for f, g in span_pool()[:4]:
        po = pushout(f, g)
        for T in targets:
            total += assert_universal_property(po, f, g, T)
    assert total > 0


# ---------------------------------------------------------------------------
# Cofibrant replacement


def test_replacement_discrete_target():
    s0 = sphere(0)
    one = terminal_cat()
    g = Functor(s0, one, {"0.pt": "pt", "1.pt": "pt"}, {})
    incl, proj = cofibrant_replacement(g)
    assert is_cofibration(incl)
    assert functors_equal(compose_functors(incl, proj), g)
    assert is_equivalence(finite_form(proj))


def test_replacement_discrete_target_keeps_empty_fiber():
    one = terminal_cat()
    a2 = discrete2()
    g = Functor(one, a2, {"pt": "x"}, {})
    incl, proj = cofibrant_replacement(g)
    # the fiber over y is empty: the cylinder keeps a bare point for it
    assert len(incl.target.objects) == 2
    assert functors_equal(compose_functors(incl, proj), g)
    assert is_equivalence(finite_form(proj))


def test_replacement_general_target_is_mapping_cylinder():
    one = terminal_cat()
    c2 = c2_cat()
    g = Functor(one, c2, {"pt": "x"}, {})
    incl, proj = cofibrant_replacement(g)
    assert is_cofibration(incl)
    assert functors_equal(compose_functors(incl, proj), g)
    assert is_equivalence(finite_form(proj))


def test_one_sided_homotopy_pushout_circle():
    """Collapsing both points of the two-point discrete category through the
    homotopy pushout gives the free invertible loop, not the bare point."""
    s0 = sphere(0)
    one = terminal_cat()
    collapse = Functor(s0, one, {"0.pt": "pt", "1.pt": "pt"}, {})
    po = one_sided_homotopy_pushout(collapse, collapse)
    assert len(po.apex.objects) == 1
    x = po.apex.objects[0]
    words = irreducible_words(po.apex, 10)
    assert len(words[(x, x)]) == 21
