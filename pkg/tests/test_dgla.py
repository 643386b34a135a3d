import itertools

import pytest

from mclie.linalg import QQ, GradedElement
from mclie.dgla import (
    NotMaurerCartan,
    NotNilpotent,
    abelian_dgla,
    adjoin_mc_variable,
    connected_cover,
    disjoint_product,
    dgla_from_table,
    f_xa_dgla,
    free_product_dgla,
    g_s_dgla,
    gauge_act,
    heisenberg_dgla,
    homology_stability,
    is_mc,
    mc_residual,
    presentation_of,
    sphere_dgla,
    twist,
    zero_dgla,
)
from mclie.freelie import bch


def test_sphere_basis_and_homology():
    s = sphere_dgla()
    assert s.space.labels(-1) == ("x",)
    assert s.space.labels(-2) == ("[x,x]",)
    h = s.homology()
    assert all(h.dim(n) == 0 for n in (-2, -1))


def test_sphere_mc_set_is_zero_and_x():
    # lambda x is MC iff -lambda/2 + lambda^2/2 = 0, i.e. lambda in {0, 1}
    s = sphere_dgla()
    x = s.element("x")
    for lam in (QQ(0), QQ(1)):
        ok, _ = is_mc(s, x.scale(lam))
        assert ok
    for lam in (QQ(2), QQ(-1), QQ(1, 2)):
        ok, _ = is_mc(s, x.scale(lam))
        assert not ok


def test_is_mc_examples():
    s = sphere_dgla()
    ok, res = is_mc(s, GradedElement())
    assert ok and res.is_zero()
    x = s.element("x")
    ok, _ = is_mc(s, x)
    assert ok
    ok, res = is_mc(s, x.scale(2))
    # residual: d(2x) + 1/2 [2x,2x] = -[x,x] + 2[x,x] = [x,x]
    assert not ok
    assert res == GradedElement({(-2, "[x,x]"): QQ(1)})


def test_twist_by_zero_is_identity():
    s = sphere_dgla()
    t = twist(s, GradedElement())
    for n in s.space.degrees():
        assert t.d_map.block(n) == s.d_map.block(n)


def test_twist_requires_mc():
    s = sphere_dgla()
    with pytest.raises(NotMaurerCartan):
        twist(s, s.element("x").scale(2))


def test_twist_twice_recovers():
    # twisting by xi then by -xi (MC in the twisted algebra) recovers d
    s = f_xa_dgla(3)
    x = s.element("x")
    t = twist(s, x)
    ok, _ = is_mc(t, -x)
    assert ok
    back = twist(t, -x)
    for n in s.space.degrees():
        assert back.d_map.block(n) == s.d_map.block(n)


def test_mc_bijection_under_twist():
    # eta in MC(g) iff eta - xi in MC(g^xi), sampled over small elements
    g = f_xa_dgla(4)
    x = g.element("x")
    t = twist(g, x)
    candidates = []
    for c1 in (QQ(0), QQ(1), QQ(-1)):
        for (d, lab) in [(-1, lab) for lab in g.space.labels(-1)][:3]:
            candidates.append(GradedElement({(-1, lab): c1}))
    for eta in candidates:
        ok1, _ = is_mc(g, eta)
        ok2, _ = is_mc(t, eta - x)
        assert ok1 == ok2


def test_adjoin_mc_variable_to_zero_is_sphere():
    g = adjoin_mc_variable(zero_dgla(), 2)
    s = sphere_dgla()
    assert g.space.basis == s.space.basis
    for n in g.space.degrees():
        assert g.d_map.block(n) == s.d_map.block(n)


def test_adjoin_mc_variable_to_line_is_f():
    line = abelian_dgla({0: ["a"]})
    g = adjoin_mc_variable(line, 4)
    f = f_xa_dgla(4)
    assert g.space.basis == f.space.basis
    x = g.element("x")
    ok, _ = is_mc(g, x)
    assert ok
    assert g.d(g.element("a")).is_zero()


def test_disjoint_product_with_zero_acyclic():
    # g u 0 is acyclic in degrees stable between m and m+1
    for g in (abelian_dgla({0: ["a"]}), heisenberg_dgla()):
        gu0 = disjoint_product(g, zero_dgla(), 4)
        flags = homology_stability(gu0, 4)
        assert any(v["stable"] for v in flags.values())
        for n, v in flags.items():
            if v["stable"]:
                assert v["dim"] == 0, "H_%d nonzero: %r" % (n, flags)


def test_disjoint_product_quasi_iso_to_h():
    # g u h is quasi-isomorphic to h: stabilized homology equals H(h)
    g = abelian_dgla({0: ["a"]})
    h = abelian_dgla({1: ["b"]})
    guh = disjoint_product(g, h, 4)
    flags = homology_stability(guh, 4)
    hh = h.homology()
    for n, v in flags.items():
        if v["stable"]:
            assert v["dim"] == hh.dim(n)


def test_disjoint_product_distinguished_mc():
    g = abelian_dgla({0: ["a"]})
    guh = disjoint_product(g, zero_dgla(), 3)
    ok, _ = is_mc(guh, guh.distinguished_mc)
    assert ok


def test_disjoint_product_associativity_jarka():
    # (g u h) u a ~ g u (h u a) by f fixing g,h,a, f(x) = x' + y', f(y) = y'
    ga = abelian_dgla({0: ["p"]})
    hb = abelian_dgla({0: ["q"]})
    ac = abelian_dgla({0: ["r"]})
    m = 3
    left = disjoint_product(disjoint_product(ga, hb, m), ac, m)   # ((g u h) u a)
    right = disjoint_product(ga, disjoint_product(hb, ac, m), m)  # (g u (h u a))
    # in 'right' the outer variable is x (g's), the inner is x' (h's);
    # in 'left' the inner is x (g's), the outer is x' (a's side)
    f_gen = {"p": "p", "q": "q", "r": "r", "x": None, "x'": None}
    x_right = right.element("x")
    y_right = right.element("x'")
    x_left = left.element("x")     # g's variable in (g u h)
    y_left = left.element("x'")    # outer variable
    images = {"p": left.element("p"), "q": left.element("q"), "r": left.element("r"),
              "x": x_left + y_left, "x'": y_left}

    def push(elt):
        # extend images to brackets of generators by multiplicativity
        out = GradedElement()
        for (d, lab), c in elt.coeffs.items():
            out = out + _push_label(right, left, images, lab).scale(c)
        return out

    def _push_label(src, dst, images, lab):
        tree = src.presentation.pres  # not used; expand via free structure
        raise NotImplementedError

    # check d-compatibility on the generators directly: f(d u) = d f(u)
    for name in ("p", "q", "r", "x", "x'"):
        u = right.element(name)
        du = right.d(u)
        # expand du over generators and brackets: verify by re-deriving both
        # sides inside 'left' using the generator images
        fu = images[name]
        dfu = left.d(fu)
        fdu = _map_element(right, left, images, du)
        assert (dfu - fdu).is_zero(), name


def _map_element(src, dst, images, elt):
    """Push an element along a map given on generators, using the free-Lie
    label structure of the source quotient."""
    free = src.presentation.pres
    out = GradedElement()
    for (d, lab), c in elt.coeffs.items():
        out = out + _map_label(src, dst, images, lab).scale(c)
    return out


def _map_label(src, dst, images, lab):
    if lab in images:
        return images[lab]
    # lab is a bracket label [u,v]; decompose via the source's tree
    # structure
    q = _quotient_of(src)
    tree = q.free.tree_of_label[lab]
    t1, t2 = tree
    l1 = q.free.label_of_tree[t1]
    l2 = q.free.label_of_tree[t2]
    return dst.bracket(_map_label(src, dst, images, l1),
                       _map_label(src, dst, images, l2))


def _quotient_of(g):
    # re-materialize to access the quotient structure
    return g.presentation.pres.materialize(g.weight_bound)


def test_iterated_disjoint_products_of_zero_match_g_s():
    # g_{*} ~ 0 u 0: map x1 -> -x intertwines the differentials
    g1 = g_s_dgla(1, 3)
    z2 = disjoint_product(zero_dgla(), zero_dgla(), 3)
    images = {"x1": -z2.element("x")}
    for name in ("x1",):
        u = g1.element(name)
        assert (_map_element(g1, z2, images, g1.d(u)) - z2.d(images[name])).is_zero()


def test_connected_cover_nonnegative_unchanged():
    g = heisenberg_dgla()
    cover, incl = connected_cover(g)
    assert cover.space.total_dim() == 3
    hc, hg = cover.homology(), g.homology()
    for n in hg.degrees():
        if n >= 0:
            assert hc.dim(n) == hg.dim(n)


def test_connected_cover_of_sphere_is_zero():
    s = sphere_dgla()
    cover, _ = connected_cover(s)
    assert cover.space.total_dim() == 0


def test_connected_cover_homology_iso_nonneg():
    # mixed-degree abelian dgla with nontrivial d
    g = abelian_dgla({1: ["u"], 0: ["v", "w"], -1: ["z"]},
                     {"v": GradedElement({(-1, "z"): QQ(1)})})
    cover, incl = connected_cover(g)
    hg, hc = g.homology(), cover.homology()
    for n in (0, 1, 2):
        assert hc.dim(n) == hg.dim(n)


def test_gauge_act_zero_parameter():
    s = sphere_dgla()
    x = s.element("x")
    assert gauge_act(s, GradedElement(), x) == x


def test_gauge_act_exponential_orbit_in_f():
    # exp(a).e0 = sum e_k / k! within the truncation
    m = 5
    g = f_xa_dgla(m)
    a = g.element("a")
    x = g.element("x")
    out = gauge_act(g, a, x)
    e = [x]
    labels = ["x"]
    for k in range(1, m):
        e.append(g.bracket(a, e[-1]))
    expected = GradedElement()
    fact = QQ(1)
    for k, ek in enumerate(e):
        if k:
            fact *= k
        expected = expected + ek.scale(QQ(1) / fact)
    assert out == expected


def test_gauge_act_abelian_is_translation():
    g = abelian_dgla({0: ["a"], -1: ["u"], -2: ["w"]},
                     {"a": GradedElement({(-1, "u"): QQ(1)})})
    xi = GradedElement()
    out = gauge_act(g, g.element("a").scale(QQ(3)), xi)
    assert out == GradedElement({(-1, "u"): QQ(-3)})


def test_gauge_group_property_bch():
    # gauge(a, gauge(b, xi)) = gauge(BCH(a,b), xi) within the truncation
    m = 4
    g = f_xa_dgla(m)
    q = g.presentation.pres.materialize(m)
    a = g.element("a")
    x = g.element("x")
    one_step = gauge_act(g, a.scale(QQ(1, 2)), gauge_act(g, a.scale(QQ(1, 3)), x))
    z = bch(q.free, a.scale(QQ(1, 2)), a.scale(QQ(1, 3)))
    combined = gauge_act(g, q.project(z), x)
    assert one_step == combined


def test_gauge_preserves_mc_exactly():
    g = f_xa_dgla(4)
    x = g.element("x")
    out = gauge_act(g, g.element("a"), x)
    ok, res = is_mc(g, out)
    assert ok and res.is_zero()


def test_free_product_dgla_dims():
    a = abelian_dgla({0: ["a"]})
    b = abelian_dgla({0: ["b"]})
    p = free_product_dgla(a, b, 2)
    assert p.space.total_dim() == 3


def test_homology_of_f_truncation_stabilized():
    # H(f) should match H(abelian line) + acyclic part in stable degrees
    g = f_xa_dgla(4)
    flags = homology_stability(g, 4)
    line = abelian_dgla({0: ["a"]})
    hl = line.homology()
    for n, v in flags.items():
        if v["stable"]:
            assert v["dim"] == hl.dim(n)


def test_twist_of_adjoined_variable_is_disjoint_with_zero():
    # twist(g<x>, x) has the same differential as g u 0
    line = abelian_dgla({0: ["a"]})
    adjoined = adjoin_mc_variable(line, 3)
    twisted = twist(adjoined, adjoined.element("x"))
    gu0 = disjoint_product(line, zero_dgla(), 3)
    assert twisted.space.basis == gu0.space.basis
    for n in twisted.space.degrees():
        assert twisted.d_map.block(n) == gu0.d_map.block(n)


def test_twisted_disjoint_product_swaps_factors():
    # (g u h)^{-x} = h u g via the identity on g, h and x -> -x
    from mclie.dgla import DglaPresentation
    from mclie.cehar import dgla_map_from_generators
    g = abelian_dgla({0: ["p"]})
    h = abelian_dgla({0: ["q"]})
    m = 3
    guh = disjoint_product(g, h, m)
    ok, _ = is_mc(guh, -guh.twist_of)
    assert ok
    retwisted = DglaPresentation(guh.presentation.pres,
                                 twist=-guh.twist_of).materialize(m)
    hug = disjoint_product(h, g, m)
    images = {"p": hug.element("p"), "q": hug.element("q"),
              "x": -hug.element("x")}
    report = dgla_map_from_generators(retwisted, hug, images)
    report.pop("images")
    assert report == {"d_compatible": True, "dims_match": True,
                      "bijective": True}


def test_gauge_not_nilpotent_error():
    # [a, u] = u makes ad_a non-nilpotent on the MC element u
    u = GradedElement({(-1, "u"): QQ(1)})
    g = dgla_from_table({0: ["a"], -1: ["u"]},
                        {("a", "u"): u, ("u", "u"): GradedElement()},
                        check="full")
    with pytest.raises(NotNilpotent):
        gauge_act(g, g.element("a"), u)


def test_iterated_zeros_match_g_s_two_points():
    # g_{*,*} = free on x1, x2 with dx_i = -1/2 [x_i,x_i] is isomorphic to
    # (0 u 0) u 0 via x1 -> -(x + x'), x2 -> -x'
    from mclie.cehar import dgla_map_from_generators
    m = 3
    src = g_s_dgla(2, m)
    dst = disjoint_product(disjoint_product(zero_dgla(), zero_dgla(), m),
                           zero_dgla(), m)
    x, xp = dst.element("x"), dst.element("x'")
    images = {"x1": -(x + xp), "x2": -xp}
    report = dgla_map_from_generators(src, dst, images)
    report.pop("images")
    assert report == {"d_compatible": True, "dims_match": True,
                      "bijective": True}


def test_gauge_moves_are_invertible():
    # gauge(-a, gauge(a, xi)) returns xi exactly within the truncation
    g = f_xa_dgla(4)
    a = g.element("a").scale(QQ(2, 3))
    x = g.element("x")
    assert gauge_act(g, -a, gauge_act(g, a, x)) == x
