import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fusionkit import pcgroup
from fusionkit.errors import InconsistentPresentation, NotAutomorphism, TooLarge
from fusionkit.pcgroup import PcPresentation


@pytest.fixture(scope="module")
def sylows():
    return {k: pcgroup.builtin_sylow(k) for k in pcgroup.SYLOW_KINDS}


def names(group, sub):
    return sorted(group.format(g) for g in sub.generators)


# ---- building -----------------------------------------------------------------------

def test_single_generator_is_c2():
    g = pcgroup.build_presented_group(PcPresentation(("g",)))
    assert g.order == 2 and g.mul(1, 1) == 0


@pytest.mark.parametrize("kind,order", [("L34", 64), ("L34_f", 128), ("L34_u", 128), ("L34_fu", 256)])
def test_builtin_orders(sylows, kind, order):
    assert sylows[kind].order == order


def test_t0_relations_hold_verbatim(sylows):
    for kind, g in sylows.items():
        w = g.word
        for (x, y), rhs in pcgroup.l34_relations(kind)[1].items():
            assert g.comm(w(x), w(y)) == w(rhs), (kind, x, y)
        for s in g.names:
            assert g.mul(w(s), w(s)) == 0
        assert g.comm(w("a1"), w("a2")) == 0 and g.comm(w("b1"), w("b2")) == 0


def test_fu_commute(sylows):
    g = sylows["L34_fu"]
    assert g.comm(g.word("f"), g.word("u")) == 0


@pytest.mark.parametrize("kind,autos", [
    ("L34", []),
    ("L34_f", [oracles.field_aut]),
    ("L34_u", [lambda p: oracles.field_aut(oracles.graph_aut(p))]),
    ("L34_fu", [oracles.field_aut, oracles.graph_aut]),
])
def test_matches_unitriangular_model(sylows, kind, autos):
    # independent model: UT3(4) extended by field / graph automorphisms
    elts, mul, e = oracles.semidirect(autos)
    g = sylows[kind]
    assert oracles.order_statistics(range(g.order), g.mul, 0) == oracles.order_statistics(elts, mul, e)
    assert oracles.center_size(elts, mul) == pcgroup.center(g).order


def test_model_automorphisms_commute():
    for p in oracles.ut_elements():
        assert oracles.field_aut(oracles.graph_aut(p)) == oracles.graph_aut(oracles.field_aut(p))


def test_group_axioms_exhaustive(sylows):
    for g in sylows.values():
        idx = np.arange(g.order)
        assert np.array_equal(g.table[0], idx) and np.array_equal(g.table[:, 0], idx)
        assert np.all(g.table[idx, g.inverse] == 0)


def test_associativity_sample(sylows):
    rng = random.Random(0)
    for g in sylows.values():
        for _ in range(10_000):
            a, b, c = (rng.randrange(g.order) for _ in range(3))
            assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_inconsistent_presentation_rejected():
    # b^2 = a but conjugation by b kills a
    pres = PcPresentation(("a", "b"), {"b": ("a",)}, {("b", "a"): ("a",)})
    with pytest.raises(InconsistentPresentation):
        pcgroup.build_presented_group(pres)


def test_inconsistent_square_not_fixed():
    # conjugation by c swaps a and b but c^2 = a is not fixed by it
    pres = PcPresentation(("a", "b", "c"), {"c": ("a",)}, {("c", "a"): ("a", "b"), ("c", "b"): ("a", "b")})
    with pytest.raises(InconsistentPresentation):
        pcgroup.build_presented_group(pres)


def test_badly_ordered_relation_rejected():
    with pytest.raises(ValueError):
        pcgroup.build_presented_group(PcPresentation(("a", "b"), {"a": ("b",)}))


def test_json_round_trip(sylows):
    pres = pcgroup.l34_presentation("L34_fu")
    again = PcPresentation.from_json(__import__("json").dumps(pres.to_dict()))
    g = pcgroup.build_presented_group(again)
    assert np.array_equal(g.table, sylows["L34_fu"].table)


def test_json_format_example():
    data = {"generators": ["c1", "c0"], "powers": {"c0": "c1"}, "commutators": {}}
    g = pcgroup.build_presented_group(PcPresentation.from_dict(data))
    assert g.order == 4 and g.exponent() == 4


# ---- characteristic subgroups -------------------------------------------------------

def test_center_t0(sylows):
    g = sylows["L34"]
    z = pcgroup.characteristic_subgroup(g, "center")
    assert z == g.subgroup(["t1", "t2"]) and z.order == 4


@pytest.mark.parametrize("kind", ["L34_f", "L34_u", "L34_fu"])
def test_center_extensions(sylows, kind):
    g = sylows[kind]
    z = pcgroup.characteristic_subgroup(g, "center")
    assert z == g.subgroup(["t1"]) and z.order == 2


def test_agemo_elementary_abelian_trivial():
    e = pcgroup.elementary_abelian(3)
    assert pcgroup.characteristic_subgroup(e, "agemo1").order == 1


def test_characteristic_t0_values(sylows):
    g = sylows["L34"]
    zt = g.subgroup(["t1", "t2"])
    assert pcgroup.characteristic_subgroup(g, "derived") == zt
    assert pcgroup.characteristic_subgroup(g, "agemo1") == zt
    assert pcgroup.characteristic_subgroup(g, "frattini") == zt
    assert pcgroup.characteristic_subgroup(g, "omega1") == g.whole()


def test_unknown_kind():
    with pytest.raises(ValueError):
        pcgroup.characteristic_subgroup(pcgroup.cyclic(2), "socle")


@pytest.mark.parametrize("kind", pcgroup.SYLOW_KINDS)
def test_frattini_is_derived_times_agemo(sylows, kind):
    g = sylows[kind]
    d = pcgroup.derived_subgroup(g)
    a = pcgroup.agemo1(g)
    assert pcgroup.frattini(g) == g.subgroup(list(d.generators) + list(a.generators))


@pytest.mark.parametrize("kind", pcgroup.SYLOW_KINDS)
def test_omega1_of_center_inside_center(sylows, kind):
    g = sylows[kind]
    z = pcgroup.center(g)
    om = g.subgroup([x for x in z.elements if x and g.mul(x, x) == 0])
    assert om <= z


# ---- elementary abelian subgroups and J ---------------------------------------------

@pytest.mark.parametrize("kind", pcgroup.SYLOW_KINDS)
def test_max_elementary_abelians(sylows, kind):
    g = sylows[kind]
    maxes = pcgroup.max_elementary_abelians(g)
    f1 = g.subgroup(["t1", "t2", "a1", "a2"])
    f2 = g.subgroup(["t1", "t2", "b1", "b2"])
    assert set(maxes) == {f1, f2}
    assert all(m.order == 16 for m in maxes)
    t0 = g.subgroup(["t1", "t2", "a1", "a2", "b1", "b2"])
    assert pcgroup.thompson_subgroup(g) == t0
    assert all(m <= t0 for m in maxes)
    assert pcgroup.two_rank(g) == 4


def test_max_elementary_abelian_c2():
    g = pcgroup.cyclic(2)
    assert pcgroup.max_elementary_abelians(g) == [g.whole()]


def test_thompson_abelian_and_quaternion():
    e = pcgroup.elementary_abelian(3)
    assert pcgroup.thompson_subgroup(e) == e.whole()
    q = pcgroup.quaternion(8)
    j = pcgroup.thompson_subgroup(q)
    assert j.order == 2 and j == pcgroup.center(q)


# ---- direct products ---------------------------------------------------------------

def test_c2_times_t1(sylows):
    g = pcgroup.direct_product(pcgroup.cyclic(2, "x"), sylows["L34_f"])
    assert g.order == 256
    z = pcgroup.center(g)
    assert z.order == 4 and z == g.subgroup(["x0", "t1"])
    assert pcgroup.two_rank(g) == 5


@pytest.mark.parametrize("kind", ["L34_f", "L34_u", "L34_fu"])
def test_two_ranks(sylows, kind):
    assert pcgroup.two_rank(sylows[kind]) == 4


def test_c2_times_c2():
    g = pcgroup.direct_product(pcgroup.cyclic(2), pcgroup.cyclic(2))
    assert g.order == 4 and pcgroup.isomorphism_type_small(g) == "elementary"


def test_c4_times_t0_agemo(sylows):
    # agemo1(C4 x T0) = agemo1(C4) x agemo1(T0) has order 2 * 4
    g = pcgroup.direct_product(pcgroup.cyclic(4), sylows["L34"])
    assert g.order == 256
    assert pcgroup.agemo1(g).order == 8
    ut = oracles.ut_elements()
    assert oracles.squares_subgroup_size(ut, oracles.ut_mul, (0, 0, 0)) == 4


def test_direct_product_too_large(sylows):
    with pytest.raises(TooLarge):
        pcgroup.direct_product(sylows["L34_fu"], sylows["L34"])


# ---- local subgroups ---------------------------------------------------------------

def test_centralizer_of_t0_in_t1(sylows):
    g = sylows["L34_f"]
    t0 = g.subgroup(["t1", "t2", "a1", "a2", "b1", "b2"])
    c = pcgroup.local_subgroup(g, t0, "centralizer")
    # Z(T0) centralizes T0 even though f only fixes t1
    assert c == g.subgroup(["t1", "t2"])
    assert pcgroup.center(g) <= c and pcgroup.center(g) != c


def test_normalizer_of_whole(sylows):
    g = sylows["L34_u"]
    assert pcgroup.local_subgroup(g, g.whole(), "normalizer") == g.whole()


def test_centralizer_in_x_times_t0(sylows):
    g = pcgroup.direct_product(pcgroup.cyclic(2, "x"), sylows["L34"])
    t0 = g.subgroup(["t1", "t2", "a1", "a2", "b1", "b2"])
    c = pcgroup.local_subgroup(g, t0, "centralizer")
    assert c == g.subgroup(["x0", "t1", "t2"])


# ---- automorphisms and involution classes ------------------------------------------

def test_inner_classes_t0(sylows):
    g = sylows["L34"]
    classes = pcgroup.involution_classes_under(g, [])
    w = g.word
    for s in ("t1", "t2", "t1*t2"):
        assert frozenset([w(s)]) in classes
    # a non-central involution x has class x * [x, T0], a coset of Z(T0)
    assert sorted(len(c) for c in classes) == [1, 1, 1] + [4] * 6
    assert sum(len(c) for c in classes) == 27


def test_gl22_on_rank2_single_orbit():
    e = pcgroup.elementary_abelian(2)
    autos = []
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            if a != b:
                autos.append(pcgroup.automorphism_from_images(e, [a, b]))
    assert len(autos) == 6
    assert pcgroup.involution_classes_under(e, autos) == [frozenset({1, 2, 3})]


def test_bad_automorphism_rejected(sylows):
    g = sylows["L34"]
    with pytest.raises(NotAutomorphism):
        pcgroup.involution_classes_under(g, [[0] * g.order])
    bad = list(range(g.order))
    bad[1], bad[4] = bad[4], bad[1]  # swap t1 and a1
    with pytest.raises(NotAutomorphism):
        pcgroup.check_automorphism(g, bad)


def test_max_elementary_abelians_closed_under_automorphisms(sylows):
    from fusionkit.verify import order3_center_automorphism

    g = sylows["L34"]
    rho = order3_center_automorphism(g)
    maxes = set(pcgroup.max_elementary_abelians(g))
    autos = [rho] + [pcgroup.inner_automorphism(g, x) for x in g.generators]
    for a in autos:
        assert {g.subgroup_from_elements(a[x] for x in m.elements) for m in maxes} == maxes


@given(st.integers(0, 63), st.integers(0, 63))
@settings(max_examples=60, deadline=None)
def test_inner_automorphisms_are_automorphisms(x, y):
    g = pcgroup.builtin_sylow("L34")
    a = pcgroup.inner_automorphism(g, x)
    pcgroup.check_automorphism(g, a)
    assert a[g.mul(x, y)] == g.mul(a[x], a[y])


# ---- small isomorphism types -------------------------------------------------------

@pytest.mark.parametrize("group,tag", [
    (lambda: pcgroup.dihedral(16), "dihedral"),
    (lambda: pcgroup.dihedral(8), "dihedral"),
    (lambda: pcgroup.semidihedral(16), "semidihedral"),
    (lambda: pcgroup.quaternion(8), "quaternion"),
    (lambda: pcgroup.quaternion(16), "quaternion"),
    (lambda: pcgroup.cyclic(8), "cyclic"),
    (lambda: pcgroup.elementary_abelian(4), "elementary"),
    (lambda: pcgroup.direct_product(pcgroup.cyclic(4), pcgroup.cyclic(4, "d")), "homocyclic"),
    (lambda: pcgroup.direct_product(pcgroup.cyclic(4), pcgroup.cyclic(2, "d")), "other"),
])
def test_isomorphism_type_small(group, tag):
    assert pcgroup.isomorphism_type_small(group()) == tag


def test_semidihedral_relation():
    g = pcgroup.semidihedral(16)
    r, s = g.word("r0"), g.word("s")
    r3 = g.mul(g.mul(r, r), r)
    assert g.element_order(r) == 8 and g.conj(r, s) == r3


def test_isomorphism_type_too_large(sylows):
    with pytest.raises(TooLarge):
        pcgroup.isomorphism_type_small(sylows["L34"])


def test_trivial_group():
    g = pcgroup.build_presented_group(PcPresentation(()))
    assert g.order == 1
    assert pcgroup.center(g).order == 1
    assert pcgroup.thompson_subgroup(g).order == 1
