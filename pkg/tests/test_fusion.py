import pytest

from fusionkit import finite, fusion, perm
from fusionkit.errors import NotInSylow, NotWeaklyClosed
from fusionkit.fusion import FusionSystem
from fusionkit.perm import from_cycles, pconj


@pytest.fixture(scope="module")
def systems():
    return {
        "s4": FusionSystem(perm.symmetric(4)),
        "d8": FusionSystem(perm.dihedral8()),
        "a6": FusionSystem(perm.alternating(6)),
        "l32": FusionSystem(perm.l32()),
    }


@pytest.fixture(scope="module")
def s4(systems):
    return systems["s4"]


def four_group(fs):
    v = [from_cycles(4, [(0, 1), (2, 3)]), from_cycles(4, [(0, 2), (1, 3)])]
    return fs.gen(v)


def is_dihedral8(s):
    s = list(s)
    ident = min(s)
    orders = sorted(finite.element_order(x, perm.pmul, ident) for x in s)
    return orders == [1, 2, 2, 2, 2, 2, 4, 4]


# ---- Sylow ------------------------------------------------------------------

@pytest.mark.parametrize("name,order", [("s4", 8), ("d8", 8), ("a6", 8), ("l32", 8)])
def test_sylow_orders(systems, name, order):
    s = systems[name].S
    assert len(s) == order and is_dihedral8(s)
    g = systems[name].group
    assert (g.order // len(s)) % 2 == 1


def test_sylow_of_wreath():
    g, _ = perm.wreath_square(perm.alternating(6))
    assert len(fusion.sylow2(g)) == 128


def test_sylow_deterministic():
    g = perm.alternating(6)
    assert fusion.sylow2(g) == fusion.sylow2(g)


def test_bad_sylow():
    g = perm.symmetric(4)
    with pytest.raises(ValueError):
        FusionSystem(g, [g.identity])


def test_not_in_sylow(s4):
    outside = [x for x in s4.group.elements if x not in s4.S][0]
    with pytest.raises(NotInSylow):
        s4.hom([s4.identity], [s4.identity, outside])


# ---- hom sets ---------------------------------------------------------------

@pytest.mark.parametrize("name", ["s4", "d8", "a6", "l32"])
def test_hom_oracle(systems, name):
    fs = systems[name]
    subs = fs.subgroups
    for p in subs:
        for q in subs:
            assert fs.hom(p, q) == fs.hom_bruteforce(p, q)


def test_subgroup_count(systems):
    # D8 has 10 subgroups
    assert len(systems["d8"].subgroups) == 10


def test_aut_four_group(s4):
    v = four_group(s4)
    auts = s4.aut(v)
    assert len(auts) == 6
    assert auts == s4.hom_bruteforce(v, v)


def test_center_identity_only(s4):
    z = fusion.center(s4.S)
    assert len(z) == 2
    assert s4.hom(z, z) == {fusion.identity_map(z)}


def test_maps_are_injective(s4):
    for p in s4.subgroups:
        for phi in s4.hom(p, s4.S):
            assert len(fusion.image(phi)) == len(p)


# ---- classification ---------------------------------------------------------

def test_classify_s(systems):
    for fs in systems.values():
        flags = fs.classify(fs.S)
        assert flags["fully_normalized"] and flags["fully_centralized"] and flags["centric"]


def test_classify_four_group(s4):
    flags = s4.classify(four_group(s4))
    assert flags["centric"] and flags["radical"] and flags["weakly_closed"]


def test_noncentral_involution_not_centric(s4):
    v = four_group(s4)
    t = next(x for x in s4.S if x not in v and perm.perm_order(x) == 2)
    p = s4.gen([t])
    assert not s4.classify(p)["centric"]
    assert s4.centralizer_S(p) > p


@pytest.mark.parametrize("name", ["s4", "a6", "l32"])
def test_fully_normalized_reps(systems, name):
    fs = systems[name]
    for cls in fs.subgroup_classes():
        for p in cls:
            alpha, q = fs.find_fully_normalized_rep(p)
            assert fs.is_fully_normalized(q)
            assert fusion.source(alpha) == fs.normalizer_S(p)
            if fs.is_fully_normalized(p):
                assert alpha == fusion.identity_map(fs.normalizer_S(p))
            for q in cls:
                if fs.is_fully_normalized(q):
                    assert fs.find_fully_normalized_rep(p, q)[1] == q


# ---- local subsystems ----------------------------------------------------------

@pytest.mark.parametrize("name", ["s4", "d8", "a6", "l32"])
def test_local_subsystems_match_group_systems(systems, name):
    fs = systems[name]
    for p in fs.subgroups:
        for kind in ("centralizer", "normalizer"):
            assert fs.local_subsystem(p, kind).discrepancies() == []


def test_local_subsystem_carriers(s4):
    view = s4.local_subsystem(s4.S, "normalizer")
    assert view.carrier == s4.S and not view.warning
    z = fusion.center(s4.S)
    assert s4.local_subsystem(z, "centralizer").carrier == s4.S


def test_centralizer_of_involution(s4):
    v = four_group(s4)
    x = next(y for y in fusion.center(s4.S) if y != s4.identity)
    assert x in v
    view = s4.local_subsystem(s4.gen([x]), "centralizer")
    assert view.group_side().order == 8
    assert view.discrepancies() == []


def test_unknown_kind(s4):
    with pytest.raises(ValueError):
        s4.local_subsystem(s4.S, "core")


# ---- cores, Alperin, Burnside --------------------------------------------------

@pytest.mark.parametrize("name,o2,z,constrained", [
    ("s4", 4, 1, True), ("d8", 8, 2, True), ("a6", 1, 1, False), ("l32", 1, 1, False),
])
def test_core_subgroups(systems, name, o2, z, constrained):
    fs = systems[name]
    o2f, zf = fs.core_subgroups()
    assert (len(o2f), len(zf)) == (o2, z)
    assert fs.constrained_check() is constrained
    o2g = finite.largest_normal_p_subgroup(fs.group.elements, perm.pmul, perm.pinv, fs.identity)
    assert o2g <= o2f


def test_two_group_core(systems):
    fs = systems["d8"]
    o2f, zf = fs.core_subgroups()
    assert o2f == fs.S and zf == fusion.center(fs.S)


def test_s4_o2_is_four_group(s4):
    assert s4.core_subgroups()[0] == four_group(s4)


@pytest.mark.parametrize("name", ["s4", "d8", "a6", "l32"])
def test_alperin(systems, name):
    assert systems[name].alperin_generation_check()


def test_abelian_alperin():
    c4 = perm.PermGroup(4, [from_cycles(4, [(0, 1, 2, 3)])])
    fs = FusionSystem(c4)
    assert fs.alperin_generation_check()
    assert fs.alperin_subgroups() == [fs.S]


def test_burnside(s4):
    assert s4.burnside_control_check(s4.S)
    assert s4.burnside_control_check(four_group(s4))


def test_burnside_requires_weak_closure(s4):
    v = four_group(s4)
    t = next(x for x in s4.S if x not in v and perm.perm_order(x) == 2)
    with pytest.raises(NotWeaklyClosed):
        s4.burnside_control_check(s4.gen([t]))


# ---- saturation witnesses --------------------------------------------------------

@pytest.mark.parametrize("name", ["s4", "a6", "l32"])
def test_sylow_condition_and_extension_axiom(systems, name):
    fs = systems[name]
    for p in fs.subgroups:
        w = fs.sylow_condition(p)
        if fs.is_fully_normalized(p):
            assert w["normalizer_odd_index"]
        if fs.is_fully_centralized(p):
            assert w["centralizer_odd_index"]
            for q in fs.conjugacy_class(p):
                for phi in fs.hom(q, p):
                    if fusion.image(phi) == p:
                        assert fs.extension_axiom_instance(phi)


def test_map_helpers(s4):
    v = sorted(four_group(s4))
    g = from_cycles(4, [(0, 1, 2)])
    a = fusion.conj_map(v, g)
    assert fusion.compose(a, fusion.invert(a)) == fusion.identity_map(v)
    x = v[1]
    assert fusion.apply(a, x) == pconj(x, g)
