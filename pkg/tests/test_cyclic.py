import pytest

from hochex import cyclic
from hochex.complexes import homology
from hochex.zoo import ground_field, matrix_algebra, standard_zoo, zoo_parse

import derived
import expected

SMALL = [n for n, a in standard_zoo().items() if a.dim <= 4]


@pytest.mark.parametrize("name", SMALL)
def test_mixed_complex_identities(name):
    # b^2 = 0, B^2 = 0, bB + Bb = 0 are checked by verify()
    cyclic.cyclic_operators(standard_zoo()[name], 3).verify()


@pytest.mark.parametrize("name", SMALL)
def test_hc0_equals_hh0(name):
    a = standard_zoo()[name]
    mc = cyclic.cyclic_operators(a, 2)
    hh0 = homology(mc.hochschild(), 0, 0, warn=False).betti(0)
    assert cyclic.cyclic_homology(a, 0) == hh0


def test_tensor_and_plus_carriers_agree():
    for name in ("q", "jet:1,1", "matrix:2", "trunc:2"):
        a = zoo_parse(name)
        assert cyclic.cyclic_betti(a, 3, "tensor") == cyclic.cyclic_betti(a, 3, "plus")


def test_nonunital_algebra_needs_plus_carriers():
    a = zoo_parse("ideal:corner:1")
    assert cyclic.cyclic_operators(a, 2).carriers == "plus"
    with pytest.raises(ValueError):
        cyclic.cyclic_operators(a, 2, "tensor")


def test_ground_field():
    assert derived.l_cyclic_ranks() == expected.FROZEN["cyclic_q_ranks"]
    assert cyclic.cyclic_betti(ground_field(), 4) == expected.FROZEN["hc_q"]
    assert cyclic.cyclic_homology(matrix_algebra(2), 0) == expected.FROZEN["hc0_M2"]


@pytest.mark.parametrize("name,key", [("q", "sbi_q"), ("jet:1,1", "sbi_jet11")])
def test_sbi(name, key):
    assert derived.l_sbi(name) == expected.FROZEN[key]


def test_sbi_report_dict():
    d = cyclic.sbi_check(ground_field(), 3).to_dict()
    assert d["exact"] and d["HH"]["0"] == 1


def test_hp_q_and_product():
    assert [cyclic.periodic_cyclic(ground_field(), p, 2).value for p in (0, 1)] == expected.FROZEN["hp_q"]
    qq = zoo_parse("product:q,q")
    assert cyclic.periodic_cyclic(qq, "even", 2).value == 2
    assert cyclic.periodic_cyclic(qq, "odd", 2).value == 0


def test_hp_truncated_polynomial():
    assert derived.l_hp("trunc:2") == expected.FROZEN["hp_trunc2"]


def test_unstabilized_is_reported():
    u = cyclic.Unstabilized(0, (3, 2, 1))
    assert not u and str(u) == "unstabilized"
    r = cyclic.PeriodicResult(0, 2, [3, 2, 1], [2, 1], [3, 2, 1], u)
    assert not r.stabilized and r.to_dict()["HP"] == "unstabilized"


def test_argument_checks():
    with pytest.raises(ValueError):
        cyclic.periodic_cyclic(ground_field(), 2, 2)
    with pytest.raises(ValueError):
        cyclic.periodic_cyclic(ground_field(), 0, 1)
    with pytest.raises(ValueError):
        cyclic.sbi_check(ground_field(), 1)


def test_cyclic_report():
    rep = cyclic.cyclic_report(ground_field(), 4, 2)
    assert rep.hc == expected.FROZEN["hc_q"]
    assert rep.to_dict()["HP"]["even"]["HP"] == 1
    # S is an isomorphism HC_n -> HC_(n-2) of lines; the scalar depends on the chosen bases
    for n in (2, 4):
        (x,), = rep.s_maps[n].to_dense()
        assert x != 0
