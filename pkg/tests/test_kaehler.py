import pytest

from hochex import kaehler
from hochex.algebra import regular_bimodule
from hochex.errors import NotCommutative
from hochex.hochschild import hochschild_boundary
from hochex.linalg import SparseMatrix
from hochex.zoo import ground_field, jet_algebra, matrix_algebra, standard_zoo, zoo_parse

import derived
import expected

COMMUTATIVE = [n for n, a in standard_zoo().items() if a.is_commutative() and a.dim <= 6]


def test_omega_zero_is_the_algebra():
    for a in (ground_field(), jet_algebra(1, 2), jet_algebra(2, 1)):
        assert kaehler.kaehler_forms(a, 0).dim == a.dim


def test_omega_one_small_examples():
    assert kaehler.kaehler_forms(ground_field(), 1).dim == 0
    assert kaehler.kaehler_forms(jet_algebra(1, 1), 1).dim == expected.FROZEN["omega1_jet11"]
    assert kaehler.kaehler_forms(jet_algebra(2, 1), 1).dim == expected.FROZEN["omega1_jet21"]


def test_two_presentations_of_omega_one_agree():
    for name in COMMUTATIVE:
        a = standard_zoo()[name]
        assert kaehler.kaehler_one_forms_diagonal(a) == kaehler.kaehler_forms(a, 1).dim


@pytest.mark.parametrize("name", COMMUTATIVE)
def test_hkr_identities(name):
    a = standard_zoo()[name]
    m = regular_bimodule(a)
    for k in range(4):
        if a.dim ** (k + 2) > 5000:
            break
        forms = kaehler.kaehler_forms(a, k)
        j = kaehler.hkr_j(a, k, forms)
        kk = kaehler.hkr_k(a, k, forms)
        assert kk @ j == SparseMatrix.identity(forms.dim)
        if k >= 1:
            assert (hochschild_boundary(a, m, k) @ j).is_zero()
        assert (kk @ hochschild_boundary(a, m, k + 1)).is_zero()


def test_hkr_jet22_degree_two():
    assert derived.l_hkr_jet22_k2() == expected.FROZEN["hkr_jet22_k2"]


def test_not_commutative():
    with pytest.raises(NotCommutative):
        kaehler.kaehler_forms(matrix_algebra(2), 1)
    with pytest.raises(NotCommutative):
        kaehler.kaehler_one_forms_diagonal(zoo_parse("total:corner:1"))


def test_labels_and_dict():
    f = kaehler.kaehler_forms(jet_algebra(1, 1), 1)
    assert len(f.labels()) == f.dim
    assert f.to_dict()["dim"] == f.dim
