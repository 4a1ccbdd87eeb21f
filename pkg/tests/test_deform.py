import pytest

from filiform.catalog import derive_constants
from filiform.degen import deformation_spec, h1_case, h1_derivation, h2_case
from filiform.deform import (
    DeformationSpec,
    NotADerivation,
    NotCodimensionOne,
    build_mu_D,
    build_mu_t,
    jacobi_by_degree,
    verify_solvable_not_nilpotent,
)
from filiform.deriv import IDEAL_H1, IDEAL_H2, IdealSpec
from filiform.lie import LinearMap, jacobi_residuals


@pytest.fixture(scope="module")
def spec73(cat):
    return deformation_spec(derive_constants(cat.row("mu9_8")), h2_case(cat, "7.3", "mu9_8"))


@pytest.fixture(scope="module")
def spec66(cat):
    case = h1_case(cat, "6.6a", "mu9_6")
    return deformation_spec(derive_constants(cat.row("mu9_6")), case), case


def test_zero_D(cat):
    spec = DeformationSpec(derive_constants(cat.row("mu9_8")), IDEAL_H2, 1, LinearMap.zeros(8))
    assert build_mu_D(spec).table == {}


def test_h2_mu_D(spec73):
    mu_D = build_mu_D(spec73)
    assert mu_D.bracket(1, 2) == {2: 2}
    assert mu_D.bracket(2, 3) == {}


def test_h1_mu_D_sign(spec66):
    # outside element -X2: mu_D(X2, X1) = -D(X1) = -d1 X1
    spec, case = spec66
    assert case.outside_coeff == -1
    d1 = h1_derivation(case).entry(1, 1)
    assert d1 != 0
    assert build_mu_D(spec).bracket(2, 1) == {1: -d1}


def test_h1_mu_D_plus(cat):
    case = h1_case(cat, "6.1", "mu9_26")
    spec = deformation_spec(derive_constants(cat.row("mu9_26")), case)
    assert build_mu_D(spec).bracket(2, 1) == {1: case.d1}


def test_cocycle_7_3(spec73):
    mu_t = build_mu_t(spec73)
    assert jacobi_residuals(mu_t) == []
    by_deg = jacobi_by_degree(mu_t)
    assert by_deg[1] == []
    assert all(v == [] for v in by_deg.values())


def test_solvable_not_nilpotent(spec73, spec66):
    spec, _ = spec66
    assert verify_solvable_not_nilpotent(spec, {}, 1)
    assert not verify_solvable_not_nilpotent(spec, {}, 0)
    assert verify_solvable_not_nilpotent(spec73, {}, 1)


def test_rejects_non_derivation(cat):
    D = LinearMap.diagonal_map([1] * 8)
    spec = DeformationSpec(derive_constants(cat.row("mu9_8")), IDEAL_H2, 1, D)
    with pytest.raises(NotADerivation) as e:
        build_mu_D(spec)
    assert e.value.residuals


def test_rejects_bad_ideal(cat):
    mu = derive_constants(cat.row("mu9_8"))
    with pytest.raises(NotCodimensionOne):
        DeformationSpec(mu, IDEAL_H1, 3, LinearMap.zeros(8))
    with pytest.raises(NotCodimensionOne):
        DeformationSpec(mu, IdealSpec((3, 4, 5, 6, 7, 8, 9)), 1, LinearMap.zeros(7))
