from fractions import Fraction

import pytest
from hypothesis import given

from coxeter_monodromy.classes import (
    FactoredZeta,
    GaloisStabilityError,
    MonodromyClass,
    V_PHI,
    class_chi,
    class_of_factored,
    class_V,
    mobius,
    phi_twist,
    tensor,
    virtual_rank,
    zeta_of_class,
    zeta_value,
)

from conftest import classes, stable_classes

F = Fraction


def test_class_V_small():
    assert class_V(1) == MonodromyClass({0: 1})
    assert class_V(2) == MonodromyClass({0: 1, F(1, 2): 1})
    assert class_V(6).support() == [F(j, 6) for j in range(6)]
    with pytest.raises(ValueError):
        class_V(0)


def test_zero_multiplicities_not_stored():
    c = MonodromyClass({F(1, 3): 2}) - MonodromyClass({F(1, 3): 2})
    assert c == 0 and not c.support()


def test_tensor_examples():
    assert tensor(V_PHI, V_PHI) == class_V(1)
    assert tensor(V_PHI, class_V(3)) == class_V(6) - class_V(3)
    assert tensor(V_PHI, class_V(4)) == class_V(4)


def test_phi_twist_examples():
    assert phi_twist(class_V(1)) == V_PHI
    assert phi_twist(class_V(2)) == class_V(2)


@given(classes)
def test_phi_twist_involution_and_tensor(c):
    assert phi_twist(phi_twist(c)) == c
    assert phi_twist(c) == tensor(V_PHI, c)


@given(classes, classes, classes)
def test_tensor_ring_laws(a, b, c):
    assert tensor(a, b) == tensor(b, a)
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))
    assert tensor(class_V(1), a) == a
    assert virtual_rank(tensor(a, b)) == virtual_rank(a) * virtual_rank(b)


def test_virtual_rank():
    assert virtual_rank(class_V(7)) == 7
    assert virtual_rank(class_V(2) - class_V(4)) == -2
    assert virtual_rank(MonodromyClass()) == 0


def test_zeta_examples():
    assert zeta_of_class(class_V(5)) == FactoredZeta(((5, -1),))
    c = class_V(2) + class_V(3) - class_V(6)
    assert zeta_of_class(c).to_text() == "(1-T^6)/((1-T^2)(1-T^3))"
    z = zeta_of_class(-(class_V(4) - class_V(2)))
    assert z.to_text() == "(1-T^4)/(1-T^2)"
    num, den = z.numerator_denominator()
    # (1 - T^4)/(1 - T^2) = 1 + T^2
    assert num == [1, 0, 0, 0, -1] and den == [1, 0, -1]


def test_zeta_rendering_edge_cases():
    assert FactoredZeta().to_text() == "1"
    assert FactoredZeta(((1, -1),)).to_text() == "1/(1-T)"
    assert FactoredZeta(((2, 1),)).to_text() == "(1-T^2)"
    assert FactoredZeta(((1, -2), (3, 1))).to_text() == "(1-T^3)/(1-T)^2"


def test_class_of_factored_examples():
    assert class_of_factored(FactoredZeta(((1, -1),))) == class_V(1)
    assert class_of_factored(FactoredZeta(((2, 1),))) == -class_V(2)


def test_non_stable_class_rejected():
    with pytest.raises(GaloisStabilityError):
        zeta_of_class(class_chi(F(1, 3)))
    assert not class_chi(F(1, 3)).is_galois_stable()


@given(stable_classes())
def test_roundtrip_stable(c):
    assert class_of_factored(zeta_of_class(c)) == c
    z = zeta_of_class(c)
    assert FactoredZeta.from_text(z.to_text()) == z


@given(stable_classes(), stable_classes())
def test_zeta_is_a_morphism(a, b):
    assert zeta_of_class(a + b) == zeta_of_class(a) * zeta_of_class(b)


@given(stable_classes())
def test_factored_zeta_matches_direct_evaluation(c):
    t = 0.31 + 0.17j
    assert abs(zeta_of_class(c)(t) - zeta_value(c, t)) < 1e-9 * (1 + abs(zeta_value(c, t)))


def test_mobius():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_json_roundtrip():
    c = class_V(4) - 2 * class_chi(F(1, 3))
    assert MonodromyClass.from_json(c.to_json()) == c
