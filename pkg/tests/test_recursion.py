import threading
from fractions import Fraction

import pytest

from coxeter_monodromy.classes import MonodromyClass, V_PHI, class_chi, class_V, zeta_of_class
from coxeter_monodromy.coxeter import classify, parse_diagram
from coxeter_monodromy.recursion import (
    DiagramClassCache,
    ab_coefficients,
    brieskorn_oracle,
    check_ab2,
    check_compl,
    check_conn,
    check_deg,
    check_otherform,
    connected_subgraphs,
    exactbar_class,
    global_class_at_0,
    global_class_at_inf,
    local_class_M,
    local_class_Mbar,
    qN_class,
)

F = Fraction
V = class_V
DIAGRAMS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3", "H4", "G2",
            "I2(5)", "I2(7)", "I2(8)", "D5", "E6", "E7", "E8"]


def test_connected_subgraphs():
    assert [vs for vs, _ in connected_subgraphs("A2")] == [(0,), (1,), (0, 1)]
    assert len(connected_subgraphs("A3")) == 6
    types = sorted(t.name for _, t in connected_subgraphs("B3"))
    assert types == sorted(["A1", "A1", "A1", "B2", "A2", "B3"])


def test_local_class_small():
    assert local_class_M("A1") == V(1)
    assert zeta_of_class(local_class_M("A1")).to_text() == "1/(1-T)"
    assert local_class_M("A2") == V(2) + V(3) - V(6)
    assert local_class_M("B2") == V(2) - V(4)
    assert zeta_of_class(local_class_M("B2")).to_text() == "(1-T^4)/(1-T^2)"


def test_disconnected_vanishes():
    assert local_class_M("A1xA1") == 0
    assert local_class_M("A2xB3") == 0


def test_brieskorn_examples():
    assert brieskorn_oracle(3, 2) == V(1) - class_chi(F(1, 6)) - class_chi(F(5, 6))
    assert brieskorn_oracle(4, 2) == V(2) - V(4)
    assert brieskorn_oracle(2, 2) == 0
    with pytest.raises(ValueError):
        brieskorn_oracle(1, 2)


@pytest.mark.parametrize("m", range(3, 13))
def test_dihedral_matches_brieskorn(m):
    name = f"I2({m})"
    assert zeta_of_class(local_class_M(name)) == zeta_of_class(brieskorn_oracle(m, 2))


@pytest.mark.parametrize("name", DIAGRAMS)
def test_resummation_and_stability(name):
    assert check_deg(name).holds
    assert local_class_M(name).is_galois_stable()


def test_cache_consistent_with_fresh_computation():
    fresh = DiagramClassCache()
    for name in ["B3", "D4", "F4", "H3"]:
        assert local_class_M(name, cache=fresh) == local_class_M(name)
    assert len(fresh) > 0


def test_cache_threadsafe():
    cache = DiagramClassCache()
    results = []

    def work():
        results.append(local_class_M("E7", cache=cache))

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)


def test_canonical_form_relabelling():
    a = parse_diagram("0-1:4,1-2")
    b = parse_diagram("0-1,1-2:4")
    assert a.canonical_form() == b.canonical_form()
    assert local_class_M(a) == local_class_M(b)


def test_global_class_at_0():
    assert global_class_at_0("A1") == 0
    for m in [3, 4, 5, 6, 8, 11]:
        assert global_class_at_0(f"I2({m})") == 2 * V(1)
    d = parse_diagram("B3")
    expected = MonodromyClass()
    for vs, _ in connected_subgraphs(d):
        if len(vs) < 3:
            expected = expected + local_class_Mbar(d.induced(vs))
    assert global_class_at_0(d) == -expected


def test_exactbar_examples():
    assert exactbar_class("A1", 0) == V(1)
    assert exactbar_class("B2", 0) == -V(1)
    assert exactbar_class("B2", F(1, 3)) == -class_chi(F(1, 3))


def test_ab_examples():
    assert (ab_coefficients("A1").a_bar, ab_coefficients("A1").b_bar) == (1, 0)
    assert (ab_coefficients("A2").a_bar, ab_coefficients("A2").b_bar) == (0, -1)
    assert (ab_coefficients("B2").a_bar, ab_coefficients("B2").b_bar) == (-1, 0)


def test_qN_examples():
    assert qN_class("A1") == V(1)
    assert qN_class("B2") == -V(4)
    assert qN_class("A2") == V(3) - V(6)


def test_global_inf_examples():
    assert global_class_at_inf("B2") == V(2)
    assert global_class_at_inf("A1") == 0
    assert global_class_at_inf("A2") == V(2)


def test_otherform_examples():
    res = check_otherform("B2")
    assert res.holds and res.lhs == V(1) - V_PHI + V(4)
    res = check_otherform("A1")
    assert res.holds and res.lhs == -V(1)
    assert check_otherform("H3").holds


@pytest.mark.parametrize("name", DIAGRAMS)
def test_class_identities(name):
    assert check_otherform(name).holds
    assert check_conn(name).holds
    assert check_compl(name).holds


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "B3", "G2", "H4", "E6"])
def test_ab2_all_small_characters(name):
    for k in range(1, 13):
        for a in range(k):
            assert check_ab2(name, F(a, k)).holds


def test_ab2_examples():
    assert check_ab2("A1", F(1, 3)).holds
    res = check_ab2("B2", F(1, 5))
    assert res.holds and res.lhs == -class_chi(F(4, 5))


def test_requires_connected():
    with pytest.raises(ValueError):
        global_class_at_0("A1xA1")
    with pytest.raises(ValueError):
        check_otherform("A1xA2")


def test_rank_cap():
    with pytest.raises(ValueError):
        local_class_M("A9")
