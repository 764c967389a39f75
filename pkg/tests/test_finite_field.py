import cmath
import math
from fractions import Fraction

import pytest

from coxeter_monodromy.coxeter import root_system
from coxeter_monodromy.finite_field import (
    BadPrimeError,
    MultChar,
    PrimeField,
    char_sum,
    disc_table,
    gauss_sum,
    kappa_mod_p,
    orbit_sanity,
    rhs_theorem_finite,
    verify_finite,
)
from coxeter_monodromy.invariants import InvariantPresentation, discriminant_in_invariants

PRIMES = [3, 5, 7, 11, 13]


def test_field_construction():
    assert PrimeField(5).generator == 2
    assert PrimeField(7).generator == 3
    assert PrimeField(13).generator == 2
    for bad in [2, 9, 1, 0, -3]:
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_dlog_table_inverts_powers():
    f = PrimeField(11)
    for k in range(10):
        assert f.dlog[pow(f.generator, k, 11)] == k
    assert f.dlog[0] == -1


@pytest.mark.parametrize("p", PRIMES)
def test_phi_is_legendre_symbol(p):
    f = PrimeField(p)
    squares = {x * x % p for x in range(1, p)}
    for x in range(1, p):
        assert abs(f.phi(x) - (1 if x in squares else -1)) < 1e-12
    assert f.phi(0) == 0


def test_character_arithmetic():
    f = PrimeField(7)
    chi = MultChar(f, 2)
    assert (chi * chi.conj()).is_trivial
    assert (chi**3).is_trivial
    assert abs(chi(3) * chi(5) - chi(15)) < 1e-12


def test_gauss_sum_examples():
    f = PrimeField(3)
    assert abs(gauss_sum(MultChar(f, 0)) - 1) < 1e-12
    assert abs(gauss_sum(f.phi) - (-1j * math.sqrt(3))) < 1e-12


@pytest.mark.parametrize("p", PRIMES)
def test_gauss_sum_modulus_and_conjugate_relation(p):
    f = PrimeField(p)
    for chi in f.characters()[1:]:
        g = gauss_sum(chi)
        assert abs(abs(g) ** 2 - p) < 1e-9
        assert abs(g * gauss_sum(chi.conj()) - chi(-1) * p) < 1e-9


def test_kappa_examples():
    assert kappa_mod_p("A1", PrimeField(5)) == 4
    assert kappa_mod_p("B2", PrimeField(7)) == 1
    for name in ["A1", "A1xA1", "A2", "B2", "G2", "B3"]:
        for p in [5, 7, 11, 13]:
            assert kappa_mod_p(name, PrimeField(p)) != 0


def test_bad_primes():
    with pytest.raises(BadPrimeError):
        kappa_mod_p("A2", PrimeField(3))
    with pytest.raises(BadPrimeError):
        verify_finite("B3", 3)
    with pytest.raises(BadPrimeError):
        verify_finite("H3", 11)


def test_char_sum_a1():
    f = PrimeField(5)
    for p in [5, 7, 13]:
        assert abs(char_sum("A1", PrimeField(p), MultChar(PrimeField(p), 0)) + 1) < 1e-12
    assert abs(char_sum("A1", f, f.phi) + gauss_sum(f.phi)) < 1e-12


def test_rhs_a1():
    f = PrimeField(5)
    assert abs(rhs_theorem_finite("A1", f, f.phi) + gauss_sum(f.phi)) < 1e-12
    assert abs(rhs_theorem_finite("A1", f, MultChar(f, 0)) + 1) < 1e-12


def _naive_char_sum(pres, p, chi):
    """Independent loop over y with exact rational evaluation of disc."""
    f = PrimeField(p)
    total = 0j
    n = pres.rank
    for idx in range(p**n):
        pt = [(idx // p**i) % p for i in range(n)]
        v = f.reduce(pres.disc.eval(pt))
        if v:
            total += chi(v) * cmath.exp(2j * cmath.pi * pt[0] / p)
    return total


def test_b2_brute_force_p7():
    f = PrimeField(7)
    pres = discriminant_in_invariants("B2")
    for chi in f.characters():
        naive = _naive_char_sum(pres, 7, chi)
        assert abs(naive - char_sum("B2", f, chi)) < 1e-9
        assert abs(naive - rhs_theorem_finite("B2", f, chi)) < 1e-9


def test_disc_table_matches_exact_evaluation():
    pres = discriminant_in_invariants("G2")
    f = PrimeField(11)
    table = disc_table(pres, f)
    for a, b in [(0, 0), (3, 7), (10, 1), (5, 5)]:
        assert table[a, b] == f.reduce(pres.disc.eval([a, b]))


@pytest.mark.parametrize(
    "name,p", [("A1", 5), ("B2", 7), ("A2", 11), ("G2", 13), ("A1xA1", 7), ("B3", 13)]
)
def test_verify_finite(name, p):
    rep = verify_finite(name, p)
    assert rep.passed and rep.num_passed == p - 1


def test_verify_single_character_and_json():
    rep = verify_finite("B2", 7, chi=3)
    (row,) = rep.to_json()
    assert set(row) == {"type", "p", "chi_index", "S_re", "S_im", "RHS_re", "RHS_im", "abs_diff", "pass"}
    assert row["chi_index"] == 3 and row["pass"]


@pytest.mark.parametrize("name,p", [("B2", 7), ("A2", 5), ("G2", 11)])
def test_scaling_metamorphic(name, p):
    r = root_system(name)
    lam = 3
    forms = list(r.forms)
    forms[0] = tuple(lam * c for c in forms[0])
    scaled = r.with_forms(forms)
    assert scaled.kappa() == lam**2 * r.kappa()
    f = PrimeField(p)
    base = verify_finite(name, f)
    other = verify_finite(name, f, root_data=scaled)
    assert base.passed and other.passed
    for a, b in zip(base.rows, other.rows):
        chi = MultChar(f, a.chi_index)
        assert abs(b.S - chi(lam**2) * a.S) < 1e-9


@pytest.mark.parametrize("name,p", [("B2", 11), ("B3", 7), ("G2", 13)])
def test_basis_metamorphic(name, p):
    pres = discriminant_in_invariants(name)
    fs = list(pres.invariants)
    for i in range(1, len(fs)):
        lower = fs[0] ** (pres.degrees[i] // 2) if pres.degrees[i] % 2 == 0 else None
        if lower is not None:
            fs[i] = fs[i] + Fraction(2, 5) * lower
    new = InvariantPresentation(pres.type, tuple(fs), pres.degrees, None, pres.root_data)
    base = verify_finite(name, p)
    other = verify_finite(name, p, pres=new)
    assert other.passed
    for a, b in zip(base.rows, other.rows):
        assert abs(a.S - b.S) < 1e-9


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A1xA1"])
@pytest.mark.parametrize("p", [5, 7, 11])
def test_orbit_sanity(name, p):
    assert orbit_sanity(name, p)
