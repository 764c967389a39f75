"""End-to-end acceptance checks, one test per criterion.

Each criterion is a plain function returning ``(ok, detail)``; the tests
record a PASS/FAIL line (printed in the terminal summary) and then assert
both the outcome and the time budget.  Run this file directly to print the
lines without pytest.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from coxeter_monodromy.arrangements import (
    NondegeneracyError,
    chamber_count,
    chamber_count_deletion_restriction,
    chamber_count_zaslavsky,
    coxeter_arrangement,
    coxeter_euler_checks,
    quadric_complement_euler,
    random_arrangement,
)
from coxeter_monodromy.algebra import RationalMatrix
from coxeter_monodromy.classes import FactoredZeta, MonodromyClass, class_of_factored, class_V, zeta_of_class
from coxeter_monodromy.coxeter import (
    degrees,
    generate_group,
    molien_degrees,
    parse_type,
    root_system,
)
from coxeter_monodromy.finite_field import verify_finite
from coxeter_monodromy.invariants import discriminant_in_invariants, discriminant_poly
from coxeter_monodromy.macdonald import (
    macdonald_lhs_quadrature,
    macdonald_rhs,
    max_delta_closed_form,
    max_delta_optimize,
)
from coxeter_monodromy.recursion import (
    ab_coefficients,
    brieskorn_oracle,
    check_ab2,
    check_deg,
    check_otherform,
    local_class_M,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:
    ACCEPTANCE_LINES = []

CLASS_DIAGRAMS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3"] + [f"I2({m})" for m in range(3, 9)]
FINITE_TYPES = ["A1", "A1xA1", "A2", "B2", "G2", "B3"]
PRIMES = [5, 7, 11, 13]
SMALL_EXACT = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "G2",
               "A1xA1", "A1xA2", "A1xB2", "A1xG2", "A2xA2", "A1xA1xA1", "A1xA3", "A1xB3"]
LOW_RANK = [t for t in SMALL_EXACT if parse_type(t).rank <= 3]
CHAMBER_TYPES = SMALL_EXACT + ["A5", "B5", "D5"]


def rank2_oracle():
    bad = [m for m in range(3, 9) if zeta_of_class(local_class_M(f"I2({m})")) != zeta_of_class(brieskorn_oracle(m, 2))]
    named = (
        zeta_of_class(local_class_M("A2")) == FactoredZeta.from_text("(1-T^6)/((1-T^2)(1-T^3))")
        and zeta_of_class(local_class_M("B2")) == FactoredZeta.from_text("(1-T^4)/(1-T^2)")
    )
    return not bad and named, f"mismatches at m = {bad}" if bad else "I2(3..8), A2, B2"


def resummation_identity():
    bad = [d for d in CLASS_DIAGRAMS if not check_deg(d).holds]
    return not bad, f"failed: {bad}" if bad else f"{len(CLASS_DIAGRAMS)} diagrams"


def finite_field_sums():
    checked, bad, worst = 0, [], 0.0
    for t in FINITE_TYPES:
        for p in PRIMES:
            if parse_type(t).order % p == 0:
                continue
            report = verify_finite(t, p, tol=1e-6)
            checked += 1
            worst = max(worst, max(row.abs_diff for row in report.rows))
            if not (report.passed and report.num_passed == len(report.rows) == p - 1):
                bad.append((t, p))
    return not bad, f"{checked} (type, p) pairs, max |S - RHS| = {worst:.1e}" + (f", failed {bad}" if bad else "")


def discriminant_maximum():
    worst, bad = 0.0, []
    for t in ["A2", "B2", "G2", "A3", "B3"]:
        res = max_delta_optimize(t, restarts=100, seed=0)
        worst = max(worst, res.rel_err)
        if res.rel_err > 1e-6:
            bad.append(t)
    exact_b2 = max_delta_closed_form("B2") == Fraction(1, 16)
    return not bad and exact_b2, f"max rel err {worst:.1e}, B2 closed form {max_delta_closed_form('B2')}"


def gaussian_moments():
    cases = [("A1", s) for s in (1, 2, 3)] + [(t, s) for t in ("A2", "B2") for s in (1, 2)]
    worst = 0.0
    for t, s in cases:
        lhs, rhs = macdonald_lhs_quadrature(t, s), macdonald_rhs(t, s)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    a1 = math.sqrt(math.pi) / 2
    exact = math.isclose(macdonald_rhs("A1", 1), a1, rel_tol=1e-12) and math.isclose(
        macdonald_lhs_quadrature("A1", 1), a1, rel_tol=1e-12
    )
    return worst < 1e-8 and exact, f"{len(cases)} cases, max rel err {worst:.1e}"


def _random_gram(rng, n):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = rng.randint(-2, 2)
    return RationalMatrix(g)


def arrangement_suite():
    problems = []
    for t in CHAMBER_TYPES:
        a, _ = coxeter_arrangement(t)
        if chamber_count(a) != math.prod(degrees(t)):
            problems.append(f"chambers {t}")
    rng = random.Random(2024)
    euler_checked = 0
    for _ in range(200):
        n = rng.randint(1, 3)
        a = random_arrangement(rng, n, rng.randint(1, 6))
        ch = chamber_count_zaslavsky(a)
        if ch != chamber_count_deletion_restriction(a):
            problems.append(f"counts {a.forms}")
            continue
        try:
            e = quadric_complement_euler(a, _random_gram(rng, n))
        except NondegeneracyError:
            continue
        euler_checked += 1
        if e != (-1) ** (n - 1) * ch:
            problems.append(f"euler {a.forms}")
    for t in LOW_RANK:
        if not coxeter_euler_checks(t).passed:
            problems.append(f"chi(B) {t}")
    detail = f"{len(CHAMBER_TYPES)} Coxeter types, 200 random ({euler_checked} nondegenerate), chi(B) for {len(LOW_RANK)} types"
    return not problems, detail + (f"; failed {problems[:5]}" if problems else "")


def class_identities():
    bad = [d for d in CLASS_DIAGRAMS if not check_otherform(d).holds]
    chis = {Fraction(a, k) for k in range(1, 13) for a in range(k)}
    bad += [(d, str(c)) for d in CLASS_DIAGRAMS for c in sorted(chis) if not check_ab2(d, c).holds]
    for d in CLASS_DIAGRAMS:
        t = parse_type(d)
        n, big_n = t.rank, sum(x - 1 for x in t.degrees())
        sign = (-1) ** (n - 1)
        expected = (sign, 0) if (n + big_n) % 2 == 0 else (0, sign)
        ab = ab_coefficients(d)
        if (ab.a_bar, ab.b_bar) != expected:
            bad.append((d, "ab"))
    return not bad, f"{len(CLASS_DIAGRAMS)} diagrams x {len(chis)} characters" + (f"; failed {bad[:5]}" if bad else "")


def roundtrips():
    problems = []
    crystallographic = [t for t in LOW_RANK if root_system(t).exact]
    for t in crystallographic:
        pres = discriminant_in_invariants(t)
        if pres.disc.compose(list(pres.invariants)) != discriminant_poly(t):
            problems.append(f"compose {t}")
    rng = random.Random(7)
    for _ in range(500):
        c = MonodromyClass()
        for _ in range(rng.randint(0, 6)):
            c = c + rng.randint(-3, 3) * class_V(rng.randint(1, 24))
        if class_of_factored(zeta_of_class(c)) != c:
            problems.append(f"zeta {c}")
    molien_types = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "G2", "A1xA1", "A1xB2", "A2xA2"]
    for t in molien_types:
        if molien_degrees(generate_group(root_system(t)), rank=parse_type(t).rank) != sorted(degrees(t)):
            problems.append(f"molien {t}")
    detail = f"{len(crystallographic)} invariantizations, 500 classes, Molien for {len(molien_types)} types"
    return not problems, detail + (f"; failed {problems[:5]}" if problems else "")


CRITERIA = [
    (1, "rank-2 oracle agreement", rank2_oracle, 1.0),
    (2, "re-summation identity", resummation_identity, 1.0),
    (3, "finite-field character sums", finite_field_sums, 30.0),
    (4, "maximum of the discriminant", discriminant_maximum, 30.0),
    (5, "Gaussian moments at integer s", gaussian_moments, 10.0),
    (6, "arrangement suite", arrangement_suite, 10.0),
    (7, "class-algebra identities", class_identities, 5.0),
    (8, "roundtrips", roundtrips, 60.0),
]


def run_criterion(number, title, fn, budget):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    verdict = "PASS" if ok and elapsed < budget else "FAIL"
    line = f"{verdict} criterion {number}: {title} ({detail}; {elapsed:.2f} s, limit {budget:g} s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok, elapsed


@pytest.mark.parametrize("number,title,fn,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, budget):
    ok, elapsed = run_criterion(number, title, fn, budget)
    assert ok
    assert elapsed < budget


if __name__ == "__main__":
    for criterion in CRITERIA:
        run_criterion(*criterion)
