"""Basic invariants of crystallographic reflection groups and the
discriminant rewritten in invariant coordinates ``y_1..y_n`` (``y_1 = q``)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .algebra import (
    MultiPoly,
    RationalMatrix,
    UnderdeterminedSystemError,
    InconsistentSystemError,
    monomials_of_degree,
    rank,
    solve_linear,
    symbolic_det,
    weighted_exponents,
)
from .coxeter import GroupType, RootSystemData, generate_group, parse_type, root_system

__all__ = [
    "InvariantPresentation",
    "NotInvariantError",
    "reynolds",
    "basic_invariants",
    "invariantize",
    "discriminant_poly",
    "discriminant_in_invariants",
    "jacobian_rank",
]


class NotInvariantError(ValueError):
    """Polynomial is not in the subring generated by the basic invariants."""


@dataclass(frozen=True)
class InvariantPresentation:
    """Basic invariants ``f_1..f_n`` (``f_1 = q``) and, optionally, the
    discriminant ``disc`` as a polynomial in ``y_1..y_n``."""

    type: GroupType
    invariants: tuple[MultiPoly, ...]
    degrees: tuple[int, ...]
    disc: MultiPoly | None = None
    root_data: RootSystemData | None = field(default=None, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def with_disc(self, disc: MultiPoly) -> "InvariantPresentation":
        return InvariantPresentation(self.type, self.invariants, self.degrees, disc, self.root_data)

    def metadata(self) -> dict:
        return {
            "type": self.type.name,
            "degrees": list(self.degrees),
            "basis": [str(f) for f in self.invariants],
            "disc": None if self.disc is None else str(self.disc),
        }


def _as_root_data(t) -> RootSystemData:
    if isinstance(t, RootSystemData):
        return t
    r = root_system(parse_type(t) if isinstance(t, str) else t)
    if not r.exact:
        raise TypeError(f"{r.type} has no exact realization")
    return r


@lru_cache(maxsize=None)
def _group(r: RootSystemData) -> tuple[RationalMatrix, ...]:
    return tuple(sorted(generate_group(r), key=lambda m: m.rows))


def reynolds(p: MultiPoly, group: Sequence[RationalMatrix]) -> MultiPoly:
    """``(1/|G|) sum_g p(g x)``."""
    group = list(group)
    total = MultiPoly(p.nvars)
    for g in group:
        total = total + p.linear_substitute(g)
    return total * Fraction(1, len(group))


def _jacobian_rows(polys: Sequence[MultiPoly]) -> list[list[MultiPoly]]:
    n = polys[0].nvars
    return [[f.diff(j) for j in range(n)] for f in polys]


def jacobian_rank(polys: Sequence[MultiPoly], *, rng: random.Random | None = None, tries: int = 11) -> int:
    """Generic rank of the Jacobian matrix.

    Evaluates at random rational points; if every try is rank deficient the
    answer is confirmed symbolically from the maximal minors.
    """
    rng = rng or random.Random(0)
    k = len(polys)
    n = polys[0].nvars
    rows = _jacobian_rows(polys)
    best = 0
    for _ in range(tries):
        pt = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(n)]
        r = rank([[entry.eval(pt) for entry in row] for row in rows])
        best = max(best, r)
        if best == k:
            return k
    for cols in combinations(range(n), k):
        if symbolic_det([[row[c] for c in cols] for row in rows]):
            return k
    return best


def basic_invariants(t, *, seed: int = 0) -> InvariantPresentation:
    """``f_1 = q``; each later ``f_i`` is the first Reynolds-averaged monomial
    of degree ``d_i`` (graded lex order) keeping the Jacobian of full rank."""
    r = _as_root_data(t)
    group = _group(r)
    n = r.rank
    degs = r.type.degrees()
    q = MultiPoly.quadratic(r.gram_matrix)
    found = [q]
    rng = random.Random(seed)
    for d in degs[1:]:
        for exp in monomials_of_degree(n, d):
            cand = reynolds(MultiPoly.monomial(exp), group)
            if not cand:
                continue
            if jacobian_rank(found + [cand], rng=rng) == len(found) + 1:
                found.append(cand)
                break
        else:
            raise RuntimeError(f"no degree-{d} invariant completes the basis for {r.type}")
    return InvariantPresentation(r.type, tuple(found), tuple(degs), None, r)


def invariantize(p: MultiPoly, pres: InvariantPresentation) -> MultiPoly:
    """The unique ``P`` with ``P(f_1, ..., f_n) = p``."""
    if not p:
        return MultiPoly(pres.rank)
    if not p.is_homogeneous():
        raise ValueError("invariantize expects a homogeneous polynomial")
    deg = p.degree()
    alphas = weighted_exponents(list(pres.degrees), deg)
    if not alphas:
        raise NotInvariantError(f"no weighted monomials of degree {deg}")
    products = [_product(pres.invariants, a) for a in alphas]
    rows_keys = sorted(set(p.terms).union(*(set(c.terms) for c in products)))
    a_rows = [[c.coefficient(key) for c in products] for key in rows_keys]
    b = [p.coefficient(key) for key in rows_keys]
    try:
        sol = solve_linear(a_rows, b)
    except InconsistentSystemError:
        raise NotInvariantError("polynomial is not in the invariant subring") from None
    except UnderdeterminedSystemError:
        raise RuntimeError("basic invariants are algebraically dependent") from None
    return MultiPoly(pres.rank, {a: c for a, c in zip(alphas, sol)})


def _product(fs: Sequence[MultiPoly], alpha: Sequence[int]) -> MultiPoly:
    out = MultiPoly.constant(fs[0].nvars, 1)
    for f, k in zip(fs, alpha):
        if k:
            out = out * f**k
    return out


def discriminant_poly(r) -> MultiPoly:
    """``(prod_i l_i)^2`` for the chosen hyperplane equations."""
    r = _as_root_data(r)
    prod = MultiPoly.constant(r.rank, 1)
    for f in r.forms:
        prod = prod * MultiPoly.linear(f)
    return prod * prod


def discriminant_in_invariants(t, *, pres: InvariantPresentation | None = None) -> InvariantPresentation:
    """Attach ``disc`` (from the forms of ``t``) to ``pres``, building the
    presentation first when none is given."""
    if isinstance(t, RootSystemData) or pres is None:
        r = _as_root_data(t)
    else:
        r = pres.root_data or _as_root_data(pres.type)
    if pres is None:
        pres = basic_invariants(r)
    disc = invariantize(discriminant_poly(r), pres)
    return pres.with_disc(disc)


def rank2_brieskorn_exponents(pres: InvariantPresentation) -> tuple[int, int]:
    """For a rank-2 presentation with weights ``(2, m)``, bring ``disc`` to
    the normal form ``u^m - v^2`` by completing the square and return the
    Brieskorn exponents ``(m, 2)``."""
    if pres.disc is None or pres.rank != 2:
        raise ValueError("need a rank-2 presentation with its discriminant")
    w1, m = pres.degrees
    if w1 != 2:
        raise ValueError("first basic invariant must be quadratic")
    disc = pres.disc
    c0 = disc.coefficient((m, 0))
    c2 = disc.coefficient((0, 2))
    c1 = disc.coefficient((m // 2, 1)) if m % 2 == 0 else Fraction(0)
    expected = {(m, 0), (0, 2)} | ({(m // 2, 1)} if m % 2 == 0 else set())
    if not set(disc.terms) <= expected:
        raise ValueError(f"unexpected monomials in {disc}")
    if c2 == 0 or c1 * c1 - 4 * c0 * c2 == 0:
        raise ValueError("discriminant curve is not of Brieskorn type")
    return m, 2
