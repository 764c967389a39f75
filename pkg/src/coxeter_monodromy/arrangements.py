"""Central hyperplane arrangements over Q: intersection posets, chamber
counts and the Euler characteristic of the complement in an affine quadric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import RationalMatrix, nullspace, primitive_integer_vector
from .coxeter import GroupType, parse_type, root_system

__all__ = [
    "Arrangement",
    "IntersectionPoset",
    "NondegeneracyError",
    "ChamberCountMismatch",
    "intersection_poset",
    "chamber_count",
    "chamber_count_zaslavsky",
    "chamber_count_deletion_restriction",
    "quadric_complement_euler",
    "coxeter_arrangement",
    "coxeter_euler_checks",
    "random_arrangement",
]


class NondegeneracyError(ValueError):
    """The quadratic form degenerates on some intersection space."""


class ChamberCountMismatch(RuntimeError):
    """Zaslavsky and deletion-restriction disagree."""


@dataclass(frozen=True)
class Arrangement:
    """Central arrangement in ``Q^n``; forms deduplicated up to scalar."""

    n: int
    forms: tuple[tuple[int, ...], ...]

    @classmethod
    def from_forms(cls, n: int, forms: Sequence[Sequence]) -> "Arrangement":
        seen = []
        for f in forms:
            if len(f) != n:
                raise ValueError(f"form {tuple(f)} does not live in dimension {n}")
            v = primitive_integer_vector(f)
            if v not in seen:
                seen.append(v)
        return cls(n, tuple(seen))

    def __len__(self):
        return len(self.forms)

    def delete(self, i: int) -> "Arrangement":
        return Arrangement(self.n, self.forms[:i] + self.forms[i + 1:])

    def restrict(self, i: int) -> tuple["Arrangement", list[tuple[Fraction, ...]]]:
        """Arrangement induced on hyperplane ``i`` (in coordinates of an
        exact basis of it), and that basis."""
        basis = nullspace([self.forms[i]], self.n)
        restricted = []
        for j, f in enumerate(self.forms):
            if j == i:
                continue
            restricted.append([sum((Fraction(a) * b for a, b in zip(f, v)), Fraction(0)) for v in basis])
        return Arrangement.from_forms(self.n - 1, restricted), basis


@dataclass(frozen=True)
class IntersectionPoset:
    """Flats keyed by the set of hyperplane indices containing them.

    ``dims[X]`` is the dimension, ``mobius[X] = mu(V, X)``.  ``X <= Y`` as
    subspaces iff ``Y``'s index set is a subset of ``X``'s.
    """

    arrangement: Arrangement
    dims: dict
    mobius: dict
    bases: dict

    @property
    def elements(self) -> list[frozenset]:
        return sorted(self.dims, key=lambda x: (-self.dims[x], sorted(x)))

    @property
    def top(self) -> frozenset:
        return frozenset()

    def leq(self, x: frozenset, y: frozenset) -> bool:
        return y <= x

    def characteristic_polynomial(self) -> list[int]:
        """Coefficients (ascending) of ``sum_X mu(X) t^dim X``."""
        out = [0] * (self.arrangement.n + 1)
        for x, d in self.dims.items():
            out[d] += self.mobius[x]
        return out


def _dot(f, v) -> int:
    return sum(a * b for a, b in zip(f, v))


def _meet(forms, basis, i):
    """Basis of ``X ∩ H_i`` given a basis of ``X`` (``H_i`` not containing X).

    Basis vectors are kept as primitive integer vectors so membership tests
    stay in integer arithmetic.
    """
    coeffs = [_dot(forms[i], b) for b in basis]
    p = next(k for k, c in enumerate(coeffs) if c)
    # kernel of a single row: c_p e_j - c_j e_p for j != p
    return [
        primitive_integer_vector([coeffs[p] * bj - coeffs[j] * bp for bj, bp in zip(basis[j], basis[p])])
        for j in range(len(basis))
        if j != p
    ]


def _containing(form_matrix, basis) -> frozenset:
    """Indices of the hyperplanes containing the span of ``basis``."""
    if not basis:
        return frozenset(range(len(form_matrix)))
    b = np.array(basis, dtype=object).T
    bound = int(np.abs(form_matrix).max()) * int(np.abs(b).max()) * b.shape[0]
    if bound < 2**62:
        prod = form_matrix.astype(np.int64) @ b.astype(np.int64)
    else:
        prod = form_matrix @ b
    return frozenset(np.flatnonzero(~np.any(prod != 0, axis=1)).tolist())


def intersection_poset(a: Arrangement) -> IntersectionPoset:
    forms = list(a.forms)
    form_matrix = np.array(forms, dtype=object).reshape(len(forms), a.n)
    ambient = [primitive_integer_vector(v) for v in nullspace([], a.n)]
    dims = {frozenset(): a.n}
    bases = {frozenset(): ambient}
    frontier = [frozenset()]
    while frontier:
        new = []
        for x in frontier:
            if dims[x] == 0:
                continue
            # every hyperplane of Y \ X cuts X in the same flat Y
            remaining = set(range(len(forms))) - x
            while remaining:
                i = min(remaining)
                basis = _meet(forms, bases[x], i)
                y = _containing(form_matrix, basis)
                remaining -= y
                if y not in dims:
                    dims[y] = len(basis)
                    bases[y] = basis
                    new.append(y)
        frontier = new
    mobius: dict[frozenset, int] = {}
    for x in sorted(dims, key=lambda x: -dims[x]):
        if not x:
            mobius[x] = 1
        else:
            mobius[x] = -sum(mobius[y] for y in mobius if y < x)
    return IntersectionPoset(a, dims, mobius, bases)


def chamber_count_zaslavsky(a: Arrangement) -> int:
    p = intersection_poset(a)
    return sum(abs(m) for m in p.mobius.values())


def chamber_count_deletion_restriction(a: Arrangement) -> int:
    if not a.forms:
        return 1
    if a.n == 1:
        return 2
    restricted, _ = a.restrict(len(a) - 1)
    return chamber_count_deletion_restriction(a.delete(len(a) - 1)) + chamber_count_deletion_restriction(
        restricted
    )


def chamber_count(a: Arrangement) -> int:
    """Chambers of the real complement, by two independent routes."""
    dr = chamber_count_deletion_restriction(a)
    z = chamber_count_zaslavsky(a)
    if dr != z:
        raise ChamberCountMismatch(f"deletion-restriction gives {dr}, Zaslavsky gives {z}")
    return dr


def _restricted_gram(gram: RationalMatrix, basis) -> RationalMatrix:
    b = RationalMatrix(basis).transpose()
    return b.transpose() @ gram @ b


def check_nondegenerate(a: Arrangement, gram: RationalMatrix) -> None:
    """Raise unless ``q`` is nondegenerate on every intersection space."""
    if gram.det() == 0:
        raise NondegeneracyError("form is degenerate on the ambient space")
    poset = intersection_poset(a)
    for x, d in poset.dims.items():
        if not x or d == 0:
            continue
        if _restricted_gram(gram, poset.bases[x]).det() == 0:
            raise NondegeneracyError(f"form degenerates on the intersection of hyperplanes {sorted(x)}")


def _quadric_euler(a: Arrangement, gram: RationalMatrix) -> int:
    if not a.forms:
        # smooth affine quadric q = 1 in C^n
        return 1 + (1 if a.n % 2 else -1)
    last = len(a) - 1
    restricted, basis = a.restrict(last)
    sub_gram = _restricted_gram(gram, basis) if basis else RationalMatrix([])
    return _quadric_euler(a.delete(last), gram) - _quadric_euler(restricted, sub_gram)


def quadric_complement_euler(a: Arrangement, gram: RationalMatrix) -> int:
    """Euler characteristic of ``{q = 1} minus the complexified arrangement``."""
    if not a.forms:
        raise ValueError("arrangement must be non-empty")
    check_nondegenerate(a, gram)
    return _quadric_euler(a, gram)


def coxeter_arrangement(t: GroupType | str) -> tuple[Arrangement, RationalMatrix]:
    r = root_system(t)
    if not r.exact:
        raise TypeError(f"{r.type} has no exact realization")
    return Arrangement.from_forms(r.rank, r.forms), r.gram_matrix


@dataclass(frozen=True)
class EulerReport:
    type: str
    rank: int
    group_order: int
    chambers: int
    euler_B: int
    euler_B_over_G: Fraction
    passed: bool

    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "rank": self.rank,
            "group_order": self.group_order,
            "chambers": self.chambers,
            "euler_B": self.euler_B,
            "euler_B_over_G": str(self.euler_B_over_G),
            "pass": self.passed,
        }


def coxeter_euler_checks(t: GroupType | str) -> EulerReport:
    t = parse_type(t) if isinstance(t, str) else t
    a, gram = coxeter_arrangement(t)
    n, order = t.rank, t.order
    chi_b = quadric_complement_euler(a, gram)
    ch = chamber_count(a)
    sign = (-1) ** (n - 1)
    ratio = Fraction(chi_b, order)
    ok = chi_b == sign * order and ch == order and ratio == sign
    return EulerReport(t.name, n, order, ch, chi_b, ratio, ok)


def random_arrangement(rng, n: int, k: int, *, coeff_range: int = 2) -> Arrangement:
    """Up to ``k`` random nonzero integer forms in dimension ``n``."""
    forms = []
    while len(forms) < k:
        v = [rng.randint(-coeff_range, coeff_range) for _ in range(n)]
        if any(v):
            forms.append(v)
    return Arrangement.from_forms(n, forms)
