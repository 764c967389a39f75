"""Virtual representations of the local inertia group as integer
combinations of finite-order characters.

A character is stored by its rotation number ``a/k`` in ``[0, 1)``: it sends
the counter-clockwise generator to ``exp(2 pi i a/k)``.  The zeta map sends
the rank-one class at ``r`` to ``1/(1 - T exp(2 pi i r))``, so sums of classes
become products of zeta functions.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

__all__ = [
    "rotation",
    "MonodromyClass",
    "FactoredZeta",
    "GaloisStabilityError",
    "class_V",
    "class_chi",
    "V_PHI",
    "tensor",
    "phi_twist",
    "zeta_of_class",
    "class_of_factored",
    "virtual_rank",
    "mobius",
]


def rotation(a, k: int = 1) -> Fraction:
    """Reduced rotation number ``a/k mod 1``."""
    return Fraction(a, k) % 1


class MonodromyClass:
    """Finitely supported map ``rotation number -> nonzero integer``."""

    __slots__ = ("_m", "_hash")

    def __init__(self, multiplicities: Mapping | Iterable[tuple] | None = None):
        items = multiplicities.items() if isinstance(multiplicities, Mapping) else (multiplicities or ())
        m: dict[Fraction, int] = {}
        for r, c in items:
            r = Fraction(r) % 1
            m[r] = m.get(r, 0) + int(c)
        self._m = {r: c for r, c in m.items() if c}
        self._hash = None

    @classmethod
    def zero(cls) -> "MonodromyClass":
        return cls()

    def items(self):
        return sorted(self._m.items())

    def multiplicity(self, r) -> int:
        return self._m.get(Fraction(r) % 1, 0)

    def support(self) -> list[Fraction]:
        return sorted(self._m)

    def __bool__(self):
        return bool(self._m)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._m
        return isinstance(other, MonodromyClass) and self._m == other._m

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._m.items()))
        return self._hash

    def __add__(self, other: "MonodromyClass") -> "MonodromyClass":
        if not isinstance(other, MonodromyClass):
            return NotImplemented
        m = dict(self._m)
        for r, c in other._m.items():
            m[r] = m.get(r, 0) + c
        return MonodromyClass(m)

    def __neg__(self) -> "MonodromyClass":
        return MonodromyClass({r: -c for r, c in self._m.items()})

    def __sub__(self, other: "MonodromyClass") -> "MonodromyClass":
        if not isinstance(other, MonodromyClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> "MonodromyClass":
        if not isinstance(k, int):
            return NotImplemented
        return MonodromyClass({r: k * c for r, c in self._m.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "MonodromyClass") -> "MonodromyClass":
        return tensor(self, other)

    def __repr__(self):
        return f"MonodromyClass({self})"

    def __str__(self):
        if not self._m:
            return "0"
        parts = []
        for r, c in self.items():
            coeff = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            parts.append(f"{coeff}[{r}]")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[list]:
        return [[r.numerator, r.denominator, c] for r, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "MonodromyClass":
        return cls({Fraction(a, k): c for a, k, c in data})

    # Galois orbits ----------------------------------------------------------
    def cyclotomic_exponents(self) -> dict[int, int]:
        """``{k: m_k}`` with the class equal to ``sum_k m_k * P_k``, where
        ``P_k`` is the sum over the primitive k-th roots of unity.

        Raises :class:`GaloisStabilityError` when no such expression exists.
        """
        by_k: dict[int, dict[int, int]] = {}
        for r, c in self._m.items():
            by_k.setdefault(r.denominator, {})[r.numerator] = c
        out = {}
        for k, mults in by_k.items():
            prim = [a for a in range(k) if gcd(a, k) == 1]
            values = {mults.get(a, 0) for a in prim}
            if len(values) != 1:
                raise GaloisStabilityError(
                    f"multiplicities on primitive {k}-th roots are not constant: {sorted(mults.items())}"
                )
            out[k] = values.pop()
        return dict(sorted(out.items()))

    def is_galois_stable(self) -> bool:
        try:
            self.cyclotomic_exponents()
        except GaloisStabilityError:
            return False
        return True


class GaloisStabilityError(ValueError):
    """The class has no zeta function with integer coefficients."""


def class_chi(r) -> MonodromyClass:
    """Rank-one class with rotation number ``r``."""
    return MonodromyClass({Fraction(r) % 1: 1})


def class_V(m: int) -> MonodromyClass:
    """Sum of all characters of order dividing ``m``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return MonodromyClass({Fraction(j, m): 1 for j in range(m)})


V_PHI = class_chi(Fraction(1, 2))


def tensor(c1: MonodromyClass, c2: MonodromyClass) -> MonodromyClass:
    """Bilinear extension of ``V_chi (x) V_chi' = V_{chi chi'}``."""
    out: dict[Fraction, int] = {}
    for r1, a in c1.items():
        for r2, b in c2.items():
            r = (r1 + r2) % 1
            out[r] = out.get(r, 0) + a * b
    return MonodromyClass(out)


def phi_twist(c: MonodromyClass) -> MonodromyClass:
    """Shift every rotation number by 1/2; realizes ``T -> -T`` on zeta."""
    half = Fraction(1, 2)
    return MonodromyClass({(r + half) % 1: m for r, m in c.items()})


def virtual_rank(c: MonodromyClass) -> int:
    return sum(m for _, m in c.items())


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class FactoredZeta:
    """``prod_k (1 - T^k)^e_k`` with distinct ``k`` and nonzero ``e_k``."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for k, e in self.factors:
            if k < 1:
                raise ValueError("factor index must be positive")
            merged[k] = merged.get(k, 0) + e
        object.__setattr__(self, "factors", tuple(sorted((k, e) for k, e in merged.items() if e)))

    def __mul__(self, other: "FactoredZeta") -> "FactoredZeta":
        return FactoredZeta(self.factors + other.factors)

    def __truediv__(self, other: "FactoredZeta") -> "FactoredZeta":
        return FactoredZeta(self.factors + tuple((k, -e) for k, e in other.factors))

    def inverse(self) -> "FactoredZeta":
        return FactoredZeta(tuple((k, -e) for k, e in self.factors))

    def __call__(self, t: complex) -> complex:
        val = 1
        for k, e in self.factors:
            val *= (1 - t**k) ** e
        return val

    def cyclotomic_exponents(self) -> dict[int, int]:
        """``{k: m_k}`` with the function equal to ``prod Psi_k^m_k``,
        ``Psi_1 = 1 - T`` and ``Psi_k = Phi_k`` otherwise."""
        out: dict[int, int] = {}
        for k, e in self.factors:
            for d in _divisors(k):
                out[d] = out.get(d, 0) + e
        return {k: m for k, m in sorted(out.items()) if m}

    def numerator_denominator(self) -> tuple[list[int], list[int]]:
        """Integer coefficient lists (ascending powers) of the expanded
        numerator and denominator."""

        def expand(fs):
            poly = [1]
            for k, e in fs:
                for _ in range(e):
                    new = poly + [0] * k
                    for i, c in enumerate(poly):
                        new[i + k] -= c
                    poly = new
            return poly

        num = expand([(k, e) for k, e in self.factors if e > 0])
        den = expand([(k, -e) for k, e in self.factors if e < 0])
        return num, den

    def to_text(self) -> str:
        """Canonical rendering, e.g. ``(1-T^6)/((1-T^2)(1-T^3))``."""

        def fac(k, e):
            base = "(1-T)" if k == 1 else f"(1-T^{k})"
            return base if e == 1 else f"{base}^{e}"

        num = [fac(k, e) for k, e in self.factors if e > 0]
        den = [fac(k, -e) for k, e in self.factors if e < 0]
        top = "".join(num) if num else "1"
        if not den:
            return top
        bottom = den[0] if len(den) == 1 else "(" + "".join(den) + ")"
        return f"{top}/{bottom}"

    __str__ = to_text

    @classmethod
    def from_text(cls, text: str) -> "FactoredZeta":
        import re

        text = text.strip()
        if text == "1":
            return cls()
        top, _, bottom = text.partition("/")
        pat = re.compile(r"\(1-T(?:\^(\d+))?\)(?:\^(\d+))?")

        def parse(part, sign):
            part = part.strip()
            if part in ("", "1"):
                return []
            # a factor list of several terms is wrapped in one extra pair
            if part.startswith("((") and part.endswith(")"):
                part = part[1:-1]
            out, pos = [], 0
            for m in pat.finditer(part):
                if m.start() != pos:
                    raise ValueError(f"cannot parse zeta factor list {part!r}")
                out.append((int(m.group(1) or 1), sign * int(m.group(2) or 1)))
                pos = m.end()
            if pos != len(part):
                raise ValueError(f"cannot parse zeta factor list {part!r}")
            return out

        return cls(tuple(parse(top, 1) + parse(bottom, -1)))

    def to_json(self) -> list[list[int]]:
        return [[k, e] for k, e in self.factors]


def zeta_of_class(c: MonodromyClass) -> FactoredZeta:
    """Image of a Galois-stable class under ``V_r -> (1 - T e(r))^-1``,
    regrouped into ``(1 - T^k)`` factors by Mobius inversion."""
    m = c.cyclotomic_exponents()
    # class = sum_k m_k P_k = sum_d c_d V_d with c_d = sum_{d | k} mu(k/d) m_k
    coeffs: dict[int, int] = {}
    for k, mk in m.items():
        for d in _divisors(k):
            coeffs[d] = coeffs.get(d, 0) + mobius(k // d) * mk
    return FactoredZeta(tuple((d, -cd) for d, cd in coeffs.items()))


def class_of_factored(f: FactoredZeta) -> MonodromyClass:
    out = MonodromyClass()
    for k, e in f.factors:
        out = out + (-e) * class_V(k)
    return out


def zeta_value(c: MonodromyClass, t: complex) -> complex:
    """Direct evaluation ``prod_r (1 - T e(r))^-m_r``; does not need
    Galois stability."""
    val = 1 + 0j
    for r, m in c.items():
        val *= (1 - t * cmath.exp(2j * cmath.pi * float(r))) ** (-m)
    return val
