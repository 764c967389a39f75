"""Character sums over prime fields for the discriminant in quotient
coordinates, and the Gauss-sum product they are compared against."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from .coxeter import RootSystemData, parse_type, root_system
from .invariants import (
    InvariantPresentation,
    _group,
    discriminant_in_invariants,
    discriminant_poly,
)

__all__ = [
    "BadPrimeError",
    "PrimeField",
    "MultChar",
    "CharSumReport",
    "gauss_sum",
    "kappa_mod_p",
    "disc_table",
    "char_sum",
    "rhs_theorem_finite",
    "verify_finite",
    "orbit_sanity",
]


class BadPrimeError(ValueError):
    """The prime divides the group order or a denominator of the data."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


class PrimeField:
    """``F_p`` for an odd prime, with its smallest primitive root and a
    discrete-log table (``dlog[0] = -1``)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"{p!r} is not a prime")
        if p == 2:
            raise ValueError("characteristic 2 is excluded")
        self.p = p
        self.generator = self._primitive_root()
        dlog = np.full(p, -1, dtype=np.int64)
        x = 1
        for k in range(p - 1):
            dlog[x] = k
            x = x * self.generator % p
        self.dlog = dlog

    def _primitive_root(self) -> int:
        p = self.p
        factors = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
        for g in range(2, p):
            if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
                return g
        raise AssertionError("every prime has a primitive root")

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def reduce(self, x) -> int:
        """Image of a rational number; raises if the denominator vanishes."""
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise BadPrimeError(f"{self.p} divides the denominator of {x}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def psi(self, x: int) -> complex:
        return cmath.exp(2j * cmath.pi * (x % self.p) / self.p)

    @cached_property
    def psi_table(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.p) / self.p)

    def characters(self) -> list["MultChar"]:
        return [MultChar(self, j) for j in range(self.p - 1)]

    @property
    def phi(self) -> "MultChar":
        return MultChar(self, (self.p - 1) // 2)


@dataclass(frozen=True)
class MultChar:
    """``chi(g^k) = exp(2 pi i j k / (p - 1))``; ``chi(0) = 0``."""

    field: PrimeField
    index: int

    def __post_init__(self):
        object.__setattr__(self, "index", self.index % (self.field.p - 1))

    @property
    def is_trivial(self) -> bool:
        return self.index == 0

    def __mul__(self, other: "MultChar") -> "MultChar":
        return MultChar(self.field, self.index + other.index)

    def __pow__(self, k: int) -> "MultChar":
        return MultChar(self.field, self.index * k)

    def conj(self) -> "MultChar":
        return MultChar(self.field, -self.index)

    def __call__(self, x) -> complex:
        x = self.field.reduce(x) if isinstance(x, Fraction) else x % self.field.p
        if x == 0:
            return 0j
        k = int(self.field.dlog[x])
        return cmath.exp(2j * cmath.pi * self.index * k / (self.field.p - 1))

    def table(self) -> np.ndarray:
        """Values on ``0..p-1`` (zero at 0)."""
        p = self.field.p
        vals = np.exp(2j * np.pi * self.index * self.field.dlog / (p - 1))
        vals[0] = 0
        return vals


def gauss_sum(chi: MultChar) -> complex:
    """``g(chi) = -sum_{x != 0} chi(x) psi(x)``, so ``g(trivial) = 1``."""
    f = chi.field
    return -complex(np.sum(chi.table() * f.psi_table))


def _as_root_data(t) -> RootSystemData:
    if isinstance(t, RootSystemData):
        return t
    r = root_system(parse_type(t) if isinstance(t, str) else t)
    if not r.exact:
        raise BadPrimeError(f"{r.type} has no rational realization")
    return r


def _check_prime(r: RootSystemData, f: PrimeField) -> None:
    if r.type.order % f.p == 0:
        raise BadPrimeError(f"{f.p} divides |G| = {r.type.order}")
    if f.reduce(r.discr_q()) == 0:
        raise BadPrimeError(f"{f.p} divides discr q = {r.discr_q()}")


def kappa_mod_p(r, f: PrimeField) -> int:
    r = _as_root_data(r)
    _check_prime(r, f)
    k = f.reduce(r.kappa())
    if k == 0:
        raise BadPrimeError(f"kappa = {r.kappa()} vanishes mod {f.p}")
    return k


def disc_table(pres: InvariantPresentation, f: PrimeField) -> np.ndarray:
    """Values of the discriminant mod p on ``F_p^n``, shape ``(p,) * n``."""
    if pres.disc is None:
        raise ValueError("presentation has no discriminant")
    p, n = f.p, pres.rank
    grid = np.indices((p,) * n, dtype=np.int64)
    deg = max((max(e) for e in pres.disc.terms), default=0)
    powers = [[np.ones_like(grid[0])] for _ in range(n)]
    for i in range(n):
        for _ in range(deg):
            powers[i].append(powers[i][-1] * grid[i] % p)
    out = np.zeros_like(grid[0])
    for exp, c in pres.disc.terms.items():
        term = np.full_like(grid[0], f.reduce(c))
        for i, e in enumerate(exp):
            if e:
                term = term * powers[i][e] % p
        out = (out + term) % p
    return out


class _SumContext:
    """Per ``(type, p)`` data shared by all characters."""

    def __init__(self, t, f: PrimeField, *, root_data=None, pres=None):
        self.field = f
        self.root_data = _as_root_data(root_data if root_data is not None else t)
        _check_prime(self.root_data, f)
        if pres is None or pres.disc is None:
            pres = discriminant_in_invariants(self.root_data, pres=pres)
        self.pres = pres
        self.table = disc_table(pres, f)
        # psi(y_1) broadcast over the remaining coordinates
        y1 = np.indices(self.table.shape)[0]
        self.psi_y1 = f.psi_table[y1]
        self.log = f.dlog[self.table]
        self.mask = self.table != 0

    def char_sum(self, chi: MultChar) -> complex:
        p = self.field.p
        vals = np.exp(2j * np.pi * chi.index * self.log / (p - 1))
        return complex(np.sum(np.where(self.mask, vals * self.psi_y1, 0)))

    def rhs(self, chi: MultChar) -> complex:
        return _rhs(self.root_data, self.field, chi)


def char_sum(t, f: PrimeField, chi: MultChar, *, root_data=None, pres=None) -> complex:
    """``sum_{y : disc(y) != 0} chi(disc(y)) psi(y_1)`` over ``F_p^n``."""
    return _SumContext(t, f, root_data=root_data, pres=pres).char_sum(chi)


def _rhs(r: RootSystemData, f: PrimeField, chi: MultChar) -> complex:
    phi = f.phi
    kappa = kappa_mod_p(r, f)
    phichi = phi * chi
    val = (-1) ** r.rank * phi(f.reduce(r.discr_q())) * gauss_sum(phi) ** r.rank
    val *= phi(kappa) * chi(kappa)
    g_pc = gauss_sum(phichi)
    for d in r.type.degrees():
        val *= gauss_sum(phichi**d) / g_pc
    return val


def rhs_theorem_finite(t, f: PrimeField, chi: MultChar, *, root_data=None) -> complex:
    """Gauss-sum product predicted for :func:`char_sum`."""
    return _rhs(_as_root_data(root_data if root_data is not None else t), f, chi)


@dataclass(frozen=True)
class CharSumRow:
    chi_index: int
    S: complex
    RHS: complex

    @property
    def abs_diff(self) -> float:
        return abs(self.S - self.RHS)

    def passed(self, tol: float = 1e-6) -> bool:
        return self.abs_diff < tol * (1 + abs(self.RHS))


@dataclass(frozen=True)
class CharSumReport:
    type: str
    p: int
    rows: tuple[CharSumRow, ...]
    tol: float = 1e-6

    @property
    def passed(self) -> bool:
        if not self.rows:
            return False
        worst = max(row.abs_diff for row in self.rows)
        return worst < self.tol * (1 + max(abs(row.RHS) for row in self.rows))

    @property
    def num_passed(self) -> int:
        return sum(row.passed(self.tol) for row in self.rows)

    def to_json(self) -> list[dict]:
        return [
            {
                "type": self.type,
                "p": self.p,
                "chi_index": row.chi_index,
                "S_re": row.S.real,
                "S_im": row.S.imag,
                "RHS_re": row.RHS.real,
                "RHS_im": row.RHS.imag,
                "abs_diff": row.abs_diff,
                "pass": row.passed(self.tol),
            }
            for row in self.rows
        ]


def verify_finite(t, f: PrimeField | int, *, chi=None, root_data=None, pres=None, tol: float = 1e-6) -> CharSumReport:
    """Compare both sides for every character (or just ``chi``)."""
    f = PrimeField(f) if isinstance(f, int) else f
    ctx = _SumContext(t, f, root_data=root_data, pres=pres)
    if chi is None:
        chars = f.characters()
    else:
        chars = [chi if isinstance(chi, MultChar) else MultChar(f, int(chi))]
    rows = tuple(CharSumRow(c.index, ctx.char_sum(c), ctx.rhs(c)) for c in chars)
    return CharSumReport(ctx.root_data.type.name, f.p, rows, tol)


def orbit_sanity(t, f: PrimeField | int, *, pres: InvariantPresentation | None = None) -> bool:
    """Every fibre of ``x -> (f_1(x), ..., f_n(x))`` over a point with
    nonzero discriminant is one free orbit of the group reduced mod p."""
    f = PrimeField(f) if isinstance(f, int) else f
    r = _as_root_data(t)
    _check_prime(r, f)
    pres = pres or discriminant_in_invariants(r)
    p, n = f.p, r.rank
    group = [tuple(tuple(f.reduce(x) for x in row) for row in g.rows) for g in _group(r)]
    inv = [{e: f.reduce(c) for e, c in fi.terms.items()} for fi in pres.invariants]
    disc = {e: f.reduce(c) for e, c in discriminant_poly(r).terms.items()}

    def ev(terms, x):
        s = 0
        for e, c in terms.items():
            m = c
            for xi, k in zip(x, e):
                m = m * pow(xi, k, p) % p
            s += m
        return s % p

    fibres: dict[tuple, set] = {}
    for x in product(range(p), repeat=n):
        if ev(disc, x) == 0:
            continue
        fibres.setdefault(tuple(ev(fi, x) for fi in inv), set()).add(x)
    for pts in fibres.values():
        x = next(iter(pts))
        orbit = {tuple(sum(g[i][j] * x[j] for j in range(n)) % p for i in range(n)) for g in group}
        if orbit != pts or len(orbit) != len(group):
            return False
    return True
