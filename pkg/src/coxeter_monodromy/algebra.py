"""Exact arithmetic kernel: sparse multivariate polynomials over Q, small
rational matrices and an exact linear solver.

Rationals are plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "MultiPoly",
    "RationalMatrix",
    "LinearSystemError",
    "InconsistentSystemError",
    "UnderdeterminedSystemError",
    "solve_linear",
    "primitive_integer_vector",
    "nullspace",
    "rank",
]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class MultiPoly:
    """Polynomial in ``nvars`` variables with rational coefficients.

    Terms are stored as ``{exponent tuple: Fraction}`` with zero coefficients
    dropped.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            c = _frac(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        """The linear form ``sum(c_i * x_i)``."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(n, terms)

    @classmethod
    def quadratic(cls, gram: "RationalMatrix") -> "MultiPoly":
        """The quadratic form ``x^T gram x``."""
        n = gram.nrows
        terms: dict[tuple[int, ...], Fraction] = {}
        for i in range(n):
            for j in range(n):
                c = gram[i, j]
                if c:
                    exp = [0] * n
                    exp[i] += 1
                    exp[j] += 1
                    key = tuple(exp)
                    terms[key] = terms.get(key, Fraction(0)) + c
        return cls(n, terms)

    # basic protocol -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = _var_names(self.nvars)
        parts = []
        for exp in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[exp]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(exp) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            if not other:
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # queries ------------------------------------------------------------
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def eval(self, point: Sequence):
        """Evaluate at ``point``; exact for rational inputs."""
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = 0
        for exp, c in self.terms.items():
            term = c
            for x, k in zip(point, exp):
                if k:
                    term = term * x**k
            total = total + term
        return total if self.terms else Fraction(0)

    __call__ = eval

    def diff(self, i: int) -> "MultiPoly":
        terms = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k:
                e = list(exp)
                e[i] -= 1
                terms[tuple(e)] = c * k
        return MultiPoly(self.nvars, terms)

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``subs[i]`` for variable ``i``."""
        if len(subs) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutions, got {len(subs)}")
        if not subs:
            return self
        m = subs[0].nvars
        for s in subs:
            if s.nvars != m:
                raise ValueError("substituted polynomials disagree on variable count")
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(m, 1)} for _ in subs]

        def power(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * subs[i]
            return cache[k]

        result = MultiPoly(m)
        for exp, c in self.terms.items():
            term = MultiPoly.constant(m, c)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def linear_substitute(self, matrix: "RationalMatrix") -> "MultiPoly":
        """``p(M x)`` for a square matrix ``M``."""
        rows = [MultiPoly.linear(matrix.row(i)) for i in range(matrix.nrows)]
        return self.compose(rows)

    def map_coefficients(self, f) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: f(c) for e, c in self.terms.items()})

    def common_denominator(self) -> int:
        return reduce(_lcm, (c.denominator for c in self.terms.values()), 1)


def _var_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total ``degree`` in graded lexicographic order
    (``x1^d`` first)."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def weighted_exponents(weights: Sequence[int], total: int) -> list[tuple[int, ...]]:
    """All ``alpha`` with ``sum(alpha_i * weights_i) == total``."""
    if not weights:
        return [()] if total == 0 else []
    out = []
    w = weights[0]
    for k in range(total // w, -1, -1):
        for rest in weighted_exponents(weights[1:], total - k * w):
            out.append((k,) + rest)
    return out


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(_frac(x) for x in r) for r in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diagonal(cls, blocks: Sequence["RationalMatrix"]) -> "RationalMatrix":
        n = sum(b.nrows for b in blocks)
        rows = [[Fraction(0)] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    rows[off + i][off + j] = b[i, j]
            off += b.nrows
        return cls(rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"RationalMatrix([{body}])"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows)) if self.rows else self

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError("dimension mismatch")
            cols = other.transpose().rows
            return RationalMatrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows]
            )
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * _frac(b) for a, b in zip(r, vec)), Fraction(0)) for r in self.rows)

    def __add__(self, other: "RationalMatrix"):
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "RationalMatrix"):
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "RationalMatrix":
        c = _frac(c)
        return RationalMatrix([[a * c for a in r] for r in self.rows])

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        n = len(a)
        sign = 1
        d = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k]), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            d *= a[k][k]
            for i in range(k + 1, n):
                if a[i][k]:
                    f = a[i][k] / a[k][k]
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
        return sign * d

    def inverse(self) -> "RationalMatrix":
        n = self.nrows
        cols = []
        for j in range(n):
            e = [Fraction(int(i == j)) for i in range(n)]
            cols.append(solve_linear(self, e))
        return RationalMatrix(cols).transpose()

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def charpoly(self) -> list[Fraction]:
        """Coefficients ``c_0..c_n`` of ``det(t I - A) = sum c_k t^k``
        (Faddeev-LeVerrier)."""
        n = self.nrows
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        m = RationalMatrix([[0] * n for _ in range(n)])
        ident = RationalMatrix.identity(n)
        for k in range(1, n + 1):
            m = self @ m + ident.scale(coeffs[n - k + 1])
            coeffs[n - k] = -(self @ m).trace() / k
        return coeffs

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.rows], dtype=float)


class LinearSystemError(ValueError):
    """Base class for solve failures."""


class InconsistentSystemError(LinearSystemError):
    """``A v = b`` has no solution."""


class UnderdeterminedSystemError(LinearSystemError):
    """``A v = b`` has more than one solution."""


def _integer_rows(a: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in a:
        den = reduce(_lcm, (x.denominator for x in r), 1)
        out.append([int(x * den) for x in r])
    return out


def _row_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination on integer rows.  Pivots are the
    first nonzero entry in each column; rows are kept gcd-reduced."""
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                new = [p * x - f * y for x, y in zip(rows[i], rows[r])]
                g = reduce(gcd, new, 0)
                rows[i] = [x // g for x in new] if g > 1 else new
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_linear(a: RationalMatrix | Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``a v = b`` exactly.

    Raises :class:`InconsistentSystemError` when there is no solution and
    :class:`UnderdeterminedSystemError` when the solution is not unique.
    """
    rows_a = a.rows if isinstance(a, RationalMatrix) else [[_frac(x) for x in r] for r in a]
    b = [_frac(x) for x in b]
    if len(rows_a) != len(b):
        raise ValueError("dimension mismatch between matrix and right-hand side")
    ncols = len(rows_a[0]) if rows_a else 0
    aug = _integer_rows([list(r) + [bi] for r, bi in zip(rows_a, b)])
    ech, pivots = _row_echelon(aug, ncols)
    for r in ech[len(pivots):]:
        if r[ncols]:
            raise InconsistentSystemError("system is inconsistent")
    if len(pivots) < ncols:
        raise UnderdeterminedSystemError(
            f"system has a {ncols - len(pivots)}-dimensional solution space"
        )
    sol = [Fraction(0)] * ncols
    for r in range(len(pivots) - 1, -1, -1):
        row = ech[r]
        c = pivots[r]
        acc = Fraction(row[ncols]) - sum(Fraction(row[j]) * sol[j] for j in range(c + 1, ncols))
        sol[c] = acc / row[c]
    return sol


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    rows = _integer_rows([[_frac(x) for x in v] for v in vectors])
    _, pivots = _row_echelon(rows, len(rows[0]))
    return len(pivots)


def nullspace(vectors: Sequence[Sequence], n: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x in Q^n : v . x = 0 for every v in vectors}``."""
    if not vectors:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    rows = _integer_rows([[_frac(x) for x in v] for v in vectors])
    ech, pivots = _row_echelon(rows, n)
    ech = ech[: len(pivots)]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = ech[r]
            acc = -sum((Fraction(row[j]) * x[j] for j in range(c + 1, n)), Fraction(0))
            x[c] = acc / row[c]
        basis.append(tuple(x))
    return basis


def primitive_integer_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers whose first
    nonzero entry is positive."""
    if not any(v):
        raise ValueError("zero vector has no primitive representative")
    if all(isinstance(x, int) for x in v):
        ints = list(v)
    else:
        v = [_frac(x) for x in v]
        den = reduce(_lcm, (x.denominator for x in v), 1)
        ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def symbolic_det(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a small square matrix of polynomials (Laplace)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * symbolic_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else MultiPoly(m[0][0].nvars)
