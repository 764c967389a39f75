"""Coxeter diagrams, the finite-type classification, degree tables, root
system realizations and explicit matrix groups.

Diagram grammar (stable)::

    A3   B2   D4   E6   F4   G2   H3   I2(5)   A1xA1xB2
    0-1:3,1-2:4        explicit edges, "0-1" means label 3
    n=3;0-1:3          explicit vertex count (allows isolated vertices)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations

import numpy as np

from .algebra import RationalMatrix, primitive_integer_vector

__all__ = [
    "CoxeterDiagram",
    "GroupType",
    "RootSystemData",
    "DiagramError",
    "parse_diagram",
    "parse_type",
    "classify",
    "degrees",
    "group_order",
    "root_system",
    "generate_group",
    "molien_series",
    "molien_degrees",
]


class DiagramError(ValueError):
    """Unknown name, malformed edge list or non-finite diagram."""


@dataclass(frozen=True)
class CoxeterDiagram:
    """Simple graph on ``0..n-1``; edges ``(i, j, m)`` with ``i < j`` and
    ``m >= 3``.  Missing pairs commute (label 2)."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        seen = set()
        for i, j, m in self.edges:
            if not (0 <= i < j < self.n):
                raise DiagramError(f"bad edge ({i}, {j}) for {self.n} vertices")
            if m < 3:
                raise DiagramError(f"edge label {m} < 3")
            if (i, j) in seen:
                raise DiagramError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    @classmethod
    def from_edges(cls, n: int, edges) -> "CoxeterDiagram":
        norm = set()
        for i, j, m in edges:
            if i == j:
                raise DiagramError("loops are not allowed")
            norm.add((min(i, j), max(i, j), int(m)))
        return cls(n, frozenset(norm))

    def label(self, i: int, j: int) -> int:
        if i == j:
            return 1
        a, b = min(i, j), max(i, j)
        for u, v, m in self.edges:
            if (u, v) == (a, b):
                return m
        return 2

    def neighbours(self, i: int) -> list[int]:
        out = []
        for u, v, _ in self.edges:
            if u == i:
                out.append(v)
            elif v == i:
                out.append(u)
        return out

    def induced(self, vertices) -> "CoxeterDiagram":
        """Subdiagram on ``vertices``, relabelled in increasing order."""
        vs = sorted(vertices)
        pos = {v: k for k, v in enumerate(vs)}
        edges = [(pos[i], pos[j], m) for i, j, m in self.edges if i in pos and j in pos]
        return CoxeterDiagram.from_edges(len(vs), edges)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbours(v):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def coxeter_matrix(self) -> list[list[int]]:
        return [[self.label(i, j) for j in range(self.n)] for i in range(self.n)]

    def canonical_form(self) -> tuple:
        """Lexicographically least sorted edge list over all relabellings."""
        return _canonical_form(self.n, self.edges)

    def to_string(self) -> str:
        body = ",".join(f"{i}-{j}:{m}" for i, j, m in sorted(self.edges))
        return f"n={self.n};{body}"


@lru_cache(maxsize=None)
def _canonical_form(n: int, edges: frozenset) -> tuple:
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted((min(perm[i], perm[j]), max(perm[i], perm[j]), m) for i, j, m in edges))
        if best is None or key < best:
            best = key
    return (n, best or ())


_FAMILY_ORDER = {"A": 0, "B": 1, "D": 2, "E": 3, "F": 4, "G": 5, "H": 6, "I": 7}

_DEGREES = {
    ("E", 6): [2, 5, 6, 8, 9, 12],
    ("E", 7): [2, 6, 8, 10, 12, 14, 18],
    ("E", 8): [2, 8, 12, 14, 18, 20, 24, 30],
    ("F", 4): [2, 6, 8, 12],
    ("G", 2): [2, 6],
    ("H", 3): [2, 6, 10],
    ("H", 4): [2, 12, 20, 30],
}


@dataclass(frozen=True, order=True)
class Factor:
    """Irreducible finite Coxeter type.  ``param`` is the rank, except for
    ``I`` where it is the dihedral label ``m`` (rank 2)."""

    family: str
    param: int

    def __post_init__(self):
        f, k = self.family, self.param
        ok = {
            "A": k >= 1,
            "B": k >= 2,
            "D": k >= 4,
            "E": k in (6, 7, 8),
            "F": k == 4,
            "G": k == 2,
            "H": k in (3, 4),
            "I": k >= 5 and k != 6,
        }.get(f, False)
        if not ok:
            raise DiagramError(f"{self.name} is not a finite Coxeter type")

    @property
    def name(self) -> str:
        return f"I2({self.param})" if self.family == "I" else f"{self.family}{self.param}"

    @property
    def rank(self) -> int:
        return 2 if self.family == "I" else self.param

    @property
    def sort_key(self):
        return (_FAMILY_ORDER[self.family], self.param)

    def degrees(self) -> list[int]:
        f, k = self.family, self.param
        if f == "A":
            return list(range(2, k + 2))
        if f == "B":
            return list(range(2, 2 * k + 1, 2))
        if f == "D":
            return sorted(list(range(2, 2 * k - 1, 2)) + [k])
        if f == "I":
            return [2, k]
        return list(_DEGREES[(f, k)])

    @property
    def crystallographic(self) -> bool:
        return self.family in "ABDEFG"


def _make_factor(family: str, param: int) -> Factor:
    # dihedral aliases
    if family == "I":
        if param == 3:
            return Factor("A", 2)
        if param == 4:
            return Factor("B", 2)
        if param == 6:
            return Factor("G", 2)
    if family == "B" and param == 1:
        return Factor("A", 1)
    if family == "C":
        return _make_factor("B", param)
    return Factor(family, param)


@dataclass(frozen=True)
class GroupType:
    """Product of irreducible finite Coxeter types in canonical order."""

    factors: tuple[Factor, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=lambda f: f.sort_key)))

    @property
    def name(self) -> str:
        return "x".join(f.name for f in self.factors) if self.factors else "trivial"

    def __str__(self):
        return self.name

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    def degrees(self) -> list[int]:
        return sorted(d for f in self.factors for d in f.degrees())

    @property
    def order(self) -> int:
        return math.prod(self.degrees())

    @property
    def num_reflections(self) -> int:
        return sum(d - 1 for d in self.degrees())

    @property
    def crystallographic(self) -> bool:
        return all(f.crystallographic for f in self.factors)

    @property
    def irreducible(self) -> bool:
        return len(self.factors) == 1


_NAME_RE = re.compile(r"^\s*(?:([A-HC])(\d+)|I2\((\d+)\))\s*$")
_EDGE_RE = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*(?::\s*(\d+))?\s*$")


def parse_type(spec: str) -> GroupType:
    """Parse a product of named types such as ``"A1xB3"``."""
    if not spec or not spec.strip():
        raise DiagramError("empty type name")
    factors = []
    for part in re.split(r"[x×*]", spec.strip()):
        m = _NAME_RE.match(part)
        if not m:
            raise DiagramError(f"unknown Coxeter type {part!r}")
        if m.group(3) is not None:
            factors.append(_make_factor("I", int(m.group(3))))
        else:
            factors.append(_make_factor(m.group(1), int(m.group(2))))
    return GroupType(tuple(factors))


def _factor_diagram(f: Factor) -> tuple[int, list[tuple[int, int, int]]]:
    k, fam = f.rank, f.family
    path = [(i, i + 1, 3) for i in range(k - 1)]
    if fam == "A":
        return k, path
    if fam == "B":
        return k, [(0, 1, 4)] + path[1:]
    if fam == "D":
        return k, [(i, i + 1, 3) for i in range(k - 2)] + [(k - 3, k - 1, 3)]
    if fam == "E":
        return k, [(i, i + 1, 3) for i in range(k - 2)] + [(2, k - 1, 3)]
    if fam == "F":
        return 4, [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
    if fam == "G":
        return 2, [(0, 1, 6)]
    if fam == "H":
        return k, [(0, 1, 5)] + path[1:]
    return 2, [(0, 1, f.param)]


def diagram_of_type(t: GroupType) -> CoxeterDiagram:
    edges, off = [], 0
    for f in t.factors:
        k, es = _factor_diagram(f)
        edges += [(i + off, j + off, m) for i, j, m in es]
        off += k
    return CoxeterDiagram.from_edges(off, edges)


def parse_diagram(spec: str) -> CoxeterDiagram:
    """Named type, product of named types, or explicit edge list."""
    s = spec.strip()
    if not s:
        raise DiagramError("empty diagram specification")
    if re.match(r"^\s*(n\s*=|\d)", s):
        n = None
        if s.startswith("n"):
            head, _, s = s.partition(";")
            try:
                n = int(head.split("=", 1)[1])
            except (IndexError, ValueError):
                raise DiagramError(f"malformed vertex count {head!r}") from None
        edges = []
        for part in filter(None, (p.strip() for p in s.split(","))):
            m = _EDGE_RE.match(part)
            if not m:
                raise DiagramError(f"malformed edge {part!r}")
            i, j = int(m.group(1)), int(m.group(2))
            label = int(m.group(3)) if m.group(3) else 3
            if label < 3:
                raise DiagramError(f"edge label {label} < 3 in {part!r}")
            edges.append((i, j, label))
        top = max((max(i, j) for i, j, _ in edges), default=-1) + 1
        if n is None:
            n = top
        elif n < top:
            raise DiagramError(f"vertex count {n} too small for the edges given")
        if n == 0:
            raise DiagramError("diagram has no vertices")
        return CoxeterDiagram.from_edges(n, edges)
    return diagram_of_type(parse_type(s))


def _classify_connected(d: CoxeterDiagram) -> Factor:
    n = d.n
    if n == 1:
        return Factor("A", 1)
    if n == 2:
        m = d.label(0, 1)
        return _make_factor("I", m)
    if len(d.edges) != n - 1:
        raise DiagramError("diagram contains a cycle; not of finite type")
    labels = sorted(m for _, _, m in d.edges)
    big = [m for m in labels if m > 3]
    deg = [len(d.neighbours(v)) for v in range(n)]
    branch = [v for v in range(n) if deg[v] >= 3]
    if big:
        if len(big) > 1 or branch or big[0] > 5:
            raise DiagramError("label combination outside the finite classification")
        (i, j, m) = next(e for e in d.edges if e[2] > 3)
        at_end = deg[i] == 1 or deg[j] == 1
        if m == 4:
            if at_end:
                return Factor("B", n)
            if n == 4:
                return Factor("F", 4)
        elif m == 5 and at_end and n in (3, 4):
            return Factor("H", n)
        raise DiagramError("label combination outside the finite classification")
    if not branch:
        return Factor("A", n)
    if len(branch) > 1 or deg[branch[0]] > 3:
        raise DiagramError("simply-laced tree is not of finite type")
    c = branch[0]
    arms = []
    for start in d.neighbours(c):
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in d.neighbours(cur) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return Factor("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return Factor("E", n)
    raise DiagramError("simply-laced tree is not of finite type")


def classify(d: CoxeterDiagram) -> GroupType:
    """Identify every connected component as a finite type."""
    return GroupType(tuple(_classify_connected(d.induced(c)) for c in d.components()))


def degrees(t: GroupType | str) -> list[int]:
    if isinstance(t, str):
        t = parse_type(t)
    return t.degrees()


def group_order(t: GroupType) -> int:
    return t.order


# ---------------------------------------------------------------------------
# root systems


@dataclass(frozen=True)
class RootSystemData:
    """Concrete realization of a Coxeter group on ``V = R^n``.

    ``q(x) = x^T gram x``; ``simple_roots`` are vectors in the same
    coordinates; ``forms[i]`` is the coefficient row of the linear form
    cutting out the i-th reflection hyperplane.  Exact realizations hold
    Fractions, floating ones hold floats.
    """

    type: GroupType
    simple_roots: tuple[tuple, ...]
    gram: tuple[tuple, ...]
    forms: tuple[tuple, ...]
    exact: bool

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def num_hyperplanes(self) -> int:
        return len(self.forms)

    def reflection_order(self, i: int) -> int:
        return 2

    @cached_property
    def gram_matrix(self) -> RationalMatrix:
        if not self.exact:
            raise TypeError(f"{self.type} has no exact realization")
        return RationalMatrix(self.gram)

    def gram_float(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.gram], dtype=float)

    def forms_float(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.forms], dtype=float).reshape(
            len(self.forms), self.rank
        )

    def reflections(self) -> list[RationalMatrix]:
        """Exact reflection matrices for the simple roots."""
        g = self.gram_matrix
        return [_reflection_matrix(a, g) for a in self.simple_roots]

    def discr_q(self):
        """``det(gram)``: exact for exact realizations, float otherwise."""
        if self.exact:
            return self.gram_matrix.det()
        return float(np.linalg.det(self.gram_float()))

    def kappa(self):
        """``prod_i q*(l_i)/4`` where ``q*(l) = l^T gram^-1 l`` is the dual form."""
        if self.exact:
            inv = self.gram_matrix.inverse()
            out = Fraction(1)
            for f in self.forms:
                v = inv @ list(f)
                out *= sum((a * b for a, b in zip(f, v)), Fraction(0)) / 4
            return out
        lf = self.forms_float()
        dual = np.einsum("ij,jk,ik->i", lf, np.linalg.inv(self.gram_float()), lf)
        return float(np.prod(dual / 4))

    def with_forms(self, forms) -> "RootSystemData":
        """Same realization with rescaled (or re-chosen) hyperplane equations."""
        return RootSystemData(self.type, self.simple_roots, self.gram, tuple(map(tuple, forms)), self.exact)


def _reflection_matrix(alpha, g: RationalMatrix) -> RationalMatrix:
    ga = g @ alpha
    norm = sum((a * b for a, b in zip(alpha, ga)), Fraction(0))
    n = len(alpha)
    return RationalMatrix(
        [[Fraction(int(i == j)) - 2 * alpha[i] * ga[j] / norm for j in range(n)] for i in range(n)]
    )


def _cartan_gram(d: CoxeterDiagram) -> list[list[int]]:
    """Symmetric Gram matrix of a simply-laced diagram with roots of norm 2."""
    return [[2 if i == j else (-1 if d.label(i, j) == 3 else 0) for j in range(d.n)] for i in range(d.n)]


def _unit(n: int, i: int) -> list[Fraction]:
    return [Fraction(int(k == i)) for k in range(n)]


def _exact_factor_data(f: Factor) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """(simple roots, gram) for an irreducible crystallographic type."""
    k = f.rank
    fam = f.family
    if fam == "A" and k == 1:
        return [[Fraction(1)]], [[Fraction(1)]]
    if fam in "AE":
        gram = _cartan_gram(diagram_of_type(GroupType((f,))))
        return [_unit(k, i) for i in range(k)], [[Fraction(x) for x in r] for r in gram]
    eye = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    if fam == "B":
        roots = [_unit(k, 0)]
        for i in range(1, k):
            v = [Fraction(0)] * k
            v[i], v[i - 1] = Fraction(1), Fraction(-1)
            roots.append(v)
        return roots, eye
    if fam == "D":
        roots = [[Fraction(x) for x in [-1, 1] + [0] * (k - 2)], [Fraction(x) for x in [1, 1] + [0] * (k - 2)]]
        for i in range(2, k):
            v = [Fraction(0)] * k
            v[i], v[i - 1] = Fraction(1), Fraction(-1)
            roots.append(v)
        return roots, eye
    if fam == "F":
        h = Fraction(1, 2)
        roots = [
            [Fraction(x) for x in (0, 1, -1, 0)],
            [Fraction(x) for x in (0, 0, 1, -1)],
            [Fraction(x) for x in (0, 0, 0, 1)],
            [h, -h, -h, -h],
        ]
        return roots, eye
    if fam == "G":
        return [_unit(2, 0), _unit(2, 1)], [[Fraction(2), Fraction(-3)], [Fraction(-3), Fraction(6)]]
    raise ValueError(f"{f.name} has no exact rational realization")


def _close_roots_exact(simple, g: RationalMatrix) -> list[tuple[Fraction, ...]]:
    refl = [_reflection_matrix(a, g) for a in simple]
    roots = {tuple(a) for a in simple}
    frontier = list(roots)
    while frontier:
        new = []
        for r in frontier:
            for s in refl:
                v = s @ r
                if v not in roots:
                    roots.add(v)
                    new.append(v)
        frontier = new
        if len(roots) > 10_000:
            raise RuntimeError("root closure exceeded safety bound")
    return sorted(roots)


def _exact_root_system(t: GroupType) -> RootSystemData:
    simple_blocks, gram_blocks = [], []
    for f in t.factors:
        s, g = _exact_factor_data(f)
        simple_blocks.append(s)
        gram_blocks.append(RationalMatrix(g))
    n = t.rank
    gram = RationalMatrix.block_diagonal(gram_blocks)
    simple = []
    off = 0
    for s, g in zip(simple_blocks, gram_blocks):
        for a in s:
            v = [Fraction(0)] * n
            v[off:off + len(a)] = a
            simple.append(tuple(v))
        off += g.nrows
    roots = _close_roots_exact(simple, gram)
    forms = sorted({primitive_integer_vector(gram @ r) for r in roots}, reverse=True)
    forms_q = tuple(tuple(Fraction(x) for x in f) for f in forms)
    return RootSystemData(t, tuple(simple), gram.rows, forms_q, True)


def _float_root_system(t: GroupType) -> RootSystemData:
    """Orthonormal-coordinate realization built from the Coxeter matrix."""
    d = diagram_of_type(t)
    n = d.n
    bil = np.array([[1.0 if i == j else -math.cos(math.pi / d.label(i, j)) for j in range(n)] for i in range(n)])
    chol = np.linalg.cholesky(bil)
    simple = [chol[i] for i in range(n)]
    roots = [v.copy() for v in simple]
    keys = {tuple(np.round(v, 9)) for v in roots}
    frontier = list(roots)
    while frontier:
        new = []
        for r in frontier:
            for a in simple:
                v = r - 2 * np.dot(a, r) * a
                key = tuple(np.round(v, 9))
                if key not in keys:
                    keys.add(key)
                    roots.append(v)
                    new.append(v)
        frontier = new
        if len(roots) > 10_000:
            raise RuntimeError("root closure exceeded safety bound")
    forms = {}
    for r in roots:
        v = r / np.linalg.norm(r)
        lead = next(x for x in v if abs(x) > 1e-9)
        if lead < 0:
            v = -v
        forms[tuple(np.round(v, 9))] = v
    ordered = sorted(forms.values(), key=lambda v: tuple(-np.round(v, 9)))
    eye = tuple(tuple(float(i == j) for j in range(n)) for i in range(n))
    return RootSystemData(
        t,
        tuple(tuple(float(x) for x in v) for v in simple),
        eye,
        tuple(tuple(float(x) for x in v) for v in ordered),
        False,
    )


def root_system(t: GroupType | str, *, exact: bool | None = None) -> RootSystemData:
    """Realization of ``t``.  Crystallographic types are exact by default;
    ``exact=False`` forces the floating construction."""
    if isinstance(t, str):
        t = parse_type(t)
    if exact is None:
        exact = t.crystallographic
    if exact:
        return _exact_root_system(t)
    return _float_root_system(t)


# ---------------------------------------------------------------------------
# matrix groups and the Molien oracle


def generate_group(r: RootSystemData, *, bound: int = 200_000) -> set[RationalMatrix]:
    """Close the simple reflections under multiplication."""
    if not r.exact:
        raise TypeError(f"{r.type} has no exact realization")
    gens = r.reflections()
    ident = RationalMatrix.identity(r.rank)
    group = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = g @ s
                if h not in group:
                    group.add(h)
                    new.append(h)
                    if len(group) > bound:
                        raise RuntimeError(f"group closure exceeded {bound} elements")
        frontier = new
    return group


def _series_inverse(poly: list[Fraction], order: int) -> list[Fraction]:
    """Power series of ``1/poly`` up to ``t^order`` (``poly[0] != 0``)."""
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / poly[0]
    for k in range(1, order + 1):
        acc = sum((poly[j] * out[k - j] for j in range(1, min(k, len(poly) - 1) + 1)), Fraction(0))
        out[k] = -acc / poly[0]
    return out


def molien_series(group, order: int) -> list[Fraction]:
    """Coefficients of ``(1/|G|) sum_g det(1 - t g)^-1`` up to ``t^order``."""
    counts: dict[tuple, int] = {}
    for g in group:
        cp = tuple(g.charpoly())
        counts[cp] = counts.get(cp, 0) + 1
    total = [Fraction(0)] * (order + 1)
    size = 0
    for cp, c in counts.items():
        # det(1 - t g) = t^n charpoly(1/t): reversed coefficients
        rev = list(reversed(cp))
        inv = _series_inverse(rev, order)
        for k in range(order + 1):
            total[k] += c * inv[k]
        size += c
    return [x / size for x in total]


def molien_degrees(group, *, rank: int | None = None) -> list[int]:
    """Read the degrees off the Molien series by peeling factors
    ``1/(1 - t^d)``; fails loudly when no degree multiset fits."""
    group = list(group)
    n = rank if rank is not None else group[0].nrows
    # |G| = prod d_i bounds every degree, and sum d_i <= |G| + n
    bound = len(group) + n
    series = molien_series(group, bound)
    found: list[int] = []
    residue = series[:]
    for k in range(1, bound + 1):
        c = residue[k]
        if c == 0:
            continue
        if c.denominator != 1 or c < 0:
            raise ValueError(f"Molien series is not a product of 1/(1-t^d) (coefficient {c} at t^{k})")
        for _ in range(int(c)):
            found.append(k)
            residue = [residue[i] - (residue[i - k] if i >= k else 0) for i in range(len(residue))]
        if len(found) >= n:
            break
    if len(found) != n:
        raise ValueError(f"found {len(found)} degrees for a rank-{n} group")
    check_to = sum(found)
    if any(residue[i] != (1 if i == 0 else 0) for i in range(min(check_to, bound) + 1)):
        raise ValueError("Molien series does not match any degree multiset")
    return sorted(found)
