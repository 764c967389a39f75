"""Local monodromy of Coxeter discriminants from the subdiagram recursion,
and the classes derived from it.

Additive form of the recursion, summed over connected subdiagrams ``E`` of a
diagram with degrees ``d_1..d_n``::

    sum_E (-1)^|E| phi_twist(M(E)) = n V_1 - sum_i V_{d_i}

The top term (``E`` = whole diagram) is solved for; everything smaller is
memoized by canonical diagram form.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .classes import (
    MonodromyClass,
    V_PHI,
    class_chi,
    class_V,
    phi_twist,
    tensor,
    zeta_of_class,
)
from .coxeter import CoxeterDiagram, GroupType, classify, parse_diagram

__all__ = [
    "DiagramClassCache",
    "AbCoefficients",
    "IdentityCheck",
    "connected_subgraphs",
    "local_class_M",
    "local_class_Mbar",
    "brieskorn_oracle",
    "global_class_at_0",
    "global_class_at_inf",
    "exactbar_class",
    "ab_coefficients",
    "qN_class",
    "resummation",
    "check_deg",
    "check_conn",
    "check_compl",
    "check_otherform",
    "check_ab2",
    "MAX_RANK",
]

MAX_RANK = 8


def _as_diagram(d) -> CoxeterDiagram:
    return parse_diagram(d) if isinstance(d, str) else d


class DiagramClassCache:
    """Canonical diagram form -> class, with atomic get-or-compute."""

    def __init__(self):
        self._data: dict[tuple, MonodromyClass] = {}
        self._lock = threading.RLock()

    def get_or_compute(self, key: tuple, compute: Callable[[], MonodromyClass]) -> MonodromyClass:
        with self._lock:
            if key not in self._data:
                self._data[key] = compute()
            return self._data[key]

    def __contains__(self, key):
        return key in self._data

    def __len__(self):
        return len(self._data)

    def clear(self):
        with self._lock:
            self._data.clear()


_CACHE = DiagramClassCache()


def connected_subgraphs(d) -> list[tuple[tuple[int, ...], GroupType]]:
    """Nonempty vertex subsets inducing a connected subdiagram, with the
    induced type.  Ordered by size, then lexicographically."""
    d = _as_diagram(d)
    out = []
    for mask in range(1, 1 << d.n):
        vs = tuple(i for i in range(d.n) if mask >> i & 1)
        sub = d.induced(vs)
        if sub.is_connected():
            out.append((vs, classify(sub)))
    out.sort(key=lambda item: (len(item[0]), item[0]))
    return out


def _rhs_class(degs: list[int]) -> MonodromyClass:
    out = len(degs) * class_V(1)
    for d in degs:
        out = out - class_V(d)
    return out


def local_class_M(d, *, cache: DiagramClassCache | None = None) -> MonodromyClass:
    """Class of the invariant nearby cycles of the discriminant at the
    origin.  Zero for disconnected diagrams."""
    d = _as_diagram(d)
    if d.n > MAX_RANK:
        raise ValueError(f"rank {d.n} exceeds the supported maximum {MAX_RANK}")
    if not d.is_connected():
        return MonodromyClass()
    cache = _CACHE if cache is None else cache
    return cache.get_or_compute(d.canonical_form(), lambda: _solve_top(d, cache))


def _solve_top(d: CoxeterDiagram, cache: DiagramClassCache) -> MonodromyClass:
    degs = classify(d).degrees()
    acc = _rhs_class(degs)
    n = d.n
    for vs, _ in connected_subgraphs(d):
        if len(vs) == n:
            continue
        sub = local_class_M(d.induced(vs), cache=cache)
        acc = acc - (-1) ** len(vs) * phi_twist(sub)
    return phi_twist((-1) ** n * acc)


def local_class_Mbar(d) -> MonodromyClass:
    d = _as_diagram(d)
    return (-1) ** (d.n - 1) * local_class_M(d)


def brieskorn_oracle(a: int, b: int) -> MonodromyClass:
    """Class of the nearby cycles of ``x^a + y^b`` at the origin: trivial
    ``H^0`` minus the ``H^1`` eigenvalues ``exp(2 pi i (i/a + j/b))``."""
    if a < 2 or b < 2:
        raise ValueError("Brieskorn exponents must be >= 2")
    out = class_V(1)
    for i in range(1, a):
        for j in range(1, b):
            out = out - class_chi(Fraction(i, a) + Fraction(j, b))
    return out


def _require_connected(d: CoxeterDiagram):
    if not d.is_connected():
        raise ValueError("diagram must be connected")


def global_class_at_0(d) -> MonodromyClass:
    """``(-1)^n sum_{E proper connected} Mbar(E)``."""
    d = _as_diagram(d)
    _require_connected(d)
    out = MonodromyClass()
    for vs, _ in connected_subgraphs(d):
        if len(vs) < d.n:
            out = out + (-1) ** (len(vs) - 1) * local_class_M(d.induced(vs))
    return (-1) ** d.n * out


def _n_and_N(d: CoxeterDiagram) -> tuple[int, int]:
    return d.n, classify(d).num_reflections


def exactbar_class(d, chi) -> MonodromyClass:
    """``(-1)^(n-1) V_{phi^(n+N) chi^N}`` as a single character."""
    d = _as_diagram(d)
    n, N = _n_and_N(d)
    r = (N * Fraction(chi) + Fraction(n + N, 2)) % 1
    return (-1) ** (n - 1) * class_chi(r)


@dataclass(frozen=True)
class AbCoefficients:
    a_bar: int
    b_bar: int

    def __post_init__(self):
        if abs(self.a_bar + self.b_bar) != 1:
            raise ValueError("a_bar + b_bar must be +-1")


def ab_coefficients(d) -> AbCoefficients:
    """Parity rule: all weight on ``V_1`` when ``n + N`` is even, on
    ``V_phi`` otherwise, with sign ``(-1)^(n-1)``."""
    d = _as_diagram(d)
    n, N = _n_and_N(d)
    s = (-1) ** (n - 1)
    return AbCoefficients(s, 0) if (n + N) % 2 == 0 else AbCoefficients(0, s)


def qN_class(d) -> MonodromyClass:
    d = _as_diagram(d)
    _, N = _n_and_N(d)
    ab = ab_coefficients(d)
    return (ab.a_bar - ab.b_bar) * class_V(N) + ab.b_bar * class_V(2 * N)


def global_class_at_inf(d) -> MonodromyClass:
    """Complement formula solved for the class at infinity."""
    d = _as_diagram(d)
    _require_connected(d)
    return local_class_M(d) - qN_class(d)


# ---------------------------------------------------------------------------
# identity checks


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    diagram: str
    holds: bool
    lhs: MonodromyClass
    rhs: MonodromyClass

    @property
    def diff(self) -> MonodromyClass:
        return self.lhs - self.rhs

    def to_dict(self) -> dict:
        return {
            "identity": self.name,
            "diagram": self.diagram,
            "holds": self.holds,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "diff": self.diff.to_json(),
        }


def _name(d: CoxeterDiagram) -> str:
    try:
        return classify(d).name
    except ValueError:
        return d.to_string()


def resummation(d) -> MonodromyClass:
    """``sum_E (-1)^|E| phi_twist(M(E))`` over all connected subdiagrams."""
    d = _as_diagram(d)
    out = MonodromyClass()
    for vs, _ in connected_subgraphs(d):
        out = out + (-1) ** len(vs) * phi_twist(local_class_M(d.induced(vs)))
    return out


def check_deg(d) -> IdentityCheck:
    d = _as_diagram(d)
    lhs = resummation(d)
    rhs = _rhs_class(classify(d).degrees())
    return IdentityCheck("deg", _name(d), lhs == rhs, lhs, rhs)


def check_conn(d) -> IdentityCheck:
    """Sum over every proper subdiagram (connected or not) agrees with the
    connected-only expression, since disconnected terms vanish."""
    d = _as_diagram(d)
    _require_connected(d)
    full = MonodromyClass()
    for mask in range(1, (1 << d.n) - 1):
        vs = [i for i in range(d.n) if mask >> i & 1]
        full = full + (-1) ** (len(vs) - 1) * local_class_M(d.induced(vs))
    lhs = (-1) ** d.n * full
    rhs = global_class_at_0(d)
    return IdentityCheck("conn", _name(d), lhs == rhs, lhs, rhs)


def check_compl(d) -> IdentityCheck:
    """Complement formula on zeta functions: the product of the zetas at
    infinity and of ``q^N`` equals the zeta of ``M``."""
    d = _as_diagram(d)
    inf, qn, m = global_class_at_inf(d), qN_class(d), local_class_M(d)
    ok = zeta_of_class(inf) * zeta_of_class(qn) == zeta_of_class(m)
    return IdentityCheck("compl", _name(d), ok and inf + qn == m, inf + qn, m)


def check_otherform(d) -> IdentityCheck:
    d = _as_diagram(d)
    _require_connected(d)
    n = d.n
    lhs = global_class_at_0(d) - global_class_at_inf(d) - qN_class(d)
    rhs = MonodromyClass()
    for di in classify(d).degrees():
        twist = class_V(1) if di % 2 == 0 else V_PHI
        rhs = rhs + tensor(twist, class_V(di)) - V_PHI
    rhs = (-1) ** n * rhs
    return IdentityCheck("otherform", _name(d), lhs == rhs, lhs, rhs)


def check_ab2(d, chi) -> IdentityCheck:
    d = _as_diagram(d)
    _, N = _n_and_N(d)
    ab = ab_coefficients(d)
    chiN = N * Fraction(chi)
    lhs = ab.a_bar * class_chi(chiN) + ab.b_bar * class_chi(chiN + Fraction(1, 2))
    rhs = exactbar_class(d, chi)
    return IdentityCheck("ab2", _name(d), lhs == rhs, lhs, rhs)
