"""Uniruled divisors from non-primitive curves ``m*C``.

For an obstructed class ``C = h_S - (2g - eps) r_n`` one looks for a nodal
curve of genus ``g' = ceil(m(2g - eps)/2)`` in |m h_S| and g' + 1 points on it.
That needs ``g' + 1 <= n`` and ``g' <= m^2 (p - 1) + 1``.  Solving both for m
gives a rational upper bound and a surd lower bound per parity of m.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import ceil, isqrt
from typing import Optional, Union

from .existence import VerificationError
from .lattice_core import LatticeError

Number = Union[int, Fraction]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_surd(u: Fraction, v: Fraction, b: int) -> int:
    """Sign of ``u + v*sqrt(b)``."""
    su, sv = _sign(u), _sign(v) if b > 0 else 0
    if sv == 0:
        return su
    if su == 0 or su == sv:
        return sv if su == 0 else su
    return su * _sign(u * u - v * v * b)


def _sign_two_surds(u: Fraction, v: Fraction, b1: int, w: Fraction, b2: int) -> int:
    """Sign of ``u + v*sqrt(b1) + w*sqrt(b2)``."""
    s1 = _sign_surd(u, v, b1)
    s2 = _sign(w) if b2 > 0 else 0
    if s2 == 0 or s1 == s2:
        return s1
    if s1 == 0:
        return s2
    # opposite signs: compare (u + v sqrt b1)^2 with w^2 b2
    d = _sign_surd(u * u + v * v * b1 - w * w * b2, 2 * u * v, b1)
    return s1 * d


@dataclass(frozen=True, eq=False)
class MBound:
    """The real number ``(a + sqrt(b)) / c`` with integers b >= 0, c > 0.

    Comparison with ints, Fractions and other MBounds is exact.
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.b < 0 or self.c <= 0:
            raise ValueError(f"invalid surd ({self.a} + sqrt({self.b}))/{self.c}")

    __hash__ = None

    def _cmp(self, other) -> int:
        if isinstance(other, MBound):
            return _sign_two_surds(
                Fraction(other.c * self.a - self.c * other.a), Fraction(other.c), self.b,
                Fraction(-self.c), other.b,
            )
        if isinstance(other, (int, Fraction)):
            return _sign_surd(self.a - self.c * Fraction(other), Fraction(1), self.b)
        return NotImplemented

    def __eq__(self, other):
        r = self._cmp(other)
        return r if r is NotImplemented else r == 0

    def __lt__(self, other):
        r = self._cmp(other)
        return r if r is NotImplemented else r < 0

    def __le__(self, other):
        r = self._cmp(other)
        return r if r is NotImplemented else r <= 0

    def __gt__(self, other):
        r = self._cmp(other)
        return r if r is NotImplemented else r > 0

    def __ge__(self, other):
        r = self._cmp(other)
        return r if r is NotImplemented else r >= 0

    def as_fraction(self) -> Optional[Fraction]:
        root = isqrt(self.b)
        if root * root == self.b:
            return Fraction(self.a + root, self.c)
        return None

    def to_decimal(self, prec: int = 50) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = prec
            return (Decimal(self.a) + Decimal(self.b).sqrt()) / Decimal(self.c)

    def __float__(self):
        return float(self.to_decimal(30))

    def __repr__(self):
        return f"MBound(({self.a} + sqrt({self.b}))/{self.c})"


@dataclass(frozen=True)
class ParityBounds:
    """Admissible m of one parity: ``m_min <= m <= m_max``.

    ``m_min`` is None when the genus condition holds for every m.
    """

    m_min: Optional[MBound]
    m_max: Fraction

    def contains(self, m: int) -> bool:
        return (self.m_min is None or self.m_min <= m) and m <= self.m_max


@dataclass(frozen=True)
class MBounds:
    even: ParityBounds
    odd: ParityBounds

    def for_m(self, m: int) -> ParityBounds:
        return self.even if m % 2 == 0 else self.odd

    def all_bounds(self) -> list:
        return [self.even.m_min, self.even.m_max, self.odd.m_min, self.odd.m_max]


class MOutcome(str, enum.Enum):
    FOUND_M = "found_m"
    NO_M = "no_m"


@dataclass(frozen=True)
class MultipleVerdict:
    outcome: MOutcome
    m: Optional[int]
    bounds: Optional[MBounds]


def exception_conditions(n: int, p: int, g: int, eps: int) -> bool:
    """True for a positive-square class that has no primitive ruled divisor."""
    if eps not in (0, 1):
        raise LatticeError(f"eps must be 0 or 1, got {eps}")
    return 2 * g <= n - 1 + eps and g >= p + 1 and (2 * p - 2) * (2 * n - 2) > (2 * g - eps) ** 2


def target_genus(m: int, g: int, eps: int) -> int:
    if m < 1:
        raise LatticeError("m must be positive")
    return ceil(Fraction(2 * m * g - m * eps, 2))


def direct_feasible(n: int, p: int, g: int, eps: int, m: int) -> bool:
    g2 = target_genus(m, g, eps)
    return g2 + 1 <= n and g2 <= m * m * (p - 1) + 1


def _surd_min(big_g: int, disc: int, p: int) -> Optional[MBound]:
    return MBound(big_g, disc, 4 * (p - 1)) if disc >= 0 else None


def m_bounds(n: int, p: int, g: int, eps: int, conservative_odd: bool = False) -> MBounds:
    """Per-parity bounds on m.

    With ``2g - eps = G`` the even bounds are
    ``(G + sqrt(G^2 - 16(p-1))) / (4(p-1)) <= m <= 2(n-1)/G``.

    For odd m, g' = (mG + eps)/2, which gives
    ``(G + sqrt(G^2 - 8(2-eps)(p-1))) / (4(p-1)) <= m <= (2n-2-eps)/G``.
    For eps = 1 this is the usual odd pair.  For eps = 0 it coincides with the
    even pair.  ``conservative_odd=True`` instead uses the eps = 1 formulas
    for both eps.  Those are sufficient, but stricter than needed when eps = 0.
    """
    if p < 2:
        raise LatticeError("the m bounds need p >= 2; scan direct_feasible instead")
    if g < 1 or eps not in (0, 1):
        raise LatticeError("need g >= 1 and eps in {0, 1}")
    big_g = 2 * g - eps
    even = ParityBounds(_surd_min(big_g, big_g**2 - 16 * (p - 1), p), Fraction(2 * (n - 1), big_g))
    odd_eps = 1 if conservative_odd else eps
    odd = ParityBounds(
        _surd_min(big_g, big_g**2 - 8 * (2 - odd_eps) * (p - 1), p),
        Fraction(2 * n - 2 - odd_eps, big_g),
    )
    return MBounds(even, odd)


def find_m(n: int, p: int, g: int, eps: int) -> MultipleVerdict:
    """Smallest m >= 2 with ``m*C`` directly feasible.

    Every scanned m is also checked against the closed-form bounds.
    """
    if not exception_conditions(n, p, g, eps):
        raise LatticeError(f"(n={n}, p={p}, g={g}, eps={eps}) is not an exception")
    # p = 1 has no surd bounds; the direct scan below is still complete
    bounds = m_bounds(n, p, g, eps) if p >= 2 else None
    # g' >= m(2g - eps)/2, so larger m break g' + 1 <= n
    m_cap = 2 * (n - 1) // (2 * g - eps) + 1
    for m in range(2, m_cap + 1):
        ok = direct_feasible(n, p, g, eps, m)
        if bounds is not None and ok != bounds.for_m(m).contains(m):
            raise VerificationError(
                f"bounds and direct check disagree at n={n}, p={p}, g={g}, eps={eps}, m={m}"
            )
        if ok:
            return MultipleVerdict(MOutcome.FOUND_M, m, bounds)
    return MultipleVerdict(MOutcome.NO_M, None, bounds)


# the table of exceptions for 8 <= n <= 13 -----------------------------------

@dataclass(frozen=True)
class TableRow:
    mu: int
    p: int
    g: int
    eps: int
    m: int
    n: int

    def label(self) -> str:
        return f"h_S−{self.mu}r_n"

    def cells(self) -> tuple:
        return (self.label(), self.p, self.g, self.eps, self.m, self.n)


REFERENCE_TABLE = (
    TableRow(5, 2, 3, 1, 2, 8),
    TableRow(7, 3, 4, 1, 2, 8),
    TableRow(8, 3, 4, 0, 2, 10),
    TableRow(9, 4, 5, 1, 2, 10),
    TableRow(10, 4, 5, 0, 2, 10),
    TableRow(6, 2, 3, 0, 3, 11),
    TableRow(9, 3, 5, 1, 2, 12),
    TableRow(11, 4, 6, 1, 2, 12),
    TableRow(11, 5, 6, 1, 2, 12),
    TableRow(12, 5, 6, 0, 2, 13),
)


def minimal_n(p: int, g: int, eps: int) -> int:
    """Smallest n for which ``(p, g, eps)`` satisfies :func:`exception_conditions`."""
    if p < 2 or g < p + 1:
        raise LatticeError(f"(p={p}, g={g}) is never an exception")
    n = 2
    while not exception_conditions(n, p, g, eps):
        n += 1
    return n


def reproduce_table(n_lo: int = 8, n_hi: int = 13) -> list[TableRow]:
    """All exceptions first appearing for n in [n_lo, n_hi], with their least m.

    Rows are ordered by (n, coefficient, p).  Every row's m is also checked to
    work for each n up to ``n_hi``.
    """
    rows = []
    # 2g <= n - 1 + eps <= n_hi, and p < g; an n0 below n_lo would contradict
    # the small-n completeness scan
    for g in range(2, n_hi // 2 + 1):
        for p in range(2, g):
            for eps in (0, 1):
                n0 = minimal_n(p, g, eps)
                if n0 > n_hi:
                    continue
                if n0 < n_lo:
                    raise VerificationError(f"exception (p={p}, g={g}, eps={eps}) at n={n0} < {n_lo}")
                verdict = find_m(n0, p, g, eps)
                if verdict.outcome is not MOutcome.FOUND_M:
                    raise VerificationError(f"no m for (p={p}, g={g}, eps={eps}) at n={n0}")
                for n in range(n0, n_hi + 1):
                    if not direct_feasible(n, p, g, eps, verdict.m):
                        raise VerificationError(f"m={verdict.m} stops working at n={n}")
                rows.append(TableRow(2 * g - eps, p, g, eps, verdict.m, n0))
    rows.sort(key=lambda r: (r.n, r.mu, r.p))
    return rows


def table_mismatches(rows=None) -> list[str]:
    """Cell differences between a computed table and REFERENCE_TABLE.

    Rows are matched by ``(coefficient, p)``, so a differing n does not shift
    the comparison of every later row.
    """
    rows = reproduce_table() if rows is None else rows
    got = {(r.mu, r.p): r for r in rows}
    want = {(r.mu, r.p): r for r in REFERENCE_TABLE}
    out = [f"missing row mu={k[0]}, p={k[1]}" for k in want if k not in got]
    out += [f"extra row {got[k].cells()}" for k in got if k not in want]
    names = ("class", "p", "g", "eps", "m", "n")
    for k, w in want.items():
        if k not in got:
            continue
        for name, x, y in zip(names, got[k].cells(), w.cells()):
            if x != y:
                out.append(f"{w.label()}, p={w.p}: {name} = {x}, reference {y}")
    return out


def persistence_multiple(n: int, p: int, g: int, eps: int = 0, scan: int = 60) -> int:
    """Smallest n' >= n where some m works, after checking every
    n' in ``[n + g + 1, n + g + 1 + scan]`` has one."""
    if not exception_conditions(n, p, g, eps):
        raise LatticeError(f"(n={n}, p={p}, g={g}, eps={eps}) is not an exception")
    found = None
    for n2 in range(n, n + g + 2 + scan):
        verdict = find_m(n2, p, g, eps)
        if verdict.outcome is MOutcome.FOUND_M and found is None:
            found = n2
        if n2 >= n + g + 1 and verdict.outcome is not MOutcome.FOUND_M:
            raise VerificationError(f"no m at n'={n2} >= {n + g + 1} for (p={p}, g={g}, eps={eps})")
    return found


# the asymptotic family -----------------------------------------------------

def family_parameters(n: int) -> tuple[int, int]:
    """``(p, g)`` with ``g = ceil((n-1)/3)`` and ``p - 1 = ceil((n-1)/9) + 1``."""
    return -(-(n - 1) // 9) + 2, -(-(n - 1) // 3)


@dataclass(frozen=True)
class FamilyReport:
    n: int
    p: int
    g: int
    eps: int
    is_exception: bool
    bounds: Optional[MBounds]
    verdict: Optional[MultipleVerdict]

    @property
    def bounds_in_open_2_3(self) -> bool:
        if self.bounds is None:
            return False
        return all(b is not None and 2 < b < 3 for b in self.bounds.all_bounds())


def asymptotic_family(n: int) -> list[FamilyReport]:
    """Evaluate the family at n for both eps."""
    p, g = family_parameters(n)
    out = []
    for eps in (0, 1):
        exc = exception_conditions(n, p, g, eps)
        out.append(FamilyReport(
            n, p, g, eps, exc,
            m_bounds(n, p, g, eps),
            find_m(n, p, g, eps) if exc else None,
        ))
    return out


def approach_threshold(delta: Fraction, eps: int = 0, n_start: int = 10, horizon: int = 2000) -> int:
    """First n0 >= n_start with ``3 - m_min^even < delta`` on all of [n0, n0 + horizon].

    Also checks m_min^even < 3 on the way.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    good_run = 0
    n = n_start
    while True:
        p, g = family_parameters(n)
        lo = m_bounds(n, p, g, eps).even.m_min
        if lo is None or not lo < 3:
            raise VerificationError(f"m_min^even is not below 3 at n={n}")
        if 3 - delta < lo:
            good_run += 1
            if good_run > horizon:
                return n - horizon
        else:
            good_run = 0
        n += 1
