"""Exact arithmetic on the rank-2 lattice spanned by h_S and delta_n.

Cohomology classes are written ``lam*h_S - mu*delta_n`` and homology classes
``a*h_S - b*r_n``, where ``h_S**2 = 2p - 2``, ``delta_n**2 = -2(n - 1)``,
``r_n = delta_n / (2n - 2)`` and ``r_n . delta_n = -1``.

All values are Python ints or :class:`fractions.Fraction`, so nothing here can
overflow or round.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rational = Fraction


class LatticeError(ValueError):
    """Invalid input for a lattice computation."""


class NonPrimitiveError(LatticeError):
    pass


class NonPositiveSquareError(LatticeError):
    pass


def _check_np(n: int, p: int) -> None:
    if n < 2:
        raise LatticeError(f"n must be >= 2, got {n}")
    if p < 1:
        raise LatticeError(f"genus p must be >= 1, got {p}")


@dataclass(frozen=True)
class DivisorClass:
    """The class ``lam*h_S - mu*delta_n`` on S^[n], with S of genus p."""

    n: int
    p: int
    lam: int
    mu: int

    def __post_init__(self):
        _check_np(self.n, self.p)

    @property
    def is_primitive(self) -> bool:
        return gcd(self.lam, self.mu) == 1


@dataclass(frozen=True)
class CurveClass:
    """The class ``a*h_S - b*r_n`` in H_2(S^[n], Z), with S of genus p."""

    n: int
    p: int
    a: int
    b: int

    def __post_init__(self):
        _check_np(self.n, self.p)

    @property
    def is_primitive(self) -> bool:
        return gcd(self.a, self.b) == 1

    def pairing_with_delta(self) -> int:
        return self.b


@dataclass(frozen=True)
class DiscriminantClass:
    """An element of Z/(2n-2), in multiples of the class of r_n.

    The residue is kept as computed; sign folding happens in orbit comparison.
    """

    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise LatticeError("modulus must be positive")
        if not 0 <= self.residue < self.modulus:
            raise LatticeError(f"residue {self.residue} outside [0, {self.modulus})")

    def folded(self) -> int:
        return fold_residue(self.residue, self.modulus)


def fold_residue(r: int, modulus: int) -> int:
    """Canonical representative of ``{r, -r}`` mod ``modulus``, in [0, modulus/2]."""
    r %= modulus
    return min(r, (modulus - r) % modulus)


def bb_square_divisor(h: DivisorClass) -> int:
    return h.lam**2 * (2 * h.p - 2) - 2 * (h.n - 1) * h.mu**2


def bb_square_curve(c: CurveClass) -> Fraction:
    return c.a**2 * (2 * c.p - 2) - Fraction(c.b**2, 2 * c.n - 2)


def intersect(divisor, curve: CurveClass) -> Fraction:
    """Intersection number of ``lam*h_S - mu*delta_n`` with ``a*h_S - b*r_n``.

    ``divisor`` only needs ``n``, ``lam`` and ``mu`` attributes, so rational
    divisor classes work too.
    """
    if divisor.n != curve.n:
        raise LatticeError("divisor and curve live on different S^[n]")
    if getattr(divisor, "p", curve.p) != curve.p:
        raise LatticeError("divisor and curve use different K3 genera")
    return Fraction(divisor.lam) * curve.a * (2 * curve.p - 2) - Fraction(divisor.mu) * curve.b


def divisibility(h: DivisorClass) -> int:
    if not h.is_primitive:
        raise NonPrimitiveError(
            f"class {h.lam}h_S - {h.mu}delta_{h.n} has content {gcd(h.lam, h.mu)}; divide it out first"
        )
    t = gcd(h.lam, 2 * h.n - 2)
    assert gcd(h.mu, t) == 1 and (2 * h.n - 2) % t == 0
    return t


def dual_curve(h: DivisorClass) -> CurveClass:
    """The primitive curve class ``h / div(h)``."""
    t = divisibility(h)
    c = CurveClass(h.n, h.p, h.lam // t, h.mu * (2 * h.n - 2) // t)
    assert c.is_primitive
    return c


def divisor_of_curve(c: CurveClass) -> DivisorClass:
    """Inverse of :func:`dual_curve`: the primitive h with ``h / div(h) = c``."""
    if not c.is_primitive:
        raise NonPrimitiveError(f"curve class ({c.a}, {c.b}) is not primitive")
    m = 2 * c.n - 2
    g0 = gcd(c.b, m)
    k = m // g0
    h = DivisorClass(c.n, c.p, k * c.a, c.b // g0)
    assert divisibility(h) == k
    return h


def discriminant_class(c: CurveClass) -> DiscriminantClass:
    if not c.is_primitive:
        raise NonPrimitiveError(f"curve class ({c.a}, {c.b}) is not primitive")
    m = 2 * c.n - 2
    return DiscriminantClass(m, c.b % m)
