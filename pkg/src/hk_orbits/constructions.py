"""Classes of the explicit rational curves R_k, R'_k and uniruled divisors D_k, D'_k.

A nodal curve of geometric genus k - 1 in |L|, L = m*H, carries g^1_k's; the
resulting rational curve in S^[k] has class ``m*h - 2(k-1)*r_k``.  Adding
n - k general points gives R_k in S^[n]; gluing an exceptional line at a
ramification point gives R'_k with one extra r_n.

The number M of curves of the family through a general point configuration is
never computed; it stays a symbolic positive integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .lattice_core import CurveClass, LatticeError

PLAIN = "plain"
TAIL = "tail"


@dataclass(frozen=True)
class ConstructedCurve:
    n: int
    k: int
    variant: str
    p: int
    m: int = 1

    def __post_init__(self):
        if self.variant not in (PLAIN, TAIL):
            raise LatticeError(f"variant must be {PLAIN!r} or {TAIL!r}")
        lo = 1 if self.variant == PLAIN else 2
        if not lo <= self.k <= self.n:
            raise LatticeError(f"k = {self.k} outside [{lo}, {self.n}] for a {self.variant} curve")
        if self.m < 1:
            raise LatticeError("m must be positive")


@dataclass(frozen=True)
class RationalDivisor:
    """A class ``lam*h - mu*delta_n`` in H^2(S^[n], Q)."""

    n: int
    lam: Fraction
    mu: Fraction


def class_of_g1k_curve(m: int, k: int) -> tuple[int, int]:
    """Coefficients ``(a, b)`` of ``a*h - b*r_k`` in H_2(S^[k])."""
    if m < 1 or k < 1:
        raise LatticeError("m and k must be positive")
    return m, 2 * (k - 1)


def curve_class(c: ConstructedCurve) -> CurveClass:
    a, b = class_of_g1k_curve(c.m, c.k)
    if c.variant == TAIL:
        b += 1
    return CurveClass(c.n, c.p, a, b)


def divisor_direction(n: int, k: int, variant: str = PLAIN) -> tuple[int, int]:
    """``(2n - 2, 2k - 2)`` or ``(2n - 2, 2k - 1)``: the ray of D_k or D'_k.

    This is the only statement made about D_1, so it is valid for k = 1.
    """
    ConstructedCurve(n, k, variant, 1)
    return 2 * n - 2, 2 * k - 2 if variant == PLAIN else 2 * k - 1


def divisor_class_Dk(n: int, k: int, M: int) -> RationalDivisor:
    """The class of D_k in terms of the unknown multiplicity M."""
    if not 2 <= k <= n:
        raise LatticeError(f"D_k is computed for 2 <= k <= n, got k = {k}, n = {n}")
    if M < 1:
        raise LatticeError("M must be a positive integer")
    scale = Fraction(M * comb(n - 2, k - 2), k - 1)
    d = RationalDivisor(n, scale * (n - 1), scale * (k - 1))
    a, b = divisor_direction(n, k)
    assert d.lam * b == d.mu * a
    return d
