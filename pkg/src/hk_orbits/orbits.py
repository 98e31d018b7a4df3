"""Monodromy-orbit invariants and normal-form representatives.

Two primitive classes of the same kind are taken to be monodromy equivalent
iff they have the same square and the same discriminant image up to sign.
This criterion is applied for every n.  Maximality of the monodromy group is
only guaranteed when n - 1 is a prime power; :func:`monodromy_is_maximal`
reports that so callers can attach a caveat.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .lattice_core import (
    CurveClass,
    DivisorClass,
    LatticeError,
    NonPositiveSquareError,
    NonPrimitiveError,
    bb_square_curve,
    bb_square_divisor,
    divisibility,
    divisor_of_curve,
    fold_residue,
)


class Window(enum.Enum):
    """A system of representatives of Z/m up to sign.

    ``STANDARD`` is ``[0, m/2]``; for curves (m = 2n - 2) that is ``[0, n - 1]``.
    ``SHIFTED`` is ``[m, 3m/2]``; for curves that is ``[2n - 2, 3n - 3]``.
    """

    STANDARD = "standard"
    SHIFTED = "shifted"

    def representative(self, residue: int, modulus: int) -> int:
        r = fold_residue(residue, modulus)
        if self is Window.SHIFTED:
            return r + modulus
        return r


@dataclass(frozen=True)
class OrbitInvariants:
    """Fingerprint of a monodromy orbit.

    For ``kind == "divisor"`` the square is the (even) integer h^2; for
    ``kind == "curve"`` it is the rational square of ``h / div(h)``.  In both
    cases ``t`` is the divisibility of h and ``residue`` is mu mod t, folded.
    """

    n: int
    square: Union[int, Fraction]
    t: int
    residue: int
    kind: str = "divisor"

    def __post_init__(self):
        if (2 * self.n - 2) % self.t:
            raise LatticeError(f"divisibility {self.t} does not divide 2n-2 = {2 * self.n - 2}")
        if not 0 <= self.residue <= self.t // 2:
            raise LatticeError(f"residue {self.residue} is not folded into [0, t/2]")
        if self.t > 1 and gcd(self.residue, self.t) != 1:
            raise LatticeError(f"residue {self.residue} is not prime to t = {self.t}")
        if self.kind not in ("divisor", "curve"):
            raise LatticeError(f"unknown orbit kind {self.kind!r}")


@dataclass(frozen=True)
class CurveNormalForm:
    """The curve class ``h_S - mu*r_n`` on S^[n], S of genus p."""

    n: int
    p: int
    mu: int

    @property
    def g(self) -> int:
        return (self.mu + 1) // 2

    @property
    def eps(self) -> int:
        return 2 * self.g - self.mu

    @property
    def square(self) -> Fraction:
        return 2 * self.p - 2 - Fraction(self.mu**2, 2 * self.n - 2)

    def curve(self) -> CurveClass:
        return CurveClass(self.n, self.p, 1, self.mu)

    @classmethod
    def from_genus(cls, n: int, p: int, g: int, eps: int) -> "CurveNormalForm":
        if eps not in (0, 1):
            raise LatticeError(f"eps must be 0 or 1, got {eps}")
        return cls(n, p, 2 * g - eps)


@dataclass(frozen=True)
class GlueData:
    t: int
    w_in_basis: tuple[Fraction, Fraction]  # coefficients of h and v_n
    w_mukai: tuple[int, int, int]  # (H^0, coefficient of h_S, H^4)
    phi_image: tuple[int, int]
    moduli: tuple[int, int]

    @property
    def phi_order(self) -> int:
        a, b = self.phi_image
        m1, m2 = self.moduli
        o1, o2 = m1 // gcd(a, m1), m2 // gcd(b, m2)
        return o1 * o2 // gcd(o1, o2)


def monodromy_is_maximal(n: int) -> bool:
    """True when n - 1 is a prime power (or n = 2)."""
    from sympy import factorint

    return n == 2 or len(factorint(n - 1)) == 1


def orbit_invariants(h: DivisorClass) -> OrbitInvariants:
    t = divisibility(h)
    return OrbitInvariants(h.n, bb_square_divisor(h), t, fold_residue(h.mu, t), "divisor")


def curve_orbit_invariants(c: CurveClass) -> OrbitInvariants:
    h = divisor_of_curve(c)
    t = divisibility(h)
    return OrbitInvariants(c.n, bb_square_curve(c), t, fold_residue(h.mu, t), "curve")


def same_orbit(x: OrbitInvariants, y: OrbitInvariants) -> bool:
    if x.n != y.n:
        raise LatticeError(f"cannot compare orbits for n = {x.n} and n = {y.n}")
    if x.kind != y.kind:
        raise LatticeError("cannot compare a divisor orbit with a curve orbit")
    return x.square == y.square and x.t == y.t and x.residue == y.residue


def _mukai_pair(x, y, p: int):
    return x[1] * y[1] * (2 * p - 2) - x[0] * y[2] - y[0] * x[2]


def glue_data(h: DivisorClass) -> GlueData:
    """Generator of the overlattice T_S(h) / (Zh + Zv_n) and its image in the
    discriminant group Z/2d + Z/(2n-2) of <h> + <v_n>."""
    t = divisibility(h)
    two_d = bb_square_divisor(h)
    if two_d <= 0:
        raise NonPositiveSquareError(f"h^2 = {two_d} is not positive")
    n, m = h.n, 2 * h.n - 2

    h_mukai = (h.mu, h.lam, h.mu * (n - 1))
    v_mukai = (1, 0, 1 - n)
    coeffs = (Fraction(1, t), Fraction(-h.mu, t))
    w = tuple(coeffs[0] * x + coeffs[1] * y for x, y in zip(h_mukai, v_mukai))
    if any(c.denominator != 1 for c in w) or w != (0, Fraction(h.lam, t), Fraction(h.mu * m, t)):
        raise AssertionError(f"glue vector {w} is not the expected integral vector")
    w_int = tuple(int(c) for c in w)

    assert _mukai_pair(h_mukai, h_mukai, h.p) == two_d
    assert _mukai_pair(v_mukai, v_mukai, h.p) == m
    assert _mukai_pair(h_mukai, v_mukai, h.p) == 0
    assert _mukai_pair(w_int, h_mukai, h.p) * t == two_d
    assert _mukai_pair(w_int, v_mukai, h.p) * t == -h.mu * m

    if two_d % t or (h.mu * m) % t:
        raise AssertionError(f"t = {t} does not divide 2d = {two_d} and mu(2n-2)")
    data = GlueData(
        t=t,
        w_in_basis=coeffs,
        w_mukai=w_int,
        phi_image=((two_d // t) % two_d, (h.mu * m // t) % m),
        moduli=(two_d, m),
    )
    assert data.phi_order == t
    return data


def normal_form_polarization(inv: OrbitInvariants, window: Window = Window.STANDARD) -> tuple[int, int]:
    """Return ``(p', mu')`` with ``t*h_S' - mu'*delta_n`` in the orbit ``inv``.

    mu' is the window representative of the residue class and p' is the genus
    of S', fixed by ``2d = t^2 (2p' - 2) - mu'^2 (2n - 2)``.
    """
    if inv.kind != "divisor":
        raise LatticeError("normal_form_polarization expects divisor invariants")
    two_d, t, n = inv.square, inv.t, inv.n
    if two_d <= 0:
        raise NonPositiveSquareError(f"square {two_d} is not positive")
    mu = window.representative(inv.residue, t)
    num = two_d + mu**2 * (2 * n - 2)
    if num % (2 * t * t):
        raise LatticeError(
            f"2t^2 = {2 * t * t} does not divide 2d + mu'^2(2n-2) = {num}: malformed invariants"
        )
    p = num // (t * t) // 2 + 1
    assert p >= 1
    return p, mu


def representative_divisor(inv: OrbitInvariants, window: Window = Window.STANDARD) -> DivisorClass:
    p, mu = normal_form_polarization(inv, window)
    return DivisorClass(inv.n, p, inv.t, mu)


def to_window(nf: CurveNormalForm, window: Window) -> CurveNormalForm:
    """Re-express ``nf`` in another window, keeping its square and residue."""
    m = 2 * nf.n - 2
    mu = window.representative(nf.mu, m)
    shift = Fraction(mu**2 - nf.mu**2, m)
    assert shift.denominator == 1 and shift.numerator % 2 == 0
    out = CurveNormalForm(nf.n, nf.p + shift.numerator // 2, mu)
    assert out.square == nf.square
    return out


def normal_form_curve(c: CurveClass, window: Window = Window.STANDARD) -> CurveNormalForm:
    if not c.is_primitive:
        raise NonPrimitiveError(f"curve class ({c.a}, {c.b}) is not primitive")
    square = bb_square_curve(c)
    if square <= 0:
        raise NonPositiveSquareError(f"curve square {square} is not positive")
    m = 2 * c.n - 2
    mu = window.representative(c.b, m)
    two_p_minus_2 = square + Fraction(mu**2, m)
    if two_p_minus_2.denominator != 1 or two_p_minus_2.numerator % 2:
        raise AssertionError(f"2p-2 = {two_p_minus_2} is not an even integer")
    nf = CurveNormalForm(c.n, two_p_minus_2.numerator // 2 + 1, mu)
    assert nf.square == square
    return nf


def shift_window(nf: CurveNormalForm) -> CurveNormalForm:
    """Move a standard-window normal form into ``[2n - 2, 3n - 3]``."""
    if not 0 <= nf.mu <= nf.n - 1:
        raise LatticeError(f"mu = {nf.mu} is not in the standard window [0, {nf.n - 1}]")
    out = CurveNormalForm(nf.n, nf.p + nf.mu + nf.n - 1, nf.mu + 2 * nf.n - 2)
    assert out.square == nf.square
    return out
