"""Coisotropic loci swept by rational curves of obstructed classes.

A class ``h_S - (g + n - 1) r_n`` on a genus-p K3 with ``0 <= g <= p`` and
``2(p-g) + 2 <= chi := g - n + 3 <= p - g + n + 1`` sweeps a
``P^(chi - 2(p-g) - 1)``-bundle over a symplectic base of dimension
``2(n + 1 + 2(p-g) - chi)``.  Every obstructed class can be moved into that
shape by choosing the window ``[2n-2, 3n-3]`` for its coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .lattice_core import LatticeError


class HypothesisError(LatticeError):
    """Input outside the hypotheses of the codimension-two statement."""


class EvenCoefficientError(HypothesisError):
    """The coefficient of r_n is even (eps = 0)."""


class OutOfRangeError(HypothesisError):
    """g <= 2 or 2g > n."""


@dataclass(frozen=True)
class CoisotropicReport:
    chi: int
    codim: int
    base_dim: int
    applicable: bool


def klm_condition(n: int, p: int, g: int) -> CoisotropicReport:
    """Evaluate the bundle condition for ``h_S - (g + n - 1) r_n``."""
    chi = g - n + 3
    applicable = n >= 2 and p >= 2 and 0 <= g <= p and 2 * (p - g) + 2 <= chi <= p - g + n + 1
    return CoisotropicReport(chi, chi - 2 * (p - g) - 1, 2 * (n + 1 + 2 * (p - g) - chi), applicable)


@dataclass(frozen=True)
class ShiftedClass:
    n: int
    p: int
    g: int
    chi: int
    report: CoisotropicReport


def shift_to_klm(n: int, pi: int, gamma: int, eps: int) -> ShiftedClass:
    """Move the obstructed ``h - (2 gamma - eps) r_n`` on a genus-pi K3 into
    bundle-condition form and evaluate it.

    Both codimension formulas, ``chi - 2(p-g) - 1`` and
    ``2 gamma - eps - 2 pi + 1``, are computed and must agree.
    """
    if eps not in (0, 1):
        raise LatticeError(f"eps must be 0 or 1, got {eps}")
    if pi < 1 or n < 2:
        raise LatticeError("need pi >= 1 and n >= 2")
    if not pi < gamma:
        raise LatticeError(f"pi = {pi} < gamma = {gamma} fails: the class has a primitive ruled divisor")
    if 2 * gamma - eps > n - 1:
        raise LatticeError(f"2 gamma - eps = {2 * gamma - eps} is outside the window [0, {n - 1}]")
    p = pi + n - 1 + 2 * gamma - eps
    g = n - 1 + 2 * gamma - eps
    chi = 2 * gamma + 2 - eps
    report = klm_condition(n, p, g)
    if report.chi != chi:
        raise AssertionError(f"chi mismatch: {report.chi} != {chi}")
    closed = 2 * gamma - eps - 2 * pi + 1
    if report.codim != closed:
        raise AssertionError(f"codimension formulas disagree: {report.codim} != {closed}")
    if not report.applicable or report.codim < 2:
        raise AssertionError(f"bundle condition fails for n={n}, pi={pi}, gamma={gamma}, eps={eps}")
    return ShiftedClass(n, p, g, chi, report)


def codim_two_locus(n: int, mu: int, p: Optional[int] = None) -> CoisotropicReport:
    """Codimension-two locus for ``h_S - mu r_n`` with ``mu = 2g - 1`` odd,
    ``h_S^2 = 2g - 4`` and ``2 < g <= n/2``.

    ``p`` defaults to ``g - 1``; any other value is rejected.
    """
    if mu % 2 == 0:
        raise EvenCoefficientError(
            f"h_S - {mu}r_{n}: the coefficient is even (eps = 0), so the codimension-two statement does not apply"
        )
    g = (mu + 1) // 2
    if not 2 < g <= n // 2:
        raise OutOfRangeError(f"g = {g} for h_S - {mu}r_{n} is outside 2 < g <= n/2 = {n // 2}")
    if p is None:
        p = g - 1
    elif p != g - 1:
        raise HypothesisError(f"need h_S^2 = 2g - 4, i.e. p = {g - 1}, got p = {p}")
    shifted = shift_to_klm(n, p, g, 1)
    if shifted.chi != 2 * g + 1 or shifted.report.codim != 2:
        raise AssertionError(f"expected chi = {2 * g + 1} and codim 2, got {shifted.report}")
    return shifted.report
