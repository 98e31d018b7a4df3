"""Uniruled divisors ruled by primitive rational curves.

The closed-form criterion: a curve of positive square with standard-window
normal form ``h_S - (2g - eps) r_n`` on a genus-p K3 rules a divisor iff
``p >= g``.  The independent route is the Oberdieck-Shen-Yin (OSY)
Diophantine condition, searched exhaustively by :func:`osy_feasible`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .lattice_core import DiscriminantClass, LatticeError, NonPositiveSquareError
from .orbits import CurveNormalForm, Window, to_window

DEFAULT_K_RANGE = 3


class VerificationError(AssertionError):
    """An exhaustive check found a counterexample."""


class Outcome(str, enum.Enum):
    RULED_DIVISOR = "ruled_divisor"
    OBSTRUCTED = "obstructed"


@dataclass(frozen=True)
class OSYWitness:
    """n - 1 pairs ``(d_i, r_i)`` with ``4 d_i >= r_i^2``."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def total_r(self) -> int:
        return sum(r for _, r in self.pairs)

    @property
    def total_d(self) -> int:
        return sum(d for d, _ in self.pairs)


@dataclass(frozen=True)
class PrimitiveVerdict:
    outcome: Outcome
    p: int
    g: int
    eps: int
    witness: Optional[OSYWitness] = None


def _require_positive(nf: CurveNormalForm) -> None:
    if nf.square <= 0:
        raise NonPositiveSquareError(f"curve square {nf.square} is not positive")


def primitive_criterion(nf: CurveNormalForm) -> PrimitiveVerdict:
    _require_positive(nf)
    nf = to_window(nf, Window.STANDARD)
    outcome = Outcome.RULED_DIVISOR if nf.p >= nf.g else Outcome.OBSTRUCTED
    return PrimitiveVerdict(outcome, nf.p, nf.g, nf.eps)


def sufficient_square(nf: CurveNormalForm) -> bool:
    """Square at least n - 1 is enough to guarantee a ruled divisor."""
    _require_positive(nf)
    return nf.square >= nf.n - 1


def component_bound(n: int) -> int:
    """Divisor squares at or above this value always give a ruled divisor."""
    if n < 2:
        raise LatticeError("n must be >= 2")
    return (2 * n - 2) ** 2 * (n - 1)


def small_n_complete(n: int) -> list[tuple[int, int, int, Fraction]]:
    """Check that for n <= 7 every class with g > p has non-positive square.

    Enumerates (p, g, eps) with ``1 <= p < g`` and ``2g - eps <= n`` and returns
    the checked tuples with their squares.  Each square is also checked against
    the two closed-form upper bounds it must satisfy.
    """
    if not 2 <= n <= 7:
        raise LatticeError(f"the completeness scan is only claimed for 2 <= n <= 7, got {n}")
    checked = []
    for g in range(1, (n + 1) // 2 + 1):
        for eps in (0, 1):
            if 2 * g - eps > n:
                continue
            for p in range(1, g):
                sq = CurveNormalForm.from_genus(n, p, g, eps).square
                if eps == 0:
                    bound = 2 * p - 2 - Fraction(2 * (p + 1) ** 2, 6)
                    assert sq <= 2 * p - 2 - Fraction(2 * (p + 1) ** 2, n - 1) <= bound
                else:
                    bound = Fraction(20 * p - 25 - 4 * p * p, 12)
                    assert sq <= bound
                if bound > 0 or sq > 0:
                    raise VerificationError(f"n={n}, p={p}, g={g}, eps={eps} has square {sq} > 0")
                checked.append((p, g, eps, sq))
    return checked


# OSY oracle ---------------------------------------------------------------

def part_cost(r: int) -> int:
    """Smallest d with ``4d >= r^2``."""
    return (r * r + 3) // 4


@lru_cache(maxsize=64)
def _min_cost_table(parts: int, width: int):
    """Min of sum(part_cost(r_i)) over ``parts`` integers in [-width, width]
    with partial sums kept in [-width, width], for every total in that range.

    Returns the cost vector indexed by ``total + width`` and, per part, the
    arg-min choice of r used to rebuild a witness.
    """
    size = 2 * width + 1
    inf = np.iinfo(np.int64).max // 4
    cost = np.full(size, inf, dtype=np.int64)
    cost[width] = 0
    choices = []
    for _ in range(parts):
        best = np.full(size, inf, dtype=np.int64)
        arg = np.zeros(size, dtype=np.int64)
        for r in range(-width, width + 1):
            shifted = np.full(size, inf, dtype=np.int64)
            if r >= 0:
                shifted[r:] = cost[: size - r]
            else:
                shifted[:r] = cost[-r:]
            cand = shifted + part_cost(r)
            better = cand < best
            best[better] = cand[better]
            arg[better] = r
        cost = best
        choices.append(arg)
    return cost, choices


def _rebuild(parts: int, width: int, total: int) -> list[int]:
    _, choices = _min_cost_table(parts, width)
    rs = []
    s = total
    for arg in reversed(choices):
        r = int(arg[s + width])
        rs.append(r)
        s -= r
    assert s == 0
    return rs[::-1]


def required_d_total(n: int, square: Fraction, s: int) -> Fraction:
    """The value sum(d_i) forced by the square equation at ``sum(r_i) = s``."""
    return (Fraction(square) + 2 + Fraction(s * s, 2 * n - 2)) / 2


def osy_window(n: int, disc: DiscriminantClass, k_range: int = DEFAULT_K_RANGE) -> list[int]:
    """Admissible totals ``s = sum(r_i)``: s = +-residue mod 2n-2, |s - s0| <= K(2n-2)."""
    m = 2 * n - 2
    if disc.modulus != m:
        raise LatticeError(f"discriminant modulus {disc.modulus} != 2n-2 = {m}")
    if k_range < 0:
        raise LatticeError("k_range must be non-negative")
    s0 = disc.residue
    lo, hi = s0 - k_range * m, s0 + k_range * m
    sums = {s for s in range(lo, hi + 1) if (s - s0) % m == 0 or (s + s0) % m == 0}
    return sorted(sums, key=lambda s: (abs(s), s))


def osy_feasible(
    n: int,
    square: Fraction,
    disc: DiscriminantClass,
    k_range: int = DEFAULT_K_RANGE,
) -> Optional[OSYWitness]:
    """Search for integers (d_i, r_i), i < n, meeting the OSY conditions.

    For a fixed total s the d_i are only bounded below, so s is feasible iff
    the least possible sum of ``ceil(r_i^2 / 4)`` is at most the required
    ``sum(d_i)``.  The r_i may be negative.  Only totals in
    :func:`osy_window` are searched.
    """
    if n < 2:
        raise LatticeError("n must be >= 2")
    parts = n - 1
    sums = osy_window(n, disc, k_range)
    targets = [(s, required_d_total(n, square, s)) for s in sums]
    if all(d.denominator != 1 for _, d in targets):
        raise LatticeError(
            f"sum(d_i) is never integral for square {square} and residue {disc.residue}: "
            "square and discriminant class are inconsistent"
        )
    width = max(abs(s) for s in sums)
    for s, d_total in targets:
        if d_total.denominator != 1 or d_total < 0:
            continue
        # near-equal split bound: sum(r_i^2)/4 >= s^2 / (4 * parts)
        if Fraction(s * s, 4 * parts) > d_total:
            continue
        cost, _ = _min_cost_table(parts, width)
        if cost[s + width] > d_total:
            continue
        rs = _rebuild(parts, width, s)
        ds = [part_cost(r) for r in rs]
        ds[0] += int(d_total) - sum(ds)
        return OSYWitness(tuple(zip(ds, rs)))
    return None


def check_osy_witness(n: int, square: Fraction, disc: DiscriminantClass, w: OSYWitness) -> bool:
    """Substitute a witness back into the three OSY conditions."""
    if len(w.pairs) != n - 1:
        return False
    m = 2 * n - 2
    total_r = sum(r for _, r in w.pairs)
    lhs = -2 + sum(2 * d for d, _ in w.pairs) - Fraction(total_r**2, m)
    class_ok = (total_r - disc.residue) % m == 0 or (total_r + disc.residue) % m == 0
    return lhs == square and class_ok and all(4 * d - r * r >= 0 for d, r in w.pairs)


def osy_for_normal_form(nf: CurveNormalForm, k_range: int = DEFAULT_K_RANGE) -> Optional[OSYWitness]:
    m = 2 * nf.n - 2
    return osy_feasible(nf.n, nf.square, DiscriminantClass(m, nf.mu % m), k_range)


def verify_osy_equivalence(n_max: int, p_max: int, k_range: int = DEFAULT_K_RANGE):
    """Check ``OSY feasible <=> p >= g`` on ``h_S - 2g r_n`` for 2g <= n.

    Every witness found is re-checked.  Returns ``(n, p, g, feasible)`` rows.
    """
    rows = []
    for n in range(2, n_max + 1):
        for p in range(1, p_max + 1):
            for g in range(1, n // 2 + 1):
                nf = CurveNormalForm(n, p, 2 * g)
                w = osy_for_normal_form(nf, k_range)
                feasible = w is not None
                if feasible and not check_osy_witness(n, nf.square, DiscriminantClass(2 * n - 2, 2 * g % (2 * n - 2)), w):
                    raise VerificationError(f"bad witness for n={n}, p={p}, g={g}: {w}")
                if feasible != (p >= g):
                    raise VerificationError(
                        f"n={n}, p={p}, g={g}: OSY says {feasible}, closed form says {p >= g}"
                    )
                rows.append((n, p, g, feasible))
    return rows


def persistence(n: int, p: int, g: int, n_max: int = 40, k_range: int = DEFAULT_K_RANGE):
    """An obstructed ``(p, g)`` stays obstructed on every larger S^[n'].

    Returns the n' in ``[n, n_max]`` where the square is positive (the only
    ones where a verdict is defined), after checking each is obstructed by
    both the closed form and the OSY search.
    """
    if not (g > p and 2 * g <= n):
        raise LatticeError(f"(n={n}, p={p}, g={g}) is not an obstructed triple")
    checked = []
    for n2 in range(n, n_max + 1):
        nf = CurveNormalForm(n2, p, 2 * g)
        if nf.square <= 0:
            continue
        verdict = primitive_criterion(nf)
        if verdict.outcome is not Outcome.OBSTRUCTED or osy_for_normal_form(nf, k_range) is not None:
            raise VerificationError(f"(p={p}, g={g}) is not obstructed at n' = {n2}")
        checked.append(n2)
    return checked
