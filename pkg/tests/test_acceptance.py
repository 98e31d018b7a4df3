"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line with its runtime, even under output
capture.  Run ``python tests/test_acceptance.py`` for the lines alone.
"""

import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd

import pytest

from conftest import ACCEPTANCE_LINES
from hk_orbits.cli import enumerate_orbits, main
from hk_orbits.coisotropic import EvenCoefficientError, codim_two_locus
from hk_orbits.existence import (
    Outcome,
    component_bound,
    osy_feasible,
    primitive_criterion,
    small_n_complete,
    verify_osy_equivalence,
)
from hk_orbits.lattice_core import CurveClass, DiscriminantClass, DivisorClass, bb_square_curve, dual_curve
from hk_orbits.multiples import (
    REFERENCE_TABLE,
    MOutcome,
    asymptotic_family,
    direct_feasible,
    find_m,
    m_bounds,
    reproduce_table,
)
from hk_orbits.orbits import (
    CurveNormalForm,
    OrbitInvariants,
    normal_form_polarization,
    orbit_invariants,
    representative_divisor,
    same_orbit,
)

_lines = None


@pytest.fixture(autouse=True)
def _acceptance_log(request):
    global _lines
    _lines = request.config.stash[ACCEPTANCE_LINES]


def _emit(line):
    if _lines is not None:
        _lines.append(line)
    print(line)


@contextmanager
def criterion(number, title, limit_s):
    start = time.perf_counter()
    try:
        yield
    except Exception as exc:
        _emit(f"FAIL criterion {number:>2} {title} ({time.perf_counter() - start:.2f}s): {exc}".splitlines()[0])
        raise
    took = time.perf_counter() - start
    if took >= limit_s:
        _emit(f"FAIL criterion {number:>2} {title}: {took:.2f}s exceeds {limit_s}s")
        raise AssertionError(f"runtime {took:.2f}s >= {limit_s}s")
    _emit(f"PASS criterion {number:>2} {title} ({took:.2f}s)")


def test_01_exception_table():
    with criterion(1, "exception table for 8 <= n <= 13", 1.0):
        rows = reproduce_table()
        assert len(rows) == len(REFERENCE_TABLE)
        got = {(r.mu, r.p): r for r in rows}
        bad = [
            f"{w.label()} p={w.p}: computed {got[(w.mu, w.p)].cells()} vs reference {w.cells()}"
            for w in REFERENCE_TABLE
            if got.get((w.mu, w.p)) != w
        ]
        assert not bad, "; ".join(bad)


def test_02_n14_has_no_multiplier():
    with criterion(2, "n=14 class h_S-10r_n has no m, bounds in (2,3)", 1.0):
        v = find_m(14, 3, 5, 0)
        assert v.outcome is MOutcome.NO_M
        assert all(b is not None and 2 < b < 3 for b in v.bounds.all_bounds())


def test_03_osy_equivalence():
    with criterion(3, "OSY search <=> p >= g for n<=12, p<=10", 60.0):
        rows = verify_osy_equivalence(12, 10)
        expected = sum(10 * (n // 2) for n in range(2, 13))
        assert len(rows) == expected
        assert all(feasible == (p >= g) for _, p, g, feasible in rows)


def test_04_same_square_different_orbits():
    with criterion(4, "39/20 pair: one orbit square, two orbits, one ruled", 1.0):
        h1, h2 = DivisorClass(11, 2, 20, 1), DivisorClass(11, 4, 20, 9)
        c1, c2 = dual_curve(h1), dual_curve(h2)
        assert bb_square_curve(c1) == bb_square_curve(c2) == Fraction(39, 20)
        assert not same_orbit(orbit_invariants(h1), orbit_invariants(h2))
        assert osy_feasible(11, Fraction(39, 20), DiscriminantClass(20, 1)) is not None
        assert osy_feasible(11, Fraction(39, 20), DiscriminantClass(20, 9)) is None


def test_05_small_n_completeness():
    with criterion(5, "n <= 7: no obstructed class of positive square", 1.0):
        for n in range(2, 8):
            for _, _, _, sq in small_n_complete(n):
                assert sq <= 0


def test_06_sufficient_square():
    with criterion(6, "square >= n-1 gives a ruled divisor, n<=30, p<=200", 10.0):
        count = 0
        for n in range(2, 31):
            for p in range(1, 201):
                for mu in range(n):
                    nf = CurveNormalForm(n, p, mu)
                    if nf.square >= n - 1:
                        assert primitive_criterion(nf).outcome is Outcome.RULED_DIVISOR, nf
                        count += 1
        assert count > 0


def test_07_normal_form_round_trip():
    with criterion(7, "normal-form round trip, n<=12, 2d<=5000", 30.0):
        checked = 0
        for n in range(2, 13):
            m = 2 * n - 2
            for t in (d for d in range(1, m + 1) if m % d == 0):
                for r in range(t // 2 + 1):
                    if gcd(r, t) != 1:
                        continue
                    for two_d in range(2, 5001, 2):
                        if (two_d + r * r * m) % (2 * t * t):
                            continue
                        inv = OrbitInvariants(n, two_d, t, r)
                        p2, mu2 = normal_form_polarization(inv)
                        assert two_d == t * t * (2 * p2 - 2) - mu2 * mu2 * m
                        assert (two_d + mu2 * mu2 * m) % (2 * t * t) == 0
                        assert orbit_invariants(representative_divisor(inv)) == inv
                        checked += 1
        assert checked > 0


def test_08_bounds_match_direct_check():
    with criterion(8, "closed-form m bounds <=> direct check on the grid", 10.0):
        for n in range(2, 21):
            for p in range(2, 11):
                for g in range(1, 11):
                    for eps in (0, 1):
                        b = m_bounds(n, p, g, eps)
                        for m in range(1, 41):
                            assert direct_feasible(n, p, g, eps, m) == b.for_m(m).contains(m), (n, p, g, eps, m)


def test_09_codimension_two():
    with criterion(9, "codim-2 locus for 8<=n<=40; h_S-8r_10, h_S-10r_10 rejected", 1.0):
        for n in range(8, 41):
            for g in range(3, n // 2 + 1):
                assert codim_two_locus(n, 2 * g - 1).codim == 2
        for mu in (8, 10):
            with pytest.raises(EvenCoefficientError, match="eps = 0"):
                codim_two_locus(10, mu)


def test_10_asymptotic_family():
    with criterion(10, "family at n=100,1000,10000: no m, bounds in (2,3), rising m_min", 1.0):
        lows = []
        problems = []
        for n in (100, 1000, 10000):
            reports = asymptotic_family(n)
            for rep in reports:
                assert rep.is_exception
                if rep.verdict.outcome is not MOutcome.NO_M:
                    problems.append(f"n={n} eps={rep.eps}: m={rep.verdict.m} works")
                if not rep.bounds_in_open_2_3:
                    problems.append(f"n={n} eps={rep.eps}: a bound is outside (2,3)")
            lows.append(reports[0].bounds.even.m_min)
        assert lows[0] < lows[1] < lows[2]
        assert not problems, "; ".join(problems)


def test_11_enumeration_finiteness():
    with criterion(11, "n=8 obstructed orbits all below 2d=1372", 30.0):
        bound = component_bound(8)
        assert bound == 1372
        doc = enumerate_orbits(8, bound)
        obstructed = [o["orbit"]["square"] for o in doc["orbits"] if o["verdict"]["primitive"] == "obstructed"]
        assert obstructed and all(d < bound for d in obstructed)
        assert doc["summary"]["all_obstructed_below_bound"]
        # and nothing new appears in the next band
        wider = enumerate_orbits(8, 2 * bound)
        assert wider["summary"]["obstructed"] == len(obstructed)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
