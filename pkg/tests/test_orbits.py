from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from hk_orbits.lattice_core import (
    CurveClass,
    DivisorClass,
    LatticeError,
    NonPositiveSquareError,
    NonPrimitiveError,
    bb_square_curve,
)
from hk_orbits.orbits import (
    CurveNormalForm,
    OrbitInvariants,
    Window,
    curve_orbit_invariants,
    glue_data,
    monodromy_is_maximal,
    normal_form_curve,
    normal_form_polarization,
    orbit_invariants,
    representative_divisor,
    same_orbit,
    shift_window,
    to_window,
)

RMK_FIRST = DivisorClass(11, 2, 20, 1)
RMK_SECOND = DivisorClass(11, 4, 20, 9)


def test_orbit_invariants_of_the_39_20_pair():
    assert orbit_invariants(RMK_FIRST) == OrbitInvariants(11, 780, 20, 1)
    assert orbit_invariants(RMK_SECOND) == OrbitInvariants(11, 780, 20, 9)


def test_orbit_invariants_of_h_s():
    assert orbit_invariants(DivisorClass(6, 5, 1, 0)) == OrbitInvariants(6, 8, 1, 0)


def test_same_orbit():
    a, b = orbit_invariants(RMK_FIRST), orbit_invariants(RMK_SECOND)
    assert not same_orbit(a, b)
    assert same_orbit(a, a)
    # 19 = -1 mod 20; p = 11 makes 20h - 19 delta square to 780 as well
    c = orbit_invariants(DivisorClass(11, 11, 20, 19))
    assert c == OrbitInvariants(11, 780, 20, 1)
    assert same_orbit(a, c)


def test_same_orbit_rejects_mismatches():
    with pytest.raises(LatticeError):
        same_orbit(OrbitInvariants(11, 780, 20, 1), OrbitInvariants(12, 780, 2, 1))
    with pytest.raises(LatticeError):
        same_orbit(OrbitInvariants(11, 780, 20, 1), OrbitInvariants(11, 780, 20, 1, "curve"))


@pytest.mark.parametrize(
    "kwargs",
    [dict(t=3), dict(t=20, residue=11), dict(t=20, residue=5), dict(t=20, residue=1, kind="x")],
)
def test_orbit_invariants_validation(kwargs):
    args = dict(n=11, square=780, t=20, residue=1, kind="divisor") | kwargs
    with pytest.raises(LatticeError):
        OrbitInvariants(**args)


def test_curve_orbit_invariants():
    inv = curve_orbit_invariants(CurveClass(11, 2, 1, 1))
    assert inv.square == Fraction(39, 20) and inv.t == 20 and inv.residue == 1 and inv.kind == "curve"


@pytest.mark.parametrize(
    "h,phi,moduli",
    [
        (RMK_FIRST, (39, 1), (780, 20)),
        (DivisorClass(2, 3, 2, 1), (7, 1), (14, 2)),
        (DivisorClass(5, 4, 1, 0), (0, 0), (6, 8)),
    ],
)
def test_glue_data(h, phi, moduli):
    data = glue_data(h)
    assert data.phi_image == phi and data.moduli == moduli
    assert data.phi_order == data.t


def test_glue_data_trivial_case_is_h_itself():
    data = glue_data(DivisorClass(5, 4, 1, 0))
    assert data.t == 1 and data.w_in_basis == (1, 0)


def test_glue_data_needs_positive_square():
    with pytest.raises(NonPositiveSquareError):
        glue_data(DivisorClass(11, 2, 1, 1))


def _order_oracle(phi, moduli):
    """Order of phi in Z/m1 + Z/m2 by brute force."""
    k = 1
    while (k * phi[0]) % moduli[0] or (k * phi[1]) % moduli[1]:
        k += 1
    return k


@given(st.integers(2, 15), st.integers(2, 40), st.integers(1, 60), st.integers(-30, 30))
def test_glue_order_equals_divisibility(n, p, lam, mu):
    h = DivisorClass(n, p, lam, mu)
    assume(h.is_primitive)
    assume(lam * lam * (2 * p - 2) - 2 * (n - 1) * mu * mu > 0)
    data = glue_data(h)
    assert _order_oracle(data.phi_image, data.moduli) == data.t


@pytest.mark.parametrize(
    "inv,expected",
    [
        (OrbitInvariants(11, 780, 20, 1), (2, 1)),
        (OrbitInvariants(11, 780, 20, 9), (4, 9)),
        (OrbitInvariants(6, 10, 1, 0), (6, 0)),
    ],
)
def test_normal_form_polarization(inv, expected):
    assert normal_form_polarization(inv) == expected


def test_normal_form_polarization_shifted_window():
    p, mu = normal_form_polarization(OrbitInvariants(11, 780, 20, 1), Window.SHIFTED)
    assert mu == 21 and 400 * (2 * p - 2) - mu * mu * 20 == 780


def test_normal_form_polarization_rejects_malformed():
    with pytest.raises(LatticeError):
        normal_form_polarization(OrbitInvariants(11, 782, 20, 1))
    with pytest.raises(NonPositiveSquareError):
        normal_form_polarization(OrbitInvariants(11, -20, 20, 1))


@pytest.mark.parametrize(
    "curve,expected",
    [
        (CurveClass(8, 2, 1, 5), (2, 5, 3, 1)),
        (CurveClass(8, 14, 1, 19), (2, 5, 3, 1)),
        (CurveClass(8, 2, 1, -5), (2, 5, 3, 1)),
        (CurveClass(9, 4, 1, 0), (4, 0, 0, 0)),
        (CurveClass(14, 3, 1, 10), (3, 10, 5, 0)),
    ],
)
def test_normal_form_curve(curve, expected):
    nf = normal_form_curve(curve)
    assert (nf.p, nf.mu, nf.g, nf.eps) == expected
    assert nf.square == bb_square_curve(curve)


def test_normal_form_curve_errors():
    with pytest.raises(NonPositiveSquareError):
        normal_form_curve(CurveClass(8, 2, 1, 7))
    with pytest.raises(NonPrimitiveError):
        normal_form_curve(CurveClass(8, 2, 2, 4))


@pytest.mark.parametrize(
    "nf,expected",
    [
        (CurveNormalForm(8, 2, 5), (14, 19)),
        (CurveNormalForm(6, 3, 0), (8, 10)),
        (CurveNormalForm(11, 4, 9), (23, 29)),
    ],
)
def test_shift_window(nf, expected):
    out = shift_window(nf)
    assert (out.p, out.mu) == expected
    assert out.square == nf.square
    assert to_window(nf, Window.SHIFTED) == out
    assert to_window(out, Window.STANDARD) == nf


def test_shift_window_requires_standard_input():
    with pytest.raises(LatticeError):
        shift_window(CurveNormalForm(8, 14, 19))


def test_shifted_and_standard_forms_are_one_orbit():
    nf = CurveNormalForm(8, 2, 5)
    a = curve_orbit_invariants(nf.curve())
    b = curve_orbit_invariants(shift_window(nf).curve())
    assert same_orbit(a, b)


@pytest.mark.parametrize("n,expected", [(2, True), (8, True), (10, True), (7, False), (11, False), (14, True)])
def test_monodromy_is_maximal(n, expected):
    assert monodromy_is_maximal(n) is expected


def _valid_invariants():
    @st.composite
    def build(draw):
        n = draw(st.integers(2, 20))
        m = 2 * n - 2
        t = draw(st.sampled_from([d for d in range(1, m + 1) if m % d == 0]))
        residues = [r for r in range(t // 2 + 1) if gcd(r, t) == 1]
        r = draw(st.sampled_from(residues))
        k = draw(st.integers(1, 200))
        two_d = 2 * t * t * k - r * r * m
        assume(0 < two_d <= 10**4)
        return OrbitInvariants(n, two_d, t, r)

    return build()


@given(_valid_invariants(), st.sampled_from(list(Window)))
def test_representative_round_trip(inv, window):
    assert orbit_invariants(representative_divisor(inv, window)) == inv


@given(st.integers(2, 30), st.integers(0, 20), st.integers(-200, 200))
def test_standard_window_bounds(n, extra, b):
    # smallest p with 2p - 2 > b^2 / (2n - 2), plus a margin
    p = b * b // (4 * n - 4) + 2 + extra
    c = CurveClass(n, p, 1, b)
    assert bb_square_curve(c) > 0
    nf = normal_form_curve(c)
    assert 0 <= nf.mu <= n - 1
    # the endpoint n - 1 only occurs when the residue is n - 1 itself
    assert nf.mu < n - 1 or b % (2 * n - 2) == n - 1
    assert 2 * nf.g - nf.eps == nf.mu and nf.eps in (0, 1)
