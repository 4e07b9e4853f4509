import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from rotadrop.core import DomainError, DropParams, find_c0
from rotadrop.ode import StepControl, close_profile, solve_profile
from rotadrop.quantities import (area, boundary_flux_check, closed_area, closed_energy, energy, height,
                                 heinz_margin, quantity_report, stability_q_n1, truncate, volume)


def graph_integral(a, b, g, c):
    """``int_0^c g(r, f) dr`` on the graph form, the quadrature oracle."""
    def f(r):
        return 0.25 * r * (a * r * r + 2 * b)
    return quad(lambda r: g(r, f(r)), 0.0, c, limit=400, epsabs=1e-14, epsrel=1e-13)[0]


@pytest.fixture(scope="module")
def sphere():
    return solve_profile(DropParams(0.0, 1.0))


@pytest.fixture(scope="module")
def drop11():
    return solve_profile(DropParams(1.0, 1.0))


def test_sphere_areas(sphere):
    assert area(sphere) == pytest.approx(8 * math.pi, rel=1e-10)
    assert area(sphere, 1.0) == pytest.approx(2 * math.pi * 2 * (2 - math.sqrt(3)), rel=1e-10)
    assert closed_area(close_profile(sphere)) == pytest.approx(16 * math.pi, rel=1e-10)


def test_sphere_volume_height(sphere):
    assert volume(sphere) == pytest.approx(32 * math.pi / 3, rel=1e-10)
    assert height(sphere) == pytest.approx(2.0, rel=1e-10)
    assert height(sphere, 0.0) == 0.0
    assert volume(sphere, 0.0) == 0.0


# quadrature-oracle values of A(c0) and V, frozen
@pytest.mark.parametrize("a, b, A, V", [
    (1.0, 1.0, 7.160863942683959, 4.928581799369093),
    (-1.0, 4.0, 1.7220336474628855, 0.6008105785534611),
    (1.0, 0.0, 11.100118638882343, 8.377580409564406),
    (2.0, 2.0, 3.2920931868401277, 1.5702879050216836),
])
def test_area_volume_frozen(a, b, A, V):
    curve = solve_profile(DropParams(a, b))
    assert area(curve) == pytest.approx(A, rel=1e-8)
    assert volume(curve) == pytest.approx(V, rel=1e-8)


def test_area_against_live_quadrature(drop11):
    c = 0.9
    A = 2 * math.pi * graph_integral(1, 1, lambda r, f: r / math.sqrt(1 - f * f), c)
    V = 2 * math.pi * graph_integral(1, 1, lambda r, f: r * r * f / math.sqrt(1 - f * f), c)
    assert area(drop11, c) == pytest.approx(A, rel=1e-10)
    assert volume(drop11, c) == pytest.approx(V, rel=1e-10)


def test_type_i_bounds(drop11):
    c0 = drop11.c_end
    assert closed_area(close_profile(drop11)) < 4 * math.pi * c0 ** 2
    assert volume(drop11) < 4 * math.pi / 3 * c0 ** 3
    assert height(drop11) <= c0


def test_energy_flat_disk():
    disk = solve_profile(DropParams(0.0, 0.0), r_max=1.0)
    assert energy(disk) == pytest.approx(math.pi, rel=1e-12)


def test_energy_sphere_cap(sphere):
    c = 1.0
    A = 2 * math.pi * 2 * (2 - math.sqrt(3))
    # int_0^1 r (2 - sqrt(4 - r^2)) dr = 1 - (8 - 3 sqrt(3)) / 3
    w = 1.0 - (8.0 - 3.0 * math.sqrt(3.0)) / 3.0
    assert energy(sphere, c) == pytest.approx(A + 2 * math.pi * w, rel=1e-10)


@settings(max_examples=20, deadline=None)
@given(a=st.floats(0.1, 2.0), b=st.floats(0.0, 2.0), lam=st.floats(-2.0, 2.0), frac=st.floats(0.2, 1.0))
def test_energy_shift_linearity(a, b, lam, frac):
    c = frac * find_c0(a, b)
    base = solve_profile(DropParams(a, b, 0.0), r_max=c)
    moved = solve_profile(DropParams(a, b, lam), r_max=c)
    cc = base.c_end
    expected = 2 * math.pi * lam * (a * cc ** 4 / 4 + b * cc ** 2 / 2)
    assert energy(moved) - energy(base) == pytest.approx(expected, rel=1e-8, abs=1e-10)


def test_closed_energy_independent_of_u0():
    e0 = closed_energy(close_profile(solve_profile(DropParams(1.0, 1.0, 0.0))))
    e1 = closed_energy(close_profile(solve_profile(DropParams(1.0, 1.0, 3.0))))
    assert e1 == pytest.approx(e0, rel=1e-12)


def test_closed_energy_sphere(sphere):
    # A + b int x3 N3 dM with the inward profile normal: 16 pi - 32 pi / 3
    assert closed_energy(close_profile(sphere)) == pytest.approx(16 * math.pi / 3, rel=1e-10)


def test_q_n1_values(sphere, drop11):
    assert stability_q_n1(close_profile(sphere)) == pytest.approx(0.0, abs=1e-12)
    assert stability_q_n1(close_profile(drop11)) == pytest.approx(-9.857163598738186, rel=1e-8)
    q = stability_q_n1(close_profile(solve_profile(DropParams(-1.0, 4.0))))
    assert q == pytest.approx(1.2016211571069222, rel=1e-8)


def test_flux_examples(sphere, drop11):
    chk = boundary_flux_check(sphere, 1.0)
    assert chk.lhs == pytest.approx(4 * math.pi) and chk.rhs == pytest.approx(4 * math.pi)
    assert chk.residual <= 1e-10
    c0 = drop11.c_end
    assert c0 * (c0 ** 2 + 2) == pytest.approx(4.0, abs=1e-12)
    assert boundary_flux_check(drop11).residual <= 1e-10


def test_heinz_examples():
    assert heinz_margin(2.0, 0.0, 1.0) == 0.0
    assert heinz_margin(1.0, 1.0, 1.0) == 1.0
    assert heinz_margin(1.05 * find_c0(1, 1), 1.0, 1.0) < 0
    with pytest.raises(DomainError):
        heinz_margin(0.0, 1.0, 1.0)


@settings(max_examples=30, deadline=None)
@given(a=st.floats(-2.0, 2.0), b=st.floats(0.1, 3.0), frac=st.floats(0.05, 1.0))
def test_heinz_and_flux_on_realised_radii(a, b, frac):
    if a < 0 and abs(a + 2 * b ** 3 / 27) < 1e-3:
        return
    curve = solve_profile(DropParams(a, b))
    piece = truncate(curve, frac * curve.c_end)
    assert heinz_margin(piece.c_end, a, b) >= -1e-10
    assert boundary_flux_check(piece).residual <= 1e-8


def test_truncate_rules(drop11):
    assert truncate(drop11, None) is drop11
    assert truncate(drop11, drop11.c_end) is drop11
    assert truncate(drop11, 0.5).c_end == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(DomainError):
        truncate(drop11, 2.0)
    with pytest.raises(DomainError):
        truncate(drop11, -0.1)


def test_sample_doubling_changes_little():
    p = DropParams(1.0, 1.0)
    r1 = quantity_report(solve_profile(p, control=StepControl(samples=2048)))
    r2 = quantity_report(solve_profile(p, control=StepControl(samples=4096)))
    for name in ("area", "volume", "height", "energy", "q_n1"):
        assert abs(getattr(r1, name) - getattr(r2, name)) <= 1e-8 * max(1.0, abs(getattr(r1, name)))


def test_report_modes(drop11):
    closed = quantity_report(drop11)
    assert closed.area == pytest.approx(2 * area(drop11))
    assert closed.height == pytest.approx(2 * drop11.u_end)
    assert closed.area > 0 and closed.volume > 0 and closed.flux_residual >= 0
    assert set(closed.to_dict()) == {"area", "volume", "height", "energy", "q_n1", "c0",
                                     "flux_residual", "heinz_margin"}
    piece = quantity_report(drop11, c=1.0)
    assert piece.heinz_margin == pytest.approx(1.0)
    assert piece.area == pytest.approx(area(drop11, 1.0))
    with pytest.raises(DomainError):
        quantity_report(drop11, c=0.0)
    with pytest.raises(DomainError):
        quantity_report(solve_profile(DropParams(1.0, 1.0), r_max=0.5))
