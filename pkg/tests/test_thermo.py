"""Potential pieces, condensation part, continuity, and the jump at t_c."""

import dataclasses
import math

import numpy as np
import pytest

from bcsgap.errors import CutoffNotZero, NotSolved, OutsideDomain
from bcsgap.gap import GapPoint, gap_derivatives_at, solve_gap_at
from bcsgap.model import DensityOfStates, build_params
from bcsgap.thermo import (
    JumpMeasurement,
    cancellation_residual,
    condensation_potential,
    measured_second_derivative_jump,
    normal_potential,
    second_derivative_jump,
    specific_heat_jump,
    tail_potential,
    thermo_to_csv,
    thermodynamic_potential,
)

from . import oracles


def _zero_dos_params(params):
    # build_params rejects a DOS that contradicts n0 at the Fermi surface,
    # so the test double is spliced in after construction
    zero = DensityOfStates(evaluator=lambda xi: 0.0 * xi, growth_bound=0.0, name="zero")
    return dataclasses.replace(params, dos=zero)


def test_zero_dos_tails_vanish(default_params):
    p = _zero_dos_params(default_params)
    assert tail_potential(0.7 * p.t_c, p) == (0.0, 0.0, 0.0)
    assert tail_potential(1.3 * p.t_c, p, order=1) == (0.0, 0.0)


def test_tail_potential_derivatives_match_differences(default_params):
    # probed at several t_c so the smearing terms rise above the huge
    # t-independent filled-sea constant; near t_c they are ~1e-12 of it and
    # finite differences of the order-0 values bottom out in quadrature noise
    p = default_params
    t = 5.0 * p.t_c
    v0, v1, v2 = tail_potential(t, p)
    fd1 = oracles.d1_central(lambda s: tail_potential(s, p, order=0)[0], t, 1e-3 * t)
    fd2 = oracles.d1_central(lambda s: tail_potential(s, p, order=1)[1], t, 1e-3 * t)
    assert v1 == pytest.approx(fd1, rel=1e-5)
    assert v2 == pytest.approx(fd2, rel=1e-5)
    assert v2 < 0.0  # thermal smearing always lowers curvature


def test_window_part_matches_simpson(default_params):
    # the mu-dependent tails subtract off, leaving the pairing-window piece
    p = default_params
    t = 1.5 * p.t_c
    kt = p.k_b * t
    window = normal_potential(t, p, order=0)[0] - tail_potential(t, p, order=0)[0]
    ln_term = oracles.simpson(
        lambda xi: np.log1p(np.exp(-xi / kt)), 0.0, 1.0, n=50_000
    )
    assert window == pytest.approx(-1.0 - 4.0 * kt * ln_term, rel=1e-10)


def test_window_part_independent_of_band_shape(default_params):
    t = 1.2 * default_params.t_c
    wider = build_params(mu=20.0)
    a = normal_potential(t, default_params, order=0)[0] - tail_potential(
        t, default_params, order=0
    )[0]
    b = normal_potential(t, wider, order=0)[0] - tail_potential(t, wider, order=0)[0]
    assert a == pytest.approx(b, rel=1e-12)


def test_normal_potential_derivatives_match_differences(default_params):
    p = default_params
    t = 1.5 * p.t_c
    v0, v1, v2 = normal_potential(t, p)
    fd1 = oracles.d1_central(lambda s: normal_potential(s, p, order=0)[0], t, 1e-4 * t)
    fd2 = oracles.d1_central(lambda s: normal_potential(s, p, order=1)[1], t, 1e-4 * t)
    assert v1 == pytest.approx(fd1, rel=1e-7)
    assert v2 == pytest.approx(fd2, rel=1e-7)


def test_normal_branch_smooth_across_transition(default_params):
    # the normal branch itself has no feature at t_c
    p = default_params
    h = 1e-4 * p.t_c
    below = normal_potential(p.t_c - h, p)[2]
    above = normal_potential(p.t_c + h, p)[2]
    assert below == pytest.approx(above, rel=1e-4)


def _solved_point_with_derivatives(t, params):
    point = solve_gap_at(t, params)
    f_prime, f_second = gap_derivatives_at(t, params, point)
    return GapPoint(
        t=point.t, f=point.f, residual=point.residual,
        f_prime=f_prime, f_second=f_second,
    )


def test_condensation_vanishes_at_transition(default_params):
    p = default_params
    point = _solved_point_with_derivatives(p.t_c, p)
    d0, d1, d2 = condensation_potential(p.t_c, p, point)
    assert d0 == 0.0  # integrands are identically zero once the gap closes
    assert d1 == 0.0
    assert d2 == pytest.approx(second_derivative_jump(p), rel=1e-10)


def test_condensation_lowers_the_potential(default_params):
    p = default_params
    t = 0.5 * p.t_c
    value = condensation_potential(t, p, lambda s: solve_gap_at(s, p), order=0)[0]
    assert value < 0.0


def test_condensation_matches_simpson(default_params):
    # naive textbook form of the integrals, Simpson-summed; safe because the
    # gap is not small at t_c/2 so no catastrophic cancellation occurs
    p = default_params
    t = 0.5 * p.t_c
    kt = p.k_b * t
    f = solve_gap_at(t, p).f

    def shift(xi):
        return np.sqrt(xi * xi + f) - xi

    def ln_ratio(xi):
        s = np.sqrt(xi * xi + f)
        return np.log1p(np.exp(-s / kt)) - np.log1p(np.exp(-xi / kt))

    expected = (
        f / 0.3
        - 2.0 * oracles.simpson(shift, 0.0, 1.0, n=50_000)
        - 4.0 * kt * oracles.simpson(ln_ratio, 0.0, 1.0, n=50_000)
    )
    value = condensation_potential(t, p, lambda s: solve_gap_at(s, p), order=0)[0]
    assert value == pytest.approx(expected, rel=1e-8)


def test_condensation_gates(default_params):
    p = default_params
    point = solve_gap_at(0.5 * p.t_c, p)
    with pytest.raises(OutsideDomain):
        condensation_potential(1.1 * p.t_c, p, point)
    with pytest.raises(NotSolved):
        condensation_potential(0.6 * p.t_c, p, point)  # stale temperature
    fat = GapPoint(t=0.5 * p.t_c, f=point.f, residual=1.0)
    with pytest.raises(NotSolved):
        condensation_potential(0.5 * p.t_c, p, fat)


def test_cancellation_residual_is_machine_level(default_params):
    p = default_params
    t = 0.5 * p.t_c
    assert cancellation_residual(t, p, solve_gap_at(t, p)) < 1e-12


def test_branch_dispatch(default_params):
    p = default_params
    above = thermodynamic_potential(1.2 * p.t_c, p)
    assert above.branch == "normal"
    # above the transition the potential IS the normal branch, bitwise
    parts = normal_potential(1.2 * p.t_c, p)
    assert (above.omega, above.omega_t, above.omega_tt) == parts
    at_tc = thermodynamic_potential(p.t_c, p)
    assert at_tc.branch == "superconducting"


def test_requested_order_limits_fields(default_params):
    p = default_params
    bare = thermodynamic_potential(0.8 * p.t_c, p, order=0)
    assert bare.omega_t is None and bare.entropy is None
    first = thermodynamic_potential(0.8 * p.t_c, p, order=1)
    assert first.omega_t is not None and first.omega_tt is None
    with pytest.raises(ValueError):
        thermodynamic_potential(0.8 * p.t_c, p, order=3)
    with pytest.raises(OutsideDomain):
        thermodynamic_potential(0.0, p)
    with pytest.raises(OutsideDomain):
        thermodynamic_potential(-1.0, p)


def test_point_invariants(default_params):
    p = default_params
    point = thermodynamic_potential(0.9 * p.t_c, p)
    assert point.entropy == -point.omega_t
    assert point.c_v == -point.t * point.omega_tt
    assert point.entropy > 0.0
    assert point.c_v > 0.0


def test_potential_and_entropy_continuous_at_transition(default_params):
    p = default_params
    h = 1e-7 * p.t_c
    below = thermodynamic_potential(p.t_c - h, p, order=1)
    above = thermodynamic_potential(p.t_c + h, p, order=1)
    # the values sit 2h apart on a curve with slope -entropy, so the gap
    # between them is ~2h*|S| ~ 2e-9; anything beyond that is a seam defect
    assert abs(below.omega - above.omega) < 3.0 * h * abs(below.entropy)
    assert below.entropy == pytest.approx(above.entropy, rel=1e-6)


def test_jump_measurement(default_params):
    p = default_params
    closed = second_derivative_jump(p)
    assert closed < 0.0
    measured = measured_second_derivative_jump(p)
    assert isinstance(measured, JumpMeasurement)
    assert measured.jump == measured.below - measured.above
    assert measured.below < measured.above  # curvature drops on the cold side
    assert measured.jump == pytest.approx(closed, rel=1e-6)


def test_jump_with_cutoff(eps_params):
    closed = second_derivative_jump(eps_params)
    assert closed < 0.0
    measured = measured_second_derivative_jump(eps_params)
    assert measured.jump == pytest.approx(closed, rel=1e-3)


def test_specific_heat_jump(default_params, eps_params):
    p = default_params
    dcv = specific_heat_jump(p)
    assert dcv > 0.0
    assert dcv == pytest.approx(-p.t_c * second_derivative_jump(p), rel=1e-12)
    with pytest.raises(CutoffNotZero):
        specific_heat_jump(eps_params)


def test_csv_serialization(default_params):
    p = default_params
    points = [
        thermodynamic_potential(0.9 * p.t_c, p),
        thermodynamic_potential(1.1 * p.t_c, p, order=0),
    ]
    text = thermo_to_csv(points)
    lines = text.strip().split("\n")
    assert lines[0] == "T,omega,omega_t,omega_tt,entropy,c_v,branch"
    full = lines[1].split(",")
    assert full[-1] == "superconducting"
    assert float(full[1]) == points[0].omega
    bare = lines[2].split(",")
    assert bare[-1] == "normal"
    assert bare[2] == "" and bare[5] == ""  # fields beyond the order stay empty
