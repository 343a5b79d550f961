"""Thermodynamic potential: normal part, condensation part, and the jump.

The potential is piecewise: the normal branch everywhere, plus a
condensation correction at and below the transition.  The correction and
its first temperature derivative vanish at the transition (the potential is
C1 there), while the second derivative jumps by a closed-form amount; the
specific-heat discontinuity follows from it.  Everything is evaluated with
overflow-safe thermal factors, and the semi-infinite band tails truncate on
the thermal decay scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CutoffNotZero, NotSolved, OutsideDomain
from .gap import RESIDUAL_TOL, GapPoint, gap_derivatives_at, solve_gap_at
from .kernels import fermi, fermi_weight, gap_residual
from .model import ModelParams
from .quad import integrate, integrate_semi_infinite

__all__ = [
    "JumpMeasurement",
    "ThermoPoint",
    "cancellation_residual",
    "extrapolate_to_zero",
    "condensation_potential",
    "measured_second_derivative_jump",
    "normal_potential",
    "second_derivative_jump",
    "specific_heat_jump",
    "tail_potential",
    "thermo_to_csv",
    "thermodynamic_potential",
]


@dataclass(frozen=True)
class ThermoPoint:
    """Potential and temperature derivatives at one temperature.

    entropy = -omega_t and c_v = -t * omega_tt by definition; fields beyond
    the requested derivative order stay None.  branch is "superconducting"
    for t <= t_c and "normal" above.
    """

    t: float
    omega: float
    omega_t: float | None = None
    omega_tt: float | None = None
    entropy: float | None = None
    c_v: float | None = None
    branch: str = "normal"


def _check_order(order: int) -> None:
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1, or 2, got {order!r}")


def _check_temperature(t: float) -> None:
    if not (isinstance(t, (int, float)) and math.isfinite(t) and t > 0.0):
        raise OutsideDomain(f"temperature must be finite and > 0, got {t!r}")


def tail_potential(t: float, params: ModelParams, order: int = 2) -> tuple:
    """Band contributions from outside the pairing window, with derivatives.

    Covers energies in [-mu, -hbar_omega_d] (empty when mu is inside the
    window) and [hbar_omega_d, inf); the improper tail truncates on the
    thermal decay scale k_b * t.  Returns (value,), (value, d1), or
    (value, d1, d2) according to order.
    """
    _check_temperature(t)
    _check_order(order)
    kb, kt = params.k_b, params.k_b * t
    dos, mu, L = params.dos, params.mu, params.hbar_omega_d
    spec = params.quad_spec
    has_lower = mu > L

    def fin(f):
        return integrate(f, -mu, -L, spec)[0] if has_lower else 0.0

    def tail(f):
        return integrate_semi_infinite(f, L, kt, spec)[0]

    const = fin(lambda xi: xi * dos(xi))
    ln_low = fin(lambda xi: dos(xi) * np.log1p(np.exp(xi / kt)))
    ln_up = tail(lambda xi: dos(xi) * np.log1p(np.exp(-xi / kt)))
    value = 2.0 * const - 2.0 * kt * (ln_low + ln_up)
    if order == 0:
        return (value,)

    occ_low = fin(lambda xi: dos(xi) * (-xi) * fermi(-xi / kt))
    occ_up = tail(lambda xi: dos(xi) * xi * fermi(xi / kt))
    d1 = -2.0 * kb * (ln_low + ln_up) - (2.0 / t) * (occ_low + occ_up)
    if order == 1:
        return (value, d1)

    w_low = fin(lambda xi: dos(xi) * xi * xi * fermi_weight(xi / kt))
    w_up = tail(lambda xi: dos(xi) * xi * xi * fermi_weight(xi / kt))
    d2 = -2.0 / (kb * t**3) * (w_low + w_up)
    return (value, d1, d2)


def normal_potential(t: float, params: ModelParams, order: int = 2) -> tuple:
    """Normal-branch potential with derivatives: pairing window plus tails.

    The window's zero-point piece -n0 * (hbar_omega_d^2 - xi_min^2) is a
    closed form; the thermal window piece and the tails are quadratures.
    """
    _check_temperature(t)
    _check_order(order)
    n0, kb, kt = params.n0, params.k_b, params.k_b * t
    a, L, spec = params.xi_min, params.hbar_omega_d, params.quad_spec

    tails = tail_potential(t, params, order)
    ln_win = integrate(lambda xi: np.log1p(np.exp(-xi / kt)), a, L, spec)[0]
    value = -n0 * (L * L - a * a) - 4.0 * n0 * kt * ln_win + tails[0]
    if order == 0:
        return (value,)

    occ_win = integrate(lambda xi: xi * fermi(xi / kt), a, L, spec)[0]
    d1 = -4.0 * n0 * kb * ln_win - (4.0 * n0 / t) * occ_win + tails[1]
    if order == 1:
        return (value, d1)

    w_win = integrate(lambda xi: xi * xi * fermi_weight(xi / kt), a, L, spec)[0]
    d2 = -4.0 * n0 / (kb * t**3) * w_win + tails[2]
    return (value, d1, d2)


def _resolve_gap(t: float, params: ModelParams, gap) -> GapPoint:
    point = gap(t) if callable(gap) else gap
    if point is None or point.t != t:
        raise NotSolved(f"no gap solution supplied at t = {t!r}")
    if not point.residual <= RESIDUAL_TOL:
        raise NotSolved(f"gap residual {point.residual:.3e} above {RESIDUAL_TOL:g}")
    return point


def condensation_potential(t: float, params: ModelParams, gap, order: int = 2) -> tuple:
    """Superconducting-minus-normal potential difference, with derivatives.

    gap is either a solved GapPoint at t or a callable t -> GapPoint.
    Vanishes identically at t = t_c together with its first derivative; the
    second derivative does not, which is the whole point.  The first
    derivative's gap-equation bracket (slope of the gap times the residual)
    is dropped analytically; cancellation_residual reports its size.
    """
    _check_temperature(t)
    _check_order(order)
    if t > params.t_c:
        raise OutsideDomain(
            f"condensation part exists for 0 < t <= t_c, got t = {t!r}"
        )
    point = _resolve_gap(t, params, gap)
    f = point.f
    n0, kb, kt = params.n0, params.k_b, params.k_b * t
    a, L, spec = params.xi_min, params.hbar_omega_d, params.quad_spec

    def win(g):
        return integrate(g, a, L, spec)[0]

    def shifted(xi):
        return np.sqrt(xi * xi + f)

    # sqrt(xi^2 + f) - xi without cancellation for xi >> sqrt(f)
    def gap_shift(xi):
        return f / (shifted(xi) + xi)

    # ln((1 + e^{-s/kt}) / (1 + e^{-xi/kt})) collapsed to a single log1p:
    # the two logarithms agree to O(f), so subtracting them directly would
    # leave only cancellation noise once the gap is small
    def ln_ratio(xi):
        return np.log1p(fermi(xi / kt) * np.expm1(-gap_shift(xi) / kt))

    i_ratio = win(ln_ratio)
    i_shift = win(gap_shift)
    value = f * n0 / params.u0n0 - 2.0 * n0 * i_shift - 4.0 * n0 * kt * i_ratio
    if order == 0:
        return (value,)

    # xi fermi(xi/kt) - s fermi(s/kt), with the occupation drop
    # fermi(v) - fermi(u) = -fermi(v) expm1(v - u) / (1 + e^{-u}) kept in
    # factored form for the same reason as ln_ratio
    def occ_diff(xi):
        s = shifted(xi)
        drop = -np.expm1(-gap_shift(xi) / kt) / (1.0 + np.exp(-s / kt))
        return xi * fermi(xi / kt) * drop - gap_shift(xi) * fermi(s / kt)

    i_occ = win(occ_diff)
    d1 = -4.0 * n0 * kb * i_ratio + (4.0 * n0 / t) * i_occ
    if order == 1:
        return (value, d1)

    f_prime = point.f_prime
    if f_prime is None:
        f_prime, _ = gap_derivatives_at(t, params, point)
    i_w_plain = win(lambda xi: xi * xi * fermi_weight(xi / kt))
    i_w_shift = win(
        lambda xi: fermi_weight(shifted(xi) / kt) * (xi * xi + f - t * f_prime / 2.0)
    )
    d2 = 4.0 * n0 / (kb * t**3) * (i_w_plain - i_w_shift)
    return (value, d1, d2)


def cancellation_residual(t: float, params: ModelParams, gap_point: GapPoint) -> float:
    """Size of the gap-equation bracket dropped from the condensation slope.

    The slope formula multiplies the gap curve's derivative by
    n0 * (residual at the solved point), which is zero in exact arithmetic;
    this returns that bracket's magnitude so the suite can confirm the
    dropped term was genuinely negligible.
    """
    point = _resolve_gap(t, params, gap_point)
    return params.n0 * abs(gap_residual(t, point.f, params))


def thermodynamic_potential(t: float, params: ModelParams, order: int = 2) -> ThermoPoint:
    """Piecewise potential at one temperature, with entropy and specific heat.

    At or below the transition the condensation part is added to the normal
    branch (the gap is solved internally); above it the normal branch alone.
    """
    _check_temperature(t)
    _check_order(order)
    if t > params.t_c:
        parts = normal_potential(t, params, order)
        branch = "normal"
    else:
        normal = normal_potential(t, params, order)
        point = solve_gap_at(t, params)
        if order == 2:
            f_prime, f_second = gap_derivatives_at(t, params, point)
            point = GapPoint(
                t=point.t,
                f=point.f,
                residual=point.residual,
                f_prime=f_prime,
                f_second=f_second,
            )
        cond = condensation_potential(t, params, point, order)
        parts = tuple(nv + cv for nv, cv in zip(normal, cond))
        branch = "superconducting"

    omega = parts[0]
    omega_t = parts[1] if order >= 1 else None
    omega_tt = parts[2] if order == 2 else None
    return ThermoPoint(
        t=t,
        omega=omega,
        omega_t=omega_t,
        omega_tt=omega_tt,
        entropy=None if omega_t is None else -omega_t,
        c_v=None if omega_tt is None else -t * omega_tt,
        branch=branch,
    )


def second_derivative_jump(params: ModelParams) -> float:
    """Closed-form jump of the potential's second derivative at t_c.

    (2 n0 f'(t_c) / t_c) * (fermi(2 eps) - fermi(hbar_omega_d / (k_b t_c))).
    The slope factor is negative and the occupation bracket positive, so the
    jump is strictly negative: the limit from below lies under the limit
    from above.
    """
    point = solve_gap_at(params.t_c, params)
    f_prime, _ = gap_derivatives_at(params.t_c, params, point)
    bracket = float(fermi(2.0 * params.eps)) - float(
        fermi(params.hbar_omega_d / (params.k_b * params.t_c))
    )
    return 2.0 * params.n0 * f_prime / params.t_c * bracket


def extrapolate_to_zero(hs, ys) -> float:
    """Neville tableau for the limit of y(h) as h -> 0."""
    hs = [float(h) for h in hs]
    tab = [float(y) for y in ys]
    n = len(tab)
    for level in range(1, n):
        for i in range(n - level):
            tab[i] = tab[i + 1] + (tab[i + 1] - tab[i]) * hs[i + level] / (
                hs[i] - hs[i + level]
            )
    return tab[0]


@dataclass(frozen=True)
class JumpMeasurement:
    """One-sided second-derivative limits at t_c measured from samples."""

    below: float
    above: float

    @property
    def jump(self) -> float:
        return self.below - self.above


def measured_second_derivative_jump(params: ModelParams, ks=(3, 4, 5, 6)) -> JumpMeasurement:
    """Jump of the potential's second derivative measured from one-sided fits.

    Protocol: evaluate the second derivative at t_c * (1 -+ 10^-k) for each
    k, then extrapolate each side to t_c with a Neville tableau.  This is
    the measurement the closed form is certified against.
    """
    t_c = params.t_c
    hs = [t_c * 10.0 ** (-k) for k in ks]
    below = [thermodynamic_potential(t_c - h, params).omega_tt for h in hs]
    above = [thermodynamic_potential(t_c + h, params).omega_tt for h in hs]
    return JumpMeasurement(
        below=extrapolate_to_zero(hs, below),
        above=extrapolate_to_zero(hs, above),
    )


def specific_heat_jump(params: ModelParams) -> float:
    """Closed-form specific-heat discontinuity at t_c (cutoff-free mode only).

    -n0 * f'(t_c) * tanh(hbar_omega_d / (2 k_b t_c)), strictly positive:
    the superconducting side carries the larger specific heat.  Equals
    -t_c times the second-derivative jump when eps = 0.
    """
    if params.eps != 0.0:
        raise CutoffNotZero(
            f"the specific-heat closed form needs eps = 0, got eps = {params.eps}"
        )
    point = solve_gap_at(params.t_c, params)
    f_prime, _ = gap_derivatives_at(params.t_c, params, point)
    return -params.n0 * f_prime * math.tanh(
        params.hbar_omega_d / (2.0 * params.k_b * params.t_c)
    )


def thermo_to_csv(points) -> str:
    """Serialize ThermoPoints with the fixed column order."""
    lines = ["T,omega,omega_t,omega_tt,entropy,c_v,branch"]
    for p in points:
        cells = [f"{p.t:.17g}", f"{p.omega:.17g}"]
        for v in (p.omega_t, p.omega_tt, p.entropy, p.c_v):
            cells.append("" if v is None else f"{v:.17g}")
        cells.append(p.branch)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
