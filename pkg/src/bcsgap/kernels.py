"""Special-function kernels and the gap residual with its partial derivatives.

The residual F(t, y) is the pairing-window integral of
tanh(sqrt(xi^2 + y) / (2 k_b t)) / sqrt(xi^2 + y) minus the inverse coupling;
the squared-gap curve is its zero set.  Two even kernels control the
y-derivatives: slope_kernel for the first, curvature_kernel for the second.
Their defining expressions lose ~2*log10(1/eta) digits to cancellation as
eta -> 0, so below _SERIES_CUT both are evaluated from fixed Taylor tables
generated with exact rational arithmetic (scripts/kernel_series_tables.py
regenerates them).  At the cut the branches agree to ~1e-16 relative, well
inside the 1e-14 continuity budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteInput, OutsideDomain, ZeroGapAtZeroT
from .model import ModelParams, Stratum
from .quad import AdaptiveCache, integrate

__all__ = [
    "ResidualPartials",
    "curvature_kernel",
    "fermi",
    "fermi_weight",
    "gap_residual",
    "gap_residual_partials",
    "gap_residual_second_partials",
    "sech2",
    "slope_kernel",
]

_SERIES_CUT = 0.5

# slope kernel: eta^0, eta^2, ..., eta^36
_SLOPE_SERIES = (
    -0.66666666666666666667,  # -2/3
    0.53333333333333333333,  # 8/15
    -0.32380952380952380952,  # -34/105
    0.17495590828924162257,  # 496/2835
    -0.088632355299021965689,
    0.043105536438869772203,
    -0.020381681418718455755,
    0.0094404390551293757021,
    -0.0043043240563839446667,
    0.0019383075913858900651,
    -0.00086412312543297034917,
    0.00038205372166389515378,
    -0.00016774391960704119984,
    0.000073213592236141127519,
    -0.000031791804960313963053,
    0.000013743715450476178735,
    -5.9182504476143602452e-6,
    2.5396693007043485971e-6,
    -1.0864719316759964852e-6,
)

# curvature kernel: eta^0, eta^2, ..., eta^36
_CURV_SERIES = (
    -1.0666666666666666667,  # -16/15
    1.2952380952380952381,  # 136/105
    -1.0497354497354497354,  # -992/945
    0.70905884239217572551,  # 22112/31185
    -0.43105536438869772203,
    0.24458017702462146907,
    -0.13216614677181125983,
    0.068869184902143114668,
    -0.034889536644946021172,
    0.017282462508659406983,
    -0.0084051818766056933831,
    0.0040258540705689887962,
    -0.0019035533981396693155,
    0.00089017053888879096548,
    -0.00041231146351428536206,
    0.00018938401432365952784,
    -0.000086348756223947852301,
    0.000039112989540335873466,
    -0.000017613219537854255344,
)


def sech2(x):
    """Overflow-safe sech^2, vectorized; symmetric in x."""
    u = np.exp(-np.abs(x))
    r = 2.0 * u / (1.0 + u * u)
    return r * r


def fermi(x):
    """Occupation factor 1 / (1 + e^x) without overflow for any sign of x."""
    x = np.asarray(x, dtype=float)
    u = np.exp(-np.abs(x))
    return np.where(x >= 0.0, u / (1.0 + u), 1.0 / (1.0 + u))


def fermi_weight(x):
    """Thermal weight e^x / (1 + e^x)^2 = -d fermi/dx; symmetric, overflow-safe."""
    u = np.exp(-np.abs(x))
    return u / (1.0 + u) ** 2


def _poly_even(x, coeffs):
    z = x * x
    acc = np.full_like(x, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def _validated_eta(eta):
    x = np.asarray(eta, dtype=float)
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("kernel argument must be finite")
    if np.any(x < 0.0):
        raise ValueError("kernel argument must be >= 0")
    return x


def slope_kernel(eta):
    """Kernel weighting the first squared-gap derivative of the residual.

    (sech^2(eta) - tanh(eta)/eta) / eta^2 for eta > 0, continued by -2/3
    at 0.  Strictly negative everywhere; decays like -tanh(eta)/eta^3, so
    it is still ~-8e-6 at eta = 50 (algebraic, not exponential, decay).
    """
    x = _validated_eta(eta)
    scalar = x.ndim == 0
    x = np.atleast_1d(x).astype(float)
    out = np.empty_like(x)
    small = x < _SERIES_CUT
    if small.any():
        out[small] = _poly_even(x[small], _SLOPE_SERIES)
    if (~small).any():
        xb = x[~small]
        t = np.tanh(xb)
        out[~small] = (sech2(xb) - t / xb) / (xb * xb)
    return float(out[0]) if scalar else out


def curvature_kernel(eta):
    """Kernel weighting the second squared-gap derivative of the residual.

    (3 * slope_kernel(eta) + 2 tanh(eta) sech^2(eta) / eta) / eta^2 for
    eta > 0, continued by -16/15 at 0.  Satisfies
    slope_kernel'(eta) = -eta * curvature_kernel(eta).
    """
    x = _validated_eta(eta)
    scalar = x.ndim == 0
    x = np.atleast_1d(x).astype(float)
    out = np.empty_like(x)
    small = x < _SERIES_CUT
    if small.any():
        out[small] = _poly_even(x[small], _CURV_SERIES)
    if (~small).any():
        xb = x[~small]
        t = np.tanh(xb)
        s2 = sech2(xb)
        g = (s2 - t / xb) / (xb * xb)
        out[~small] = (3.0 * g + 2.0 * t * s2 / xb) / (xb * xb)
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class ResidualPartials:
    """Residual value and partial derivatives at one (t, y) point.

    d_t, d_y are with respect to temperature and squared gap; second-order
    fields stay None unless the second-order evaluation populated them.
    """

    t: float
    y: float
    value: float | None = None
    d_t: float | None = None
    d_y: float | None = None
    d_tt: float | None = None
    d_ty: float | None = None
    d_yy: float | None = None


def _gate_closure(t: float, y: float, params: ModelParams) -> None:
    """Admit the closed box [0, t_c] x [0, y_max], except the (0, 0) corner."""
    if not (math.isfinite(t) and math.isfinite(y)):
        raise NonFiniteInput(f"(t, y) must be finite, got ({t!r}, {y!r})")
    if t == 0.0 and y == 0.0:
        raise ZeroGapAtZeroT(
            "the residual has no zero-temperature value at zero squared gap"
        )
    if t < 0.0 or t > params.t_c or y < 0.0 or y > params.y_max:
        raise OutsideDomain(
            f"(t, y) = ({t!r}, {y!r}) outside [0, {params.t_c!r}] x [0, {params.y_max!r}]"
        )


def _cache_for(caches, key: str) -> AdaptiveCache | None:
    if caches is None:
        return None
    return caches.setdefault(key, AdaptiveCache())


def _zero_t_value(y: float, params: ModelParams) -> float:
    a = params.xi_min
    upper = params.hbar_omega_d + math.hypot(params.hbar_omega_d, math.sqrt(y))
    lower = a + math.hypot(a, math.sqrt(y))
    return math.log(upper / lower) - 1.0 / params.u0n0


def gap_residual(t: float, y: float, params: ModelParams, cache: AdaptiveCache | None = None) -> float:
    """Gap-equation residual at temperature t and squared gap y.

    Positive above the gap curve's zero set in t (below it in y), negative
    on the other side, zero on the curve.  t = 0 uses the exact logarithmic
    antiderivative; t > 0 integrates over the pairing window.
    """
    _gate_closure(t, y, params)
    if t == 0.0:
        return _zero_t_value(y, params)
    beta = 1.0 / (2.0 * params.k_b * t)

    def integrand(xi):
        s = np.sqrt(xi * xi + y)
        return np.tanh(beta * s) / s

    val, _ = integrate(integrand, params.xi_min, params.hbar_omega_d, params.quad_spec, cache=cache)
    return val - 1.0 / params.u0n0


def _first_partials(t: float, y: float, params: ModelParams, caches) -> tuple[float, float]:
    beta = 1.0 / (2.0 * params.k_b * t)
    a, b, spec = params.xi_min, params.hbar_omega_d, params.quad_spec
    i_sech, _ = integrate(
        lambda xi: sech2(beta * np.sqrt(xi * xi + y)), a, b, spec, cache=_cache_for(caches, "sech")
    )
    i_slope, _ = integrate(
        lambda xi: slope_kernel(beta * np.sqrt(xi * xi + y)), a, b, spec, cache=_cache_for(caches, "slope")
    )
    d_t = -i_sech / (2.0 * params.k_b * t * t)
    d_y = i_slope / (2.0 * (2.0 * params.k_b * t) ** 3)
    return d_t, d_y


def residual_and_slope(t: float, y: float, params: ModelParams, caches=None) -> tuple[float, float]:
    """Residual value together with its y-derivative (one Newton step's worth).

    Interior-solver workhorse; skips the temperature derivative that the
    full first-order evaluation would also compute.
    """
    _gate_closure(t, y, params)
    if t == 0.0:
        raise OutsideDomain("the zero-temperature edge is handled by closed forms")
    value = gap_residual(t, y, params, cache=_cache_for(caches, "value"))
    beta = 1.0 / (2.0 * params.k_b * t)
    i_slope, _ = integrate(
        lambda xi: slope_kernel(beta * np.sqrt(xi * xi + y)),
        params.xi_min,
        params.hbar_omega_d,
        params.quad_spec,
        cache=_cache_for(caches, "slope"),
    )
    d_y = i_slope / (2.0 * (2.0 * params.k_b * t) ** 3)
    return value, d_y


def gap_residual_partials(t: float, y: float, params: ModelParams, caches=None) -> ResidualPartials:
    """Residual with first partial derivatives.

    On the zero-temperature edge d_t is exactly 0 and d_y comes from the
    closed-form antiderivative xi / (y * sqrt(xi^2 + y)); elsewhere both are
    pairing-window integrals (d_t of the thermal sech^2 weight, d_y of the
    slope kernel).  Both are strictly negative off the zero-temperature edge.
    """
    _gate_closure(t, y, params)
    if t == 0.0:
        a, b = params.xi_min, params.hbar_omega_d
        anti = lambda xi: xi / (y * math.hypot(xi, math.sqrt(y)))
        return ResidualPartials(
            t=t,
            y=y,
            value=_zero_t_value(y, params),
            d_t=0.0,
            d_y=-0.5 * (anti(b) - anti(a)),
        )
    value = gap_residual(t, y, params, cache=_cache_for(caches, "value"))
    d_t, d_y = _first_partials(t, y, params, caches)
    return ResidualPartials(t=t, y=y, value=value, d_t=d_t, d_y=d_y)


def gap_residual_second_partials(t: float, y: float, params: ModelParams, caches=None) -> ResidualPartials:
    """Residual with first and second partial derivatives (interior only).

    The boundary strata are refused: the second-order formulas are
    established on the open interior, and the endpoint needs of the gap
    curve are met by dedicated closed forms in the gap module.
    """
    if params.domain.classify(t, y) is not Stratum.INTERIOR:
        raise OutsideDomain(
            f"second partial derivatives exist on the open interior only, got (t, y) = ({t!r}, {y!r})"
        )
    kb = params.k_b
    beta = 1.0 / (2.0 * kb * t)
    a, b, spec = params.xi_min, params.hbar_omega_d, params.quad_spec

    def over(tag, f):
        val, _ = integrate(f, a, b, spec, cache=_cache_for(caches, tag))
        return val

    value = gap_residual(t, y, params, cache=_cache_for(caches, "value"))
    i_sech = over("sech", lambda xi: sech2(beta * np.sqrt(xi * xi + y)))
    i_slope = over("slope", lambda xi: slope_kernel(beta * np.sqrt(xi * xi + y)))

    def eta_of(xi):
        return beta * np.sqrt(xi * xi + y)

    i_eta_tanh = over(
        "eta_tanh", lambda xi: (lambda e: e * np.tanh(e) * sech2(e))(eta_of(xi))
    )
    i_mixed = over(
        "mixed", lambda xi: (lambda e: np.tanh(e) / e * sech2(e))(eta_of(xi))
    )
    i_curv = over("curv", lambda xi: curvature_kernel(eta_of(xi)))

    two_kbt = 2.0 * kb * t
    d_t = -i_sech / (2.0 * kb * t * t)
    d_y = i_slope / (2.0 * two_kbt**3)
    d_tt = (i_sech - i_eta_tanh) / (kb * t**3)
    d_ty = i_mixed / (two_kbt**3 * t)
    d_yy = -i_curv / (4.0 * two_kbt**5)
    return ResidualPartials(
        t=t, y=y, value=value, d_t=d_t, d_y=d_y, d_tt=d_tt, d_ty=d_ty, d_yy=d_yy
    )
