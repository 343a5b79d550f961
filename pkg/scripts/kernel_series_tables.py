#!/usr/bin/env python3
"""Regenerate the small-argument Taylor tables used by bcsgap.kernels.

The slope kernel (sech(x)^2 - tanh(x)/x) / x^2 is expanded at 0 with exact
rational arithmetic; the curvature kernel follows from the exact identity
slope' (x) = -x * curvature(x), i.e. its 2j-th coefficient is
-2*(j+1) times the slope table's 2(j+1)-th one.  Coefficients are printed
as 20-significant-digit decimals, the exact literals embedded in kernels.py,
and every regenerated entry is compared bitwise against the installed module
so drift cannot go unnoticed.  Exit status 0 means the tables match.
"""

import sys

import sympy as sp

from bcsgap import kernels

TERMS = 19  # even orders x^0 .. x^36


def exact_slope_coefficients(n_terms: int) -> list[sp.Rational]:
    x = sp.symbols("x")
    expr = (1 / sp.cosh(x) ** 2 - sp.tanh(x) / x) / x**2
    # one spare even order so the curvature table can be derived from it
    poly = sp.series(expr, x, 0, 2 * n_terms + 3).removeO()
    coeffs = [poly.coeff(x, 2 * k) for k in range(n_terms + 1)]
    assert all(isinstance(c, sp.Rational) for c in coeffs)
    return coeffs


def derive_curvature_coefficients(slope: list[sp.Rational]) -> list[sp.Rational]:
    return [-2 * (j + 1) * slope[j + 1] for j in range(len(slope) - 1)]


def render(name: str, coeffs: list[sp.Rational]) -> str:
    lines = [f"{name} = ("]
    for k, c in enumerate(coeffs):
        value = sp.Float(c, 20)
        comment = f"  # {c}" if k < 4 else ""
        lines.append(f"    {value},{comment}")
    lines.append(")")
    return "\n".join(lines)


def main() -> int:
    slope = exact_slope_coefficients(TERMS)
    curv = derive_curvature_coefficients(slope)
    print(render("_SLOPE_SERIES", slope[:TERMS]))
    print()
    print(render("_CURV_SERIES", curv[:TERMS]))

    bad = 0
    for table, exact in (
        (kernels._SLOPE_SERIES, slope[:TERMS]),
        (kernels._CURV_SERIES, curv[:TERMS]),
    ):
        for k, (have, want) in enumerate(zip(table, exact)):
            regenerated = float(sp.Float(want, 20))
            if regenerated != have:
                print(
                    f"MISMATCH at even order {2 * k}: module {have!r} "
                    f"vs regenerated {regenerated!r}",
                    file=sys.stderr,
                )
                bad += 1
    if bad:
        return 1
    print(f"\nall {2 * TERMS} coefficients match the installed tables")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
