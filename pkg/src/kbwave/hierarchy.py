"""Exact vanishing-boundary reductions of the multi-component hierarchy.

For the ell-component system the traveling reduction with all integration
constants zero is a polynomial recurrence in exact rationals: with p_1 = f
and

    p_{j+1}(f) = -int_0^f [ (c + s/2) p_j'(s) + p_j(s) ] ds,        j = 1..ell,
    P_ell(f)   = -8 int_0^f p_{ell+1}(s) ds,

the fields are h_j = p_j(f) (h_1 = u, h_2 = g, ...) and (f')^2 = P_ell(f).
Everything here is bit-exact Fraction arithmetic; the ell = 2, 3, 4 results

    P_2 = -f^2 (f + 2c)^2
    P_3 =  f^2 (f + 2c)^3 / 2
    P_4 = -f^2 (f + 2c)^4 / 4

are regression fixtures for it, and :func:`conjecture_report` compares every
P_ell against the two closed-form candidates

    (a)  -f^2 (f + 2c)^ell / 2^(2 ell - 4)
    (b)  (-1)^(ell-1) f^2 (f + 2c)^ell / 2^(ell - 2)

without asserting either; at ell = 4 candidate (a) has denominator 16 where
the recurrence gives 4, so (a) and (b) genuinely differ from ell = 3 on.

The ell = 3 reduction with general constants and its implicit solitary
profile (real branch -2c < f < 0 for c > 0) live here too.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import OutOfBranchRange

__all__ = [
    "FPoly",
    "FieldStack",
    "reduce_vanishing",
    "conjecture_report",
    "ConjectureReport",
    "even_ell_nonexistence",
    "reduce_l3_full",
    "l3_fields",
    "l3_implicit_profile",
    "l3_asymptotes",
]


class FPoly:
    """Polynomial in f with coefficients polynomial in c, exact rationals.

    Stored as a dict {(i, j): Fraction} for monomials f^i c^j.  Immutable in
    spirit: all operations return new instances.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cleaned = {}
        for key, val in (coeffs or {}).items():
            fv = Fraction(val)
            if fv != 0:
                cleaned[(int(key[0]), int(key[1]))] = fv
        self.coeffs = cleaned

    @classmethod
    def variable_f(cls):
        return cls({(1, 0): 1})

    @classmethod
    def monomial(cls, i, j, coeff=1):
        return cls({(i, j): coeff})

    def __eq__(self, other):
        return isinstance(other, FPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + val
        return FPoly(out)

    def __neg__(self):
        return FPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FPoly):
            out = {}
            for (i1, j1), v1 in self.coeffs.items():
                for (i2, j2), v2 in other.coeffs.items():
                    key = (i1 + i2, j1 + j2)
                    out[key] = out.get(key, Fraction(0)) + v1 * v2
            return FPoly(out)
        return FPoly({k: v * Fraction(other) for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def deriv_f(self):
        return FPoly({(i - 1, j): v * i for (i, j), v in self.coeffs.items() if i > 0})

    def integrate_f(self):
        """Antiderivative in f vanishing at f = 0."""
        return FPoly({(i + 1, j): v / (i + 1) for (i, j), v in self.coeffs.items()})

    def degree_f(self):
        return max((i for (i, _) in self.coeffs), default=-1)

    def coeff_f(self, i):
        """Coefficient of f^i as an FPoly in c."""
        return FPoly({(0, j): v for (fi, j), v in self.coeffs.items() if fi == i})

    def __call__(self, f, c):
        exact = isinstance(f, Rational) and isinstance(c, Rational)
        total = Fraction(0) if exact else 0.0
        for (i, j), v in self.coeffs.items():
            term = v if exact else float(v)
            total = total + term * (f ** i) * (c ** j)
        return total

    def is_zero(self):
        return not self.coeffs

    def as_strings(self):
        """JSON-friendly mapping 'f^i c^j' -> 'num/den'."""
        out = {}
        for (i, j) in sorted(self.coeffs):
            out[f"f^{i} c^{j}"] = str(self.coeffs[(i, j)])
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs, reverse=True):
            v = self.coeffs[(i, j)]
            mono = []
            if i:
                mono.append(f"f^{i}" if i > 1 else "f")
            if j:
                mono.append(f"c^{j}" if j > 1 else "c")
            body = "*".join(mono) if mono else ""
            coeff = str(v)
            parts.append(f"{coeff}*{body}" if body else coeff)
        return " + ".join(parts).replace("+ -", "- ")


# (c + f/2) as an FPoly, used by the recurrence
_HALF_SHIFT = FPoly({(0, 1): 1, (1, 0): Fraction(1, 2)})


@dataclass(frozen=True)
class FieldStack:
    """The reduced fields h_1..h_ell (as polynomials in f) plus P_ell."""

    ell: int
    fields: tuple
    P: FPoly

    def __post_init__(self):
        if self.fields[0] != FPoly.variable_f():
            raise ValueError("h_1 must equal f exactly")
        if not self.P.coeff_f(0).is_zero():
            raise ValueError("P_ell(0) must vanish (constants were all zero)")


def reduce_vanishing(ell: int) -> FieldStack:
    """Exact reduction with all integration constants zero; ell >= 2."""
    if ell < 2:
        raise ValueError("ell must be >= 2")
    p = FPoly.variable_f()
    fields = [p]
    for _ in range(ell):
        p = -( _HALF_SHIFT * p.deriv_f() + p ).integrate_f()
        fields.append(p)
    P = (-8) * fields[ell].integrate_f()
    return FieldStack(ell=ell, fields=tuple(fields[:ell]), P=P)


def _candidate(ell: int, sign: int, log2_den: int) -> FPoly:
    """sign * f^2 (f + 2c)^ell / 2^log2_den as an exact FPoly."""
    base = FPoly({(1, 0): 1, (0, 1): 2})  # f + 2c
    poly = FPoly.monomial(0, 0)
    for _ in range(ell):
        poly = poly * base
    poly = poly * FPoly.monomial(2, 0)
    scale = Fraction(sign) / Fraction(2) ** log2_den
    return poly * scale


@dataclass(frozen=True)
class ConjectureReport:
    """Per-ell verdicts comparing P_ell with the two closed-form candidates."""

    rows: tuple

    def to_json(self) -> str:
        return json.dumps({"schema": 1, "rows": [dict(r) for r in self.rows]},
                          indent=2)

    def to_text(self) -> str:
        lines = ["ell  printed-form  power-pattern  leading  P_ell"]
        for r in self.rows:
            lines.append(
                f"{r['ell']:>3}  {'match' if r['printed_match'] else 'MISMATCH':<12}"
                f"  {'match' if r['pattern_match'] else 'MISMATCH':<13}"
                f"  {r['leading']:<7}  {r['P']}"
            )
        return "\n".join(lines)


def conjecture_report(ell_max: int) -> ConjectureReport:
    """Compare P_ell for 2 <= ell <= ell_max against both candidates.

    Candidate 'printed' is -f^2 (f+2c)^ell / 2^(2 ell - 4); candidate
    'pattern' is (-1)^(ell-1) f^2 (f+2c)^ell / 2^(ell-2).  The report states
    exact match/mismatch per ell; it is data, not a test verdict.
    """
    if ell_max < 4:
        raise ValueError("ell_max must be >= 4")
    rows = []
    for ell in range(2, ell_max + 1):
        P = reduce_vanishing(ell).P
        printed = _candidate(ell, -1, 2 * ell - 4)
        pattern = _candidate(ell, (-1) ** (ell - 1), ell - 2)
        lead = P.coeff_f(ell + 2)
        lead_val = lead.coeffs.get((0, 0), Fraction(0))
        rows.append({
            "ell": ell,
            "printed_match": P == printed,
            "pattern_match": P == pattern,
            "leading": str(lead_val),
            "P": repr(P),
        })
    return ConjectureReport(rows=tuple(rows))


def even_ell_nonexistence(ell: int) -> str:
    """Verdict for even ell: P_ell <= 0 with equality only at f in {0, -2c}.

    Verified by exact match against (-1)^(ell-1) f^2 (f+2c)^ell / 2^(ell-2);
    for even ell the sign is negative and the factor f^2 (f+2c)^ell is a
    perfect square times a nonnegative even power, so no non-constant real
    traveling wave with vanishing boundary conditions exists.
    """
    if ell % 2 != 0:
        raise ValueError("nonexistence verdict applies to even ell")
    P = reduce_vanishing(ell).P
    if P != _candidate(ell, -1, ell - 2):
        raise AssertionError(f"P_{ell} does not match -f^2 (f+2c)^{ell}/2^{ell - 2}")
    return (
        f"no non-constant real solution: P_{ell} = -f^2 (f+2c)^{ell}/"
        f"{2 ** (ell - 2)} <= 0 for all real f, c"
    )


def reduce_l3_full(c, d1, d2, d3, d4):
    """Quintic coefficients of the three-component reduction, degree 5 down to 0:

    (f')^2 = f^5/2 + 3c f^4 + (6c^2 - 2d1) f^3 + 4(c^3 - c d1 + d2) f^2
             + 8 d3 f + 8 d4.

    Exact when the inputs are rational; reduces to the vanishing case when
    every d is zero.
    """
    exact = all(isinstance(v, Rational) for v in (c, d1, d2, d3, d4))
    if exact:
        c, d1, d2, d3, d4 = (Fraction(v) for v in (c, d1, d2, d3, d4))
        half = Fraction(1, 2)
    else:
        c, d1, d2, d3, d4 = (float(v) for v in (c, d1, d2, d3, d4))
        half = 0.5
    return (
        half,
        3 * c,
        6 * c * c - 2 * d1,
        4 * (c * c * c - c * d1 + d2),
        8 * d3,
        8 * d4,
    )


def l3_fields(f, c, d1, d2):
    """Second and third fields of the three-component reduction:

    g = -c f - (3/4) f^2 + d1,
    h = (3/2) c f^2 + (1/2) f^3 + (c^2 - d1) f + d2.
    """
    exact = all(isinstance(v, Rational) for v in (f, c, d1, d2))
    if exact:
        f, c, d1, d2 = (Fraction(v) for v in (f, c, d1, d2))
        g = -c * f - Fraction(3, 4) * f * f + d1
        h = Fraction(3, 2) * c * f * f + Fraction(1, 2) * f ** 3 + (c * c - d1) * f + d2
        return g, h
    f, c, d1, d2 = (float(v) for v in (f, c, d1, d2))
    g = -c * f - 0.75 * f * f + d1
    h = 1.5 * c * f * f + 0.5 * f ** 3 + (c * c - d1) * f + d2
    return g, h


def _l3_Phi_and_deriv(z: float, c: float):
    """Implicit relation in z = 1 - w, w = sqrt(1 + f/(2c)), f in (-2c, 0).

    Phi = (1/c^(3/2)) [ 1/w + (1/2) ln((1 - w)/(1 + w)) ]; strictly increasing
    in z, with Phi -> -inf as z -> 0 (f -> 0) and +inf as z -> 1 (f -> -2c).
    """
    w = 1.0 - z
    cm = c ** -1.5
    phi = cm * (1.0 / w + 0.5 * (math.log(z) - math.log1p(w)))
    dphi = cm * (1.0 / (w * w) + 0.5 * (1.0 / z + 1.0 / (1.0 + w)))
    return phi, dphi


def _l3_solve_f(target: float, c: float, max_iter: int = 200, tol: float = 1e-13):
    """Solve Phi(z) = target by bisection-bracketed Newton; returns f."""
    z_lo, z_hi = 1e-300, 1.0 - 1e-9
    phi_lo, _ = _l3_Phi_and_deriv(z_lo, c)
    phi_hi, _ = _l3_Phi_and_deriv(z_hi, c)
    if not (phi_lo <= target <= phi_hi):
        raise OutOfBranchRange(
            f"out of branch range: target {target:.3e} outside "
            f"[{phi_lo:.3e}, {phi_hi:.3e}]"
        )
    z = 0.5 * (z_lo + z_hi)
    for _ in range(max_iter):
        phi, dphi = _l3_Phi_and_deriv(z, c)
        err = phi - target
        if abs(err) <= tol * max(1.0, abs(target)):
            break
        step = err / dphi
        z_new = z - step
        if not (z_lo < z_new < z_hi):
            # Newton left the bracket: bisect instead
            if err > 0.0:
                z_hi = z
            else:
                z_lo = z
            z_new = 0.5 * (z_lo + z_hi)
        else:
            if err > 0.0:
                z_hi = min(z_hi, z)
            else:
                z_lo = max(z_lo, z)
        z = z_new
    return -2.0 * c * z * (2.0 - z)  # in (-2c, 0); exact for z below epsilon


def l3_implicit_profile(c: float, xi_grid, branch: str = "+", xi0: float = 0.0):
    """Solve the implicit three-component solitary relation on a xi grid.

    Requires c > 0; the real branch keeps f in (-2c, 0) where
    (f')^2 = f^2 (f + 2c)^3 / 2 >= 0.  Branch '+' rises monotonically from
    -2c (xi -> -inf) to 0 (xi -> +inf); branch '-' is its mirror.  Returns
    (f, f_prime) arrays; f' is the signed square root of the quintic.
    """
    if c <= 0:
        raise ValueError("the real branch requires c > 0")
    if branch not in ("+", "-"):
        raise ValueError("branch must be '+' or '-'")
    xi = np.asarray(xi_grid, dtype=float)
    sgn = 1.0 if branch == "+" else -1.0
    f = np.array([_l3_solve_f(-sgn * (x - xi0), c) for x in xi.ravel()])
    f = f.reshape(xi.shape)
    fp = sgn * np.sqrt(np.maximum(f * f * (f + 2.0 * c) ** 3 / 2.0, 0.0))
    return f, fp


def l3_asymptotes(c: float, branch: str = "+"):
    """Limits of the implicit branch as xi -> (-inf, +inf)."""
    if branch == "+":
        return (-2.0 * c, 0.0)
    if branch == "-":
        return (0.0, -2.0 * c)
    raise ValueError("branch must be '+' or '-'")
