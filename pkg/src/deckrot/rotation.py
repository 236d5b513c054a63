"""Local rotation numbers from b_x(g^n)/n limits, with boundedness diagnostics.

The sign convention follows the path-concatenation definition: b_x(g^n) is
minus the potential increment along the orbit, so for a rigid rotation by
rho the representative r equals -rho.  Estimates also expose the negated
value (classical_rot) for comparison with the classical circle rotation
number.
"""

from __future__ import annotations

import enum
import math
import statistics
from dataclasses import dataclass
from fractions import Fraction

from .cocycle import k_power_eval, k_power_profile
from .errors import NonInvertibleError
from .homeo import Homeo
from .util import wrap


class BoundedVerdict(enum.Enum):
    BOUNDED = "Bounded"
    UNBOUNDED_SUSPECTED = "UnboundedSuspected"
    INCONCLUSIVE = "Inconclusive"


def b_value(x, g: Homeo, n: int):
    """b_x(g^n) = -(F(lift^n x~) - F(x~)) for the canonical lift of x."""
    return -k_power_eval(g, x, n)


def _b_profile(x, g, exponents) -> dict:
    prof = k_power_profile(g, x, exponents)
    return {n: -v for n, v in prof.items()}


def _exponent_ladder(budget: int) -> list:
    """Dense small exponents plus a doubling ladder up to the budget."""
    budget = max(1, int(budget))
    ns = set(range(1, min(budget, 64) + 1))
    m = 64
    while 2 * m <= budget:
        m *= 2
        ns.add(m)
    ns.add(budget)
    return sorted(ns)


def _div(num, den: int):
    """num/den staying exact for int and Fraction numerators."""
    if isinstance(num, float):
        return num / den
    return Fraction(num) / den


def estimate_linear_rate(values: dict):
    """Slope estimate for values(n) ~ r*n + O(1), with the deviation band.

    Uses doubling differences (values(2m) - values(m))/m, which cancel the
    bounded term exactly for exactly-linear data; averages the largest few.
    """
    ns = sorted(values)
    pairs = [(m, 2 * m) for m in ns if 2 * m in values]
    if pairs:
        tail = pairs[-3:]
        diffs = [_div(values[b] - values[a], a) for a, b in tail]
        r = _div(sum(diffs), len(diffs))
    else:
        n = ns[-1]
        r = _div(values[n], n)
    band = max(abs(values[n] - r * n) for n in ns)
    return r, band


@dataclass(frozen=True)
class BoundednessReport:
    """Finite evidence table for boundedness of G_x on the cyclic group."""

    sup: object
    slope_per_doubling: float
    verdict: BoundedVerdict
    checkpoints: tuple  # ((M, sup over |m|,|n| <= M), ...)
    table_range: int


def boundedness_diagnostic(x, g: Homeo, table_range: int = 64) -> BoundednessReport:
    """Sup of |G_x(g^m, g^n)| over 1 <= |m|,|n| <= table_range - 1.

    Verdict is Bounded when the running sup is flat across the last
    doubling, UnboundedSuspected when the log-log growth slope exceeds
    0.1 per doubling, Inconclusive otherwise.  Non-invertible flavors are
    tabled over positive exponents only.
    """
    N = max(2, int(table_range))
    top = N - 1
    signs = (1, -1)
    try:
        g.inverse()
    except NonInvertibleError:
        signs = (1,)
    exps = [s * m for m in range(1, top + 1) for s in signs]
    needed = set(exps) | {m + n for m in exps for n in exps} | {0}
    b = _b_profile(x, g, needed)

    def g_val(m, n):
        return b[m] + b[n] - b[m + n]

    ladder = []
    m = 1
    while m < top:
        ladder.append(m)
        m *= 2
    ladder.append(top)

    checkpoints = []
    for M in ladder:
        sup = max(
            abs(g_val(m, n))
            for m in exps
            if abs(m) <= M
            for n in exps
            if abs(n) <= M
        )
        checkpoints.append((M, sup))

    sup_total = checkpoints[-1][1]
    xs = [math.log2(M) for M, _ in checkpoints]
    ys = [math.log2(1 + float(s)) for _, s in checkpoints]
    if len(set(xs)) >= 2:
        slope = statistics.linear_regression(xs, ys).slope
    else:
        slope = 0.0

    half = [s for M, s in checkpoints if 2 * M >= top]
    stab_tol = max(1e-9, 1e-6 * float(sup_total))
    stabilized = all(abs(float(s) - float(sup_total)) <= stab_tol for s in half)
    if stabilized:
        verdict = BoundedVerdict.BOUNDED
    elif slope >= 0.1:
        verdict = BoundedVerdict.UNBOUNDED_SUSPECTED
    else:
        verdict = BoundedVerdict.INCONCLUSIVE
    return BoundednessReport(sup_total, slope, verdict, tuple(checkpoints), N)


@dataclass(frozen=True)
class RotationEstimate:
    r: object  # representative of the local rotation number
    rot: object  # r mod 1 (sign convention of the b definition)
    classical_rot: object  # (-r) mod 1, for comparison with circle rotation numbers
    n_used: int
    residual_band: object  # sup_n |b(g^n) - r n| over the computed range
    bounded_verdict: BoundedVerdict
    diagnostic: BoundednessReport


def local_rotation_number(
    x, g: Homeo, budget: int | None = None, diagnostic_range: int = 64
) -> RotationEstimate:
    """Estimate r_x(g) = lim b_x(g^n)/n and its class mod 1.

    Exact for families with closed-form powers (the estimate and band are
    Fraction arithmetic); orbit iteration in floats otherwise.  The
    boundedness verdict comes from the finite G-table diagnostic; it is a
    finite surrogate, not a proof.
    """
    if budget is None:
        budget = 1_000_000 if g.has_closed_power else 2**14
    ns = _exponent_ladder(budget)
    values = _b_profile(x, g, ns)
    r, band = estimate_linear_rate(values)
    diag = boundedness_diagnostic(x, g, diagnostic_range)
    return RotationEstimate(
        r=r,
        rot=wrap(r),
        classical_rot=wrap(-r),
        n_used=max(ns),
        residual_band=band,
        bounded_verdict=diag.verdict,
        diagnostic=diag,
    )
