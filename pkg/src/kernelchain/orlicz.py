"""Orlicz functions and the two norms they induce on a discrete space.

Shipped families (all convex, vanishing only at 0, superlinear at infinity):

  power(p)          x^p                with rational p > 1
  power_log(p)      x^p * ln(1 + x)    with rational p >= 1
  exp_minus_linear  e^x - x - 1

Function values are double precision; atom weights stay exact rationals.
Solver tolerances (1e-12 for roots, 1e-9 for the Amemiya minimum) are
chosen so that downstream property tolerances of 1e-9 dominate them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import (
    BracketFailure,
    InvalidParameter,
    NonpositiveMeasure,
    ParseError,
    UnknownPoint,
)
from .measure_space import DiscreteMeasureSpace

POWER = "power"
POWER_LOG = "power_log"
EXP_MINUS_LINEAR = "exp_minus_linear"
CUSTOM = "custom"

_ROOT_TOL = 1e-12
_AMEMIYA_TOL = 1e-9
_MAX_BISECT = 500


@dataclass(frozen=True)
class OrliczFunction:
    """A validated convex Orlicz function.

    Attributes
    ----------
    family : str
        One of "power", "power_log", "exp_minus_linear", "custom".
    p : Fraction or None
        Exponent for the parametric families.
    delta2_bounded : bool
        Whether phi(2x)/phi(x) is bounded for all x > 0.  Structural for
        the shipped families; an attestation for custom functions.
    """

    family: str
    p: Fraction | None = None
    delta2_bounded: bool = True
    label: str = ""
    evaluate: Callable[[float], float] | None = field(
        default=None, compare=False, repr=False
    )

    def __call__(self, x: float) -> float:
        if x < 0:
            raise ValueError(f"Orlicz functions take nonnegative arguments, got {x}")
        if x == 0:
            return 0.0
        try:
            if self.family == POWER:
                return x ** float(self.p)
            if self.family == POWER_LOG:
                return (x ** float(self.p)) * math.log1p(x)
            if self.family == EXP_MINUS_LINEAR:
                return math.expm1(x) - x
            return float(self.evaluate(x))
        except OverflowError:
            return math.inf

    def spec_string(self) -> str:
        if self.family == POWER:
            return f"power:{self.p}"
        if self.family == POWER_LOG:
            return f"powerlog:{self.p}"
        if self.family == EXP_MINUS_LINEAR:
            return "expml"
        return self.label or "custom"


def _convexity_spot_check(phi: OrliczFunction) -> None:
    # midpoint inequality sampled on a log grid; a cheap guard, not a proof
    grid = [10.0 ** (-6 + 12 * i / 24) for i in range(25)]
    for a, b in zip(grid, grid[2:]):
        mid = 0.5 * (a + b)
        lhs = phi(mid)
        rhs = 0.5 * (phi(a) + phi(b))
        if math.isfinite(lhs) and math.isfinite(rhs) and lhs > rhs * (1 + 1e-9) + 1e-300:
            raise InvalidParameter(
                f"{phi.spec_string()}: convexity fails near x={mid:.6g}"
            )
    if phi(0.0) != 0.0:
        raise InvalidParameter(f"{phi.spec_string()}: phi(0) must be 0")
    for x in (1e-8, 1e-2, 1.0, 10.0):
        if not phi(x) > 0.0:
            raise InvalidParameter(
                f"{phi.spec_string()}: phi must be positive for x > 0"
            )


def _limit_spot_check(phi: OrliczFunction) -> None:
    # phi(x)/x must head to 0 at 0 and to infinity at infinity
    small = phi(1e-9) / 1e-9
    if not small < 1e-3:
        raise InvalidParameter(
            f"{phi.spec_string()}: phi(x)/x does not vanish at 0 (got {small:.3g})"
        )
    big = phi(1e9)
    big_ratio = math.inf if math.isinf(big) else big / 1e9
    if not big_ratio > 1e3:
        raise InvalidParameter(
            f"{phi.spec_string()}: phi(x)/x does not diverge (got {big_ratio:.3g})"
        )


def make_orlicz(family: str, p: Fraction | int | str | None = None) -> OrliczFunction:
    """Validate parameters and build an OrliczFunction.

    power requires p > 1 (p = 1 would break the phi(x)/x -> 0 limit);
    power_log requires p >= 1; exp_minus_linear takes no parameter.
    """
    if family == POWER:
        if p is None:
            raise InvalidParameter("power requires an exponent")
        exponent = Fraction(p)
        if exponent <= 1:
            raise InvalidParameter(f"power exponent must exceed 1, got {exponent}")
        phi = OrliczFunction(family=POWER, p=exponent, delta2_bounded=True)
    elif family == POWER_LOG:
        if p is None:
            raise InvalidParameter("power_log requires an exponent")
        exponent = Fraction(p)
        if exponent < 1:
            raise InvalidParameter(
                f"power_log exponent must be at least 1, got {exponent}"
            )
        phi = OrliczFunction(family=POWER_LOG, p=exponent, delta2_bounded=True)
    elif family == EXP_MINUS_LINEAR:
        if p is not None:
            raise InvalidParameter("exp_minus_linear takes no parameter")
        phi = OrliczFunction(family=EXP_MINUS_LINEAR, delta2_bounded=False)
    else:
        raise InvalidParameter(f"unknown Orlicz family {family!r}")
    _convexity_spot_check(phi)
    return phi


def custom_orlicz(
    evaluate: Callable[[float], float],
    *,
    label: str = "custom",
    delta2_bounded: bool = False,
) -> OrliczFunction:
    """Register a user-supplied Orlicz function.

    The callable is spot-checked numerically (convexity on a log grid,
    phi(0)=0, positivity, and both growth limits).  delta2_bounded is an
    attestation the caller makes about the whole half-line; the numeric
    grid alone cannot decide it.
    """
    phi = OrliczFunction(
        family=CUSTOM,
        delta2_bounded=delta2_bounded,
        label=label,
        evaluate=evaluate,
    )
    _convexity_spot_check(phi)
    _limit_spot_check(phi)
    return phi


def parse_phi_spec(text: str) -> OrliczFunction:
    """Parse the CLI grammar: power:<p>, powerlog:<p>, expml."""
    if text == "expml":
        return make_orlicz(EXP_MINUS_LINEAR)
    for prefix, family in (("power:", POWER), ("powerlog:", POWER_LOG)):
        if text.startswith(prefix):
            raw = text[len(prefix):]
            try:
                exponent = Fraction(raw)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad exponent {raw!r} in {text!r}") from exc
            return make_orlicz(family, exponent)
    raise ParseError(
        f"unknown phi specifier {text!r} (expected power:<p>, powerlog:<p>, expml)"
    )


# ---- functions on a space --------------------------------------------------

@dataclass(frozen=True)
class SpaceFunction:
    """Real-valued function on the atoms of a space (double precision)."""

    space: DiscreteMeasureSpace
    values: Mapping[str, float]

    def __call__(self, point: str) -> float:
        return self.values[point]

    def vector(self) -> tuple[float, ...]:
        return tuple(self.values[p] for p in self.space.points)

    def scaled(self, c: float) -> "SpaceFunction":
        return SpaceFunction(self.space, {p: c * v for p, v in self.values.items()})

    def plus(self, other: "SpaceFunction") -> "SpaceFunction":
        return SpaceFunction(
            self.space, {p: v + other.values[p] for p, v in self.values.items()}
        )

    def is_zero_ae(self) -> bool:
        """True when the function vanishes on every positive-weight atom."""
        return all(
            self.values[p] == 0.0 for p in self.space.positive_points
        )


def space_function(
    space: DiscreteMeasureSpace, values: Mapping[str, float] | None = None
) -> SpaceFunction:
    """Build a SpaceFunction, zero-filling atoms absent from `values`."""
    given = dict(values or {})
    for p in given:
        if p not in space:
            raise UnknownPoint(f"{p!r} is not an atom of the space")
    complete = {p: float(given.get(p, 0.0)) for p in space.points}
    return SpaceFunction(space=space, values=complete)


def indicator(space: DiscreteMeasureSpace, subset: Iterable[str]) -> SpaceFunction:
    return space_function(space, {p: 1.0 for p in subset})


# ---- modular and norms -------------------------------------------------------

def modular(phi: OrliczFunction, f: SpaceFunction) -> float:
    """Weighted sum of phi(|f|) over the atoms."""
    return math.fsum(
        phi(abs(f.values[p])) * float(w)
        for p, w in zip(f.space.points, f.space.weights)
        if w > 0
    )


def phi_inverse(phi: OrliczFunction, y: float) -> float:
    """Unique x >= 0 with phi(x) = y, to relative tolerance 1e-12.

    Bisection after geometric bracket expansion; every supported family is
    a continuous strictly increasing bijection of [0, inf).
    """
    if y < 0:
        raise ValueError(f"phi_inverse needs y >= 0, got {y}")
    if y == 0:
        return 0.0
    hi = 1.0
    for _ in range(1100):
        if math.isinf(hi) or phi(hi) >= y:
            break
        hi *= 2.0
    if math.isinf(hi):
        hi = 1.7976931348623157e308
    lo = 0.0
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if phi(mid) < y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _ROOT_TOL * hi:
            break
    return 0.5 * (lo + hi)


def luxemburg_norm(phi: OrliczFunction, f: SpaceFunction) -> float:
    """inf { k > 0 : modular(phi, f / k) <= 1 }, by bisection.

    The map k -> modular(f / k) is continuous and strictly decreasing
    wherever positive on a finite space, so the infimum is a plain root.
    Returns 0 when f vanishes almost everywhere (the modular is then
    identically 0 and every k is admissible).
    """
    if f.is_zero_ae():
        return 0.0

    def mod_at(k: float) -> float:
        return modular(phi, f.scaled(1.0 / k))

    hi = max(1.0, max(abs(v) for v in f.vector()))
    for _ in range(_MAX_BISECT):
        if mod_at(hi) <= 1.0:
            break
        hi *= 2.0
    lo = hi / 2.0
    for _ in range(_MAX_BISECT):
        if mod_at(lo) > 1.0:
            break
        hi = lo
        lo /= 2.0
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if mod_at(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= _ROOT_TOL:
            break
    return 0.5 * (lo + hi)


_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def amemiya_norm(phi: OrliczFunction, f: SpaceFunction) -> float:
    """inf over k > 0 of (1 + modular(phi, k f)) / k.

    The objective is unimodal in log k (it is the chord slope from the
    fixed point (0, -1) to the convex curve k -> modular(k f)).  The
    minimum is located by geometric probing over [1e-9, 1e9] followed by
    golden-section search on log k inside the best probe cell; raises
    BracketFailure when the minimizer ends up pinned to a bracket wall,
    meaning no interior minimum exists in [1e-9, 1e9].
    """
    if f.is_zero_ae():
        return 0.0

    def objective(t: float) -> float:
        k = math.exp(t)
        return (1.0 + modular(phi, f.scaled(k))) / k

    probes = [math.log(10.0) * e for e in range(-9, 10, 3)]  # 1e-9 .. 1e9
    values = [objective(t) for t in probes]
    best = min(range(len(probes)), key=lambda i: values[i])
    lo = probes[max(best - 1, 0)]
    hi = probes[min(best + 1, len(probes) - 1)]

    # golden-section on log k; track the best value and its location
    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1, f2 = objective(x1), objective(x2)
    best_val, best_t = min(
        (values[best], probes[best]), (f1, x1), (f2, x2)
    )
    for _ in range(200):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = objective(x1)
            if f1 < best_val:
                best_val, best_t = f1, x1
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = objective(x2)
            if f2 < best_val:
                best_val, best_t = f2, x2
        if hi - lo <= 1e-13:
            break
    if best_t <= probes[0] + 1e-6 or best_t >= probes[-1] - 1e-6:
        raise BracketFailure(
            "Amemiya minimizer pinned to the [1e-9, 1e9] bracket wall"
        )
    return best_val


@dataclass(frozen=True)
class Delta2Result:
    """Outcome of the doubling-condition scan."""

    holds: bool
    constant: float | None = None
    witness: float | None = None


def delta2_check(phi: OrliczFunction) -> Delta2Result:
    """Scan phi(2x)/phi(x) on a 512-point log grid over [1e-8, 1e8].

    Reports holds (with the observed sup as the constant) only when the
    family is structurally bounded AND the observed ratio stays below 1e9;
    reports fails with the witness maximizing the ratio otherwise.  The
    structural flag matters because a finite grid can neither prove nor
    refute a statement over all x > 0.
    """
    points = 512
    best_ratio = 0.0
    best_x = None
    for i in range(points):
        x = 10.0 ** (-8.0 + 16.0 * i / (points - 1))
        denom = phi(x)
        numer = phi(2.0 * x)
        if denom <= 0.0 or not math.isfinite(denom):
            continue
        ratio = numer / denom if math.isfinite(numer) else math.inf
        if ratio > best_ratio:
            best_ratio = ratio
            best_x = x
    if phi.delta2_bounded and best_ratio <= 1e9:
        return Delta2Result(holds=True, constant=best_ratio)
    return Delta2Result(holds=False, witness=best_x)


def indicator_norm(phi: OrliczFunction, measure_of_set: Fraction | int) -> float:
    """Closed-form Luxemburg norm of an indicator: 1 / phi_inverse(1 / mu(A))."""
    mu = Fraction(measure_of_set)
    if mu <= 0:
        raise NonpositiveMeasure(f"set measure must be positive, got {mu}")
    return 1.0 / phi_inverse(phi, 1.0 / float(mu))
