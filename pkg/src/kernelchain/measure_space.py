"""Discrete measure spaces and measurable self-maps.

A space is a finite ordered list of atoms with exact nonnegative rational
weights.  All measure-level computations (pushforwards, densities,
equivalence) stay in exact rational arithmetic: support comparisons are
discontinuous, so floating point is never allowed here.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .errors import (
    DuplicatePoint,
    ImageOutOfSpace,
    LengthMismatch,
    MissingPoint,
    NegativeWeight,
    NonsingularityViolated,
    SpaceMismatch,
)

RationalLike = int | str | Fraction


def _as_fraction(value: RationalLike, context: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(
            f"{context}: got {value!r}; weights must be exact rationals "
            "(int, Fraction, or a string like '3/2')"
        )
    return Fraction(value)


@dataclass(frozen=True)
class DiscreteMeasureSpace:
    """Finite atomic measure space: ordered atoms with exact weights.

    The atom order is fixed at construction and defines the basis order of
    every matrix built on the space.
    """

    points: tuple[str, ...]
    weights: tuple[Fraction, ...]

    @cached_property
    def index(self) -> Mapping[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def weight(self, point: str) -> Fraction:
        return self.weights[self.index[point]]

    @cached_property
    def positive_points(self) -> frozenset[str]:
        return frozenset(p for p, w in zip(self.points, self.weights) if w > 0)

    @cached_property
    def null_points(self) -> frozenset[str]:
        return frozenset(p for p, w in zip(self.points, self.weights) if w == 0)

    def all_weights_positive(self) -> bool:
        return not self.null_points

    def __contains__(self, point: str) -> bool:
        return point in self.index


@dataclass(frozen=True, eq=True)
class Transformation:
    """Total self-map of a space's atoms."""

    space: DiscreteMeasureSpace
    assignment: Mapping[str, str]

    def __call__(self, point: str) -> str:
        return self.assignment[point]


@dataclass(frozen=True, eq=True)
class AtomicMeasure:
    """Exact nonnegative mass per atom (a pushforward of the base measure)."""

    space: DiscreteMeasureSpace
    mass: Mapping[str, Fraction]

    def support(self) -> frozenset[str]:
        return frozenset(p for p, m in self.mass.items() if m > 0)

    def total(self) -> Fraction:
        return sum(self.mass.values(), Fraction(0))


@dataclass(frozen=True, eq=True)
class WeightFunction:
    """Exact nonnegative density per atom (mass ratio against the base)."""

    space: DiscreteMeasureSpace
    value: Mapping[str, Fraction]

    def support(self) -> frozenset[str]:
        return frozenset(p for p, v in self.value.items() if v > 0)


# ---- construction --------------------------------------------------------

def new_space(
    points: Sequence[str], weights: Sequence[RationalLike]
) -> DiscreteMeasureSpace:
    """Build a space from atom identifiers and exact weights.

    Raises LengthMismatch, DuplicatePoint, or NegativeWeight on bad input.
    The given atom order is preserved.
    """
    pts = tuple(points)
    if len(pts) != len(weights):
        raise LengthMismatch(
            f"{len(pts)} points but {len(weights)} weights"
        )
    for p in pts:
        if not isinstance(p, str):
            raise TypeError(f"atom identifiers must be strings, got {p!r}")
    seen: set[str] = set()
    for p in pts:
        if p in seen:
            raise DuplicatePoint(f"atom {p!r} appears more than once")
        seen.add(p)
    wts = []
    for i, w in enumerate(weights):
        frac = _as_fraction(w, f"weight #{i}")
        if frac < 0:
            raise NegativeWeight(f"weight #{i} for atom {pts[i]!r} is {frac}")
        wts.append(frac)
    return DiscreteMeasureSpace(points=pts, weights=tuple(wts))


def new_map(
    space: DiscreteMeasureSpace, assignment: Mapping[str, str]
) -> Transformation:
    """Build a total self-map; every atom needs an image inside the space."""
    for source in assignment:
        if source not in space:
            raise MissingPoint(f"assignment source {source!r} is not an atom")
    missing = [p for p in space.points if p not in assignment]
    if missing:
        raise MissingPoint(f"no image assigned for atom(s) {missing}")
    for source, target in assignment.items():
        if target not in space:
            raise ImageOutOfSpace(
                f"atom {source!r} maps to {target!r}, which is not in the space"
            )
    # freeze a copy in atom order so downstream iteration is deterministic
    frozen = {p: assignment[p] for p in space.points}
    return Transformation(space=space, assignment=frozen)


def identity_map(space: DiscreteMeasureSpace) -> Transformation:
    return Transformation(space=space, assignment={p: p for p in space.points})


# ---- predicates -----------------------------------------------------------

def is_nonsingular(tau: Transformation) -> bool:
    """True iff preimages of null atoms carry zero total weight."""
    space = tau.space
    for point in space.null_points:
        pulled = sum(
            (space.weight(y) for y in space.points if tau(y) == point),
            Fraction(0),
        )
        if pulled > 0:
            return False
    return True


def is_measure_preserving(tau: Transformation) -> bool:
    """True iff every atom's preimage weight equals the atom's own weight."""
    space = tau.space
    for point in space.points:
        pulled = sum(
            (space.weight(y) for y in space.points if tau(y) == point),
            Fraction(0),
        )
        if pulled != space.weight(point):
            return False
    return True


# ---- iteration and transport ----------------------------------------------

def iterate(tau: Transformation, k: int) -> Transformation:
    """k-fold composition of the map with itself; k = 0 is the identity."""
    if k < 0:
        raise ValueError(f"iteration count must be >= 0, got {k}")
    current = {p: p for p in tau.space.points}
    for _ in range(k):
        current = {p: tau.assignment[v] for p, v in current.items()}
    return Transformation(space=tau.space, assignment=current)


def pushforward(tau: Transformation, k: int) -> AtomicMeasure:
    """Transport the base measure through k steps of the map.

    mass(x) = sum of base weights over the k-step preimage of x; the total
    mass is conserved.
    """
    space = tau.space
    step_k = iterate(tau, k)
    mass = {p: Fraction(0) for p in space.points}
    for y, w in zip(space.points, space.weights):
        mass[step_k(y)] += w
    return AtomicMeasure(space=space, mass=mass)


def rn_derivative(tau: Transformation, k: int) -> WeightFunction:
    """Density of the k-step pushforward against the base measure.

    On null atoms the density is set to 0 by convention; that choice is
    valid only when the pushforward vanishes there, which is exactly
    nonsingularity of the k-th iterate.
    """
    space = tau.space
    moved = pushforward(tau, k)
    value: dict[str, Fraction] = {}
    for p in space.points:
        w = space.weight(p)
        m = moved.mass[p]
        if w == 0:
            if m > 0:
                raise NonsingularityViolated(
                    f"atom {p!r} has weight 0 but pushforward mass {m} "
                    f"at step {k}"
                )
            value[p] = Fraction(0)
        else:
            value[p] = m / w
    return WeightFunction(space=space, value=value)


def image(tau: Transformation, k: int) -> frozenset[str]:
    """Set of atoms reachable in exactly k steps from anywhere."""
    step_k = iterate(tau, k)
    return frozenset(step_k(p) for p in tau.space.points)


def measures_equivalent(m1: AtomicMeasure, m2: AtomicMeasure) -> bool:
    """Mutual absolute continuity; on atomic spaces this is support equality."""
    if m1.space != m2.space:
        raise SpaceMismatch("measures live on different spaces")
    return m1.support() == m2.support()


def chain_rule_holds(tau: Transformation, k: int) -> bool:
    """Exact density chain rule at step k, given equivalent neighbours.

    Requires the k-step and (k+1)-step pushforwards to be equivalent; then
    checks, on every atom where the (k+1)-density is positive, that
    density_k = (mass_k / mass_{k+1}) * density_{k+1} holds exactly.
    """
    mu_k = pushforward(tau, k)
    mu_next = pushforward(tau, k + 1)
    if not measures_equivalent(mu_k, mu_next):
        raise ValueError(
            f"pushforwards at steps {k} and {k + 1} are not equivalent"
        )
    f_k = rn_derivative(tau, k)
    f_next = rn_derivative(tau, k + 1)
    for p in tau.space.points:
        if f_next.value[p] > 0:
            ratio = mu_k.mass[p] / mu_next.mass[p]
            if f_k.value[p] != ratio * f_next.value[p]:
                return False
    return True
