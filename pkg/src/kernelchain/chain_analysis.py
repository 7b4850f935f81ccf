"""Theorem engine: stabilization indices from measure-level criteria.

The kernel chain of the composition operator stabilizes exactly when
consecutive pushforward measures become equivalent, and the range chain
stabilizes exactly when the map becomes injective on its iterated image.
This module computes both verdicts from those characterizations and
reconciles them against the exact matrix oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CorollaryViolation,
    InconsistencyFound,
    NonsingularityViolated,
    PositiveWeightRequired,
)
from .measure_space import (
    Transformation,
    image,
    is_measure_preserving,
    is_nonsingular,
    measures_equivalent,
    pushforward,
    rn_derivative,
)
from .operator_core import chain_dims, matrix_of


@dataclass(frozen=True)
class Finite:
    k: int


@dataclass(frozen=True)
class Undetermined:
    searched_to: int


Verdict = Finite | Undetermined


@dataclass(frozen=True)
class KernelSupport:
    """Zero set of the k-step density (the kernel's support complement)."""

    k: int
    zero_set: frozenset[str]


def kernel_support(tau: Transformation, k: int) -> KernelSupport:
    density = rn_derivative(tau, k)
    zero = frozenset(p for p in tau.space.points if density.value[p] == 0)
    return KernelSupport(k=k, zero_set=zero)


def ascent_via_measures(tau: Transformation, kmax: int | None = None) -> Verdict:
    """First k in [1, kmax] whose pushforward equals the next one in support.

    Undetermined(kmax) when no such k exists within the bound; exhausting
    the bound is evidence of an infinite kernel chain, never a proof.
    On a finite space the default bound kmax = n is always conclusive.
    """
    if kmax is None:
        kmax = max(tau.space.size, 1)
    for k in range(1, kmax + 1):
        if measures_equivalent(pushforward(tau, k), pushforward(tau, k + 1)):
            return Finite(k)
    return Undetermined(kmax)


@dataclass(frozen=True)
class InjectivityDescent:
    """Smallest N with the map injective on its N-step image, plus verdict."""

    n_inj: int | Undetermined
    verdict: Verdict


def descent_via_injectivity(
    tau: Transformation, kmax: int | None = None
) -> InjectivityDescent:
    """Search N in [0, kmax] with tau injective on image(tau, N).

    Requires every atom to carry positive weight.  The reported verdict is
    max(N_inj, 1): injectivity at N = 0 still means the range chain is
    constant from the first power on.
    """
    if not tau.space.all_weights_positive():
        raise PositiveWeightRequired(
            "descent-by-injectivity needs every singleton to have positive measure"
        )
    if kmax is None:
        kmax = max(tau.space.size, 1)
    for n in range(0, kmax + 1):
        current = image(tau, n)
        targets = {tau(p) for p in current}
        forward_invariant = targets <= current
        injective = len(targets) == len(current)
        if injective and forward_invariant:
            return InjectivityDescent(n_inj=n, verdict=Finite(max(n, 1)))
    return InjectivityDescent(
        n_inj=Undetermined(kmax), verdict=Undetermined(kmax)
    )


@dataclass(frozen=True)
class CorollaryReport:
    """Which sufficient conditions for immediate stabilization applied."""

    measure_preserving: bool
    surjective_expanding: bool
    ascent: Verdict
    note: str


def corollary_checks(tau: Transformation) -> CorollaryReport:
    """Test the two sufficient conditions for ascent 1 and confirm them.

    Branch 1: the map preserves the measure.  Branch 2: the map is onto
    the atoms and pulls every atom back to at least its own weight.  When
    either branch applies, the measure-route ascent must be Finite(1);
    anything else raises CorollaryViolation (an implementation bug).
    """
    space = tau.space
    preserving = is_measure_preserving(tau)
    surjective = image(tau, 1) == frozenset(space.points)
    expanding = True
    for p in space.points:
        pulled = sum(
            (space.weight(y) for y in space.points if tau(y) == p),
            Fraction(0),
        )
        if pulled < space.weight(p):
            expanding = False
            break
    branch2 = surjective and expanding
    verdict = ascent_via_measures(tau)
    if preserving or branch2:
        if verdict != Finite(1):
            raise CorollaryViolation(
                f"hypotheses held but measure-route ascent was {verdict}"
            )
        applied = [
            name
            for name, flag in (
                ("measure-preserving", preserving),
                ("surjective-expanding", branch2),
            )
            if flag
        ]
        note = "applies: " + ", ".join(applied)
    else:
        note = "no corollary applicable"
    return CorollaryReport(
        measure_preserving=preserving,
        surjective_expanding=branch2,
        ascent=verdict,
        note=note,
    )


@dataclass(frozen=True)
class ChainRecord:
    k: int
    zero_set: frozenset[str]
    image: frozenset[str]
    support: frozenset[str]
    nullity: int
    rank: int


@dataclass(frozen=True)
class ChainReport:
    """Everything the two routes computed, plus the reconciliation verdict."""

    records: tuple[ChainRecord, ...]
    ascent_theorem: Verdict
    descent_theorem: Verdict | None
    n_inj: int | Undetermined | None
    ascent_oracle: int
    descent_oracle: int
    all_weights_positive: bool
    consistent: bool
    failures: tuple[str, ...]

    def raise_if_inconsistent(self) -> None:
        if not self.consistent:
            raise InconsistencyFound("; ".join(self.failures))


def consistency_report(
    tau: Transformation, kmax: int | None = None, strict: bool = False
) -> ChainReport:
    """Run both routes and verify every identity that ties them together.

    Checks (on any nonsingular map): matrix ascent equals matrix descent;
    each zero set is the complement of the matching pushforward support;
    nullity(M^k) matches the dimension count of functions supported on
    the zero set.  When every atom has positive weight, additionally:
    theorem-route ascent and descent equal their matrix oracles.  With
    null atoms those two comparisons are skipped, because the matrix acts
    on all coordinates while the operator only sees almost-everywhere
    classes.

    With strict=True an InconsistencyFound is raised instead of returning
    a report whose `consistent` flag is False.
    """
    if not is_nonsingular(tau):
        raise NonsingularityViolated(
            "consistency report requires a nonsingular map"
        )
    space = tau.space
    n = space.size
    if kmax is None:
        kmax = max(n, 1)
    search_to = max(kmax, n, 1)

    matrix = matrix_of(tau)
    dims = chain_dims(matrix, search_to + 1)
    ascent_mat = next(
        k
        for k in range(1, search_to + 1)
        if dims.nullities[k] == dims.nullities[k + 1]
    )
    descent_mat = next(
        k
        for k in range(1, search_to + 1)
        if dims.ranks[k] == dims.ranks[k + 1]
    )

    ascent_thm = ascent_via_measures(tau, search_to)
    all_positive = tau.space.all_weights_positive()
    if all_positive:
        inj = descent_via_injectivity(tau, search_to)
        descent_thm: Verdict | None = inj.verdict
        n_inj: int | Undetermined | None = inj.n_inj
    else:
        descent_thm = None
        n_inj = None

    failures: list[str] = []
    records: list[ChainRecord] = []
    null_count = len(space.null_points)
    for k in range(0, kmax + 1):
        zero = kernel_support(tau, k).zero_set
        img = image(tau, k)
        supp = pushforward(tau, k).support()
        nullity = dims.nullities[k]
        rank = dims.ranks[k]
        records.append(
            ChainRecord(
                k=k, zero_set=zero, image=img, support=supp,
                nullity=nullity, rank=rank,
            )
        )
        if frozenset(space.points) - zero != supp:
            failures.append(
                f"k={k}: zero-set complement {sorted(set(space.points) - zero)} "
                f"!= pushforward support {sorted(supp)}"
            )
        # matrix kernel size vs dimension of functions supported on the
        # zero set: null atoms only count while they still sit in the image
        expected_nullity = (
            len(zero & space.positive_points)
            + null_count
            - len(img - supp)
        )
        if k >= 1 and nullity != expected_nullity:
            failures.append(
                f"k={k}: nullity {nullity} != supported-function count "
                f"{expected_nullity}"
            )

    if ascent_mat != descent_mat:
        failures.append(
            f"matrix ascent {ascent_mat} != matrix descent {descent_mat}"
        )
    if all_positive:
        if ascent_thm != Finite(ascent_mat):
            failures.append(
                f"measure-route ascent {ascent_thm} != matrix ascent {ascent_mat}"
            )
        if descent_thm != Finite(descent_mat):
            failures.append(
                f"injectivity-route descent {descent_thm} != matrix descent "
                f"{descent_mat}"
            )

    report = ChainReport(
        records=tuple(records),
        ascent_theorem=ascent_thm,
        descent_theorem=descent_thm,
        n_inj=n_inj,
        ascent_oracle=ascent_mat,
        descent_oracle=descent_mat,
        all_weights_positive=all_positive,
        consistent=not failures,
        failures=tuple(failures),
    )
    if strict:
        report.raise_if_inconsistent()
    return report
