"""Seeded random-graph campaigns cross-checking every verdict route.

Each generated map is pushed through the measure-route theorem engine,
the exact matrix oracle, the breadth-first tail-height oracle, the
kernel/range splitting, and the exact density chain rule.  A graph
counts as consistent only when every route agrees.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .chain_analysis import Finite, consistency_report, corollary_checks
from .errors import CorollaryViolation, DecompositionFailure
from .graphs import random_permutation_map, random_transformation, tail_height
from .measure_space import Transformation, chain_rule_holds, is_measure_preserving
from .operator_core import matrix_of, riesz_decomposition


@dataclass(frozen=True)
class GraphCheck:
    index: int
    n: int
    ascent_theorem: int | None
    ascent_oracle: int
    descent_theorem: int | None
    descent_oracle: int
    tail: int
    riesz_ok: bool
    chain_rule_ok: bool
    measure_preserving: bool
    failures: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class CampaignResult:
    mode: str
    seed: int
    max_n: int
    count: int
    results: tuple[GraphCheck, ...]

    @property
    def consistent_count(self) -> int:
        return sum(1 for r in self.results if r.consistent)

    @property
    def all_consistent(self) -> bool:
        return self.consistent_count == self.count


def check_transformation(tau: Transformation, index: int = 0) -> GraphCheck:
    """Run every cross-check on one map and collect disagreements."""
    failures: list[str] = []

    report = consistency_report(tau)
    failures.extend(report.failures)

    tail = tail_height(tau)
    expected = max(1, tail)
    if report.ascent_oracle != expected:
        failures.append(
            f"matrix ascent {report.ascent_oracle} != tail oracle {expected}"
        )
    if report.descent_oracle != expected:
        failures.append(
            f"matrix descent {report.descent_oracle} != tail oracle {expected}"
        )

    try:
        riesz_decomposition(matrix_of(tau))
        riesz_ok = True
    except DecompositionFailure as exc:
        riesz_ok = False
        failures.append(f"splitting failed: {exc}")

    chain_rule_ok = False
    if isinstance(report.ascent_theorem, Finite):
        chain_rule_ok = chain_rule_holds(tau, report.ascent_theorem.k)
        if not chain_rule_ok:
            failures.append(
                f"density chain rule fails at k={report.ascent_theorem.k}"
            )
    else:
        failures.append("measure-route ascent undetermined on a finite space")

    preserving = is_measure_preserving(tau)
    if preserving:
        try:
            corollary_checks(tau)
        except CorollaryViolation as exc:
            failures.append(str(exc))

    ascent_thm = (
        report.ascent_theorem.k
        if isinstance(report.ascent_theorem, Finite)
        else None
    )
    descent_thm = (
        report.descent_theorem.k
        if isinstance(report.descent_theorem, Finite)
        else None
    )
    return GraphCheck(
        index=index,
        n=tau.space.size,
        ascent_theorem=ascent_thm,
        ascent_oracle=report.ascent_oracle,
        descent_theorem=descent_thm,
        descent_oracle=report.descent_oracle,
        tail=tail,
        riesz_ok=riesz_ok,
        chain_rule_ok=chain_rule_ok,
        measure_preserving=preserving,
        failures=tuple(failures),
    )


def run_campaign(
    count: int, max_n: int, seed: int, mode: str = "functional"
) -> CampaignResult:
    """Check `count` random maps with sizes drawn uniformly from [1, max_n].

    mode "functional" draws each atom's image independently and uniformly;
    mode "permutation" draws a uniform permutation (measure preserving).
    The generator is a single seeded Mersenne Twister, so identical
    arguments reproduce identical campaigns.
    """
    if mode not in ("functional", "permutation"):
        raise ValueError(f"unknown campaign mode {mode!r}")
    if count < 1 or max_n < 1:
        raise ValueError("count and max_n must be >= 1")
    rng = random.Random(seed)
    results = []
    for index in range(count):
        n = rng.randint(1, max_n)
        if mode == "permutation":
            tau = random_permutation_map(n, rng)
        else:
            tau = random_transformation(n, rng)
        results.append(check_transformation(tau, index=index))
    return CampaignResult(
        mode=mode, seed=seed, max_n=max_n, count=count, results=tuple(results)
    )
