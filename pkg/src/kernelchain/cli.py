"""kcl: analyze kernel/range chains of composition operators.

Commands:
    analyze   theorem engine + matrix oracle + consistency on a space file
    oracle    chain dimensions and the kernel/range splitting only
    norm      modular / Luxemburg / Amemiya values for an inline function
    witness   bounded witness search for a symbolic rule on {1, 2, ...}
    campaign  seeded random-graph cross-check run

Space files are JSON objects with three fields: "points" (list of atom
names), "weights" (list of exact rationals as strings, e.g. "1", "3/2"),
and "map" (object, atom -> atom).  Weights are kept as strings so values
like 1/3 survive exactly.

Exit codes: 0 success (all checks pass), 1 a consistency or property
violation was found, 2 malformed input.  Reports are deterministic given
identical inputs and seed; the KCL_SEED environment variable overrides
--seed for campaign runs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .campaign import run_campaign
from .chain_analysis import (
    Finite,
    Undetermined,
    consistency_report,
)
from .errors import KernelChainError, ParseError
from .measure_space import (
    DiscreteMeasureSpace,
    Transformation,
    new_map,
    new_space,
)
from .operator_core import chain_dims, matrix_of, riesz_decomposition
from .orlicz import amemiya_norm, luxemburg_norm, modular, parse_phi_spec, space_function
from .symbolic_space import (
    NotFound,
    is_injective,
    is_surjective,
    parse_rule,
    truncated_matrix,
    witness_sequence,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


# ---- space file format -----------------------------------------------------

def parse_space_file(text: str) -> tuple[DiscreteMeasureSpace, Transformation]:
    """Parse the JSON space format and validate it into a (space, map) pair."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON (line {exc.lineno}, column {exc.colno})")
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    unknown = set(data) - {"points", "weights", "map"}
    if unknown:
        raise ParseError(f"unknown field(s): {sorted(unknown)}")
    for key in ("points", "weights", "map"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    points = data["points"]
    weights = data["weights"]
    assignment = data["map"]
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise ParseError("'points' must be a list of strings")
    if not isinstance(weights, list):
        raise ParseError("'weights' must be a list")
    parsed_weights = []
    for i, w in enumerate(weights):
        if isinstance(w, float):
            raise ParseError(
                f"weight #{i} is a float; use a string like \"3/2\" to stay exact"
            )
        if not isinstance(w, (str, int)):
            raise ParseError(f"weight #{i} must be a string or integer")
        try:
            parsed_weights.append(Fraction(w))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"weight #{i} ({w!r}) is not a rational number")
    if not isinstance(assignment, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in assignment.items()
    ):
        raise ParseError("'map' must be an object of atom -> atom strings")
    space = new_space(points, parsed_weights)
    tau = new_map(space, assignment)
    return space, tau


def serialize_space(space: DiscreteMeasureSpace, tau: Transformation) -> str:
    data = {
        "points": list(space.points),
        "weights": [str(w) for w in space.weights],
        "map": {p: tau(p) for p in space.points},
    }
    return json.dumps(data, indent=2) + "\n"


# ---- report helpers ---------------------------------------------------------

def _fmt_set(space: DiscreteMeasureSpace, atoms: frozenset[str]) -> str:
    ordered = sorted(atoms, key=space.index.__getitem__)
    return "{" + ",".join(ordered) + "}"


def _fmt_verdict(v) -> str:
    if v is None:
        return "skipped"
    if isinstance(v, Finite):
        return str(v.k)
    if isinstance(v, Undetermined):
        return f"undetermined(kmax={v.searched_to})"
    return str(v)


def _fmt_float(x: float) -> str:
    return format(x, ".12g")


# ---- commands ---------------------------------------------------------------

def _cmd_analyze(args) -> tuple[str, int]:
    with open(args.space, "r", encoding="utf-8") as handle:
        space, tau = parse_space_file(handle.read())
    report = consistency_report(tau, kmax=args.max_k)
    lines = ["== space =="]
    lines.append(f"atoms={space.size}")
    lines.append(f"total_mass={space.total_mass}")
    lines.append("== chain ==")
    for rec in report.records:
        lines.append(
            f"k={rec.k} nullity={rec.nullity} rank={rec.rank} "
            f"image={_fmt_set(space, rec.image)} "
            f"support={_fmt_set(space, rec.support)} "
            f"zero_set={_fmt_set(space, rec.zero_set)}"
        )
    lines.append("== verdicts ==")
    lines.append(
        f"ascent: theorem={_fmt_verdict(report.ascent_theorem)} "
        f"oracle={report.ascent_oracle}"
    )
    lines.append(
        f"descent: theorem={_fmt_verdict(report.descent_theorem)} "
        f"oracle={report.descent_oracle} "
        f"n_inj={_fmt_verdict(report.n_inj) if not isinstance(report.n_inj, int) else report.n_inj}"
    )
    if report.failures:
        lines.append("== failures ==")
        lines.extend(report.failures)
    lines.append("== trailer ==")
    lines.append(f"ascent_theorem={_fmt_verdict(report.ascent_theorem)}")
    lines.append(f"ascent_oracle={report.ascent_oracle}")
    lines.append(f"descent_theorem={_fmt_verdict(report.descent_theorem)}")
    lines.append(f"descent_oracle={report.descent_oracle}")
    lines.append(f"coincide={str(report.ascent_oracle == report.descent_oracle).lower()}")
    lines.append(f"consistent={str(report.consistent).lower()}")
    code = EXIT_OK if report.consistent else EXIT_VIOLATION
    return "\n".join(lines) + "\n", code


def _cmd_oracle(args) -> tuple[str, int]:
    with open(args.space, "r", encoding="utf-8") as handle:
        space, tau = parse_space_file(handle.read())
    matrix = matrix_of(tau)
    kmax = args.max_k if args.max_k is not None else max(space.size, 1)
    dims = chain_dims(matrix, kmax)
    lines = ["== chain =="]
    for k, (nullity, rank) in enumerate(zip(dims.nullities, dims.ranks)):
        lines.append(f"k={k} nullity={nullity} rank={rank}")
    decomposition = riesz_decomposition(matrix)
    lines.append("== splitting ==")
    lines.append(f"p={decomposition.p}")
    lines.append(f"kernel_dim={len(decomposition.kernel_basis)}")
    lines.append(f"range_dim={len(decomposition.range_basis)}")
    for i, vec in enumerate(decomposition.kernel_basis):
        lines.append(f"kernel[{i}]=({','.join(str(x) for x in vec)})")
    for i, vec in enumerate(decomposition.range_basis):
        lines.append(f"range[{i}]=({','.join(str(x) for x in vec)})")
    lines.append("== trailer ==")
    lines.append(f"p={decomposition.p}")
    lines.append(f"kernel_dim={len(decomposition.kernel_basis)}")
    lines.append(f"range_dim={len(decomposition.range_basis)}")
    lines.append("direct_sum=true")
    return "\n".join(lines) + "\n", EXIT_OK


def _parse_values(space: DiscreteMeasureSpace, text: str) -> dict[str, float]:
    values: dict[str, float] = {}
    if not text:
        return values
    for chunk in text.split(","):
        name, sep, raw = chunk.partition("=")
        if not sep:
            raise ParseError(f"bad value entry {chunk!r} (expected atom=number)")
        try:
            values[name] = float(raw)
        except ValueError:
            raise ParseError(f"bad number {raw!r} for atom {name!r}")
    return values


def _cmd_norm(args) -> tuple[str, int]:
    with open(args.space, "r", encoding="utf-8") as handle:
        space, _ = parse_space_file(handle.read())
    phi = parse_phi_spec(args.phi)
    f = space_function(space, _parse_values(space, args.values))
    lines = ["== norms =="]
    lines.append(f"phi={phi.spec_string()}")
    lines.append(f"modular={_fmt_float(modular(phi, f))}")
    lines.append(f"luxemburg={_fmt_float(luxemburg_norm(phi, f))}")
    lines.append(f"amemiya={_fmt_float(amemiya_norm(phi, f))}")
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_witness(args) -> tuple[str, int]:
    sigma = parse_rule(args.map)
    result = witness_sequence(sigma, args.depth, bound=args.bound)
    lines = ["== witness =="]
    lines.append(f"rule={sigma.rule_string()}")
    lines.append(f"onto={str(is_surjective(sigma)).lower()}")
    lines.append(f"one_one={str(is_injective(sigma)).lower()}")
    if isinstance(result, NotFound):
        lines.append(f"no witness within bound at k={result.k}")
        found = result.k - 1
        evidence = "false"
    else:
        for k, n in result.entries:
            lines.append(f"k={k} witness={n}")
        found = result.depth
        evidence = "true"
    if args.truncate is not None:
        matrix = truncated_matrix(sigma, args.truncate)
        dims = chain_dims(matrix, args.truncate + 1)
        lines.append(f"== truncation n={args.truncate} ==")
        for k, nullity in enumerate(dims.nullities):
            lines.append(f"k={k} nullity={nullity}")
    lines.append("== trailer ==")
    lines.append(f"depth={args.depth}")
    lines.append(f"found={found}")
    lines.append(f"infinite_ascent_evidence={evidence}")
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_campaign(args) -> tuple[str, int]:
    seed = args.seed
    env_seed = os.environ.get("KCL_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            raise ParseError(f"KCL_SEED must be an integer, got {env_seed!r}")
    mode = "permutation" if args.permutations else "functional"
    result = run_campaign(count=args.count, max_n=args.n, seed=seed, mode=mode)
    lines = ["== campaign =="]
    lines.append(f"mode={result.mode}")
    lines.append(f"seed={result.seed}")
    lines.append(f"max_n={result.max_n}")
    lines.append(f"count={result.count}")
    bad = [r for r in result.results if not r.consistent]
    if bad:
        lines.append("== failures ==")
        for r in bad:
            for failure in r.failures:
                lines.append(f"graph={r.index} n={r.n}: {failure}")
    lines.append("== trailer ==")
    lines.append(f"graphs={result.count}")
    lines.append(f"consistent={result.consistent_count}")
    lines.append(f"result={'pass' if result.all_consistent else 'fail'}")
    code = EXIT_OK if result.all_consistent else EXIT_VIOLATION
    return "\n".join(lines) + "\n", code


# ---- entry points -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kcl",
        description="kernel/range chain analysis for composition operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="theorem engine + oracle + consistency")
    p_analyze.add_argument("--space", required=True, help="space file (JSON)")
    p_analyze.add_argument("--max-k", type=int, default=None, dest="max_k")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_oracle = sub.add_parser("oracle", help="exact chains and splitting only")
    p_oracle.add_argument("--space", required=True)
    p_oracle.add_argument("--max-k", type=int, default=None, dest="max_k")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_norm = sub.add_parser("norm", help="modular and both norms of a function")
    p_norm.add_argument("--space", required=True)
    p_norm.add_argument("--phi", required=True, help="power:<p> | powerlog:<p> | expml")
    p_norm.add_argument("--values", default="", help="comma list atom=value")
    p_norm.set_defaults(func=_cmd_norm)

    p_witness = sub.add_parser("witness", help="symbolic witness search")
    p_witness.add_argument("--map", required=True, help="affine:<a>:<b> | table:{..};affine:<a>:<b>")
    p_witness.add_argument("--depth", type=int, required=True)
    p_witness.add_argument("--bound", type=int, default=None)
    p_witness.add_argument("--truncate", type=int, default=None)
    p_witness.set_defaults(func=_cmd_witness)

    p_campaign = sub.add_parser("campaign", help="seeded random-graph cross-check")
    p_campaign.add_argument("--n", type=int, default=10, help="max atoms per graph")
    p_campaign.add_argument("--count", type=int, default=100)
    p_campaign.add_argument("--seed", type=int, default=0)
    p_campaign.add_argument("--permutations", action="store_true")
    p_campaign.set_defaults(func=_cmd_campaign)

    return parser


def run(argv: list[str]) -> tuple[str, int]:
    """Produce (report text, exit code) without touching stdout."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        return f"error: {exc}\n", EXIT_INPUT
    except KernelChainError as exc:
        return f"error: {exc}\n", EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    text, code = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code != EXIT_INPUT else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
