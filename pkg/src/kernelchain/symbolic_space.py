"""Finitely presented self-maps of the positive integers.

Rules are an affine tail a*n + b, optionally patched by a finite
exception table on {1..m}.  Range membership is decided exactly by
backward solving, which is what the bounded witness search for strict
kernel-chain growth is built on.  Counting measure (weight 1 per
integer) is fixed throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InvalidParameter, ParseError
from .measure_space import Transformation, new_map, new_space
from .operator_core import OperatorMatrix, matrix_of

SINK = "sink"


@dataclass(frozen=True)
class SymbolicMap:
    """n -> table[n] for n <= table size, else a*n + b."""

    a: int
    b: int
    table: tuple[tuple[int, int], ...] = ()

    @property
    def table_size(self) -> int:
        return len(self.table)

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"domain starts at 1, got {n}")
        if n <= len(self.table):
            return self.table[n - 1][1]
        return self.a * n + self.b

    def rule_string(self) -> str:
        affine = f"affine:{self.a}:{self.b}"
        if not self.table:
            return affine
        pairs = ",".join(f"{i}->{j}" for i, j in self.table)
        return f"table:{{{pairs}}};{affine}"


def affine(a: int, b: int) -> SymbolicMap:
    """n -> a*n + b with integer a >= 1, b >= 0 (keeps 1 in the domain)."""
    if not (isinstance(a, int) and isinstance(b, int)):
        raise InvalidParameter("affine coefficients must be integers")
    if a < 1 or b < 0:
        raise InvalidParameter(f"need a >= 1 and b >= 0, got a={a}, b={b}")
    return SymbolicMap(a=a, b=b)


def table_then_affine(table: Mapping[int, int], a: int, b: int) -> SymbolicMap:
    """Finite exception table on {1..m} with an affine tail beyond m."""
    base = affine(a, b)
    if not table:
        return base
    m = max(table)
    if set(table) != set(range(1, m + 1)):
        raise InvalidParameter(
            f"table keys must be exactly 1..{m}, got {sorted(table)}"
        )
    for key, value in table.items():
        if not isinstance(value, int) or value < 1:
            raise InvalidParameter(
                f"table value for {key} must be a positive integer, got {value!r}"
            )
    rows = tuple((i, table[i]) for i in range(1, m + 1))
    return SymbolicMap(a=a, b=b, table=rows)


def parse_rule(text: str) -> SymbolicMap:
    """CLI grammar: affine:<a>:<b> or table:{i->j,...};affine:<a>:<b>."""
    try:
        if text.startswith("affine:"):
            _, a_raw, b_raw = text.split(":")
            return affine(int(a_raw), int(b_raw))
        if text.startswith("table:{"):
            body, _, tail = text.partition(";")
            if not tail.startswith("affine:"):
                raise ParseError(f"missing affine tail in {text!r}")
            inner = body[len("table:{"):]
            if not inner.endswith("}"):
                raise ParseError(f"unterminated table in {text!r}")
            table: dict[int, int] = {}
            inner = inner[:-1]
            if inner:
                for pair in inner.split(","):
                    left, sep, right = pair.partition("->")
                    if not sep:
                        raise ParseError(f"bad table entry {pair!r}")
                    table[int(left)] = int(right)
            _, a_raw, b_raw = tail.split(":")
            return table_then_affine(table, int(a_raw), int(b_raw))
    except (ValueError, InvalidParameter) as exc:
        raise ParseError(f"bad rule {text!r}: {exc}") from exc
    raise ParseError(
        f"unknown rule {text!r} (expected affine:<a>:<b> or "
        "table:{{i->j,...}};affine:<a>:<b>)"
    )


# ---- range structure --------------------------------------------------------

def preimages(sigma: SymbolicMap, m: int) -> list[int]:
    """All n >= 1 with sigma(n) = m, exactly."""
    found = [i for i, j in sigma.table if j == m]
    shifted = m - sigma.b
    if shifted > 0 and shifted % sigma.a == 0:
        q = shifted // sigma.a
        if q >= 1 and q > sigma.table_size:
            found.append(q)
    return sorted(found)


def in_range(sigma: SymbolicMap, k: int, n: int) -> bool:
    """Exact decision of n in R(sigma^k) by backward preimage closure."""
    if k < 0:
        raise ValueError(f"power must be >= 0, got {k}")
    if n < 1:
        raise ValueError(f"integers start at 1, got {n}")
    layer = {n}
    for _ in range(k):
        layer = {q for m in layer for q in preimages(sigma, m)}
        if not layer:
            return False
    return True


@dataclass(frozen=True)
class WitnessSequence:
    """Distinct integers leaving the iterated ranges one power at a time.

    entry (k, n_k) certifies n_k in R(sigma^(k-1)) \\ R(sigma^k); a full
    sequence to depth K is evidence (never a proof) that the kernel chain
    of the induced operator grows strictly forever.
    """

    entries: tuple[tuple[int, int], ...]
    depth: int


@dataclass(frozen=True)
class NotFound:
    k: int


def default_search_bound(sigma: SymbolicMap, k: int) -> int:
    # affine images grow at linear rate a with offset b; 64 covers table quirks
    return sigma.a * k + sigma.b + 64


def witness_sequence(
    sigma: SymbolicMap, depth: int, bound: int | None = None
) -> WitnessSequence | NotFound:
    """Search n <= bound(k) for each k in [1, depth]; first failure wins.

    Every returned sequence is re-verified against in_range before it is
    handed back.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    used: set[int] = set()
    entries: list[tuple[int, int]] = []
    for k in range(1, depth + 1):
        limit = bound if bound is not None else default_search_bound(sigma, k)
        witness = None
        for n in range(1, limit + 1):
            if n in used:
                continue
            if in_range(sigma, k - 1, n) and not in_range(sigma, k, n):
                witness = n
                break
        if witness is None:
            return NotFound(k=k)
        used.add(witness)
        entries.append((k, witness))
    result = WitnessSequence(entries=tuple(entries), depth=depth)
    assert verify_witness(sigma, result), "witness search self-check failed"
    return result


def verify_witness(sigma: SymbolicMap, ws: WitnessSequence) -> bool:
    """Recheck distinctness and both membership conditions of a sequence."""
    picks = [n for _, n in ws.entries]
    if len(set(picks)) != len(picks):
        return False
    return all(
        in_range(sigma, k - 1, n) and not in_range(sigma, k, n)
        for k, n in ws.entries
    )


# ---- finite truncations -----------------------------------------------------

def truncated_map(sigma: SymbolicMap, n: int) -> Transformation:
    """Restriction to {1..n} with one absorbing sink for escaping images.

    Chain dimensions of the truncation approximate, but do not equal,
    those of the full countable operator.
    """
    if n < 1:
        raise ValueError(f"truncation size must be >= 1, got {n}")
    points = [str(i) for i in range(1, n + 1)] + [SINK]
    space = new_space(points, [1] * (n + 1))
    assignment = {SINK: SINK}
    for i in range(1, n + 1):
        target = sigma(i)
        assignment[str(i)] = str(target) if target <= n else SINK
    return new_map(space, assignment)


def truncated_matrix(sigma: SymbolicMap, n: int) -> OperatorMatrix:
    return matrix_of(truncated_map(sigma, n))


# ---- decidable hypothesis flags ----------------------------------------------

def is_surjective(sigma: SymbolicMap) -> bool:
    """Does the rule map onto all of {1, 2, ...}?  Decidable for this family."""
    if sigma.a >= 2:
        # the tail image has density 1/a, so infinitely many integers are
        # missed and a finite table cannot plug them
        return False
    tail_start = sigma.table_size + 1
    first_tail_value = tail_start + sigma.b
    table_values = {j for _, j in sigma.table}
    return all(v in table_values for v in range(1, first_tail_value))


def is_injective(sigma: SymbolicMap) -> bool:
    values = [j for _, j in sigma.table]
    if len(set(values)) != len(values):
        return False
    for v in values:
        shifted = v - sigma.b
        if shifted > 0 and shifted % sigma.a == 0:
            if shifted // sigma.a > sigma.table_size:
                return False
    return True
