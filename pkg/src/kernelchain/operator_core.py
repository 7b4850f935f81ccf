"""Exact matrix model of the composition operator on a finite space.

The operator sends a function f to f o tau; its matrix against the atom
basis has a single 1 in each row, at the column of the atom's image.
Powers stay 0-1 integer matrices, so every kernel/range dimension is an
exact integer computed by fraction-free elimination.  These dimensions
are the oracle the theorem engine is reconciled against.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import rational_linalg as rl
from .errors import DecompositionFailure
from .measure_space import (
    DiscreteMeasureSpace,
    Transformation,
    iterate,
    rn_derivative,
)
from .orlicz import SpaceFunction


@dataclass(frozen=True)
class OperatorMatrix:
    """0-1 matrix of the composition operator; rows/columns in atom order."""

    space: DiscreteMeasureSpace
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class ChainDims:
    """Exact nullity/rank sequences for powers 0..kmax."""

    nullities: tuple[int, ...]
    ranks: tuple[int, ...]


@dataclass(frozen=True)
class RieszDecomposition:
    """Splitting of the whole space into stabilized kernel and range parts."""

    p: int
    kernel_basis: tuple[tuple[Fraction, ...], ...]
    range_basis: tuple[tuple[Fraction, ...], ...]


def matrix_of(tau: Transformation) -> OperatorMatrix:
    """entry(x, y) = 1 iff tau(x) = y, so (M f)(x) = f(tau(x))."""
    space = tau.space
    idx = space.index
    entries = tuple(
        tuple(1 if idx[tau(p)] == j else 0 for j in range(space.size))
        for p in space.points
    )
    return OperatorMatrix(space=space, entries=entries)


def chain_dims(matrix: OperatorMatrix, kmax: int | None = None) -> ChainDims:
    """nullity(M^k) and rank(M^k) for k = 0..kmax (default kmax = n).

    Exact elimination per power; the sequences are checked to be monotone
    with nullity + rank = n throughout.
    """
    n = matrix.size
    if kmax is None:
        kmax = n
    if kmax < 1:
        raise ValueError(f"kmax must be >= 1, got {kmax}")
    nullities = []
    ranks = []
    power = rl.identity_rows(n)
    base = matrix.rows()
    for k in range(kmax + 1):
        if k > 0:
            power = rl.mat_mul(power, base)
        r = rl.rank_int(power)
        ranks.append(r)
        nullities.append(n - r)
    for a, b in zip(nullities, nullities[1:]):
        assert a <= b, "kernel chain must be nondecreasing"
    for a, b in zip(ranks, ranks[1:]):
        assert a >= b, "range chain must be nonincreasing"
    return ChainDims(nullities=tuple(nullities), ranks=tuple(ranks))


def ascent_oracle(matrix: OperatorMatrix) -> int:
    """Smallest k >= 1 with nullity(M^k) = nullity(M^(k+1)); at most n."""
    n = matrix.size
    dims = chain_dims(matrix, max(n, 1) + 1)
    for k in range(1, max(n, 1) + 1):
        if dims.nullities[k] == dims.nullities[k + 1]:
            return k
    raise AssertionError("kernel chain failed to stabilize by k = n")


def descent_oracle(matrix: OperatorMatrix) -> int:
    """Smallest k >= 1 with rank(M^k) = rank(M^(k+1)); at most n."""
    n = matrix.size
    dims = chain_dims(matrix, max(n, 1) + 1)
    for k in range(1, max(n, 1) + 1):
        if dims.ranks[k] == dims.ranks[k + 1]:
            return k
    raise AssertionError("range chain failed to stabilize by k = n")


def riesz_decomposition(matrix: OperatorMatrix) -> RieszDecomposition:
    """Exact bases for the stabilized kernel and range, with full checks.

    Verifies that the two bases span complementary subspaces (direct sum),
    that the operator kills the kernel part after p steps, and that it is
    invertible on the range part.  Any failure raises DecompositionFailure
    and indicates an arithmetic bug, not a mathematical possibility.
    """
    n = matrix.size
    p = ascent_oracle(matrix)
    q = descent_oracle(matrix)
    if p != q:
        raise DecompositionFailure(
            f"stabilization indices disagree: kernel {p}, range {q}"
        )
    base = matrix.rows()
    power = rl.mat_pow(base, p)
    kernel_basis = rl.nullspace_basis(power)
    range_basis = rl.column_space_basis(power)
    if len(kernel_basis) + len(range_basis) != n:
        raise DecompositionFailure(
            f"dimension split {len(kernel_basis)}+{len(range_basis)} != {n}"
        )
    combined = list(kernel_basis) + list(range_basis)
    if rl.rank_of_columns(combined) != n:
        raise DecompositionFailure("kernel + range bases do not span directly")
    # nilpotency on the kernel part: M^p annihilates every basis vector
    for vec in kernel_basis:
        if any(x != 0 for x in rl.mat_vec(power, vec)):
            raise DecompositionFailure("operator power does not kill the kernel part")
    # invertibility on the range part: images stay inside and stay independent
    images = [tuple(rl.mat_vec(base, vec)) for vec in range_basis]
    if images:
        if rl.rank_of_columns(images) != len(range_basis):
            raise DecompositionFailure("operator drops rank on the range part")
        if rl.rank_of_columns(list(range_basis) + images) != len(range_basis):
            raise DecompositionFailure("operator leaves the range part")
    return RieszDecomposition(
        p=p,
        kernel_basis=tuple(kernel_basis),
        range_basis=tuple(range_basis),
    )


def boundedness_constant(tau: Transformation) -> Fraction:
    """Least K with pulled-back weight <= K * weight on every atom.

    Equals the sup of the one-step density over positive-weight atoms;
    requires tau nonsingular (the density must exist).
    """
    density = rn_derivative(tau, 1)
    positive = [
        density.value[p] for p in tau.space.points if tau.space.weight(p) > 0
    ]
    if not positive:
        return Fraction(0)
    return max(positive)


def apply_composition(tau: Transformation, f: SpaceFunction) -> SpaceFunction:
    """The operator's action: (C f)(x) = f(tau(x))."""
    return SpaceFunction(
        space=f.space, values={p: f.values[tau(p)] for p in f.space.points}
    )


def kernel_membership(tau: Transformation, k: int, f: SpaceFunction) -> bool:
    """Is f in the kernel of the k-th operator power, up to null atoms?

    True iff f vanishes (mu-a.e.) off the zero set of the k-step density.
    Cross-checked against the direct route: f o tau^k = 0 on every
    positive-weight atom.  The two agree whenever tau is nonsingular.
    """
    density = rn_derivative(tau, k)
    space = tau.space
    via_density = all(
        f.values[p] == 0.0
        for p in space.positive_points
        if density.value[p] > 0
    )
    step_k = iterate(tau, k)
    via_matrix = all(
        f.values[step_k(p)] == 0.0 for p in space.positive_points
    )
    assert via_density == via_matrix, "kernel membership routes disagree"
    return via_density
