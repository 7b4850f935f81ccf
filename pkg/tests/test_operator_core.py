from fractions import Fraction

import pytest

from kernelchain import (
    ascent_oracle,
    boundedness_constant,
    chain_dims,
    descent_oracle,
    identity_map,
    indicator,
    iterate,
    kernel_membership,
    matrix_of,
    modular,
    new_map,
    new_space,
    riesz_decomposition,
    space_function,
)
from kernelchain.operator_core import apply_composition
from kernelchain.errors import NonsingularityViolated
from kernelchain.rational_linalg import mat_pow, rank_int, rref


class TestMatrix:
    def test_row_selection_structure(self, tau_e1):
        m = matrix_of(tau_e1)
        # rows pick columns (2, 3, 3, 3) in atom order
        assert m.entries == (
            (0, 1, 0, 0),
            (0, 0, 1, 0),
            (0, 0, 1, 0),
            (0, 0, 1, 0),
        )

    def test_identity_map_gives_identity_matrix(self, space_e1):
        m = matrix_of(identity_map(space_e1))
        assert all(
            m.entries[i][j] == (1 if i == j else 0)
            for i in range(4) for j in range(4)
        )

    def test_permutation_matrix(self, tau_e2):
        m = matrix_of(tau_e2)
        assert m.entries == ((0, 1, 0), (0, 0, 1), (1, 0, 0))

    def test_powers_match_iterates(self, tau_e1):
        base = matrix_of(tau_e1).rows()
        for k in range(5):
            power = mat_pow(base, k)
            direct = matrix_of(iterate(tau_e1, k)).rows()
            assert power == direct

    def test_application_is_composition(self, tau_e1):
        f = space_function(tau_e1.space, {"2": 5.0, "3": -1.0})
        composed = apply_composition(tau_e1, f)
        assert composed.values == {"1": 5.0, "2": -1.0, "3": -1.0, "4": -1.0}


class TestChains:
    def test_running_example_chain(self, tau_e1):
        dims = chain_dims(matrix_of(tau_e1), 4)
        assert dims.nullities == (0, 2, 3, 3, 3)
        assert dims.ranks == (4, 2, 1, 1, 1)

    def test_permutation_chain(self, tau_e2):
        dims = chain_dims(matrix_of(tau_e2), 4)
        assert all(n == 0 for n in dims.nullities)
        assert all(r == 3 for r in dims.ranks)

    def test_identity_chain(self, space_e1):
        dims = chain_dims(matrix_of(identity_map(space_e1)), 3)
        assert all(n == 0 for n in dims.nullities)
        assert all(r == 4 for r in dims.ranks)

    def test_ascent_values(self, tau_e1, tau_e2, space_e1):
        assert ascent_oracle(matrix_of(tau_e1)) == 2
        assert ascent_oracle(matrix_of(tau_e2)) == 1
        assert ascent_oracle(matrix_of(identity_map(space_e1))) == 1

    def test_descent_values(self, tau_e1, tau_e2, space_e1):
        assert descent_oracle(matrix_of(tau_e1)) == 2
        assert descent_oracle(matrix_of(tau_e2)) == 1
        assert descent_oracle(matrix_of(identity_map(space_e1))) == 1

    def test_nullity_counts_missing_image_atoms(self, tau_e1):
        from kernelchain import image
        dims = chain_dims(matrix_of(tau_e1), 4)
        for k in range(5):
            assert dims.nullities[k] == 4 - len(image(tau_e1, k))


class TestRiesz:
    def test_running_example_split(self, tau_e1):
        d = riesz_decomposition(matrix_of(tau_e1))
        assert d.p == 2
        assert len(d.kernel_basis) == 3
        assert len(d.range_basis) == 1
        # the range part is the constants, fixed by the operator
        (range_vec,) = d.range_basis
        assert len(set(range_vec)) == 1
        # kernel vectors vanish at the absorbing atom 3 (index 2)
        for vec in d.kernel_basis:
            assert vec[2] == 0

    def test_permutation_split_is_trivial(self, tau_e2):
        d = riesz_decomposition(matrix_of(tau_e2))
        assert d.p == 1
        assert d.kernel_basis == ()
        assert len(d.range_basis) == 3

    def test_two_atom_collapse(self):
        sp = new_space(["1", "2"], [1, 1])
        tau = new_map(sp, {"1": "1", "2": "1"})
        d = riesz_decomposition(matrix_of(tau))
        assert d.p == 1
        assert len(d.kernel_basis) == 1
        assert len(d.range_basis) == 1


class TestBoundedness:
    def test_running_example(self, tau_e1):
        # atom 3 has three unit-weight preimages {2,3,4}
        assert boundedness_constant(tau_e1) == 3

    def test_measure_preserving_gives_one(self, tau_e2):
        assert boundedness_constant(tau_e2) == 1

    def test_identity_gives_one(self, space_e1):
        assert boundedness_constant(identity_map(space_e1)) == 1

    def test_rational_weights(self):
        sp = new_space(["a", "b"], ["1/2", "1/3"])
        tau = new_map(sp, {"a": "b", "b": "b"})
        # mass into b is 5/6 against weight 1/3
        assert boundedness_constant(tau) == Fraction(5, 2)

    def test_requires_nonsingular(self):
        sp = new_space(["a", "b"], [0, 1])
        tau = new_map(sp, {"a": "a", "b": "a"})
        with pytest.raises(NonsingularityViolated):
            boundedness_constant(tau)

    def test_modular_contraction_mechanism(self, tau_e1):
        from kernelchain import make_orlicz
        phi = make_orlicz("power", 2)
        k_const = float(boundedness_constant(tau_e1))
        f = space_function(tau_e1.space, {"1": 0.5, "2": 1.5, "3": -2.0, "4": 1.0})
        assert modular(phi, apply_composition(tau_e1, f)) <= (
            k_const * modular(phi, f) + 1e-9
        )


class TestKernelMembership:
    def test_indicator_of_dead_atom_is_in_kernel(self, tau_e1):
        assert kernel_membership(tau_e1, 1, indicator(tau_e1.space, ["1"]))

    def test_indicator_of_live_atom_is_not(self, tau_e1):
        assert not kernel_membership(tau_e1, 1, indicator(tau_e1.space, ["3"]))

    def test_zero_function_always_in_kernel(self, tau_e1, tau_e2):
        for tau in (tau_e1, tau_e2):
            for k in range(1, 4):
                assert kernel_membership(tau, k, space_function(tau.space))

    def test_null_atom_values_are_ignored(self):
        sp = new_space(["1", "2"], [0, 1])
        tau = new_map(sp, {"1": "2", "2": "2"})
        f = space_function(sp, {"1": 7.0})  # differs from 0 only a null atom
        assert kernel_membership(tau, 1, f)


class TestRationalLinalg:
    def test_bareiss_agrees_with_rref_rank(self):
        import random
        rng = random.Random(7)
        for _ in range(200):
            rows = [
                [rng.randint(-3, 3) for _ in range(rng.randint(1, 6))]
            ]
            cols = len(rows[0])
            for _ in range(rng.randint(0, 5)):
                rows.append([rng.randint(-3, 3) for _ in range(cols)])
            assert rank_int(rows) == len(rref(rows)[1])

    def test_rank_of_zero_matrix(self):
        assert rank_int([[0, 0], [0, 0]]) == 0

    def test_rank_of_empty(self):
        assert rank_int([]) == 0
