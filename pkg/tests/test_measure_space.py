from fractions import Fraction

import pytest

from kernelchain import (
    chain_rule_holds,
    identity_map,
    image,
    is_measure_preserving,
    is_nonsingular,
    iterate,
    measures_equivalent,
    new_map,
    new_space,
    pushforward,
    rn_derivative,
)
from kernelchain.errors import (
    DuplicatePoint,
    ImageOutOfSpace,
    LengthMismatch,
    MissingPoint,
    NegativeWeight,
    NonsingularityViolated,
    SpaceMismatch,
)


class TestConstruction:
    def test_counting_space(self):
        sp = new_space(["1", "2", "3", "4"], [1, 1, 1, 1])
        assert sp.points == ("1", "2", "3", "4")
        assert all(w == 1 for w in sp.weights)
        assert sp.total_mass == 4

    def test_null_atom_allowed(self):
        sp = new_space(["1", "2"], [0, 1])
        assert sp.weight("1") == 0
        assert sp.null_points == {"1"}

    def test_duplicate_point_rejected(self):
        with pytest.raises(DuplicatePoint):
            new_space(["a", "a"], [1, 1])

    def test_negative_weight_rejected(self):
        with pytest.raises(NegativeWeight):
            new_space(["a", "b"], [1, -1])

    def test_length_mismatch_rejected(self):
        with pytest.raises(LengthMismatch):
            new_space(["a", "b"], [1])

    def test_float_weight_rejected(self):
        with pytest.raises(TypeError):
            new_space(["a"], [0.5])

    def test_rational_string_weights(self):
        sp = new_space(["a", "b"], ["3/2", "1"])
        assert sp.weight("a") == Fraction(3, 2)

    def test_map_construction(self, space_e1, tau_e1):
        assert tau_e1("1") == "2"
        assert tau_e1("4") == "3"

    def test_map_missing_point(self, space_e1):
        with pytest.raises(MissingPoint):
            new_map(space_e1, {"1": "2", "2": "3", "3": "3"})

    def test_map_unknown_source(self, space_e1):
        with pytest.raises(MissingPoint):
            new_map(
                space_e1,
                {"1": "2", "2": "3", "3": "3", "4": "3", "9": "1"},
            )

    def test_map_image_out_of_space(self, space_e1):
        with pytest.raises(ImageOutOfSpace):
            new_map(space_e1, {"1": "2", "2": "3", "3": "3", "4": "9"})


class TestPredicates:
    def test_all_positive_weights_nonsingular(self, tau_e1):
        # the only null set is empty, so nothing can pull back badly
        assert is_nonsingular(tau_e1)

    def test_nonsingularity_violation(self):
        sp = new_space(["1", "2"], [0, 1])
        tau = new_map(sp, {"1": "1", "2": "1"})
        # mu{1} = 0 but the preimage of 1 is everything, weight 1
        assert not is_nonsingular(tau)

    def test_null_fixed_point_is_nonsingular(self):
        sp = new_space(["1", "2"], [0, 1])
        tau = new_map(sp, {"1": "1", "2": "2"})
        assert is_nonsingular(tau)

    def test_permutation_preserves_counting_measure(self, tau_e2):
        assert is_measure_preserving(tau_e2)

    def test_tail_map_not_preserving(self, tau_e1):
        # atom 1 has empty preimage: 0 != mu{1} = 1
        assert not is_measure_preserving(tau_e1)

    def test_identity_preserves_any_measure(self):
        sp = new_space(["a", "b", "c"], ["1/3", 2, 0])
        assert is_measure_preserving(identity_map(sp))


class TestIteration:
    def test_second_iterate(self, tau_e1):
        assert iterate(tau_e1, 2).assignment == {
            "1": "3", "2": "3", "3": "3", "4": "3",
        }

    def test_zeroth_iterate_is_identity(self, tau_e1, space_e1):
        assert iterate(tau_e1, 0) == identity_map(space_e1)

    def test_cycle_returns_to_identity(self, tau_e2, space_e2):
        assert iterate(tau_e2, 3) == identity_map(space_e2)

    def test_iterates_compose(self, tau_e1):
        three = iterate(tau_e1, 3)
        one = iterate(tau_e1, 1)
        two = iterate(tau_e1, 2)
        assert all(
            three(p) == one(two(p)) for p in tau_e1.space.points
        )

    def test_negative_power_rejected(self, tau_e1):
        with pytest.raises(ValueError):
            iterate(tau_e1, -1)


class TestTransport:
    def test_pushforward_one_step(self, tau_e1):
        # preimages: 1 <- {}, 2 <- {1}, 3 <- {2,3,4}, 4 <- {}
        mu1 = pushforward(tau_e1, 1)
        assert mu1.mass == {
            "1": Fraction(0), "2": Fraction(1), "3": Fraction(3), "4": Fraction(0),
        }

    def test_pushforward_two_steps(self, tau_e1):
        mu2 = pushforward(tau_e1, 2)
        assert mu2.mass == {
            "1": Fraction(0), "2": Fraction(0), "3": Fraction(4), "4": Fraction(0),
        }

    def test_pushforward_zero_is_base_measure(self, tau_e1, space_e1):
        mu0 = pushforward(tau_e1, 0)
        assert all(mu0.mass[p] == space_e1.weight(p) for p in space_e1.points)

    def test_mass_conservation(self, tau_e1, tau_e2):
        for tau in (tau_e1, tau_e2):
            for k in range(5):
                assert pushforward(tau, k).total() == tau.space.total_mass

    def test_density_one_step(self, tau_e1):
        f = rn_derivative(tau_e1, 1)
        assert f.value == {
            "1": Fraction(0), "2": Fraction(1), "3": Fraction(3), "4": Fraction(0),
        }

    def test_density_of_measure_preserving_map_is_one(self, tau_e2):
        f = rn_derivative(tau_e2, 1)
        assert all(v == 1 for v in f.value.values())

    def test_density_rejects_singular_map(self):
        sp = new_space(["1", "2"], [0, 1])
        tau = new_map(sp, {"1": "1", "2": "1"})
        with pytest.raises(NonsingularityViolated):
            rn_derivative(tau, 1)

    def test_density_zero_on_null_atoms(self):
        sp = new_space(["1", "2"], [0, 1])
        tau = new_map(sp, {"1": "2", "2": "2"})
        f = rn_derivative(tau, 1)
        assert f.value["1"] == 0

    def test_reconstruction_identity(self, tau_e1):
        # mass = density * weight atom by atom
        for k in range(4):
            mu = pushforward(tau_e1, k)
            f = rn_derivative(tau_e1, k)
            for p in tau_e1.space.points:
                assert mu.mass[p] == f.value[p] * tau_e1.space.weight(p)


class TestImagesAndEquivalence:
    def test_images(self, tau_e1):
        assert image(tau_e1, 1) == {"2", "3"}
        assert image(tau_e1, 2) == {"3"}

    def test_image_zero_is_everything(self, tau_e1, space_e1):
        assert image(tau_e1, 0) == frozenset(space_e1.points)

    def test_permutation_images_are_everything(self, tau_e2, space_e2):
        for k in range(5):
            assert image(tau_e2, k) == frozenset(space_e2.points)

    def test_equivalence_by_support(self, tau_e1):
        mu1 = pushforward(tau_e1, 1)
        mu2 = pushforward(tau_e1, 2)
        mu3 = pushforward(tau_e1, 3)
        assert not measures_equivalent(mu1, mu2)  # {2,3} vs {3}
        assert measures_equivalent(mu2, mu3)      # both {3}

    def test_equivalence_is_reflexive(self, tau_e1):
        mu = pushforward(tau_e1, 1)
        assert measures_equivalent(mu, mu)

    def test_equivalence_rejects_mixed_spaces(self, tau_e1, tau_e2):
        with pytest.raises(SpaceMismatch):
            measures_equivalent(pushforward(tau_e1, 1), pushforward(tau_e2, 1))

    def test_support_chain_shrinks(self, tau_e1):
        supports = [pushforward(tau_e1, k).support() for k in range(5)]
        for bigger, smaller in zip(supports, supports[1:]):
            assert smaller <= bigger

    def test_density_support_inside_image(self, tau_e1):
        for k in range(4):
            assert rn_derivative(tau_e1, k).support() <= image(tau_e1, k)
            # equality on an all-positive-weight space
            assert rn_derivative(tau_e1, k).support() == image(tau_e1, k)


class TestChainRule:
    def test_exact_chain_rule_at_stabilization(self, tau_e1):
        # first equivalent pair for tau_e1 is (mu_2, mu_3)
        assert chain_rule_holds(tau_e1, 2)

    def test_chain_rule_everywhere_for_permutation(self, tau_e2):
        for k in range(1, 4):
            assert chain_rule_holds(tau_e2, k)

    def test_chain_rule_needs_equivalent_pair(self, tau_e1):
        with pytest.raises(ValueError):
            chain_rule_holds(tau_e1, 1)
