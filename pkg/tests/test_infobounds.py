"""Entropy, mutual information, and the independent-signal bounds."""

import math
from fractions import Fraction as F

import numpy as np
import pytest

from privsig import (
    AtomicDist,
    PrivacyError,
    ValidationError,
    check_binary_strengthening,
    check_quadratic_bound,
    check_superadditivity,
    entropy,
    garble,
    mutual_information,
    point_mass,
    posterior_dist,
    quadratic_information,
)
from privsig.catalog import (
    conditionally_iid_pair,
    quarter_three_quarter_blocks,
    two_bit_structure,
)
from privsig.structures import structure_from_grid
from conftest import random_private_structure, random_stochastic_kernel

QUARTERS = AtomicDist([(F(1, 4), F(1, 2)), (F(3, 4), F(1, 2))])
# Independent arithmetic for the frozen expectations below.
H_QUARTER = -(0.25 * math.log2(0.25) + 0.75 * math.log2(0.75))
MI_QUARTERS = 1.0 - H_QUARTER  # 0.18872187554086717


@pytest.fixture
def blocks():
    return structure_from_grid(quarter_three_quarter_blocks(), exact=True)


class TestEntropy:
    def test_values(self):
        assert entropy([0.5, 0.5]) == 1.0
        assert entropy([1.0, 0.0]) == 0.0
        assert entropy([0.25, 0.5, 0.25]) == 1.5

    def test_validation(self):
        with pytest.raises(ValidationError):
            entropy([0.5, -0.5, 1.0])
        with pytest.raises(ValidationError):
            entropy([0.5, 0.4])


class TestMutualInformation:
    def test_point_mass_zero(self):
        assert mutual_information(point_mass(0.3)) == 0.0

    def test_full_revelation(self):
        assert mutual_information(AtomicDist([(0, 0.5), (1, 0.5)])) == 1.0

    def test_quarters_value(self):
        assert abs(mutual_information(QUARTERS) - MI_QUARTERS) < 1e-15
        assert abs(MI_QUARTERS - 0.188722) < 1e-6

    def test_equivalence_invariance(self, blocks, rng):
        base = mutual_information(posterior_dist(blocks, 0))
        perm = garble(blocks, 0, np.eye(4)[::-1])  # relabeling
        assert abs(mutual_information(posterior_dist(perm, 0)) - base) < 1e-12
        q_base = quadratic_information(posterior_dist(blocks, 0))
        q_perm = quadratic_information(posterior_dist(perm, 0))
        assert abs(float(q_base) - float(q_perm)) < 1e-12

    def test_data_processing(self, blocks, rng):
        base = mutual_information(posterior_dist(blocks, 0))
        for _ in range(15):
            kernel = random_stochastic_kernel(rng, 4, int(rng.integers(1, 5)))
            weaker = garble(blocks, 0, kernel)
            assert mutual_information(posterior_dist(weaker, 0)) <= base + 1e-12


class TestQuadraticInformation:
    def test_point_mass_zero(self):
        assert quadratic_information(point_mass(0.3)) == 0.0

    def test_full_revelation_half_prior(self):
        assert quadratic_information(AtomicDist([(0, 0.5), (1, 0.5)])) == 0.5

    def test_quarters_value(self):
        assert quadratic_information(QUARTERS) == 0.125


class TestSuperadditivity:
    def test_two_bit_equality(self):
        report = check_superadditivity(two_bit_structure())
        assert report.per_agent == (1.0, 1.0)
        assert report.joint == 2.0
        assert report.slack == 0.0

    def test_uninformative(self):
        from privsig import FiniteStructure

        flat = FiniteStructure.from_entries(
            2, (2, 2),
            [(w, (a, b), F(1, 8)) for w in range(2)
             for a in range(2) for b in range(2)],
            exact=True,
        )
        report = check_superadditivity(flat)
        assert report.per_agent == (0.0, 0.0)
        assert report.slack == 0.0

    def test_blocks_values(self, blocks):
        report = check_superadditivity(blocks)
        assert abs(sum(report.per_agent) - 2 * MI_QUARTERS) < 1e-12
        assert report.joint == 1.0
        assert abs(report.slack - (1.0 - 2 * MI_QUARTERS)) < 1e-12

    def test_refuses_dependent_signals(self):
        with pytest.raises(PrivacyError):
            check_superadditivity(conditionally_iid_pair(F(3, 4)))


class TestBinaryStrengthening:
    def test_blocks_values(self, blocks):
        report = check_binary_strengthening(blocks)
        bound = 1.0 - (math.log(2) / 8) * MI_QUARTERS ** 2
        assert abs(report.bound - bound) < 1e-12
        assert abs(report.slack - (bound - 2 * MI_QUARTERS)) < 1e-12
        assert abs(report.slack - 0.619) < 1e-3

    def test_one_uninformative_agent_reduces_to_entropy_bound(self):
        from privsig import FiniteStructure

        entries = []
        for v2 in range(2):
            entries += [
                (0, (0, v2), F(3, 16)), (0, (1, v2), F(1, 16)),
                (1, (0, v2), F(1, 16)), (1, (1, v2), F(3, 16)),
            ]
        s = FiniteStructure.from_entries(2, (2, 2), entries, exact=True)
        report = check_binary_strengthening(s)
        assert report.bound == entropy([0.5, 0.5])

    def test_requires_binary_state(self):
        with pytest.raises(ValidationError):
            check_binary_strengthening(two_bit_structure())


class TestQuadraticBound:
    def test_two_bit_values(self):
        # Direct evaluation: each agent's posterior for a given state has
        # variance 1/16 over two states it can touch, so the per-agent
        # index reduction is 1/4; the joint posterior is degenerate.
        report = check_quadratic_bound(two_bit_structure())
        assert report.per_agent == (0.25, 0.25)
        assert report.joint == 0.75
        assert report.bound == 0.75
        assert report.slack == 0.25
        assert report.per_state_slacks == (0.0625,) * 4

    def test_blocks_values(self, blocks):
        report = check_quadratic_bound(blocks)
        assert report.bound == 0.5
        assert sum(report.per_agent) == 0.25
        assert report.slack == 0.25

    def test_refuses_dependent_signals(self):
        with pytest.raises(PrivacyError):
            check_quadratic_bound(conditionally_iid_pair(F(3, 4)))


class TestRandomStructures:
    def test_bounds_hold_on_random_grids(self, rng):
        for _ in range(60):
            m = int(rng.integers(2, 4))
            n = int(rng.integers(2, 4))
            r = int(rng.integers(2, 5))
            s = random_private_structure(rng, m=m, n=n, resolution=r)
            assert check_superadditivity(s).slack >= -1e-9
            assert check_quadratic_bound(s).slack >= -1e-9
            if s.m == 2:
                assert check_binary_strengthening(s).slack >= -1e-9
