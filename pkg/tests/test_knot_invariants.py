"""
Tests for knot_invariants module
"""
import pytest

from src.services.expressions import ExpressionError
from src.services.knot_invariants import (
    FiniteModuleError,
    KnotGroupDescriptor,
    commutator_quotient,
    default_descriptors,
    doubly_slice_verdict,
    fox_alexander_polynomial,
    is_direct_double,
    lambda_cyclic,
    parse_descriptor,
    q_solver,
    verdict_table,
)
from src.services.nil_group import GammaParameterError, check_parameters

pytestmark = pytest.mark.knot


class TestDescriptors:
    """Test knot group descriptors"""

    def test_parse_g6_families(self):
        """G(+) and G(-) parse in short and long form"""
        assert parse_descriptor('g+') == KnotGroupDescriptor('g+')
        assert parse_descriptor('G(-)') == KnotGroupDescriptor('g-')
        assert parse_descriptor('G(+)').label == 'G(+)'

    def test_parse_pi(self):
        """pi(e, eta) carries its q"""
        knot = parse_descriptor('pi(2, 1)')
        assert knot == KnotGroupDescriptor('pi', 2, 1)
        assert knot.q == 3
        assert knot.label == 'pi(2,1)'

    def test_parse_fox(self):
        """fox is the Fox knot group"""
        assert parse_descriptor('fox').family == 'fox'
        assert parse_descriptor('fox').q is None

    def test_invalid_parameters(self):
        """pi(1, 1) has odd e"""
        with pytest.raises(GammaParameterError):
            parse_descriptor('pi(1,1)')

    def test_unknown_descriptor(self):
        """Anything else is rejected"""
        with pytest.raises(ExpressionError):
            parse_descriptor('trefoil')


class TestCommutatorQuotients:
    """Test pi'/pi'' with the meridian action"""

    def test_fox_polynomial(self):
        """The Fox knot group has Alexander polynomial t - 2"""
        poly, _ = fox_alexander_polynomial()
        assert str(poly) == 't - 2'

    def test_fox_is_infinite(self):
        """Finite-module tests reject the Fox quotient"""
        module = commutator_quotient(KnotGroupDescriptor('fox'))
        with pytest.raises(FiniteModuleError):
            is_direct_double(module)
        with pytest.raises(FiniteModuleError):
            lambda_cyclic(module)

    def test_g6_quotient(self):
        """G(+) has (Z/4)^2, a direct double on which the meridian acts cyclically"""
        module = commutator_quotient(KnotGroupDescriptor('g+'))
        assert module.invariant_factors == (4, 4)
        assert is_direct_double(module)
        assert lambda_cyclic(module)

    def test_pi_quotient(self):
        """pi(2, 1) has Z/3 + Z/9"""
        module = commutator_quotient(KnotGroupDescriptor('pi', 2, 1))
        assert module.invariant_factors == (3, 9)
        assert not is_direct_double(module)


class TestVerdicts:
    """Test doubly slice verdicts"""

    def test_known_doubly_slice(self):
        """pi(0, -1) has |q| = 1"""
        verdict = doubly_slice_verdict(KnotGroupDescriptor('pi', 0, -1))
        assert verdict.doubly_slice is True
        assert verdict.reason == 'known-doubly-slice'

    def test_not_direct_double(self):
        """pi(2, 1) is not doubly slice"""
        verdict = doubly_slice_verdict(KnotGroupDescriptor('pi', 2, 1))
        assert verdict.doubly_slice is False
        assert verdict.reason == 'not-direct-double'
        assert verdict.evidence['invariant_factors'] == [3, 9]
        assert verdict.evidence['direct_double'] is False

    def test_g6_verdict(self):
        """G(+) is decided by the Lambda-cyclic argument"""
        verdict = doubly_slice_verdict(KnotGroupDescriptor('g+'))
        assert verdict.doubly_slice is False
        assert verdict.reason == 'lambda-cyclic-external'

    def test_fox_verdict(self):
        """The Fox knot group fails on its irreducible Alexander polynomial"""
        verdict = doubly_slice_verdict(KnotGroupDescriptor('fox'))
        assert verdict.doubly_slice is False
        assert verdict.reason == 'alexander-polynomial'
        assert verdict.evidence['alexander_polynomial'] == 't - 2'
        assert verdict.evidence['irreducible'] is True

    def test_table(self):
        """The table has one row per descriptor and the cited finite-commutator row last"""
        descriptors = default_descriptors([(0, -1), (2, 1)])
        rows = verdict_table(descriptors)
        assert [row['knot'] for row in rows[:-1]] == ['G(+)', 'G(-)', 'pi(0,-1)', 'pi(2,1)', 'Fox']
        assert rows[-1]['doubly_slice'] is None
        assert rows[-1]['reason'] == 'finite-commutator-cited'


class TestQSolver:
    """Test the search for |q| = 1"""

    def test_only_zero_minus_one(self):
        """Within |e| <= 10 only pi(0, -1) has |q| = 1"""
        assert q_solver(10) == [(0, -1)]

    def test_eta_plus_has_none(self):
        """3e - 3 is never +-1"""
        assert q_solver(50, eta=1) == []

    def test_parity_filter_drops_nothing(self):
        """Every |q| = 1 solution has even e and builds a Gamma(e, eta)"""
        unfiltered = sorted((e, h) for e in range(-30, 31) for h in (1, -1) if abs(3 * e - h - 2) == 1)
        assert q_solver(30) == unfiltered
        for e, eta in unfiltered:
            check_parameters(e, eta)

    def test_odd_e_rejected_upstream(self):
        """Odd e never reaches the solver as a group"""
        with pytest.raises(GammaParameterError):
            check_parameters(1, -1)
