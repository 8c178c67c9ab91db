"""
Tests for flat_aut module
"""
from fractions import Fraction

import pytest

from src.algebra.affine_groups import Rejection
from src.algebra.exact_linear import AffineIso
from src.services import flat_aut
from src.services.expressions import ExpressionError
from src.services.flat_aut import (
    AutomorphismError,
    WeightOrbitError,
    aut_from_word,
    element_order,
    identity_aut,
    is_meridianal,
    normalizer_frame,
    normalizer_membership,
    orientation_character,
    out_g6,
    out_g6_summary,
    weight_orbit_normal_form,
)
from src.services.flat_group import g6_eval, identity

pytestmark = pytest.mark.flat


class TestAutomorphisms:
    """Test the named automorphisms"""

    def test_relations(self):
        """Every listed relation among the named automorphisms holds"""
        checks = flat_aut.verify_aut_presentation()
        failed = [c['check'] for c in checks if not c['passed']]
        assert failed == []

    def test_determinants(self):
        """J reverses orientation, ja preserves it"""
        assert flat_aut.J_MATRIX.det() == -1
        assert aut_from_word('ja').det == 1
        assert aut_from_word('jb').det == 1

    def test_inverse(self):
        """phi phi^-1 is the identity"""
        phi = aut_from_word('ideab')
        assert phi * phi.inverse() == identity_aut()

    def test_application_stays_in_g6(self):
        """Automorphisms map G6 to itself"""
        phi = aut_from_word('ja')
        x = g6_eval('x')
        assert phi(x).holonomy in ('X', 'Y', 'Z')
        assert phi(identity()) == identity()

    def test_non_normalizing_translation(self):
        """The translation by e1/3 does not normalize G6"""
        result = normalizer_membership(AffineIso.translation_by((Fraction(1, 3), 0, 0)))
        assert isinstance(result, Rejection)
        assert result.reason == 'not-normalizing'

    def test_unknown_letter(self):
        """Unknown letters are syntax errors"""
        with pytest.raises(ExpressionError):
            aut_from_word('jq')


class TestOutG6:
    """Test the outer automorphism group"""

    def test_order_and_summary(self):
        """Out(G6) has order 96, centre {1, [ab]} and maps onto GL(2,2)"""
        summary = out_g6_summary()
        assert summary['order'] == 96
        assert summary['center_is_1_ab']
        assert summary['gl2_surjective']
        assert summary['gl2_kernel_order'] == 16
        assert summary['d_equals_bc']
        assert summary['f_equals_ace']

    def test_named_relations(self):
        """The listed relations hold among the outer classes"""
        checks = flat_aut.verify_out_presentation()
        relations = [c for c in checks if c['check'].startswith('[')]
        assert all(c['passed'] for c in relations)

    def test_inner_automorphisms_are_trivial(self):
        """Conjugation by x lies in the trivial outer class"""
        table = out_g6()
        assert table.class_of(aut_from_word('x')) == 0
        assert table.class_of(aut_from_word('bcd')) == 0

    def test_table_json(self):
        """The table serializes with labels and the GL(2,2) images"""
        data = out_g6().to_json()
        assert data['order'] == 96
        assert len(data['labels']) == 96
        assert data['labels'][0] == '1'


class TestMeridianal:
    """Test meridianal automorphisms and their classes"""

    def test_two_orientation_preserving_classes(self):
        """[ja] and [jb] represent the orientation-preserving meridianal classes"""
        classes = flat_aut.meridianal_classes()
        preserving = sorted(c['representative'] for c in classes if c['orientation'] == 1)
        assert preserving == sorted(out_g6().label(i) for i in out_g6().classes_of(['ja', 'jb']))

    def test_is_meridianal(self):
        """ja and jb are meridianal, the identity and e are not"""
        assert is_meridianal(aut_from_word('ja'))
        assert is_meridianal(aut_from_word('jb'))
        assert not is_meridianal(identity_aut())
        assert not is_meridianal(aut_from_word('e'))

    def test_h1_action_of_ja(self):
        """t - 1 is invertible on H1 for the meridian ja"""
        action = flat_aut.h1_action(aut_from_word('ja'))
        assert action.invariant_factors == (4, 4)
        assert action.action_minus_identity_invertible()


class TestOrders:
    """Test element orders in Aut(G6)"""

    def test_finite_orders(self):
        """i has order 2, j order 6, ja order 3"""
        assert element_order(aut_from_word('i')) == 2
        assert element_order(aut_from_word('j')) == 6
        assert element_order(aut_from_word('ja')) == 3

    def test_infinite_orders(self):
        """jb and d^2 jb have infinite order"""
        assert element_order(aut_from_word('jb')) is None
        assert element_order(aut_from_word('d^2jb')) is None
        assert flat_aut.format_order(None) == 'infinite'

    def test_twist_spin(self):
        """(d^2n jb)^3 = (de^-1f)^(2n+1)"""
        for n in (0, 1, 2):
            result = flat_aut.twist_spin_obstruction(n)
            assert result['cube_identity']
            assert result['order'] == 'infinite'


class TestWeightOrbits:
    """Test the lambda normal form for G(+) and G(-)"""

    def test_lambda_plus(self):
        """lambda+(x^2 y^2 z^-2) = 3 with a valid certificate"""
        result = weight_orbit_normal_form(g6_eval('x^2y^2z^-2'), 'plus')
        assert result['lambda'] == 3
        assert result['exponents'] == [1, 1, -1]
        assert result['certificate']
        assert result['representative'] == 'x^6t'

    def test_lambda_minus(self):
        """lambda- = m - n + p"""
        result = weight_orbit_normal_form(g6_eval('x^2y^2z^-2'), 'g-')
        assert result['lambda'] == -1
        assert result['certificate']

    def test_identity(self):
        """The identity has lambda 0"""
        assert weight_orbit_normal_form(identity(), '+')['lambda'] == 0

    def test_outside_commutator_subgroup(self):
        """x^2 is not in G6'"""
        with pytest.raises(WeightOrbitError):
            weight_orbit_normal_form(g6_eval('x^2'), 'plus')

    def test_unknown_family(self):
        """Families are plus and minus"""
        with pytest.raises(ValueError):
            weight_orbit_normal_form(identity(), 'zero')

    def test_strict_orbit_group_contains_identity(self):
        """The orbit maps always include lambda -> lambda"""
        maps = flat_aut.strict_orbit_maps('plus')
        assert (1, 0) in maps['group']
        assert maps['centralizer_order'] >= 1


class TestCentralizers:
    """Test centralizers and the orientation character"""

    def test_centralizer_of_ja(self):
        """ja and def^-1 commute with ja"""
        ja = aut_from_word('ja')
        centre = flat_aut.centralizer(ja)
        frame = normalizer_frame()
        assert centre.contains(ja.rep, frame)
        assert centre.contains(aut_from_word('def^-1').rep, frame)
        assert not centre.contains(aut_from_word('i').rep, frame)

    def test_orientation_character(self):
        """ja is +1 on itself, iab inverts ja and preserves orientation"""
        ja = aut_from_word('ja')
        assert orientation_character(ja, ja) == 1
        assert orientation_character(aut_from_word('iab'), ja) == -1

    def test_orientation_character_needs_normalizer(self):
        """Elements that neither commute with nor invert ja are rejected"""
        with pytest.raises(AutomorphismError):
            orientation_character(aut_from_word('d'), aut_from_word('ja'))

    def test_symmetry_certificates(self):
        """The exact symmetry checks for G(+) and G(-) hold"""
        checks = flat_aut.symmetry_certificates()
        named = {c['check']: c['passed'] for c in checks}
        assert named['omega^2 = 1']
        assert named['(iab)^2 = 1']
        assert named['jb is fixed-point free']
        assert named['i(gamma(s)) = gamma(1 - s)']
