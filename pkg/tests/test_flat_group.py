"""
Tests for flat_group module
"""
from fractions import Fraction

import pytest

from src.algebra.affine_groups import Rejection
from src.algebra.exact_linear import AffineIso, RatMatrix
from src.services import flat_group
from src.services.flat_group import (
    classify,
    g6_abelianize,
    g6_eval,
    g6_membership,
    g6_subgroup_lattices,
    h1_g6,
    identity,
    in_commutator_subgroup,
    verify_g6_presentation,
)

pytestmark = pytest.mark.flat


class TestG6Model:
    """Test the affine model of G6"""

    def test_presentation_holds(self):
        """Both relators and the Zimmermann dictionary hold in the model"""
        checks = verify_g6_presentation()
        assert checks
        assert all(c['passed'] for c in checks)

    def test_empty_word_is_identity(self):
        """The empty word evaluates to the identity"""
        assert g6_eval('') == identity()
        assert g6_eval('xx^-1') == identity()

    def test_squares_are_translations(self):
        """x^2, y^2, z^2 are the unit translations"""
        assert g6_eval('x^2').residue == (1, 0, 0)
        assert g6_eval('y^2').residue == (0, 1, 0)
        assert g6_eval('z^2').residue == (0, 0, 1)
        assert g6_eval('x^2').is_translation

    def test_holonomy_of_product(self):
        """xy has holonomy Z"""
        assert g6_eval('xy').holonomy == 'Z'
        assert g6_eval('x').holonomy == 'X'

    def test_multiplication_and_inverse(self):
        """Element products stay in G6"""
        x, y = g6_eval('x'), g6_eval('y')
        assert x * y == g6_eval('z')
        assert x * x.inverse() == identity()


class TestMembership:
    """Test classification of affine maps"""

    def test_rejects_wrong_dimension(self):
        """Plane maps are not in G6"""
        result = g6_membership(AffineIso.identity(2))
        assert isinstance(result, Rejection)
        assert result.reason == 'dimension'

    def test_rejects_bad_holonomy(self):
        """A reflection in one axis is not a holonomy of G6"""
        result = g6_membership(AffineIso.linear_map(RatMatrix.diagonal([-1, 1, 1])))
        assert isinstance(result, Rejection)
        assert result.reason == 'bad-holonomy'

    def test_rejects_half_translation(self):
        """The translation by e1/2 is not in G6"""
        result = g6_membership(AffineIso.translation_by((Fraction(1, 2), 0, 0)))
        assert isinstance(result, Rejection)
        assert result.reason == 'bad-translation'

    def test_classify_raises(self):
        """classify turns a rejection into ValueError"""
        with pytest.raises(ValueError):
            classify(AffineIso.translation_by((Fraction(1, 2), 0, 0)))

    def test_unknown_generator(self):
        """Automorphism letters are not group words"""
        with pytest.raises(ValueError):
            g6_eval('a')


class TestSubgroupsAndAbelianization:
    """Test T, G6' and H1(G6)"""

    def test_lattice_chain(self):
        """2T < G6' < T with indices 2 and 4"""
        lattices = g6_subgroup_lattices()
        assert lattices['chain']
        assert lattices['index_T_G6_prime'] == 4
        assert lattices['index_G6_prime_2T'] == 2
        assert lattices['T/G6_prime'] == [2, 2]

    def test_h1(self):
        """H1(G6) = (Z/4)^2"""
        assert h1_g6().invariant_factors == (4, 4)

    def test_commutator_element(self):
        """x^2 y^2 z^-2 lies in G6' and abelianizes to zero"""
        g = g6_eval('x^2y^2z^-2')
        assert in_commutator_subgroup(g)
        assert all(a == 0 for a in g6_abelianize(g))

    def test_non_commutator_elements(self):
        """x^2 and x are not in G6'"""
        assert not in_commutator_subgroup(g6_eval('x^2'))
        assert not in_commutator_subgroup(g6_eval('x'))
        assert any(g6_abelianize(g6_eval('x')))

    def test_commutators_abelianize_to_zero(self):
        """[x, y] maps to zero in H1"""
        commutator = g6_eval('xyx^-1y^-1')
        assert in_commutator_subgroup(commutator)
        assert flat_group.g6_abelianize(commutator) == (0, 0)
