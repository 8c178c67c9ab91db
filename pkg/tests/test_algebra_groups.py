"""
Tests for finite group tables, finite abelian groups with an action and
subgroup descriptions of affine groups
"""
import random
from fractions import Fraction

import pytest

from src.algebra.abelian import FinAbGroupWithAction, prime_power_factors
from src.algebra.affine_groups import Rejection, describe_generated, subgroup_equals
from src.algebra.exact_linear import AffineIso, int_matmul
from src.algebra.finite_group import FiniteGroupTable
from src.services import knot_invariants
from src.services.flat_group import g6_membership
from src.services.nil_group import normalizer_frame_p

pytestmark = pytest.mark.unit


def _compose(p, q):
    """(p o q)(i) = p(q(i))"""
    return tuple(p[i] for i in q)


@pytest.fixture
def s3():
    return FiniteGroupTable.from_closure([(1, 0, 2), (1, 2, 0)], _compose, (0, 1, 2), lambda p: p)


class TestFiniteGroupTable:
    """Test closure-built multiplication tables"""

    def test_order_and_profile(self, s3):
        """S3 has one identity, three involutions and two 3-cycles"""
        assert s3.order == 6
        assert s3.order_profile() == {1: 1, 2: 3, 3: 2}

    def test_center_and_classes(self, s3):
        """S3 has trivial centre and three conjugacy classes"""
        assert s3.center() == (0,)
        assert len(s3.conjugacy_classes()) == 3
        assert not s3.is_abelian()

    def test_inverse_and_conjugate(self, s3):
        """Every element times its inverse is the identity"""
        for i in range(s3.order):
            assert s3.mul(i, s3.inverse(i)) == 0
        swap = s3.locate((1, 0, 2))
        cycle = s3.locate((1, 2, 0))
        assert s3.conjugate(swap, cycle) == s3.inverse(cycle)

    def test_subgroup_generated(self, s3):
        """A 3-cycle generates A3"""
        cycle = s3.locate((1, 2, 0))
        sub = s3.subgroup_generated([cycle])
        assert len(sub) == 3
        assert s3.is_subgroup(sub)
        assert s3.subgroup_generated([cycle, s3.locate((1, 0, 2))], bound=3) is None

    def test_closure_bound(self):
        """Closures larger than the bound raise"""
        with pytest.raises(ValueError):
            FiniteGroupTable.from_closure([(1, 2, 0), (1, 0, 2)], _compose, (0, 1, 2),
                                          lambda p: p, bound=3)

    def test_locate_unknown(self, s3):
        """Elements outside the table are rejected"""
        with pytest.raises(ValueError):
            s3.locate((0, 1, 2, 3))


class TestFinAbGroupWithAction:
    """Test finite abelian groups with an endomorphism"""

    def test_prime_power_factors(self):
        """12 splits as 4 * 3"""
        assert prime_power_factors(12) == [4, 3]
        assert prime_power_factors(27) == [27]

    def test_direct_double(self):
        """(Z/4)^2 is a direct double, Z/3 + Z/9 is not"""
        assert FinAbGroupWithAction.from_relations([[0, 4], [4, 0]], 2).is_direct_double()
        odd = FinAbGroupWithAction.from_relations([[3, 0], [0, 9]], 2)
        assert odd.invariant_factors == (3, 9)
        assert odd.prime_power_multiset() == [3, 9]
        assert not odd.is_direct_double()

    def test_multiplication_by_two(self):
        """t = 2 on Z/5 is a meridianal action with cyclic generator 1"""
        module = FinAbGroupWithAction.from_relations([[5]], 1, endomorphism=[[2]])
        assert module.action == ((2,),)
        assert module.is_automorphism()
        assert module.action_minus_identity_invertible()
        assert module.cyclic_generator() == (1,)
        assert module.orbit((1,)) == [(1,), (2,), (4,), (3,)]

    def test_identity_action(self):
        """t - 1 is zero for the identity action"""
        module = FinAbGroupWithAction.from_relations([[0, 4], [4, 0]], 2)
        assert not module.action_minus_identity_invertible()
        assert module.cyclic_generator() is None

    def test_infinite_group(self):
        """A rank-deficient relation matrix presents an infinite group"""
        with pytest.raises(ValueError):
            FinAbGroupWithAction.from_relations([[1, 0]], 2)


class TestAffineSubgroups:
    """Test canonical descriptions of generated subgroups"""

    def test_same_translation_lattice(self):
        """Two bases of Z^2 describe the same translation subgroup"""
        frame = normalizer_frame_p(1)
        a = describe_generated([AffineIso.translation_by((1, 0)), AffineIso.translation_by((0, 1))], frame)
        assert a.linear_order == 1
        assert subgroup_equals(a, [AffineIso.translation_by((1, 1)), AffineIso.translation_by((0, 1))], frame)
        assert a != describe_generated([AffineIso.translation_by((2, 0)), AffineIso.translation_by((0, 1))],
                                       frame)

    def test_contains(self):
        """Membership in a described subgroup"""
        frame = normalizer_frame_p(1)
        sub = describe_generated([AffineIso.translation_by((2, 0)), AffineIso.translation_by((0, 1))], frame)
        assert sub.contains(AffineIso.translation_by((4, -3)), frame)
        assert not sub.contains(AffineIso.translation_by((1, 0)), frame)

    def test_rejection_is_falsy(self):
        """Membership tests return typed rejections"""
        result = g6_membership(AffineIso.translation_by((Fraction(1, 2), 0, 0)))
        assert isinstance(result, Rejection)
        assert result.reason == 'bad-translation'
        assert not result


def _random_unimodular(rng: random.Random, n: int) -> list[list[int]]:
    """Product of random elementary integer row operations on the identity"""
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-3, 3)
        u[i] = [a + k * b for a, b in zip(u[i], u[j])]
        if rng.random() < 0.3:
            u[i], u[j] = u[j], [-a for a in u[i]]
    return u


class TestModuleInvariance:
    """Invariants of Z^n / rowspace(M) do not depend on the presentation"""

    @pytest.mark.parametrize('relations, factors, double', [
        ([[0, 4], [4, 0]], (4, 4), True),
        ([[3, 0], [0, 9]], (3, 9), False),
        ([[2, 0], [0, 6]], (2, 6), False),
        ([[6, 0], [0, 6]], (6, 6), True),
    ])
    def test_unimodular_change_of_presentation(self, relations, factors, double):
        """U M V presents the same group for unimodular U and V"""
        rng = random.Random(3)
        for _ in range(10):
            u, v = _random_unimodular(rng, 2), _random_unimodular(rng, 2)
            changed = int_matmul(int_matmul(u, relations), v)
            module = FinAbGroupWithAction.from_relations(changed, 2)
            assert module.invariant_factors == factors
            assert knot_invariants.is_direct_double(module) == double

    @pytest.mark.parametrize('relations, endomorphism, cyclic', [
        ([[5, 0], [0, 5]], [[0, 1], [1, 0]], True),
        ([[5, 0], [0, 5]], [[2, 0], [0, 2]], False),
        ([[0, 4], [4, 0]], None, False),
    ])
    def test_row_operations_keep_the_action(self, relations, endomorphism, cyclic):
        """Row operations on the relations keep the generators, so the same map acts"""
        rng = random.Random(4)
        for _ in range(10):
            changed = int_matmul(_random_unimodular(rng, 2), relations)
            module = FinAbGroupWithAction.from_relations(changed, 2, endomorphism=endomorphism)
            assert knot_invariants.lambda_cyclic(module) == cyclic
