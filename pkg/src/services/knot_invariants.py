"""
Knot invariants - commutator quotients with the meridian action, direct doubles,
Lambda-cyclicity and the doubly slice verdicts for G(+), G(-), pi(e, eta) and the
Fox knot group
"""
import logging
import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import sympy

from src.algebra.abelian import FinAbGroupWithAction
from src.services import flat_aut, nil_aut
from src.services.expressions import ExpressionError
from src.services.nil_group import gamma_build

logger = logging.getLogger(__name__)

FOX_RELATOR = (('t', 1), ('a', 1), ('t', -1), ('a', -1), ('a', -1))

_PI = re.compile(r'^\s*pi\s*\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)\s*$', re.IGNORECASE)


class FiniteModuleError(ValueError):
    """A finite-module test was given an infinite commutator quotient."""


@dataclass(frozen=True)
class KnotGroupDescriptor:
    family: str
    e: Optional[int] = None
    eta: Optional[int] = None

    @property
    def label(self) -> str:
        if self.family == 'pi':
            return f'pi({self.e},{self.eta})'
        return {'g+': 'G(+)', 'g-': 'G(-)', 'fox': 'Fox'}[self.family]

    @property
    def q(self) -> Optional[int]:
        return 3 * self.e - self.eta - 2 if self.family == 'pi' else None

    def meridianal_aut(self):
        """[ja], [jb] or r; None for the Fox knot group."""
        if self.family in ('g+', 'g-'):
            return flat_aut.meridian(self.family)
        if self.family == 'pi':
            return nil_aut.named_auts(gamma_build(self.e, self.eta))['r']
        return None

    def to_json(self) -> dict:
        data = {'family': self.family, 'label': self.label}
        if self.family == 'pi':
            data.update({'e': self.e, 'eta': self.eta, 'q': self.q})
        return data


def parse_descriptor(text: str) -> KnotGroupDescriptor:
    """
    Parse g+, g-, G(+), G(-), pi(e,eta) or fox.

    Raises:
        ExpressionError: unknown descriptor; GammaParameterError for invalid (e, eta)
    """
    cleaned = (text or '').strip().lower().replace(' ', '')
    if cleaned in ('g+', 'g(+)'):
        return KnotGroupDescriptor('g+')
    if cleaned in ('g-', 'g(-)'):
        return KnotGroupDescriptor('g-')
    if cleaned in ('fox', 'phi'):
        return KnotGroupDescriptor('fox')
    match = _PI.match(cleaned)
    if match:
        e, eta = int(match.group(1)), int(match.group(2))
        gamma_build(e, eta)
        return KnotGroupDescriptor('pi', e, eta)
    raise ExpressionError(f'unknown knot group descriptor {text!r}', 0)


@dataclass(frozen=True)
class InfiniteQuotient:
    """Commutator quotient with no finite form."""
    description: str
    alexander_polynomial: str

    def to_json(self) -> dict:
        return {'finite': False, 'description': self.description,
                'alexander_polynomial': self.alexander_polynomial}


CommutatorQuotient = Union[FinAbGroupWithAction, InfiniteQuotient]


def fox_alexander_polynomial():
    """
    Alexander polynomial of <a, t | t a t^-1 a^-2> from the free derivative of the
    relator in a, abelianized by a -> 1.
    """
    t = sympy.symbols('t')
    prefix = sympy.Integer(1)
    derivative = sympy.Integer(0)
    for name, sign in FOX_RELATOR:
        value = t if name == 't' else sympy.Integer(1)
        if sign < 0:
            value = 1 / value
        if name == 'a':
            derivative += prefix if sign > 0 else -prefix * value
        prefix = prefix * value
    return sympy.expand(derivative), t


def commutator_quotient(knot: KnotGroupDescriptor) -> CommutatorQuotient:
    """pi'/pi'' with the action of the meridian."""
    if knot.family == 'fox':
        poly, _ = fox_alexander_polynomial()
        return InfiniteQuotient('Z[1/2] with t acting as multiplication by 2', str(poly))
    phi = knot.meridianal_aut()
    if knot.family == 'pi':
        return nil_aut.h1_action(phi)
    return flat_aut.h1_action(phi)


def _finite(module: CommutatorQuotient) -> FinAbGroupWithAction:
    if isinstance(module, InfiniteQuotient):
        raise FiniteModuleError(f'commutator quotient is infinite ({module.description})')
    return module


def is_direct_double(module: CommutatorQuotient) -> bool:
    """Group-level test: the prime-power multiset pairs up as B + B."""
    return _finite(module).is_direct_double()


def lambda_cyclic(module: CommutatorQuotient) -> bool:
    return _finite(module).cyclic_generator() is not None


@dataclass(frozen=True)
class Verdict:
    knot: str
    doubly_slice: Optional[bool]
    reason: str
    evidence: dict

    def to_json(self) -> dict:
        return {'knot': self.knot, 'doubly_slice': self.doubly_slice,
                'reason': self.reason, 'evidence': self.evidence}


def doubly_slice_verdict(knot: KnotGroupDescriptor) -> Verdict:
    module = commutator_quotient(knot)
    if isinstance(module, InfiniteQuotient):
        poly, t = fox_alexander_polynomial()
        irreducible = sympy.Poly(poly, t).is_irreducible
        return Verdict(knot.label, False, 'alexander-polynomial',
                       {**module.to_json(), 'irreducible': bool(irreducible)})
    evidence = {
        **module.to_json(),
        'direct_double': module.is_direct_double(),
        'lambda_cyclic': module.cyclic_generator() is not None,
    }
    if knot.family == 'pi':
        evidence['q'] = knot.q
        if abs(knot.q) == 1:
            return Verdict(knot.label, True, 'known-doubly-slice', evidence)
        return Verdict(knot.label, False, 'not-direct-double', evidence)
    return Verdict(knot.label, False, 'lambda-cyclic-external', evidence)


def finite_commutator_row() -> Verdict:
    """Knots whose group has finite commutator subgroup; recorded by citation only."""
    return Verdict('finite commutator subgroup', None, 'finite-commutator-cited', {})


def q_solver(bound: int, eta: Optional[int] = None) -> list[tuple[int, int]]:
    """
    (e, eta) with e even, |e| <= bound and |3e - eta - 2| = 1.

    Odd e is skipped to mirror nil_group.check_parameters, which gamma_build calls
    and which rejects it; no integer e, odd or even, other than 0 reaches |q| = 1.
    """
    etas = (1, -1) if eta is None else (eta,)
    return sorted(
        (e, h) for e in range(-bound, bound + 1) if e % 2 == 0
        for h in etas if abs(3 * e - h - 2) == 1)


def default_descriptors(gamma_params: Sequence[tuple[int, int]]) -> list[KnotGroupDescriptor]:
    return ([KnotGroupDescriptor('g+'), KnotGroupDescriptor('g-')]
            + [KnotGroupDescriptor('pi', e, eta) for e, eta in gamma_params]
            + [KnotGroupDescriptor('fox')])


def verdict_table(descriptors: Sequence[KnotGroupDescriptor]) -> list[dict]:
    rows = []
    for knot in descriptors:
        verdict = doubly_slice_verdict(knot)
        logger.info('verdict %s: doubly slice %s (%s)', knot.label, verdict.doubly_slice, verdict.reason)
        rows.append(verdict.to_json())
    rows.append(finite_commutator_row().to_json())
    return rows
