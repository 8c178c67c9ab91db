"""
Hantzsche-Wendt group G6 - affine model, words, membership, characteristic
lattices and abelianization

G6 is generated inside Aff(3) by x = (e1/2, X) and y = ((e2 - e3)/2, Y); z = xy.
Translation exponents (m, n, p) of x^2m y^2n z^2p are the translation vector itself.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from src.algebra.abelian import FinAbGroupWithAction
from src.algebra.affine_groups import Rejection
from src.algebra.exact_linear import (
    AffineIso,
    IntegerLattice,
    RatMatrix,
    is_integral_vector,
    smith_normal_form,
    vec_sub,
    vector,
)
from src.services.expressions import G6_GROUP_LETTERS, Letter, expand_letters, parse_word

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

HOLONOMY = {
    'I': RatMatrix.identity(3),
    'X': RatMatrix.diagonal([1, -1, -1]),
    'Y': RatMatrix.diagonal([-1, 1, -1]),
    'Z': RatMatrix.diagonal([-1, -1, 1]),
}

# translation offset of the coset representative 1, x, y, z over each holonomy
COSET_OFFSETS = {
    'I': vector(0, 0, 0),
    'X': vector(HALF, 0, 0),
    'Y': vector(0, HALF, -HALF),
    'Z': vector(HALF, -HALF, HALF),
}

# coset letter -> exponents of (x, y) in the abelianization
COSET_H1 = {'I': (0, 0), 'X': (1, 0), 'Y': (0, 1), 'Z': (1, 1)}

GENERATORS = {
    'x': AffineIso(COSET_OFFSETS['X'], HOLONOMY['X']),
    'y': AffineIso(COSET_OFFSETS['Y'], HOLONOMY['Y']),
    'z': AffineIso(COSET_OFFSETS['Z'], HOLONOMY['Z']),
}

_HOLONOMY_BY_KEY = {m.int_key(): name for name, m in HOLONOMY.items()}


@dataclass(frozen=True)
class G6Element:
    value: AffineIso
    holonomy: str
    residue: tuple[int, ...]

    def __mul__(self, other: 'G6Element') -> 'G6Element':
        return classify(self.value.compose(other.value))

    def inverse(self) -> 'G6Element':
        return classify(self.value.inverse())

    @property
    def is_translation(self) -> bool:
        return self.holonomy == 'I'

    def to_json(self) -> dict:
        return {'holonomy': self.holonomy, 'residue': list(self.residue), 'value': self.value.to_json()}


def g6_membership(f: AffineIso) -> Union[G6Element, Rejection]:
    """
    Classify an affine map as an element of G6.

    Returns:
        G6Element, or a Rejection with reason 'dimension', 'bad-holonomy' or
        'bad-translation'
    """
    if f.dim != 3:
        return Rejection('dimension', f'expected dimension 3, got {f.dim}')
    holonomy = _HOLONOMY_BY_KEY.get(f.linear.int_key()) if f.linear.is_integral() else None
    if holonomy is None:
        return Rejection('bad-holonomy', 'linear part is not one of I, X, Y, Z')
    residue = vec_sub(f.translation, COSET_OFFSETS[holonomy])
    if not is_integral_vector(residue):
        return Rejection('bad-translation', f'translation is not in the {holonomy} coset of Z^3')
    return G6Element(f, holonomy, tuple(int(a) for a in residue))


def classify(f: AffineIso) -> G6Element:
    result = g6_membership(f)
    if isinstance(result, Rejection):
        raise ValueError(f'not an element of G6: {result.reason}')
    return result


def identity() -> G6Element:
    return classify(AffineIso.identity(3))


def translation_element(m: int, n: int, p: int) -> G6Element:
    """x^2m y^2n z^2p"""
    return classify(AffineIso.translation_by((m, n, p)))


def g6_eval(word: Union[str, Sequence[Letter]]) -> G6Element:
    """Evaluate a word in x, y, z (text or parsed letters)."""
    if isinstance(word, str):
        word = parse_word(word, G6_GROUP_LETTERS)
    result = AffineIso.identity(3)
    for name, _, sign in expand_letters(word):
        if name not in GENERATORS:
            raise ValueError(f'unknown G6 generator {name!r}')
        gen = GENERATORS[name]
        result = result.compose(gen if sign > 0 else gen.inverse())
    return classify(result)


def _check(name: str, passed: bool, **evidence) -> dict:
    return {'check': name, 'passed': bool(passed), **evidence}


def verify_g6_presentation() -> list[dict]:
    """Relators of the two-generator presentation plus the Zimmermann dictionary."""
    one = identity()
    checks = [
        _check('xy^2x^-1y^2 = 1', g6_eval('x y^2 x^-1 y^2') == one),
        _check('yx^2y^-1x^2 = 1', g6_eval('y x^2 y^-1 x^2') == one),
        _check('z = xy', g6_eval('x y') == g6_eval('z')),
    ]
    z_zimmermann = g6_eval('y x^-1')
    checks.append(_check('z_Z = y^2 z^-1', z_zimmermann == g6_eval('y^2 z^-1')))
    checks.append(_check('z_Z^2 = z^-2', z_zimmermann * z_zimmermann == g6_eval('z^-2')))
    return checks


T_LATTICE = IntegerLattice.full(3)
COMMUTATOR_LATTICE = IntegerLattice.span([(2, 0, 0), (0, 2, 0), (1, 1, -1)], 3)
DOUBLE_T_LATTICE = T_LATTICE.scaled(2)


def quotient_factors(sub: IntegerLattice, sup: IntegerLattice) -> list[int]:
    """Nontrivial invariant factors of sup / sub (equal ranks)."""
    coords = [sup.coordinates(b) for b in sub.basis]
    return [d for d in smith_normal_form(coords).invariant_factors if d != 1]


def g6_subgroup_lattices() -> dict:
    """T, the commutator subgroup and 2T in (x^2, y^2, z^2) exponent coordinates."""
    return {
        'T': T_LATTICE,
        'G6_prime': COMMUTATOR_LATTICE,
        '2T': DOUBLE_T_LATTICE,
        'chain': (DOUBLE_T_LATTICE.is_sublattice_of(COMMUTATOR_LATTICE)
                  and COMMUTATOR_LATTICE.is_sublattice_of(T_LATTICE)),
        'T/G6_prime': quotient_factors(COMMUTATOR_LATTICE, T_LATTICE),
        'G6_prime/2T': quotient_factors(DOUBLE_T_LATTICE, COMMUTATOR_LATTICE),
        'index_T_G6_prime': COMMUTATOR_LATTICE.index_in(T_LATTICE),
        'index_G6_prime_2T': DOUBLE_T_LATTICE.index_in(COMMUTATOR_LATTICE),
    }


def in_commutator_subgroup(g: G6Element) -> bool:
    return g.is_translation and COMMUTATOR_LATTICE.contains(g.residue)


# abelianized relators over (x, y) after z = x + y
H1_RELATIONS = [[0, 4], [4, 0]]


@lru_cache(maxsize=None)
def h1_g6() -> FinAbGroupWithAction:
    return FinAbGroupWithAction.from_relations(H1_RELATIONS, 2)


def exponent_image(g: G6Element) -> tuple[int, int]:
    """Exponents of (x, y) of the image of g in H1, before reduction."""
    m, n, p = g.residue
    rx, ry = COSET_H1[g.holonomy]
    return (2 * m + 2 * p + rx, 2 * n + 2 * p + ry)


def g6_abelianize(g: G6Element) -> tuple[int, ...]:
    """Coordinates of g in H1(G6) = (Z/4)^2."""
    return h1_g6().image(exponent_image(g))


def h1_matrix(images: dict) -> list[list[int]]:
    """Exponent rows of the images of x and y under an endomorphism."""
    return [list(exponent_image(images['x'])), list(exponent_image(images['y']))]
