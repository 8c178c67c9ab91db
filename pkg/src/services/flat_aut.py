"""
Automorphisms of G6 - the affine normalizer N, the 96-element Out(G6) table,
meridianal classes, centralizers, element orders, weight orbits and the exact
symmetry certificates of the knot groups G(+) and G(-)

Aut(G6) is identified with N = N_Aff(3)(G6): an automorphism is stored as the affine
map inducing it by conjugation, so composition of automorphisms is composition in Aff(3).
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import sympy

from src.algebra.abelian import FinAbGroupWithAction
from src.algebra.affine_groups import (
    Rejection,
    SubgroupDescription,
    TranslationFrame,
    conjugators,
    describe_generated,
)
from src.algebra.exact_linear import (
    AffineIso,
    RatMatrix,
    dot,
    fixed_set,
    to_sympy_vector,
    vector,
    vector_to_json,
)
from src.algebra.finite_group import FiniteGroupTable
from src.services import flat_group
from src.services.expressions import (
    G6_AUT_LETTERS,
    G6_GROUP_LETTERS,
    Letter,
    expand_letters,
    parse_word,
)
from src.services.flat_group import G6Element, GENERATORS, HOLONOMY, g6_membership

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

# P swaps e1 and e2 and negates e3; J sends e1 -> e3, e2 -> e1, e3 -> -e2
P_MATRIX = RatMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, -1]])
J_MATRIX = RatMatrix.from_rows([[0, 1, 0], [0, 0, -1], [1, 0, 0]])

NAMED_REPS = {
    'a': AffineIso(vector(0, 0, 0), -HOLONOMY['X']),
    'b': AffineIso(vector(0, 0, 0), -HOLONOMY['Y']),
    'c': AffineIso(vector(0, 0, 0), -HOLONOMY['Z']),
    'd': AffineIso(vector(HALF, 0, 0), RatMatrix.identity(3)),
    'e': AffineIso(vector(0, HALF, 0), RatMatrix.identity(3)),
    'f': AffineIso(vector(0, 0, HALF), RatMatrix.identity(3)),
    'i': AffineIso(vector(0, 0, -QUARTER), P_MATRIX),
    'j': AffineIso(vector(QUARTER, -QUARTER, 0), J_MATRIX),
}

# rotation axes of the meridianal linear parts -JX and -JY
AXES = {
    'plus': vector(1, 1, -1),
    'minus': vector(1, -1, 1),
}
MERIDIAN_WORDS = {'plus': 'ja', 'minus': 'jb'}

_FAMILY_ALIASES = {'plus': 'plus', '+': 'plus', 'g+': 'plus',
                   'minus': 'minus', '-': 'minus', 'g-': 'minus'}


class AutomorphismError(ValueError):
    """An automorphism is malformed, or two computed criteria disagree."""


class WeightOrbitError(ValueError):
    """Input outside the commutator subgroup, or an orbit search ran out of room."""


def family_name(family: str) -> str:
    if family not in _FAMILY_ALIASES:
        raise WeightOrbitError(f'unknown family {family!r}; expected plus or minus')
    return _FAMILY_ALIASES[family]


@dataclass(frozen=True)
class G6Automorphism:
    rep: AffineIso
    name: str = field(default='', compare=False)

    def compose(self, other: 'G6Automorphism') -> 'G6Automorphism':
        return G6Automorphism(self.rep.compose(other.rep), self.name + other.name)

    __mul__ = compose

    def inverse(self) -> 'G6Automorphism':
        return G6Automorphism(self.rep.inverse(), f'({self.name})^-1' if self.name else '')

    def power(self, n: int) -> 'G6Automorphism':
        return G6Automorphism(self.rep.power(n), f'({self.name})^{n}' if self.name else '')

    def __call__(self, g: G6Element) -> G6Element:
        return aut_apply(self, g)

    @property
    def det(self) -> int:
        return int(self.rep.linear.det())

    def to_json(self) -> dict:
        return {'name': self.name, 'rep': self.rep.to_json()}


def normalizer_membership(f: AffineIso) -> Union[G6Automorphism, Rejection]:
    """Accept f iff conjugation by f maps x and y into G6."""
    if f.dim != 3:
        return Rejection('dimension', f'expected dimension 3, got {f.dim}')
    for name in ('x', 'y'):
        image = f.conjugate(GENERATORS[name])
        result = g6_membership(image)
        if isinstance(result, Rejection):
            return Rejection('not-normalizing', f'conjugate of {name} is not in G6: {result.reason}')
    return G6Automorphism(f)


def _named(f: AffineIso, name: str) -> G6Automorphism:
    result = normalizer_membership(f)
    if isinstance(result, Rejection):
        raise AutomorphismError(f'{name or "map"} does not normalize G6: {result.detail}')
    return G6Automorphism(f, name)


def aut_from_word(word: Union[str, Sequence[Letter]]) -> G6Automorphism:
    """
    Compose named automorphisms; x, y and z stand for the inner automorphisms they induce.

    Args:
        word: text such as "j*a" or "d^2ja", or parsed letters
    """
    if isinstance(word, str):
        text = word
        word = parse_word(word, G6_AUT_LETTERS + G6_GROUP_LETTERS)
    else:
        text = ''.join(letter.format() for letter in word)
    rep = AffineIso.identity(3)
    for name, _, sign in expand_letters(word):
        if name in NAMED_REPS:
            gen = NAMED_REPS[name]
        elif name in GENERATORS:
            gen = GENERATORS[name]
        else:
            raise AutomorphismError(f'unknown automorphism letter {name!r}')
        rep = rep.compose(gen if sign > 0 else gen.inverse())
    return _named(rep, text.replace(' ', ''))


def identity_aut() -> G6Automorphism:
    return G6Automorphism(AffineIso.identity(3), '1')


def aut_apply(phi: G6Automorphism, g: G6Element) -> G6Element:
    """phi(g) = rep o g o rep^-1"""
    result = g6_membership(phi.rep.conjugate(g.value))
    if isinstance(result, Rejection):
        raise AutomorphismError(f'automorphism image left G6: {result.reason}')
    return result


def inner(g: G6Element) -> G6Automorphism:
    return G6Automorphism(g.value, 'c_g')


def _check(name: str, passed: bool, **evidence) -> dict:
    return {'check': name, 'passed': bool(passed), **evidence}


AUT_RELATIONS = [
    ('a^2', ''), ('b^2', ''), ('c^2', ''),
    ('ada', 'd^-1'), ('ae', 'ea'), ('af', 'fa'),
    ('bd', 'db'), ('beb', 'e^-1'), ('bf', 'fb'),
    ('cd', 'dc'), ('ce', 'ec'), ('cfc', 'f^-1'),
    ('ab', 'ba'), ('ac', 'ca'), ('bc', 'cb'),
    ('de', 'ed'), ('df', 'fd'), ('ef', 'fe'),
    ('bcd', 'x'), ('acef', 'y'),
    ('j^3', 'abce'),
    ('jaj^-1', 'c'), ('jbj^-1', 'ad^-1'), ('jcj^-1', 'be'),
    ('jdj^-1', 'f'), ('jej^-1', 'd'), ('jfj^-1', 'e^-1'),
    ('i^2', ''), ('idi', 'e'), ('iei', 'd'), ('ifi', 'f^-1'),
    ('iai', 'b'), ('ibi', 'a'), ('ici', 'cf'), ('jiji', 'd'),
]


def verify_aut_presentation() -> list[dict]:
    """Every displayed relation among a..j, as identities of affine maps."""
    checks = [
        _check(f'{lhs} = {rhs or "1"}', aut_from_word(lhs) == aut_from_word(rhs))
        for lhs, rhs in AUT_RELATIONS
    ]
    c_y = aut_from_word('acef')
    checks.append(_check(
        'acef acts as conjugation by y',
        all(aut_apply(c_y, g) == flat_group.g6_eval('y') * g * flat_group.g6_eval('y^-1')
            for g in (flat_group.g6_eval('x'), flat_group.g6_eval('y'))),
    ))
    c_x = aut_from_word('bcd')
    checks.append(_check(
        'bcd acts as conjugation by x',
        all(aut_apply(c_x, g) == flat_group.g6_eval('x') * g * flat_group.g6_eval('x^-1')
            for g in (flat_group.g6_eval('x'), flat_group.g6_eval('y'))),
    ))
    return checks


# Out(G6) ---------------------------------------------------------------------
#
# N/T is handled in integer form: (signed permutation as a flat 3x3 tuple,
# translation in quarter units mod 4). Membership in N only depends on the
# translation mod Z^3.

Quarter = tuple[tuple[int, ...], tuple[int, ...]]


def _imatmul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(a[3 * i + k] * b[3 * k + j] for k in range(3)) for i in range(3) for j in range(3))


def _iapply(a: tuple[int, ...], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a[3 * i + k] * v[k] for k in range(3)) for i in range(3))


def _itranspose(a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[3 * j + i] for i in range(3) for j in range(3))


def qmul(f: Quarter, g: Quarter) -> Quarter:
    a, s = f
    b, t = g
    return _imatmul(a, b), tuple((x + y) % 4 for x, y in zip(s, _iapply(a, t)))


def qinverse(f: Quarter) -> Quarter:
    a, s = f
    inv = _itranspose(a)
    return inv, tuple((-x) % 4 for x in _iapply(inv, s))


def to_quarter(f: AffineIso) -> Quarter:
    quarters = [4 * a for a in f.translation]
    if any(q.denominator != 1 for q in quarters):
        raise AutomorphismError('translation is not in 1/4 Z^3')
    return f.linear.int_key(), tuple(int(q) % 4 for q in quarters)


_Q_IDENTITY: Quarter = (RatMatrix.identity(3).int_key(), (0, 0, 0))
_Q_COSETS = [_Q_IDENTITY] + [to_quarter(GENERATORS[n]) for n in ('x', 'y', 'z')]
_Q_HOLONOMY = {to_quarter(GENERATORS[n])[0]: to_quarter(GENERATORS[n])[1] for n in ('x', 'y', 'z')}
_Q_HOLONOMY[_Q_IDENTITY[0]] = (0, 0, 0)


def _q_in_g6(f: Quarter) -> bool:
    lin, t = f
    return lin in _Q_HOLONOMY and _Q_HOLONOMY[lin] == t


def q_normalizes(f: Quarter) -> bool:
    inv = qinverse(f)
    return all(_q_in_g6(qmul(qmul(f, q), inv)) for q in _Q_COSETS[1:3])


def out_key(f: Quarter) -> Quarter:
    """Canonical label of the outer class: least of the four coset translates."""
    return min(qmul(f, r) for r in _Q_COSETS)


def signed_permutations() -> list[RatMatrix]:
    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            rows = [[0] * 3 for _ in range(3)]
            for i, (j, s) in enumerate(zip(perm, signs)):
                rows[i][j] = s
            out.append(RatMatrix.from_rows(rows))
    return sorted(out, key=lambda m: m.int_key())


@lru_cache(maxsize=None)
def normalizer_mod_translations() -> tuple[Quarter, ...]:
    """All of N/T: signed permutations with quarter translations passing the normalizer test."""
    elements = []
    for lin in signed_permutations():
        key = lin.int_key()
        for t in itertools.product(range(4), repeat=3):
            if q_normalizes((key, t)):
                elements.append((key, t))
    logger.info('enumerated N/T: %d elements', len(elements))
    return tuple(elements)


def _holonomy_name(lin: tuple[int, ...]) -> str:
    for name, m in HOLONOMY.items():
        if m.int_key() == lin:
            return name
    raise AutomorphismError('matrix is not a holonomy matrix')


def gl2_image(f: Quarter) -> tuple[str, str, str]:
    """Images of X, Y, Z under conjugation by the linear part (the action on G6/T)."""
    lin = f[0]
    inv = _itranspose(lin)
    return tuple(_holonomy_name(_imatmul(_imatmul(lin, HOLONOMY[h].int_key()), inv))
                 for h in ('X', 'Y', 'Z'))


def _permutation_order(images: tuple[str, ...]) -> int:
    mapping = dict(zip(('X', 'Y', 'Z'), images))
    order, current = 1, dict(mapping)
    while any(current[h] != h for h in current):
        current = {h: mapping[current[h]] for h in current}
        order += 1
    return order


@dataclass
class OutG6Table:
    group: FiniteGroupTable
    words: list[str]
    generator_index: dict[str, int]
    nt_order: int

    @property
    def order(self) -> int:
        return self.group.order

    def class_of(self, phi: G6Automorphism) -> int:
        return self.group.locate(to_quarter(phi.rep))

    def label(self, index: int) -> str:
        return self.words[index] or '1'

    def representative(self, index: int) -> G6Automorphism:
        return aut_from_word(self.words[index])

    def gl2(self, index: int) -> tuple[str, str, str]:
        return gl2_image(self.group.elements[index])

    def gl2_kernel(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.order) if self.gl2(i) == ('X', 'Y', 'Z'))

    def classes_of(self, words: Sequence[str]) -> list[int]:
        return [self.class_of(aut_from_word(w)) for w in words]

    def to_json(self) -> dict:
        data = self.group.to_json([self.label(i) for i in range(self.order)])
        data['gl2_images'] = [list(self.gl2(i)) for i in range(self.order)]
        return data


def _shortest_words(group: FiniteGroupTable, generators: dict[str, int]) -> list[str]:
    words: list[Optional[str]] = [None] * group.order
    words[0] = ''
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for letter, g in generators.items():
                b = group.mul(a, g)
                if words[b] is None:
                    words[b] = words[a] + letter
                    nxt.append(b)
        frontier = nxt
    return [w or '' for w in words]


@lru_cache(maxsize=None)
def out_g6() -> OutG6Table:
    """Out(G6) = (N/T) / (G6/T) as an explicit table."""
    generators = [to_quarter(NAMED_REPS[name]) for name in G6_AUT_LETTERS]
    group = FiniteGroupTable.from_closure(generators, qmul, _Q_IDENTITY, out_key)
    generator_index = {name: group.locate(q) for name, q in zip(G6_AUT_LETTERS, generators)}
    words = _shortest_words(group, generator_index)
    table = OutG6Table(group, words, generator_index, len(normalizer_mod_translations()))
    logger.info('Out(G6) table: order %d, |N/T| = %d', table.order, table.nt_order)
    return table


def out_g6_summary() -> dict:
    table = out_g6()
    group = table.group
    center = group.center()
    kernel = table.gl2_kernel()
    abce = table.classes_of(['a', 'b', 'c', 'e'])
    return {
        'order': table.order,
        'nt_order': table.nt_order,
        'center': [table.label(i) for i in center],
        'center_is_1_ab': set(center) == {0, table.class_of(aut_from_word('ab'))},
        'gl2_surjective': len({table.gl2(i) for i in range(table.order)}) == 6,
        'gl2_kernel_order': len(kernel),
        'gl2_kernel_is_abce': set(kernel) == set(group.subgroup_generated(abce)),
        'd_equals_bc': table.class_of(aut_from_word('d')) == table.class_of(aut_from_word('bc')),
        'f_equals_ace': table.class_of(aut_from_word('f')) == table.class_of(aut_from_word('ace')),
        'order_profile': group.order_profile(),
    }


OUT_RELATIONS = [
    ('a^2', ''), ('b^2', ''), ('c^2', ''), ('e^2', ''), ('i^2', ''), ('j^6', ''),
    ('ab', 'ba'), ('ac', 'ca'), ('ae', 'ea'), ('bc', 'cb'), ('be', 'eb'), ('ce', 'ec'),
    ('iai', 'b'), ('ici', 'ae'),
    ('jaj^-1', 'c'), ('jbj^-1', 'abc'), ('jcj^-1', 'be'), ('jej^-1', 'bc'),
    ('j^3', 'abce'), ('(ji)^2', 'bc'),
]

# Zimmermann's generators of Out(G6), with x standing for the inner automorphism c_x
ZIMMERMANN_GENERATORS = ['d^-1', 'e^-1', 'f^-1', 'xade', 'ideab', 'j^-1i^-1xadf']


def verify_out_presentation() -> list[dict]:
    table = out_g6()
    checks = [
        _check(f'[{lhs}] = [{rhs or "1"}]',
               table.class_of(aut_from_word(lhs)) == table.class_of(aut_from_word(rhs)))
        for lhs, rhs in OUT_RELATIONS
    ]
    generated = table.group.subgroup_generated(table.classes_of(ZIMMERMANN_GENERATORS))
    checks.append(_check('Zimmermann generators span Out(G6)', len(generated) == table.order,
                         generated_order=len(generated)))
    return checks


def out_g6_complement_search() -> dict:
    """
    Look for a subgroup of order 12 meeting the image of <d, e, f> trivially.

    Every group of order 12 is 2-generated, so pairs of elements suffice.
    """
    table = out_g6()
    group = table.group
    kernel = group.subgroup_generated(table.classes_of(['d', 'e', 'f']))
    target = group.order // len(kernel)
    for g in range(group.order):
        for h in range(g, group.order):
            sub = group.subgroup_generated([g, h], bound=target)
            if sub is not None and len(sub) == target and sub & kernel == {0}:
                return {
                    'image_order': len(kernel),
                    'complement_found': True,
                    'complement': sorted(table.label(i) for i in sub),
                    'generators': [table.label(g), table.label(h)],
                }
    return {'image_order': len(kernel), 'complement_found': False}


# Meridianal automorphisms ----------------------------------------------------

def h1_action(phi: G6Automorphism) -> FinAbGroupWithAction:
    images = {name: aut_apply(phi, flat_group.g6_eval(name)) for name in ('x', 'y')}
    return FinAbGroupWithAction.from_relations(
        flat_group.H1_RELATIONS, 2, endomorphism=flat_group.h1_matrix(images))


def is_meridianal(phi: G6Automorphism) -> bool:
    """Order-3 image in GL(2, F2), cross-checked against invertibility of H1(phi) - 1."""
    by_gl2 = _permutation_order(gl2_image(to_quarter(phi.rep))) == 3
    by_h1 = h1_action(phi).action_minus_identity_invertible()
    if by_gl2 != by_h1:
        raise AutomorphismError(
            f'meridianal criteria disagree for {phi.name or "automorphism"}: '
            f'GL(2,2) says {by_gl2}, H1 says {by_h1}')
    return by_h1


def meridianal_classes() -> list[dict]:
    """
    Meridianal outer classes grouped up to conjugacy and inversion.

    Each entry carries the orientation sign (det of the linear part) and the class of
    the cube; orientation-preserving entries are the knot groups G(+) and G(-).
    """
    table = out_g6()
    group = table.group
    preferred = table.classes_of(['ja', 'jb', 'j'])
    meridianal = [i for i in range(group.order) if is_meridianal(table.representative(i))]
    seen: set[int] = set()
    groups = []
    for i in meridianal:
        if i in seen:
            continue
        members = set(group.conjugacy_class(i)) | set(group.conjugacy_class(group.inverse(i)))
        seen |= members
        rep = next((p for p in preferred if p in members), min(members))
        cube = group.power(rep, 3)
        groups.append({
            'representative': table.label(rep),
            'index': rep,
            'members': sorted(table.label(m) for m in members),
            'size': len(members),
            'orientation': table.representative(rep).det,
            'cube': table.label(cube),
            'cube_trivial': cube == 0,
        })
    logger.info('found %d meridianal groups among %d meridianal classes', len(groups), len(meridianal))
    return groups


# Centralizers and normalizers ------------------------------------------------

@lru_cache(maxsize=None)
def normalizer_frame() -> TranslationFrame:
    """N as a frame: over each signed permutation B the translations are v_B + 1/2 Z^3."""
    offsets: dict = {}
    for lin, t in normalizer_mod_translations():
        if lin not in offsets:
            offsets[lin] = tuple(Fraction(a % 2, 4) for a in t)
    linear_group = tuple(m for m in signed_permutations() if m.int_key() in offsets)
    return TranslationFrame(linear_group, offsets, RatMatrix.identity(3), 2)


def centralizer(phi: G6Automorphism) -> SubgroupDescription:
    frame = normalizer_frame()
    return describe_generated(conjugators(phi.rep, phi.rep, frame).generating_set(), frame)


def normalizer_cyclic(phi: G6Automorphism) -> SubgroupDescription:
    frame = normalizer_frame()
    commuting = conjugators(phi.rep, phi.rep, frame)
    inverting = conjugators(phi.rep, phi.rep.inverse(), frame)
    return describe_generated(commuting.generating_set() + list(inverting.representatives), frame)


def generated_subgroup(words: Sequence[str]) -> SubgroupDescription:
    return describe_generated([aut_from_word(w).rep for w in words], normalizer_frame())


def inverting_element(phi: G6Automorphism) -> Optional[G6Automorphism]:
    found = conjugators(phi.rep, phi.rep.inverse(), normalizer_frame())
    if found.is_empty:
        return None
    return G6Automorphism(found.representatives[0])


def orientation_character(psi: G6Automorphism, phi: G6Automorphism) -> int:
    """det(psi) times +1 if psi commutes with phi, -1 if it inverts phi."""
    conj = psi.rep.conjugate(phi.rep)
    if conj == phi.rep:
        direction = 1
    elif conj == phi.rep.inverse():
        direction = -1
    else:
        raise AutomorphismError('element neither commutes with nor inverts the meridian')
    return psi.det * direction


def orientation_preserving_normalizer(phi: G6Automorphism) -> SubgroupDescription:
    frame = normalizer_frame()
    commuting = conjugators(phi.rep, phi.rep, frame)
    inverting = conjugators(phi.rep, phi.rep.inverse(), frame)
    kept = [r for r in commuting.representatives if r.linear.det() == 1]
    kept += [r for r in inverting.representatives if r.linear.det() == -1]
    kept += [AffineIso.translation_by(t) for t in commuting.lattice_translations]
    return describe_generated(kept, frame)


def element_order(phi: G6Automorphism) -> Optional[int]:
    """Order of phi in Aut(G6); None when it is infinite."""
    power = phi.rep
    for n in range(1, 49):
        if power.linear.is_identity():
            return n if all(a == 0 for a in power.translation) else None
        power = power.compose(phi.rep)
    raise AutomorphismError('linear part did not return to the identity within 48 steps')


def format_order(order: Optional[int]) -> str:
    return 'infinite' if order is None else str(order)


# Weight orbits ---------------------------------------------------------------

def meridian(family: str) -> G6Automorphism:
    return aut_from_word(MERIDIAN_WORDS[family_name(family)])


def weight_orbit_normal_form(g: G6Element, family: str) -> dict:
    """
    lambda(g) for g in G6' together with the conjugator certificate
    w^-1 g phi w = x^(2 lambda) phi in Aff(3).
    """
    fam = family_name(family)
    if not flat_group.in_commutator_subgroup(g):
        raise WeightOrbitError('element is not in the commutator subgroup of G6')
    m, n, p = g.residue
    value = int(dot(AXES[fam], g.residue))
    conjugator = (p, n, 0) if fam == 'plus' else (-p, n, 0)
    phi = meridian(fam).rep
    target = AffineIso.translation_by((value, 0, 0)).compose(phi)

    def certified(shift) -> bool:
        w = AffineIso.translation_by(shift)
        return w.inverse().compose(g.value).compose(phi).compose(w) == target

    return {
        'family': fam,
        'exponents': [m, n, p],
        'lambda': value,
        'representative': f'x^{2 * value}t',
        'conjugator': [conjugator[0], conjugator[1], 0],
        'conjugator_word': f'x^{2 * conjugator[0]}y^{2 * conjugator[1]}',
        'certificate': certified(conjugator),
        'printed_conjugator_certificate': certified((n, p, 0)),
    }


def twisted_class_invariant(h: G6Element, family: str) -> int:
    """
    Complete invariant of h under h -> w h phi(w)^-1: lambda of the unique
    holonomy-free representative w0^-1 h phi(w0), w0 in {1, x, y, z}.
    """
    fam = family_name(family)
    phi = meridian(fam)
    for w in [AffineIso.identity(3)] + [GENERATORS[n] for n in ('x', 'y', 'z')]:
        candidate = w.inverse().compose(h.value).compose(phi.rep.conjugate(w))
        if candidate.is_translation:
            return int(dot(AXES[fam], candidate.translation))
    raise AutomorphismError('no holonomy-free twisted conjugate found')


def orbit_map(psi: G6Automorphism, family: str) -> Optional[tuple[int, int]]:
    """
    The affine map lambda -> eps * lambda + c induced on x^(2 lambda) t by psi, or None
    when psi does not commute with the meridian modulo inner automorphisms.
    """
    fam = family_name(family)
    phi = meridian(fam)
    k = g6_membership(psi.rep.compose(phi.rep).compose(psi.rep.inverse()).compose(phi.rep.inverse()))
    if isinstance(k, Rejection):
        return None

    def image(lam: int) -> int:
        return twisted_class_invariant(aut_apply(psi, flat_group.translation_element(lam, 0, 0)) * k, fam)

    c = image(0)
    eps = image(1) - c
    if eps not in (1, -1) or any(image(lam) != eps * lam + c for lam in (2, -1, 3)):
        raise AutomorphismError(f'orbit map of {psi.name or "automorphism"} is not affine of slope +-1')
    return eps, c


def _close_affine_maps(maps: Sequence[tuple[int, int]], bound: int = 16) -> set[tuple[int, int]]:
    group = {(1, 0)}
    frontier = [(1, 0)]
    while frontier:
        nxt = []
        for e1, c1 in frontier:
            for e2, c2 in maps:
                composed = (e1 * e2, e1 * c2 + c1)
                if composed not in group:
                    group.add(composed)
                    nxt.append(composed)
                    if len(group) > bound:
                        raise WeightOrbitError('orbit maps generate an infinite group')
        frontier = nxt
    return group


def strict_orbit_maps(family: str) -> dict:
    """Orbit maps induced by the centralizer of the meridianal class in Out(G6)."""
    fam = family_name(family)
    table = out_g6()
    phi_class = table.class_of(meridian(fam))
    entries = []
    for index in table.group.centralizer(phi_class):
        psi = table.representative(index)
        result = orbit_map(psi, fam)
        if result is None:
            raise AutomorphismError(f'{table.label(index)} commutes in Out but not modulo inner')
        entries.append({'psi': table.label(index), 'epsilon': result[0], 'offset': result[1]})
    maps = sorted({(e['epsilon'], e['offset']) for e in entries})
    return {
        'family': fam,
        'centralizer_order': len(entries),
        'maps': entries,
        'group': sorted(_close_affine_maps(maps)),
    }


def orbit_normal_form(value: int, family: str) -> int:
    """Canonical lambda in the strict orbit of x^(2 value) t: the largest orbit member."""
    group = strict_orbit_maps(family)['group']
    return max(e * value + c for e, c in group)


def weight_orbit_invariance_check(family: str, generators: Optional[Sequence[str]] = None) -> dict:
    """
    For each generator psi: does it commute with the meridian modulo inner automorphisms,
    is lambda invariant as a linear functional, and which orbit map does it induce.
    """
    fam = family_name(family)
    if generators is None:
        if fam == 'plus':
            generators = ['def^-1', 'jb', 'ce']
        else:
            table = out_g6()
            centre = table.group.centralizer(table.class_of(meridian(fam)))
            generators = [table.label(i) for i in centre if i != 0]
    axis = AXES[fam]
    results = []
    for word in generators:
        psi = aut_from_word(word)
        transposed = psi.rep.linear.transpose()
        linear_invariant = transposed.apply(axis) == axis
        mapping = orbit_map(psi, fam)
        results.append({
            'psi': word,
            'commutes_mod_inner': mapping is not None,
            'linear_invariant': linear_invariant,
            'orbit_map': None if mapping is None else {'epsilon': mapping[0], 'offset': mapping[1]},
            'preserved': mapping == (1, 0),
        })
    return {'family': fam, 'generators': results, 'all_preserved': all(r['preserved'] for r in results)}


# Symmetry certificates -------------------------------------------------------

def _sympy_apply(f: AffineIso, point: Sequence) -> list:
    return list(f.linear.to_sympy() * sympy.Matrix(point) + to_sympy_vector(f.translation))


def gamma_section(s) -> list:
    """((2s - 1)/8)(e1 - e2) - e3/8, symbolic in s."""
    k = (2 * s - 1) / sympy.Integer(8)
    return [k, -k, -sympy.Rational(1, 8)]


def symmetry_certificates() -> list[dict]:
    ja = aut_from_word('ja').rep
    jb = aut_from_word('jb').rep
    omega = aut_from_word('abcd^-1f').rep
    p = vector(QUARTER, 0, -QUARTER)
    iab = aut_from_word('iab').rep
    ice = aut_from_word('ice').rep
    identity = AffineIso.identity(3)
    axis_point = vector(Fraction(1, 8), Fraction(-1, 8), Fraction(-1, 8))

    s = sympy.Symbol('s')
    gamma = gamma_section(s)
    i_gamma = _sympy_apply(NAMED_REPS['i'], gamma)
    gamma_swapped = gamma_section(1 - s)

    ja_line = fixed_set(ja)
    checks = [
        _check('omega = abcd^-1f = (2p, -I)',
               omega == AffineIso(tuple(2 * a for a in p), -RatMatrix.identity(3))),
        _check('omega = abce (ice)^-2', omega == aut_from_word('abce(ice)^-2').rep),
        _check('omega^2 = 1', omega.compose(omega) == identity),
        _check('omega ja = ja omega', omega.compose(ja) == ja.compose(omega)),
        _check('omega(p) = ja(p) = p', omega.apply(p) == p and ja.apply(p) == p),
        _check('(iab)^2 = 1', iab.compose(iab) == identity),
        _check('(iab) ja (iab)^-1 = (ja)^-1', iab.conjugate(ja) == ja.inverse()),
        _check('iab fixes lambda(1/8)', iab.apply(axis_point) == axis_point),
        _check('(ice)^2 = def^-1', ice.compose(ice) == aut_from_word('def^-1').rep),
        _check('def^-1 has infinite order', element_order(aut_from_word('def^-1')) is None),
        _check('finite-order elements of <ja, ice> do not invert ja',
               inverting_element_of_finite_order(['ja', 'ice']) is None),
        _check('fixed line of ja through -e2/4 along e1+e2-e3',
               ja_line is not None and ja_line.dimension == 1
               and ja_line.contains(vector(0, -QUARTER, 0))
               and ja_line.directions[0] == vector(1, 1, -1),
               fixed_set=ja_line.to_json() if ja_line else None),
        _check('i(gamma(s)) = gamma(1 - s)',
               all(sympy.simplify(a - b) == 0 for a, b in zip(i_gamma, gamma_swapped))),
        _check('jb(gamma(0)) = gamma(1)',
               [sympy.nsimplify(v) for v in _sympy_apply(jb, gamma_section(sympy.Integer(0)))]
               == [sympy.nsimplify(v) for v in gamma_section(sympy.Integer(1))]),
        _check('jb is fixed-point free', fixed_set(jb) is None),
    ]
    return checks


def inverting_element_of_finite_order(words: Sequence[str], radius: int = 3) -> Optional[str]:
    """
    Search words of bounded length in the given generators for a finite-order element
    inverting ja.
    """
    ja = aut_from_word('ja').rep
    letters = list(words) + [f'({w})^-1' for w in words]
    for length in range(1, radius + 1):
        for combo in itertools.product(letters, repeat=length):
            candidate = aut_from_word('*'.join(f'({w})' for w in combo))
            if element_order(candidate) is not None and candidate.rep.conjugate(ja) == ja.inverse():
                return '*'.join(combo)
    return None


def twist_spin_obstruction(n: int) -> dict:
    """(d^2n jb)^3 = (de^-1f)^(2n+1), so d^2n jb has infinite order."""
    phi = aut_from_word(f'd^{2 * n}jb')
    cube = phi.power(3)
    expected = aut_from_word(f'(de^-1f)^{2 * n + 1}')
    return {
        'n': n,
        'cube_identity': cube == expected,
        'order': format_order(element_order(phi)),
        'cube_translation': vector_to_json(cube.rep.translation),
    }


def describe(description: SubgroupDescription) -> dict:
    data = description.to_json()
    data['orientable'] = all(RatMatrix.from_rows([lin[0:3], lin[3:6], lin[6:9]]).det() == 1
                             for lin, _ in description.cosets)
    return data
