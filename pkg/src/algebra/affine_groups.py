"""
Affine groups with finite linear part - conjugator solving and canonical
descriptions of generated subgroups.

An ambient group N is described by a TranslationFrame: its finite linear image and,
over each linear part B, the allowed translations offset(B) + basis @ k / scale with
k integral. Subgroups of N are described by their linear image, one translation
residue per linear part and the lattice of pure translations (all in k coordinates),
which is a canonical form: two subgroups are equal iff their descriptions are.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from src.algebra.exact_linear import (
    AffineIso,
    IntegerLattice,
    RatMatrix,
    Vector,
    solve_integer_system,
    vec_add,
    vec_scale,
    vec_sub,
    vector_to_json,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Rejection:
    """Negative outcome of a membership test."""
    reason: str
    detail: str = ''

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {'rejected': True, 'reason': self.reason, 'detail': self.detail}


@dataclass(frozen=True)
class TranslationFrame:
    linear_group: tuple[RatMatrix, ...]
    offsets: dict
    basis: RatMatrix
    scale: int

    @property
    def dim(self) -> int:
        return self.basis.rows

    def offset(self, linear: RatMatrix) -> Vector:
        return self.offsets[linear.int_key()]

    def contains_linear(self, linear: RatMatrix) -> bool:
        return linear.int_key() in self.offsets

    def coordinates(self, f: AffineIso) -> tuple[int, ...]:
        """k with f.translation = offset(B) + basis @ k / scale."""
        k = self.basis.inverse().scale(self.scale).apply(vec_sub(f.translation, self.offset(f.linear)))
        if any(a.denominator != 1 for a in k):
            raise ValueError('translation does not lie in the frame')
        return tuple(int(a) for a in k)

    def translation_coordinates(self, vec: Sequence) -> tuple[int, ...]:
        k = self.basis.inverse().scale(self.scale).apply(vec)
        if any(a.denominator != 1 for a in k):
            raise ValueError('translation does not lie in the frame')
        return tuple(int(a) for a in k)

    def translation(self, linear: RatMatrix, k: Sequence[int]) -> Vector:
        return vec_add(self.offset(linear), vec_scale(Fraction(1, self.scale), self.basis.apply(k)))

    def contains(self, f: AffineIso) -> bool:
        if not self.contains_linear(f.linear):
            return False
        try:
            self.coordinates(f)
        except ValueError:
            return False
        return True


@dataclass(frozen=True)
class ConjugatorSet:
    """All g in the frame with g o target o g^-1 == image."""
    target: AffineIso
    image: AffineIso
    representatives: tuple[AffineIso, ...]
    lattice_translations: tuple[Vector, ...]

    @property
    def is_empty(self) -> bool:
        return not self.representatives

    def generating_set(self) -> list[AffineIso]:
        return list(self.representatives) + [
            AffineIso.translation_by(t) for t in self.lattice_translations]

    def to_json(self) -> dict:
        return {
            'representatives': [r.to_json() for r in self.representatives],
            'lattice_translations': [vector_to_json(t) for t in self.lattice_translations],
        }


def conjugators(target: AffineIso, image: AffineIso, frame: TranslationFrame) -> ConjugatorSet:
    """
    Solve g o target o g^-1 == image for g = (w, B) in the frame.

    For each B with B A = C B the translation must satisfy (I - C) w = t' - B t; writing
    w = offset(B) + M k / scale this is an integer system in k whose kernel is the same
    for every B.
    """
    a, t = target.linear, target.translation
    c, t_img = image.linear, image.translation
    identity = RatMatrix.identity(frame.dim)
    system = (identity - c) @ frame.basis
    int_system = system.to_int_rows()
    representatives = []
    kernel: list[tuple[int, ...]] = []
    for b in frame.linear_group:
        if b @ a != c @ b:
            continue
        v_b = frame.offset(b)
        rhs = vec_scale(frame.scale, vec_sub(vec_sub(t_img, b.apply(t)), (identity - c).apply(v_b)))
        solution = solve_integer_system(int_system, rhs)
        if solution is None:
            continue
        k0, kernel = solution
        representatives.append(AffineIso(frame.translation(b, k0), b))
    if not representatives:
        # kernel is independent of B, so compute it once for the record
        solution = solve_integer_system(int_system, [0] * frame.dim)
        kernel = solution[1] if solution else []
    lattice = tuple(vec_scale(Fraction(1, frame.scale), frame.basis.apply(k)) for k in kernel)
    logger.debug('conjugator search: %d linear families, kernel rank %d',
                 len(representatives), len(kernel))
    return ConjugatorSet(target, image, tuple(representatives), lattice)


@dataclass(frozen=True)
class SubgroupDescription:
    cosets: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    lattice: IntegerLattice

    @property
    def linear_order(self) -> int:
        return len(self.cosets)

    def contains(self, f: AffineIso, frame: TranslationFrame) -> bool:
        residues = dict(self.cosets)
        key = f.linear.int_key()
        if key not in residues or not frame.contains(f):
            return False
        k = frame.coordinates(f)
        return self.lattice.contains([x - y for x, y in zip(k, residues[key])])

    def to_json(self) -> dict:
        return {
            'linear_order': self.linear_order,
            'cosets': [{'linear': list(lin), 'residue': list(res)} for lin, res in self.cosets],
            'lattice': self.lattice.to_json(),
        }


def describe_generated(generators: Iterable[AffineIso], frame: TranslationFrame) -> SubgroupDescription:
    """
    Canonical description of the subgroup generated inside the frame.

    A transversal over linear parts is grown breadth first; the Schreier elements
    s_A g s_{A B_g}^-1 are translations and span the translation subgroup.
    """
    generators = list(generators)
    dim = frame.dim
    transversal: dict = {RatMatrix.identity(dim).int_key(): AffineIso.identity(dim)}
    order = [RatMatrix.identity(dim).int_key()]
    position = 0
    schreier: list[tuple[int, ...]] = []
    while position < len(order):
        s_a = transversal[order[position]]
        for g in generators:
            product = s_a.compose(g)
            key = product.linear.int_key()
            if key not in transversal:
                transversal[key] = product
                order.append(key)
            else:
                residue = product.compose(transversal[key].inverse())
                schreier.append(frame.translation_coordinates(residue.translation))
        position += 1

    lattice = IntegerLattice.span(schreier, dim)
    cosets = []
    for key in sorted(transversal):
        k = frame.coordinates(transversal[key])
        cosets.append((key, tuple(int(a) for a in lattice.reduce(k))))
    return SubgroupDescription(tuple(cosets), lattice)


def centralizer(target: AffineIso, frame: TranslationFrame) -> SubgroupDescription:
    return describe_generated(conjugators(target, target, frame).generating_set(), frame)


def normalizer_of_cyclic(target: AffineIso, frame: TranslationFrame) -> SubgroupDescription:
    """
    Elements conjugating target to target or its inverse.

    This is the normalizer of the cyclic group when target has infinite order or order
    1, 2, 3, 4 or 6 (the only unit exponents are then +1 and -1).
    """
    commuting = conjugators(target, target, frame)
    inverting = conjugators(target, target.inverse(), frame)
    return describe_generated(commuting.generating_set() + list(inverting.representatives), frame)


def subgroup_equals(description: SubgroupDescription, generators: Iterable[AffineIso],
                    frame: TranslationFrame) -> bool:
    return description == describe_generated(generators, frame)


def first_inverting(target: AffineIso, frame: TranslationFrame) -> Optional[AffineIso]:
    inverting = conjugators(target, target.inverse(), frame)
    return inverting.representatives[0] if inverting.representatives else None
