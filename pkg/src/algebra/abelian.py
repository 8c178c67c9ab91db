"""
Finite abelian groups with an endomorphism - invariant-factor form from a
relation matrix, induced maps, and module-level tests used by the knot invariants.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from src.algebra.exact_linear import RatMatrix, smith_normal_form

logger = logging.getLogger(__name__)


def prime_power_factors(n: int) -> list[int]:
    """12 -> [4, 3]"""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FinAbGroupWithAction:
    """
    Z/d1 + ... + Z/dk (di > 1, di | di+1) with an integer action matrix.

    Coordinates are column vectors; `action` acts on the left and row i is read
    modulo d_i. `generator_images` are the coordinates of the presenting generators.
    """
    invariant_factors: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]
    generator_images: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]], n_generators: int,
                       endomorphism: Optional[Sequence[Sequence[int]]] = None
                       ) -> 'FinAbGroupWithAction':
        """
        Abelian group Z^n / rowspace(relations), optionally with an induced map.

        Args:
            relations: one exponent row per relator
            n_generators: number of generators (columns)
            endomorphism: row k is the exponent vector of the image of generator k

        Returns:
            FinAbGroupWithAction in invariant-factor form; raises ValueError when the
            presented group is infinite
        """
        rows = [list(r) for r in relations]
        if any(len(r) != n_generators for r in rows):
            raise ValueError('relation rows must have one entry per generator')
        snf = smith_normal_form(rows)
        factors = list(snf.invariant_factors) + [0] * (n_generators - len(snf.invariant_factors))
        if any(d == 0 for d in factors):
            raise ValueError(f'presented abelian group is infinite (factors {factors})')

        right = [list(r) for r in snf.right]
        keep = [i for i, d in enumerate(factors) if d != 1]
        kept_factors = tuple(factors[i] for i in keep)

        # generator k has new coordinates (row k of right), reduced mod the factors
        images = tuple(
            tuple(right[k][i] % factors[i] for i in keep) for k in range(n_generators))

        if endomorphism is None:
            action = tuple(tuple(1 if a == b else 0 for b in range(len(keep))) for a in range(len(keep)))
        else:
            phi = RatMatrix.from_rows(endomorphism)
            r_mat = RatMatrix.from_rows(right)
            conj = (r_mat.inverse() @ phi @ r_mat).to_int_rows()
            # row-vector convention conj; transpose for column action
            action = tuple(
                tuple(conj[j][i] % factors[i] for j in keep) for i in keep)
        group = cls(kept_factors, action, images)
        logger.debug('abelian group with factors %s', kept_factors)
        return group

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(a % d for a, d in zip(v, self.invariant_factors))

    def add(self, v: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(v, w)])

    def image(self, exponents: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of the element with the given exponents in the presenting generators."""
        total = [0] * self.rank
        for e, img in zip(exponents, self.generator_images):
            total = [a + e * b for a, b in zip(total, img)]
        return self.reduce(total)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([sum(a * b for a, b in zip(row, v)) for row in self.action])

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def zero(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.invariant_factors)

    def is_automorphism(self) -> bool:
        return len({self.apply(v) for v in self.elements()}) == self.order

    def action_minus_identity_invertible(self) -> bool:
        """Whether t - 1 is bijective, i.e. no nonzero v has t v = v."""
        zero = self.zero()
        return all(self.apply(v) != v for v in self.elements() if v != zero)

    def span(self, vectors: Sequence[Sequence[int]]) -> frozenset[tuple[int, ...]]:
        members = {self.zero()}
        frontier = [self.zero()]
        gens = [self.reduce(v) for v in vectors]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.add(a, g)
                    if b not in members:
                        members.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(members)

    def orbit(self, v: Sequence[int]) -> list[tuple[int, ...]]:
        """v, t v, t^2 v, ... until it repeats."""
        seen = []
        current = self.reduce(v)
        while current not in seen:
            seen.append(current)
            current = self.apply(current)
        return seen

    def cyclic_generator(self) -> Optional[tuple[int, ...]]:
        """First v (lexicographic) whose orbit spans the group, or None."""
        for v in self.elements():
            if len(self.span(self.orbit(v))) == self.order:
                return v
        return None

    def prime_power_multiset(self) -> list[int]:
        return sorted(q for d in self.invariant_factors for q in prime_power_factors(d))

    def is_direct_double(self) -> bool:
        counts: dict[int, int] = {}
        for q in self.prime_power_multiset():
            counts[q] = counts.get(q, 0) + 1
        return all(c % 2 == 0 for c in counts.values())

    def to_json(self) -> dict:
        return {
            'invariant_factors': list(self.invariant_factors),
            'action': [list(row) for row in self.action],
        }
