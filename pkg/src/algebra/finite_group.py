"""
Finite groups - explicit multiplication tables built by closure

Elements are stored as representatives together with a canonical key; the
multiplication callback may return any representative as long as the key
function identifies equal elements.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

logger = logging.getLogger(__name__)


@dataclass
class FiniteGroupTable:
    elements: list
    keys: list
    table: list[list[int]]
    key_fn: Callable[[Any], Hashable]
    _index: dict = field(default_factory=dict, repr=False)
    _inverses: list[int] = field(default_factory=list, repr=False)

    @classmethod
    def from_closure(cls, generators: Sequence, multiply: Callable[[Any, Any], Any],
                     identity: Any, key: Callable[[Any], Hashable],
                     bound: Optional[int] = None) -> 'FiniteGroupTable':
        """
        Close a generating set under right multiplication and tabulate the group.

        Args:
            generators: representatives of generators
            multiply: product of two representatives
            identity: representative of the identity
            key: canonical key, equal exactly for equal group elements
            bound: optional ceiling on the order; exceeding it raises ValueError

        Returns:
            FiniteGroupTable with the identity at index 0
        """
        elements = [identity]
        keys = [key(identity)]
        index = {keys[0]: 0}
        position = 0
        while position < len(elements):
            current = elements[position]
            for g in generators:
                product = multiply(current, g)
                k = key(product)
                if k not in index:
                    index[k] = len(elements)
                    elements.append(product)
                    keys.append(k)
                    if bound is not None and len(elements) > bound:
                        raise ValueError(f'closure exceeded the bound of {bound} elements')
            position += 1

        table = [[index[key(multiply(a, b))] for b in elements] for a in elements]
        group = cls(elements=elements, keys=keys, table=table, key_fn=key, _index=index)
        group._inverses = [row.index(0) for row in table]
        logger.debug('closed finite group of order %d from %d generators', len(elements), len(generators))
        return group

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def locate(self, value) -> int:
        """Index of the element represented by value."""
        k = self.key_fn(value)
        if k not in self._index:
            raise ValueError('element is not in the table')
        return self._index[k]

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self._inverses[i]

    def power(self, i: int, exponent: int) -> int:
        base = i if exponent >= 0 else self.inverse(i)
        result = 0
        for _ in range(abs(exponent)):
            result = self.table[result][base]
        return result

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1"""
        return self.table[self.table[g][h]][self.inverse(g)]

    def element_order(self, i: int) -> int:
        n, current = 1, i
        while current != 0:
            current = self.table[current][i]
            n += 1
        return n

    def order_profile(self) -> dict[int, int]:
        """How many elements there are of each order."""
        return dict(sorted(Counter(self.element_order(i) for i in range(len(self))).items()))

    def conjugacy_class(self, i: int) -> tuple[int, ...]:
        return tuple(sorted({self.conjugate(g, i) for g in range(len(self))}))

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        classes = []
        for i in range(len(self)):
            if i in seen:
                continue
            cls = self.conjugacy_class(i)
            seen.update(cls)
            classes.append(cls)
        return classes

    def center(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self))
                     if all(self.table[i][g] == self.table[g][i] for g in range(len(self))))

    def centralizer(self, i: int) -> tuple[int, ...]:
        return tuple(g for g in range(len(self)) if self.table[g][i] == self.table[i][g])

    def is_abelian(self) -> bool:
        return len(self.center()) == len(self)

    def subgroup_generated(self, generators: Iterable[int], bound: Optional[int] = None
                           ) -> Optional[frozenset[int]]:
        """
        Subgroup generated by the given indices.

        Returns None when a bound is given and the subgroup grows past it.
        """
        generators = list(generators)
        members = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in generators:
                    b = self.table[a][g]
                    if b not in members:
                        members.add(b)
                        nxt.append(b)
                        if bound is not None and len(members) > bound:
                            return None
            frontier = nxt
        return frozenset(members)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        subset = set(subset)
        return 0 in subset and all(self.table[a][b] in subset for a in subset for b in subset)

    def to_json(self, labels: Optional[Sequence[str]] = None) -> dict:
        names = list(labels) if labels is not None else [str(i) for i in range(len(self))]
        return {
            'order': len(self),
            'labels': names,
            'table': self.table,
            'center': [names[i] for i in self.center()],
            'classes': [[names[i] for i in cls] for cls in self.conjugacy_classes()],
            'order_profile': {str(k): v for k, v in self.order_profile().items()},
        }
