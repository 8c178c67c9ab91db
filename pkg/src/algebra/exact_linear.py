"""
Exact linear algebra - rationals, matrices, affine maps, integer lattices
and Smith/Hermite normal forms.

Nothing in here rounds. Scalars are Fractions at the interface; elimination,
inverses, kernels and normal forms run on sympy matrices over QQ and ZZ.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import sympy
from sympy.matrices.normalforms import hermite_normal_form

logger = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]


class DimensionMismatchError(ValueError):
    """Operands of different shapes were combined."""


class LatticeError(ValueError):
    """A lattice query has no finite answer (not a sublattice, or infinite index)."""


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def to_rational(value) -> sympy.Rational:
    value = to_fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def format_rational(value) -> str:
    """Canonical string form: 'p/q', or 'p' when q == 1."""
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def vector(*values) -> Vector:
    return tuple(to_fraction(v) for v in values)


def vec_add(a: Sequence, b: Sequence) -> Vector:
    if len(a) != len(b):
        raise DimensionMismatchError(f'vector lengths {len(a)} and {len(b)} differ')
    return tuple(to_fraction(x) + y for x, y in zip(a, b))


def vec_sub(a: Sequence, b: Sequence) -> Vector:
    if len(a) != len(b):
        raise DimensionMismatchError(f'vector lengths {len(a)} and {len(b)} differ')
    return tuple(to_fraction(x) - y for x, y in zip(a, b))


def vec_scale(k, a: Sequence) -> Vector:
    k = to_fraction(k)
    return tuple(k * x for x in a)


def vec_neg(a: Sequence) -> Vector:
    return tuple(-to_fraction(x) for x in a)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatchError(f'vector lengths {len(a)} and {len(b)} differ')
    return sum((to_fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def is_integral_vector(a: Sequence) -> bool:
    return all(to_fraction(x).denominator == 1 for x in a)


def vector_to_json(a: Sequence) -> list[str]:
    return [format_rational(x) for x in a]


def to_sympy_vector(a: Sequence) -> sympy.Matrix:
    return sympy.Matrix([to_rational(x) for x in a])


# sympy does the elimination; results are cached because linear parts repeat a lot

@lru_cache(maxsize=4096)
def _sympy_det(entries: tuple[tuple[Fraction, ...], ...]) -> Fraction:
    return to_fraction(sympy.Matrix([[to_rational(a) for a in row] for row in entries]).det())


@lru_cache(maxsize=4096)
def _sympy_inverse(entries: tuple[tuple[Fraction, ...], ...]) -> tuple[tuple[Fraction, ...], ...]:
    inverse = sympy.Matrix([[to_rational(a) for a in row] for row in entries]).inv()
    return tuple(tuple(to_fraction(a) for a in inverse.row(i)) for i in range(inverse.rows))


@dataclass(frozen=True)
class RatMatrix:
    """Dense exact matrix. Rows are tuples of Fractions."""
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> 'RatMatrix':
        entries = tuple(tuple(to_fraction(v) for v in row) for row in rows)
        width = len(entries[0]) if entries else 0
        if any(len(row) != width for row in entries):
            raise DimensionMismatchError('ragged matrix rows')
        return cls(entries)

    @classmethod
    def identity(cls, n: int) -> 'RatMatrix':
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'RatMatrix':
        return cls(tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def diagonal(cls, values: Sequence) -> 'RatMatrix':
        n = len(values)
        return cls(tuple(
            tuple(to_fraction(values[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        ))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> 'RatMatrix':
        return cls.from_rows(zip(*columns))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.rows, self.cols,
                            [to_rational(a) for row in self.entries for a in row])

    def __matmul__(self, other: 'RatMatrix') -> 'RatMatrix':
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f'cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}')
        other_cols = list(zip(*other.entries))
        return RatMatrix(tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in other_cols)
            for row in self.entries
        ))

    def apply(self, vec: Sequence) -> Vector:
        if self.cols != len(vec):
            raise DimensionMismatchError(
                f'cannot apply {self.rows}x{self.cols} matrix to length {len(vec)} vector')
        vec = [to_fraction(v) for v in vec]
        return tuple(sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.entries)

    def __add__(self, other: 'RatMatrix') -> 'RatMatrix':
        self._check_same_shape(other)
        return RatMatrix(tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: 'RatMatrix') -> 'RatMatrix':
        self._check_same_shape(other)
        return RatMatrix(tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self) -> 'RatMatrix':
        return RatMatrix(tuple(tuple(-a for a in row) for row in self.entries))

    def scale(self, k) -> 'RatMatrix':
        k = to_fraction(k)
        return RatMatrix(tuple(tuple(k * a for a in row) for row in self.entries))

    def transpose(self) -> 'RatMatrix':
        return RatMatrix(tuple(zip(*self.entries)))

    def _check_same_shape(self, other: 'RatMatrix'):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f'shapes {self.rows}x{self.cols} and {other.rows}x{other.cols} differ')

    def det(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatchError('determinant of a non-square matrix')
        return _sympy_det(self.entries)

    def inverse(self) -> 'RatMatrix':
        if not self.is_square:
            raise DimensionMismatchError('inverse of a non-square matrix')
        if self.det() == 0:
            raise ValueError('matrix is singular')
        return RatMatrix(_sympy_inverse(self.entries))

    def power(self, exponent: int) -> 'RatMatrix':
        base = self if exponent >= 0 else self.inverse()
        result = RatMatrix.identity(self.rows)
        for _ in range(abs(exponent)):
            result = result @ base
        return result

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for row in self.entries for a in row)

    def is_identity(self) -> bool:
        return self == RatMatrix.identity(self.rows)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError('matrix has non-integer entries')
        return [[int(a) for a in row] for row in self.entries]

    def int_key(self) -> tuple[int, ...]:
        """Flat integer tuple, for hashing integral matrices cheaply."""
        return tuple(int(a) for row in self.entries for a in row)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(a) for a in row] for row in self.entries]


def _normalize_direction(vec: Vector) -> Vector:
    lead = next((a for a in vec if a != 0), Fraction(1))
    return vec_scale(1 / lead, vec) if lead < 0 else vec


def solve_linear(matrix: RatMatrix, rhs: Sequence) -> Optional[tuple[Vector, list[Vector]]]:
    """
    Solve matrix @ x = rhs exactly.

    Returns:
        (particular solution with free variables set to zero, kernel basis), or None
        when the system is inconsistent. Kernel vectors have a positive leading entry.
    """
    if matrix.rows != len(rhs):
        raise DimensionMismatchError('right-hand side length does not match matrix rows')
    system = matrix.to_sympy()
    try:
        solution, params = system.gauss_jordan_solve(to_sympy_vector(rhs))
    except ValueError:
        return None
    particular = solution.subs({p: 0 for p in params})
    kernel = [_normalize_direction(tuple(to_fraction(a) for a in v)) for v in system.nullspace()]
    return tuple(to_fraction(a) for a in particular), kernel


@dataclass(frozen=True)
class AffineSubspace:
    point: Vector
    directions: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def contains(self, point: Sequence) -> bool:
        offset = vec_sub(point, self.point)
        if not self.directions:
            return all(a == 0 for a in offset)
        basis = RatMatrix.from_columns(self.directions)
        return solve_linear(basis, offset) is not None

    def to_json(self) -> dict:
        return {
            'point': vector_to_json(self.point),
            'directions': [vector_to_json(d) for d in self.directions],
        }


@dataclass(frozen=True)
class AffineIso:
    """The affine map x -> linear @ x + translation, written (v, A)."""
    translation: Vector
    linear: RatMatrix

    def __post_init__(self):
        if len(self.translation) != self.linear.rows or not self.linear.is_square:
            raise DimensionMismatchError('translation and linear part have different dimensions')

    @classmethod
    def of(cls, translation: Sequence, linear) -> 'AffineIso':
        """Build from loose data, checking the linear part is invertible."""
        if not isinstance(linear, RatMatrix):
            linear = RatMatrix.from_rows(linear)
        if linear.det() == 0:
            raise ValueError('linear part of an affine isometry must be invertible')
        return cls(vector(*translation), linear)

    @classmethod
    def identity(cls, dim: int) -> 'AffineIso':
        return cls(tuple(Fraction(0) for _ in range(dim)), RatMatrix.identity(dim))

    @classmethod
    def translation_by(cls, vec: Sequence) -> 'AffineIso':
        return cls(vector(*vec), RatMatrix.identity(len(vec)))

    @classmethod
    def linear_map(cls, linear: RatMatrix) -> 'AffineIso':
        return cls(tuple(Fraction(0) for _ in range(linear.rows)), linear)

    @property
    def dim(self) -> int:
        return len(self.translation)

    @property
    def is_translation(self) -> bool:
        return self.linear.is_identity()

    def compose(self, other: 'AffineIso') -> 'AffineIso':
        return affine_compose(self, other)

    __mul__ = compose

    def inverse(self) -> 'AffineIso':
        return affine_inverse(self)

    def apply(self, point: Sequence) -> Vector:
        return vec_add(self.linear.apply(point), self.translation)

    def conjugate(self, other: 'AffineIso') -> 'AffineIso':
        """self o other o self^-1"""
        return self.compose(other).compose(self.inverse())

    def power(self, exponent: int) -> 'AffineIso':
        base = self if exponent >= 0 else self.inverse()
        result = AffineIso.identity(self.dim)
        for _ in range(abs(exponent)):
            result = result.compose(base)
        return result

    def to_json(self) -> dict:
        return {'translation': vector_to_json(self.translation), 'linear': self.linear.to_json()}


def affine_compose(f: AffineIso, g: AffineIso) -> AffineIso:
    """(v, A)(w, B) = (v + Aw, AB)"""
    if f.dim != g.dim:
        raise DimensionMismatchError(f'cannot compose dimension {f.dim} with dimension {g.dim}')
    return AffineIso(vec_add(f.translation, f.linear.apply(g.translation)), f.linear @ g.linear)


def affine_inverse(f: AffineIso) -> AffineIso:
    """(v, A)^-1 = (-A^-1 v, A^-1)"""
    inv = f.linear.inverse()
    return AffineIso(vec_neg(inv.apply(f.translation)), inv)


def fixed_set(f: AffineIso) -> Optional[AffineSubspace]:
    """Points x with f(x) = x, i.e. solutions of (I - A)x = v. None when there are none."""
    system = RatMatrix.identity(f.dim) - f.linear
    solution = solve_linear(system, f.translation)
    if solution is None:
        return None
    point, kernel = solution
    return AffineSubspace(point, tuple(kernel))


# Integer matrices -----------------------------------------------------------

def _int_rows(matrix: sympy.Matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(a) for a in row) for row in matrix.tolist())


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(row) for row in _int_rows(sympy.Matrix(a) * sympy.Matrix(b))]


@dataclass(frozen=True)
class SmithDecomposition:
    """left @ M @ right == diag(invariant_factors), padded with zeros to the shape of M."""
    invariant_factors: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)

    def diagonal_matrix(self, rows: int, cols: int) -> list[list[int]]:
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(self.invariant_factors):
            out[i][i] = d
        return out


def _add_row(m: sympy.Matrix, target: int, source: int, k):
    m.zip_row_op(target, source, lambda a, b: a + k * b)


def _add_col(m: sympy.Matrix, target: int, source: int, k):
    m.col_op(target, lambda a, row: a + k * m[row, source])


def _smallest_entry(m: sympy.Matrix, t: int) -> Optional[tuple[int, int]]:
    best = None
    for i in range(t, m.rows):
        for j in range(t, m.cols):
            if m[i, j] != 0 and (best is None or abs(m[i, j]) < abs(m[best])):
                best = (i, j)
    return best


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithDecomposition:
    """
    Smith normal form by elementary row/column operations on a sympy integer matrix,
    with both unimodular transforms tracked.

    Args:
        matrix: integer matrix as a sequence of rows

    Returns:
        SmithDecomposition with non-negative factors, each dividing the next, nonzero
        factors first.
    """
    rows = [[int(a) for a in row] for row in matrix]
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    if not n_rows or not n_cols:
        return SmithDecomposition((), _int_rows(sympy.eye(n_rows)), _int_rows(sympy.eye(n_cols)))
    m = sympy.Matrix(rows)
    left, right = sympy.eye(n_rows), sympy.eye(n_cols)

    for t in range(min(n_rows, n_cols)):
        pivot = _smallest_entry(m, t)
        if pivot is None:
            break
        i, j = pivot
        m.row_swap(t, i)
        left.row_swap(t, i)
        m.col_swap(t, j)
        right.col_swap(t, j)

        done = False
        while not done:
            done = True
            for i in range(t + 1, n_rows):
                if m[i, t]:
                    q = m[i, t] // m[t, t]
                    _add_row(m, i, t, -q)
                    _add_row(left, i, t, -q)
                    if m[i, t]:
                        m.row_swap(t, i)
                        left.row_swap(t, i)
                        done = False
            for j in range(t + 1, n_cols):
                if m[t, j]:
                    q = m[t, j] // m[t, t]
                    _add_col(m, j, t, -q)
                    _add_col(right, j, t, -q)
                    if m[t, j]:
                        m.col_swap(t, j)
                        right.col_swap(t, j)
                        done = False
            if done:
                # pivot must divide the whole remaining block
                for i in range(t + 1, n_rows):
                    if any(m[i, j] % m[t, t] for j in range(t + 1, n_cols)):
                        _add_row(m, t, i, 1)
                        _add_row(left, t, i, 1)
                        done = False
                        break
        if m[t, t] < 0:
            m.row_op(t, lambda a, _: -a)
            left.row_op(t, lambda a, _: -a)

    factors = tuple(int(m[i, i]) for i in range(min(n_rows, n_cols)))
    logger.debug('smith factors %s for %dx%d matrix', factors, n_rows, n_cols)
    return SmithDecomposition(factors, _int_rows(left), _int_rows(right))


def solve_integer_system(matrix: Sequence[Sequence[int]], rhs: Sequence
                         ) -> Optional[tuple[tuple[int, ...], list[tuple[int, ...]]]]:
    """
    Integer solutions of matrix @ x = rhs.

    Returns:
        (particular solution, basis of the integer kernel) or None if no integer solution
        exists (including when rhs is not integral).
    """
    rhs = [to_fraction(b) for b in rhs]
    if any(b.denominator != 1 for b in rhs):
        return None
    n_cols = len(matrix[0]) if matrix else 0
    snf = smith_normal_form(matrix)
    c = sympy.Matrix(snf.left) * sympy.Matrix([int(b) for b in rhs])
    rank = snf.rank
    y = [0] * n_cols
    for i in range(rank):
        d = snf.invariant_factors[i]
        if c[i] % d:
            return None
        y[i] = int(c[i] // d)
    if any(c[i] != 0 for i in range(rank, len(c))):
        return None
    right = sympy.Matrix(snf.right)
    particular = tuple(int(a) for a in right * sympy.Matrix(y))
    kernel = [tuple(int(a) for a in right.col(k)) for k in range(rank, n_cols)]
    return particular, kernel


def hermite_basis(vectors: Iterable[Sequence[int]], ambient_rank: int) -> tuple[tuple[int, ...], ...]:
    """
    Column-style Hermite normal form of the lattice spanned by `vectors`.

    The generators are the columns handed to sympy's hermite_normal_form; the returned
    tuples are the columns of the result. Column k has its last nonzero entry (its
    pivot) positive, pivot rows strictly increase with k, and in a pivot row the
    entries of the later columns lie in [0, pivot).
    """
    rows = [[int(a) for a in v] for v in vectors]
    for row in rows:
        if len(row) != ambient_rank:
            raise DimensionMismatchError(f'vector of length {len(row)} in rank {ambient_rank} lattice')
    rows = [row for row in rows if any(row)]
    if not rows:
        return ()
    generators = sympy.Matrix(rows).T
    form = hermite_normal_form(generators)
    basis = tuple(tuple(int(a) for a in form.col(k)) for k in range(form.cols))
    if len(basis) != generators.rank():
        raise LatticeError(f'Hermite form has {len(basis)} columns for a rank {generators.rank()} lattice')
    return basis


def _pivot(vec: Sequence[int]) -> int:
    return max(j for j, a in enumerate(vec) if a != 0)


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^k held by its Hermite basis, so equality is basis equality."""
    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_rank: int) -> 'IntegerLattice':
        ints = []
        for v in vectors:
            if not is_integral_vector(v):
                raise LatticeError(f'non-integral generator {vector_to_json(v)}')
            ints.append([int(a) for a in v])
        return cls(ambient_rank, hermite_basis(ints, ambient_rank))

    @classmethod
    def full(cls, rank: int) -> 'IntegerLattice':
        return cls(rank, hermite_basis(_int_rows(sympy.eye(rank)), rank))

    @classmethod
    def zero(cls, rank: int) -> 'IntegerLattice':
        return cls(rank, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _pivoted(self) -> list[tuple[int, tuple[int, ...]]]:
        """(pivot row, basis vector), highest pivot first."""
        return [(_pivot(b), b) for b in reversed(self.basis)]

    def coordinates(self, vec: Sequence) -> Optional[tuple[int, ...]]:
        """Integer coordinates of vec in the Hermite basis, or None if vec is not in the lattice."""
        if len(vec) != self.ambient_rank:
            raise DimensionMismatchError('vector and lattice ranks differ')
        if not is_integral_vector(vec):
            return None
        residual = [int(a) for a in vec]
        coords = []
        for p, b in self._pivoted():
            if residual[p] % b[p]:
                return None
            c = residual[p] // b[p]
            coords.append(c)
            if c:
                residual = [a - c * x for a, x in zip(residual, b)]
        if any(residual):
            return None
        return tuple(reversed(coords))

    def contains(self, vec: Sequence) -> bool:
        return self.coordinates(vec) is not None

    __contains__ = contains

    def __add__(self, other: 'IntegerLattice') -> 'IntegerLattice':
        self._check_rank(other)
        return IntegerLattice(self.ambient_rank,
                              hermite_basis(self.basis + other.basis, self.ambient_rank))

    def intersection(self, other: 'IntegerLattice') -> 'IntegerLattice':
        self._check_rank(other)
        if not self.basis or not other.basis:
            return IntegerLattice.zero(self.ambient_rank)
        stacked = [list(b) for b in self.basis] + [[-a for a in b] for b in other.basis]
        snf = smith_normal_form(stacked)
        r1 = len(self.basis)
        own = sympy.Matrix([list(b) for b in self.basis])
        vectors = [list(sympy.Matrix([snf.left[i][:r1]]) * own)
                   for i in range(snf.rank, len(stacked))]
        return IntegerLattice(self.ambient_rank, hermite_basis(vectors, self.ambient_rank))

    def is_sublattice_of(self, other: 'IntegerLattice') -> bool:
        self._check_rank(other)
        return all(other.contains(b) for b in self.basis)

    def index_in(self, super_lattice: 'IntegerLattice') -> int:
        """[super_lattice : self]; both must have the same rank and self must lie inside."""
        if not self.is_sublattice_of(super_lattice):
            raise LatticeError('lattice is not contained in the proposed super-lattice')
        if self.rank != super_lattice.rank:
            raise LatticeError('index is infinite: ranks differ')
        if self.rank == 0:
            return 1
        coords = sympy.Matrix([super_lattice.coordinates(b) for b in self.basis])
        return abs(int(coords.det()))

    def scaled(self, k: int) -> 'IntegerLattice':
        return IntegerLattice(self.ambient_rank,
                              hermite_basis([[k * a for a in b] for b in self.basis], self.ambient_rank))

    def reduce(self, vec: Sequence) -> Vector:
        """Canonical representative of vec + lattice; works for rational vec."""
        residual = [to_fraction(a) for a in vec]
        for p, b in self._pivoted():
            q = (residual[p] / b[p]).__floor__()
            if q:
                residual = [a - q * x for a, x in zip(residual, b)]
        return tuple(residual)

    def _check_rank(self, other: 'IntegerLattice'):
        if self.ambient_rank != other.ambient_rank:
            raise DimensionMismatchError('lattices live in different ambient ranks')

    def to_json(self) -> dict:
        return {'ambient_rank': self.ambient_rank, 'basis': [list(b) for b in self.basis]}
