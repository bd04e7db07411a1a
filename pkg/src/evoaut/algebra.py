"""Finite-dimensional evolution algebras with a distinguished natural basis.

An algebra is stored as its structure matrix M with the column convention
M[j][i] = coefficient of e_j in e_i**2; distinct basis elements multiply to
zero.  Vectors are plain tuples of scalars in basis coordinates.  All objects
are immutable and the predicates are pure.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    NotANaturalBasis,
    TooLarge,
    ZeroVector,
)
from .scalar import Field, PrimeField, Scalar

DEFAULT_DIMENSION_CAP = 64

Vector = tuple[Scalar, ...]


class EvolutionAlgebra:
    def __init__(self, field: Field, rows, labels=None, max_dim: int = DEFAULT_DIMENSION_CAP):
        n = len(rows)
        if n < 1:
            raise DimensionMismatch("an evolution algebra needs at least one basis element")
        if n > max_dim:
            raise TooLarge(f"dimension {n} exceeds the cap of {max_dim}")
        matrix = []
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch("structure matrix must be square")
            matrix.append(tuple(field.scalar(x) for x in row))
        self.field = field
        self.matrix = tuple(matrix)
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n or len(set(labels)) != n:
                raise DimensionMismatch("labels must be distinct and match the dimension")
        self.labels = labels

    @classmethod
    def from_squares(cls, field: Field, squares, labels=None, max_dim: int = DEFAULT_DIMENSION_CAP):
        """Build from the list of basis squares: squares[i] = coords of e_i**2."""
        n = len(squares)
        cols = [[field.scalar(x) for x in col] for col in squares]
        if any(len(c) != n for c in cols):
            raise DimensionMismatch("each square must have one coordinate per basis element")
        rows = [[cols[i][j] for i in range(n)] for j in range(n)]
        return cls(field, rows, labels=labels, max_dim=max_dim)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def entry(self, j: int, i: int) -> Scalar:
        """omega_{ji}: the e_j coordinate of e_i**2."""
        return self.matrix[j][i]

    def square_of(self, i: int) -> Vector:
        """e_i**2 as a coordinate vector (column i of the structure matrix)."""
        return tuple(self.matrix[j][i] for j in range(self.dim))

    def basis_vector(self, i: int) -> Vector:
        one, zero = self.field.one, self.field.zero
        return tuple(one if j == i else zero for j in range(self.dim))

    def zero_vector(self) -> Vector:
        zero = self.field.zero
        return tuple(zero for _ in range(self.dim))

    def vector(self, coords) -> Vector:
        """Coerce a coordinate sequence into a vector over this algebra."""
        v = tuple(self.field.scalar(x) for x in coords)
        if len(v) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(v)}")
        return v

    def multiply(self, u, v) -> Vector:
        """Product of two vectors: sum_i u_i v_i e_i**2."""
        u = self.vector(u)
        v = self.vector(v)
        out = list(self.zero_vector())
        for i in range(self.dim):
            c = u[i] * v[i]
            if not c.is_zero():
                for j in range(self.dim):
                    w = self.matrix[j][i]
                    if not w.is_zero():
                        out[j] = out[j] + c * w
        return tuple(out)

    # -- structural predicates ------------------------------------------

    def two_li_witness(self):
        """First pair (i, j) whose squares are linearly dependent, else None."""
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if not self._columns_independent(i, j):
                    return (i, j)
        return None

    def _columns_independent(self, i: int, j: int) -> bool:
        pivot = next((r for r in range(self.dim) if not self.matrix[r][i].is_zero()), None)
        if pivot is None:
            return False
        ratio = self.matrix[pivot][j] / self.matrix[pivot][i]
        for r in range(self.dim):
            if self.matrix[r][j] != ratio * self.matrix[r][i]:
                return True
        return False

    def is_2li(self) -> bool:
        """Squares of any two distinct basis elements are independent."""
        return self.two_li_witness() is None

    def is_nondegenerate(self) -> bool:
        """No basis element squares to zero."""
        return all(any(not self.matrix[j][i].is_zero() for j in range(self.dim))
                   for i in range(self.dim))

    def rank(self) -> int:
        return _rank([list(row) for row in self.matrix])

    def det(self) -> Scalar:
        return _det(self.field, [list(row) for row in self.matrix])

    def is_invertible(self) -> bool:
        return not self.det().is_zero()

    def is_perfect(self) -> bool:
        """A**2 = A; in finite dimension the squares must span."""
        return self.rank() == self.dim

    def __eq__(self, other):
        return (isinstance(other, EvolutionAlgebra)
                and self.field == other.field
                and self.labels == other.labels
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.field, self.labels, self.matrix))

    def __repr__(self):
        return f"EvolutionAlgebra(dim={self.dim}, field={self.field})"


def _rank(rows) -> int:
    rank = 0
    n_cols = len(rows[0]) if rows else 0
    col = 0
    rows = [list(r) for r in rows]
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _det(field: Field, rows) -> Scalar:
    n = len(rows)
    rows = [list(r) for r in rows]
    det = field.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inv()
        for r in range(col + 1, n):
            if not rows[r][col].is_zero():
                factor = rows[r][col] * inv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


def vec_is_zero(v: Vector) -> bool:
    return all(x.is_zero() for x in v)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(k: Scalar, v: Vector) -> Vector:
    return tuple(k * x for x in v)


class Naturality(enum.Enum):
    NATURAL = "natural"
    NOT_NATURAL = "not natural"
    INDETERMINATE = "indeterminate"


def is_natural_vector(algebra: EvolutionAlgebra, u) -> Naturality:
    """Decide whether u belongs to some natural basis of the algebra.

    With S the support of u: if u**2 == 0, u is natural iff every e_i**2
    vanishes on S.  If u**2 != 0, a span{e_i**2 : i in S} of dimension >= 2
    rules naturality out, dimension 1 in characteristic != 2 confirms it, and
    in characteristic 2 the question is settled by exhaustive basis search
    when that is affordable (F_2, dim <= 4) and left INDETERMINATE otherwise.
    """
    u = algebra.vector(u)
    if vec_is_zero(u):
        raise ZeroVector("the zero vector is never natural")
    support = [i for i in range(algebra.dim) if not u[i].is_zero()]
    if len(support) == 1:
        return Naturality.NATURAL
    square = algebra.multiply(u, u)
    if vec_is_zero(square):
        ok = all(vec_is_zero(algebra.square_of(i)) for i in support)
        return Naturality.NATURAL if ok else Naturality.NOT_NATURAL
    span_dim = _rank([list(algebra.square_of(i)) for i in support])
    if span_dim >= 2:
        return Naturality.NOT_NATURAL
    if algebra.field.characteristic != 2:
        return Naturality.NATURAL
    if isinstance(algebra.field, PrimeField) and algebra.field.p == 2 and algebra.dim <= 4:
        return Naturality.NATURAL if _f2_basis_search(algebra, u) else Naturality.NOT_NATURAL
    return Naturality.INDETERMINATE


def _f2_basis_search(algebra: EvolutionAlgebra, u: Vector) -> bool:
    """Exhaustively look for a natural basis of an F_2 algebra containing u."""
    n = algebra.dim
    vectors = [algebra.vector(bits)
               for bits in itertools.product((0, 1), repeat=n)]
    vectors = [v for v in vectors if not vec_is_zero(v) and v != u]
    for rest in itertools.combinations(vectors, n - 1):
        candidate = (u,) + rest
        if all(vec_is_zero(algebra.multiply(a, b))
               for a, b in itertools.combinations(candidate, 2)) \
                and _rank([list(v) for v in candidate]) == n:
            return True
    return False


@dataclass(frozen=True)
class BasisChange:
    """Permuted scaling: result_i = scales[i] * basis[perm[i]]."""

    perm: tuple[int, ...]
    scales: tuple[Scalar, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise DimensionMismatch("perm is not a permutation")
        if any(k.is_zero() for k in self.scales):
            raise ZeroVector("basis-change scales must be nonzero")

    def apply(self, basis) -> tuple[Vector, ...]:
        return tuple(vec_scale(self.scales[i], basis[self.perm[i]])
                     for i in range(len(self.perm)))


def check_natural_basis(algebra: EvolutionAlgebra, basis):
    """Raise NotANaturalBasis unless basis is a natural basis of the algebra."""
    basis = [algebra.vector(v) for v in basis]
    if len(basis) != algebra.dim:
        raise NotANaturalBasis(f"expected {algebra.dim} vectors, got {len(basis)}",
                               witness="dependent")
    for a, b in itertools.combinations(basis, 2):
        if not vec_is_zero(algebra.multiply(a, b)):
            raise NotANaturalBasis("two basis vectors have nonzero product",
                                   witness=(a, b))
    if _rank([list(v) for v in basis]) != algebra.dim:
        raise NotANaturalBasis("vectors are linearly dependent", witness="dependent")
    return basis


def same_orbit(algebra: EvolutionAlgebra, basis1, basis2):
    """BasisChange with basis2[i] = k_i * basis1[perm[i]], or None.

    Both arguments must be natural bases of the algebra; this is verified and
    a NotANaturalBasis error carries a concrete witness otherwise.
    """
    basis1 = check_natural_basis(algebra, basis1)
    basis2 = check_natural_basis(algebra, basis2)
    perm = []
    scales = []
    used = set()
    for w in basis2:
        match = None
        for idx, b in enumerate(basis1):
            if idx in used:
                continue
            k = _scalar_multiple(w, b)
            if k is not None:
                match = (idx, k)
                break
        if match is None:
            return None
        used.add(match[0])
        perm.append(match[0])
        scales.append(match[1])
    return BasisChange(perm=tuple(perm), scales=tuple(scales))


def _scalar_multiple(w: Vector, b: Vector):
    """The scalar k with w == k * b, or None."""
    pivot = next((i for i, x in enumerate(b) if not x.is_zero()), None)
    if pivot is None:
        return None
    k = w[pivot] / b[pivot]
    if k.is_zero():
        return None
    for x, y in zip(w, b):
        if x != k * y:
            return None
    return k


def verify_unique_basis_up_to_scaling(algebra: EvolutionAlgebra,
                                      p_cap: int = 5, dim_cap: int = 3) -> bool:
    """Oracle: every natural basis is a permuted scaling of the given one.

    Enumerates all natural bases over F_p (one representative per projective
    class, which loses nothing since scaling preserves both the pairwise-zero
    and independence conditions) and checks each consists of multiples of
    distinguished basis vectors.  Deliberately brute force.
    """
    field = algebra.field
    if not isinstance(field, PrimeField) or field.p > p_cap or algebra.dim > dim_cap:
        raise TooLarge(f"oracle limited to F_p with p <= {p_cap} and dim <= {dim_cap}")
    p, n = field.p, algebra.dim
    m = [[algebra.matrix[j][i].residue for i in range(n)] for j in range(n)]

    reps = []
    for coords in itertools.product(range(p), repeat=n):
        lead = next((c for c in coords if c), None)
        if lead == 1:  # one representative per projective class
            reps.append(coords)

    def product_is_zero(a, b):
        had = [x * y % p for x, y in zip(a, b)]
        return all(sum(m[j][i] * had[i] for i in range(n)) % p == 0 for j in range(n))

    def int_rank(vecs):
        rows = [list(v) for v in vecs]
        rank = 0
        for col in range(n):
            piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = pow(rows[rank][col], -1, p)
            rows[rank] = [x * inv % p for x in rows[rank]]
            for r in range(len(rows)):
                if r != rank and rows[r][col] % p:
                    f = rows[r][col]
                    rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    unit_reps = {tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}
    for combo in itertools.combinations(reps, n):
        if not all(product_is_zero(a, b) for a, b in itertools.combinations(combo, 2)):
            continue
        if int_rank(combo) != n:
            continue
        if any(vec not in unit_reps for vec in combo):
            return False
    return True
