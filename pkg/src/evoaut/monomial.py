"""Multiplicative ("monomial") constraint systems over K^x.

A system is a set of relations prod_v x_v**a[v] == c over the multiplicative
group of the field.  Smith normal form of the integer exponent matrix turns
the system into independent power equations y_k**d_k == c'_k in transformed
coordinates: the solution group of the homogeneous system is
(K^x)^(n - rank) x prod mu_{d_i}(K) over the nontrivial invariant factors d_i,
and an inhomogeneous system is either infeasible or a coset of that group.

Over F_p the d-th root step is a linear congruence in discrete-log
coordinates and generators are materialized as explicit vectors.  Over Q the
sign and each prime exponent give integer conditions solved by the same
decomposition; free factors stay symbolic (t_1, ..., t_r in Q^x) and only the
finite sign part is materialized.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InvariantViolation, NotPrimeField, TooLarge, ZeroArgument
from .scalar import Field, PrimeField, Scalar, mu_order, nth_roots
from .snf import identity, smith_normal_form

ENUMERATION_CAP = 10**6
BRUTEFORCE_CAP = 10**7


@dataclass(frozen=True)
class MonomialSystem:
    """Rows (a, c) encode the relations prod_v x_v**a[v] == c, c in K^x."""

    field: Field
    n_vars: int
    rows: tuple[tuple[tuple[int, ...], Scalar], ...]

    def __post_init__(self):
        if self.n_vars < 0:
            raise ValueError("variable count must be nonnegative")
        frozen = []
        for exps, rhs in self.rows:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.n_vars:
                raise ValueError(f"exponent row {exps} does not have {self.n_vars} entries")
            rhs = self.field.scalar(rhs)
            if rhs.is_zero():
                raise ZeroArgument("monomial relations cannot have zero right-hand side")
            frozen.append((exps, rhs))
        object.__setattr__(self, "rows", tuple(frozen))

    def homogeneous_version(self) -> "MonomialSystem":
        one = self.field.one
        return MonomialSystem(self.field, self.n_vars,
                              tuple((exps, one) for exps, _ in self.rows))

    def satisfied_by(self, xs) -> bool:
        xs = [self.field.scalar(x) for x in xs]
        return all(power_product(self.field, xs, exps) == rhs for exps, rhs in self.rows)


def power_product(field: Field, xs, exps) -> Scalar:
    """prod xs[k] ** exps[k]; negative exponents invert."""
    acc = field.one
    for x, e in zip(xs, exps):
        if e:
            acc = acc * x**e
    return acc


@dataclass(frozen=True)
class GroupDescription:
    """Abstract shape (K^x)^r x prod mu_{d_i}(K), optionally materialized.

    ``torsion`` holds the nontrivial invariant factors in divisibility order.
    Over F_p, ``generators`` are solution vectors generating the whole group
    (orders in ``generator_orders``); over Q only the finite sign part gets
    generators and free factors are reported symbolically.  ``symbol``
    overrides the shape for table-backed answers such as Z_2.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()
    field: Field | None = None
    generators: tuple[tuple[Scalar, ...], ...] = ()
    generator_orders: tuple[int, ...] = ()
    symbol: str | None = None

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for k in range(len(self.torsion)):
            if self.torsion[k] < 2:
                raise InvariantViolation(f"torsion entry {self.torsion[k]} < 2")
            if k and self.torsion[k] % self.torsion[k - 1]:
                raise InvariantViolation(f"torsion {self.torsion} breaks the divisibility chain")
        if len(self.generators) != len(self.generator_orders):
            raise InvariantViolation("generators and orders must be parallel")

    def describe(self) -> str:
        if self.symbol is not None:
            return self.symbol
        parts = []
        if self.free_rank:
            parts.append(f"(K^x)^{self.free_rank}")
        for d, copies in itertools.groupby(self.torsion):
            count = len(list(copies))
            parts.append(f"mu_{d}(K)" + (f"^{count}" if count > 1 else ""))
        return " x ".join(parts) if parts else "1"

    __str__ = describe

    def is_trivial_shape(self) -> bool:
        return self.symbol is None and self.free_rank == 0 and not self.torsion

    def concrete_order(self):
        """Group order over the attached field; None when infinite/symbolic."""
        if self.symbol is not None or self.field is None:
            return None
        if isinstance(self.field, PrimeField):
            order = (self.field.p - 1) ** self.free_rank
            for d in self.torsion:
                order *= math.gcd(d, self.field.p - 1)
            return order
        if self.free_rank:
            return None
        order = 1
        for d in self.torsion:
            order *= mu_order(self.field, d)
        return order

    def elements(self, cap: int = ENUMERATION_CAP) -> list[tuple[Scalar, ...]]:
        """The concrete solution group, sorted; requires a finite materialization."""
        order = self.concrete_order()
        if order is None:
            raise TooLarge("group is infinite or symbolic; cannot enumerate")
        if order > cap:
            raise TooLarge(f"group order {order} exceeds the enumeration cap {cap}")
        if not self.generators:
            if order != 1:
                raise InvariantViolation("nontrivial group without generators")
            return []
        n = len(self.generators[0])
        one = self.field.one
        out = set()
        for powers in itertools.product(*(range(o) for o in self.generator_orders)):
            vec = [one] * n
            for gen, a in zip(self.generators, powers):
                if a:
                    vec = [v * g**a for v, g in zip(vec, gen)]
            out.add(tuple(vec))
        if len(out) != order:
            raise InvariantViolation(
                f"generated {len(out)} elements, expected order {order}")
        return sorted(out, key=_vector_sort_key)


def _vector_sort_key(vec):
    return tuple(x.residue if hasattr(x, "residue") else x.fraction for x in vec)


@dataclass(frozen=True)
class SolutionCoset:
    """Solutions of an inhomogeneous system: particular * homogeneous group.

    ``particular`` is None exactly when the system is infeasible; the
    homogeneous description is meaningful either way.
    """

    system: MonomialSystem
    particular: tuple[Scalar, ...] | None
    homogeneous: GroupDescription

    def __post_init__(self):
        if self.particular is not None:
            if len(self.particular) != self.system.n_vars:
                raise InvariantViolation("particular solution has the wrong length")
            if any(x.is_zero() for x in self.particular):
                raise InvariantViolation("particular solution must lie in (K^x)^n")
            if not self.system.satisfied_by(self.particular):
                raise InvariantViolation("particular solution fails the system")
        homogeneous_system = self.system.homogeneous_version()
        for gen in self.homogeneous.generators:
            if not homogeneous_system.satisfied_by(gen):
                raise InvariantViolation("homogeneous generator fails the system")

    @property
    def is_feasible(self) -> bool:
        return self.particular is not None

    def count(self):
        """Number of solutions; 0 when infeasible, None when infinite."""
        if not self.is_feasible:
            return 0
        return self.homogeneous.concrete_order()

    def elements(self, cap: int = ENUMERATION_CAP) -> list[tuple[Scalar, ...]]:
        if not self.is_feasible:
            return []
        subgroup = self.homogeneous.elements(cap)
        if not subgroup:
            return [self.particular]
        out = [tuple(p * h for p, h in zip(self.particular, vec)) for vec in subgroup]
        return sorted(out, key=_vector_sort_key)


def _decompose(system: MonomialSystem):
    """SNF of the exponent matrix; handles the row-free system directly."""
    if not system.rows:
        n = system.n_vars
        return None, 0, [], identity(n)
    snf = smith_normal_form([list(exps) for exps, _ in system.rows])
    return snf, snf.rank, snf.diagonal(), [list(r) for r in snf.V]


def _materialize_generators(field: Field, v_columns, rank: int, diag, n: int):
    """Generator vectors (with orders) for the homogeneous solution group.

    In transformed coordinates the group is the direct product of mu_{d_k}(K)
    for k < rank and full copies of K^x beyond; pushing unit-coordinate
    generators through the unimodular change of basis V keeps the product
    structure because V acts as a group automorphism of (K^x)^n.
    """
    generators = []
    orders = []

    def push(k: int, value: Scalar):
        return tuple(value ** v_columns[i][k] for i in range(n))

    if isinstance(field, PrimeField):
        p = field.p
        if p == 2:
            return (), ()
        g = field.scalar(field.generator)
        for k in range(rank):
            o = math.gcd(diag[k], p - 1)
            if o > 1:
                generators.append(push(k, g ** ((p - 1) // o)))
                orders.append(o)
        for k in range(rank, n):
            generators.append(push(k, g))
            orders.append(p - 1)
        return tuple(generators), tuple(orders)
    minus_one = -field.one
    for k in range(rank):
        if mu_order(field, diag[k]) == 2:
            generators.append(push(k, minus_one))
            orders.append(2)
    return tuple(generators), tuple(orders)


def solve_homogeneous(system: MonomialSystem) -> GroupDescription:
    """Structure of {x in (K^x)^n : prod x**a == 1 for every row}.

    The solution group is Hom(Z^n / row lattice, K^x); its shape is read off
    the Smith normal form as free rank n - rank plus one mu_{d}(K) factor per
    nontrivial invariant factor d.
    """
    if any(rhs != system.field.one for _, rhs in system.rows):
        raise ValueError("solve_homogeneous expects all right-hand sides equal to 1")
    snf, rank, diag, v = _decompose(system)
    n = system.n_vars
    torsion = tuple(d for d in diag[:rank] if d > 1)
    generators, orders = _materialize_generators(system.field, v, rank, diag, n)
    return GroupDescription(free_rank=n - rank, torsion=torsion, field=system.field,
                            generators=generators, generator_orders=orders)


def solve_inhomogeneous(system: MonomialSystem) -> SolutionCoset:
    """Full solution coset of a monomial system (Infeasible is a value).

    The right-hand sides are transformed multiplicatively by U; the system is
    solvable iff every zero row yields 1 and every diagonal equation
    y**d == c' has a d-th root in the field.  The canonical particular
    solution takes, per diagonal equation, the root 1 when available and the
    canonically smallest root otherwise, then maps back through V.
    """
    snf, rank, diag, v = _decompose(system)
    n = system.n_vars
    one = system.field.one
    homogeneous = solve_homogeneous(system.homogeneous_version())

    ys = [one] * n
    feasible = True
    if snf is not None:
        rhs_vec = [rhs for _, rhs in system.rows]
        m = len(rhs_vec)
        for k in range(m):
            c = power_product(system.field, rhs_vec, snf.U[k])
            if k < rank:
                roots = nth_roots(system.field, diag[k], c)
                if not roots:
                    feasible = False
                    break
                ys[k] = one if one in roots else roots[0]
            elif c != one:
                feasible = False
                break
    if not feasible:
        return SolutionCoset(system=system, particular=None, homogeneous=homogeneous)
    particular = tuple(power_product(system.field, ys, v[i]) for i in range(n))
    return SolutionCoset(system=system, particular=particular, homogeneous=homogeneous)


def enumerate_solutions_bruteforce(system: MonomialSystem,
                                   cap: int = BRUTEFORCE_CAP) -> list[tuple[Scalar, ...]]:
    """Oracle: exhaustive scan of (F_p^x)^n for solutions, sorted.

    Kept deliberately independent of the Smith-normal-form path.
    """
    field = system.field
    if not isinstance(field, PrimeField):
        raise NotPrimeField("brute-force enumeration needs a finite field")
    p = field.p
    n = system.n_vars
    if (p - 1) ** n > cap:
        raise TooLarge(f"(p-1)^n = {(p - 1) ** n} exceeds the cap {cap}")
    rows = [(exps, rhs.residue) for exps, rhs in system.rows]
    unit_order = p - 1
    hits = []
    for combo in itertools.product(range(1, p), repeat=n):
        for exps, rhs in rows:
            acc = 1
            for x, e in zip(combo, exps):
                if e:
                    acc = acc * pow(x, e % unit_order, p) % p
            if acc != rhs:
                break
        else:
            hits.append(tuple(field.scalar(x) for x in combo))
    return hits
