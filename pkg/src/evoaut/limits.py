"""Truncated inverse systems over K^x: power-map chains and the 2-power tower.

A depth-N chain spec fixes exponents (n_1, ..., n_N); its solutions are
tuples (x_1, ..., x_N) in (K^x)^N with x_{i+1}**n_{i+1} == x_i, optionally
anchored by x_1**n_1 == a.  The maps point down the chain, so enumerating the
deepest coordinate determines the rest.

The 2-power tower mu_2 <= mu_4 <= ... in F_p^x or Q^x is stationary; the
stationary index (v_2(p-1) over F_p, 1 over Q) forces every coordinate with
at least that much headroom above it to be 1, which is why the inverse limit
of the tower is trivial for these fields.  Fields where the tower never
stops (algebraically closed of odd characteristic, or the full 2-power
cyclotomic extension of Q) are handled symbolically with the answer Z_2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import EvolutionAlgebra
from .autgroup import diag_group
from .errors import DepthTooSmall, EvoautError, NotPrimeField, TooLarge
from .monomial import GroupDescription, _vector_sort_key
from .scalar import Field, PrimeField, RationalField, Scalar

CHAIN_BUDGET = 10**6

SYMBOLIC_TATE_FIELDS = {
    "acl-not2": "algebraically closed, characteristic != 2",
    "Q-zeta2inf": "rationals with all 2-power roots of unity adjoined",
}


def two_adic_valuation(m: int) -> int:
    v = 0
    while m % 2 == 0 and m > 0:
        m //= 2
        v += 1
    return v


@dataclass(frozen=True)
class ChainSpec:
    """Exponent sequence of a truncated power-map chain, with optional anchor."""

    field: Field
    exponents: tuple[int, ...]
    anchor: Scalar | None = None

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if not self.exponents or any(e < 1 for e in self.exponents):
            raise ValueError("exponents must be a nonempty sequence of positive integers")
        if self.anchor is not None:
            anchor = self.field.scalar(self.anchor)
            if anchor.is_zero():
                raise EvoautError("anchor must be a unit")
            object.__setattr__(self, "anchor", anchor)

    @property
    def depth(self) -> int:
        return len(self.exponents)


@dataclass(frozen=True)
class TruncatedLimit:
    """All compatible tuples at a fixed depth, plus the stabilization depth.

    ``stabilization_depth`` is the smallest 1-based index s such that the
    projection sets {x_i : tuples} agree for every i >= s within the computed
    window; depth itself when the sets never settle earlier.
    """

    spec: ChainSpec
    tuples: tuple[tuple[Scalar, ...], ...]
    stabilization_depth: int

    def __post_init__(self):
        exps = self.spec.exponents
        for chain in self.tuples:
            if len(chain) != self.spec.depth:
                raise EvoautError("tuple depth mismatch")
            for i in range(len(chain) - 1):
                if chain[i + 1] ** exps[i + 1] != chain[i]:
                    raise EvoautError(f"chain {chain} breaks compatibility at index {i}")
            if self.spec.anchor is not None and chain[0] ** exps[0] != self.spec.anchor:
                raise EvoautError(f"chain {chain} violates the anchor condition")

    @property
    def depth(self) -> int:
        return self.spec.depth


def truncated_chain(spec: ChainSpec, budget: int = CHAIN_BUDGET) -> TruncatedLimit:
    """Enumerate all compatible depth-N tuples over a prime field.

    The deepest coordinate is free a priori; everything below it is derived
    by the power maps, then the anchor filters the candidates.
    """
    field = spec.field
    if not isinstance(field, PrimeField):
        raise NotPrimeField("chain enumeration requires a prime field")
    n = spec.depth
    if (field.p - 1) * n > budget:
        raise TooLarge(f"(p-1)*depth = {(field.p - 1) * n} exceeds the budget {budget}")
    exps = spec.exponents
    chains = []
    for deep in field.nonzero_elements():
        chain = [deep] * n
        for i in range(n - 2, -1, -1):
            chain[i] = chain[i + 1] ** exps[i + 1]
        if spec.anchor is not None and chain[0] ** exps[0] != spec.anchor:
            continue
        chains.append(tuple(chain))
    chains.sort(key=_vector_sort_key)

    projections = [{chain[i] for chain in chains} for i in range(n)]
    stab = n
    while stab > 1 and projections[stab - 2] == projections[stab - 1]:
        stab -= 1
    return TruncatedLimit(spec=spec, tuples=tuple(chains), stabilization_depth=stab)


def tate_stationary_index(field) -> int | None:
    """Index from which the tower mu_2 <= mu_4 <= ... stops growing."""
    if isinstance(field, PrimeField):
        return two_adic_valuation(field.p - 1) if field.p > 2 else 0
    if isinstance(field, RationalField):
        return 1
    return None


def tate_module_2(field) -> GroupDescription:
    """Inverse limit of the 2-power roots of unity under squaring.

    Trivial over every prime field (including characteristic 2, where 1 is
    the only 2-power root) and over Q; the symbolic labels in
    SYMBOLIC_TATE_FIELDS are answered from the table as Z_2 without
    arithmetic.
    """
    if isinstance(field, str):
        if field in SYMBOLIC_TATE_FIELDS:
            return GroupDescription(free_rank=0, torsion=(), symbol="Z_2")
        raise EvoautError(f"unknown symbolic field label {field!r}")
    if isinstance(field, (PrimeField, RationalField)):
        return GroupDescription(free_rank=0, torsion=(), field=field)
    raise EvoautError(f"unsupported field {field!r}")


def verify_stationary_collapse(field: PrimeField, depth: int) -> bool:
    """Oracle for the triviality of the 2-power inverse limit over F_p.

    Enumerates every depth-N tuple (x_1, ..., x_N) with x_i in mu_{2^i} and
    x_{i+1}**2 == x_i, then checks that all coordinates with stationary
    headroom above them (indices <= N - s, s the stationary index) equal 1.
    The depth-N solution set itself retains 2^s free tail coordinates, so the
    collapse is exactly the survival statement under projection.
    """
    if not isinstance(field, PrimeField):
        raise NotPrimeField("stationarity oracle requires a prime field")
    s = tate_stationary_index(field)
    if depth <= s + 1:
        raise DepthTooSmall(f"depth must exceed stationary index {s} + 1")
    p = field.p
    one = field.one
    chains = []
    for deep in field.nonzero_elements():
        chain = [deep] * depth
        for i in range(depth - 2, -1, -1):
            chain[i] = chain[i + 1] ** 2
        if all(chain[i] ** (2 ** (i + 1)) == one for i in range(depth)):
            chains.append(chain)
    if not chains:
        return False
    window = depth - s
    return all(all(x == one for x in chain[:window]) for chain in chains)


def loop_chain_algebra(field: Field, n: int) -> EvolutionAlgebra:
    """Loop-rooted chain: e_1**2 = e_1 and e_{i+1}**2 = e_i."""
    if n < 1:
        raise ValueError("dimension must be positive")
    squares = []
    for i in range(n):
        col = [0] * n
        col[max(i - 1, 0)] = 1
        squares.append(col)
    return EvolutionAlgebra.from_squares(field, squares)


def loop_chain_diag_group(field: Field, n: int) -> GroupDescription:
    """Diagonal group of the n-dimensional loop-rooted chain: mu_{2^(n-1)}(K)."""
    return diag_group(loop_chain_algebra(field, n))
