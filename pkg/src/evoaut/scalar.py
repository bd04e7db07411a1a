"""Exact scalar arithmetic over prime finite fields F_p and the rationals Q.

Scalars are immutable.  Elements of F_p are canonical residues in [0, p);
rational scalars carry an eager prime factorization of numerator and
denominator next to a normalized ``Fraction`` view, because the multiplicative
solvers work with per-prime exponent vectors.  Zero is representable but is
rejected by every multiplicative-group operation (dlog, roots, inversion).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    DivisionByZero,
    EvoautError,
    FieldMismatch,
    InvariantViolation,
    NotPrimeField,
    ZeroArgument,
)

PRIME_CAP = 2**31


def is_prime(n: int) -> bool:
    """Primality by trial division; adequate for the supported-size primes."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as {prime: exponent}."""
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 2 if d % 6 == 1 else 4
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class Field:
    """Common interface of the two supported coefficient fields."""

    characteristic: int

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction, string, or same-field Scalar."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar of {value.field} given to {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self._from_number(value)

    def parse(self, text: str) -> "Scalar":
        """Parse a decimal integer, ``a/b``, or ``-a/b`` literal."""
        cleaned = text.strip().replace("−", "-")
        try:
            value = Fraction(cleaned)
        except (ValueError, ZeroDivisionError) as exc:
            raise EvoautError(f"cannot parse scalar literal {text!r}") from exc
        return self._from_number(value)

    def _from_number(self, value) -> "Scalar":
        raise NotImplementedError

    @property
    def zero(self) -> "Scalar":
        return self._from_number(0)

    @property
    def one(self) -> "Scalar":
        return self._from_number(1)


class PrimeField(Field):
    """F_p for a prime p, with a fixed generator of the cyclic group F_p^x.

    The generator is the smallest g whose order is p - 1 (checked against
    every maximal proper divisor), so construction is deterministic.  The
    discrete-log table is built lazily on first use; instances are immutable
    apart from that idempotent cache, so sharing across threads is safe.
    """

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise NotPrimeField(f"{p} is not prime")
        if p > PRIME_CAP:
            raise NotPrimeField(f"prime {p} exceeds the 2^31 cap")
        self.p = p
        self.characteristic = p
        self._unit_factors = factorize(p - 1) if p > 2 else {}
        self.generator = self._find_generator()
        self._dlog: list[int] | None = None

    def _find_generator(self) -> int:
        if self.p == 2:
            return 1
        order = self.p - 1
        for g in range(2, self.p):
            if all(pow(g, order // q, self.p) != 1 for q in self._unit_factors):
                return g
        raise InvariantViolation(f"no generator found for F_{self.p}")

    def _from_number(self, value) -> "FpScalar":
        if isinstance(value, int):
            return FpScalar(self, value % self.p)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator of {value} vanishes mod {self.p}")
            num = value.numerator % self.p
            return FpScalar(self, num * pow(den, -1, self.p) % self.p)
        raise EvoautError(f"cannot coerce {value!r} into F_{self.p}")

    def dlog_table(self) -> list[int]:
        """table[x] = log_g(x) for every x in F_p^x; table[0] is unused."""
        if self._dlog is None:
            table = [0] * self.p
            acc = 1
            for k in range(self.p - 1):
                table[acc] = k
                acc = acc * self.generator % self.p
            self._dlog = table
        return self._dlog

    def nonzero_elements(self):
        """All of F_p^x in residue order."""
        return [FpScalar(self, r) for r in range(1, self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


class RationalField(Field):
    """The field Q; a stateless singleton-by-equality."""

    characteristic = 0

    def _from_number(self, value) -> "QScalar":
        if isinstance(value, (int, Fraction)):
            return QScalar(self, Fraction(value))
        raise EvoautError(f"cannot coerce {value!r} into Q")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


QQ = RationalField()


class Scalar:
    """Base class; concrete scalars support +, -, *, /, ** and inv()."""

    field: Field

    def is_zero(self) -> bool:
        raise NotImplementedError

    def inv(self) -> "Scalar":
        raise NotImplementedError

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __radd__(self, other):
        return self.__add__(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self


class FpScalar(Scalar):
    """Canonical residue in F_p."""

    __slots__ = ("field", "residue")

    def __init__(self, field: PrimeField, residue: int):
        self.field = field
        self.residue = residue % field.p

    def is_zero(self) -> bool:
        return self.residue == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.field, self.residue + other.residue)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.field, self.residue - other.residue)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.field, self.residue * other.residue)

    def __neg__(self):
        return FpScalar(self.field, -self.residue)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if self.residue == 0:
            if exponent < 0:
                raise DivisionByZero("0 has no negative powers")
            return FpScalar(self.field, 0 if exponent else 1)
        return FpScalar(self.field, pow(self.residue, exponent, self.field.p))

    def inv(self) -> "FpScalar":
        if self.residue == 0:
            raise DivisionByZero(f"0 is not invertible in {self.field}")
        return FpScalar(self.field, pow(self.residue, -1, self.field.p))

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.field == other.field and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.residue))

    def __str__(self):
        return str(self.residue)

    def __repr__(self):
        return f"F{self.field.p}({self.residue})"


class QScalar(Scalar):
    """Rational scalar: sign, factored magnitude, and a Fraction view.

    ``factors`` maps primes to (possibly negative) exponents of the reduced
    magnitude |num/den|; the invariant sign * prod(p^e) == fraction is checked
    on every construction, so the two representations cannot drift apart.
    """

    __slots__ = ("field", "sign", "factors", "fraction")

    def __init__(self, field: RationalField, fraction: Fraction, factors: dict[int, int] | None = None):
        self.field = field
        self.fraction = fraction
        if fraction == 0:
            self.sign = 0
            self.factors = {}
        else:
            self.sign = 1 if fraction > 0 else -1
            if factors is None:
                factors = factorize(abs(fraction.numerator))
                for q, e in factorize(fraction.denominator).items():
                    factors[q] = factors.get(q, 0) - e
            self.factors = {q: e for q, e in factors.items() if e != 0}
        self._check()

    def _check(self):
        rebuilt = Fraction(self.sign)
        for q, e in self.factors.items():
            rebuilt *= Fraction(q) ** e
        if rebuilt != self.fraction:
            raise InvariantViolation(
                f"factored form {self.sign}*{self.factors} != {self.fraction}")

    def is_zero(self) -> bool:
        return self.sign == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QScalar(self.field, self.fraction + other.fraction)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QScalar(self.field, self.fraction - other.fraction)

    def __neg__(self):
        return QScalar(self.field, -self.fraction, dict(self.factors))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return QScalar(self.field, Fraction(0))
        merged = dict(self.factors)
        for q, e in other.factors.items():
            merged[q] = merged.get(q, 0) + e
        return QScalar(self.field, self.fraction * other.fraction, merged)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if self.sign == 0:
            if exponent < 0:
                raise DivisionByZero("0 has no negative powers")
            return QScalar(self.field, Fraction(1 if exponent == 0 else 0))
        scaled = {q: e * exponent for q, e in self.factors.items()}
        return QScalar(self.field, self.fraction**exponent, scaled)

    def inv(self) -> "QScalar":
        if self.sign == 0:
            raise DivisionByZero("0 is not invertible in Q")
        return QScalar(self.field, 1 / self.fraction,
                       {q: -e for q, e in self.factors.items()})

    def __eq__(self, other):
        if isinstance(other, QScalar):
            return self.fraction == other.fraction
        if isinstance(other, (int, Fraction)):
            return self.fraction == other
        return NotImplemented

    def __hash__(self):
        return hash(("Q", self.fraction))

    def __str__(self):
        return str(self.fraction)

    def __repr__(self):
        return f"Q({self.fraction})"


def dlog(field: Field, x: Scalar) -> int:
    """Discrete log of x to the field generator, in [0, p-1)."""
    if not isinstance(field, PrimeField):
        raise NotPrimeField("dlog is only defined over prime fields")
    x = field.scalar(x)
    if x.is_zero():
        raise ZeroArgument("dlog of 0")
    return field.dlog_table()[x.residue]


def nth_roots(field: Field, n: int, a) -> list[Scalar]:
    """All x in K^x with x**n == a, sorted canonically (may be empty).

    Over F_p the equation linearizes to n*y = dlog(a) (mod p-1).  Over Q a
    root exists iff every prime exponent of a is divisible by n and the sign
    admits it; even n on a positive rational yields both square-root signs.
    """
    if n < 1:
        raise ValueError(f"root index must be >= 1, got {n}")
    a = field.scalar(a)
    if a.is_zero():
        raise ZeroArgument("nth_roots of 0")
    if isinstance(field, PrimeField):
        p = field.p
        order = p - 1
        t = dlog(field, a)
        d = math.gcd(n, order)
        if t % d != 0:
            return []
        step = order // d
        y0 = t // d * pow(n // d, -1, step) % step if step > 1 else 0
        roots = [pow(field.generator, y0 + k * step, p) for k in range(d)]
        return [FpScalar(field, r) for r in sorted(roots)]
    assert isinstance(a, QScalar)
    if any(e % n for e in a.factors.values()):
        return []
    root_factors = {q: e // n for q, e in a.factors.items()}
    rebuilt = Fraction(1)
    for q, e in root_factors.items():
        rebuilt *= Fraction(q) ** e
    magnitude = QScalar(field, rebuilt, root_factors)
    if n % 2 == 1:
        return [magnitude if a.sign > 0 else -magnitude]
    if a.sign < 0:
        return []
    return [-magnitude, magnitude]


def mu_order(field: Field, d: int) -> int:
    """|mu_d(K)|: gcd(d, p-1) over F_p; 2 for even d over Q, else 1."""
    if d < 1:
        raise ValueError(f"root index must be >= 1, got {d}")
    if isinstance(field, PrimeField):
        return math.gcd(d, field.p - 1)
    return 2 if d % 2 == 0 else 1
