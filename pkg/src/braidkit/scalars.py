"""Exact base fields and q-combinatorics.

Three fields are supported: the rationals ``Q``, prime fields ``F<p>`` for a
machine-word prime p, and the single engineered degree-3 extension of F2
(tag ``F8``, modulus g^3 + g + 1) that the char-2 counterexample suite needs.
Every element is an exact value; nothing in the package ever rounds.

Field elements are plain Python objects (``Fraction`` for Q, small ints for
the finite fields).  The :class:`Scalar` wrapper pairs a value with its field
and refuses mixed-field arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator

from .errors import (
    DomainError,
    FieldMismatchError,
    InputFormatError,
    ScalarDivisionError,
    UnsupportedOperationError,
)

# Largest prime modulus accepted; desk-scale verification never needs more.
MAX_PRIME_BITS = 62

_F8_NAMES = ["0", "1", "g", "g+1", "g^2", "g^2+1", "g^2+g", "g^2+g+1"]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Abstract exact field.  Subclasses operate on raw element values."""

    name: str

    def characteristic(self) -> int:
        raise NotImplementedError

    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def neg(self, a: Any) -> Any:
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        raise NotImplementedError

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Any) -> bool:
        return a == self.zero()

    def is_finite(self) -> bool:
        return False

    def elements(self) -> Iterator[Any]:
        raise UnsupportedOperationError("field is not finite")

    def parse(self, token: Any) -> Any:
        raise NotImplementedError

    def format(self, a: Any) -> str:
        raise NotImplementedError

    def scalar(self, token: Any) -> "Scalar":
        return Scalar(self, self.parse(token))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return self.name


class RationalField(Field):
    name = "Q"

    def characteristic(self) -> int:
        return 0

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ScalarDivisionError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ScalarDivisionError("division by zero in Q")
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def parse(self, token) -> Fraction:
        if isinstance(token, Fraction):
            return token
        if isinstance(token, int):
            return Fraction(token)
        if isinstance(token, str):
            try:
                return Fraction(token)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputFormatError(f"bad rational scalar {token!r}") from exc
        raise InputFormatError(f"bad rational scalar {token!r}")

    def format(self, a: Fraction) -> str:
        return str(a)


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputFormatError(f"{p} is not prime")
        if p.bit_length() > MAX_PRIME_BITS:
            raise InputFormatError(f"prime {p} exceeds the machine-word bound")
        self.p = p
        self.name = f"F{p}"

    def characteristic(self) -> int:
        return self.p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1 % self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ScalarDivisionError(f"division by zero in F{self.p}")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def is_finite(self) -> bool:
        return True

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def parse(self, token) -> int:
        if isinstance(token, int):
            return token % self.p
        if isinstance(token, str):
            try:
                frac = Fraction(token)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputFormatError(f"bad F{self.p} scalar {token!r}") from exc
            num = frac.numerator % self.p
            den = frac.denominator % self.p
            return self.div(num, den)
        raise InputFormatError(f"bad F{self.p} scalar {token!r}")

    def format(self, a: int) -> str:
        return str(a % self.p)


class GF8Field(Field):
    """F2[g] / (g^3 + g + 1), elements encoded as bit masks 0..7.

    Exists only so the char-2 bracket counterexample can run; general
    extension fields are out of scope.
    """

    name = "F8"
    _MOD = 0b1011

    def __init__(self):
        mul = [[0] * 8 for _ in range(8)]
        for a in range(8):
            for b in range(8):
                acc = 0
                x = a
                y = b
                while y:
                    if y & 1:
                        acc ^= x
                    x <<= 1
                    if x & 0b1000:
                        x ^= self._MOD
                    y >>= 1
                mul[a][b] = acc
        self._mul = mul
        inv = [0] * 8
        for a in range(1, 8):
            for b in range(1, 8):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    def characteristic(self) -> int:
        return 2

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def generator(self) -> int:
        return 2

    def from_int(self, n: int) -> int:
        return n & 1

    def add(self, a, b):
        return a ^ b

    def neg(self, a):
        return a

    def sub(self, a, b):
        return a ^ b

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ScalarDivisionError("division by zero in F8")
        return self._inv[a]

    def is_zero(self, a) -> bool:
        return a == 0

    def is_finite(self) -> bool:
        return True

    def elements(self) -> Iterator[int]:
        return iter(range(8))

    def parse(self, token) -> int:
        if isinstance(token, int):
            if 0 <= token <= 7:
                return token
            return token % 2
        if isinstance(token, str):
            t = token.replace(" ", "")
            if t in _F8_NAMES:
                return _F8_NAMES.index(t)
            try:
                return self.parse(int(t))
            except ValueError as exc:
                raise InputFormatError(f"bad F8 scalar {token!r}") from exc
        raise InputFormatError(f"bad F8 scalar {token!r}")

    def format(self, a: int) -> str:
        return _F8_NAMES[a]


QQ = RationalField()
GF8 = GF8Field()


def field_from_string(tag: str) -> Field:
    """Parse a field tag: ``"Q"``, ``"F<p>"`` with p prime, or ``"F8"``."""
    if tag == "Q":
        return QQ
    if tag == "F8":
        return GF8
    if tag.startswith("F"):
        try:
            p = int(tag[1:])
        except ValueError as exc:
            raise InputFormatError(f"bad field tag {tag!r}") from exc
        return PrimeField(p)
    raise InputFormatError(f"bad field tag {tag!r}")


@dataclass(frozen=True)
class Scalar:
    """An exact element of a fixed field."""

    field: Field
    value: Any

    def _check(self, other: "Scalar") -> None:
        if self.field != other.field:
            raise FieldMismatchError(
                f"cannot combine scalars over {self.field} and {other.field}"
            )

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __str__(self) -> str:
        return self.field.format(self.value)


# ---------------------------------------------------------------------------
# q-combinatorics


def q_int(n: int, lam: Scalar) -> Scalar:
    """(n) at lam: 1 + lam + ... + lam^(n-1), with (0) = 1 by convention."""
    if n < 0:
        raise DomainError("q_int needs n >= 0")
    fld = lam.field
    if n == 0:
        return Scalar(fld, fld.one())
    acc = fld.zero()
    power = fld.one()
    for _ in range(n):
        acc = fld.add(acc, power)
        power = fld.mul(power, lam.value)
    return Scalar(fld, acc)


def q_factorial(n: int, lam: Scalar) -> Scalar:
    """(n)! at lam: the product (1)(2)...(n), empty product for n = 0."""
    if n < 0:
        raise DomainError("q_factorial needs n >= 0")
    fld = lam.field
    acc = fld.one()
    for k in range(1, n + 1):
        acc = fld.mul(acc, q_int(k, lam).value)
    return Scalar(fld, acc)


def q_binom(n: int, k: int, lam: Scalar) -> Scalar:
    """Gaussian binomial coefficient evaluated at lam.

    Computed with the q-Pascal recurrence
    ``C(n,k) = C(n-1,k-1) + lam^k C(n-1,k)`` rather than by dividing
    q-factorials, so values at roots of unity come out right.
    """
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"q_binom needs 0 <= k <= n, got n={n} k={k}")
    fld = lam.field
    one = fld.one()
    # row[j] = C(m, j) at lam, grown row by row
    row = [one]
    for m in range(1, n + 1):
        new = [one]
        power = lam.value
        for j in range(1, m):
            new.append(fld.add(row[j - 1], fld.mul(power, row[j])))
            power = fld.mul(power, lam.value)
        new.append(one)
        row = new
    return Scalar(fld, row[k])


def is_regular(lam: Scalar, n: int) -> bool:
    """True when (k) at lam is nonzero for every 1 <= k <= n."""
    if n < 1:
        raise DomainError("is_regular needs n >= 1")
    fld = lam.field
    acc = fld.zero()
    power = fld.one()
    for _ in range(n):
        acc = fld.add(acc, power)
        if fld.is_zero(acc):
            return False
        power = fld.mul(power, lam.value)
    return True
