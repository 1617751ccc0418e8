"""Exact arithmetic in F_p and GF(p^m) over a polynomial basis.

An element of GF(p^m) is stored as its integer code
``c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` where ``(c_0, ..., c_{m-1})`` are
its coordinates in the basis ``{1, x, ..., x^{m-1}}``.  The code is a
canonical representation, so element equality is integer equality.

Every field carries exhaustive exp/log/trace tables.  They are what make
the O(p^m) and O(p^{2m}) sweeps elsewhere in the package cheap, and they
are why fields above :data:`ENUMERATION_GUARD` are refused by default.
"""

from __future__ import annotations

import itertools
import math
import re
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import FieldError, GuardError

ENUMERATION_GUARD = 2**24


# ----------------------------------------------------------------------
# integer helpers
# ----------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def quadratic_character(a: int, p: int) -> int:
    """Quadratic character of F_p, with eta(0) = 0."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def nu(zeta: int, p: int) -> int:
    """nu(0) = p - 1 and nu(zeta) = -1 for nonzero zeta."""
    return p - 1 if zeta % p == 0 else -1


def nonsquare(p: int) -> int:
    """Smallest quadratic nonresidue mod the odd prime ``p``."""
    for a in range(2, p):
        if quadratic_character(a, p) == -1:
            return a
    raise FieldError(f"p={p} has no nonsquare (not an odd prime)")


# ----------------------------------------------------------------------
# polynomials over F_p, coefficient tuples constant term first
# ----------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _poly_trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fc) % p
        _poly_trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Exhaustive factor search: no monic factor of degree <= deg(f)/2."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(f, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (c_0 compared first)."""
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")  # unreachable


# ----------------------------------------------------------------------
# fields
# ----------------------------------------------------------------------

class Field:
    """GF(p^m) with deterministic modulus and primitive element.

    Use :func:`make_field` rather than calling this directly; it caches one
    instance per ``(p, m)``.
    """

    def __init__(self, p: int, m: int, force_large: bool = False):
        if not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if p == 2:
            raise FieldError("characteristic 2 is not supported; p must be odd")
        if m < 1:
            raise FieldError(f"extension degree m={m} must be >= 1")
        q = p**m
        if q > ENUMERATION_GUARD and not force_large:
            raise GuardError(
                f"p^m = {q} exceeds the enumeration guard {ENUMERATION_GUARD}; "
                "pass force_large=True to override"
            )
        self.p = p
        self.m = m
        self.q = q
        self.modulus = smallest_irreducible(p, m)

        self._weights = p ** np.arange(m, dtype=np.int64)
        self.digits = (np.arange(q, dtype=np.int64)[:, None] // self._weights) % p
        self.digits.setflags(write=False)

        gen = self._find_generator()
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        cur = [1]
        g = list(self._coeffs_of(gen))
        for t in range(q - 1):
            code = self._code_of(cur)
            exp[t] = code
            log[code] = t
            cur = _poly_mod(_poly_mul(cur, g, p), self.modulus, p)
        if (log[1:] < 0).any():
            raise FieldError("generator does not enumerate the multiplicative group")
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp = exp
        self.log = log

        # Tr is F_p-linear: tabulate it from the traces of the basis monomials.
        basis_tr = np.array([trace(self.element(p**i)) for i in range(m)], dtype=np.int64)
        self.trace_table = (self.digits @ basis_tr) % p
        self.trace_table.setflags(write=False)
        self.generator = self.element(gen)

    # -- construction helpers ------------------------------------------

    def _coeffs_of(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def _code_of(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (c % self.p)
        return code

    def _slow_mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        r = _poly_mod(_poly_mul(a, b, self.p), self.modulus, self.p)
        return tuple(r + [0] * (self.m - len(r)))

    def _slow_pow(self, a: tuple[int, ...], e: int) -> tuple[int, ...]:
        result = tuple([1] + [0] * (self.m - 1))
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        order = self.q - 1
        one = tuple([1] + [0] * (self.m - 1))
        cofactors = [order // r for r in prime_factors(order)]
        for coeffs in itertools.product(range(self.p), repeat=self.m):
            if not any(coeffs):
                continue
            if self._slow_pow(coeffs, order) != one:
                raise FieldError("modulus is not irreducible")
            if all(self._slow_pow(coeffs, c) != one for c in cofactors):
                return self._code_of(coeffs)
        raise FieldError("no primitive element found")

    # -- element access --------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Element from an integer code, a coefficient sequence, or an element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if not 0 <= value < self.q:
                raise FieldError(f"code {value} out of range for GF({self.p}^{self.m})")
            return FieldElement(self, value)
        coeffs = list(value)
        if len(coeffs) > self.m:
            raise FieldError(f"expected at most {self.m} coefficients, got {len(coeffs)}")
        return FieldElement(self, self._code_of(coeffs))

    def prime(self, a: int) -> "FieldElement":
        """Embed the residue ``a mod p`` into the field."""
        return FieldElement(self, a % self.p)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def basis(self) -> list["FieldElement"]:
        return [FieldElement(self, self.p**i) for i in range(self.m)]

    def __iter__(self) -> Iterator["FieldElement"]:
        for code in range(self.q):
            yield FieldElement(self, code)

    def __len__(self) -> int:
        return self.q

    def gpow(self, t: int) -> "FieldElement":
        """generator ** t."""
        return FieldElement(self, int(self.exp[t % (self.q - 1)]))

    # -- vectorised arithmetic on integer codes ----------------------------

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._weights

    def add_codes(self, a, b) -> np.ndarray:
        return self.encode((self.digits[a] + self.digits[b]) % self.p)

    def sub_codes(self, a, b) -> np.ndarray:
        return self.encode((self.digits[a] - self.digits[b]) % self.p)

    def scale_codes(self, y: int, a) -> np.ndarray:
        """Multiply codes by the prime-field scalar ``y``."""
        return self.encode((y * self.digits[a]) % self.p)

    def mul_codes(self, c: int, a) -> np.ndarray:
        """Multiply every code in ``a`` by the single element code ``c``."""
        a = np.asarray(a, dtype=np.int64)
        if c == 0:
            return np.zeros_like(a)
        out = self.exp[(self.log[a] + self.log[c]) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def pow_codes(self, a, e: int) -> np.ndarray:
        """Raise every code in ``a`` to the power ``e >= 1``."""
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.log[a] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def trace_codes(self, a) -> np.ndarray:
        return self.trace_table[a]

    # -- identity / serialisation --------------------------------------

    def _key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "modulus": list(self.modulus),
            "generator": list(self.generator.coeffs),
        }


@lru_cache(maxsize=None)
def make_field(p: int, m: int, force_large: bool = False) -> Field:
    return Field(p, m, force_large=force_large)


class FieldElement:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field._coeffs_of(self.code)

    def _check(self, other) -> "FieldElement":
        if isinstance(other, (int, np.integer)):
            return self.field.prime(int(other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            raise FieldError("operands belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, int(self.field.add_codes(self.code, other.code)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, int(self.field.scale_codes(-1, self.code)))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, int(self.field.sub_codes(self.code, other.code)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, int(self.field.mul_codes(self.code, other.code)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero in GF(p^m)")
        f = self.field
        return FieldElement(f, int(f.exp[(-f.log[self.code]) % (f.q - 1)]))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def power(self, e: int, nonzero: bool = False) -> "FieldElement":
        """Square-and-multiply.

        The exponent is reduced mod p^m - 1 only when ``nonzero`` is set,
        since that reduction is wrong for the zero element.
        """
        base = self
        if nonzero:
            if self.code == 0:
                raise FieldError("power(..., nonzero=True) called on zero")
            e %= self.field.q - 1
        if e < 0:
            base = base.inverse()
            e = -e
        result = self.field.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __pow__(self, e: int):
        return self.power(e)

    def is_square(self) -> bool:
        """True for nonzero squares of GF(p^m) (even discrete log)."""
        return self.code != 0 and self.field.log[self.code] % 2 == 0

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p and self.code < self.field.p
        return (
            isinstance(other, FieldElement)
            and self.code == other.code
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FieldElement({list(self.coeffs)})"


def trace(a: FieldElement) -> int:
    """Absolute trace a + a^p + ... + a^{p^{m-1}} by Frobenius iteration."""
    f = a.field
    total = a
    conj = a
    for _ in range(f.m - 1):
        conj = conj.power(f.p)
        total = total + conj
    if total.code >= f.p:
        raise FieldError(f"trace {total!r} left the prime subfield; modulus is broken")
    return total.code


def discrete_log(c: FieldElement) -> int:
    """Smallest t >= 0 with generator^t = c.

    Reads the table filled by the exhaustive generator scan at field
    construction.
    """
    if c.code == 0:
        raise FieldError("discrete log of zero is undefined")
    return int(c.field.log[c.code])


_GPOW = re.compile(r"^\s*g\s*\^\s*(-?\d+)\s*$")


def parse_element(field: Field, text: str) -> FieldElement:
    """Parse ``"g^t"`` (generator power) or ``"a0,a1,..."`` (basis coefficients)."""
    match = _GPOW.match(text)
    if match:
        return field.gpow(int(match.group(1)))
    try:
        coeffs = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise FieldError(f"cannot parse field element {text!r}") from None
    if any(not 0 <= c < field.p for c in coeffs):
        raise FieldError(f"coefficients of {text!r} must lie in [0, {field.p})")
    return field.element(coeffs)


def format_element(a: FieldElement) -> str:
    return ",".join(str(c) for c in a.coeffs)
