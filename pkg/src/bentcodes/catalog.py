"""Quadratic Bent / planar function families.

Each family is a small dataclass.  ``validate(field)`` raises
:class:`InvalidFamilyError` naming the first violated condition, and
``terms(field)`` returns the trace-term list ``[(c_i, e_i)]`` with
``Q(x) = sum Tr(c_i x^{e_i})``.  Field-element parameters default to 1
(or the field generator for the primitive ``u`` of family (e)), and may be
given as elements, integer codes, coefficient lists, or "g^t" strings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Any, Optional

from .errors import InvalidFamilyError
from .field import Field, FieldElement, discrete_log, format_element, parse_element
from .quadform import QFunction


def _elem(field: Field, value, default: str = "1") -> FieldElement:
    if value is None:
        value = default
    if isinstance(value, str):
        return parse_element(field, value)
    return field.element(value)


def _is_primitive(u: FieldElement) -> bool:
    return u.code != 0 and math.gcd(discrete_log(u), u.field.q - 1) == 1


@dataclass(frozen=True)
class FamilySpec:
    """Base class; subclasses set ``name``."""

    name = "family"

    def validate(self, field: Field) -> None:
        pass

    def terms(self, field: Field) -> list[tuple[FieldElement, int]]:
        raise NotImplementedError

    def planar_terms(self, field: Field) -> Optional[list[tuple[FieldElement, int]]]:
        """Terms of the underlying map pi with Q = Tr(c pi(x)), if planar."""
        return None

    def params(self, field: Field) -> dict[str, Any]:
        out = {}
        for key, value in self.__dict__.items():
            if isinstance(value, (str, FieldElement)) or key in ("c", "u"):
                out[key] = format_element(_elem(field, value, "g^1" if key == "u" else "1"))
            elif isinstance(value, tuple):
                out[key] = [format_element(_elem(field, v)) for v in value]
            else:
                out[key] = value
        return out

    def to_dict(self, field: Field) -> dict:
        return {"family": self.name, "params": self.params(field)}

    def is_valid(self, field: Field) -> bool:
        try:
            self.validate(field)
        except InvalidFamilyError:
            return False
        return True

    def fail(self, condition: str):
        raise InvalidFamilyError(self.name, condition)

    def _nonzero_c(self, field: Field) -> FieldElement:
        c = _elem(field, getattr(self, "c", None))
        if c.code == 0:
            self.fail("c must be nonzero")
        return c


def _scaled(c: FieldElement, pi_terms) -> list[tuple[FieldElement, int]]:
    return [(c * a, e) for a, e in pi_terms]


@dataclass(frozen=True)
class PlanarA(FamilySpec):
    """Tr(c x^2)."""

    c: Any = None
    name = "planar-a"

    def validate(self, field):
        self._nonzero_c(field)

    def planar_terms(self, field):
        return [(field.one, 2)]

    def terms(self, field):
        self.validate(field)
        return _scaled(_elem(field, self.c), self.planar_terms(field))


@dataclass(frozen=True)
class PlanarB(FamilySpec):
    """Tr(c x^{p^k + 1}) with m / gcd(m, k) odd."""

    c: Any = None
    k: int = 1
    name = "planar-b"

    def validate(self, field):
        self._nonzero_c(field)
        if self.k < 0:
            self.fail("k must be >= 0")
        if (field.m // math.gcd(field.m, self.k)) % 2 == 0:
            self.fail("m/gcd(m,k) must be odd")

    def planar_terms(self, field):
        return [(field.one, field.p**self.k + 1)]

    def terms(self, field):
        self.validate(field)
        return _scaled(_elem(field, self.c), self.planar_terms(field))


def _require_p3_odd_m(spec: FamilySpec, field: Field):
    if field.p != 3:
        spec.fail("requires p = 3")
    if field.m % 2 == 0:
        spec.fail("requires odd m")


@dataclass(frozen=True)
class PlanarC(FamilySpec):
    """Tr(c (x^10 - x^6 - x^2)), p = 3, m odd."""

    c: Any = None
    name = "planar-c"

    def validate(self, field):
        self._nonzero_c(field)
        _require_p3_odd_m(self, field)

    def planar_terms(self, field):
        minus = field.prime(-1)
        return [(field.one, 10), (minus, 6), (minus, 2)]

    def terms(self, field):
        self.validate(field)
        return _scaled(_elem(field, self.c), self.planar_terms(field))


@dataclass(frozen=True)
class PlanarD(FamilySpec):
    """Tr(c (x^10 - u x^6 - u^2 x^2)), p = 3, m odd, u != 0."""

    c: Any = None
    u: Any = None
    name = "planar-d"

    def validate(self, field):
        self._nonzero_c(field)
        _require_p3_odd_m(self, field)
        if _elem(field, self.u).code == 0:
            self.fail("u must be nonzero")

    def planar_terms(self, field):
        u = _elem(field, self.u)
        return [(field.one, 10), (-u, 6), (-(u * u), 2)]

    def terms(self, field):
        self.validate(field)
        return _scaled(_elem(field, self.c), self.planar_terms(field))


@dataclass(frozen=True)
class PlanarE(FamilySpec):
    """Tr(c (x^{p^s+1} - u^{p^k-1} x^{p^k + p^{2k+s}})) with m = 3k.

    ``u`` defaults to the field generator.
    """

    c: Any = None
    k: int = 1
    s: int = 4
    u: Any = None
    name = "planar-e"

    def validate(self, field):
        self._nonzero_c(field)
        k, s = self.k, self.s
        if k < 1 or s < 0:
            self.fail("need k >= 1 and s >= 0")
        if field.m != 3 * k:
            self.fail("m must equal 3k")
        if math.gcd(k, 3) != 1:
            self.fail("gcd(k,3) must be 1")
        if (k - s) % 3:
            self.fail("k - s must be 0 mod 3")
        if s == k:
            self.fail("s must differ from k")
        if (k // math.gcd(k, s)) % 2 == 0:
            self.fail("k/gcd(k,s) must be odd")
        if not _is_primitive(_elem(field, self.u, "g^1")):
            self.fail("u must be primitive")

    def planar_terms(self, field):
        p, k, s = field.p, self.k, self.s
        u = _elem(field, self.u, "g^1")
        return [
            (field.one, p**s + 1),
            (-u.power(p**k - 1), p**k + p ** (2 * k + s)),
        ]

    def terms(self, field):
        self.validate(field)
        return _scaled(_elem(field, self.c), self.planar_terms(field))


@dataclass(frozen=True)
class Gold(FamilySpec):
    """Tr(c x^{p^j + 1}), 1 <= j <= m.

    Bentness is not part of validity; see :func:`gold_is_bent`.
    """

    c: Any = None
    j: int = 1
    name = "gold"

    def validate(self, field):
        self._nonzero_c(field)
        if not 1 <= self.j <= field.m:
            self.fail("j must satisfy 1 <= j <= m")

    def terms(self, field):
        self.validate(field)
        return [(_elem(field, self.c), field.p**self.j + 1)]

    def predicate(self, field) -> bool:
        self.validate(field)
        return gold_is_bent(field.p, field.m, self.j, discrete_log(_elem(field, self.c)))


@dataclass(frozen=True)
class Kasami(FamilySpec):
    """Tr(c x^{p^{m/2} + 1}), m even, c + c^{p^{m/2}} != 0."""

    c: Any = None
    name = "kasami"

    def validate(self, field):
        c = self._nonzero_c(field)
        if field.m % 2:
            self.fail("m must be even")
        if not kasami_valid(c):
            self.fail("c + c^(p^(m/2)) must be nonzero")

    def terms(self, field):
        self.validate(field)
        return [(_elem(field, self.c), field.p ** (field.m // 2) + 1)]


@dataclass(frozen=True)
class HG(FamilySpec):
    """Q(x) = H(x^2) for the Helleseth-Gong trace polynomial H."""

    s: int = 1
    name = "hg"

    def validate(self, field):
        hg_coefficients(field.p, field.m, self.s)

    def terms(self, field):
        return hg_q_terms(field, self.s)


@dataclass(frozen=True)
class PolyForm(FamilySpec):
    """sum_{i=0}^{floor(m/2)} Tr(c_i x^{p^i + 1}); missing c_i are zero."""

    coeffs: tuple = ()
    name = "polyform"

    def validate(self, field):
        if len(self.coeffs) > field.m // 2 + 1:
            self.fail(f"at most floor(m/2)+1 = {field.m // 2 + 1} coefficients")
        if not self.coeffs:
            self.fail("need at least one coefficient")

    def terms(self, field):
        self.validate(field)
        return [
            (_elem(field, c), field.p**i + 1)
            for i, c in enumerate(self.coeffs)
            if _elem(field, c).code
        ]


FAMILIES = {
    cls.name: cls
    for cls in (PlanarA, PlanarB, PlanarC, PlanarD, PlanarE, Gold, Kasami, HG, PolyForm)
}


def family_q(spec: FamilySpec, field: Field) -> QFunction:
    """QFunction for a validated family spec."""
    spec.validate(field)
    return QFunction.from_terms(field, spec.terms(field), label=spec.name, family=spec)


def eval_family(spec: FamilySpec, x: FieldElement) -> int:
    return family_q(spec, x.field)(x)


# ----------------------------------------------------------------------
# predicates
# ----------------------------------------------------------------------

def gold_is_bent(p: int, m: int, j: int, t: int) -> bool:
    """Divisibility criterion for Tr(alpha^t x^{p^j+1}) to be bent."""
    if not 1 <= j <= m:
        raise ValueError("need 1 <= j <= m")
    divisor = p ** math.gcd(2 * j, m) - 1
    return ((p**m - 1) // 2 - t * (p**j - 1)) % divisor != 0


def kasami_valid(c: FieldElement) -> bool:
    f = c.field
    if f.m % 2:
        raise ValueError("Kasami functions need even m")
    return (c + c.power(f.p ** (f.m // 2))).code != 0


# ----------------------------------------------------------------------
# Helleseth-Gong
# ----------------------------------------------------------------------

def hg_coefficients(p: int, m: int, s: int) -> list[int]:
    """u_0, ..., u_l as residues mod p, for m = 2l + 1."""
    if m % 2 == 0:
        raise InvalidFamilyError("hg", "m must be odd")
    ell = (m - 1) // 2
    if not 1 <= s <= 2 * ell:
        raise InvalidFamilyError("hg", "s must satisfy 1 <= s <= 2l")
    if math.gcd(s, m) != 1:
        raise InvalidFamilyError("hg", "gcd(s, m) must be 1")
    b: dict[int, int] = {}
    for i in range(ell + 1):
        sign = -1 if i % 2 else 1
        for idx in ((i * s) % m, (-i * s) % m):
            if b.setdefault(idx, sign) != sign:
                raise InvalidFamilyError("hg", f"inconsistent b-sequence at index {idx}")
    if len(b) != m:
        raise InvalidFamilyError("hg", "b-sequence not fully determined")
    u = [(p + 1) // 2 % p]
    u += [b[(2 * i) % m] % p for i in range(1, ell + 1)]
    return u


def hg_build(p: int, m: int, s: int) -> list[tuple[int, int]]:
    """H's trace terms as (u_i, (p^{2i}+1)/2)."""
    u = hg_coefficients(p, m, s)
    return [(ui, (p ** (2 * i) + 1) // 2) for i, ui in enumerate(u)]


def hg_q_terms(field: Field, s: int) -> list[tuple[FieldElement, int]]:
    terms = hg_build(field.p, field.m, s)
    return [(field.prime(ui), 2 * e) for ui, e in terms if ui]


def hg_q(p: int, m: int, s: int, field: Optional[Field] = None) -> QFunction:
    from .field import make_field

    field = field or make_field(p, m)
    return family_q(HG(s), field)


# ----------------------------------------------------------------------
# predicted sign
# ----------------------------------------------------------------------

def epsilon_predict(spec: FamilySpec, field: Field) -> Optional[int]:
    """Closed-form eps where one is known, else ``None``.

    For Tr(c x^2) and Tr(c x^{p^k+1}) with m/gcd(m,k) odd the sign is
    eta(c) (-1)^{((p-1)/2)^2 (m/2) + 1}, with eta the quadratic character
    of GF(p^m).  Gold specs that coincide with one of these are covered
    too.  Kasami forms always give -1.
    """
    p, m = field.p, field.m
    if m % 2:
        raise ValueError("eps is only defined for even m")
    if isinstance(spec, Kasami):
        return -1
    if isinstance(spec, Gold):
        if spec.j == m:
            spec = PlanarA(spec.c)
        elif (m // math.gcd(m, spec.j)) % 2 == 1:
            spec = PlanarB(spec.c, spec.j)
        else:
            return None
    if isinstance(spec, (PlanarA, PlanarB)):
        c = _elem(field, spec.c)
        eta = 1 if c.is_square() else -1
        return eta * (-1) ** (((p - 1) // 2) ** 2 * (m // 2) + 1)
    return None


def spec_from_params(name: str, params: dict) -> FamilySpec:
    """Build a spec from a serialised ``{family, params}`` record."""
    try:
        cls = FAMILIES[name]
    except KeyError:
        raise InvalidFamilyError(name, f"unknown family; choose from {sorted(FAMILIES)}") from None
    kwargs = dict(params)
    if "coeffs" in kwargs:
        kwargs["coeffs"] = tuple(kwargs["coeffs"])
    return cls(**kwargs)
