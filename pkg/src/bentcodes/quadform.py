"""Quadratic functions GF(p^m) -> F_p.

A :class:`QFunction` is a sum of trace terms ``Tr(c x^e)``.  All analysis
is done on its value table (one residue per field element).  Nothing in
here uses floating point: Walsh values are kept as count vectors over the
p-th roots of unity and their squared magnitudes are reduced exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import NotQuadraticError, TheoryViolation
from .field import Field, FieldElement, nonsquare, nu, quadratic_character
from .linalg import rank_mod_p

# Block size (in matrix entries) for the b x D trace sweeps.
_CHUNK = 1 << 22


@dataclass(frozen=True, eq=False)
class QFunction:
    """Q(x) = sum_i Tr(c_i x^{e_i}).

    ``family`` optionally records the catalog spec this came from.
    """

    field: Field
    terms: tuple[tuple[FieldElement, int], ...]
    label: str = ""
    family: object = None

    @classmethod
    def from_terms(cls, field: Field, terms, label: str = "", family=None) -> "QFunction":
        fixed = []
        for c, e in terms:
            c = field.element(c)
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            fixed.append((c, int(e)))
        return cls(field, tuple(fixed), label, family)

    @cached_property
    def values(self) -> np.ndarray:
        f = self.field
        xs = np.arange(f.q, dtype=np.int64)
        total = np.zeros(f.q, dtype=np.int64)
        for c, e in self.terms:
            xe = f.pow_codes(xs, e) if e > 0 else np.ones(f.q, dtype=np.int64)
            total += f.trace_table[f.mul_codes(c.code, xe)]
        total %= f.p
        total.setflags(write=False)
        return total

    def __call__(self, x: FieldElement) -> int:
        return int(self.values[self.field.element(x).code])

    def __repr__(self):
        inner = " + ".join(f"Tr({list(c.coeffs)}*x^{e})" for c, e in self.terms) or "0"
        return f"QFunction({self.label or inner})"


def is_homogeneous(Q: QFunction) -> bool:
    """Q(0) = 0 and Q(yx) = y^2 Q(x) for every y in F_p and every x."""
    f = Q.field
    vals = Q.values
    if vals[0] != 0:
        return False
    xs = np.arange(f.q, dtype=np.int64)
    for y in range(2, f.p):
        if not np.array_equal(vals[f.scale_codes(y, xs)], (y * y * vals) % f.p):
            return False
    return True


def require_quadratic(Q: QFunction) -> None:
    if not is_homogeneous(Q):
        raise NotQuadraticError(f"{Q!r} fails the homogeneity test Q(yx) = y^2 Q(x)")


# ----------------------------------------------------------------------
# Gram matrix and rank
# ----------------------------------------------------------------------

def gram_matrix(Q: QFunction) -> np.ndarray:
    """Matrix of B(x, y) = Q(x+y) - Q(x) - Q(y) on the polynomial basis."""
    require_quadratic(Q)
    f = Q.field
    basis = np.array([f.p**i for i in range(f.m)], dtype=np.int64)
    vals = Q.values
    sums = f.add_codes(basis[:, None], basis[None, :])
    return (vals[sums] - vals[basis][:, None] - vals[basis][None, :]) % f.p


def rank(G: np.ndarray, p: int) -> int:
    return rank_mod_p(G, p)


def form_rank(Q: QFunction) -> int:
    return rank(gram_matrix(Q), Q.field.p)


def is_bent_rank(Q: QFunction) -> bool:
    return form_rank(Q) == Q.field.m


# ----------------------------------------------------------------------
# Walsh transform, kept exact
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class WalshValue:
    """sum_j counts[j] * omega_p^j."""

    counts: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.counts)

    def autocorrelation(self) -> np.ndarray:
        n = np.array(self.counts, dtype=object)
        return np.array([int(np.dot(n, np.roll(n, -k))) for k in range(self.p)], dtype=object)


def _reduce_autocorrelation(c) -> Optional[int]:
    # |sum n_j w^j|^2 = sum_k c_k w^k; rational iff c_1 = ... = c_{p-1},
    # and then equals c_0 - c_1 because 1 + w + ... + w^{p-1} = 0.
    rest = set(int(v) for v in c[1:])
    if len(rest) > 1:
        return None
    return int(c[0]) - (rest.pop() if rest else 0)


def walsh_norm_sq(W: WalshValue) -> Optional[int]:
    """Exact |W|^2, or ``None`` when it is irrational."""
    return _reduce_autocorrelation(W.autocorrelation())


def _walsh_counts(Q: QFunction, lam_code: int) -> np.ndarray:
    f = Q.field
    xs = np.arange(f.q, dtype=np.int64)
    lin = f.trace_table[f.mul_codes(lam_code, xs)]
    return np.bincount((Q.values - lin) % f.p, minlength=f.p)


def walsh(Q: QFunction, lam: FieldElement) -> WalshValue:
    lam = Q.field.element(lam)
    return WalshValue(tuple(int(v) for v in _walsh_counts(Q, lam.code)))


def walsh_spectrum(Q: QFunction) -> list[WalshValue]:
    """Walsh values at every lambda, indexed by element code."""
    return [
        WalshValue(tuple(int(v) for v in _walsh_counts(Q, lam)))
        for lam in range(Q.field.q)
    ]


def is_bent_walsh(Q: QFunction) -> bool:
    """|W(lambda)|^2 = p^m at every lambda.  Works for any function."""
    target = Q.field.q
    for lam in range(Q.field.q):
        if walsh_norm_sq(WalshValue(tuple(int(v) for v in _walsh_counts(Q, lam)))) != target:
            return False
    return True


def walsh_energy(Q: QFunction) -> Optional[int]:
    """sum_lambda |W(lambda)|^2, reduced exactly (``None`` if irrational)."""
    total = np.zeros(Q.field.p, dtype=object)
    for W in walsh_spectrum(Q):
        total = total + W.autocorrelation()
    return _reduce_autocorrelation(total)


# ----------------------------------------------------------------------
# defining / zero sets
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DefiningSet:
    """Ordered set of distinct nonzero field elements, stored as codes."""

    field: Field
    codes: tuple[int, ...]
    flag: str = "full"
    origin: Optional[QFunction] = None

    def __post_init__(self):
        if self.flag not in ("full", "punctured"):
            raise ValueError(f"flag must be 'full' or 'punctured', not {self.flag!r}")
        if 0 in self.codes:
            raise ValueError("a defining set may not contain zero")
        if len(set(self.codes)) != len(self.codes):
            raise ValueError("defining set has duplicate elements")

    @classmethod
    def from_elements(cls, field: Field, elements, flag="full", origin=None) -> "DefiningSet":
        return cls(field, tuple(field.element(e).code for e in elements), flag, origin)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.codes, dtype=np.int64)
        a.setflags(write=False)
        return a

    @property
    def elements(self) -> list[FieldElement]:
        return [self.field.element(c) for c in self.codes]

    def __len__(self):
        return len(self.codes)


def sort_by_log(field: Field, codes) -> tuple[int, ...]:
    codes = np.asarray(codes, dtype=np.int64)
    return tuple(int(c) for c in codes[np.argsort(field.log[codes], kind="stable")])


def zero_set(Q: QFunction) -> DefiningSet:
    """Nonzero x with Q(x) = 0, in generator-power order."""
    zeros = np.nonzero(Q.values == 0)[0]
    zeros = zeros[zeros != 0]
    return DefiningSet(Q.field, sort_by_log(Q.field, zeros), "full", Q)


# ----------------------------------------------------------------------
# classification by counting
# ----------------------------------------------------------------------

def theoretical_count(ctype: str, r: int, m: int, zeta: int, p: int, mu_class: Optional[str] = None) -> int:
    """Number of x in F_p^m with Q(x) = zeta for a rank-r form of the given type."""
    if ctype in ("I", "III"):
        if r % 2:
            raise ValueError(f"type {ctype} needs even rank, got r={r}")
        if ctype == "III" and r < 2:
            raise ValueError("type III needs rank >= 2")
        sign = 1 if ctype == "I" else -1
        return p ** (m - 1) + sign * nu(zeta, p) * p ** (m - r // 2 - 1)
    if ctype == "II":
        if r % 2 == 0:
            raise ValueError(f"type II needs odd rank, got r={r}")
        if mu_class not in ("square", "nonsquare"):
            raise ValueError("type II needs mu_class 'square' or 'nonsquare'")
        mu = 1 if mu_class == "square" else nonsquare(p)
        return p ** (m - 1) + quadratic_character(mu * zeta, p) * p ** (m - (r + 1) // 2)
    raise ValueError(f"unknown canonical type {ctype!r}")


def theoretical_zero_count(p: int, m: int, eps: int = 0) -> int:
    """|D_Q| for a bent quadratic form (eps ignored for odd m)."""
    if m % 2:
        return p ** (m - 1) - 1
    if eps not in (-1, 1):
        raise ValueError("even m needs eps in {-1, +1}")
    return p ** (m - 1) + eps * (p - 1) * p ** ((m - 2) // 2) - 1


@dataclass(frozen=True)
class FormClassification:
    rank: int
    bent: bool
    canonical_type: str
    epsilon: int
    mu_class: Optional[str]
    zero_count: int
    value_counts: tuple[int, ...] = dc_field(default=(), compare=False)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "type": self.canonical_type,
            "epsilon": self.epsilon,
            "mu_class": self.mu_class,
            "zero_count": self.zero_count,
        }


def _templates(r: int):
    if r % 2 == 0:
        yield "I", None
        if r >= 2:
            yield "III", None
    else:
        yield "II", "square"
        yield "II", "nonsquare"


def classify(Q: QFunction) -> FormClassification:
    f = Q.field
    p, m = f.p, f.m
    r = form_rank(Q)
    bent = r == m
    counts = tuple(int(v) for v in np.bincount(Q.values, minlength=p))
    zero_count = counts[0] - 1

    ctype, mu_class = "degenerate", None
    for t, mu in _templates(r):
        if all(theoretical_count(t, r, m, z, p, mu) == counts[z] for z in range(p)):
            ctype, mu_class = t, mu
            break

    eps = 0
    if bent and m % 2 == 0:
        step = (p - 1) * p ** ((m - 2) // 2)
        diff = zero_count - (p ** (m - 1) - 1)
        if diff not in (step, -step):
            raise TheoryViolation(
                f"bent form with |D_Q|={zero_count} fits neither sign of the zero-count formula"
            )
        eps = 1 if diff > 0 else -1
        if ctype != ("I" if eps == 1 else "III"):
            raise TheoryViolation(f"eps={eps} but value counts match type {ctype}")
    return FormClassification(r, bent, ctype, eps, mu_class, zero_count, counts)


# ----------------------------------------------------------------------
# N_b = #{x != 0 : Q(x) = 0, Tr(bx) = 0}
# ----------------------------------------------------------------------

def annihilator_count(Q: QFunction, b: FieldElement) -> int:
    f = Q.field
    b = f.element(b)
    xs = np.arange(1, f.q, dtype=np.int64)
    hit = (Q.values[xs] == 0) & (f.trace_table[f.mul_codes(b.code, xs)] == 0)
    return int(hit.sum())


def annihilator_counts(Q: QFunction) -> np.ndarray:
    """N_b for every b, indexed by element code.

    Works multiplicatively (discrete logs) over the zero set, so it is an
    independent route from the additive generator-matrix enumeration in
    :mod:`bentcodes.codes`.
    """
    f = Q.field
    z = np.nonzero(Q.values == 0)[0]
    z = z[z != 0]
    out = np.empty(f.q, dtype=np.int64)
    out[0] = z.size
    if z.size == 0:
        out[1:] = 0
        return out
    logz = f.log[z]
    bs = np.arange(1, f.q, dtype=np.int64)
    step = max(1, _CHUNK // z.size)
    for start in range(0, bs.size, step):
        blk = bs[start:start + step]
        prod = f.exp[(f.log[blk][:, None] + logz[None, :]) % (f.q - 1)]
        out[blk] = (f.trace_table[prod] == 0).sum(axis=1)
    return out


def theoretical_nb_distribution(p: int, m: int, eps: int = 0) -> dict[int, int]:
    """Closed-form distribution of N_b over all b, as {value: multiplicity}."""
    rows = Counter()
    if m == 1:
        # only x = 0 is a zero, so N_b = 0 for every b
        return {0: p}
    if m % 2:
        h = p ** ((m - 1) // 2)
        g = (p - 1) * p ** ((m - 3) // 2)
        rows[p ** (m - 1) - 1] += 1
        rows[p ** (m - 2) - 1] += p ** (m - 1) - 1
        rows[p ** (m - 2) + g - 1] += (p - 1) * (p ** (m - 1) + h) // 2
        rows[p ** (m - 2) - g - 1] += (p - 1) * (p ** (m - 1) - h) // 2
    else:
        if eps not in (-1, 1):
            raise ValueError("even m needs eps in {-1, +1}")
        h = p ** ((m - 2) // 2)
        rows[p ** (m - 1) + eps * (p - 1) * h - 1] += 1
        rows[p ** (m - 2) - 1] += (p - 1) * (p ** (m - 1) - eps * h)
        rows[p ** (m - 2) + eps * (p - 1) * h - 1] += p ** (m - 1) + eps * (p - 1) * h - 1
    return {v: k for v, k in sorted(rows.items()) if k}


def nb_distribution(Q: QFunction, cls: Optional[FormClassification] = None) -> dict[int, int]:
    """Brute-force N_b multiset, checked against the closed form.

    Raises :class:`TheoryViolation` on any disagreement.
    """
    cls = cls or classify(Q)
    if not cls.bent:
        raise ValueError("nb_distribution needs a bent form")
    seen = Counter(int(v) for v in annihilator_counts(Q))
    got = dict(sorted(seen.items()))
    want = theoretical_nb_distribution(Q.field.p, Q.field.m, cls.epsilon)
    if got != want:
        raise TheoryViolation(f"N_b distribution {got} != closed form {want}")
    return got


# ----------------------------------------------------------------------
# planarity
# ----------------------------------------------------------------------

def poly_values(field: Field, terms: Sequence[tuple[FieldElement, int]]) -> np.ndarray:
    """Codes of sum_i c_i x^{e_i} at every x."""
    xs = np.arange(field.q, dtype=np.int64)
    acc = np.zeros(field.q, dtype=np.int64)
    for c, e in terms:
        xe = field.pow_codes(xs, e) if e > 0 else np.ones(field.q, dtype=np.int64)
        acc = field.add_codes(acc, field.mul_codes(field.element(c).code, xe))
    return acc


def is_planar(field: Field, pi) -> bool:
    """Every difference map x -> pi(x+a) - pi(x), a != 0, is a bijection.

    ``pi`` is a list of ``(coefficient, exponent)`` terms, a callable on
    field elements, or a precomputed array of image codes.
    """
    if callable(pi):
        vals = np.array([pi(x).code for x in field], dtype=np.int64)
    elif isinstance(pi, np.ndarray):
        vals = pi
    else:
        vals = poly_values(field, pi)
    xs = np.arange(field.q, dtype=np.int64)
    for a in range(1, field.q):
        diff = field.sub_codes(vals[field.add_codes(xs, a)], vals)
        if np.bincount(diff, minlength=field.q).max() > 1:
            return False
    return True
