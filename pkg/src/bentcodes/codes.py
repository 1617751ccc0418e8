"""Trace codes C_D = {(Tr(b d))_{d in D} : b in GF(p^m)}.

Weight distributions are computed two ways: from N_b counts of the
originating quadratic form (``method="fast"``) and by enumerating every
F_p-combination of the rows of a generator matrix (``method="direct"``).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .errors import TheoryViolation
from .field import Field, FieldElement
from .linalg import rank_mod_p, row_reduce
from .quadform import (
    DefiningSet,
    FormClassification,
    QFunction,
    annihilator_counts,
    classify,
    sort_by_log,
    zero_set,
)

_CHUNK = 1 << 22


def defining_set(Q: QFunction) -> DefiningSet:
    return zero_set(Q)


def codeword(b: FieldElement, D: DefiningSet) -> np.ndarray:
    f = D.field
    b = f.element(b)
    return f.trace_table[f.mul_codes(b.code, D.array)]


def trace_rows(D: DefiningSet) -> np.ndarray:
    """m x n matrix with rows (Tr(x^i d_j))_j."""
    f = D.field
    return np.array([codeword(f.element(f.p**i), D) for i in range(f.m)], dtype=np.int64).reshape(f.m, len(D))


def dimension(D: DefiningSet) -> int:
    return rank_mod_p(trace_rows(D), D.field.p)


def generator_matrix(D: DefiningSet) -> np.ndarray:
    """Row-reduced k x n generator matrix."""
    reduced, pivots = row_reduce(trace_rows(D), D.field.p)
    return reduced[: len(pivots)]


# ----------------------------------------------------------------------
# puncturing
# ----------------------------------------------------------------------

def _normalise(field: Field, codes: np.ndarray) -> np.ndarray:
    """Scale each element so its lowest-index nonzero coordinate is 1."""
    digits = field.digits[codes]
    lead = digits[np.arange(len(codes)), (digits != 0).argmax(axis=1)]
    inv = np.array([pow(int(v), field.p - 2, field.p) for v in range(field.p)], dtype=np.int64)
    return field.encode((digits * inv[lead][:, None]) % field.p)


def puncture(D: DefiningSet) -> DefiningSet:
    """One canonical representative per F_p^* orbit."""
    f = D.field
    codes = D.array
    present = set(D.codes)
    for y in range(2, f.p):
        if not present.issuperset(int(v) for v in f.scale_codes(y, codes)):
            raise ValueError("defining set is not closed under prime-field scaling")
    reps = np.unique(_normalise(f, codes))
    return DefiningSet(f, sort_by_log(f, reps), "punctured", D.origin)


# ----------------------------------------------------------------------
# weight distributions
# ----------------------------------------------------------------------

def _weights_direct(D: DefiningSet) -> Counter:
    """Tally weights of all u G, u in F_p^k, for the reduced generator matrix."""
    p = D.field.p
    G = generator_matrix(D)
    k = G.shape[0]
    tally = Counter({0: 1}) if k == 0 else Counter()
    if k == 0:
        return tally
    total = p**k
    weights = p ** np.arange(k, dtype=np.int64)
    step = max(1, _CHUNK // max(1, len(D)))
    for start in range(0, total, step):
        u = (np.arange(start, min(total, start + step), dtype=np.int64)[:, None] // weights) % p
        words = (u @ G) % p
        tally.update(int(w) for w in np.count_nonzero(words, axis=1))
    return tally


def _weights_fast(D: DefiningSet) -> Counter:
    """wt(c_b) = |D| - N_b, deduplicated by the kernel size p^(m-k)."""
    if D.origin is None or D.flag != "full":
        raise ValueError("fast path needs the full zero set of a quadratic origin")
    f = D.field
    nb = annihilator_counts(D.origin)
    raw = Counter(int(len(D) - v) for v in nb)
    mult = f.p ** (f.m - dimension(D))
    out = Counter()
    for w, cnt in raw.items():
        if cnt % mult:
            raise TheoryViolation(f"weight {w} count {cnt} not divisible by kernel size {mult}")
        out[w] = cnt // mult
    return out


def weight_distribution(D: DefiningSet, method: str = "auto") -> dict[int, int]:
    """{weight: A_w}, including A_0 = 1."""
    if method == "auto":
        method = "fast" if D.origin is not None and D.flag == "full" else "direct"
    if method == "fast":
        tally = _weights_fast(D)
    elif method == "direct":
        tally = _weights_direct(D)
    else:
        raise ValueError(f"unknown method {method!r}")
    return dict(sorted(tally.items()))


def minimum_distance(wd: dict[int, int]) -> Optional[int]:
    nonzero = [w for w, a in wd.items() if w > 0 and a > 0]
    return min(nonzero) if nonzero else None


def enumerator(wd: dict[int, int]) -> str:
    """Weight enumerator in the 1 + A_w z^w notation."""
    parts = []
    for w, a in sorted(wd.items()):
        if a == 0:
            continue
        parts.append(str(a) if w == 0 else f"{a}z^{w}")
    return "+".join(parts)


# ----------------------------------------------------------------------
# closed-form tables
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TheoreticalWD:
    p: int
    m: int
    epsilon: int
    punctured: bool
    rows: dict = dc_field(default_factory=dict)

    @property
    def length(self) -> int:
        from .quadform import theoretical_zero_count

        n = theoretical_zero_count(self.p, self.m, self.epsilon)
        return n // (self.p - 1) if self.punctured else n


def theoretical_wd(p: int, m: int, eps: Optional[int] = None, punctured: bool = False) -> TheoreticalWD:
    """Nonzero weights and their counts for the code of a bent quadratic form."""
    rows = Counter()
    if m % 2:
        eps = 0
        if m > 1:
            # m = 1 leaves D empty and the code trivial: no rows
            h = p ** ((m - 3) // 2)
            g = p ** ((m - 1) // 2)
            rows[(p - 1) * (p ** (m - 2) - h)] += (p - 1) * (p ** (m - 1) + g) // 2
            rows[(p - 1) * p ** (m - 2)] += p ** (m - 1) - 1
            rows[(p - 1) * (p ** (m - 2) + h)] += (p - 1) * (p ** (m - 1) - g) // 2
    else:
        if eps not in (-1, 1):
            raise ValueError("even m needs eps in {-1, +1}")
        h = p ** ((m - 2) // 2)
        rows[(p - 1) * p ** (m - 2)] += p ** (m - 1) + eps * (p - 1) * h - 1
        rows[(p - 1) * (p ** (m - 2) + eps * h)] += (p - 1) * (p ** (m - 1) - eps * h)
    if punctured:
        rows = Counter({w // (p - 1): a for w, a in rows.items()})
    return TheoreticalWD(p, m, eps, punctured, {w: a for w, a in sorted(rows.items()) if a})


@dataclass(frozen=True)
class Verdict:
    status: str  # "match" | "mismatch" | "not-applicable"
    differences: tuple = ()

    def __bool__(self):
        return self.status != "mismatch"


def compare(wd: dict[int, int], theory: Optional[TheoreticalWD]) -> Verdict:
    """Compare a computed distribution (A_0 ignored) with the closed form."""
    if theory is None:
        return Verdict("not-applicable")
    got = {w: a for w, a in wd.items() if w > 0 and a}
    want = theory.rows
    diffs = tuple(
        (w, got.get(w, 0), want.get(w, 0))
        for w in sorted(set(got) | set(want))
        if got.get(w, 0) != want.get(w, 0)
    )
    return Verdict("mismatch" if diffs else "match", diffs)


def puncture_weight_relation(D: DefiningSet, b: Optional[FieldElement] = None) -> bool:
    """wt(c_b on D) = (p - 1) wt(c_b on the punctured set), for ``b`` or every b."""
    f = D.field
    Dbar = puncture(D)
    bs = range(f.q) if b is None else [f.element(b).code]
    for code in bs:
        full = int(np.count_nonzero(f.trace_table[f.mul_codes(code, D.array)]))
        part = int(np.count_nonzero(f.trace_table[f.mul_codes(code, Dbar.array)]))
        if full != (f.p - 1) * part:
            raise TheoryViolation(f"b={code}: full weight {full} != (p-1) * {part}")
    return True


# ----------------------------------------------------------------------
# Griesmer
# ----------------------------------------------------------------------

def griesmer(k: int, d: int, q: int) -> int:
    """sum_{i<k} ceil(d / q^i)."""
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    return sum(-(-d // q**i) for i in range(k))


@dataclass(frozen=True)
class GriesmerVerdict:
    bound: int
    meets: bool
    optimal_for_n: bool

    def to_dict(self):
        return {"bound": self.bound, "meets": self.meets, "optimal_for_n": self.optimal_for_n}


def is_griesmer_optimal(n: int, k: int, d: int, q: int) -> GriesmerVerdict:
    bound = griesmer(k, d, q)
    return GriesmerVerdict(bound, n == bound, griesmer(k, d + 1, q) > n)


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

@dataclass
class CodeReport:
    field: Field
    n: int
    k: int
    d: Optional[int]
    wd: dict
    punctured: bool = False
    family: Optional[dict] = None
    classification: Optional[FormClassification] = None
    theory_verdict: Verdict = dc_field(default_factory=lambda: Verdict("not-applicable"))
    griesmer: Optional[GriesmerVerdict] = None
    epsilon_predicted: Optional[int] = None

    @property
    def epsilon(self) -> int:
        return self.classification.epsilon if self.classification else 0

    @property
    def enumerator(self) -> str:
        return enumerator(self.wd)

    @property
    def epsilon_flag(self) -> Optional[str]:
        """Set when the measured sign differs from the closed-form prediction."""
        if self.epsilon_predicted is None or not self.epsilon:
            return None
        if self.epsilon_predicted != self.epsilon:
            return f"measured eps={self.epsilon} disagrees with predicted eps={self.epsilon_predicted}"
        return None

    @property
    def ok(self) -> bool:
        return self.theory_verdict.status != "mismatch"

    def to_dict(self) -> dict:
        out = {
            "field": self.field.to_dict(),
            "family": self.family,
            "punctured": self.punctured,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "weights": [{"w": w, "count": a} for w, a in sorted(self.wd.items())],
            "enumerator": self.enumerator,
            "classification": self.classification.to_dict() if self.classification else None,
            "epsilon": self.epsilon,
            "epsilon_predicted": self.epsilon_predicted,
            "epsilon_flag": self.epsilon_flag,
            "theory_verdict": self.theory_verdict.status,
            "theory_differences": [
                {"w": w, "computed": a, "expected": e} for w, a, e in self.theory_verdict.differences
            ],
            "griesmer": self.griesmer.to_dict() if self.griesmer else None,
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        lines = ["w,A_w"] + [f"{w},{a}" for w, a in sorted(self.wd.items())]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        f = self.field
        lines = []
        if self.family:
            params = ", ".join(f"{k}={v}" for k, v in self.family["params"].items())
            lines.append(f"family     : {self.family['family']}({params})")
        lines.append(f"field      : GF({f.p}^{f.m}), modulus {list(f.modulus)}")
        kind = "punctured" if self.punctured else "full"
        lines.append(f"code       : [{self.n},{self.k},{self.d}] over F_{f.p} ({kind})")
        lines.append(f"enumerator : {self.enumerator}")
        if self.classification:
            c = self.classification
            lines.append(
                f"form       : rank {c.rank}, type {c.canonical_type}, eps {c.epsilon}, |D_Q| {c.zero_count}"
            )
        if self.epsilon_predicted is not None:
            lines.append(f"eps (pred) : {self.epsilon_predicted}")
        if self.epsilon_flag:
            lines.append(f"FLAG       : {self.epsilon_flag}")
        lines.append(f"theory     : {self.theory_verdict.status}")
        for w, a, e in self.theory_verdict.differences:
            lines.append(f"  w={w}: computed {a}, expected {e}")
        if self.griesmer:
            g = self.griesmer
            lines.append(f"griesmer   : bound {g.bound}, meets {g.meets}, optimal_for_n {g.optimal_for_n}")
        return "\n".join(lines) + "\n"


def build_report(
    Q: QFunction,
    punctured: bool = False,
    family: Optional[dict] = None,
    epsilon_predicted: Optional[int] = None,
    method: str = "auto",
) -> CodeReport:
    """Construct C_{D_Q} (or its punctured version) and measure it."""
    f = Q.field
    cls = classify(Q)
    D = defining_set(Q)
    if punctured:
        D = puncture(D)
    wd = weight_distribution(D, method)
    k = dimension(D)
    d = minimum_distance(wd)
    theory = theoretical_wd(f.p, f.m, cls.epsilon, punctured) if cls.bent else None
    verdict = compare(wd, theory)
    gv = is_griesmer_optimal(len(D), k, d, f.p) if d and k else None
    return CodeReport(
        field=f,
        n=len(D),
        k=k,
        d=d,
        wd=wd,
        punctured=punctured,
        family=family,
        classification=cls,
        theory_verdict=verdict,
        griesmer=gv,
        epsilon_predicted=epsilon_predicted,
    )
