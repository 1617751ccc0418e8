"""Command-line front end.

Exit status: 0 when every verdict is match or not-applicable, 1 on a
theory violation, 2 on invalid input (bad family parameters, guard,
unparsable element).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Optional

from .catalog import (
    FAMILIES,
    HG,
    FamilySpec,
    Gold,
    Kasami,
    PlanarA,
    PlanarB,
    PlanarC,
    PlanarD,
    PlanarE,
    PolyForm,
    epsilon_predict,
    family_q,
    gold_is_bent,
)
from .codes import CodeReport, build_report, defining_set, generator_matrix, puncture
from .errors import FieldError, InvalidFamilyError, NotQuadraticError, TheoryViolation
from .field import Field, discrete_log, make_field, parse_element
from .quadform import classify, form_rank, is_bent_walsh

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID = 0, 1, 2

ELEMENT_HELP = (
    'field element: "g^t" for a power of the field generator, or '
    '"a0,a1,...,a(m-1)" for coefficients in the basis 1, x, ..., x^(m-1)'
)


def _predict(spec: FamilySpec, field: Field) -> Optional[int]:
    if field.m % 2:
        return None
    return epsilon_predict(spec, field)


def report_for(spec: FamilySpec, field: Field, punctured: bool = False) -> CodeReport:
    Q = family_q(spec, field)
    return build_report(
        Q,
        punctured=punctured,
        family=spec.to_dict(field),
        epsilon_predicted=_predict(spec, field),
    )


# ----------------------------------------------------------------------
# sweeps
# ----------------------------------------------------------------------

# Families whose valid members are all claimed bent.
_ALWAYS_BENT = ("planar-a", "planar-b", "planar-c", "planar-d", "planar-e", "kasami", "hg")


def grid(field: Field, families: Optional[Iterable[str]] = None) -> Iterator[FamilySpec]:
    """Valid grid points, in a fixed order, for each requested family."""
    p, m = field.p, field.m
    names = list(families) if families else list(FAMILIES)
    cs = ["g^0", "g^1"]
    for name in names:
        if name not in FAMILIES:
            raise InvalidFamilyError(name, f"unknown family; choose from {sorted(FAMILIES)}")
        if name == "planar-a":
            points = [PlanarA(c) for c in cs]
        elif name == "planar-b":
            points = [PlanarB(c, k) for k in range(1, m + 1) for c in cs]
        elif name == "planar-c":
            points = [PlanarC(c) for c in cs]
        elif name == "planar-d":
            points = [PlanarD("g^0", u) for u in cs]
        elif name == "planar-e":
            points = [PlanarE(c, m // 3, s) for s in range(3 * m) for c in cs] if m % 3 == 0 else []
        elif name == "gold":
            points = [Gold(f"g^{t}", j) for j in range(1, m + 1) for t in range(field.q - 1)]
        elif name == "kasami":
            points = [Kasami(c) for c in cs]
        elif name == "hg":
            points = [HG(s) for s in range(1, m)]
        else:
            n = m // 2 + 1
            points = [PolyForm(tuple(str(v) for v in vec)) for vec in itertools.product(range(p), repeat=n) if any(vec)]
        for spec in points:
            if spec.is_valid(field):
                yield spec


@dataclass
class SweepRow:
    spec: FamilySpec
    bent: bool
    report: Optional[CodeReport]
    problems: list = dc_field(default_factory=list)
    gold_predicate: Optional[bool] = None

    def to_dict(self, field: Field) -> dict:
        return {
            **self.spec.to_dict(field),
            "bent": self.bent,
            "gold_predicate": self.gold_predicate,
            "report": self.report.to_dict() if self.report else None,
            "problems": self.problems,
        }

    def to_text(self, field: Field) -> str:
        fam = self.spec.to_dict(field)
        params = ",".join(f"{k}={v}" for k, v in fam["params"].items())
        head = f"{fam['family']}({params}) bent={self.bent}"
        if self.report:
            r = self.report
            head += f" [{r.n},{r.k},{r.d}] {r.enumerator} {r.theory_verdict.status}"
            if r.epsilon_flag:
                head += f" FLAG: {r.epsilon_flag}"
        for prob in self.problems:
            head += f" VIOLATION: {prob}"
        return head


@dataclass
class SweepResult:
    field: Field
    rows: list = dc_field(default_factory=list)
    aborted: bool = False

    @property
    def ok(self) -> bool:
        return not any(r.problems for r in self.rows)

    def summary(self) -> dict:
        out = {"points": len(self.rows), "match": 0, "mismatch": 0, "not-applicable": 0, "violations": 0}
        for r in self.rows:
            status = r.report.theory_verdict.status if r.report else "not-applicable"
            out[status] += 1
            out["violations"] += bool(r.problems)
        out["aborted"] = self.aborted
        return out

    def to_dict(self) -> dict:
        return {
            "field": self.field.to_dict(),
            "rows": [r.to_dict(self.field) for r in self.rows],
            "summary": self.summary(),
        }


def sweep_point(spec: FamilySpec, field: Field, punctured: bool = False) -> SweepRow:
    Q = family_q(spec, field)
    bent = form_rank(Q) == field.m
    row = SweepRow(spec, bent, None)
    if isinstance(spec, Gold):
        row.gold_predicate = gold_is_bent(field.p, field.m, spec.j, discrete_log(Q.terms[0][0]))
        if row.gold_predicate != bent:
            row.problems.append(f"gold predicate says {row.gold_predicate}, rank oracle says {bent}")
    elif spec.name in _ALWAYS_BENT and not bent:
        row.problems.append("family member is not bent")
    if bent:
        row.report = report_for(spec, field, punctured)
        if row.report.theory_verdict.status == "mismatch":
            row.problems.append("weight distribution disagrees with the closed form")
    return row


def sweep(
    field: Field,
    families: Optional[Iterable[str]] = None,
    keep_going: bool = False,
    punctured: bool = False,
) -> SweepResult:
    result = SweepResult(field)
    for spec in grid(field, families):
        row = sweep_point(spec, field, punctured)
        result.rows.append(row)
        if row.problems and not keep_going:
            result.aborted = True
            break
    return result


# ----------------------------------------------------------------------
# argument handling
# ----------------------------------------------------------------------

def spec_from_args(args) -> FamilySpec:
    if not args.family:
        raise InvalidFamilyError("?", "--family is required")
    name = args.family
    c = args.c
    if args.t is not None:
        if c is not None:
            raise InvalidFamilyError(name, "give either --c or --t, not both")
        c = f"g^{args.t}"
    if name == "planar-a":
        return PlanarA(c)
    if name == "planar-b":
        return PlanarB(c, args.k if args.k is not None else 1)
    if name == "planar-c":
        return PlanarC(c)
    if name == "planar-d":
        return PlanarD(c, args.u)
    if name == "planar-e":
        if args.k is None or args.s is None:
            raise InvalidFamilyError(name, "needs --k and --s")
        return PlanarE(c, args.k, args.s, args.u)
    if name == "gold":
        if args.j is None:
            raise InvalidFamilyError(name, "needs --j")
        return Gold(c, args.j)
    if name == "kasami":
        return Kasami(c)
    if name == "hg":
        if args.s is None:
            raise InvalidFamilyError(name, "needs --s")
        return HG(args.s)
    if name == "polyform":
        if not args.coeffs:
            raise InvalidFamilyError(name, "needs --coeffs")
        return PolyForm(tuple(args.coeffs))
    raise InvalidFamilyError(name, f"unknown family; choose from {sorted(FAMILIES)}")


def _check_elements(spec: FamilySpec, field: Field) -> None:
    # surface unparsable element strings as FieldError before dispatch
    for key in ("c", "u"):
        val = getattr(spec, key, None)
        if isinstance(val, str):
            parse_element(field, val)
    for val in getattr(spec, "coeffs", ()):
        parse_element(field, str(val))


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2)


def _emit_report(report: CodeReport, fmt: str, D=None) -> str:
    if fmt == "json":
        return _dump(report.to_dict()) + "\n"
    if fmt == "csv":
        return report.to_csv()
    if fmt == "matrix":
        G = generator_matrix(D)
        return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in G)
    return report.to_text()


def cmd_field(args, field: Field, out) -> int:
    rec = field.to_dict()
    if args.format == "json":
        out.write(_dump(rec) + "\n")
    else:
        out.write(f"GF({field.p}^{field.m})\n")
        out.write(f"modulus   : {rec['modulus']}\n")
        out.write(f"generator : {rec['generator']}\n")
    return EXIT_OK


def cmd_bent_check(args, field: Field, out) -> int:
    spec = spec_from_args(args)
    Q = family_q(spec, field)
    rec = {**spec.to_dict(field)}
    try:
        cls = classify(Q)
        rec["rank"] = cls.rank
        rec["bent_rank"] = cls.bent
        rec["classification"] = cls.to_dict()
    except NotQuadraticError as exc:
        rec["rank"] = None
        rec["bent_rank"] = None
        rec["classification"] = None
        rec["note"] = str(exc)
    rec["bent_walsh"] = is_bent_walsh(Q)
    if isinstance(spec, Gold):
        rec["gold_predicate"] = gold_is_bent(field.p, field.m, spec.j, discrete_log(Q.terms[0][0]))
    if field.m % 2 == 0:
        rec["epsilon_predicted"] = epsilon_predict(spec, field)
    agree = rec["bent_rank"] is None or rec["bent_rank"] == rec["bent_walsh"]
    if "gold_predicate" in rec:
        agree = agree and rec["gold_predicate"] == rec["bent_walsh"]
    rec["oracles_agree"] = agree
    if args.format == "json":
        out.write(_dump(rec) + "\n")
    else:
        for key, val in rec.items():
            out.write(f"{key:<18}: {val}\n")
    return EXIT_OK if agree else EXIT_VIOLATION


def cmd_code(args, field: Field, out, punctured: bool) -> int:
    spec = spec_from_args(args)
    report = report_for(spec, field, punctured)
    D = None
    if args.format == "matrix":
        D = defining_set(family_q(spec, field))
        if punctured:
            D = puncture(D)
    out.write(_emit_report(report, args.format, D))
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_sweep(args, field: Field, out) -> int:
    families = args.family_list or None
    result = sweep(field, families, keep_going=args.keep_going, punctured=args.puncture)
    if args.format == "json":
        out.write(_dump(result.to_dict()) + "\n")
    elif args.format == "csv":
        out.write("family,params,bent,n,k,d,enumerator,verdict,violation\n")
        for r in result.rows:
            fam = r.spec.to_dict(field)
            params = ";".join(f"{k}={v}" for k, v in fam["params"].items())
            rep = r.report
            cells = [fam["family"], params, str(r.bent)]
            cells += [str(rep.n), str(rep.k), str(rep.d), rep.enumerator, rep.theory_verdict.status] if rep else ["", "", "", "", "not-applicable"]
            cells.append("|".join(r.problems))
            out.write(",".join(f'"{c}"' if "," in c else c for c in cells) + "\n")
    else:
        for r in result.rows:
            out.write(r.to_text(field) + "\n")
        s = result.summary()
        out.write(
            f"points {s['points']}: match {s['match']}, mismatch {s['mismatch']}, "
            f"not-applicable {s['not-applicable']}, violations {s['violations']}"
            + (" (aborted)" if s["aborted"] else "")
            + "\n"
        )
    return EXIT_OK if result.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    common.add_argument("--m", type=int, required=True, help="extension degree")
    common.add_argument("--format", choices=["text", "json", "csv", "matrix"], default="text")
    common.add_argument("--force-large", action="store_true", help="allow p^m above the enumeration guard")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=sorted(FAMILIES))
    fam.add_argument("--c", help=ELEMENT_HELP)
    fam.add_argument("--u", help=ELEMENT_HELP)
    fam.add_argument("--t", type=int, help="use c = g^t (bypasses the discrete log)")
    fam.add_argument("--j", type=int)
    fam.add_argument("--k", type=int)
    fam.add_argument("--s", type=int)
    fam.add_argument("--coeffs", nargs="+", help="polyform coefficients c_0 c_1 ..., each a " + ELEMENT_HELP)

    parser = argparse.ArgumentParser(
        prog="bentcodes",
        description="Two- and three-weight trace codes from quadratic bent functions.",
        epilog=ELEMENT_HELP,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("field", parents=[common], help="show the field construction")
    sub.add_parser("bent-check", parents=[common, fam], help="rank and Walsh bentness oracles")
    build = sub.add_parser("code-build", parents=[common, fam], help="build C_D and compare with theory")
    build.add_argument("--puncture", action="store_true")
    sub.add_parser("code-puncture", parents=[common, fam], help="build the punctured code")
    sw = sub.add_parser("sweep", parents=[common], help="sweep all families over a parameter grid")
    sw.add_argument("--family", dest="family_list", action="append", choices=sorted(FAMILIES))
    sw.add_argument("--keep-going", action="store_true")
    sw.add_argument("--puncture", action="store_true")
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        field = make_field(args.p, args.m, args.force_large)
        if args.command == "field":
            return cmd_field(args, field, out)
        if args.format == "matrix" and args.command not in ("code-build", "code-puncture"):
            raise InvalidFamilyError(args.command, "--format matrix only applies to code commands")
        if args.command in ("bent-check", "code-build", "code-puncture"):
            _check_elements(spec_from_args(args), field)
        if args.command == "bent-check":
            return cmd_bent_check(args, field, out)
        if args.command == "code-build":
            return cmd_code(args, field, out, args.puncture)
        if args.command == "code-puncture":
            return cmd_code(args, field, out, True)
        return cmd_sweep(args, field, out)
    except (FieldError, InvalidFamilyError, NotQuadraticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TheoryViolation as exc:
        print(f"theory violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
