"""Command-line front door: `sqfree-lab <command> --input FILE [options]`.

One command per question.  Exit codes: 0 success, 1 corpus criterion
failure, 2 unreadable/unparsable input, 3 precondition violation (for
example a radical-only operation applied to a non-radical ideal).  With
--json a single object {"command", "input", "field", "result", "witness"}
is printed; text and JSON modes always report the same verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .acceptance import CorpusError, run_criteria
from .duality import ccm_verdict, lyubeznik_table
from .fields import QQ, FieldSpec
from .groebner import (
    DEGREVLEX,
    Ideal,
    MonomialIdeal,
    MonomialOrder,
    ParseError,
    ReductionError,
    buchberger,
    initial_ideal,
    initial_ideal_stability,
    is_radical_monomial,
    monomial_str,
    parse_ideal_file,
    polynomial_str,
)
from .simplicial import (
    buchsbaum_verdict,
    cm_verdict,
    complex_of_ideal,
    dual_graph,
    parse_complex_file,
    reduced_homology,
    sr_ideal,
)

COMPLEX_COMMANDS = {
    "homology",
    "cm",
    "buchsbaum",
    "ccm",
    "lyubeznik",
    "dual-graph",
    "sr-ideal",
}
IDEAL_COMMANDS = {"groebner", "initial-ideal", "radical", "stability", "complex-of-ideal"}


@dataclass(frozen=True)
class JobSpec:
    command: str
    input: str
    char: int = None  # None: default QQ / whatever the ideal file says
    order: MonomialOrder = DEGREVLEX
    json_mode: bool = False
    primes: tuple = (2, 3, 5, 7, 11)


def _field_for_complex(spec: JobSpec) -> FieldSpec:
    return FieldSpec(spec.char) if spec.char is not None else QQ


def _ideal_with_field(spec: JobSpec) -> Ideal:
    ideal = parse_ideal_file(spec.input)
    if spec.char is not None and spec.char != ideal.field.characteristic:
        raise ValueError(
            f"--char {spec.char} conflicts with the file's characteristic "
            f"{ideal.field.characteristic}"
        )
    return ideal


def _monomial_ideal(ideal: Ideal) -> MonomialIdeal:
    exps = []
    for g in ideal.generators:
        if len(g.terms) != 1:
            raise ValueError(f"generator {g} is not a monomial")
        exps.extend(g.terms)
    return MonomialIdeal(ideal.n, exps)


def _facet_lists(delta):
    return sorted(sorted(f) for f in delta.facets)


def run(spec: JobSpec):
    """Execute one job; returns (field, result, witness, text_lines)."""
    if spec.command in COMPLEX_COMMANDS:
        delta = parse_complex_file(spec.input)
        fld = _field_for_complex(spec)
        if spec.command == "homology":
            hom = reduced_homology(delta, fld)
            result = {"min_degree": -1, "dims": list(hom.dims)}
            return fld, result, None, [str(hom)]
        if spec.command == "cm":
            v = cm_verdict(delta, fld)
            lines = [f"Cohen-Macaulay over {fld}: {'yes' if v.ok else 'no'}"]
            if not v.ok:
                lines.append(
                    f"witness: link of {list(v.face)} has H~_{v.degree} != 0"
                )
            return fld, v.ok, v.witness, lines
        if spec.command == "buchsbaum":
            v = buchsbaum_verdict(delta, fld)
            lines = [f"Buchsbaum over {fld}: {'yes' if v.ok else 'no'}"]
            if not v.ok:
                lines.append(f"witness: {v.reason}"
                             + (f" at face {list(v.face)}" if v.face else ""))
            return fld, v.ok, v.witness, lines
        if spec.command == "ccm":
            v = ccm_verdict(delta, fld)
            lines = [f"canonical Cohen-Macaulay over {fld}: {'yes' if v.ok else 'no'}"]
            if not v.ok:
                lines.append(
                    f"witness: Ext^{delta.n - v.witness} of the canonical module "
                    f"is nonzero (first failing i = {v.witness} < d = {v.d})"
                )
            return fld, v.ok, v.witness, lines
        if spec.command == "lyubeznik":
            table = lyubeznik_table(delta, fld)
            lines = [f"Lyubeznik table over {fld} (d = {table.d}):", str(table)]
            lines.append(f"trivial: {'yes' if table.is_trivial else 'no'}")
            return fld, table.to_json_obj(), None, lines
        if spec.command == "dual-graph":
            g = dual_graph(delta)
            result = {
                "facets": [list(f) for f in g.facets],
                "edges": [list(e) for e in g.edges],
                "components": g.n_components,
            }
            lines = [f"{len(g.facets)} facets, {len(g.edges)} edges, "
                     f"{g.n_components} component(s)"]
            for i, f in enumerate(g.facets):
                lines.append(f"  [{i}] {' '.join(map(str, f))}")
            for a, b in g.edges:
                lines.append(f"  edge {a} -- {b}")
            return fld, result, None, lines
        if spec.command == "sr-ideal":
            J = sr_ideal(delta)
            gens = [monomial_str(e) for e in J.sorted_gens(spec.order)]
            return fld, gens, None, gens or ["(zero ideal)"]

    if spec.command in IDEAL_COMMANDS:
        ideal = _ideal_with_field(spec)
        fld = ideal.field
        if spec.command == "groebner":
            basis = buchberger(ideal, spec.order)
            strs = [polynomial_str(g, spec.order) for g in basis]
            return fld, strs, None, strs or ["(zero ideal)"]
        if spec.command == "initial-ideal":
            J = initial_ideal(ideal, spec.order)
            gens = [monomial_str(e) for e in J.sorted_gens(spec.order)]
            return fld, gens, None, gens or ["(zero ideal)"]
        if spec.command == "radical":
            J = _monomial_ideal(ideal)
            ok = is_radical_monomial(J)
            return fld, ok, None, [f"radical monomial ideal: {'yes' if ok else 'no'}"]
        if spec.command == "stability":
            report = initial_ideal_stability(ideal, spec.order, spec.primes)
            result = {
                "base": [monomial_str(e) for e in report.base.sorted_gens(spec.order)],
                "verdicts": [
                    {"p": v.p, "status": v.status, "detail": v.detail}
                    for v in report.verdicts
                ],
                "all_agree": report.all_agree,
            }
            lines = [f"in(I) over QQ: ({', '.join(result['base'])})"]
            for v in report.verdicts:
                extra = f" ({v.detail})" if v.detail else ""
                lines.append(f"  p = {v.p}: {v.status}{extra}")
            lines.append(f"all primes agree: {'yes' if report.all_agree else 'no'}")
            return fld, result, None, lines
        if spec.command == "complex-of-ideal":
            J = _monomial_ideal(ideal)
            if not is_radical_monomial(J):
                raise ValueError("complex-of-ideal requires a radical monomial ideal")
            delta = complex_of_ideal(J)
            result = {"vertices": delta.n, "facets": _facet_lists(delta)}
            lines = [f"vertices: {delta.n}"]
            lines += [" ".join(map(str, f)) if f else "-" for f in result["facets"]]
            return fld, result, None, lines

    raise ValueError(f"unknown command {spec.command!r}")


def _emit(spec: JobSpec, fld, result, witness, lines) -> None:
    if spec.json_mode:
        obj = {
            "command": spec.command,
            "input": spec.input,
            "field": fld.characteristic,
            "result": result,
            "witness": witness,
        }
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _run_corpus(args) -> int:
    try:
        results = run_criteria(args.corpus_dir, args.only)
    except CorpusError as exc:
        print(f"corpus error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        obj = [
            {
                "id": r.ident,
                "title": r.title,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": round(r.seconds, 3),
            }
            for r in results
        ]
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark} {r.ident:4s} {r.seconds:7.2f}s  {r.title}")
            print(f"     {r.detail}")
        n_fail = sum(1 for r in results if not r.passed)
        print(f"{len(results) - n_fail}/{len(results)} criteria passed")
    return 0 if all(r.passed for r in results) else 1


def _parse_primes(text: str):
    try:
        primes = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    if not primes:
        raise argparse.ArgumentTypeError("empty prime list")
    return primes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqfree-lab",
        description="Groebner, homology and squarefree-duality workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in sorted(COMPLEX_COMMANDS | IDEAL_COMMANDS):
        p = sub.add_parser(cmd)
        p.add_argument("--input", required=True, help="ideal or complex file")
        p.add_argument("--char", type=int, default=None,
                       help="field characteristic (0 = rationals)")
        p.add_argument("--order", choices=["lex", "degrevlex"], default="degrevlex")
        p.add_argument("--json", action="store_true")
        if cmd == "stability":
            p.add_argument("--primes", type=_parse_primes, default=(2, 3, 5, 7, 11),
                           help="comma-separated primes, default 2,3,5,7,11")
    c = sub.add_parser("corpus", help="run the bundled regression corpus")
    c.add_argument("--corpus-dir", default=None)
    c.add_argument("--only", type=lambda s: [t.strip() for t in s.split(",")],
                   default=None, help="comma-separated criterion ids, e.g. C1,C3")
    c.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "corpus":
        return _run_corpus(args)
    spec = JobSpec(
        command=args.command,
        input=args.input,
        char=args.char,
        order=MonomialOrder(args.order),
        json_mode=args.json,
        primes=getattr(args, "primes", (2, 3, 5, 7, 11)),
    )
    try:
        fld, result, witness, lines = run(spec)
    except (ParseError, FileNotFoundError, IsADirectoryError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ReductionError, ValueError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    _emit(spec, fld, result, witness, lines)
    return 0


if __name__ == "__main__":
    sys.exit(main())
