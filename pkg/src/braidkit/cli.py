"""Command-line front end.

One job per invocation: parse the input (a JSON spec file or a named
generator), dispatch the requested computation, and emit a deterministic
JSON or table report.  Identical invocations produce byte-identical JSON.
Nonzero exits always carry a machine-readable error object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import braided, figures, quotients, theorems
from .braided import BracketMap, BraidedSpace, cross_bracket, gf8_unit_example
from .errors import BraidkitError, InputFormatError
from .linalg import Mat
from .report import render_table, to_canonical_json
from .scalars import Scalar, field_from_string, q_binom
from .tensor import TruncatedTensorBialgebra, primitives, validate_graded_bialgebra

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="JSON braided-space spec file")
    p.add_argument("--gen", help="named generator: flip, dj_hecke, scalar, diagonal")
    p.add_argument("--n", type=int, help="generator dimension parameter")
    p.add_argument("--q", help="generator q parameter")
    p.add_argument("--mu", help="generator scalar parameter")
    p.add_argument("--qmatrix", help="diagonal generator parameter matrix, JSON")
    p.add_argument("--field", default="Q", help="base field tag: Q, F<p>, F8")
    p.add_argument("--lambda", dest="lam", help="Hecke mark")
    p.add_argument("--bracket", help="bracket: 'cross', 'zero', or a JSON list of n^3 scalars")
    p.add_argument("-N", "--cutoff", type=int, default=4, help="degree cutoff")
    p.add_argument("-M", "--closure", type=int, default=None,
                   help="closure cutoff for filtered ideals (default cutoff + 2)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--figures", help="directory for rendered charts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidkit",
        description="exact computations with braided vector spaces and their bialgebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural checks on a braided space spec")
    _add_common(p)
    p.add_argument("--tensor", action="store_true",
                   help="also validate the truncated tensor bialgebra axioms")

    p = sub.add_parser("hecke", help="Hecke analysis of the braiding")
    _add_common(p)

    p = sub.add_parser("qbinom", help="Gaussian binomial at a scalar")
    p.add_argument("qn", type=int)
    p.add_argument("qk", type=int)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--output")
    p.add_argument("--figures")

    p = sub.add_parser("sym", help="braided symmetric algebra dimensions")
    _add_common(p)

    p = sub.add_parser("nichols", help="Nichols algebra dimensions")
    _add_common(p)

    p = sub.add_parser("env", help="enveloping algebra of a bracket")
    _add_common(p)

    p = sub.add_parser("primitives", help="graded primitives of T or S")
    _add_common(p)
    p.add_argument("--object", choices=("T", "S"), default="T")

    p = sub.add_parser("verify", help="run a theorem verification")
    p.add_argument("theorem", choices=theorems.THEOREM_IDS + ("all",))
    _add_common(p)
    return parser


# ---------------------------------------------------------------------------
# input resolution


def _generator_params(args) -> dict[str, Any]:
    params: dict[str, Any] = {}
    if args.n is not None:
        params["n"] = args.n
    if args.q is not None:
        params["q"] = args.q
    if args.mu is not None:
        params["mu"] = args.mu
    if args.qmatrix is not None:
        params["qmatrix"] = json.loads(args.qmatrix)
    return params


def resolve_space(args, check: bool = True) -> tuple[BraidedSpace, BracketMap | None]:
    if args.input and args.gen:
        raise InputFormatError("give either --input or --gen, not both")
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputFormatError(
                    f"bad JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        space, bracket = braided.braided_space_from_json(doc, check=check)
    elif args.gen:
        fld = field_from_string(args.field)
        space = braided.generator_space(args.gen, fld, _generator_params(args))
        bracket = None
    else:
        raise InputFormatError("an input is required: --input FILE or --gen NAME")
    if getattr(args, "bracket", None) is not None:
        bracket = resolve_bracket(space, args.bracket)
    return space, bracket


def resolve_bracket(space: BraidedSpace, spec: str) -> BracketMap:
    if spec == "zero":
        return BracketMap(Mat.zeros(space.field, space.dim, space.dim ** 2))
    if spec == "cross":
        if space.dim != 3:
            raise InputFormatError("the cross bracket needs a 3-dimensional space")
        return cross_bracket(space.field)
    try:
        entries = json.loads(spec)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"bad bracket JSON: {exc.msg}") from exc
    fld = space.field
    flat = [fld.parse(v) for v in entries]
    return BracketMap(Mat.from_flat(fld, flat, space.dim, space.dim ** 2))


def resolve_mark(args, space: BraidedSpace) -> Scalar:
    fld = space.field
    if args.lam is not None:
        return Scalar(fld, fld.parse(args.lam))
    rep = braided.hecke_analysis(space)
    if rep.marks == braided.ALL_MARKS:
        raise InputFormatError("every scalar is a Hecke mark here; pass --lambda explicitly")
    if rep.is_hecke and isinstance(rep.marks, tuple) and len(rep.marks) == 1:
        return Scalar(fld, rep.marks[0])
    raise InputFormatError("no unique Hecke mark; pass --lambda explicitly")


def _zero_bracket(space: BraidedSpace) -> BracketMap:
    return BracketMap(Mat.zeros(space.field, space.dim, space.dim ** 2))


# ---------------------------------------------------------------------------
# command implementations; each returns (exit_code, json_doc)


def cmd_validate(args) -> tuple[int, dict]:
    space, bracket = resolve_space(args, check=False)
    ok, witness = braided.check_braid_equation(space)
    doc: dict[str, Any] = {
        "command": "validate",
        "field": space.field.name,
        "dim": space.dim,
        "braid_equation": {"ok": ok, "witness": list(witness) if witness else None},
    }
    passed = ok
    if bracket is not None:
        bok, bwitness = braided.check_bracket_compat(space, bracket)
        doc["bracket_compatible"] = {"ok": bok, "witness": list(bwitness) if bwitness else None}
        passed = passed and bok
    if args.tensor and ok:
        ledger = validate_graded_bialgebra(
            TruncatedTensorBialgebra(space, args.cutoff).bialgebra())
        doc["tensor_axioms"] = ledger.to_json_dict()
        passed = passed and ledger.passed
    doc["passed"] = passed
    return (EXIT_OK if passed else EXIT_FAILED), doc


def cmd_hecke(args) -> tuple[int, dict]:
    space, _ = resolve_space(args)
    rep = braided.hecke_analysis(space)
    fld = space.field
    marks: Any
    if rep.marks == braided.ALL_MARKS:
        marks = "ALL"
    else:
        marks = sorted(fld.format(m) for m in rep.marks)
    doc = {
        "command": "hecke",
        "is_hecke": rep.is_hecke,
        "marks": marks,
        "minimal_polynomial": [fld.format(c) for c in rep.minimal_polynomial],
    }
    if args.lam is not None:
        lam = Scalar(fld, fld.parse(args.lam))
        doc["check"] = {"lambda": fld.format(lam.value),
                        "ok": braided.check_hecke(space, lam)}
    return EXIT_OK, doc


def cmd_qbinom(args) -> tuple[int, dict]:
    fld = field_from_string(args.field)
    lam = Scalar(fld, fld.parse(args.lam))
    value = q_binom(args.qn, args.qk, lam)
    doc = {
        "command": "qbinom",
        "n": args.qn,
        "k": args.qk,
        "lambda": fld.format(lam.value),
        "value": fld.format(value.value),
    }
    return EXIT_OK, doc


def cmd_sym(args) -> tuple[int, dict]:
    space, _ = resolve_space(args)
    lam = resolve_mark(args, space)
    quo = quotients.symmetric_algebra(space, lam, args.cutoff)
    doc = quo.to_json()
    doc.update({"command": "sym", "lambda": space.field.format(lam.value)})
    passed = all(quo.checks.values())
    doc["passed"] = passed
    return (EXIT_OK if passed else EXIT_FAILED), doc


def cmd_nichols(args) -> tuple[int, dict]:
    space, _ = resolve_space(args)
    quo = quotients.nichols_algebra(space, args.cutoff)
    doc = quo.to_json()
    doc["command"] = "nichols"
    passed = all(quo.checks.values())
    doc["passed"] = passed
    return (EXIT_OK if passed else EXIT_FAILED), doc


def cmd_env(args) -> tuple[int, dict]:
    space, bracket = resolve_space(args)
    lam = resolve_mark(args, space)
    if bracket is None:
        bracket = _zero_bracket(space)
    env = quotients.enveloping_algebra(space, lam, bracket, args.cutoff, args.closure)
    iota = quotients.iota_injective(space, lam, bracket)
    doc: dict[str, Any] = {
        "command": "env",
        "object": "U",
        "lambda": space.field.format(lam.value),
        "dims": list(env.u_dims),
        "level_dims": list(env.level_dims),
        "stable": [bool(s) for s in env.stable],
        "closure_cutoff": env.closure_cutoff,
        "rounds": env.rounds,
        "iota": iota.to_json_dict(),
    }
    if all(env.stable):
        gr = env.associated_graded()
        doc["grU_dims"] = list(gr.dims)
        doc["ledgers"] = {k: bool(v) for k, v in sorted(gr.checks.items())}
    doc["passed"] = all(env.stable)
    return (EXIT_OK if doc["passed"] else EXIT_FAILED), doc


def cmd_primitives(args) -> tuple[int, dict]:
    space, _ = resolve_space(args)
    if args.object == "T":
        B = TruncatedTensorBialgebra(space, args.cutoff).bialgebra()
        label = "T"
    else:
        lam = resolve_mark(args, space)
        B = quotients.symmetric_algebra(space, lam, args.cutoff).bialgebra()
        label = "S"
    prim = primitives(B)
    doc = {
        "command": "primitives",
        "object": label,
        "dims": prim.dims_vector(),
        "total": prim.dim,
    }
    return EXIT_OK, doc


# ---------------------------------------------------------------------------
# theorem dispatch


def _theorem_report(args, theorem: str) -> theorems.TheoremReport:
    space, bracket = resolve_space(args)
    if theorem == "type-one-equivalence":
        lam = resolve_mark(args, space)
        B = quotients.symmetric_algebra(space, lam, args.cutoff).bialgebra()
        return theorems.verify_type_one_equivalence(B, lam, args.cutoff)
    if theorem == "symmetric-strictness":
        lam = resolve_mark(args, space)
        return theorems.verify_symmetric_strictness(space, lam, args.cutoff)
    if theorem == "bracket-triviality":
        lam = resolve_mark(args, space)
        if bracket is None:
            return theorems.bracket_triviality_sweep(space, lam, args.closure)
        return theorems.verify_bracket_triviality(space, lam, bracket, args.closure)
    if theorem == "milnor-moore":
        lam = resolve_mark(args, space)
        B = quotients.symmetric_algebra(space, lam, args.cutoff).bialgebra()
        return theorems.verify_milnor_moore(B, args.cutoff, lam_hint=lam)
    if theorem == "categorical-rigidity":
        lam = resolve_mark(args, space)
        return theorems.verify_categorical_rigidity(space, lam)
    raise InputFormatError(f"unknown theorem {theorem!r}")


def _suite_entries() -> list[tuple[str, str, Any]]:
    """The bundled verification suite: (name, expectation, thunk)."""
    from .scalars import QQ, PrimeField

    def dj():
        return braided.dj_hecke_space(QQ, 2, QQ.scalar(2))

    def entries():
        yield ("type-one-equivalence on S of the rank-2 Hecke example", "pass",
               lambda: theorems.verify_type_one_equivalence(
                   quotients.symmetric_algebra(dj(), QQ.scalar(4), 4).bialgebra(),
                   QQ.scalar(4)))
        yield ("type-one-equivalence on the tensor bialgebra (all-false agreement)", "pass",
               lambda: theorems.verify_type_one_equivalence(
                   TruncatedTensorBialgebra(dj(), 4).bialgebra(), QQ.scalar(4)))
        yield ("symmetric-strictness for the rank-2 Hecke example", "pass",
               lambda: theorems.verify_symmetric_strictness(dj(), QQ.scalar(4), 4))
        yield ("symmetric-strictness for the flip at mark 1", "pass",
               lambda: theorems.verify_symmetric_strictness(
                   braided.flip_space(QQ, 2), QQ.scalar(1), 4))
        yield ("bracket-triviality sweep over compatible brackets", "vacuous-pass",
               lambda: theorems.bracket_triviality_sweep(dj(), QQ.scalar(4)))
        yield ("bracket-triviality at mark 1 for the alternating rank-3 bracket", "pass",
               lambda: theorems.verify_bracket_triviality(
                   braided.flip_space(QQ, 3), QQ.scalar(1), cross_bracket(QQ)))
        yield ("bracket-triviality hypotheses on the char-2 counterexample", "hypotheses-failed",
               lambda: theorems.verify_bracket_triviality(*gf8_unit_example()))
        yield ("milnor-moore reconstruction of S", "pass",
               lambda: theorems.verify_milnor_moore(
                   quotients.symmetric_algebra(dj(), QQ.scalar(4), 4).bialgebra()))
        yield ("milnor-moore negative control on the tensor bialgebra", "not-cocommutative",
               lambda: theorems.verify_milnor_moore(
                   TruncatedTensorBialgebra(dj(), 4).bialgebra()))
        yield ("milnor-moore at mark 1 on the graded enveloping algebra", "pass",
               lambda: theorems.verify_milnor_moore(
                   quotients.gr_prime(quotients.enveloping_algebra(
                       braided.flip_space(QQ, 3), QQ.scalar(1),
                       cross_bracket(QQ), 3)).bialgebra()))
        yield ("categorical-rigidity over F5", "pass",
               lambda: theorems.verify_categorical_rigidity(
                   braided.dj_hecke_space(PrimeField(5), 2, PrimeField(5).scalar(2)),
                   PrimeField(5).scalar(4)))

    return list(entries())


def _expectation_met(report: theorems.TheoremReport, expectation: str) -> bool:
    if expectation == "pass":
        return report.passed
    if expectation == "vacuous-pass":
        return report.passed and report.vacuous
    if expectation == "hypotheses-failed":
        return not report.hypotheses_pass and report.conclusion_verdict is None
    if expectation == "not-cocommutative":
        return report.conclusion_detail == "not infinitesimally cocommutative"
    return False


def cmd_verify(args) -> tuple[int, dict]:
    if args.theorem == "all":
        suite = []
        all_ok = True
        for name, expectation, thunk in _suite_entries():
            report = thunk()
            ok = _expectation_met(report, expectation)
            all_ok = all_ok and ok
            suite.append({
                "name": name,
                "expectation": expectation,
                "matches_expectation": ok,
                "report": report.to_json_dict(),
            })
        doc = {"command": "verify", "suite": suite, "passed": all_ok}
        return (EXIT_OK if all_ok else EXIT_FAILED), doc
    report = _theorem_report(args, args.theorem)
    doc = report.to_json_dict()
    doc["command"] = "verify"
    return (EXIT_OK if report.passed else EXIT_FAILED), doc


COMMANDS = {
    "validate": cmd_validate,
    "hecke": cmd_hecke,
    "qbinom": cmd_qbinom,
    "sym": cmd_sym,
    "nichols": cmd_nichols,
    "env": cmd_env,
    "primitives": cmd_primitives,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, doc = COMMANDS[args.command](args)
    except BraidkitError as exc:
        sys.stderr.write(to_canonical_json(exc.as_dict()))
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(to_canonical_json({"error": "IOError", "message": str(exc)}))
        return EXIT_USAGE
    if getattr(args, "figures", None):
        doc["figures"] = figures.render_figures(args.command, doc, args.figures)
    payload = to_canonical_json(doc)
    if getattr(args, "format", "json") == "table":
        payload = render_table(doc) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if code != EXIT_OK:
        sys.stderr.write(to_canonical_json(
            {"error": "VerificationFailed", "message": "one or more checks failed"}))
    return code


if __name__ == "__main__":
    sys.exit(main())
