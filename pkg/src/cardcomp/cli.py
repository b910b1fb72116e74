"""Command-line front end.

Exit codes: 0 SAT / entailed / valid / found, 1 UNSAT / not entailed /
invalid / not found, 2 input error, 3 resource limit.

Problem files are line oriented::

    # comment
    logic: ded
    labels: a b c
    |a & b| <= |c|
    goal: |a| <= |c|

Every other non-empty line is an assumption formula.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .algebra import AtomSpace
from .decide import (
    CancellationCertificate,
    Entailed,
    Logic,
    Sat,
    Unsat,
    WitnessBundle,
    entailment_formula,
    entails,
    sat,
    verify_certificate,
    verify_unsat,
    verify_witness,
)
from .errors import CardCompError, LimitExceeded, ParseError
from .lp import Budget
from .semantics import (
    INF,
    MeasuresModel,
    NotFoundWithinBounds,
    brute_force_sat,
    model_satisfies,
    symbolic_zf_witness,
)
from .syntax import FullBinaryTree, Label, cgfc_schema, conjunction, fc_schema, format_formula, gfc_schema
from .syntax import parse_formula, parse_term
from .syntax.transform import to_dnf

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(CardCompError):
    pass


@dataclass
class Problem:
    logic: Logic | None = None
    labels: tuple[str, ...] | None = None
    assumptions: list = field(default_factory=list)
    goal: object = None

    def formula(self):
        return conjunction(*self.assumptions)


def parse_problem(text: str, source: str = "<problem>") -> Problem:
    prob = Problem()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower() if sep else ""
        start = line.index(":") + 1 if key == "goal" else 0
        try:
            if key == "logic":
                prob.logic = Logic.parse(rest.strip())
            elif key == "labels":
                names = rest.split()
                for name in names:
                    Label(name)
                prob.labels = tuple(names)
            elif key == "goal":
                prob.goal = parse_formula(rest, prob.labels)
            else:
                prob.assumptions.append(parse_formula(line, prob.labels))
        except ParseError as exc:
            column = exc.position + start + 1
            raise InputError(f"{source}:{lineno}:{column}: {exc}") from None
        except (ValueError, KeyError) as exc:
            raise InputError(f"{source}:{lineno}: {exc}") from None
    return prob


def load_problem(path: str) -> Problem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text, path)


# ---------------------------------------------------------------- output


def _emit(args, report: dict, text: str):
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - args._start, 6)
    if args.output:
        Path(args.output).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
        if args.timing:
            sys.stdout.write(f"time: {report['timing_seconds']:.3f}s\n")


def _engine(args) -> dict:
    return {"solver": "exact-simplex", "seed": args.seed, "step_budget": args.step_budget}


def _model_text(m: MeasuresModel) -> str:
    space = m.space
    lines = [f"{m.kind} model over labels: {' '.join(m.labels) or '(none)'}"]
    for k, mu in enumerate(m.measures, 1):
        parts = [f"[{space.atom_name(a)}]={'inf' if v == INF else v}" for a, v in enumerate(mu) if v]
        lines.append(f"  measure {k}: " + (", ".join(parts) if parts else "0"))
    return "\n".join(lines) + "\n"


def _cert_text(c: CancellationCertificate) -> str:
    space = AtomSpace(c.labels)
    what = "non-triviality" if c.refutes == "nontriviality" else f"literal {c.refutes}"
    prem = ", ".join(f"#{i}x{n}" for i, n in c.premises) or "none"
    pos = ", ".join(f"[{space.atom_name(a)}]x{m}" for a, m in c.positivity) or "none"
    return (f"  refutes {what}: derives |e| <= |f| at scale {c.scale}; "
            f"premises {prem}; positivity {pos}\n")


def _result_text(res, head: str) -> str:
    if isinstance(res, Sat):
        return f"{head}\n" + _model_text(res.model)
    lines = [head]
    for i, certs in enumerate(res.branches):
        lines.append(f"branch {i}:")
        lines += [_cert_text(c).rstrip("\n") for c in certs]
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------- commands


def _logic(args, prob: Problem) -> Logic:
    if args.logic is not None:
        return Logic.parse(args.logic)
    return prob.logic or Logic.CARD


def _budget(args) -> Budget:
    return Budget(args.step_budget)


def cmd_sat(args) -> int:
    prob = load_problem(args.file)
    logic = _logic(args, prob)
    f = prob.formula()
    res = sat(f, logic, prob.labels, _budget(args), args.max_labels)
    report = {"command": "sat", "engine": _engine(args), **res.to_json()}
    verdict = "SAT" if isinstance(res, Sat) else "UNSAT"
    _emit(args, report, _result_text(res, f"{verdict} ({logic.value})"))
    return EXIT_OK if isinstance(res, Sat) else EXIT_NO


def cmd_entail(args) -> int:
    prob = load_problem(args.file)
    if prob.goal is None:
        raise InputError(f"{args.file}: no 'goal:' line")
    logic = _logic(args, prob)
    res = entails(prob.assumptions, prob.goal, logic, prob.labels, _budget(args), args.max_labels)
    if isinstance(res, Entailed):
        body = res.refutation.to_json()
        text = _result_text(res.refutation, f"ENTAILED ({logic.value})")
    else:
        body = {"verdict": "sat", **res.counter_model.to_json()}
        text = f"NOT ENTAILED ({logic.value}); counter-model:\n" + _model_text(res.counter_model.model)
    report = {"command": "entail", "engine": _engine(args), "entailed": isinstance(res, Entailed), **body}
    _emit(args, report, text)
    return EXIT_OK if isinstance(res, Entailed) else EXIT_NO


def cmd_model(args) -> int:
    prob = load_problem(args.file)
    logic = _logic(args, prob)
    res = sat(prob.formula(), logic, prob.labels, _budget(args), args.max_labels)
    if isinstance(res, Unsat):
        report = {"command": "model", "engine": _engine(args), **res.to_json()}
        _emit(args, report, f"UNSAT ({logic.value}); no model\n")
        return EXIT_NO
    report = {"command": "model", "engine": _engine(args), **res.to_json()}
    text = _model_text(res.model)
    if args.zf:
        w = symbolic_zf_witness(res.model)
        report["zf"] = {"families": list(w.families), "expressions": w.expressions,
                        "dedekind_infinite": w.dedekind_infinite, "text": w.text}
        text += w.text
    _emit(args, report, text)
    return EXIT_OK


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def cmd_verify(args) -> int:
    data = _load_json(args.artifact)
    prob = load_problem(args.problem)
    f = prob.formula()
    if data.get("command") == "entail" or data.get("entailed") is not None:
        if prob.goal is None:
            raise InputError(f"{args.problem}: entailment artifact needs a 'goal:' line")
        f = entailment_formula(prob.assumptions, prob.goal)
    try:
        if data.get("verdict") == "unsat":
            ok = verify_unsat(Unsat.from_json(data), f)
            what = "certificates"
        elif data.get("verdict") == "sat":
            ok = verify_witness(WitnessBundle.from_json(data), f)
            what = "witness"
        elif "conclusion" in data:
            branches = to_dnf(f)
            idx = data.get("branch", 0)
            ok = 0 <= idx < len(branches) and verify_certificate(
                CancellationCertificate.from_json(data), branches[idx])
            what = "certificate"
        elif "measures" in data:
            model = MeasuresModel.from_json(data)
            ok = model_satisfies(model, [f])
            what = "model"
        else:
            raise InputError(f"{args.artifact}: not a certificate, model or report")
    except (KeyError, TypeError, ValueError):
        ok, what = False, "artifact"
    report = {"command": "verify", "valid": ok, "checked": what}
    _emit(args, report, f"{what}: {'VALID' if ok else 'INVALID'}\n")
    return EXIT_OK if ok else EXIT_NO


def _terms(texts, default):
    return [parse_term(t) for t in texts] if texts else default


def cmd_schema(args) -> int:
    k = args.n if args.kind == "fc" else args.k
    if k is None:
        k = 1
    s = _terms(args.s, [Label(f"s{i}") for i in range(1, k + 1)])
    t = _terms(args.t, [Label(f"t{i}") for i in range(1, k + 1)])
    e = parse_term(args.e) if args.e else Label("e")
    f = parse_term(args.f) if args.f else Label("f")
    if len(s) != k or len(t) != k:
        raise InputError(f"expected {k} terms for --s and --t")
    if args.kind == "fc":
        phi = fc_schema(s, e, t, f)
    elif args.kind == "gfc":
        phi = gfc_schema(k, args.l, s, e, t, f)
    else:
        tree = FullBinaryTree.parse(args.tree)
        u = _terms(args.u, [Label("u_" + (node or "r")) for node in tree.nodes])
        phi = cgfc_schema(k, args.l, tree, s, e, t, f, u)
    text = format_formula(phi)
    _emit(args, {"command": "schema", "kind": args.kind, "formula": text}, text + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    prob = load_problem(args.file)
    logic = _logic(args, prob)
    kind = logic.model_kind
    max_measures = 1 if logic is Logic.FIN else args.max_measures
    res = brute_force_sat(prob.assumptions, kind, max_measures, args.max_value, prob.labels,
                          step_budget=args.step_budget or 2_000_000)
    bounds = {"max_measures": max_measures, "max_value": args.max_value}
    if isinstance(res, NotFoundWithinBounds):
        report = {"command": "oracle", "logic": logic.value, "found": False, "bounds": bounds}
        _emit(args, report, "NOT FOUND within bounds (not a proof of unsatisfiability)\n")
        return EXIT_NO
    report = {"command": "oracle", "logic": logic.value, "found": True, "bounds": bounds,
              "model": res.to_json()}
    _emit(args, report, "FOUND\n" + _model_text(res))
    return EXIT_OK


# ------------------------------------------------------------------ main


def _common(p: argparse.ArgumentParser):
    p.add_argument("--logic", choices=[lg.value for lg in Logic], default=None,
                   help="fin, ded or card (default: the file's 'logic:' line, else card)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=0, help="recorded in reports; all engines are deterministic")
    p.add_argument("--step-budget", type=int, default=None, help="cap on simplex pivots (or oracle candidates)")
    p.add_argument("--max-labels", type=int, default=16)
    p.add_argument("--output", "-o", default=None, help="also write the JSON report to this file")
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cardcomp", description="Decide comparative cardinality formulas.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sat", help="decide satisfiability of the assumptions")
    p.add_argument("file")
    _common(p)
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("entail", help="decide whether the assumptions entail the goal")
    p.add_argument("file")
    _common(p)
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("model", help="print a witnessing measures model")
    p.add_argument("file")
    p.add_argument("--zf", action="store_true", help="also render the symbolic permutation-model witness")
    _common(p)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("verify", help="check a certificate, model or report against a problem")
    p.add_argument("artifact")
    p.add_argument("problem")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("schema", help="print an FC, GFC or CGFC axiom instance")
    p.add_argument("kind", choices=["fc", "gfc", "cgfc"])
    p.add_argument("--n", type=int, default=None, help="FC_n premise count")
    p.add_argument("--k", type=int, default=None, help="premise count for gfc/cgfc")
    p.add_argument("--l", type=int, default=1, help="conclusion multiplicity")
    p.add_argument("--tree", default="*", help="tree shape, e.g. '[**]' ('*' is a leaf)")
    p.add_argument("--s", nargs="*", default=None, metavar="TERM")
    p.add_argument("--t", nargs="*", default=None, metavar="TERM")
    p.add_argument("--e", default=None, metavar="TERM")
    p.add_argument("--f", default=None, metavar="TERM")
    p.add_argument("--u", nargs="*", default=None, metavar="TERM", help="cover terms in preorder")
    _common(p)
    p.set_defaults(func=cmd_schema)

    p = sub.add_parser("oracle", help="bounded brute-force model search")
    p.add_argument("file")
    p.add_argument("--max-measures", type=int, default=3)
    p.add_argument("--max-value", type=int, default=4)
    _common(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._start = time.perf_counter()
    try:
        return args.func(args)
    except LimitExceeded as exc:
        sys.stderr.write(f"cardcomp: limit: {exc}\n")
        return EXIT_LIMIT
    except (CardCompError, ValueError, KeyError) as exc:
        sys.stderr.write(f"cardcomp: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
