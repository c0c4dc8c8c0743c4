"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget
exhausted.  Human-readable text goes to stdout (diagnostics to stderr); the
machine-readable JSON report is written to ``--out`` when given, or to stdout
with ``--format json``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import permutations

from . import __version__
from .biliaison import (DEFAULT_MAX_VARS, DEFAULT_SEED, FORMULA_ONLY, LEVELS, BiliaisonChain,
                        BiliaisonStep, chain, verify_step)
from .errors import AlreadyLinear, BudgetExhausted, DomainError
from .groebner import DEFAULT_BUDGET, Budget, buchberger
from .ideal import codim_from_gb, generators, ladder_ring
from .ladder import LadderSpec, height_formula, is_normalized, normalize, validate
from .pfaffian import dcp_residual
from .polyring import Field, TermOrder

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
CERTIFICATE_VERSION = 1
IDENTITY_ALL_LIMIT = 50_000


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


# ---------------------------------------------------------------------------
# input / output helpers

def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _load_spec(data) -> LadderSpec:
    try:
        spec = LadderSpec.from_json(data)
    except DomainError as exc:
        raise InputError(str(exc)) from None
    rep = validate(spec)
    if not rep.ok:
        raise InputError("invalid ladder spec:\n" + str(rep))
    return spec


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


class Output:
    def __init__(self, args):
        self.args = args

    def emit(self, text: str, report: dict):
        if self.args.format == "json":
            sys.stdout.write(_dump(report))
        elif text:
            print(text)
        if self.args.out:
            try:
                with open(self.args.out, "w", encoding="utf-8") as fh:
                    fh.write(_dump(report))
            except OSError as exc:
                raise InputError(f"cannot write {self.args.out}: {exc.strerror}") from None


def _budget(args) -> Budget:
    return Budget(max_pairs=args.max_pairs)


def _options(args):
    try:
        order = TermOrder.parse(args.order)
        field = Field.parse(args.field)
    except DomainError as exc:
        raise InputError(str(exc)) from None
    return order, field


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args, out: Output) -> int:
    data = _read_json(args.input)
    try:
        spec = LadderSpec.from_json(data)
    except DomainError as exc:
        raise InputError(str(exc)) from None
    rep = validate(spec)
    report = {"kind": "validation", "spec": spec.to_json(), **rep.to_json()}
    if not rep.ok:
        out.emit("", report)
        print("invalid ladder spec:\n" + str(rep), file=sys.stderr)
        return EXIT_INPUT
    norm = normalize(spec)
    report["normalized"] = norm.to_json()
    text = "ok" if norm == spec else f"ok (normalizes to {norm})"
    out.emit(text, report)
    return EXIT_OK


def cmd_gens(args, out: Output) -> int:
    spec = _load_spec(_read_json(args.input))
    order, field = _options(args)
    gens = generators(spec, order=order, field=field)
    rows = [{"corner": k, "indices": list(idx), "poly": str(f)}
            for f, (k, idx) in zip(gens.polys, gens.provenance)]
    text = "\n".join(f"k={r['corner']} [{','.join(map(str, r['indices']))}]: {r['poly']}" for r in rows)
    out.emit(text or "(no generators)", {"kind": "generators", "spec": spec.to_json(),
                                          "order": order.value, "field": str(field), "generators": rows})
    return EXIT_OK


def cmd_codim(args, out: Output) -> int:
    spec = _load_spec(_read_json(args.input))
    order, field = _options(args)
    report = {"kind": "codimension", "spec": spec.to_json()}
    if args.method in ("formula", "both"):
        report["height_formula"] = height_formula(spec)
    if args.method in ("gb", "both"):
        ring = ladder_ring(spec, order, field)
        gens = generators(spec, ring)
        report["codim_gb"] = codim_from_gb(buchberger(gens.polys, ring, _budget(args))) if gens.polys else 0
    values = {v for k, v in report.items() if k in ("height_formula", "codim_gb")}
    report["agree"] = len(values) == 1
    if not report["agree"]:
        out.emit(f"disagreement: formula {report['height_formula']} vs GB {report['codim_gb']}", report)
        return EXIT_FAIL
    out.emit(str(values.pop()), report)
    return EXIT_OK


def make_certificate(spec: LadderSpec, order, field, budget: Budget = DEFAULT_BUDGET) -> dict:
    ring = ladder_ring(spec, order, field)
    gens = generators(spec, ring)
    gb = buchberger(gens.polys, ring, budget) if gens.polys else None
    codim = codim_from_gb(gb) if gb is not None else 0
    return {
        "kind": "certificate",
        "version": CERTIFICATE_VERSION,
        "spec": spec.to_json(),
        "order": ring.order.value,
        "field": str(ring.field),
        "variables": [str(v) for v in ring.variables],
        "generators": [{"corner": k, "indices": list(idx), "poly": str(f)}
                       for f, (k, idx) in zip(gens.polys, gens.provenance)],
        "groebner_basis": [str(g) for g in gb.polys] if gb is not None else [],
        "dimension": ring.nvars - codim,
        "codimension": codim,
    }


def cmd_gb(args, out: Output) -> int:
    spec = _load_spec(_read_json(args.input))
    order, field = _options(args)
    cert = make_certificate(spec, order, field, _budget(args))
    lines = [f"ring: {len(cert['variables'])} variables, order {cert['order']}, field {cert['field']}",
             f"generators: {len(cert['generators'])}",
             f"reduced Groebner basis ({len(cert['groebner_basis'])} elements):"]
    lines += [f"  {g}" for g in cert["groebner_basis"]]
    lines.append(f"dimension {cert['dimension']}, codimension {cert['codimension']}")
    out.emit("\n".join(lines), cert)
    return EXIT_OK


def _chain_exit(ch: BiliaisonChain) -> int:
    if not ch.ok:
        return EXIT_FAIL
    if ch.budget_exhausted:
        return EXIT_BUDGET
    return EXIT_OK


def _verify_kwargs(args):
    order, field = _options(args)
    return {"order": order, "field": field, "seed": args.seed, "max_vars": args.max_vars,
            "budget": _budget(args)}


def cmd_chain(args, out: Output) -> int:
    spec = _load_spec(_read_json(args.input))
    level = args.level or FORMULA_ONLY
    kwargs = _verify_kwargs(args)
    ch = chain(spec, level, **kwargs)
    code = _chain_exit(ch)
    trace = ch.to_json()
    trace["order"] = kwargs["order"].value
    trace["field"] = str(kwargs["field"])
    out.emit(ch.render() + f"\nresult: {_verdict(code)}", trace)
    return code


def _verdict(code: int) -> str:
    return {EXIT_OK: "pass", EXIT_FAIL: "FAIL", EXIT_BUDGET: "budget exhausted"}[code]


# -- verify ------------------------------------------------------------------

def _field_of(data, key, kind):
    try:
        return data[key]
    except (KeyError, TypeError):
        raise InputError(f"{kind} is missing {key!r}") from None


def verify_certificate(data: dict, budget: Budget = DEFAULT_BUDGET) -> list[tuple[str, bool, str]]:
    spec = _load_spec(_field_of(data, "spec", "certificate"))
    try:
        order = TermOrder.parse(_field_of(data, "order", "certificate"))
        field = Field.parse(_field_of(data, "field", "certificate"))
        ring = ladder_ring(spec, order, field)
        listed = [ring.parse(str(_field_of(g, "poly", "generator"))) for g in
                  _field_of(data, "generators", "certificate")]
        basis = [ring.parse(str(g)) for g in _field_of(data, "groebner_basis", "certificate")]
    except DomainError as exc:
        raise InputError(str(exc)) from None
    dim = _field_of(data, "dimension", "certificate")
    codim = _field_of(data, "codimension", "certificate")

    checks = []
    names = [str(v) for v in ring.variables]
    checks.append(("variables", data.get("variables") == names, f"{len(names)} ring variables"))

    gens = generators(spec, ring)
    true_basis = buchberger(gens.polys, ring, budget) if gens.polys else None
    true_gb = true_basis.polys if true_basis is not None else ()
    listed_gb = buchberger(listed, ring, budget).polys if any(listed) else ()
    checks.append(("generators", listed_gb == true_gb,
                   f"{len(listed)} listed generators generate I_2t(Y)" if listed_gb == true_gb
                   else "listed generators do not generate the ladder pfaffian ideal"))
    checks.append(("groebner-basis", tuple(basis) == tuple(true_gb),
                   f"{len(basis)} elements, reduced basis recomputed"))
    true_codim = codim_from_gb(true_basis) if true_basis is not None else 0
    checks.append(("codimension", codim == true_codim, f"claimed {codim}, computed {true_codim}"))
    checks.append(("dimension", dim == ring.nvars - true_codim,
                   f"claimed {dim}, computed {ring.nvars - true_codim}"))
    h = height_formula(spec)
    checks.append(("height-formula", h == true_codim, f"formula {h}, GB {true_codim}"))
    return checks


def verify_chain_trace(data: dict, args) -> tuple[BiliaisonChain, list[tuple[str, bool, str]]]:
    initial = _load_spec(_field_of(data, "spec", "chain trace"))
    try:
        steps = [BiliaisonStep.from_json(s) for s in _field_of(data, "steps", "chain trace")]
        terminal = LadderSpec.from_json(_field_of(data, "terminal", "chain trace"))
    except DomainError as exc:
        raise InputError(str(exc)) from None
    level = args.level or data.get("level") or FORMULA_ONLY
    if level not in LEVELS:
        raise InputError(f"unknown verification level {level!r}")
    # recorded settings apply unless overridden on the command line
    if args.order == "degrevlex" and "order" in data:
        args.order = data["order"]
    if args.field == "rat" and "field" in data:
        args.field = data["field"]
    kwargs = _verify_kwargs(args)
    if args.seed == DEFAULT_SEED and isinstance(data.get("seed"), int):
        kwargs["seed"] = data["seed"]
    reports = [verify_step(s, level, **kwargs) for s in steps]
    ch = BiliaisonChain(initial, steps, terminal, reports, level, kwargs["seed"])
    checks = [(name, good, "") for name, good in ch.structural_checks().items()]
    checks.append(("initial-normalized", is_normalized(initial), ""))
    for i, rep in enumerate(reports, 1):
        for key, item in sorted(rep.items.items()):
            if item.status != "skipped":
                checks.append((f"step {i} ({key})", item.status == "pass", item.detail))
    return ch, checks


def cmd_verify(args, out: Output) -> int:
    data = _read_json(args.input)
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind == "certificate":
        checks = verify_certificate(data, _budget(args))
        budget = False
        body = []
    elif kind == "chain":
        ch, checks = verify_chain_trace(data, args)
        budget = ch.budget_exhausted
        body = [ch.render()]
    else:
        raise InputError("input is neither a certificate nor a chain trace (missing or unknown 'kind')")
    failed = [name for name, good, _ in checks if not good]
    code = EXIT_FAIL if failed else (EXIT_BUDGET if budget else EXIT_OK)
    lines = body + [f"{name}: {'pass' if good else 'FAIL'}" + (f" [{detail}]" if detail else "")
                    for name, good, detail in checks]
    lines.append(f"result: {_verdict(code)}")
    report = {"kind": "verification", "input_kind": kind, "ok": not failed,
              "checks": [{"name": n, "ok": g, "detail": d} for n, g, d in checks],
              "failed": failed, "budget_exhausted": budget}
    out.emit("\n".join(lines), report)
    return code


# -- identity-check ----------------------------------------------------------

def _identity_pairs(p: int, m: int, n: int, trials, seed: int):
    pool = range(1, n + 1)
    if trials == "all":
        count = 1
        for size in (p, m):
            for k in range(size):
                count *= n - k
        if count > IDENTITY_ALL_LIMIT:
            raise InputError(f"--trials all would check {count} pairs (limit {IDENTITY_ALL_LIMIT})")
        return [(c, d) for c in permutations(pool, p) for d in permutations(pool, m)]
    rng = random.Random(seed)
    return [(tuple(rng.sample(pool, p)), tuple(rng.sample(pool, m))) for _ in range(trials)]


def cmd_identity_check(args, out: Output) -> int:
    p, m, n = args.p, args.m, args.n
    if p % 2 or m % 2:
        raise InputError(f"p={p}, m={m}: even length required")
    if m < 2 or p < 0:
        raise InputError("need p >= 0 and m >= 2")
    if not (max(p, m) <= n <= 10):
        raise InputError(f"need p, m <= n <= 10 (got p={p}, m={m}, n={n})")
    trials = args.trials
    if trials != "all":
        try:
            trials = int(trials)
        except ValueError:
            raise InputError(f"--trials must be an integer or 'all', not {trials!r}") from None
        if trials < 0:
            raise InputError("--trials must be non-negative")
    pairs = _identity_pairs(p, m, n, trials, args.seed)
    bad = [(c, d) for c, d in pairs if dcp_residual(c, d, n)]
    report = {"kind": "identity-check", "p": p, "m": m, "n": n, "trials": trials,
              "seed": args.seed, "checked": len(pairs), "nonzero": [[list(c), list(d)] for c, d in bad],
              "ok": not bad}
    head = f"p={p} m={m} n={n} seed={args.seed}: {len(pairs)} pairs checked"
    if bad:
        lines = [head + f", {len(bad)} nonzero residuals"]
        lines += [f"  c={list(c)} d={list(d)}" for c, d in bad[:20]]
        out.emit("\n".join(lines), report)
        return EXIT_FAIL
    out.emit(head + ", all residuals zero", report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="JSON input file ('-' for stdin)")
    common.add_argument("--order", default="degrevlex", choices=["degrevlex", "lex"])
    common.add_argument("--field", default="rat", metavar="rat|fp:P")
    common.add_argument("--level", default=None, choices=list(LEVELS))
    common.add_argument("--out", metavar="PATH", help="write the JSON report here")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", default="text", choices=["text", "json"],
                        help="what to print on stdout")
    common.add_argument("--max-vars", type=int, default=DEFAULT_MAX_VARS,
                        help="variable cap for full-gb verification")
    common.add_argument("--max-pairs", type=int, default=DEFAULT_BUDGET.max_pairs,
                        help="critical-pair budget for each Groebner basis")

    parser = argparse.ArgumentParser(prog="pfladder", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    needs_input = {
        "validate": ("check a ladder spec", cmd_validate),
        "gens": ("list the pfaffian generators", cmd_gens),
        "codim": ("codimension by formula and Groebner basis", cmd_codim),
        "gb": ("reduced Groebner basis certificate", cmd_gb),
        "chain": ("G-biliaison chain down to a linear ladder", cmd_chain),
        "verify": ("re-check a certificate or chain trace", cmd_verify),
    }
    for name, (helptext, func) in needs_input.items():
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.set_defaults(func=func, needs_input=True)
        if name == "codim":
            sp.add_argument("--method", default="both", choices=["both", "formula", "gb"])
    sp = sub.add_parser("identity-check", parents=[common],
                        help="check the quadratic pfaffian identity on sampled tuples")
    sp.add_argument("-p", type=int, required=True, help="length of the first tuple")
    sp.add_argument("-m", type=int, required=True, help="length of the second tuple")
    sp.add_argument("-n", type=int, required=True, help="matrix size")
    sp.add_argument("--trials", default="25", help="number of sampled pairs, or 'all'")
    sp.set_defaults(func=cmd_identity_check, needs_input=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.needs_input and not args.input:
        parser.error(f"{args.command} requires --input")
    try:
        return args.func(args, Output(args))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, AlreadyLinear) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
