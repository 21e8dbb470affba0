"""Command-line front end.

Examples:
  yanglab relations --module '{"type":"wm","m":1,"a":"2"}' --K 2
  yanglab simplicity --mu 1 --tau 9 --bmu -7/4 --r 1
  yanglab bcoeff --mu 1 --tau 9 --bmu 0 --window 1
  yanglab probe --mu 1 --tau 9 --bmu -7/4 --r 1 --window 6

Exit codes: 0 ok, 2 parse/validation error, 3 relation failure, 4 window error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path

from .analysis import (WindowError, all_passed, check_defining_relations, default_sample,
                       operator_matrix, simplicity_criterion, submodule_probe, u_module,
                       weight_space_dims)
from .dense import DenseModule
from .descriptors import parse_module
from .engine import (Generator, WeightVector, apply_generator, index_from_json, vector_from_json,
                     vector_to_json)
from .findim import DrinfeldPoly, WmModule, drinfeld_series
from .scalar_field import parse_scalar, to_rational
from .tensor import TensorModule

EXIT_OK, EXIT_VALIDATION, EXIT_RELATION, EXIT_WINDOW = 0, 2, 3, 4
COMMANDS = ("act", "relations", "bcoeff", "matrix", "simplicity", "probe", "drinfeld", "dims")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="yanglab", description="Exact Y(sl2) weight-module computations.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--module", help="module descriptor: inline JSON or a path to a JSON file")
    ap.add_argument("--gen", help="generator, e.g. X2+, X0-, H3")
    ap.add_argument("--index", help="basis index as JSON, e.g. 1 or [0,1]")
    ap.add_argument("--vector", help="weight vector as JSON [{'index':..,'coeff':..}]")
    ap.add_argument("--weight", help="source weight for 'matrix'")
    ap.add_argument("--sample", help="JSON list of basis indices for 'relations'")
    ap.add_argument("--mu")
    ap.add_argument("--tau")
    ap.add_argument("--bmu")
    ap.add_argument("--r")
    ap.add_argument("--roots", help="comma separated Drinfeld polynomial roots")
    ap.add_argument("--K", type=int, default=3)
    ap.add_argument("--window", type=int, default=6)
    ap.add_argument("--output", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    return ap


# --- argument helpers ---------------------------------------------------------

def _load_module(args):
    if args.module is None:
        return None
    text = args.module
    if not text.lstrip().startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise UsageError(f"no such descriptor file: {text}")
        text = path.read_text(encoding="utf-8")
    return parse_module(text)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing option(s): " + ", ".join("--" + n for n in missing))


def _dense(args) -> DenseModule:
    module = _load_module(args)
    if module is not None:
        if isinstance(module, TensorModule):
            module = module.left
        if not isinstance(module, DenseModule):
            raise UsageError("this command needs a dense module")
        return module
    _require(args, "mu", "tau", "bmu")
    return DenseModule(to_rational(args.mu), to_rational(args.tau), parse_scalar(args.bmu))


def _u_params(args):
    module = _load_module(args)
    if module is not None:
        if not (isinstance(module, TensorModule) and isinstance(module.left, DenseModule)
                and isinstance(module.right, WmModule) and module.right.m == 1):
            raise UsageError("this command needs a dense (x) W_1 tensor module")
        d = module.left
        return d.mu, d.tau, d.b_mu, module.right.a
    _require(args, "mu", "tau", "bmu", "r")
    return to_rational(args.mu), to_rational(args.tau), parse_scalar(args.bmu), parse_scalar(args.r)


def _json_arg(text, name):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{name} is not valid JSON: {exc}") from None


# --- commands: each returns (json_payload, csv_rows, exit_code) ---------------

def cmd_act(args):
    module = _load_module(args)
    if module is None:
        raise UsageError("missing option: --module")
    _require(args, "gen")
    gen = Generator.parse(args.gen)
    if args.vector is not None:
        v = vector_from_json(module, _json_arg(args.vector, "vector"))
    else:
        _require(args, "index")
        idx = index_from_json(_json_arg(args.index, "index"))
        if not module.is_valid_index(idx):
            raise UsageError(f"{args.index} is not a basis index of this module")
        v = WeightVector.basis(idx)
    out = vector_to_json(module, apply_generator(module, gen, v))
    rows = [["index", "coeff"]] + [[json.dumps(e["index"]), e["coeff"]] for e in out]
    return out, rows, EXIT_OK


def cmd_relations(args):
    module = _load_module(args)
    if module is None:
        raise UsageError("missing option: --module")
    if args.sample is not None:
        sample = [index_from_json(i) for i in _json_arg(args.sample, "sample")]
    else:
        sample = default_sample(module, args.window)
    reports = check_defining_relations(module, args.K, sample)
    n, ok = len(reports), sum(r.passed for r in reports)
    summary = f"PASS {n}/{n}" if ok == n else f"FAIL {n - ok}/{n}"
    payload = {"summary": summary, "reports": [r.to_json(module) for r in reports]}
    rows = [["relation", "sign", "k", "l", "index", "pass", "residual"]]
    for r in reports:
        rows.append([r.relation, r.sign, r.k, r.l, json.dumps(r.to_json(module)["index"]),
                     "1" if r.passed else "0",
                     json.dumps(vector_to_json(module, r.residual), separators=(",", ":"))])
    rows.append([summary])
    return payload, rows, EXIT_OK if all_passed(reports) else EXIT_RELATION


def cmd_bcoeff(args):
    d = _dense(args)
    table = [{"k": k, "a": str(d.a_coeff(k)), "b": str(d.b_coeff(k))}
             for k in range(-args.window, args.window + 1)]
    rows = [["k", "a", "b"]] + [[t["k"], t["a"], t["b"]] for t in table]
    return table, rows, EXIT_OK


def cmd_matrix(args):
    module = _load_module(args)
    if module is None:
        raise UsageError("missing option: --module")
    _require(args, "gen", "weight")
    mat = operator_matrix(module, Generator.parse(args.gen), to_rational(args.weight), args.window)
    payload = mat.to_json()
    rows = [[""] + [json.dumps(c) for c in payload["col_labels"]]]
    for label, row in zip(payload["row_labels"], payload["entries"]):
        rows.append([json.dumps(label)] + row)
    return payload, rows, EXIT_OK


def cmd_simplicity(args):
    mu, tau, b_mu, r = _u_params(args)
    verdict = simplicity_criterion(mu, tau, b_mu, r)
    payload = verdict.to_json()
    rows = [["simple", "sign", "t", "b_critical", "field_obstruction"]]
    for w in payload["witnesses"]:
        rows.append([str(verdict.simple).lower(), w["sign"], w["t"], w["b_critical"],
                     str(verdict.field_obstruction).lower()])
    return payload, rows, EXIT_OK


def cmd_probe(args):
    mu, tau, b_mu, r = _u_params(args)
    U = u_module(mu, tau, b_mu, r)
    ladder = submodule_probe(U, args.window)
    if ladder is None:
        return "none", [["none"]], EXIT_OK
    payload = ladder.to_json(U)
    rows = [["weight", "index", "coeff"]]
    for rung in payload["rungs"]:
        for e in rung["vector"]:
            rows.append([rung["weight"], json.dumps(e["index"]), e["coeff"]])
    return payload, rows, EXIT_OK


def cmd_drinfeld(args):
    if args.roots is not None:
        poly = DrinfeldPoly(tuple(parse_scalar(s) for s in args.roots.split(",")))
    else:
        module = _load_module(args)
        if not isinstance(module, WmModule):
            raise UsageError("drinfeld needs --roots or a W_m descriptor")
        poly = DrinfeldPoly.for_wm(module.m, module.a)
    series = [str(x) for x in drinfeld_series(poly, args.K)]
    rows = [["k", "mu_k"]] + [[k, s] for k, s in enumerate(series)]
    return series, rows, EXIT_OK


def cmd_dims(args):
    module = _load_module(args)
    if module is None:
        raise UsageError("missing option: --module")
    table = [{"weight": str(w), "dim": n} for w, n in weight_space_dims(module, args.window)]
    rows = [["weight", "dim"]] + [[t["weight"], t["dim"]] for t in table]
    return table, rows, EXIT_OK


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def _render(payload, rows, fmt) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    return json.dumps(payload, separators=(",", ":")) + "\n"


def _fail(kind: str, message: str, code: int, stderr) -> int:
    stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


_NEGATIVE_VALUE = re.compile(r"^-\d")


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "--bmu -7/4" as two options; rewrite it to "--bmu=-7/4"
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and _NEGATIVE_VALUE.match(argv[i + 1])):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        if args.K < 0 or args.window < 0:
            raise UsageError("--K and --window must be >= 0")
        payload, rows, code = HANDLERS[args.command](args)
    except WindowError as exc:
        return _fail("window", str(exc), EXIT_WINDOW, stderr)
    except (ValueError, ZeroDivisionError, ArithmeticError, KeyError, TypeError) as exc:
        return _fail("validation", str(exc), EXIT_VALIDATION, stderr)
    text = _render(payload, rows, args.format)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
