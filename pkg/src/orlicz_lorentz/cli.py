"""Command-line front end: ``check``, ``sweep``, ``inequality`` and ``probe``.

Young functions are given in a small DSL::

    pow:r=3                      t^3
    powlog:rho=2,alpha=1.5       t^2 log(e + t)^1.5 (up to normalization)
    cap:t0=1                     0 on [0, 1], inf beyond
    exp                          e^t - 1
    piecewise:[(0,0),(1,1),(2,4)]  derivative through (t, a(t)) knots

Exit codes: 2 for malformed input, 3 for violated preconditions, 4 for an
inconclusive verdict under ``--strict``, 1 when an inequality trial fails.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import itertools
import json
import math
import re
import sys
import time
from importlib import resources

import jsonschema

from . import __version__
from .criteria import State, _jsonable, classify_lorentz_into_orlicz, classify_orlicz_into_lorentz
from .functionals import InconclusiveError, lorentz_norm, luxemburg_norm, orlicz_modular
from .lab import almost_compactness_profile, young_inequality_trials
from .rearrangement import StepFn
from .young import YoungFn, cap_at, exp_minus_one, piecewise, power, power_log

SCHEMA_VERSION = "1"
EXIT_PARSE, EXIT_PRECONDITION, EXIT_INCONCLUSIVE, EXIT_VIOLATION = 2, 3, 4, 1


class ParseError(ValueError):
    """Malformed command-line input (exit code 2)."""


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- parsing ----------------------------------------------------------------------

_KV = re.compile(r"^\s*([a-z0-9_]+)\s*=\s*([^,]+?)\s*$")


def _kv(body: str, keys: tuple[str, ...]) -> dict:
    out = {}
    for part in body.split(","):
        m = _KV.match(part)
        if not m or m.group(1) not in keys:
            raise ParseError(f"expected {'/'.join(keys)}=<number>, got {part!r}")
        out[m.group(1)] = parse_real(m.group(2))
    if set(out) != set(keys):
        raise ParseError(f"need exactly {', '.join(keys)}")
    return out


def parse_young(text: str) -> YoungFn:
    """Build a Young function from a DSL string; raises :class:`ParseError`."""
    kind, _, body = text.strip().partition(":")
    try:
        if kind == "pow":
            return power(_kv(body, ("r",))["r"])
        if kind == "powlog":
            kv = _kv(body, ("rho", "alpha"))
            return power_log(kv["rho"], kv["alpha"])
        if kind == "cap":
            return cap_at(_kv(body, ("t0",))["t0"])
        if kind == "exp" and not body:
            return exp_minus_one()
        if kind == "piecewise":
            try:
                knots = ast.literal_eval(body)
            except (ValueError, SyntaxError) as exc:
                raise ParseError(f"bad knot list {body!r}") from exc
            if not isinstance(knots, (list, tuple)) or not all(
                    isinstance(k, (list, tuple)) and len(k) == 2 for k in knots):
                raise ParseError("piecewise knots must be a list of (t, a(t)) pairs")
            return piecewise(knots)
    except ParseError:
        raise
    except (ValueError, TypeError) as exc:
        raise _Exit(EXIT_PRECONDITION, f"invalid Young function {text!r}: {exc}") from exc
    raise ParseError(f"unknown Young function {text!r}")


def parse_real(text: str) -> float:
    text = str(text).strip()
    if text.lower() in ("inf", "infinity", "+inf"):
        return math.inf
    try:
        x = float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}") from None
    if math.isnan(x):
        raise ParseError("nan is not allowed")
    return x


def parse_grid(text: str) -> tuple[str, list[float]]:
    """``name=start:stop:step`` (inclusive) or ``name=v1,v2,...``; values rounded to 12 digits."""
    name, eq, body = text.partition("=")
    name = name.strip()
    if not eq or not name:
        raise ParseError(f"grid must look like name=start:stop:step, got {text!r}")
    body = body.strip()
    if not body:
        return name, []
    if ":" in body:
        parts = body.split(":")
        if len(parts) != 3:
            raise ParseError(f"range grid needs start:stop:step, got {body!r}")
        start, stop, step = (parse_real(x) for x in parts)
        if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)) or step <= 0:
            raise ParseError("range grid needs finite bounds and a positive step")
        n = math.floor((stop - start) / step + 1e-9) + 1
        return name, [round(start + i * step, 12) for i in range(max(n, 0))]
    return name, [parse_real(x) for x in body.split(",")]


def parse_r_grid(text: str) -> list[float]:
    """``hi:lo[:per_decade]`` as decreasing powers of ten, or a comma list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise ParseError(f"r grid must be hi:lo[:per_decade], got {text!r}")
        hi, lo = parse_real(parts[0]), parse_real(parts[1])
        per = int(parse_real(parts[2])) if len(parts) == 3 else 1
        if not (0 < lo < hi <= 1) or per < 1:
            raise ParseError("r grid needs 0 < lo < hi <= 1 and a positive density")
        a, b = math.log10(hi), math.log10(lo)
        n = round((a - b) * per)
        return [float(f"{10 ** (a - i / per):.12g}") for i in range(n + 1)]
    vals = [parse_real(x) for x in text.split(",") if x.strip()]
    if not vals or any(not 0 < v <= 1 for v in vals) or any(b >= a for a, b in zip(vals, vals[1:])):
        raise ParseError("r grid must be a strictly decreasing list in (0, 1]")
    return vals


def read_function_file(path: str, total_measure: float) -> StepFn:
    """``value,weight`` rows (a header row is skipped if not numeric)."""
    atoms = []
    try:
        with open(path, newline="") as fh:
            for i, row in enumerate(csv.reader(fh)):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                if len(row) != 2:
                    raise ParseError(f"{path}:{i + 1}: expected value,weight")
                try:
                    atoms.append((float(row[0]), float(row[1])))
                except ValueError:
                    if i == 0:
                        continue
                    raise ParseError(f"{path}:{i + 1}: non-numeric row") from None
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    tm = total_measure if math.isfinite(total_measure) else max(sum(w for _, w in atoms), 1.0)
    try:
        return StepFn(tuple(atoms), tm)
    except ValueError as exc:
        raise _Exit(EXIT_PRECONDITION, str(exc)) from exc


# -- commands -------------------------------------------------------------------------


def load_schema() -> dict:
    text = resources.files(__package__).joinpath("report_schema_v1.json").read_text()
    return json.loads(text)


def _dump(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"


def _classify(young: YoungFn, direction: str, a: float, b: float, measure: float, mode: str):
    try:
        if direction == "orlicz-to-lorentz":
            return classify_orlicz_into_lorentz(young, a, b, measure, mode)
        return classify_lorentz_into_orlicz(young, a, b, measure, mode)
    except InconclusiveError as exc:
        raise _Exit(EXIT_INCONCLUSIVE, str(exc)) from exc
    except ValueError as exc:
        raise _Exit(EXIT_PRECONDITION, str(exc)) from exc


def _exponents(args) -> tuple[float, float, dict]:
    if args.direction == "orlicz-to-lorentz":
        if args.p is None or args.q is None:
            raise ParseError("orlicz-to-lorentz needs --p and --q")
        return args.p, args.q, {"p": args.p, "q": args.q}
    if args.r is None or args.s is None:
        raise ParseError("lorentz-to-orlicz needs --r and --s")
    return args.r, args.s, {"r": args.r, "s": args.s}


def _inconclusive(report) -> bool:
    return State.INCONCLUSIVE in (report.continuous.state, report.almost_compact.state)


def cmd_check(args) -> dict:
    young = parse_young(args.young)
    a, b, expo = _exponents(args)
    t0 = time.perf_counter()
    report = _classify(young, args.direction, a, b, args.measure, args.mode)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "toolkit_version": __version__,
        "request": {"young": args.young, "direction": args.direction, "exponents": expo,
                    "measure": args.measure, "mode": args.mode},
        "report": report.to_dict(),
    }
    if args.function_file:
        f = read_function_file(args.function_file, args.measure)
        doc["function"] = {"atoms": len(f.atoms), "modular": orlicz_modular(young, f),
                           "luxemburg_norm": luxemburg_norm(young, f), "lorentz_norm": lorentz_norm(a, b, f)}
    if args.timing:
        doc["timing"] = time.perf_counter() - t0
    doc = _jsonable(doc)
    jsonschema.validate(doc, load_schema())
    if args.strict and _inconclusive(report):
        _emit(args, _render_check(doc, args.format))
        raise _Exit(EXIT_INCONCLUSIVE, "inconclusive verdict under --strict")
    return doc


def _render_check(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return _dump(doc)
    rep = doc["report"]
    lines = [f"young           {doc['request']['young']}",
             f"direction       {doc['request']['direction']}",
             f"path            {rep['theorem_path']}"]
    for key in ("continuous", "almost_compact"):
        v = rep[key]
        lines.append(f"{key:<15} {v['state']:<13} {v['mode']:<17} {v['condition_id']}")
    for key, val in doc.get("function", {}).items():
        lines.append(f"{key:<15} {val}")
    return "\n".join(lines) + "\n"


_SWEEP_PARAMS = ("r", "rho", "alpha", "p", "q")


def cmd_sweep(args) -> str:
    grids = [parse_grid(g) for g in args.grid]
    if not 1 <= len(grids) <= 2:
        raise ParseError("sweep takes one or two --grid options")
    names = [n for n, _ in grids]
    for n in names:
        if n not in _SWEEP_PARAMS:
            raise ParseError(f"cannot sweep {n!r}; choose from {', '.join(_SWEEP_PARAMS)}")
    if len(set(names)) != len(names):
        raise ParseError("grid names must differ")
    base = {"r": args.r_exp, "rho": args.rho, "alpha": args.alpha, "p": args.p, "q": args.q}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([*names, "continuous", "almost_compact", "mode"])
    for combo in itertools.product(*(vals for _, vals in grids)):
        par = dict(base, **dict(zip(names, combo)))
        if args.family == "pow":
            if par["r"] is None:
                raise ParseError("pow sweep needs --r-exp or an r grid")
            young = _build(power, par["r"])
        else:
            if par["rho"] is None or par["alpha"] is None:
                raise ParseError("powlog sweep needs rho and alpha")
            young = _build(power_log, par["rho"], par["alpha"])
        if par["p"] is None or par["q"] is None:
            raise ParseError("sweep needs p and q (fixed or swept)")
        rep = _classify(young, args.direction, par["p"], par["q"], args.measure, args.mode)
        if args.strict and _inconclusive(rep):
            raise _Exit(EXIT_INCONCLUSIVE, f"inconclusive verdict at {dict(zip(names, combo))}")
        modes = {rep.continuous.mode, rep.almost_compact.mode}
        w.writerow([*(f"{x:.12g}" for x in combo), rep.continuous.state.value,
                    rep.almost_compact.state.value, modes.pop() if len(modes) == 1 else "mixed"])
    return buf.getvalue()


def _build(fn, *args):
    try:
        return fn(*args)
    except ValueError as exc:
        raise _Exit(EXIT_PRECONDITION, str(exc)) from exc


def cmd_inequality(args) -> tuple[str, bool]:
    if args.trials < 0:
        raise ParseError("trial count must be non-negative")
    log = young_inequality_trials(args.trials, args.seed)
    ratios = [t["ratio"] for t in log]
    doc = {"seed": args.seed, "trials": log, "max_ratio": max(ratios) if ratios else None,
           "violations": sum(not t["holds"] for t in log)}
    return _dump(doc), doc["violations"] == 0


def cmd_probe(args) -> str:
    young = parse_young(args.young)
    grid = parse_r_grid(args.grid)
    try:
        prof = almost_compactness_profile(young, args.p, args.q, grid, layers=args.layers)
    except ValueError as exc:
        raise _Exit(EXIT_PRECONDITION, str(exc)) from exc
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "phi", "extremal", "non_increasing"])
    for r, phi, best in zip(prof.r_grid, prof.phi, prof.best):
        w.writerow([f"{r:.12g}", repr(float(phi)), best, prof.non_increasing])
    return buf.getvalue()


# -- entry point ----------------------------------------------------------------------


def _real(text):
    try:
        return parse_real(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _measure(text):
    x = _real(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("measure must be positive or inf")
    return x


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orlicz-lorentz", description="Orlicz/Lorentz embedding toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--direction", choices=("orlicz-to-lorentz", "lorentz-to-orlicz"),
                        default="orlicz-to-lorentz")
        sp.add_argument("--measure", type=_measure, default=1.0, help="mu(R): positive real or inf")
        sp.add_argument("--mode", choices=("auto", "exact", "numeric"), default="auto")
        sp.add_argument("--strict", action="store_true", help="exit 4 on an inconclusive verdict")
        sp.add_argument("-o", "--output")

    c = sub.add_parser("check", help="classify one embedding")
    c.add_argument("--young", required=True)
    for flag in ("--p", "--q", "--r", "--s"):
        c.add_argument(flag, type=_real)
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.add_argument("--function-file", help="CSV of value,weight rows")
    c.add_argument("--timing", action="store_true")
    common(c)

    s = sub.add_parser("sweep", help="verdicts over a parameter grid (CSV)")
    s.add_argument("--family", choices=("pow", "powlog"), default="pow")
    s.add_argument("--grid", action="append", default=[], help="name=start:stop:step or name=v1,v2")
    s.add_argument("--r-exp", type=_real, help="power exponent when not swept")
    s.add_argument("--rho", type=_real)
    s.add_argument("--alpha", type=_real)
    s.add_argument("--p", type=_real, help="first Lorentz index")
    s.add_argument("--q", type=_real, help="second Lorentz index")
    common(s)

    i = sub.add_parser("inequality", help="seeded Young-type inequality trials (JSON log)")
    i.add_argument("--trials", type=int, default=500)
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("-o", "--output")

    p = sub.add_parser("probe", help="almost-compactness decay curve (CSV)")
    p.add_argument("--young", required=True)
    p.add_argument("--p", type=_real, required=True)
    p.add_argument("--q", type=_real, required=True)
    p.add_argument("--grid", default="1e-1:1e-6", help="hi:lo[:per_decade] or r1,r2,...")
    p.add_argument("--layers", type=int, default=8)
    p.add_argument("-o", "--output")
    return ap


def _emit(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            _emit(args, _render_check(cmd_check(args), args.format))
        elif args.command == "sweep":
            _emit(args, cmd_sweep(args))
        elif args.command == "inequality":
            text, ok = cmd_inequality(args)
            _emit(args, text)
            if not ok:
                print("inequality violated in at least one trial", file=sys.stderr)
                return EXIT_VIOLATION
        else:
            _emit(args, cmd_probe(args))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
