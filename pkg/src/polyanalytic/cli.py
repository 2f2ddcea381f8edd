"""Command-line front end.

Every command prints one JSON object (or ``key,value`` CSV rows) with a
fixed field order::

    {"schema_version": 1, "command": ..., "inputs": {...},
     "result": {...}, "diagnostics": {"grid_n": ..., "D": ..., ...}}

Exit codes: 0 success, 2 bad input or unmet precondition, 3 numerical
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .algebra import QuotientElement, diamond_mul, exact_order, full_mul
from .decompose import SampleSet, fit_components, peel_components
from .errors import InputError, NumericalError
from .parser import parse, lower, print_canonical
from .region import (Region, SamplingConfig, parse_region, quotient_seminorm, sup_norm)
from .series import DEFAULT_CAP
from .spectral import invert, is_invertible, resolvent, spectrum

SCHEMA_VERSION = 1
DEFAULT_REGION = "disc:0.75,0,0.25"
EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


@dataclass(frozen=True)
class RunConfig:
    order_q: int | None = None
    region: Region = parse_region(DEFAULT_REGION)
    grid_n: int = 200
    series_cap: int = DEFAULT_CAP
    output: str = "json"
    h_degree: int = 6
    h_order: int = 2
    step: float | None = None
    degree: int = 6
    refine: bool = True

    @property
    def sampling(self) -> SamplingConfig:
        return SamplingConfig(grid_n=self.grid_n, refine=self.refine)


class UsageError(InputError):
    pass


# serialization

def _c(z) -> list:
    z = complex(z)
    return [_f(z.real), _f(z.imag)]


def _f(x):
    x = float(x) + 0.0  # folds -0.0 into 0.0
    if math.isfinite(x):
        return x
    return "inf" if x > 0 else ("-inf" if x < 0 else "nan")


def _element(f) -> dict:
    q = None
    if isinstance(f, QuotientElement):
        q, f = f.order_bound, f.rep
    out = {}
    if q is not None:
        out["order_bound"] = q
    out["kind"] = f.kind
    if f.kind == "polynomial":
        out["canonical"] = print_canonical(f)
    else:
        out["center"] = _c(f.center)
        out["degree_cap"] = f.degree_cap
        out["radius"] = _f(f.radius)
    out["exact_order"] = exact_order(f)
    out["components"] = [[_c(c) for c in row] for row in f.matrix]
    return out


def _report(command, inputs, result, cfg: RunConfig, **diag) -> dict:
    diagnostics = {"grid_n": cfg.grid_n, "D": cfg.series_cap}
    diagnostics.update(diag)
    return {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs,
            "result": result, "diagnostics": diagnostics}


def _error(command, exc) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "command": command,
           "error": str(exc), "error_type": type(exc).__name__}
    offset = getattr(exc, "offset", None)
    if offset is not None:
        out["offset"] = offset
    return out


def _flatten(prefix, value, rows):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, rows)
    elif isinstance(value, list) and value and isinstance(value[0], (list, dict)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    elif isinstance(value, list):
        rows.append((prefix, ";".join(_cell(v) for v in value)))
    else:
        rows.append((prefix, _cell(value)))


def _cell(v) -> str:
    return v if isinstance(v, str) else json.dumps(v)


def render(report: dict, output: str = "json") -> str:
    if output == "csv":
        rows = []
        _flatten("", report, rows)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(rows)
        return buf.getvalue()
    return json.dumps(report, indent=2) + "\n"


# helpers

def _element_from(text, q=None):
    return lower(parse(text), q)


def _scalar_from(text) -> complex:
    """A complex literal written in the expression language, e.g. ``0.75+0.25i``."""
    f = _element_from(text)
    if f.matrix.shape != (1, 1):
        raise UsageError(f"{text!r} is not a constant")
    return complex(f.matrix[0, 0])


def _quotient(text, cfg: RunConfig) -> QuotientElement:
    f = _element_from(text)
    q = cfg.order_q
    if q is None:
        q = (exact_order(f) or 0) + 1
    return QuotientElement(q, f)


def _check_order(cfg):
    if cfg.order_q is not None and cfg.order_q < 1:
        raise UsageError("--order must be a positive integer")


# commands: each returns (exit code, report)

def _run(command, body):
    try:
        return EXIT_OK, body()
    except InputError as exc:
        return EXIT_INPUT, _error(command, exc)
    except Exception as exc:  # NumericalError, LinAlgError, overflow, ...
        return EXIT_NUMERIC, _error(command, exc)


def cmd_eval(expr, z, cfg=RunConfig()):
    def body():
        _check_order(cfg)
        f = _element_from(expr, cfg.order_q)
        point = _scalar_from(z)
        value = f(point)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise NumericalError("non-finite value")
        return _report("eval", {"expr": expr, "z": _c(point), "order": cfg.order_q},
                       {"value": _c(value)}, cfg)
    return _run("eval", body)


def cmd_mul(e1, e2, cfg=RunConfig()):
    def body():
        _check_order(cfg)
        f, g = _element_from(e1), _element_from(e2)
        if cfg.order_q is None:
            prod = full_mul(f, g)
        else:
            q = cfg.order_q
            prod = diamond_mul(QuotientElement(q, f), QuotientElement(q, g))
        return _report("mul", {"e1": e1, "e2": e2, "order": cfg.order_q},
                       {"canonical": print_canonical(prod), "element": _element(prod)}, cfg)
    return _run("mul", body)


def cmd_norm(expr, cfg=RunConfig()):
    def body():
        _check_order(cfg)
        f = _element_from(expr, cfg.order_q)
        est = sup_norm(f, cfg.region, cfg.sampling)
        return _report("norm", {"expr": expr, "region": str(cfg.region), "order": cfg.order_q},
                       {"value": _f(est.value), "argmax": _c(est.argmax)}, cfg,
                       refined=est.refined)
    return _run("norm", body)


def cmd_seminorm(expr, cfg=RunConfig()):
    def body():
        _check_order(cfg)
        if cfg.order_q is None:
            raise UsageError("seminorm needs --order")
        f = _element_from(expr)
        est = quotient_seminorm(f, cfg.region, cfg.h_degree, cfg.h_order, cfg.sampling,
                                q=cfg.order_q)
        return _report(
            "seminorm",
            {"expr": expr, "region": str(cfg.region), "order": cfg.order_q},
            {"value": _f(est.value), "upper_bound": True, "argmax": _c(est.argmax),
             "witness": print_canonical(est.witness) if est.witness is not None else None},
            cfg, h_degree=cfg.h_degree, h_order=cfg.h_order)
    return _run("seminorm", body)


def cmd_invert(expr, cfg=RunConfig()):
    def body():
        _check_order(cfg)
        f = _quotient(expr, cfg)
        res = invert(f, cfg.region, cfg.series_cap, cfg.sampling)
        return _report("invert", {"expr": expr, "region": str(cfg.region),
                                  "order": f.order_bound},
                       {"inverse": _element(res.inverse)}, cfg,
                       residual=_f(res.residual), margin=_f(res.margin), tail=_f(res.tail))
    return _run("invert", body)


def cmd_resolvent(expr, lam, cfg=RunConfig()):
    def body():
        _check_order(cfg)
        f = _quotient(expr, cfg)
        lam_value = _scalar_from(lam)
        res = resolvent(f, lam_value, cfg.region, cfg.series_cap, cfg.sampling)
        return _report("resolvent", {"expr": expr, "lambda": _c(lam_value),
                                     "region": str(cfg.region), "order": f.order_bound},
                       {"inverse": _element(res.inverse)}, cfg,
                       residual=_f(res.residual), margin=_f(res.margin), tail=_f(res.tail))
    return _run("resolvent", body)


def cmd_spectrum(expr, cfg=RunConfig()):
    def body():
        _check_order(cfg)
        f = _quotient(expr, cfg)
        est = spectrum(f, cfg.region, cfg.grid_n)
        inv = is_invertible(f, cfg.region, cfg.sampling)
        return _report("spectrum", {"expr": expr, "region": str(cfg.region),
                                    "order": f.order_bound},
                       {"bound_radius": _f(est.bound_radius),
                        "max_point_modulus": _f(np.max(np.abs(est.points))),
                        "zero_in_spectrum": not inv.invertible,
                        "points": [_c(p) for p in est.points]}, cfg,
                       sample_n=est.sample_n)
    return _run("spectrum", body)


def cmd_fit(csv_path, cfg=RunConfig()):
    def body():
        _check_order(cfg)
        if cfg.order_q is None:
            raise UsageError("fit needs --order")
        try:
            samples = SampleSet.from_csv(csv_path)
        except OSError as exc:
            raise UsageError(f"cannot read {csv_path}: {exc}") from None
        res = fit_components(samples, cfg.order_q, cfg.degree)
        return _report("fit", {"csv": str(csv_path), "order": cfg.order_q,
                               "degree": cfg.degree, "samples": len(samples)},
                       {"element": _element(res.element)}, cfg,
                       residual=_f(res.residual))
    return _run("fit", body)


def cmd_peel(expr, cfg=RunConfig()):
    def body():
        _check_order(cfg)
        if cfg.order_q is None:
            raise UsageError("peel needs --order")
        f = _element_from(expr)
        res = peel_components(f, cfg.region, cfg.order_q, cfg.step, cfg.degree)
        step = cfg.step if cfg.step is not None else 1e-3 * cfg.region.diameter
        return _report("peel", {"expr": expr, "region": str(cfg.region),
                                "order": cfg.order_q, "degree": cfg.degree},
                       {"element": _element(res)}, cfg, step=_f(step))
    return _run("peel", body)


EXAMPLE_REGION = "disc:0.75,0,0.25"


def cmd_verify_example(cfg=RunConfig()):
    """Norms of f = z zbar, g = 1 - z zbar and f diamond_2 g on |z - 3/4| <= 1/4."""
    def body():
        if cfg.order_q not in (None, 2):
            raise UsageError("the example is defined for --order 2 only")
        K = parse_region(EXAMPLE_REGION)
        f = _element_from("z*zbar", 2)
        g = _element_from("1 - z*zbar", 2)
        fg = diamond_mul(f, g)
        nf = sup_norm(f, K, cfg.sampling).value
        ng = sup_norm(g, K, cfg.sampling).value
        nfg = sup_norm(fg, K, cfg.sampling).value
        submultiplicative = nfg <= nf * ng
        passed = (1 - 1e-3 <= nf <= 1 and 0.75 - 1e-3 <= ng <= 0.75
                  and 1 - 1e-3 <= nfg <= 1 and not submultiplicative)
        return _report("verify-example",
                       {"region": EXAMPLE_REGION, "order": 2, "f": "z*zbar",
                        "g": "1 - z*zbar"},
                       {"norm_f": _f(nf), "norm_g": _f(ng), "norm_fg": _f(nfg),
                        "product_canonical": print_canonical(fg),
                        "submultiplicative": submultiplicative, "passed": passed}, cfg)
    return _run("verify-example", body)


# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--region", default=DEFAULT_REGION,
                   help="disc:<cx>,<cy>,<r> or rect:<x0>,<y0>,<x1>,<y1>")
    p.add_argument("--order", type=int, default=None, help="order bound q (work mod zbar^q)")
    p.add_argument("--grid", type=int, default=200, help="sample points per axis")
    p.add_argument("--series-cap", type=int, default=DEFAULT_CAP, help="Taylor degree cap D")
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.add_argument("--h-degree", type=int, default=6, help="seminorm search: z-degree of h")
    p.add_argument("--h-order", type=int, default=2, help="seminorm search: zbar-order of h")
    p.add_argument("--step", type=float, default=None, help="finite-difference step for peel")
    p.add_argument("--degree", type=int, default=6, help="component degree for fit/peel")
    p.add_argument("--no-refine", action="store_true", help="skip local refinement of norms")


def build_parser():
    parser = _Parser(prog="polyanalytic", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    specs = {
        "eval": ["expr", "z"], "mul": ["e1", "e2"], "norm": ["expr"],
        "seminorm": ["expr"], "invert": ["expr"], "resolvent": ["expr", "lam"],
        "spectrum": ["expr"], "fit": ["csv_path"], "peel": ["expr"],
        "verify-example": [],
    }
    for name, positionals in specs.items():
        p = sub.add_parser(name)
        for arg in positionals:
            p.add_argument(arg)
        _common(p)
    return parser


def _config(ns) -> RunConfig:
    if ns.grid < 2:
        raise UsageError("--grid must be at least 2")
    if ns.series_cap < 0:
        raise UsageError("--series-cap must be nonnegative")
    return RunConfig(order_q=ns.order, region=parse_region(ns.region), grid_n=ns.grid,
                     series_cap=ns.series_cap, output=ns.output, h_degree=ns.h_degree,
                     h_order=ns.h_order, step=ns.step, degree=ns.degree,
                     refine=not ns.no_refine)


def _requested_output(argv) -> str:
    for i, a in enumerate(argv):
        if a == "--output=csv" or (a == "--output" and argv[i + 1:i + 2] == ["csv"]):
            return "csv"
    return "json"


def run(argv=None):
    """Parse argv and dispatch; returns (exit code, rendered text)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    output = _requested_output(argv)
    command = next((a for a in argv if not a.startswith("-")), None)
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
    except InputError as exc:
        return EXIT_INPUT, render(_error(command, exc), output)
    dispatch = {
        "eval": lambda: cmd_eval(ns.expr, ns.z, cfg),
        "mul": lambda: cmd_mul(ns.e1, ns.e2, cfg),
        "norm": lambda: cmd_norm(ns.expr, cfg),
        "seminorm": lambda: cmd_seminorm(ns.expr, cfg),
        "invert": lambda: cmd_invert(ns.expr, cfg),
        "resolvent": lambda: cmd_resolvent(ns.expr, ns.lam, cfg),
        "spectrum": lambda: cmd_spectrum(ns.expr, cfg),
        "fit": lambda: cmd_fit(ns.csv_path, cfg),
        "peel": lambda: cmd_peel(ns.expr, cfg),
        "verify-example": lambda: cmd_verify_example(cfg),
    }
    code, report = dispatch[ns.command]()
    return code, render(report, cfg.output)


def main(argv=None):
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
