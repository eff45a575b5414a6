"""Command-line front end.

Every subcommand prints one JSON document (or SVG with ``--svg``) to stdout.
Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebraic import HalfPlanePoint, _lambda_float
from .congruence import classify_genus, coset_reps, gamma0_invariants
from .domains import GradingLocus, describe, grading_positions, load_description, make_domain, tile
from .dunkl import Partition, dunkl_apply, dunkl_commutator, jack_expand, jack_monomial_coefficients, jack_polynomial
from .errors import ExpressionError, HeckeForgeError
from .hecke import discreteness_probe, reduce_point
from .invariants import EtaSeries, eta_convergence, eta_partial, fock_coefficients, parse_sigma_source, spin_classification
from .polynomials import parse_poly, parse_rational
from .render import RenderSpec, render_domain_figure, render_domain_svg, render_genus_figure

CONFIG_ENV = "HECKE_FORGE_CONFIG"
SIG_DIGITS = 12

DEFAULTS = {
    "q": 3,
    "max_steps": 200,
    "word_length": 10,
    "samples": 500_000,
    "eps": 1e-3,
    "seed": 0,
    "scale": 400.0,
    "tol": 1e-3,
    "budget": 10_000,
    "axis_labels": False,
    "locus_labels": False,
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- formatting

def _num(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise HeckeForgeError(f"non-finite value {x}")
        y = float(f"{x:.{SIG_DIGITS}g}")
        return 0.0 if y == 0 else y
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return _num(obj)


def dumps(obj) -> str:
    return json.dumps(_clean(obj), ensure_ascii=False) + "\n"


# ------------------------------------------------------------------- parsing

_SQRT = re.compile(
    r"^\s*(?P<sign>-)?\s*(?:(?P<coef>\d+(?:\.\d+)?(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<rad>\d+(?:\.\d+)?(?:/\d+)?)\s*\)"
    r"\s*(?:/\s*(?P<den>\d+(?:\.\d+)?))?\s*$"
)


def parse_real(text: str) -> float:
    """``"1/2"``, ``"0.745"``, ``"sqrt(5)/3"``, ``"2*sqrt(2)/3"``."""
    m = _SQRT.match(text)
    if m:
        coef = Fraction(m.group("coef") or 1)
        val = float(coef) * math.sqrt(Fraction(m.group("rad")))
        if m.group("den"):
            val /= float(Fraction(m.group("den")))
        return -val if m.group("sign") else val
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(text)
    except ValueError as exc:
        raise ExpressionError(f"not a real number: {text!r}") from exc


def parse_point(text: str) -> HalfPlanePoint:
    """``"2.7+0.8i"``, ``"1+i"``, ``"0.5i"``."""
    t = text.strip().replace(" ", "")
    if "j" in t or not t.endswith("i"):
        raise ExpressionError(f"point must look like a+bi, got {text!r}")
    try:
        z = complex(t[:-1] + "j")
    except ValueError as exc:
        raise ExpressionError(f"point must look like a+bi, got {text!r}") from exc
    return HalfPlanePoint(z.real, z.imag)


def parse_interval(text: str, n: int = 2) -> tuple[float, ...]:
    parts = [p for p in re.split(r"\s*,\s*", text.strip())]
    if len(parts) != n:
        raise ExpressionError(f"expected {n} comma-separated values, got {text!r}")
    return tuple(parse_real(p) for p in parts)


def parse_locus(text: str, x_beta: float | None) -> GradingLocus:
    """``KIND:RULE[:PERIOD[:AXIS]]``; a pair locus defaults to period x_beta."""
    fields = text.split(":")
    if len(fields) < 2 or len(fields) > 4:
        raise ExpressionError(f"locus must be KIND:RULE[:PERIOD[:AXIS]], got {text!r}")
    kind, rule = fields[0], fields[1]
    if len(fields) > 2 and fields[2]:
        period = parse_real(fields[2])
    elif rule == "pair" and x_beta is not None:
        period = x_beta
    else:
        period = 1.0
    axis = fields[3] if len(fields) > 3 else "x"
    try:
        return GradingLocus(kind, rule, period, axis)
    except ValueError as exc:
        raise ExpressionError(str(exc)) from exc


def load_config(path: str | None) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    return data


def _opt(args, cfg: dict, name: str):
    val = getattr(args, name, None)
    if val is not None:
        return val
    return cfg.get(name, DEFAULTS.get(name))


# --------------------------------------------------------------- subcommands

def cmd_reduce(args, cfg):
    q = int(_opt(args, cfg, "q"))
    res = reduce_point(parse_point(args.point), q, int(_opt(args, cfg, "max_steps")))
    return {"reduced": {"re": res.reduced.re, "im": res.reduced.im}, "word": str(res.word), "steps": res.steps}


def cmd_probe(args, cfg):
    if args.lam is not None:
        lam = parse_real(args.lam)
    else:
        lam = _lambda_float(int(_opt(args, cfg, "q")))
    res = discreteness_probe(
        lam,
        word_length=int(_opt(args, cfg, "word_length")),
        sample_count=int(_opt(args, cfg, "samples")),
        eps=float(_opt(args, cfg, "eps")),
        seed=int(_opt(args, cfg, "seed")),
    )
    return {
        "lambda": res.lam,
        "verdict": res.verdict,
        "elements": res.elements,
        "truncated": res.truncated,
        "witness": list(res.witness) if res.witness else None,
        "distance": res.distance,
    }


def _domain_from_args(args):
    if getattr(args, "from_json", None):
        d, loci = load_description(Path(args.from_json).read_text())
        return d, loci
    x_beta = parse_real(args.x_beta) if args.x_beta else None
    d = make_domain(args.label, x_beta)
    loci = [parse_locus(t, d.x_beta) for t in (getattr(args, "locus", None) or [])]
    return d, loci


def _render_spec(args, cfg, d, loci, window=None):
    win = parse_interval(args.view, 4) if getattr(args, "view", None) else window
    if win is None and "window" in cfg and len(cfg["window"]) == 4:
        win = tuple(float(v) for v in cfg["window"])
    return RenderSpec(
        d,
        tuple(loci),
        win,
        float(_opt(args, cfg, "scale")),
        bool(cfg.get("axis_labels", DEFAULTS["axis_labels"]) or args.axis_labels),
        bool(cfg.get("locus_labels", DEFAULTS["locus_labels"]) or args.locus_labels),
    )


def cmd_domain(args, cfg):
    d, loci = _domain_from_args(args)
    spec = _render_spec(args, cfg, d, loci)
    figure = str(render_domain_figure(spec, args.figure)) if args.figure else None
    if args.svg:
        return render_domain_svg(spec)
    doc = describe(d, loci)
    if figure:
        doc["figure"] = figure
    return doc


def cmd_grading(args, cfg):
    period = parse_real(args.period) if args.period else (parse_real(args.x_beta) if args.x_beta else 1.0)
    locus = GradingLocus(args.kind, args.rule, period, args.axis)
    window = parse_interval(args.window)
    return {"locus": locus.to_dict(), "window": list(window), "positions": grading_positions(locus, window)}


def cmd_tile(args, cfg):
    d, loci = _domain_from_args(args)
    lo, hi = parse_interval(args.window)
    tiles = tile(d, args.n, (lo, hi), parallel=args.parallel)
    spec = _render_spec(args, cfg, d, loci, (lo, hi, d.y_range[0], d.y_range[1]))
    figure = str(render_domain_figure(spec, args.figure)) if args.figure else None
    if args.svg:
        return render_domain_svg(spec)
    doc = {
        "domain": d.to_dict(),
        "n": args.n,
        "window": [lo, hi],
        "tiles": [{"index": t.index, "x_range": list(t.x_range), "y_range": list(t.y_range)} for t in tiles],
    }
    if figure:
        doc["figure"] = figure
    return doc


def cmd_gamma0(args, cfg):
    doc = gamma0_invariants(args.n).to_dict()
    if args.cosets:
        doc["cosets"] = [[list(r0), list(r1)] for r0, r1 in coset_reps(args.n)]
    return doc


def cmd_genus_scan(args, cfg):
    levels = classify_genus(args.n_max, args.genus, parallel=args.parallel)
    if args.figure:
        render_genus_figure([gamma0_invariants(n) for n in range(1, args.n_max + 1)], args.figure)
    if args.full:
        return [gamma0_invariants(n).to_dict() for n in levels]
    return levels


def cmd_dunkl(args, cfg):
    p = parse_poly(args.poly, args.nvars)
    beta = parse_rational(args.beta)
    if args.commutator is not None:
        out = dunkl_commutator(args.j, args.commutator, beta, p)
    else:
        out = dunkl_apply(p, args.j, beta)
    return {"input": str(p), "nvars": p.nvars, "j": args.j, "k": args.commutator, "beta": beta, "result": str(out)}


def cmd_jack(args, cfg):
    alpha = parse_rational(args.alpha)
    if args.expand:
        p = parse_poly(args.expand, args.nvars)
        coeffs = jack_expand(p, alpha, p.nvars)
        return {"alpha": alpha, "nvars": p.nvars, "coefficients": {str(k): v for k, v in coeffs.items()}}
    lam = Partition.parse(args.partition)
    nvars = args.nvars if args.nvars is not None else max(lam.length, 1)
    poly = jack_polynomial(lam, alpha, nvars)
    mono = jack_monomial_coefficients(lam, alpha)
    ordered = sorted(mono.items(), key=lambda kv: tuple(-x for x in kv[0].parts))
    return {
        "partition": str(lam),
        "alpha": alpha,
        "nvars": nvars,
        "monomial_coefficients": {str(mu): c for mu, c in ordered},
        "polynomial": str(poly),
    }


def cmd_eta(args, cfg):
    source = parse_sigma_source(args.sigmas)
    eta0 = parse_rational(args.eta0)
    doc: dict = {"eta0": eta0}
    finite = ":" not in args.sigmas
    if finite or args.k is not None:
        import itertools

        values = tuple(source()) if finite else tuple(itertools.islice(source(), args.k))
        k = len(values) if args.k is None else args.k
        series = EtaSeries(eta0, values)
        doc.update({"k": k, "eta_plus": eta_partial(series, k, "+"), "eta_minus": eta_partial(series, k, "-")})
    if args.tol is not None or not finite:
        tol = float(_opt(args, cfg, "tol"))
        idx = eta_convergence(source(), tol, int(_opt(args, cfg, "budget")))
        doc.update({"tol": tol, "truncation_index": idx, "diverged": idx is None})
    return doc


def cmd_fock(args, cfg):
    s = parse_rational(args.spin)
    coeffs = fock_coefficients(s, args.nmin, args.nmax)
    if args.verbose:
        return {
            "s": s,
            "class": spin_classification(s),
            "n_range": list(coeffs.n_range),
            "coefficients": [list(p) for p in coeffs.pairs()],
        }
    return [list(p) for p in coeffs.pairs()]


# -------------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    common.add_argument("--parallel", action="store_true", help="parallel maps in batch subcommands")

    parser = _Parser(prog="hecke-forge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("reduce", parents=[common], help="reduce a point to the fundamental domain of H(lambda_q)")
    p.add_argument("--q", type=int)
    p.add_argument("--point", required=True, help="a+bi")
    p.add_argument("--max-steps", dest="max_steps", type=int)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("probe", parents=[common], help="empirical discreteness probe for H(lambda)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--lam", help="lambda, e.g. 1.9 or sqrt(2)")
    g.add_argument("--q", type=int, help="use lambda_q = 2cos(pi/q)")
    p.add_argument("--length", dest="word_length", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_probe)

    def domain_args(p, svg=True):
        p.add_argument("--label", default="picard", choices=["picard", "vinberg", "gamma0-picard", "gamma0-vinberg"])
        p.add_argument("--x-beta", dest="x_beta", help="e.g. 1/2, sqrt(5)/3")
        p.add_argument("--locus", action="append", help="KIND:RULE[:PERIOD[:AXIS]], repeatable")
        p.add_argument("--from-json", dest="from_json", help="domain description written by `domain`")
        p.add_argument("--svg", action="store_true", help="print SVG instead of JSON")
        p.add_argument("--figure", help="also save a matplotlib figure to this path")
        p.add_argument("--scale", type=float, help="pixels per unit")
        p.add_argument("--axis-labels", dest="axis_labels", action="store_true")
        p.add_argument("--locus-labels", dest="locus_labels", action="store_true")

    p = sub.add_parser("domain", parents=[common], help="describe or draw a box domain")
    domain_args(p)
    p.add_argument("--view", help="drawing window x0,x1,y0,y1")
    p.set_defaults(func=cmd_domain)

    p = sub.add_parser("grading", parents=[common], help="locus positions inside a window")
    p.add_argument("--rule", required=True, choices=["odd-half-multiples", "all-multiples", "pair"])
    p.add_argument("--kind", default="simplex", choices=["simplex", "complex"])
    p.add_argument("--period", help="locus period (default 1, or x_beta)")
    p.add_argument("--x-beta", dest="x_beta")
    p.add_argument("--axis", default="x", choices=["x", "y", "u", "v"])
    p.add_argument("--window", required=True, help="lo,hi")
    p.set_defaults(func=cmd_grading)

    p = sub.add_parser("tile", parents=[common], help="n=1 tiling of a domain over a window")
    domain_args(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--window", required=True, help="lo,hi")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("gamma0", parents=[common], help="invariants of Gamma_0(N)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cosets", action="store_true", help="include coset representatives mod N")
    p.set_defaults(func=cmd_gamma0)

    p = sub.add_parser("genus-scan", parents=[common], help="levels N <= N_max with a given genus")
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--full", action="store_true", help="emit full invariants per level")
    p.add_argument("--figure", help="save a genus plot to this path")
    p.set_defaults(func=cmd_genus_scan)

    p = sub.add_parser("dunkl", parents=[common], help="apply a Dunkl operator or commutator")
    p.add_argument("--poly", required=True)
    p.add_argument("--nvars", type=int)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--beta", default="1")
    p.add_argument("--commutator", type=int, metavar="K", help="compute [D_j, D_k] p")
    p.set_defaults(func=cmd_dunkl)

    p = sub.add_parser("jack", parents=[common], help="Jack polynomial or expansion in the Jack basis")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--partition", help="e.g. 3,1,1")
    g.add_argument("--expand", metavar="POLY", help="symmetric polynomial to expand")
    p.add_argument("--alpha", default="1")
    p.add_argument("--nvars", type=int)
    p.set_defaults(func=cmd_jack)

    p = sub.add_parser("eta", parents=[common], help="signed eta partial sums and truncation")
    p.add_argument("--sigmas", required=True, help="1,1,-1 | geometric:r | constant:c")
    p.add_argument("--eta0", default="0")
    p.add_argument("--k", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("fock", parents=[common], help="Fock-kernel phases exp(i pi s n^2)")
    p.add_argument("--spin", required=True, help="integer or half-integer, e.g. 1/2")
    p.add_argument("--nmin", type=int, default=0)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--verbose", action="store_true", help="wrap the array with spin metadata")
    p.set_defaults(func=cmd_fock)

    return parser


_VALUE_FLAGS = ("--window", "--view")


def _glue_values(argv: list[str]) -> list[str]:
    """Let ``--window -1,1`` through; argparse would take ``-1,1`` for an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config)
        result = args.func(args, cfg)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except ExpressionError as exc:
        print(f"hecke-forge: error: {exc}", file=sys.stderr)
        return 2
    except (HeckeForgeError, ValueError, ArithmeticError) as exc:
        print(f"hecke-forge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    sys.stdout.write(result if isinstance(result, str) else dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
