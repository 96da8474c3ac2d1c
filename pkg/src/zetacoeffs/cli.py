"""Command-line interface: ``zetacoeffs {coeff,eval,verify,fit}``.

Exit codes: 0 success (no failed identity), 1 at least one failed identity,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from pathlib import Path

import mpmath as mp
import numpy as np

from . import __version__
from .coefficients import CoefficientSpec, dirichlet_spec, sweep
from .numerics import PrecisionPolicy, default_digits, to_mp

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FAMILY_CHOICES = ("riemann", "hurwitz", "general", "odd", "two-param", "bernoulli", "dirichlet",
                  "maslanka", "maslanka-lerch")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers

def parse_range(text: str) -> range:
    """'a..b' (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(lo, hi + 1)


def parse_number(text: str):
    """Real, complex ('2+3j') or rational ('1/2') argument."""
    text = text.strip()
    # keep every digit the user typed; later arithmetic sets its own precision
    with mp.workdps(max(60, len(text) + 10)):
        try:
            if "/" in text and "j" not in text:
                num, den = text.split("/", 1)
                return mp.mpf(num) / mp.mpf(den)
            return mp.mpmathify(text)
        except (ValueError, TypeError):
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def fmt(v, digits: int) -> str:
    """Shortest decimal that round-trips at ``digits`` significant digits."""
    if v is None:
        return ""
    v = to_mp(v)
    if isinstance(v, mp.mpc):
        if v.imag != 0:
            raise ValueError("fmt takes real values; split complex values first")
        v = v.real
    if v == 0:
        return "0"
    for n in range(1, digits + 1):
        s = mp.nstr(v, n)
        with mp.workdps(digits):
            if mp.almosteq(mp.mpf(s), v, rel_eps=mp.mpf(10) ** (-digits), abs_eps=0):
                return s
    return mp.nstr(v, digits)


def load_config(path: str) -> dict:
    """key=value lines; '#' starts a comment.  Keys use the long flag names
    with dashes or underscores."""
    out = {}
    for ln, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{ln}: expected key=value")
        key, val = (x.strip() for x in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def config_digest(opts: dict) -> str:
    blob = json.dumps({k: str(v) for k, v in sorted(opts.items())}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def write_manifest(path: Path, command: str, opts: dict, digest: str, policy: dict, timings: dict,
                   totals: dict | None = None, outputs: dict | None = None):
    man = {
        "command": command,
        "argv": sys.argv[1:],
        "config_digest": digest,
        "options": {k: str(v) for k, v in sorted(opts.items())},
        "precision": policy,
        "version": __version__,
        "timings": {k: round(v, 3) for k, v in timings.items()},
        "totals": totals or {},
        "outputs": outputs or {},
        "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    path.write_text(json.dumps(man, indent=2, sort_keys=True) + "\n")


def _spec_from(args) -> CoefficientSpec:
    fam = args.family
    a = args.a if args.a is not None else mp.mpf(1)
    if fam == "riemann":
        return CoefficientSpec.riemann()
    if fam == "hurwitz":
        return CoefficientSpec.hurwitz(a)
    if fam == "general":
        return CoefficientSpec.general(args.b if args.b is not None else 2, a)
    if fam == "odd":
        return CoefficientSpec.odd()
    if fam == "two-param":
        if args.a is None or args.b is None:
            raise UsageError("--family two-param needs --a and --b")
        return CoefficientSpec.two_param(args.a, args.b)
    if fam == "bernoulli":
        return CoefficientSpec.bernoulli(args.x if args.x is not None else 0)
    if fam == "dirichlet":
        if args.modulus is None:
            raise UsageError("--family dirichlet needs --modulus")
        return dirichlet_spec(args.modulus, args.char, args.b if args.b is not None else 2)
    if fam == "maslanka":
        return CoefficientSpec.maslanka_hurwitz(a)
    if fam == "maslanka-lerch":
        if args.z is None:
            raise UsageError("--family maslanka-lerch needs --z")
        return CoefficientSpec.maslanka_lerch(args.z, a)
    raise UsageError(f"unknown --family {fam}")


def _add_family_flags(p):
    p.add_argument("--family", choices=FAMILY_CHOICES, default="riemann")
    p.add_argument("--a", type=parse_number, default=None, help="Hurwitz shift")
    p.add_argument("--b", type=parse_number, default=None, help="scale exponent")
    p.add_argument("--x", type=parse_number, default=None, help="Bernoulli polynomial argument")
    p.add_argument("--z", type=parse_number, default=None, help="Lerch parameter")
    p.add_argument("--modulus", type=int, default=None, help="Dirichlet modulus q")
    p.add_argument("--char", type=int, default=1, help="character index (0 = principal)")


# ---------------------------------------------------------------------------
# coeff

def rows_to_csv(rows, digits: int, complex_values: bool, header_comment: str | None = None) -> str:
    buf = io.StringIO()
    if header_comment:
        buf.write(f"# {header_comment}\n")
    w = csv.writer(buf, lineterminator="\n")
    if complex_values:
        w.writerow(["k", "re", "im", "method", "precision", "err_bound"])
    else:
        w.writerow(["k", "value", "method", "precision", "err_bound"])
    for r in rows:
        err = fmt(r.err_bound, 3) if r.err_bound is not None else ""
        method = r.method if r.error is None else f"error: {r.error}"
        if complex_values:
            v = to_mp(r.value) if r.value is not None else None
            re = fmt(mp.re(v), digits) if v is not None else ""
            im = fmt(mp.im(v), digits) if v is not None else ""
            w.writerow([r.k, re, im, method, r.working_precision, err])
        else:
            w.writerow([r.k, fmt(r.value, digits), method, r.working_precision, err])
    return buf.getvalue()


def rows_to_jsonl(rows, digits: int) -> str:
    out = []
    for r in rows:
        d = {"k": r.k, "method": r.method, "precision": r.working_precision,
             "err_bound": fmt(r.err_bound, 3) if r.err_bound is not None else None}
        if r.value is not None and isinstance(to_mp(r.value), mp.mpc):
            d["re"], d["im"] = fmt(mp.re(r.value), digits), fmt(mp.im(r.value), digits)
        else:
            d["value"] = fmt(r.value, digits)
        if r.error:
            d["error"] = r.error
        out.append(json.dumps(d, sort_keys=True))
    return "\n".join(out) + "\n"


def cmd_coeff(args) -> int:
    spec = _spec_from(args)
    policy = PrecisionPolicy(args.digits)
    t0 = time.perf_counter()
    rows = list(sweep(spec, args.k, policy, jobs=args.jobs, method=args.method))
    el = time.perf_counter() - t0
    complex_values = spec.family == "dirichlet" and not spec.chi.is_real()
    opts = {"family": spec.describe(), "k": f"{args.k.start}..{args.k.stop - 1}", "digits": args.digits,
            "method": args.method, "format": args.format}
    digest = config_digest(opts)
    body = (rows_to_csv(rows, args.digits, complex_values, f"manifest sha={digest}")
            if args.format == "csv" else rows_to_jsonl(rows, args.digits))
    if args.out:
        out = Path(args.out)
        out.write_text(body)
        write_manifest(Path(str(out) + ".manifest.json"), "coeff", opts, digest,
                       {"target_digits": args.digits, "guard_digits": policy.guard_digits},
                       {"sweep": el}, {"rows": len(rows), "errors": sum(r.error is not None for r in rows)},
                       {"data": out.name, "sha256": hashlib.sha256(body.encode()).hexdigest()})
        print(f"wrote {len(rows)} rows to {out}")
    else:
        sys.stdout.write(body)
    return EXIT_OK if all(r.error is None for r in rows) else EXIT_FAIL


# ---------------------------------------------------------------------------
# eval

EVAL_FUNCTIONS = ("recip-zeta", "maslanka-zeta", "maslanka-lerch", "riesz", "F", "G", "phi", "hurwitz-zeta")


def cmd_eval(args) -> int:
    from . import representations as rp
    from .kernel import hurwitz_zeta

    dps = args.digits
    fn = args.function
    need = lambda name: getattr(args, name) if getattr(args, name) is not None else _missing(name)
    value, tail, terms, extra = None, None, None, ""
    with mp.workdps(dps):
        if fn == "recip-zeta":
            spec = rp.ReciprocalSeriesSpec(_spec_from(args), args.prefactor)
            s = need("s")
            res = rp.reciprocal_zeta_series(spec, s, tol=mp.mpf(10) ** (-min(dps, 12)), dps=dps)
            value, tail, terms, extra = res.value, res.tail_estimate, res.terms_used, res.method
        elif fn == "maslanka-zeta":
            a = args.a if args.a is not None else 1
            res = rp.maslanka_series(CoefficientSpec.maslanka_hurwitz(a), need("s"), tol=mp.mpf(10) ** (-dps + 5), dps=dps)
            value, tail, terms, extra = res.value, res.tail_estimate, res.terms_used, res.method
        elif fn == "maslanka-lerch":
            a = args.a if args.a is not None else 1
            res = rp.maslanka_series(CoefficientSpec.maslanka_lerch(need("z"), a), need("s"),
                                     tol=mp.mpf(10) ** (-dps + 5), dps=dps)
            value, tail, terms, extra = res.value, res.tail_estimate, res.terms_used, res.method
        elif fn == "riesz":
            value = rp.riesz_function(need("x"), dps)
        elif fn == "F":
            value = rp.F_function(need("x"), args.b or 2, args.a or 1, dps)
        elif fn == "G":
            value = rp.G_function(need("x"), dps)
        elif fn == "phi":
            chk = rp.phi_quadrature(need("s"), need("b"), args.a or 1, dps=dps)
            value, tail, terms, extra = chk.phi.value, chk.phi.tail_estimate, chk.phi.terms_used, chk.phi.method
        elif fn == "hurwitz-zeta":
            value = hurwitz_zeta(need("s"), args.a or 1, dps)
    shown = dps
    if tail is not None and tail > 0:
        # do not print digits the error estimate does not support
        shown = max(3, min(dps, int(-mp.log10(tail / max(abs(value), mp.mpf(10) ** -dps))) + 1))
    print(f"value = {mp.nstr(value, shown)}")
    if tail is not None:
        print(f"tail_estimate = {mp.nstr(tail, 3)}")
        print(f"terms_used = {terms}")
    if extra:
        print(f"method = {extra}")
    return EXIT_OK


def _missing(name):
    raise UsageError(f"--{name} is required for this function")


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    from .suites import run_suite

    t0 = time.perf_counter()
    rep = run_suite(args.suite, jobs=args.jobs, K=args.K)
    el = time.perf_counter() - t0
    print(rep.table())
    opts = {"suite": args.suite, "K": args.K, "digits": args.digits}
    digest = config_digest(opts)
    if args.out:
        out = Path(args.out)
        body = rep.to_jsonl()
        out.write_text(body)
        write_manifest(Path(str(out) + ".manifest.json"), "verify", opts, digest,
                       {"target_digits": args.digits}, {r.id: r.seconds for r in rep.rows} | {"total": el},
                       rep.counts(), {"report": out.name, "sha256": hashlib.sha256(body.encode()).hexdigest()})
    return EXIT_OK if rep.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# fit

def _read_csv_rows(path: str):
    ks, vals = [], []
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    for row in csv.DictReader(lines):
        if row.get("value"):
            ks.append(int(row["k"]))
            vals.append(float(row["value"]))
    return np.array(ks), np.array(vals)


def cmd_fit(args) -> int:
    from .analysis import WindowError, envelope_exponent, trend_fit, trend_target

    lo, hi = args.window.start, args.window.stop - 1
    if hi - lo + 1 < 8:
        raise UsageError(f"--window {lo}..{hi} is too small (at least 8 points)")
    if args.input:
        ks, vals = _read_csv_rows(args.input)
        floor = 10.0 ** (-args.digits)
    else:
        spec = _spec_from(args)
        rows = list(sweep(spec, range(lo, hi + 1), PrecisionPolicy(args.digits), jobs=args.jobs))
        ks = np.array([r.k for r in rows if r.error is None])
        vals = np.array([float(r.value) for r in rows if r.error is None])
        floor = max(float(r.err_bound or 0) for r in rows)
    out = {}
    try:
        if args.model in ("trend", "both"):
            tf = trend_fit(ks, vals, (lo, hi))
            out["trend"] = tf.to_json()
            tgt = trend_target()
            out["trend"]["target"] = float(tgt.amplitude)
            out["trend"]["relative_deviation"] = abs(tf.value / float(tgt.amplitude) - 1)
        if args.model in ("envelope", "both"):
            out["envelope"] = envelope_exponent(ks, vals, (lo, hi), noise_floor=floor).to_json()
    except WindowError as exc:
        raise UsageError(str(exc)) from None
    text = json.dumps(out, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zetacoeffs", description="Reciprocal-zeta coefficients and identities")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--config", help="key=value file mirroring the flags; flags win")
    sub = p.add_subparsers(dest="command", required=True)
    jobs = os.cpu_count() or 1

    c = sub.add_parser("coeff", help="coefficient sweep to CSV or JSON lines")
    _add_family_flags(c)
    c.add_argument("--k", type=parse_range, default=parse_range("0..100"), help="inclusive range LO..HI")
    c.add_argument("--digits", type=int, default=default_digits())
    c.add_argument("--method", choices=("auto", "binomial", "mobius", "approx"), default="auto")
    c.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    c.add_argument("--out")
    c.add_argument("--jobs", type=int, default=jobs)
    c.set_defaults(func=cmd_coeff)

    e = sub.add_parser("eval", help="evaluate one function")
    e.add_argument("function", choices=EVAL_FUNCTIONS)
    _add_family_flags(e)
    e.add_argument("--s", type=parse_number)
    e.add_argument("--prefactor", action="store_true", help="multiply by 2^s - 1 (a = 1/2 coefficients)")
    e.add_argument("--digits", type=int, default=min(default_digits(), 20))
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run an identity suite")
    v.add_argument("--suite", choices=("core", "summatory", "stieltjes", "maslanka", "dirichlet", "appendix", "all"),
                   default="core")
    v.add_argument("--digits", type=int, default=default_digits())
    v.add_argument("--K", type=int, default=100_000, help="coefficient budget for the slow sums")
    v.add_argument("--out", help="JSON lines report")
    v.add_argument("--jobs", type=int, default=jobs)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fit", help="trend and envelope fits")
    _add_family_flags(f)
    f.add_argument("--window", type=parse_range, default=parse_range("200..3000"))
    f.add_argument("--model", choices=("trend", "envelope", "both"), default="both")
    f.add_argument("--input", help="CSV written by the coeff command")
    f.add_argument("--digits", type=int, default=12)
    f.add_argument("--out")
    f.add_argument("--jobs", type=int, default=jobs)
    f.set_defaults(func=cmd_fit)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return parser.parse_args(argv)
    cfg = load_config(known.config)
    first = parser.parse_args(argv)
    subparser = parser._subparsers._group_actions[0].choices[first.command]
    converted = {}
    for action in subparser._actions:
        if action.dest in cfg:
            raw = cfg.pop(action.dest)
            if isinstance(action, argparse._StoreTrueAction):
                converted[action.dest] = raw.lower() in ("1", "true", "yes")
            else:
                converted[action.dest] = action.type(raw) if action.type else raw
    if cfg:
        raise UsageError(f"unknown config keys: {', '.join(sorted(cfg))}")
    subparser.set_defaults(**converted)
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    except (UsageError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
