"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 capacity/resource error,
3 internal invariant violation. Errors are one line on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .errors import CapacityError, InvariantViolation, QuadratureError

EXIT_USAGE = 1
EXIT_CAPACITY = 2
EXIT_INVARIANT = 3

THREADS_ENV = "CYCLICA_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_int(text):
    """Integer literal; accepts ``10_000_000``, ``1e7`` and ``10^7``."""
    s = text.strip().replace("_", "")
    try:
        return int(s)
    except ValueError:
        pass
    try:
        if "^" in s:
            base, exp = s.split("^", 1)
            return int(base) ** int(exp)
        if "e" in s.lower():
            mant, exp = s.lower().split("e", 1)
            value = Fraction(mant) * Fraction(10) ** int(exp)
            if value.denominator == 1:
                return int(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def parse_real(text):
    """Decimal literal or ``2^-80`` style power of two, as an exact Fraction."""
    s = text.strip().replace("_", "")
    try:
        if "^" in s:
            base, exp = s.split("^", 1)
            return Fraction(int(base)) ** int(exp)
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _positive(kind):
    def check(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return v

    return check


def build_parser():
    p = _Parser(prog="cyclica", description="Cyclic-number census and asymptotic coefficients.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, precision=True):
        sp.add_argument("--format", choices=("csv", "json"), default="json", dest="output_format")
        sp.add_argument("--output", "-o", dest="output_path", default=None, help="write here instead of stdout")
        sp.add_argument("--digits", type=parse_int, default=None)
        if precision:
            sp.add_argument("--precision", type=parse_int, default=256, dest="precision_bits")

    sp = sub.add_parser("count", help="exact C(x)")
    sp.add_argument("--x", type=parse_int, required=True)
    sp.add_argument("--segment-size", type=_positive(parse_int), default=None)
    sp.add_argument("--threads", type=_positive(parse_int), default=None)
    sp.add_argument("--timing", action="store_true", help="record elapsed_ns (output is then not reproducible)")
    common(sp, precision=False)

    sp = sub.add_parser("enumerate", help="list cyclic n in [lo, hi)")
    sp.add_argument("--lo", type=parse_int, default=1)
    sp.add_argument("--hi", type=parse_int, required=True)
    common(sp, precision=False)

    sp = sub.add_parser("coeffs", help="table of C_k and c_k")
    sp.add_argument("--n", type=parse_int, required=True, dest="N")
    common(sp)

    for name, helptext in (("eval", "truncated expansion density"), ("compare", "expansion vs integral main term")):
        sp = sub.add_parser(name, help=helptext)
        where = sp.add_mutually_exclusive_group(required=True)
        where.add_argument("--L", type=parse_real, default=None, help="synthetic log log log x")
        where.add_argument("--x", type=parse_int, default=None)
        sp.add_argument("--n", type=parse_int, required=True, dest="N")
        if name == "compare":
            sp.add_argument("--quad-tol", type=_positive(parse_real), default=Fraction(1, 2**80))
        common(sp)

    sp = sub.add_parser("diagnose", help="Mertens / progression / S_k diagnostics")
    sp.add_argument("--kind", choices=("mertens", "lemma3", "sk-census"), required=True)
    sp.add_argument("--X", type=parse_int, default=None, help="prime bound (mertens, lemma3)")
    sp.add_argument("--m", type=parse_int, action="append", default=None, help="modulus (lemma3, repeatable)")
    sp.add_argument("--x", type=parse_int, default=None, help="range for sk-census")
    sp.add_argument("--kmax", type=parse_int, default=5)
    sp.add_argument("--precision", type=parse_int, default=128, dest="precision_bits")
    sp.add_argument("--format", choices=("csv", "json"), default="json", dest="output_format")
    sp.add_argument("--output", "-o", dest="output_path", default=None)
    sp.add_argument("--digits", type=parse_int, default=None)
    return p


def _validate(cfg):
    prec = getattr(cfg, "precision_bits", None)
    if prec is not None and prec < 64:
        raise UsageError("--precision must be at least 64 bits")
    if cfg.digits is not None and cfg.digits < 1:
        raise UsageError("--digits must be positive")
    cmd = cfg.command
    if cmd == "count" and cfg.x < 1:
        raise UsageError("--x must be >= 1")
    if cmd == "enumerate" and not 1 <= cfg.lo < cfg.hi:
        raise UsageError("need 1 <= --lo < --hi")
    if cmd in ("coeffs", "eval", "compare") and cfg.N < (1 if cmd == "coeffs" else 0):
        raise UsageError("--n out of range")
    if cmd in ("eval", "compare"):
        if cfg.L is not None and cfg.L <= 0:
            raise UsageError("--L must be positive")
        if cfg.x is not None and cfg.x < 16:
            raise UsageError("--x must be >= 16")
    if cmd == "diagnose":
        if cfg.kind in ("mertens", "lemma3") and (cfg.X is None or cfg.X < 3):
            raise UsageError(f"--kind {cfg.kind} needs --X >= 3")
        if cfg.kind == "sk-census" and (cfg.x is None or cfg.x < 16):
            raise UsageError("--kind sk-census needs --x >= 16")


def _csv(fieldnames, rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _scale(cfg):
    from .asymptotic import make_scale, make_scale_synthetic

    if cfg.L is not None:
        return make_scale_synthetic(cfg.L, cfg.precision_bits)
    return make_scale(cfg.x, cfg.precision_bits)


def _table_for(cfg, N):
    from .series import cyclic_coeffs

    return cyclic_coeffs(max(N, 1), cfg.precision_bits)


def run(cfg):
    """Execute a validated config; returns the serialized output text."""
    fmt = cfg.output_format
    cmd = cfg.command
    if cmd == "count":
        from .census import count_cyclic, default_workers
        from .primes import SEGMENT_CAPACITY

        workers = cfg.threads or default_workers()
        rec = count_cyclic(cfg.x, segment_size=cfg.segment_size or SEGMENT_CAPACITY, workers=workers)
        row = rec.as_row()
        if not cfg.timing:
            row["elapsed_ns"] = 0
        if fmt == "csv":
            return _csv(["x", "count", "method", "elapsed_ns"], [row])
        return json.dumps(row, indent=2) + "\n"

    if cmd == "enumerate":
        from .census import enumerate_cyclic

        values = list(enumerate_cyclic(cfg.lo, cfg.hi))
        if fmt == "csv":
            return "n\n" + "".join(f"{v}\n" for v in values)
        return json.dumps({"lo": cfg.lo, "hi": cfg.hi, "cyclic": values}) + "\n"

    if cmd == "coeffs":
        table = _table_for(cfg, cfg.N)
        return table.to_csv(cfg.digits) if fmt == "csv" else table.to_json(cfg.digits) + "\n"

    if cmd == "eval":
        from .asymptotic import eval_expansion

        scale = _scale(cfg)
        value = eval_expansion(scale, _table_for(cfg, cfg.N), cfg.N)
        row = {"L": scale.L.to_decimal(cfg.digits), "N": cfg.N, "series_value": value.to_decimal(cfg.digits)}
        if fmt == "csv":
            return _csv(list(row), [row])
        row["scale"] = scale.describe()
        return json.dumps(row, indent=2) + "\n"

    if cmd == "compare":
        from .asymptotic import compare_main_terms, reports_to_csv, reports_to_json

        scale = _scale(cfg)
        report = compare_main_terms(scale, _table_for(cfg, cfg.N), cfg.N, cfg.quad_tol)
        if fmt == "csv":
            return reports_to_csv([report], cfg.digits)
        return reports_to_json([report], cfg.digits) + "\n"

    if cmd == "diagnose":
        from . import diagnostics as dg

        if cfg.kind == "mertens":
            rows = [dg.mertens_residual(cfg.X, cfg.precision_bits)]
        elif cfg.kind == "lemma3":
            rows = dg.lemma3_rows(cfg.m or [1], cfg.X, cfg.precision_bits)
        else:
            rows = dg.sk_census(cfg.x, cfg.kmax).rows()
        return dg.rows_to_csv(rows, cfg.digits) if fmt == "csv" else dg.rows_to_json(rows, cfg.digits) + "\n"

    raise UsageError(f"unknown command {cmd!r}")


def main(argv=None):
    parser = build_parser()
    try:
        cfg = parser.parse_args(argv)
        _validate(cfg)
        text = run(cfg)
    except UsageError as exc:
        print(f"cyclica: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, MemoryError, QuadratureError) as exc:
        print(f"cyclica: resource error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InvariantViolation as exc:
        print(f"cyclica: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"cyclica: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
