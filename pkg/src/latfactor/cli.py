"""Command-line interface: factor, power, anbn and bench.

Reports are JSON on standard output with every big integer written as a
decimal string. Diagnostics go to standard error. Exit codes: 0 success,
1 usage or parse error, 2 when the input breaks the promised form.
"""

import argparse
import csv
import io
import json
import math
import os
import random
import sys
import time
from fractions import Fraction

from .arith import is_prime
from .counters import Counters
from .drivers import (
    factor_anbn,
    factor_balanced,
    factor_rpower,
    factor_rpower_scan,
    factor_with_modinfo,
    rpower_all,
)
from .errors import LatFactorError, NotOfForm, NotSemiprime, PromiseViolated

EXIT_OK, EXIT_USAGE, EXIT_PROMISE = 0, 1, 2

BENCH_FIELDS = [
    "bits", "N", "p", "q", "m", "phi_m", "k",
    "baby_steps", "giant_steps", "lll_calls", "collisions_checked", "gcd_calls",
]


class UsageError(Exception):
    pass


def parse_int(text):
    """Decimal or 0x-prefixed hexadecimal."""
    text = text.strip()
    try:
        if text.lower().startswith("0x"):
            return int(text[2:], 16)
        if not text.isdigit():
            raise ValueError
        return int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}") from None


def parse_fraction(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational: {text!r}") from None
    if value <= 0:
        raise UsageError(f"must be positive: {text!r}")
    return value


def parse_mod(text):
    """r:n as in --mod 1:11."""
    try:
        r, n = text.split(":")
        return parse_int(r), parse_int(n)
    except ValueError:
        raise UsageError(f"expected r:n, got {text!r}") from None


def thread_count(args):
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("LATFACTOR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"LATFACTOR_THREADS is not an integer: {env!r}") from None
    return 1


def _jsonable(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _parameters(trace):
    params = {}
    for _, stage_params, _ in trace:
        params.update(stage_params)
    return params


def build_report(N, command, factorization, trace, counters, started):
    flat = [p for p, e in factorization for _ in range(e)]
    return {
        "input": str(N),
        "command": command,
        "parameters": _jsonable(_parameters(trace)),
        "factors": _jsonable(flat),
        "factorization": _jsonable([list(pair) for pair in factorization]),
        "counters": counters.as_dict(),
        "trace": [
            {"stage": name, "parameters": _jsonable(p), "counters": c}
            for name, p, c in trace
        ],
        "wall_time_ms": round((time.perf_counter() - started) * 1000, 3),
    }


def cmd_factor(args):
    N = parse_int(args.N)
    if N < 2:
        raise UsageError("N must be at least 2")
    counters = Counters()
    started = time.perf_counter()
    if args.balanced:
        result = factor_balanced(N, parse_fraction(args.beta), parse_fraction(args.c), counters)
        command = "factor --balanced"
    elif args.mod:
        r, n = parse_mod(args.mod)
        if n < 1:
            raise UsageError("n must be positive")
        result = factor_with_modinfo(N, n, r, counters)
        command = "factor --mod"
    else:
        result = factor_with_modinfo(N, 1, 0, counters)
        command = "factor"
    return build_report(N, command, result.factors, result.method_trace, counters, started)


def cmd_power(args):
    N = parse_int(args.N)
    if N < 2:
        raise UsageError("N must be at least 2")
    if args.r < 1:
        raise UsageError("--r must be positive")
    counters = Counters()
    started = time.perf_counter()
    if args.all:
        primes = rpower_all(N, args.r, thread_count(args))
        trace = [("rpower_all", {"r": args.r}, {})]
        return build_report(N, "power --all", [(p, 1) for p in primes], trace, counters, started)
    if (args.c1 is None) != (args.c2 is None):
        raise UsageError("--c1 and --c2 go together")
    if args.c1 is not None:
        result = factor_rpower(N, args.r, parse_fraction(args.c1), parse_fraction(args.c2), counters)
    else:
        result = factor_rpower_scan(N, args.r, counters)
    return build_report(N, "power", result.factors, result.method_trace, counters, started)


def cmd_anbn(args):
    N = parse_int(args.N)
    a, b = parse_int(args.a), parse_int(args.b)
    if not (a > b >= 1) or math.gcd(a, b) != 1:
        raise UsageError("need a > b >= 1 with gcd(a, b) = 1")
    counters = Counters()
    started = time.perf_counter()
    result = factor_anbn(a, b, N, counters)
    return build_report(N, "anbn", result.factors, result.method_trace, counters, started)


def random_prime(rng, bits):
    while True:
        p = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_prime(p):
            return p


def bench_instance(rng, bits):
    """A balanced semiprime with exactly the requested bit length."""
    half = bits // 2
    while True:
        p = random_prime(rng, half)
        q = random_prime(rng, bits - half)
        if p != q and (p * q).bit_length() == bits:
            return min(p, q), max(p, q)


def bench_row(bits, p, q, timing):
    counters = Counters()
    started = time.perf_counter()
    result = factor_balanced(p * q, Fraction(1, 2), Fraction(1, 2), counters)
    elapsed = (time.perf_counter() - started) * 1000
    if result.primes() != [p, q]:
        raise LatFactorError(f"bench instance {p * q} factored wrongly")
    row = {"bits": bits, "N": p * q, "p": p, "q": q}
    search = [t for t in result.method_trace if t[0] == "main_search"]
    if search:
        _, params, search_counts = search[0]
        row.update(m=params["m"], phi_m=params["phi_m"], k=params["k"])
        row.update(search_counts)
    else:
        row.update({f: "" for f in BENCH_FIELDS[4:]})
    if timing:
        row["wall_time_ms"] = round(elapsed, 3)
    return row


def fit_power_law(rows):
    """Least squares of log2(baby_steps) on log2(N): baby_steps ~ C N^a."""
    pts = [(math.log2(r["N"]), math.log2(r["baby_steps"])) for r in rows if r["baby_steps"] != ""]
    if len({r["bits"] for r in rows}) < 2 or len(pts) < 2:
        return None
    n = len(pts)
    mx = sum(x for x, _ in pts) / n
    my = sum(y for _, y in pts) / n
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    sxy = sum((x - mx) * (y - my) for x, y in pts)
    a = sxy / sxx
    return {"exponent": round(a, 6), "log2_C": round(my - a * mx, 6), "points": n}


def run_bench(min_bits, max_bits, step, count, seed, timing=False):
    rng = random.Random(seed)
    rows = []
    for bits in range(min_bits, max_bits + 1, step):
        for _ in range(count):
            p, q = bench_instance(rng, bits)
            rows.append(bench_row(bits, p, q, timing))
    return rows, fit_power_law(rows)


def format_bench(rows, fit, fmt, timing):
    fields = BENCH_FIELDS + (["wall_time_ms"] if timing else [])
    if fmt == "json":
        body = {"rows": [{f: _jsonable(r[f]) for f in fields} for r in rows], "fit": fit}
        return json.dumps(body, indent=2, sort_keys=True) + "\n"
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(fields)
    for r in rows:
        writer.writerow([r[f] for f in fields])
    if fit is not None:
        out.write(f"# fit exponent={fit['exponent']} log2_C={fit['log2_C']} points={fit['points']}\n")
    return out.getvalue()


def cmd_bench(args):
    if args.min_bits < 8 or args.max_bits < args.min_bits or args.step < 1 or args.count < 1:
        raise UsageError("need 8 <= min-bits <= max-bits, step >= 1, count >= 1")
    rows, fit = run_bench(args.min_bits, args.max_bits, args.step, args.count, args.seed, args.timing)
    return format_bench(rows, fit, args.format, args.timing)


def build_parser():
    parser = argparse.ArgumentParser(prog="latfactor", description="Deterministic lattice-based factoring.")
    parser.add_argument("--threads", type=int, default=None, help="worker budget (default LATFACTOR_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", help="factor N")
    f.add_argument("N")
    f.add_argument("--balanced", action="store_true", help="N = p q with c N^beta < p <= N^beta")
    f.add_argument("--beta", default="1/2")
    f.add_argument("--c", default="1/2")
    f.add_argument("--mod", metavar="r:n", help="every prime factor is r mod n")
    f.set_defaults(handler=cmd_factor)

    p = sub.add_parser("power", help="N = p^r q, or all p with p^r | N")
    p.add_argument("N")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--all", action="store_true", help="list every prime p with p^r | N")
    p.add_argument("--c1")
    p.add_argument("--c2")
    p.set_defaults(handler=cmd_power)

    a = sub.add_parser("anbn", help="factor N = a^n +- b^n")
    a.add_argument("N")
    a.add_argument("--a", required=True)
    a.add_argument("--b", required=True)
    a.set_defaults(handler=cmd_anbn)

    b = sub.add_parser("bench", help="baby-step growth over seeded balanced semiprimes")
    b.add_argument("--min-bits", type=int, default=40)
    b.add_argument("--max-bits", type=int, default=64)
    b.add_argument("--step", type=int, default=4)
    b.add_argument("--count", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.add_argument("--timing", action="store_true", help="add wall_time_ms per row")
    b.set_defaults(handler=cmd_bench)

    for sp in (f, p, a, b):
        sp.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        out = args.handler(args)
    except UsageError as exc:
        print(f"latfactor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PromiseViolated, NotOfForm, NotSemiprime) as exc:
        print(f"latfactor: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PROMISE
    except (LatFactorError, ValueError) as exc:
        print(f"latfactor: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(out, str):
        sys.stdout.write(out)
    else:
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
