"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 integrality violation,
3 enumeration or limit that failed to stabilise, 4 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .closedforms import fa_rank2, fa_rank2_eleven, p2_rank2, p2_rank2_triple, p2_rank3, rank1_series
from .oracles import klyachko_series, yoshioka_series
from .qseries import LaurentSeries, SeriesError
from .rank2 import AmpleError, EnumerationError, generating_function_rank2
from .toric import Fan, FanError, is_ample, p2, parse_fan
from .wallcross import (
    WallContext,
    WallCrossingError,
    is_wall,
    joyce_wallcross,
    numeric_wallcross,
    p1p1_wallcross_closed,
)

EXIT_OK, EXIT_USAGE, EXIT_INTEGRALITY, EXIT_UNSTABLE, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- output -----------------------------------------------------------------

def _rows(s: LaurentSeries) -> list[tuple[Fraction, int | Fraction]]:
    return s.terms()


def render(s: LaurentSeries, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "scale": s.scale,
            "order": str(s.order),
            "terms": [{"exp": int(e) if e.denominator == 1 else str(e), "coeff": str(c)}
                      for e, c in _rows(s)],
        }
        if s.order.denominator == 1:
            doc["order"] = int(s.order)
        return json.dumps(doc)
    if fmt == "csv":
        out = io.StringIO()
        out.write("exp,coeff\n")
        for e, c in _rows(s):
            out.write(f"{e},{c}\n")
        return out.getvalue().rstrip("\n")
    lines = [f"# order {s.order}"]
    lines += [f"{e} {c}" for e, c in _rows(s)]
    return "\n".join(lines)


def parse_output(text: str, fmt: str) -> LaurentSeries:
    """Inverse of :func:`render`."""
    if fmt == "json":
        doc = json.loads(text)
        terms = [(Fraction(t["exp"]), Fraction(t["coeff"])) for t in doc["terms"]]
        return LaurentSeries.from_terms(terms, Fraction(doc["order"]))
    if fmt == "plain":
        lines = text.strip().splitlines()
        order = Fraction(lines[0].split()[-1])
        terms = [(Fraction(a), Fraction(b)) for a, b in (ln.split() for ln in lines[1:])]
        return LaurentSeries.from_terms(terms, order)
    raise ValueError(f"cannot parse format {fmt!r}")


# -- argument helpers -------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"expected a list of integers, got {text!r}") from exc


def _hirzebruch_a(fan: Fan) -> int | None:
    if fan.n == 4 and fan.rays[3] == (0, -1) and fan.rays[2][0] == -1:
        return fan.rays[2][1]
    return None


def _resolve_H(fan: Fan, args):
    if args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            raise UsageError("--alpha and --beta go together")
        raw = [args.alpha, args.beta] + [0] * (fan.n - 2)
        H = fan.divisor(raw)
    elif args.H is not None:
        H = fan.from_canonical(_int_list(args.H))
    elif fan.n == 3:
        H = fan.D(2)
    else:
        raise UsageError("this fan needs a polarisation: pass --H or --alpha/--beta")
    if not is_ample(fan, H):
        raise AmpleError(f"H = {H.canonical} is not ample")
    return H


def _resolve_c1(fan: Fan, args):
    coords = _int_list(args.c1) if args.c1 is not None else [0] * (fan.n - 2)
    if len(coords) != fan.n - 2:
        raise UsageError(f"--c1 needs {fan.n - 2} integers (coefficients of D3..D{fan.n})")
    return fan.from_canonical(coords)


# -- commands ---------------------------------------------------------------

def cmd_compute(args) -> LaurentSeries:
    fan = parse_fan(args.fan)
    if args.order < 0:
        raise UsageError("--order must be nonnegative")
    if args.rank == 1:
        return rank1_series(fan, args.order)
    c1 = _resolve_c1(fan, args)
    if args.rank == 3:
        if fan.n != 3:
            raise UsageError("rank 3 is only available on P2")
        return p2_rank3(c1.canonical[0], args.order, jobs=args.jobs)
    H = _resolve_H(fan, args)
    if args.method == "closed":
        if fan.n == 3:
            f = c1.canonical[0]
            if f not in (0, 1):
                raise UsageError("the P2 closed form covers c1 = 0 and c1 = 1")
            return p2_rank2(f, args.order)
        a = _hirzebruch_a(fan)
        if a is None:
            raise UsageError("closed forms exist for P2 and Hirzebruch surfaces only")
        f3, f4 = c1.canonical
        h3, h4 = H.canonical
        alpha, beta = h3 + a * h4, h4  # D1 = D3, D2 = D4 - a D3
        return fa_rank2(a, alpha, beta, f3, f4, args.order)
    return generating_function_rank2(fan, H, c1, args.order, jobs=args.jobs)


def _wall_context(args) -> WallContext:
    fan = parse_fan(args.fan)
    a = _hirzebruch_a(fan)
    if a is None:
        raise UsageError("wall-crossing needs a Hirzebruch surface, e.g. --fan Fa:0")
    coords = _int_list(args.c1) if args.c1 is not None else [0, 0]
    if len(coords) != 2:
        raise UsageError("--c1 needs two integers f3,f4")
    try:
        lam = Fraction(args.lambda0)
    except ValueError as exc:
        raise UsageError(f"bad --lambda0 {args.lambda0!r}") from exc
    return WallContext(a, lam, coords[0], coords[1], args.order)


def cmd_wallcross(args) -> LaurentSeries:
    ctx = _wall_context(args)
    if args.route == "numeric":
        return numeric_wallcross(ctx)
    if args.route == "closed":
        return p1p1_wallcross_closed(ctx)
    return joyce_wallcross(ctx.a, ctx.lambda0, ctx.f3, ctx.f4, ctx.order)


def _compare(name_a: str, a: LaurentSeries, name_b: str, b: LaurentSeries, out) -> bool:
    ok = a == b
    top = min(a.order, b.order)
    diffs = (a - b).truncate(top)
    print(f"{name_a} vs {name_b}: {'PASS' if ok else 'FAIL'} through q^{top}", file=out)
    exps = sorted({e for e, _ in a.terms() if e <= top} | {e for e, _ in b.terms() if e <= top})
    for e in exps:
        print(f"  q^{e}: {a.coefficient(e)} vs {b.coefficient(e)}, diff {diffs.coefficient(e)}", file=out)
    return ok


def _suite_hurwitz(args, out) -> bool:
    n = args.order
    p = p2_rank2(1, n)
    ok = _compare("class-number series", klyachko_series(n), "p2_rank2(f=1)", p, out)
    return _compare("theta-quotient series", yoshioka_series(n), "p2_rank2(f=1)", p, out) and ok


def _suite_triple(args, out) -> bool:
    ok = True
    for f in (0, 1):
        ok &= _compare(f"triple(f={f})", p2_rank2_triple(f, args.order), f"double(f={f})",
                       p2_rank2(f, args.order), out)
    return ok


def _suite_engine(args, out) -> bool:
    fan = p2()
    ok = True
    for f in (0, 1):
        g = generating_function_rank2(fan, fan.D(2), fan.from_canonical([f]), args.order, jobs=args.jobs)
        ok &= _compare(f"engine(f={f})", g, f"p2_rank2(f={f})", p2_rank2(f, args.order), out)
    return ok


def _suite_eleven(args, out) -> bool:
    ok = True
    for a, al, be in ((0, 1, 1), (1, 2, 1), (2, 5, 2)):
        for f3 in (0, 1):
            for f4 in (0, 1):
                ok &= _compare(f"eleven{(a, al, be, f3, f4)}", fa_rank2_eleven(a, al, be, f3, f4, args.order),
                               "six-sum", fa_rank2(a, al, be, f3, f4, args.order), out)
    return ok


def _suite_wallcross(args, out) -> bool:
    ok = True
    for lam in (Fraction(1, 2), Fraction(1), Fraction(2)):
        for f3 in (0, 1):
            for f4 in (0, 1):
                ctx = WallContext(0, lam, f3, f4, args.order)
                n = numeric_wallcross(ctx)
                tag = f"(lambda0={lam}, c1=({f3},{f4}), wall={is_wall(ctx)})"
                ok &= _compare(f"numeric{tag}", n, "eight-sum", p1p1_wallcross_closed(ctx), out)
                ok &= _compare(f"numeric{tag}", n, "single-sum", joyce_wallcross(0, lam, f3, f4, args.order), out)
    return ok


SUITES: dict[str, Callable] = {
    "hurwitz": _suite_hurwitz,
    "triple": _suite_triple,
    "engine": _suite_engine,
    "eleven": _suite_eleven,
    "wallcross": _suite_wallcross,
}


def cmd_crosscheck(args, out) -> int:
    ok = SUITES[args.suite](args, out)
    print("PASS" if ok else "FAIL", file=out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_fan_info(args, out) -> None:
    fan = parse_fan(args.fan)
    info = {
        "rays": [list(v) for v in fan.rays],
        "self_intersections": [-x for x in fan.a],
        "euler_characteristic": fan.euler_characteristic(),
        "pairing_matrix": fan.pairing_matrix(),
    }
    if args.format == "json":
        print(json.dumps(info), file=out)
        return
    for key, val in info.items():
        print(f"{key}: {val}", file=out)


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toricsheaves", description="Euler characteristics of moduli of sheaves on toric surfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, order_default=10):
        sp.add_argument("--fan", default="P2", help="P2, P1xP1, Fa:<a> or a JSON file with rays")
        sp.add_argument("--order", type=int, default=order_default)
        sp.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads for shell enumeration")

    c = sub.add_parser("compute", help="generating function of one moduli problem")
    common(c)
    c.add_argument("--rank", type=int, choices=(1, 2, 3), default=2)
    c.add_argument("--c1", help="coefficients of D3..DN, e.g. '1' on P2 or '1,0' on Fa")
    c.add_argument("--H", help="ample class as coefficients of D3..DN")
    c.add_argument("--alpha", type=int, help="H = alpha D1 + beta D2")
    c.add_argument("--beta", type=int)
    c.add_argument("--method", choices=("engine", "closed"), default="engine")

    w = sub.add_parser("wallcross", help="wall-crossing difference at slope lambda0")
    common(w)
    w.set_defaults(fan="Fa:0")
    w.add_argument("--lambda0", required=True, help="rational slope alpha0/beta0, e.g. 1/2")
    w.add_argument("--c1", help="f3,f4")
    w.add_argument("--route", choices=("numeric", "closed", "single"), default="numeric",
                   help="two-sided numeric limit, eight-sum closed form (a = 0 only) or single sum over m")

    x = sub.add_parser("crosscheck", help="compare independent evaluators")
    common(x)
    x.add_argument("--suite", choices=sorted(SUITES), required=True)

    f = sub.add_parser("fan-info", help="describe a fan")
    f.add_argument("--fan", default="P2")
    f.add_argument("--format", choices=("plain", "json"), default="plain")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fan-info":
            cmd_fan_info(args, out)
            return EXIT_OK
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        if args.command == "crosscheck":
            return cmd_crosscheck(args, out)
        series = cmd_compute(args) if args.command == "compute" else cmd_wallcross(args)
        print(render(series, args.format), file=out)
        return EXIT_OK
    except (UsageError, FanError, AmpleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTEGRALITY
    except (EnumerationError, WallCrossingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
