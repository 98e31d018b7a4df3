"""Command-line interface: ``hk-orbits {classify,enumerate,table,verify}``.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional

from .coisotropic import HypothesisError, codim_two_locus, shift_to_klm
from .existence import (
    DEFAULT_K_RANGE,
    Outcome,
    VerificationError,
    component_bound,
    osy_for_normal_form,
    primitive_criterion,
    small_n_complete,
    verify_osy_equivalence,
)
from .lattice_core import (
    CurveClass,
    DivisorClass,
    LatticeError,
    bb_square_curve,
    divisor_of_curve,
    dual_curve,
)
from .multiples import (
    MBound,
    MBounds,
    MOutcome,
    asymptotic_family,
    exception_conditions,
    find_m,
    reproduce_table,
    table_mismatches,
)
from .orbits import (
    OrbitInvariants,
    Window,
    monodromy_is_maximal,
    normal_form_curve,
    orbit_invariants,
    representative_divisor,
    to_window,
)

SCHEMA_VERSION = "1.0"
KRANGE_ENV = "HK_ORBITS_KRANGE"

PRIMITIVE_DIVISOR = "primitive_divisor"
MULTIPLE_DIVISOR = "multiple_divisor"
NO_KNOWN_DIVISOR = "no_known_divisor"


class UsageError(LatticeError):
    pass


# serialization -------------------------------------------------------------

def rational_json(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def surd_json(x: Optional[MBound]) -> Optional[dict]:
    return None if x is None else {"a": x.a, "b": x.b, "c": x.c}


def bounds_json(b: Optional[MBounds]) -> Optional[dict]:
    if b is None:
        return None
    return {
        parity: {"m_min": surd_json(pb.m_min), "m_max": rational_json(pb.m_max)}
        for parity, pb in (("even", b.even), ("odd", b.odd))
    }


def _fmt_bound(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, MBound):
        exact = x.as_fraction()
        return str(exact) if exact is not None else f"({x.a}+√{x.b})/{x.c}≈{float(x):.6f}"
    return str(x)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


# classification ------------------------------------------------------------

@dataclass(frozen=True)
class ClassifyRequest:
    n: int
    divisor: Optional[tuple[int, int, int]] = None  # (p, lambda, mu)
    curve: Optional[tuple[int, int, int]] = None  # (p, a, b)
    invariants: Optional[tuple[int, int, int]] = None  # (square, div, residue)
    window: Window = Window.STANDARD
    k_range: int = DEFAULT_K_RANGE

    def __post_init__(self):
        given = [x for x in (self.divisor, self.curve, self.invariants) if x is not None]
        if len(given) != 1:
            raise UsageError("give exactly one of a divisor (--p --lambda --mu), "
                             "a curve (--p --a --b) or invariants (--square --div --residue)")
        if self.n < 2:
            raise UsageError(f"n must be >= 2, got {self.n}")
        if self.k_range < 0:
            raise UsageError("k-range must be non-negative")


def _resolve(req: ClassifyRequest) -> tuple[DivisorClass, CurveClass]:
    if req.divisor is not None:
        p, lam, mu = req.divisor
        h = DivisorClass(req.n, p, lam, mu)
        return h, dual_curve(h)
    if req.curve is not None:
        p, a, b = req.curve
        c = CurveClass(req.n, p, a, b)
        return divisor_of_curve(c), c
    square, t, residue = req.invariants
    if t < 1 or residue < 0:
        raise UsageError("need div >= 1 and residue >= 0")
    inv = OrbitInvariants(req.n, square, t, min(residue % t, -residue % t))
    h = representative_divisor(inv, req.window)
    return h, dual_curve(h)


def classify(req: ClassifyRequest) -> dict:
    """Full report for one class.  Raises LatticeError on invalid input and
    VerificationError if two independent checks disagree."""
    h, c = _resolve(req)
    inv = orbit_invariants(h)
    nf = normal_form_curve(c, Window.STANDARD)
    shown = to_window(nf, req.window)
    n = req.n
    verdict = primitive_criterion(nf)
    witness = osy_for_normal_form(nf, req.k_range)

    notes = [
        "orbit criterion: equal square and equal discriminant residue up to sign",
        f"OSY search over totals within K={req.k_range} periods of ±residue mod {2 * n - 2}; "
        "negative r_i allowed",
    ]
    if not monodromy_is_maximal(n):
        notes.append(f"n-1 = {n - 1} is not a prime power: the orbit criterion is applied without a maximality guarantee")

    if verdict.outcome is Outcome.RULED_DIVISOR:
        if witness is None:
            raise VerificationError(f"p >= g but the OSY search found nothing for {nf}")
        notes.append("ruled divisor from a primitive curve: p >= g in the standard window")
        kind, mult, coiso = PRIMITIVE_DIVISOR, None, None
    else:
        if witness is not None:
            raise VerificationError(f"p < g but the OSY search found a witness for {nf}")
        notes.append("no primitive ruled divisor: p < g in the standard window")
        if not exception_conditions(n, nf.p, nf.g, nf.eps):
            raise VerificationError(f"obstructed {nf} fails the exception conditions")
        mult = find_m(n, nf.p, nf.g, nf.eps)
        if mult.outcome is MOutcome.FOUND_M:
            kind = MULTIPLE_DIVISOR
            notes.append(f"ruled divisor from the non-primitive class {mult.m}C")
        else:
            kind = NO_KNOWN_DIVISOR
            notes.append("no multiple mC is feasible")
        if mult.bounds is not None:
            b = mult.bounds
            notes.append(
                f"m bounds: even {_fmt_bound(b.even.m_min)} <= m <= {_fmt_bound(b.even.m_max)}, "
                f"odd {_fmt_bound(b.odd.m_min)} <= m <= {_fmt_bound(b.odd.m_max)}"
            )
            if all(x is not None and 2 < x < 3 for x in b.all_bounds()):
                notes.append("all four m bounds lie strictly between 2 and 3")
        shifted = shift_to_klm(n, nf.p, nf.g, nf.eps)
        coiso = {
            "p": shifted.p,
            "g": shifted.g,
            "chi": shifted.report.chi,
            "codim": shifted.report.codim,
            "base_dim": shifted.report.base_dim,
            "applicable": shifted.report.applicable,
        }
        notes.append(f"coisotropic locus of codimension {shifted.report.codim} via the window [{2 * n - 2}, {3 * n - 3}]")

    return {
        "schema_version": SCHEMA_VERSION,
        "command": "classify",
        "orbit": {"n": n, "square": inv.square, "t": inv.t, "residue": inv.residue},
        "divisor": {"p": h.p, "lambda": h.lam, "mu": h.mu},
        "curve": {"p": c.p, "a": c.a, "b": c.b, "square": rational_json(bb_square_curve(c))},
        "normal_form": {
            "window": req.window.value, "p": shown.p, "mu": shown.mu,
            "g": nf.g, "eps": nf.eps, "square": rational_json(nf.square),
        },
        "verdict": {
            "kind": kind,
            "primitive": verdict.outcome.value,
            "p": verdict.p,
            "g": verdict.g,
            "eps": verdict.eps,
            "m": None if kind == PRIMITIVE_DIVISOR else mult.m,
            "bounds": None if kind == PRIMITIVE_DIVISOR else bounds_json(mult.bounds),
        },
        "osy": {
            "feasible": witness is not None,
            "k_range": req.k_range,
            "witness": None if witness is None else [list(pair) for pair in witness.pairs],
        },
        "coisotropic": coiso,
        "notes": notes,
    }


def iter_invariants(n: int, max_degree: int) -> Iterator[OrbitInvariants]:
    """Every divisor orbit with ``0 < 2d <= max_degree``, ordered by (2d, t, residue)."""
    if n < 2:
        raise UsageError("n must be >= 2")
    if max_degree < 2:
        raise UsageError("max-degree must be >= 2")
    m = 2 * n - 2
    found = []
    for t in (d for d in range(1, m + 1) if m % d == 0):
        for r in range(0, t // 2 + 1):
            if gcd(r, t) != 1:
                continue
            # 2d = t^2 (2p' - 2) - r^2 m with p' >= 1
            k = 0
            while True:
                two_d = t * t * 2 * k - r * r * m
                if two_d > max_degree:
                    break
                if two_d > 0:
                    found.append((two_d, t, r))
                k += 1
    for two_d, t, r in sorted(found):
        yield OrbitInvariants(n, two_d, t, r)


def enumerate_orbits(n: int, max_degree: int, k_range: int = DEFAULT_K_RANGE) -> dict:
    reports = [
        classify(ClassifyRequest(n, invariants=(inv.square, inv.t, inv.residue), k_range=k_range))
        for inv in iter_invariants(n, max_degree)
    ]
    bound = component_bound(n)
    obstructed = [r for r in reports if r["verdict"]["primitive"] == Outcome.OBSTRUCTED.value]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "enumerate",
        "n": n,
        "max_degree": max_degree,
        "component_bound": bound,
        "orbits": reports,
        "summary": {
            "total": len(reports),
            "obstructed": len(obstructed),
            "no_known_divisor": sum(r["verdict"]["kind"] == NO_KNOWN_DIVISOR for r in reports),
            "max_obstructed_degree": max((r["orbit"]["square"] for r in obstructed), default=None),
            "all_obstructed_below_bound": all(r["orbit"]["square"] < bound for r in obstructed),
        },
    }


# verification suites ------------------------------------------------------

def _suite_osy() -> str:
    rows = verify_osy_equivalence(12, 10)
    return f"{len(rows)} classes agree"


def _suite_small_n() -> str:
    total = sum(len(small_n_complete(n)) for n in range(2, 8))
    return f"{total} tuples with g > p all have non-positive square"


def _suite_table() -> str:
    diffs = table_mismatches()
    if diffs:
        raise VerificationError("; ".join(diffs))
    return "10 rows match"


def _suite_n14() -> str:
    v = find_m(14, 3, 5, 0)
    if v.outcome is not MOutcome.NO_M:
        raise VerificationError(f"n=14: found m = {v.m}")
    bad = [x for x in v.bounds.all_bounds() if x is None or not 2 < x < 3]
    if bad:
        raise VerificationError(f"n=14: bounds outside (2, 3): {bad}")
    return "no m; all bounds in (2, 3)"


def _suite_asymptotic() -> str:
    prev = None
    for n in (100, 1000, 10000):
        reports = asymptotic_family(n)
        for rep in reports:
            if not rep.is_exception:
                continue
            if rep.verdict.outcome is not MOutcome.NO_M:
                raise VerificationError(f"n={n}, eps={rep.eps}: m = {rep.verdict.m} is feasible")
            if not rep.bounds_in_open_2_3:
                raise VerificationError(
                    f"n={n}, eps={rep.eps}: bounds not all in (2, 3): "
                    + ", ".join(_fmt_bound(x) for x in rep.bounds.all_bounds())
                )
        lo = reports[0].bounds.even.m_min
        if prev is not None and not prev < lo:
            raise VerificationError(f"m_min^even does not increase at n={n}")
        prev = lo
    return "no m and bounds in (2, 3) for n = 100, 1000, 10000"


def _suite_coisotropic() -> str:
    count = 0
    for n in range(8, 41):
        for g in range(3, n // 2 + 1):
            codim_two_locus(n, 2 * g - 1)
            count += 1
    for mu in (8, 10):
        try:
            codim_two_locus(10, mu)
        except HypothesisError:
            continue
        raise VerificationError(f"h_S - {mu}r_10 was not rejected")
    return f"{count} codimension-two cases; even coefficients rejected"


SUITES = {
    "osy": _suite_osy,
    "small_n": _suite_small_n,
    "table": _suite_table,
    "n14": _suite_n14,
    "asymptotic": _suite_asymptotic,
    "coisotropic": _suite_coisotropic,
}


def run_suites(names: list[str]) -> list[dict]:
    out = []
    for name in names:
        try:
            detail = SUITES[name]()
            out.append({"suite": name, "passed": True, "detail": detail})
        except VerificationError as exc:
            out.append({"suite": name, "passed": False, "detail": str(exc)})
    return out


# argument handling ---------------------------------------------------------

def _default_k_range() -> int:
    raw = os.environ.get(KRANGE_ENV)
    if raw is None:
        return DEFAULT_K_RANGE
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{KRANGE_ENV}={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hk-orbits", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(sp):
        sp.add_argument("--json", action="store_true", help="emit one JSON document")
        sp.add_argument("--quiet", action="store_true", help="print the verdict only")

    c = sub.add_parser("classify", help="classify one class")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p", type=int)
    c.add_argument("--lambda", dest="lam", type=int)
    c.add_argument("--mu", type=int)
    c.add_argument("--a", type=int)
    c.add_argument("--b", type=int)
    c.add_argument("--square", type=int, help="divisor square 2d")
    c.add_argument("--div", type=int)
    c.add_argument("--residue", type=int)
    c.add_argument("--k-range", type=int)
    c.add_argument("--window", choices=[w.value for w in Window], default=Window.STANDARD.value)
    output_flags(c)

    e = sub.add_parser("enumerate", help="classify every orbit up to a degree")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--max-degree", type=int, required=True)
    e.add_argument("--k-range", type=int)
    output_flags(e)

    t = sub.add_parser("table", help="regenerate the exception table for 8 <= n <= 13")
    output_flags(t)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suites", nargs="*", metavar="SUITE", help=f"one of {', '.join([*SUITES, 'all'])}; default all")
    output_flags(v)
    return parser


def _request_from_args(args) -> ClassifyRequest:
    k = args.k_range if args.k_range is not None else _default_k_range()
    window = Window(args.window)
    forms = {
        "divisor": (args.p, args.lam, args.mu),
        "curve": (args.p, args.a, args.b),
        "invariants": (args.square, args.div, args.residue),
    }
    # --p is shared, so decide by the form-specific flags
    chosen = {
        "divisor": args.lam is not None or args.mu is not None,
        "curve": args.a is not None or args.b is not None,
        "invariants": args.square is not None or args.div is not None or args.residue is not None,
    }
    picked = [name for name, on in chosen.items() if on]
    if len(picked) != 1:
        raise UsageError("give exactly one of --lambda/--mu, --a/--b or --square/--div/--residue")
    name = picked[0]
    values = forms[name]
    if any(x is None for x in values):
        raise UsageError(f"incomplete {name} input: {values}")
    if name == "invariants" and args.p is not None:
        raise UsageError("--p is not used with --square/--div/--residue")
    return ClassifyRequest(args.n, **{name: values}, window=window, k_range=k)


def _print_classify(doc: dict, out) -> None:
    o, nf, v = doc["orbit"], doc["normal_form"], doc["verdict"]
    sq = nf["square"]
    lines = [
        f"orbit        2d={o['square']}  t={o['t']}  residue={o['residue']}  (n={o['n']})",
        f"divisor      {doc['divisor']['lambda']}h_S - {doc['divisor']['mu']}δ  (p={doc['divisor']['p']})",
        f"curve        {doc['curve']['a']}h_S - {doc['curve']['b']}r_n",
        f"normal form  h_S - {nf['mu']}r_n  p={nf['p']}  g={nf['g']}  eps={nf['eps']}  "
        f"square={sq['num']}/{sq['den']}  [{nf['window']}]",
        f"verdict      {v['kind']}" + (f"  m={v['m']}" if v["m"] is not None else ""),
        f"osy          {'feasible' if doc['osy']['feasible'] else 'infeasible'} (K={doc['osy']['k_range']})",
    ]
    if doc["coisotropic"] is not None:
        ci = doc["coisotropic"]
        lines.append(f"coisotropic  codim={ci['codim']}  chi={ci['chi']}  base_dim={ci['base_dim']}")
    lines += [f"note         {x}" for x in doc["notes"]]
    print("\n".join(lines), file=out)


def table_lines() -> list[str]:
    rows = ["Class | p | g | eps | m | n"]
    rows += [" | ".join(str(x) for x in r.cells()) for r in reproduce_table()]
    return rows


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        unknown = [x for x in args.suites if x not in SUITES and x != "all"]
        if unknown:
            parser.error(f"unknown suite(s): {', '.join(unknown)}")
    try:
        if args.command == "classify":
            doc = classify(_request_from_args(args))
            if args.json:
                print(dumps(doc), file=out)
            elif args.quiet:
                print(doc["verdict"]["kind"], file=out)
            else:
                _print_classify(doc, out)
            return 0

        if args.command == "enumerate":
            k = args.k_range if args.k_range is not None else _default_k_range()
            doc = enumerate_orbits(args.n, args.max_degree, k)
            s = doc["summary"]
            if args.json:
                print(dumps(doc), file=out)
            elif args.quiet:
                print(f"{s['obstructed']} obstructed of {s['total']}", file=out)
            else:
                print(f"{'2d':>8} {'t':>4} {'res':>4} {'p':>5} {'mu':>4}  verdict", file=out)
                for r in doc["orbits"]:
                    o, nf = r["orbit"], r["normal_form"]
                    m = r["verdict"]["m"]
                    print(f"{o['square']:>8} {o['t']:>4} {o['residue']:>4} {nf['p']:>5} {nf['mu']:>4}  "
                          f"{r['verdict']['kind']}" + (f" m={m}" if m is not None else ""), file=out)
                print(f"total {s['total']}, obstructed {s['obstructed']}, no known divisor "
                      f"{s['no_known_divisor']}, largest obstructed 2d {s['max_obstructed_degree']}, "
                      f"bound {doc['component_bound']}, all below bound: {s['all_obstructed_below_bound']}",
                      file=out)
            return 0

        if args.command == "table":
            diffs = table_mismatches()
            if args.json:
                rows = [dict(zip(("class", "p", "g", "eps", "m", "n"), r.cells())) for r in reproduce_table()]
                print(dumps({"schema_version": SCHEMA_VERSION, "command": "table",
                             "rows": rows, "mismatches": diffs}), file=out)
            elif not args.quiet:
                print("\n".join(table_lines()), file=out)
                for d in diffs:
                    print(f"mismatch: {d}", file=out)
            return 1 if diffs else 0

        names = list(SUITES) if not args.suites or "all" in args.suites else list(dict.fromkeys(args.suites))
        results = run_suites(names)
        if args.json:
            print(dumps({"schema_version": SCHEMA_VERSION, "command": "verify", "results": results}), file=out)
        else:
            for r in results:
                if not (args.quiet and r["passed"]):
                    print(f"{'PASS' if r['passed'] else 'FAIL'} {r['suite']}: {r['detail']}", file=out)
        return 0 if all(r["passed"] for r in results) else 1

    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except LatticeError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
