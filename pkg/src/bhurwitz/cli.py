"""Command-line interface: ``bhurwitz <command> ...`` or ``python -m bhurwitz``.

Settings are resolved as command-line flag, then environment variable
``BHZ_<NAME>`` (for example ``BHZ_BITS=512``), then the built-in default.
Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from . import suites
from .hurwitz import (GCHECK_FORM, G_FORM, SCHEMA_VERSION, extract_hurwitz, hurwitz_table_classical,
                      parse_weight, table_to_json_text, tau_jack)
from .partitions import Partition
from .ring import ConfigurationError, DomainError

DEFAULTS = {
    "weight": "1/(1-z)",
    "form": None,
    "tmax": 4,
    "gmax": "3/2",
    "bits": 256,
    "tol": "1e-30",
    "zero_tol": "1e-40",
    "t": "1",
    "threads": 1,
    "log_level": "WARNING",
}

CONVERTERS = {"tmax": int, "bits": int, "threads": int}


def setting(args, name):
    """Flag value, else BHZ_<NAME> from the environment, else the default."""
    value = getattr(args, name, None)
    if value is None:
        value = os.environ.get("BHZ_" + name.upper())
    if value is None:
        value = DEFAULTS[name]
    conv = CONVERTERS.get(name)
    if conv is not None and value is not None:
        try:
            value = conv(value)
        except ValueError:
            raise ConfigurationError("%s must be an integer, got %r" % (name, value)) from None
    return value


def parse_fraction(text, name="value") -> Fraction:
    """Accept '3/2', '1.5' or '1e-30' as an exact rational."""
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError("%s: cannot read %r as a rational number" % (name, text)) from None


def positive(value, name):
    if value <= 0:
        raise ConfigurationError("%s must be positive" % name)
    return value


def emit(data, out: Optional[str]):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# hurwitz
# ---------------------------------------------------------------------------


def _weight(args):
    return parse_weight(setting(args, "weight"), form=setting(args, "form"))


def cmd_hurwitz_compute(args) -> int:
    w = _weight(args)
    t_max = positive(setting(args, "tmax"), "tmax")
    g_max = parse_fraction(setting(args, "gmax"), "gmax")
    s_value = parse_fraction(args.s, "s") if args.s is not None else None
    table = extract_hurwitz(tau_jack(w, t_max, g_max, s_value=s_value), t_max, g_max, weight=w)
    text = table_to_json_text(table) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(table.to_csv(parse_fraction(args.frakb, "frakb")))
    return 0


def cmd_hurwitz_verify(args) -> int:
    t_max = positive(setting(args, "tmax"), "tmax")
    g_max = parse_fraction(setting(args, "gmax"), "gmax")
    # without --weight or BHZ_WEIGHT each suite runs its own standard weights
    chosen = args.weight if args.weight is not None else os.environ.get("BHZ_WEIGHT")
    if args.suite in ("cutjoin", "refined"):
        report = suites.suite_cutjoin(chosen or suites.DEFAULT_CUBIC, t_max, g_max)
    elif args.suite == "linear":
        report = suites.suite_linear(t_max)
    else:
        report = suites.suite_positivity([chosen] if chosen else None, t_max, g_max)
    emit(report, args.out)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# tr
# ---------------------------------------------------------------------------


def _table_from_json(path) -> dict:
    """frakb = 0 values {(g, mu): H} from a ``hurwitz compute`` JSON file."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if "entries" not in data:
        raise ConfigurationError("%s is not a Hurwitz table" % path)
    out = {}
    for e in data["entries"]:
        coeffs = e["poly_in_frakb"]
        value = parse_fraction(coeffs[0], "table entry") if coeffs else Fraction(0)
        out[(parse_fraction(e["g"], "g"), Partition(e["mu"]))] = value
    return out


def cmd_tr_run(args) -> int:
    from .toprec import build_curve, compare_with_hurwitz, comparison_cases

    w = _weight(args)
    if w.form != G_FORM:
        raise ConfigurationError("tr run expects a G-form weight")
    t = parse_fraction(setting(args, "t"), "t")
    bits = positive(setting(args, "bits"), "bits")
    tol = parse_fraction(setting(args, "tol"), "tol")
    zero_tol = parse_fraction(setting(args, "zero_tol"), "zero-tol")
    g_max, n_max, mu_max = args.gmax, args.nmax, args.mumax
    chi_max = 2 * g_max - 2 + n_max
    cases = [(g, mu) for g, mu in comparison_cases(g_max, chi_max, mu_max, mu_max * n_max)
             if len(mu) <= n_max]
    if args.compare:
        values = _table_from_json(args.compare)
    else:
        values = hurwitz_table_classical(w, mu_max, n_max, g_max).entries
    curve = build_curve(w, t, bits)
    report = compare_with_hurwitz(curve, values, cases, tol, zero_tol, g_max, n_max)
    report["weight"] = w.to_text()
    emit(report, args.out)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _run_named(name):
    return suites.run_suite(name)


def cmd_verify(args) -> int:
    names = list(args.suites)
    if names == ["all"]:
        names = ["jack", "ns", "walg", "dk", "cutjoin", "linear", "positivity", "tr"]
    unknown = [n for n in names if n not in suites.SUITES]
    if unknown:
        raise ConfigurationError("unknown suite %s (known: %s)" % (", ".join(unknown),
                                                                   ", ".join(suites.suite_names())))
    threads = positive(setting(args, "threads"), "threads")
    if threads > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_run_named, names))
    else:
        reports = [_run_named(n) for n in names]
    passed = all(r["passed"] for r in reports)
    emit({"schema_version": SCHEMA_VERSION, "reports": reports, "passed": passed}, args.out)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# jack, walg, paths
# ---------------------------------------------------------------------------


def _int_list(text, name):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigurationError("%s must be a comma-separated list of integers" % name) from None


def cmd_jack(args) -> int:
    from .jack import jack
    from .partitions import hook_norm

    lam = Partition(sorted(_int_list(args.partition, "partition"), reverse=True))
    f = jack(lam)
    data = {"schema_version": SCHEMA_VERSION, "partition": list(lam),
            "power_sum_coefficients_in_alpha": f.to_alpha_json(),
            "norm_in_s": str(hook_norm(lam))}
    if args.alpha is not None:
        a = parse_fraction(args.alpha, "alpha")
        data["alpha"] = str(a)
        data["power_sum_coefficients"] = {mu.to_text(): str(c)
                                          for mu, c in sorted(jack(lam, a).coeffs.items(), reverse=True)}
    emit(data, args.out)
    return 0


def cmd_walg_dump(args) -> int:
    from .walg import w_mode, w_mode_miura

    builder = w_mode_miura if args.route == "miura" else w_mode
    spec = builder(args.i, args.k, args.r, args.bound)
    words = [{"coefficient": str(c), "word": str(w)} for c, w in spec.terms]
    emit({"schema_version": SCHEMA_VERSION, "r": args.r, "i": args.i, "k": args.k, "bound": args.bound,
          "route": args.route, "terms": len(words), "words": words}, args.out)
    return 0


def cmd_paths(args) -> int:
    from .paths import enumerate_bridges

    start = tuple(_int_list(args.start, "start"))
    end = tuple(_int_list(args.end, "end"))
    if len(start) != 2 or len(end) != 2:
        raise ConfigurationError("start and end are 'x,y' pairs")
    bridges = enumerate_bridges(start, end, args.height)
    emit({"schema_version": SCHEMA_VERSION, "start": list(start), "end": list(end),
          "height_max": args.height, "count": len(bridges),
          "bridges": [list(p.increments) for p in bridges]}, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bhurwitz", description="b-deformed Hurwitz numbers, W-constraints "
                                "and topological recursion.")
    p.add_argument("--log-level", dest="log_level", default=None, help="logging level (BHZ_LOG_LEVEL)")
    sub = p.add_subparsers(dest="command", required=True)

    def weight_flags(sp):
        sp.add_argument("--weight", default=None, help="e.g. '(P1+z)(2+z)/(1-z)' (BHZ_WEIGHT)")
        sp.add_argument("--form", choices=[G_FORM, GCHECK_FORM], default=None,
                        help="force the G or Gcheck reading of the weight")

    h = sub.add_parser("hurwitz", help="tau functions and Hurwitz tables")
    hsub = h.add_subparsers(dest="action", required=True)
    hc = hsub.add_parser("compute", help="Hurwitz table as JSON")
    weight_flags(hc)
    hc.add_argument("--tmax", default=None)
    hc.add_argument("--gmax", default=None)
    hc.add_argument("--s", default=None, help="specialise s (frakb = 1/s - s)")
    hc.add_argument("--out", default=None)
    hc.add_argument("--csv", default=None, help="also write a CSV specialised at --frakb")
    hc.add_argument("--frakb", default="0")
    hc.set_defaults(func=cmd_hurwitz_compute)
    hv = hsub.add_parser("verify", help="residual, solver and positivity checks")
    weight_flags(hv)
    hv.add_argument("--suite", required=True, choices=["cutjoin", "refined", "positivity", "linear"])
    hv.add_argument("--tmax", default=None)
    hv.add_argument("--gmax", default=None)
    hv.add_argument("--out", default=None)
    hv.set_defaults(func=cmd_hurwitz_verify)

    t = sub.add_parser("tr", help="topological recursion at frakb = 0")
    tsub = t.add_subparsers(dest="action", required=True)
    tr = tsub.add_parser("run", help="expand correlators and compare with exact Hurwitz numbers")
    weight_flags(tr)
    tr.add_argument("--t", default=None)
    tr.add_argument("--gmax", type=int, default=1)
    tr.add_argument("--nmax", type=int, default=3)
    tr.add_argument("--mumax", type=int, default=3)
    tr.add_argument("--bits", default=None)
    tr.add_argument("--compare", default=None, help="table JSON from 'hurwitz compute' (frakb = 0 part)")
    tr.add_argument("--tol", default=None)
    tr.add_argument("--zero-tol", dest="zero_tol", default=None)
    tr.add_argument("--out", default=None)
    tr.set_defaults(func=cmd_tr_run)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suites", nargs="+", metavar="SUITE",
                   help="one or more of %s, or 'all'" % ", ".join(suites.suite_names()))
    v.add_argument("--threads", default=None)
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    j = sub.add_parser("jack", help="a Jack polynomial in the power-sum basis")
    j.add_argument("--partition", required=True, help="e.g. 2,1")
    j.add_argument("--alpha", default=None)
    j.add_argument("--out", default=None)
    j.set_defaults(func=cmd_jack)

    w = sub.add_parser("walg", help="W-algebra modes")
    wsub = w.add_subparsers(dest="action", required=True)
    wd = wsub.add_parser("dump", help="the mode words of W^i_k")
    wd.add_argument("--r", type=int, required=True)
    wd.add_argument("--i", type=int, required=True)
    wd.add_argument("--k", type=int, required=True)
    wd.add_argument("--bound", type=int, default=2, help="largest |mode index| per step")
    wd.add_argument("--route", choices=["paths", "miura"], default="paths")
    wd.add_argument("--out", default=None)
    wd.set_defaults(func=cmd_walg_dump)

    pa = sub.add_parser("paths", help="enumerate bridges")
    pa.add_argument("--start", required=True, help="x,y")
    pa.add_argument("--end", required=True, help="x,y")
    pa.add_argument("--height", type=int, required=True)
    pa.add_argument("--out", default=None)
    pa.set_defaults(func=cmd_paths)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=str(setting(args, "log_level")).upper(), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigurationError, DomainError) as exc:
        print("bhurwitz: error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
