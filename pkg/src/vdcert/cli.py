"""Command line front end.

Each subcommand builds its certificates at the primary and the confirming
precision, merges the item lists (an item passes only if it passes at
both), prints a table and optionally writes JSON or CSV.  Exit status is
0 when every item passes, 1 when some certificate item fails and 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Callable

from . import expsum, zeta_bounds, zfr
from .config import (
    RunConfig,
    default_region_catalog,
    default_table2,
    load_region_catalog,
    load_run_config,
    load_table2,
    parse_log_t_grid,
)
from .errors import ConfigError, VdcertError
from .numerics import DirectedReal
from .report import FAIL, Certificate, CheckItem, check, ge, info, le, merge_precisions, within

SUITES = ("constants", "table2", "expsum-check", "zfr", "regions")
DIGITS = 20


# formatting ---------------------------------------------------------------------------


def format_lo(value: DirectedReal | None) -> str | None:
    return None if value is None else format(value.lo, f".{DIGITS}Dg")


def format_hi(value: DirectedReal | None) -> str | None:
    return None if value is None else format(value.hi, f".{DIGITS}Ug")


def format_mid(value: DirectedReal) -> str:
    return repr(float(value.mid))


def item_record(item: CheckItem) -> dict:
    return {
        "name": item.name,
        "paper_target": item.target.text(),
        "computed_lo": format_lo(item.value),
        "computed_hi": format_hi(item.value),
        "verdict": item.verdict,
    }


def render_table(suite: str, items: list) -> str:
    lines = [f"suite: {suite}"]
    width = max([len(item.name) for item in items] + [4])
    for item in items:
        if item.value is None:
            shown = "n/a"
        else:
            shown = f"[{format(item.value.lo, '.12Dg')}, {format(item.value.hi, '.12Ug')}]"
        line = f"{item.verdict:4}  {item.name:<{width}}  {item.target.text():<24}  {shown}"
        if item.note:
            line += f"  ({item.note})"
        lines.append(line.rstrip())
    failed = sum(1 for item in items if item.passed is False)
    lines.append(f"{len(items)} items, {failed} failed")
    return "\n".join(lines) + "\n"


def render_json(suite: str, config: RunConfig, items: list, extra: dict | None = None) -> str:
    payload = {"suite": suite, "config": config.as_dict(), "items": [item_record(i) for i in items]}
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def items_csv(items: list) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["name", "paper_target", "computed_lo", "computed_hi", "verdict"])
    for item in items:
        record = item_record(item)
        writer.writerow([record[k] for k in ("name", "paper_target", "computed_lo", "computed_hi", "verdict")])
    return buffer.getvalue()


# running at two precisions --------------------------------------------------------------


def _guarded_certificate(name: str, build: Callable[[int], Certificate], prec: int) -> list:
    try:
        return list(build(prec).items)
    except VdcertError as exc:
        return [CheckItem(f"{name}: evaluation", info(), None, False, f"{type(exc).__name__}: {exc}")]


def run_two_precisions(builders: list, config: RunConfig) -> list:
    """Run named certificate builders at both precisions and merge their items."""
    merged = []
    for name, build in builders:
        first = _guarded_certificate(name, build, config.precision)
        second = _guarded_certificate(name, build, config.confirm_precision)
        if [i.name for i in first] != [i.name for i in second]:
            first = [CheckItem(f"{name}: evaluation", info(), None, False, "item lists differ between precisions")]
            second = first
        merged.extend(merge_precisions(first, second))
    return merged


# suites -------------------------------------------------------------------------------------


def _constants_table(prec: int) -> Certificate:
    cert = Certificate("A_k, B_k table (eta3 = 4.7399, h = 3)")
    constants = expsum.kth_derivative_constants(20, expsum.UNIFORM_ETA3, expsum.UNIFORM_H, prec)
    for offset, (A, B) in enumerate(constants.levels):
        k = offset + 3
        cert.add(check(f"A_{k}(4.7399, 3)", info("value"), A))
        cert.add(check(f"B_{k}(4.7399)", info("value"), B))
    return cert


def constants_suite(config: RunConfig) -> list:
    poly_config = config.zfr
    return run_two_precisions([
        ("derivative-test table", _constants_table),
        ("uniform constants", lambda p: expsum.uniform_kth_constants(60, p, strict=False)),
        ("smoothing constants", lambda p: zfr.smoothing_certificate(poly_config, p, strict=False)),
    ], config)


def table2_suite(config: RunConfig) -> list:
    if config.table2_path:
        rows = load_table2(config.table2_path, config.phi)
    else:
        rows = default_table2(config.phi)
    builders = [(f"row k={row.k}", (lambda r: lambda p: zeta_bounds.gamma_certificate(r.k, r, p, strict=False))(row))
                for row in rows]
    builders += [
        ("k>=10 branch", lambda p: zeta_bounds.large_k_certificate(prec=p, strict=False)),
        ("small-t chain", lambda p: zeta_bounds.small_t_certificate(prec=p, strict=False)),
        ("convexity premises", lambda p: zeta_bounds.premise_certificate(prec=p, strict=False)),
    ]
    return run_two_precisions(builders, config)


def expsum_suite(config: RunConfig) -> list:
    instances = expsum.random_instances(config.samples, config.seed)
    items = []
    worst = None
    for instance in instances:
        oracle = expsum.brute_force_expsum_with_error(expsum.ZetaLogPhase(instance.t), instance.a, instance.N, config.oracle_cap)
        per_prec = []
        for prec in (config.precision, config.confirm_precision):
            bounds = expsum.instance_bounds(instance, prec)
            smallest = min(bounds.values(), key=lambda value: value.lo)
            margin = smallest - DirectedReal.exact(oracle.value, prec) - DirectedReal.exact(oracle.error, prec)
            per_prec.append(check(f"{instance.label()}: smallest bound - |S|", ge(0), margin))
        items.extend(merge_precisions(per_prec[:1], per_prec[1:]))
        margin = per_prec[0].value
        worst = margin if worst is None or margin.lo < worst.lo else worst
    if worst is not None:
        items.append(check("worst margin over all instances", ge(0), worst))
    return items


def zfr_suite(config: RunConfig, branch: str = "all") -> list:
    z = config.zfr
    builders = [
        ("shared constants", lambda p: _shared(z, p)),
        ("lemma constants", lambda p: zfr.lemma_certificate(z, p, strict=False)),
    ]
    if branch in ("large-t", "all"):
        builders.append(("large-t chain", lambda p: zfr.main_inequality_large_t(z, p, strict=False)))
    if branch in ("small-t", "all"):
        builders.append(("small-t chain", lambda p: zfr.main_inequality_small_t(z, p, strict=False)))
        builders.append(("below t0", lambda p: zfr.below_t0_certificate(z, p, strict=False)))
    return run_two_precisions(builders, config)


def _shared(z, prec: int) -> Certificate:
    cert = Certificate("shared constants")
    cert.items.extend(zfr.shared_constant_items(z, prec))
    cert.add(check("1/21.233", le(Fraction(z.M1)), 1 / DirectedReal.exact("21.233", prec)))
    return cert


KNOWN_CROSSINGS = {
    ("new", "ford"): ("169.8", "170.8", 100, 300),
    ("new", "vk"): ("530141", "534141", 10 ** 5, 10 ** 6),
    ("ford", "classical"): ("46.2", "46.3", 20, 100),
}


def regions_suite(config: RunConfig) -> tuple:
    """Crossover items plus a per-height table of widths."""
    regions = load_region_catalog(config.regions_path) if config.regions_path else default_region_catalog()
    by_name = {r.name: r for r in regions}
    grid = [(text, Fraction(text)) for text in config.log_t_grid]

    def crossing_items(prec: int) -> Certificate:
        cert = Certificate("crossovers")
        for (a, b), (lo, hi, u_lo, u_hi) in KNOWN_CROSSINGS.items():
            if a in by_name and b in by_name:
                roots = zfr.crossovers(by_name[a], by_name[b], u_lo, u_hi, prec)
                if len(roots) == 1:
                    cert.add(check(f"log t where {a} and {b} widths cross", within(lo, hi), roots[0]))
                else:
                    cert.add(CheckItem(f"log t where {a} and {b} widths cross", within(lo, hi), None, False,
                                       f"{len(roots)} crossings found"))
        for index, a in enumerate(regions):
            for b in regions[index + 1:]:
                if (a.name, b.name) in KNOWN_CROSSINGS or (b.name, a.name) in KNOWN_CROSSINGS:
                    continue
                start = max(Fraction(a.valid_from), Fraction(b.valid_from), Fraction(3))
                u_lo = max(Fraction(2), Fraction(float(DirectedReal.exact(start, prec).log().hi)))
                for root in zfr.crossovers(a, b, u_lo, 10 ** 7, prec):
                    cert.add(check(f"log t where {a.name} and {b.name} widths cross", info("computed"), root))
        for text, u in grid:
            best, widths = zfr.best_region(regions, u, prec)
            if best is not None:
                cert.add(check(f"widest region at log t = {text}: {best}", info("computed"), widths[best]))
            else:
                cert.add(CheckItem(f"widest region at log t = {text}: unresolved", info("computed"), None, None))
        return cert

    items = run_two_precisions([("crossovers", crossing_items)], config)
    rows = []
    for _, u in grid:
        best, widths = zfr.best_region(regions, u, config.precision)
        rows.append((u, widths, best))
    return items, regions, rows


def regions_csv(regions, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    names = [r.name for r in regions]
    header = ["log_t"] + [f"width_{n}" for n in names] + ["best"]
    header += [f"width_{n}_{side}" for n in names for side in ("lo", "hi")]
    writer.writerow(header)
    for u, widths, best in rows:
        row = [repr(float(u))]
        row += [format_mid(widths[n]) if n in widths else "" for n in names]
        row.append(best or "")
        for n in names:
            row += [format_lo(widths[n]), format_hi(widths[n])] if n in widths else ["", ""]
        writer.writerow(row)
    return buffer.getvalue()


# argument handling ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vdcert", description="Certified constants for explicit zeta bounds and zero-free regions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--precision", type=int, help="primary working precision in bits (default 256)")
    common.add_argument("--confirm-precision", type=int, help="confirming precision in bits (default 512)")
    common.add_argument("--seed", type=int, help="seed for randomized sweeps")
    common.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    common.add_argument("--csv", metavar="PATH", help="write a CSV table ('-' for stdout)")
    common.add_argument("--quiet", action="store_true", help="suppress the text table")
    sub = parser.add_subparsers(dest="suite", required=True)
    sub.add_parser("constants", parents=[common], help="derivative-test and smoothing constants")
    table2 = sub.add_parser("table2", parents=[common], help="gamma_k rows for k = 4..9, the k >= 10 branch and small-t checks")
    table2.add_argument("--table2", help="row file: k eta3 h0 h1 h2 h3 gamma [alpha beta] per line")
    sweep = sub.add_parser("expsum-check", parents=[common], help="oracle dominance on random instances")
    sweep.add_argument("--samples", type=int, help="number of random instances (default 500)")
    chain = sub.add_parser("zfr", parents=[common], help="zero-free region constant chain")
    chain.add_argument("--branch", choices=("large-t", "small-t", "all"), default="all")
    regions = sub.add_parser("regions", parents=[common], help="compare zero-free regions")
    regions.add_argument("--catalog", help="region catalog: name, formula_id, p1;p2;..., valid_from per line")
    regions.add_argument("--log-t-grid", help="comma-separated log t values for the width table")
    return parser


def resolve_config(args) -> RunConfig:
    config = load_run_config(args.config) if args.config else RunConfig()
    if args.precision is not None:
        config.precision = args.precision
    if args.confirm_precision is not None:
        config.confirm_precision = args.confirm_precision
    if args.seed is not None:
        config.seed = args.seed
    if getattr(args, "samples", None) is not None:
        config.samples = args.samples
    if getattr(args, "table2", None):
        config.table2_path = args.table2
    if getattr(args, "catalog", None):
        config.regions_path = args.catalog
    if getattr(args, "log_t_grid", None):
        config.log_t_grid = parse_log_t_grid(args.log_t_grid, "--log-t-grid")
    return config.validate()


def _write(path: str, text: str, stdout) -> None:
    if path == "-":
        stdout.write(text)
    else:
        with open(path, "w", newline="") as handle:
            handle.write(text)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = resolve_config(args)
        extra_csv = None
        if args.suite == "constants":
            items = constants_suite(config)
        elif args.suite == "table2":
            items = table2_suite(config)
        elif args.suite == "expsum-check":
            items = expsum_suite(config)
        elif args.suite == "zfr":
            items = zfr_suite(config, args.branch)
        else:
            items, regions, rows = regions_suite(config)
            extra_csv = regions_csv(regions, rows)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not args.quiet:
        stdout.write(render_table(args.suite, items))
    try:
        if args.json:
            _write(args.json, render_json(args.suite, config, items), stdout)
        if args.csv:
            _write(args.csv, extra_csv if extra_csv is not None else items_csv(items), stdout)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 1 if any(item.verdict == FAIL for item in items) else 0


def main() -> None:
    sys.exit(run())
