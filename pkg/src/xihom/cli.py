"""``xihom`` command line: JSON reports on stdout, optional tables on stderr.

Exit codes: 0 success, 2 invalid input, 3 a verdict-level failure (routes that
should agree disagree, an audit finds violations, an acceptance check fails).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import verify
from .algebra import PresentationError
from .cohomology import (
    DEFAULT_STABILITY,
    NoGpWithinWindow,
    NotStabilized,
    OutsideWindow,
    build_complete_resolution,
    complete_ext,
    complete_ext_colimit_oracle,
    complete_ext_stable_oracle,
    gpd,
    gprojective_test,
    injective_side_supported,
    xi_ext,
    xi_ext_injective_side,
    xi_ext_two_resolutions,
)
from .instance import SCHEMA_VERSION, Instance, InstanceError, load_instance
from .modcat import ModuleError, top
from .propclass import audit_axioms
from .resolution import DEFAULT_WINDOW, UnsupportedInstance, build_resolution, is_self_injective, xi_pd

EXIT_OK, EXIT_INVALID, EXIT_VERDICT = 0, 2, 3


class CommandFailure(Exception):
    def __init__(self, report: dict):
        super().__init__("verdict failure")
        self.report = report


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a single integer."""
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _range_arg(text: str) -> list[int]:
    try:
        return parse_range(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None


# --- commands ---------------------------------------------------------------------------


def cmd_basis(inst: Instance, args) -> dict:
    alg = inst.algebra
    return {
        "dim": alg.dim,
        "basis": [b.label() for b in alg.basis],
        "vertex_idempotents": alg.vertex_idempotents,
        "self_injective": is_self_injective(alg),
        "modules": {n: m.dimension_vector() for n, m in inst.modules.items()},
    }


def cmd_resolve(inst: Instance, args) -> dict:
    m = inst.module(args.module)
    res = build_resolution(inst.proper_class, m, args.length)
    rows = []
    for i in range(res.length):
        p = res.term(i)
        verts, _ = top(p)
        tops = [verts.count(v) for v in range(inst.algebra.vertices)]
        rows.append({"degree": i, "term_dimvec": p.dimension_vector(), "term_top": tops,
                     "syzygy_dimvec": res.syzygy(i + 1).dimension_vector()})
    return {"module": args.module, "length": res.length, "steps": rows}


def cmd_pd(inst: Instance, args) -> dict:
    pd = xi_pd(inst.proper_class, inst.module(args.module), args.window)
    return {"module": args.module, "pd": pd if pd is not None else "ExceedsWindow"}


def _degrees(args, default) -> list[int]:
    if getattr(args, "deg", None) is not None:
        return [args.deg]
    if getattr(args, "range", None) is not None:
        return args.range
    return default


def cmd_ext(inst: Instance, args) -> dict:
    xi = inst.proper_class
    m, n = inst.module(args.m), inst.module(args.n)
    inj = injective_side_supported(xi)
    rows, agree = [], True
    for d in _degrees(args, [1]):
        if d < 0:
            raise InstanceError("--deg", "relative cohomology degrees must be >= 0")
        row = {"degree": d, "projective": xi_ext(xi, m, n, d).dimension}
        if d >= 1:
            row["two_resolutions"] = xi_ext_two_resolutions(xi, m, n, d).dimension
        if inj:
            row["injective"] = xi_ext_injective_side(m, n, d, xi).dimension
        vals = {v for k, v in row.items() if k != "degree"}
        row["agree"] = len(vals) == 1
        agree &= row["agree"]
        rows.append(row)
    out = {"m": args.m, "n": args.n, "groups": rows, "routes_agree": agree}
    if not agree:
        raise CommandFailure(out)
    return out


def cmd_complete_ext(inst: Instance, args) -> dict:
    xi = inst.proper_class
    m, n = inst.module(args.m), inst.module(args.n)
    try:
        cr = build_complete_resolution(xi, m, args.window)
    except NoGpWithinWindow as exc:
        raise CommandFailure({"m": args.m, "n": args.n, "error": "NoGpWithinWindow",
                              "reason": str(exc)}) from None
    stable = xi.is_all and is_self_injective(inst.algebra)
    rows, agree = [], True
    for d in _degrees(args, list(range(-6, 7))):
        try:
            g = complete_ext(xi, m, n, d, args.window)
        except OutsideWindow as exc:
            rows.append({"degree": d, "complete": None, "reason": str(exc)})
            continue
        row = {"degree": d, "complete": g.dimension}
        if stable:
            row["stable_oracle"] = complete_ext_stable_oracle(m, n, d).dimension
        col = complete_ext_colimit_oracle(xi, m, n, d, args.window, args.stability)
        row["colimit_oracle"] = "NotStabilized" if isinstance(col, NotStabilized) else col.dimension
        ok = row.get("stable_oracle", g.dimension) == g.dimension
        ok &= not isinstance(row["colimit_oracle"], int) or row["colimit_oracle"] == g.dimension
        row["agree"] = ok
        agree &= ok
        rows.append(row)
    out = {"m": args.m, "n": args.n, "regime": cr.regime, "iso_from": cr.iso_from,
           "extension_rule": cr.extension_rule, "groups": rows, "oracles_agree": agree}
    if not agree:
        raise CommandFailure(out)
    return out


def cmd_gpd(inst: Instance, args) -> dict:
    xi = inst.proper_class
    m = inst.module(args.module)
    return {"module": args.module, "gpd": gpd(xi, m, args.window).to_dict(),
            "gprojective": gprojective_test(xi, m, args.window).to_dict()}


def cmd_audit(inst: Instance, args) -> dict:
    rep = audit_axioms(inst.proper_class, args.trials, args.seed, list(inst.modules.values()),
                       inst.class_label)
    out = rep.to_dict()
    if rep.total_violations:
        raise CommandFailure(out)
    return out


def cmd_verify(inst: Instance | None, args) -> dict:
    from .instance import catalog_names, load_catalog

    instances = [load_catalog(n) for n in catalog_names()] if args.catalog else [inst]
    if args.catalog:
        results = verify.run_all(instances, args.window, args.stability, args.seed)
    else:
        results = [verify.criterion_two_resolutions(instances),
                   verify.criterion_injective_side(instances),
                   verify.criterion_pd_vanishing(instances, args.window, named_cases=False),
                   verify.criterion_complete_resolutions(instances, args.window)]
    out = {"criteria": [r.to_dict() for r in results],
           "passed": all(r.passed for r in results)}
    for r in results:
        print(r.line(), file=sys.stderr)
    if not out["passed"]:
        raise CommandFailure(out)
    return out


COMMANDS = {
    "basis": cmd_basis,
    "resolve": cmd_resolve,
    "pd": cmd_pd,
    "ext": cmd_ext,
    "complete-ext": cmd_complete_ext,
    "gpd": cmd_gpd,
    "audit": cmd_audit,
    "verify": cmd_verify,
}


# --- parser and output ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="xihom", description="Relative and complete cohomology "
                                 "of modules over quiver algebras over F_p.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table", "both"), default="json")
    common.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    common.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        if name != "verify":
            p.add_argument("file", help="instance JSON file")
        return p

    add("basis", "algebra basis and module dimension vectors")
    p = add("resolve", "relative projective resolution summary")
    p.add_argument("module")
    p.add_argument("--length", type=int, default=6)
    for name, help_ in (("pd", "relative projective dimension"), ("gpd", "Gorenstein projective dimension")):
        p = add(name, help_)
        p.add_argument("module")
        p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p = add("ext", "relative cohomology by every available route")
    p.add_argument("m")
    p.add_argument("n")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--deg", type=int)
    g.add_argument("--range", type=_range_arg, help="a..b; write --range=-3..3 for negative ends")
    p = add("complete-ext", "complete cohomology with oracle cross-checks")
    p.add_argument("m")
    p.add_argument("n")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--deg", type=int)
    g.add_argument("--range", type=_range_arg, help="a..b; write --range=-3..3 for negative ends")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--stability", type=int, default=DEFAULT_STABILITY)
    p = add("audit", "randomized proper-class axiom audit")
    p.add_argument("--trials", type=int, default=200)
    p = add("verify", "acceptance suite on a file or on the bundled catalog")
    p.add_argument("file", nargs="?")
    p.add_argument("--catalog", action="store_true")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--stability", type=int, default=DEFAULT_STABILITY)
    return ap


def _flags(args) -> dict:
    skip = {"command", "file", "format", "timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _table(report: dict) -> str:
    lines = [f"xihom {report['command']}  instance={report.get('instance')}"]
    res = report.get("result", {})
    for key, val in res.items():
        if isinstance(val, list) and val and isinstance(val[0], dict):
            cols = list(dict.fromkeys(c for row in val for c in row))
            widths = [max(len(str(c)), *(len(str(r.get(c, ""))) for r in val)) for c in cols]
            lines.append(f"{key}:")
            lines.append(("  " + "  ".join(str(c).ljust(w) for c, w in zip(cols, widths))).rstrip())
            for r in val:
                lines.append(("  " + "  ".join(str(r.get(c, "")).ljust(w) for c, w in zip(cols, widths))).rstrip())
        else:
            lines.append(f"{key}: {json.dumps(val, sort_keys=True) if isinstance(val, dict) else val}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def emit(report: dict, fmt: str) -> None:
    if fmt in ("json", "both"):
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if fmt in ("table", "both"):
        sys.stderr.write(_table(report) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = {"schema_version": SCHEMA_VERSION, "command": args.command, "flags": _flags(args),
              "seed": args.seed}
    start = time.perf_counter()
    code = EXIT_OK
    try:
        inst = None
        if args.command == "verify" and not args.catalog and args.file is None:
            raise InstanceError("verify", "give an instance file or --catalog")
        if args.file is not None:
            inst = load_instance(args.file)
            report["instance"] = inst.name
            report["proper_class"] = inst.class_label
        else:
            report["instance"] = "catalog"
        report["result"] = COMMANDS[args.command](inst, args)
        report["status"] = "ok"
    except CommandFailure as exc:
        report["result"] = exc.report
        report["status"] = "verdict_failure"
        code = EXIT_VERDICT
    except (InstanceError, PresentationError, ModuleError, UnsupportedInstance) as exc:
        report["status"] = "invalid"
        report["error"] = str(exc)
        print(f"xihom: {exc}", file=sys.stderr)
        code = EXIT_INVALID
    if args.timing:
        report["wall_clock_seconds"] = round(time.perf_counter() - start, 3)
    emit(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
