"""Command line: generate, validate, solve, compare with the exact oracle, draw.

Exit status: 0 success, 1 the input is not a valid drawing, 2 a guarantee,
claim or certification check failed (or the oracle hit its node limit),
3 bad arguments or unreadable files.
"""
from __future__ import annotations

import argparse
import json
import statistics
import sys
from pathlib import Path

import numpy as np

from .cylinder import CylindricalDrawing, validate_cylindrical
from .errors import DegeneracyError, GenerationFailure, GuaranteeViolation, LimitExceeded
from .gen import GenKind, GenSpec, generate
from .grower import grow_plane_subgraph
from .matching import MatchingResult, solve
from .model import Drawing, validate_simple
from .oracle import DEFAULT_LIMIT, max_disjoint_bruteforce, max_disjoint_cylindrical
from .svg import cylinder_svg, drawing_svg

OK, INVALID, VIOLATION, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_instance(path: str) -> Drawing | CylindricalDrawing:
    try:
        data = json.loads(Path(path).read_text())
        return CylindricalDrawing.from_json(data) if "delta" in data else Drawing.from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _root(value: str):
    if value == "all":
        return value
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a vertex index or 'all'") from None


def _seed(value: str) -> int:
    s = int(value, 0)
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return s


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_gen(a) -> int:
    kind = GenKind(a.kind)
    inst = generate(GenSpec(kind, a.n, a.seed))
    _emit(inst.dumps(), a.output)
    return OK


def cmd_validate(a) -> int:
    inst = load_instance(a.file)
    report = validate_cylindrical(inst) if isinstance(inst, CylindricalDrawing) else validate_simple(inst)
    print(report)
    return OK if report.ok else INVALID


def _require_simple(d, check: bool):
    if not isinstance(d, Drawing):
        raise UsageError("this command needs a drawing, not a cylindrical drawing")
    if check:
        report = validate_simple(d)
        if not report.ok:
            print(report)
            return False
    return True


def cmd_solve(a) -> int:
    d = load_instance(a.file)
    if not _require_simple(d, not a.no_validate):
        return INVALID
    if a.root != "all" and not 0 <= a.root < d.n:
        raise UsageError(f"root {a.root} is not a vertex")
    res = solve(d, a.root, recurse=a.recurse)
    print(res.size)
    print("edges", " ".join(f"{u}-{v}" for u, v in res.to_json()["edges"]))
    print("stats", json.dumps(res.stats, sort_keys=True))
    if a.output:
        _emit(res.dumps(), a.output)
    return OK


def _oracle(inst, limit):
    if isinstance(inst, CylindricalDrawing):
        return max_disjoint_cylindrical(inst, limit)
    return max_disjoint_bruteforce(inst, limit)


def cmd_oracle(a) -> int:
    inst = load_instance(a.file)
    try:
        r = _oracle(inst, a.limit)
    except LimitExceeded as exc:
        r = exc.result
    keys = [e.key for e in inst.edges] if isinstance(inst, Drawing) else [(e.i, e.j) for e in inst.cyl_edges]
    print(r.optimum)
    print("edges", " ".join(f"{keys[e][0]}-{keys[e][1]}" for e in r.witness))
    print(f"explored {r.explored} exact {str(r.exact).lower()}")
    if a.output:
        _emit(r.dumps(keys), a.output)
    return OK if r.exact else VIOLATION


def cmd_compare(a) -> int:
    d = load_instance(a.file)
    if not _require_simple(d, True):
        return INVALID
    res = solve(d, a.root)
    try:
        r = max_disjoint_bruteforce(d, a.limit)
    except LimitExceeded as exc:
        r = exc.result
    ratio = res.size / r.optimum
    print(f"solve {res.size} oracle {r.optimum} ratio {ratio:.4f}" + ("" if r.exact else " (oracle inexact)"))
    if res.size > r.optimum and r.exact:
        raise GuaranteeViolation("pipeline beat the exact optimum; certification is broken")
    return OK if r.exact else VIOLATION


def cmd_estimate_c(a) -> int:
    kinds = {"both": [GenKind.CYL_SELFHOSTED, GenKind.CYL_RANDOM],
             "selfhosted": [GenKind.CYL_SELFHOSTED], "random": [GenKind.CYL_RANDOM]}[a.kinds]
    inexact = False
    print("delta trials min mean max")
    for delta in a.delta:
        seeds = np.random.SeedSequence([a.seed, delta]).generate_state(a.trials, dtype=np.uint64)
        sizes = []
        for t, s in enumerate(seeds):
            c = generate(GenSpec(kinds[t % len(kinds)], delta, int(s)))
            try:
                sizes.append(max_disjoint_cylindrical(c, a.limit).optimum)
            except LimitExceeded as exc:
                inexact = True
                sizes.append(exc.result.optimum)
        print(f"{delta} {len(sizes)} {min(sizes)} {statistics.fmean(sizes):.3f} {max(sizes)}")
    return VIOLATION if inexact else OK


def cmd_svg(a) -> int:
    inst = load_instance(a.file)
    if isinstance(inst, CylindricalDrawing):
        highlight = []
        if a.matching:
            pairs = {tuple(p) for p in json.loads(Path(a.matching).read_text())["edges"]}
            highlight = [k for k, e in enumerate(inst.cyl_edges) if (e.i, e.j) in pairs]
        _emit(cylinder_svg(inst, highlight), a.output)
        return OK
    highlight, plane = [], []
    if a.matching:
        try:
            res = MatchingResult.from_json(json.loads(Path(a.matching).read_text()), inst)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read {a.matching}: {exc}") from exc
        highlight = res.edges
    if a.plane_root is not None:
        plane = grow_plane_subgraph(inst, a.plane_root).edge_set
    _emit(drawing_svg(inst, highlight, plane), a.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="disjoint-matching", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--kind", required=True, choices=[k.value for k in GenKind])
    g.add_argument("--n", type=int, required=True, help="vertices, or cylinder width for cyl-* kinds")
    g.add_argument("--seed", type=_seed, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("validate", help="check a drawing or cylindrical drawing")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", help="find pairwise disjoint edges")
    s.add_argument("file")
    s.add_argument("--root", type=_root, default=0)
    s.add_argument("--recurse", action="store_true", help="experimental: also recurse into the cylinder")
    s.add_argument("--no-validate", action="store_true", help="skip the simplicity check of the input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="exact maximum (small instances)")
    o.add_argument("file")
    o.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("compare", help="solve and oracle side by side")
    c.add_argument("file")
    c.add_argument("--root", type=_root, default=0)
    c.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    c.set_defaults(func=cmd_compare)

    e = sub.add_parser("estimate-c", help="exact optima over random cylindrical drawings")
    e.add_argument("--delta", type=int, nargs="+", required=True)
    e.add_argument("--trials", type=int, default=20)
    e.add_argument("--seed", type=_seed, default=0)
    e.add_argument("--kinds", choices=["both", "selfhosted", "random"], default="both")
    e.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    e.set_defaults(func=cmd_estimate_c)

    w = sub.add_parser("svg", help="write an SVG snapshot")
    w.add_argument("file")
    w.add_argument("-o", "--output", required=True)
    w.add_argument("--matching", help="result file whose edges are highlighted")
    w.add_argument("--plane-root", type=int, help="overlay the plane subgraph grown from this root")
    w.set_defaults(func=cmd_svg)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except GuaranteeViolation as exc:
        print(f"violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return VIOLATION
    except DegeneracyError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return INVALID
    except GenerationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
