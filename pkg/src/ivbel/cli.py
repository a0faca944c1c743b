"""Command-line front end: validate, normalize, analyze, and combine evidence.

Commands
--------
validate    check each body against the validity and tightness conditions
normalize   rewrite each body as a normalized structure
entropy     entropy bounds per body for one or all measures
combine     combine all bodies with a chosen engine
compare     run several engines side by side on the same file
reproduce   recompute bundled reference values and report deltas

Exit codes: 0 on success (for ``reproduce``: all required checks pass),
1 when ``reproduce`` finds failing required checks, 2 on usage or engine
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .core import (
    MASS_DROP_EPS,
    MASS_SUM_TOL,
    Bpa,
    FocalSet,
    IntervalBeliefStructure,
    IntervalMassResult,
    IvbelError,
    degenerate_bpa,
    is_normalized,
    normalize,
    validate_ibs,
)
from .core import _rescale_proportionally
from .entropy import MEASURE_IDS, SEPARABLE_MEASURE_IDS, entropy, measure
from .formats import (
    EvidenceFile,
    evidence_to_json,
    load_evidence,
    render_csv,
    render_intervals_table,
    render_table,
    result_to_json,
)
from .fusion import dempster_combine_n, proposed_combine_report
from .optimize import entropy_bounds
from .reference import (
    LeeZhuParams,
    denoeux_combine,
    denoeux_normalize,
    leezhu_combine,
    song_combine_detail,
    wang_combine,
)
from .reproduce import TARGETS, reproduce

METHODS = ("proposed", "wang", "denoeux", "leezhu", "song", "dempster")
FORMATS = ("table", "json", "csv")

_TOLERANCE_FOOTER = (
    f"tolerances: mass sum {MASS_SUM_TOL:g}, zero drop {MASS_DROP_EPS:g}"
)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _normalization_actions(ibs: IntervalBeliefStructure) -> tuple[str, ...]:
    """Describe what :func:`normalize` does to this structure."""
    actions = []
    current = ibs
    if not validate_ibs(current).ok:
        actions.append("rescaled proportionally")
        current = _rescale_proportionally(current)
    if not is_normalized(current, tol=0.0):
        actions.append("tightened bounds")
    return tuple(actions) if actions else ("already normalized",)


def _echo_inputs(ev: EvidenceFile) -> list[str]:
    frame = ev.frame
    lines = [f"frame: {frame.format_set(frame.full_set)} ({len(ev.bodies)} bodies)"]
    for name, body in ev.bodies:
        cells = ", ".join(
            f"{frame.format_set(fs)} [{lo:.4f}, {hi:.4f}]" for fs, lo, hi in body.entries
        )
        lines.append(f"  {name}: {cells}")
    return lines


def _bpa_cells(bpa: Bpa) -> str:
    frame = bpa.frame
    return ", ".join(f"{frame.format_set(fs)}={m:.4f}" for fs, m in bpa.entries)


def cmd_validate(args: argparse.Namespace) -> int:
    ev = load_evidence(args.file)
    rows = []
    results = []
    for name, body in ev.bodies:
        verdict = validate_ibs(body)
        tight = bool(verdict) and is_normalized(body)
        rows.append(
            [name, "yes" if verdict else "no", "yes" if tight else "no", verdict.reason or ""]
        )
        results.append(
            {
                "name": name,
                "valid": bool(verdict),
                "normalized": tight,
                "reason": verdict.reason,
            }
        )
    if args.format == "json":
        _print_json({"format": 1, "command": "validate", "bodies": results})
    elif args.format == "csv":
        return _fail("csv output is not supported for validate")
    else:
        print(render_table(["body", "valid", "normalized", "reason"], rows))
    return 0


def cmd_normalize(args: argparse.Namespace) -> int:
    ev = load_evidence(args.file)
    frame = ev.frame
    normalized = []
    actions = {}
    for name, body in ev.bodies:
        actions[name] = _normalization_actions(body)
        normalized.append((name, normalize(body)))

    if args.format == "json":
        _print_json(evidence_to_json(EvidenceFile(frame, tuple(normalized))))
    elif args.format == "csv":
        rows = [
            (name, frame.format_set(fs), lo, hi)
            for name, body in normalized
            for fs, lo, hi in body.entries
        ]
        print(render_csv("body", rows), end="")
    else:
        for name, body in normalized:
            print(f"{name}: {'; '.join(actions[name])}")
            print(render_intervals_table(frame, body.entries))
        print(_TOLERANCE_FOOTER)
    return 0


def cmd_entropy(args: argparse.Namespace) -> int:
    ev = load_evidence(args.file)
    if args.measure == "all":
        requested = list(MEASURE_IDS)
    else:
        requested = [measure(args.measure).id]

    bodies = []
    for name, body in ev.bodies:
        bodies.append((name, normalize(body) if args.normalize_inputs else body))

    rows = []
    notes = []
    for name, body in bodies:
        point = degenerate_bpa(body) if body.is_degenerate(tol=MASS_SUM_TOL) else None
        for mid in requested:
            meas = measure(mid)
            if point is not None:
                h = entropy(meas, point)
                rows.append((name, mid, h, h))
            elif meas.separable:
                sol = entropy_bounds(body, meas)
                rows.append((name, mid, sol.h_min, sol.h_max))
            elif args.measure == "all":
                notes.append(
                    f"{name}: {mid} skipped (not separable; exact bounds need"
                    f" point-valued input)"
                )
            else:
                entropy_bounds(body, meas)  # raises with the engine's message

    if args.format == "json":
        _print_json(
            {
                "format": 1,
                "command": "entropy",
                "results": [
                    {"body": n, "measure": m, "h_min": lo, "h_max": hi}
                    for n, m, lo, hi in rows
                ],
                "notes": notes,
            }
        )
    elif args.format == "csv":
        return _fail("csv output is not supported for entropy")
    else:
        print(
            render_table(
                ["body", "measure", "H min", "H max"],
                [[n, m, f"{lo:.4f}", f"{hi:.4f}"] for n, m, lo, hi in rows],
            )
        )
        for note in notes:
            print(f"note: {note}")
        print(_TOLERANCE_FOOTER)
    return 0


def _combine_dispatch(
    args: argparse.Namespace, ev: EvidenceFile
) -> tuple[IntervalMassResult, list[str]]:
    """Run the chosen engine; returns (result, table-mode detail lines)."""
    frame = ev.frame
    names = [name for name, _ in ev.bodies]
    raw_bodies = [body for _, body in ev.bodies]
    details: list[str] = []

    if args.method == "leezhu":
        # This engine is defined on the structures as given; the bundled
        # reference rows only reproduce without prior normalization.
        if len(raw_bodies) != 2:
            raise IvbelError("leezhu combines exactly two bodies")
        if args.normalize_inputs:
            details.append("inputs passed through unchanged (engine convention)")
        result = leezhu_combine(raw_bodies[0], raw_bodies[1], LeeZhuParams(w=args.w))
        return result, details

    if args.normalize_inputs:
        bodies = []
        for name, body in zip(names, raw_bodies):
            actions = _normalization_actions(body)
            details.append(f"normalization {name}: {'; '.join(actions)}")
            bodies.append(normalize(body))
    else:
        bodies = raw_bodies

    if args.method == "proposed":
        rep = proposed_combine_report(bodies, args.measure)
        for label, bpa in rep.intermediate_bpas:
            details.append(f"{label}: {_bpa_cells(bpa)}")
        for label, diag in zip(("fold.max", "fold.min"), rep.diagnostics):
            details.append(f"conflict {label}: K = {diag.conflict_mass:.4f}")
        details.extend(f"note: {n}" for n in rep.notes)
        if rep.normalization_applied:
            details.append("note: output bounds tightened to the normalized form")
        return rep.result, details

    if args.method == "wang":
        return wang_combine(bodies), details

    if args.method == "denoeux":
        if len(bodies) != 2:
            raise IvbelError("denoeux combines exactly two bodies")
        raw = denoeux_combine(bodies[0], bodies[1])
        if raw.includes_empty is not None:
            e_lo, e_hi = raw.includes_empty
            details.append(f"mass on the empty set before renormalization:"
                           f" [{e_lo:.4f}, {e_hi:.4f}]")
        return denoeux_normalize(raw), details

    if args.method == "song":
        det = song_combine_detail(bodies)
        for name, body in zip(names, det.pignistic_bodies):
            cells = ", ".join(
                f"{frame.format_set(fs)} [{lo:.4f}, {hi:.4f}]"
                for fs, lo, hi in body.entries
            )
            details.append(f"pignistic {name}: {cells}")
        return det.result, details

    if args.method == "dempster":
        for name, body in zip(names, bodies):
            if not body.is_degenerate(tol=MASS_SUM_TOL):
                raise IvbelError(
                    f"method dempster needs point-valued evidence (lo = hi);"
                    f" body {name!r} has interval bounds"
                )
        combined, diag = dempster_combine_n([degenerate_bpa(b) for b in bodies])
        details.append(f"cumulative conflict: K = {diag.conflict_mass:.4f}")
        entries = tuple((fs, m, m) for fs, m in combined.entries)
        result = IntervalMassResult(
            frame, entries, includes_empty=None, normalized=True
        )
        return result, details

    raise IvbelError(f"unknown method {args.method!r}")


def cmd_combine(args: argparse.Namespace) -> int:
    if args.measure is not None and args.method != "proposed":
        return _fail("--measure only applies to --method proposed")
    if args.w is not None and args.method != "leezhu":
        return _fail("--w only applies to --method leezhu")
    if args.measure is None:
        args.measure = "pal"
    if args.w is None:
        args.w = 2.0

    ev = load_evidence(args.file)
    if len(ev.bodies) < 2:
        return _fail("no evidence: need at least two bodies to combine")
    result, details = _combine_dispatch(args, ev)

    method_label = (
        f"proposed[{args.measure}]" if args.method == "proposed"
        else f"leezhu[w={args.w:g}]" if args.method == "leezhu"
        else args.method
    )
    if args.format == "json":
        _print_json(result_to_json(result, method=method_label))
    elif args.format == "csv":
        frame = result.frame
        rows = [
            (method_label, frame.format_set(fs), lo, hi) for fs, lo, hi in result.entries
        ]
        print(render_csv("method", rows), end="")
    else:
        for line in _echo_inputs(ev):
            print(line)
        print(f"method: {method_label}")
        for line in details:
            print(line)
        print(render_intervals_table(result.frame, result.entries))
        print(_TOLERANCE_FOOTER)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    ev = load_evidence(args.file)
    if len(ev.bodies) < 2:
        return _fail("no evidence: need at least two bodies to compare")
    frame = ev.frame
    bodies = [normalize(body) for _, body in ev.bodies]

    columns: list[tuple[str, IntervalMassResult]] = []
    notes: list[str] = []
    if len(bodies) == 2:
        columns.append(
            ("denoeux", denoeux_normalize(denoeux_combine(bodies[0], bodies[1])))
        )
    else:
        notes.append("denoeux column omitted: that engine combines exactly two bodies")
    columns.append(("wang", wang_combine(bodies)))
    columns.append(("song", song_combine_detail(bodies).result))
    rep = proposed_combine_report(bodies, args.measure)
    columns.append((f"proposed[{args.measure}]", rep.result))

    if args.format == "json":
        _print_json(
            {
                "format": 1,
                "command": "compare",
                "results": {name: result_to_json(res) for name, res in columns},
                "notes": notes,
            }
        )
    elif args.format == "csv":
        rows = [
            (name, frame.format_set(fs), lo, hi)
            for name, res in columns
            for fs, lo, hi in res.entries
        ]
        print(render_csv("method", rows), end="")
    else:
        focal_bits = sorted(
            {fs.bits for _, res in columns for fs, _, _ in res.entries}
        )
        headers = ["focal set"] + [name for name, _ in columns]
        rows = []
        for bits in focal_bits:
            row = [frame.format_set(FocalSet(bits))]
            for _, res in columns:
                cells = {fs.bits: (lo, hi) for fs, lo, hi in res.entries}
                if bits in cells:
                    lo, hi = cells[bits]
                    row.append(f"[{lo:.4f}, {hi:.4f}]")
                else:
                    row.append("-")
            rows.append(row)
        print(render_table(headers, rows))
        for note in notes:
            print(f"note: {note}")
        print(_TOLERANCE_FOOTER)
    return 0


def cmd_reproduce(args: argparse.Namespace) -> int:
    targets = TARGETS if args.target == "all" else (args.target,)
    reports = [reproduce(t) for t in targets]
    if args.format == "json":
        _print_json(
            {
                "format": 1,
                "command": "reproduce",
                "targets": [
                    {
                        "target": rep.target,
                        "ok": rep.ok,
                        "cells": [
                            {
                                "column": c.column,
                                "row": c.row,
                                "bound": c.bound,
                                "expected": c.expected,
                                "actual": c.actual,
                                "delta": c.delta,
                                "tol": c.tol,
                                "required": c.required,
                                "passed": c.passed,
                            }
                            for c in rep.cells
                        ],
                        "assertions": [
                            {"label": a.label, "passed": a.passed, "detail": a.detail}
                            for a in rep.assertions
                        ],
                        "notes": list(rep.notes),
                    }
                    for rep in reports
                ],
            }
        )
    elif args.format == "csv":
        return _fail("csv output is not supported for reproduce")
    else:
        for rep in reports:
            for line in rep.lines():
                print(line)
    return 0 if all(rep.ok for rep in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ivbel",
        description="Validate, normalize, and combine interval-valued bodies of evidence.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format", choices=FORMATS, default="table", help="output format"
        )

    p = sub.add_parser("validate", help="check validity and tightness of each body")
    p.add_argument("file", help="evidence file (JSON)")
    add_format(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("normalize", help="normalize every body in the file")
    p.add_argument("file", help="evidence file (JSON)")
    add_format(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("entropy", help="entropy bounds per body")
    p.add_argument("file", help="evidence file (JSON)")
    p.add_argument(
        "--measure",
        default="all",
        help=f"measure id or 'all' (ids: {', '.join(MEASURE_IDS)})",
    )
    p.add_argument(
        "--normalize-inputs",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="normalize bodies before computing bounds",
    )
    add_format(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("combine", help="combine all bodies with one engine")
    p.add_argument("file", help="evidence file (JSON)")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument(
        "--measure",
        choices=SEPARABLE_MEASURE_IDS,
        default=None,
        help="entropy objective (proposed method only; default pal)",
    )
    p.add_argument(
        "--w", type=float, default=None, help="norm order, >= 1 (leezhu only; default 2)"
    )
    p.add_argument(
        "--normalize-inputs",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="normalize bodies before combining (leezhu always combines as given)",
    )
    add_format(p)
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("compare", help="run several engines side by side")
    p.add_argument("file", help="evidence file (JSON)")
    p.add_argument(
        "--measure",
        choices=SEPARABLE_MEASURE_IDS,
        default="pal",
        help="entropy objective for the proposed column",
    )
    add_format(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("reproduce", help="recompute bundled reference values")
    p.add_argument("target", choices=TARGETS + ("all",))
    add_format(p)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IvbelError as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    raise SystemExit(main())
