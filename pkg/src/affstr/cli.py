"""Command-line front end.

Subcommands mirror the pipeline stages: `fan`, `folded-fan`, `strings`,
`mult`, `character`, and the fixture harness `verify`.  Weights are
entered as comma-separated classical Dynkin labels; the zeroth label is
inferred from the level.  Exit codes: 0 success, 2 configuration error,
3 mathematical consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import verify as verify_mod
from .algebra import load_algebra, to_root_basis
from .errors import AffstrError, ConfigurationError
from .fan import build_fan, verify_denominator
from .folding import build_folded_fans
from .oracle import RacahOracle
from .strings import (
    character,
    classifier_for,
    enumerate_class_weights,
    string_table,
    weight_multiplicity,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_MATH = 3


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.handler(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AffstrError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_MATH
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return getattr(args, "exit_code", EXIT_OK)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affstr",
        description="Exact string functions and weight multiplicities "
        "of untwisted affine Lie algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, level=True, mu=True, cutoff=True):
        p.add_argument("--algebra", default="A2", help="preset name or JSON config path")
        if level:
            p.add_argument("--level", type=int, required=True, help="level k >= 1")
        if mu:
            p.add_argument("--mu", required=True, help="classical Dynkin labels, e.g. 1,0")
        if cutoff:
            p.add_argument("--cutoff", type=int, required=True, help="grade depth |u| >= 0")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", help="write output to a file instead of stdout")

    p = sub.add_parser("fan", help="recursion-shift fan up to a grade cutoff")
    common(p, level=False, mu=False)
    p.add_argument("--check", action="store_true", help="also run the denominator identity")
    p.set_defaults(handler=cmd_fan)

    p = sub.add_parser("folded-fan", help="folded fans for a congruence class")
    common(p)
    p.add_argument("--base", type=int, default=None, help="only this base index (0-based)")
    p.set_defaults(handler=cmd_folded_fan)

    p = sub.add_parser("strings", help="string function table for a module")
    common(p)
    p.add_argument("--verify", action="store_true",
                   help="cross-check shallow coefficients against the unfolded recursion")
    p.set_defaults(handler=cmd_strings)

    p = sub.add_parser("mult", help="multiplicity of a single weight")
    common(p)
    p.add_argument("--weight", required=True, help="classical Dynkin labels of the weight")
    p.add_argument("--grade", type=int, required=True, help="grade of the weight (<= 0)")
    p.set_defaults(handler=cmd_mult)

    p = sub.add_parser("character", help="weights and multiplicities by grade")
    common(p)
    p.add_argument("--depth", type=int, default=None,
                   help="list grades 0..-depth (defaults to the cutoff)")
    p.set_defaults(handler=cmd_character)

    p = sub.add_parser("verify", help="run the golden-fixture verification suite")
    p.add_argument("--fixtures", default=None,
                   help="fixture directory (default: packaged, or $AFFSTR_FIXTURES)")
    p.add_argument("--out", help="write the report to a file instead of stdout")
    p.set_defaults(handler=cmd_verify)
    return parser


def _labels(text: str, spec) -> tuple[int, ...]:
    try:
        labels = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigurationError(f"cannot parse Dynkin labels from {text!r}") from None
    if len(labels) != spec.rank:
        raise ConfigurationError(
            f"{len(labels)} labels given but algebra {spec.label} has rank {spec.rank}"
        )
    return labels


def _check_mu(spec, labels, level):
    if any(x < 0 for x in labels):
        raise ConfigurationError("highest weight labels must be non-negative")
    label0 = level - sum(c * x for c, x in zip(spec.comarks, labels))
    if label0 < 0:
        raise ConfigurationError(
            f"labels {labels} need zeroth label {label0} at level {level}"
        )


def cmd_fan(args) -> str:
    spec = load_algebra(args.algebra)
    if args.cutoff < 0:
        raise ConfigurationError("cutoff must be non-negative")
    fan = build_fan(spec, args.cutoff)
    if args.check:
        report = verify_denominator(fan)
        if not report.ok:
            from .errors import ConsistencyError

            raise ConsistencyError(f"denominator identity fails: {report.mismatch}")
    if args.format == "json":
        return _dumps(fan.to_json())
    if args.format == "csv":
        return _csv(
            ["root", "grade", "mult"],
            [[" ".join(map(str, v.root)), v.grade, v.mult] for v in fan],
        )
    lines = [f"fan {spec.label}, cutoff {fan.cutoff}, {len(fan)} vectors"]
    for v in fan:
        lines.append(f"  ({', '.join(map(str, v.root))}; {v.grade})  {v.mult:+d}")
    return "\n".join(lines) + "\n"


def _class_data(args):
    spec = load_algebra(args.algebra)
    if args.level < 1:
        raise ConfigurationError("level must be >= 1")
    if args.cutoff < 0:
        raise ConfigurationError("cutoff must be non-negative")
    mu = _labels(args.mu, spec)
    _check_mu(spec, mu, args.level)
    return spec, mu


def cmd_folded_fan(args) -> str:
    spec, mu = _class_data(args)
    cid = classifier_for(spec).id_of(mu)
    base = enumerate_class_weights(spec, args.level)[cid]
    folded, _ = build_folded_fans(spec, base, args.cutoff)
    indices = range(len(base)) if args.base is None else [args.base]
    if args.base is not None and not 0 <= args.base < len(base):
        raise ConfigurationError(f"base index {args.base} out of range 0..{len(base)-1}")
    if args.format == "json":
        return _dumps([folded[j].to_json() for j in indices])
    if args.format == "csv":
        rows = [
            [j, s, n, eta]
            for j in indices
            for (s, n), eta in sorted(folded[j].entries.items())
        ]
        return _csv(["base", "target", "grade", "eta"], rows)
    lines = [
        f"folded fans, {spec.label} level {args.level}, "
        f"class of mu={list(mu)}, offsets 0..{args.cutoff}"
    ]
    for j in indices:
        xi = base.weights[j]
        lines.append(f"base {j}: xi = {_wfmt(spec, xi)}")
        for (s, n), eta in sorted(folded[j].entries.items()):
            lines.append(f"  -> target {s} offset {n}: {eta:+d}")
    return "\n".join(lines) + "\n"


def cmd_strings(args) -> str:
    spec, mu = _class_data(args)
    table = string_table(spec, mu, args.level, -args.cutoff)
    if args.verify:
        from .errors import ConsistencyError

        fan = build_fan(spec, min(args.cutoff, 6))
        oracle = RacahOracle(spec, spec.weight(mu, args.level, 0), fan)
        for s, xi in enumerate(table.base.weights):
            for d in range(min(args.cutoff, 6) + 1):
                want = oracle.multiplicity(xi.shift_grade(-d))
                if want != table.coefficients[s][d]:
                    raise ConsistencyError(
                        f"unfolded recursion gives {want} at string {s} depth {d}, "
                        f"folded table has {table.coefficients[s][d]}"
                    )
    if args.format == "json":
        return _dumps(table.to_json())
    if args.format == "csv":
        rows = [
            [s, " ".join(str(int(x)) for x in w.labels), n, table.coefficients[s][n]]
            for s, w in enumerate(table.base.weights)
            for n in range(table.depth + 1)
        ]
        return _csv(["string", "xi", "n", "coefficient"], rows)
    lines = [
        f"string functions, {spec.label} level {args.level}, "
        f"mu = {_wfmt(spec, table.mu)}, depth {table.depth}"
    ]
    for s, w in enumerate(table.base.weights):
        head = "*" if s == table.mu_index else " "
        lines.append(
            f" {head}sigma_{s} through {_wfmt(spec, w)}: "
            + ", ".join(str(c) for c in table.coefficients[s])
        )
    return "\n".join(lines) + "\n"


def cmd_mult(args) -> str:
    spec, mu = _class_data(args)
    table = string_table(spec, mu, args.level, -args.cutoff)
    lam = spec.weight(_labels(args.weight, spec), args.level, args.grade)
    value = weight_multiplicity(spec, table, lam)
    if args.format == "json":
        return _dumps(
            {
                "mu": list(mu),
                "level": args.level,
                "weight": [int(x) for x in lam.labels],
                "grade": args.grade,
                "multiplicity": value,
            }
        )
    if args.format == "csv":
        return _csv(["weight", "grade", "multiplicity"],
                    [[" ".join(map(str, _labels(args.weight, spec))), args.grade, value]])
    return f"multiplicity of {_wfmt(spec, lam)} in L^{list(mu)} at level {args.level}: {value}\n"


def cmd_character(args) -> str:
    spec, mu = _class_data(args)
    table = string_table(spec, mu, args.level, -args.cutoff)
    depth = args.cutoff if args.depth is None else args.depth
    pairs = character(spec, table, depth)
    if args.format == "json":
        return _dumps(
            [
                {
                    "labels": [int(x) for x in w.labels],
                    "grade": int(w.grade),
                    "mult": m,
                }
                for w, m in pairs
            ]
        )
    if args.format == "csv":
        rows = [[" ".join(str(int(x)) for x in w.labels), int(w.grade), m] for w, m in pairs]
        return _csv(["labels", "grade", "mult"], rows)
    lines = [f"character of L^{list(mu)}, {spec.label} level {args.level}, grades 0..-{depth}"]
    current = None
    for w, m in pairs:
        if w.grade != current:
            current = w.grade
            total = sum(mm for ww, mm in pairs if ww.grade == current)
            lines.append(f" grade {current} (total multiplicity {total}):")
        lines.append(f"   {_wfmt(spec, w)}  x{m}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> str:
    results = verify_mod.run_all(args.fixtures)
    lines = [r.line() for r in results]
    failed = sum(not r.ok for r in results)
    lines.append(f"{len(results) - failed} of {len(results)} checks passed")
    args.exit_code = EXIT_OK if failed == 0 else EXIT_MATH
    return "\n".join(lines) + "\n"


def _wfmt(spec, w) -> str:
    root = to_root_basis(spec, w)
    root_text = ",".join(str(c) for c in root)
    labels = ",".join(str(x) for x in w.labels)
    return f"[{labels}] (root basis {root_text}; level {w.level}; grade {w.grade})"


def _dumps(data) -> str:
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
