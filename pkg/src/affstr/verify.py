"""Golden-fixture verification harness.

Each check recomputes a pipeline stage from scratch and compares it with
a fixture file, reporting the first divergence.  The checks double as the
acceptance suite: the CLI `verify` subcommand and the test suite both run
them.  Fixture files live in the packaged `fixtures/` directory unless
the AFFSTR_FIXTURES environment variable points elsewhere.
"""

from __future__ import annotations

import json
import os
import pathlib
import random
from dataclasses import dataclass

from .algebra import load_algebra
from .errors import ConfigurationError
from .fan import build_fan, verify_denominator
from .folding import build_folded_fans, lemma1_check
from .oracle import RacahOracle, euler_square_series, level1_eta_series
from .strings import (
    assemble_system,
    classifier_for,
    enumerate_class_weights,
    grade_zero_determinant,
    string_table,
    weight_multiplicity,
)
from .weyl import apply_word

__all__ = ["CheckResult", "fixture_dir", "load_fixtures", "run_all"]

_RNG_SEED = 20081212
_ORBIT_SAMPLES = 100


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name}{tail}"


def fixture_dir() -> pathlib.Path:
    override = os.environ.get("AFFSTR_FIXTURES")
    if override:
        return pathlib.Path(override)
    return pathlib.Path(__file__).parent / "fixtures"


def load_fixtures(directory: pathlib.Path | None = None) -> list[dict]:
    directory = pathlib.Path(directory) if directory else fixture_dir()
    if not directory.is_dir():
        raise ConfigurationError(f"fixture directory {directory} does not exist")
    fixtures = []
    for path in sorted(directory.glob("*.json")):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"fixture {path} is not valid JSON: {exc}") from exc
        data["_path"] = str(path)
        fixtures.append(data)
    return fixtures


def run_all(directory=None) -> list[CheckResult]:
    """Run every check against every fixture in the directory."""
    fixtures = load_fixtures(directory)
    results: list[CheckResult] = []
    if not fixtures:
        results.append(CheckResult("fixture set", True, "warning: no fixtures found"))
        return results
    for fx in fixtures:
        kind = fx.get("kind")
        if kind == "fan":
            results.extend(check_fan(fx))
        elif kind == "level1":
            results.extend(check_level1(fx))
        elif kind == "level2":
            results.extend(check_level2(fx))
        elif kind == "level4":
            results.extend(check_level4(fx))
        else:
            results.append(
                CheckResult(f"fixture {fx['_path']}", False, f"unknown kind {kind!r}")
            )
    results.extend(check_oracle_equivalence(fixtures))
    results.extend(check_structure(fixtures))
    results.extend(check_counting())
    return results


# -- individual checks -----------------------------------------------------


def check_fan(fx) -> list[CheckResult]:
    spec = load_algebra(fx["algebra"])
    cutoff = fx["cutoff"]
    fan = build_fan(spec, cutoff)
    out = []
    report = verify_denominator(fan)
    out.append(
        CheckResult(
            f"fan {fx['algebra']} n<={cutoff}: denominator identity",
            report.ok,
            "" if report.ok else f"first mismatch {report.mismatch}",
        )
    )
    computed = {(tuple(v.root), v.grade): v.mult for v in fan}
    bad = None
    annotated = 0
    for entry in fx["entries"]:
        key = (tuple(entry["root"]), entry["grade"])
        expected = entry["mult"]
        is_annotated = "note" in entry
        annotated += is_annotated
        if computed.get(key) != expected:
            bad = f"entry {key} computed {computed.get(key)} fixture {expected}"
            break
        if "paper" in entry and entry["paper"] == expected and is_annotated:
            bad = f"entry {key} annotated but printed value matches"
            break
    if bad is None and len(computed) != len(fx["entries"]):
        bad = f"{len(computed)} computed vs {len(fx['entries'])} fixture entries"
    out.append(
        CheckResult(
            f"fan {fx['algebra']} n<={cutoff}: fixture entries", bad is None, bad or ""
        )
    )
    limit = 0.05 * fx["printed_entries"]
    out.append(
        CheckResult(
            f"fan {fx['algebra']} n<={cutoff}: annotated entries below 5%",
            annotated == fx["annotated"] and annotated < limit,
            f"{annotated} annotated of {fx['printed_entries']}",
        )
    )
    return out


def check_level1(fx) -> list[CheckResult]:
    spec = load_algebra(fx["algebra"])
    depth = fx["depth"]
    out = []
    table = string_table(spec, (0,) * spec.rank, 1, -depth)
    sigma = list(table.coefficients[table.mu_index])
    euler = euler_square_series(depth)
    ok = sigma == euler == fx["sigma"]
    out.append(
        CheckResult(
            "level 1: string equals inverse squared Euler product",
            ok,
            "" if ok else f"solver {sigma[:5]}.. euler {euler[:5]}..",
        )
    )
    classes = enumerate_class_weights(spec, 1)
    eta_ref = level1_eta_series(depth)
    rows = []
    for base in classes.values():
        folded, _ = build_folded_fans(spec, base, depth)
        rows.append(folded[0].eta_row(0))
    same = all(r == rows[0] for r in rows)
    ok = same and rows[0] == eta_ref == fx["eta"]
    out.append(
        CheckResult(
            "level 1: folded shifts equal minus the squared Euler product, any base",
            ok,
            "" if ok else f"folded {rows[0][:8]}.. closed {eta_ref[:8]}..",
        )
    )
    conv_ok = all(
        sum(eta_ref[n] * euler[total - n] for n in range(total + 1))
        == (-1 if total == 0 else 0)
        for total in range(depth + 1)
    )
    out.append(CheckResult("level 1: shift/string convolution is -1", conv_ok))
    flagged = {a["grade"] for a in fx["eta_annotations"]}
    printed = {int(g): m for g, m in fx["paper_folded_fan"].items()}
    diverging = {g for g in range(depth + 1) if printed.get(g, 0) != eta_ref[g]}
    lst = fx["paper_eta_list"]
    insertions = {
        g
        for g in range(len(lst))
        if lst[:g] == eta_ref[:g] and lst[g + 1:] == eta_ref[g:depth + 1]
    }
    ok = diverging <= flagged and bool(insertions & flagged)
    out.append(
        CheckResult(
            "level 1: divergences from the printed lists are all annotated",
            ok,
            f"printed-list divergences {sorted(diverging)}, flagged {sorted(flagged)}",
        )
    )
    return out


def check_level2(fx) -> list[CheckResult]:
    spec = load_algebra(fx["algebra"])
    depth = fx["depth"]
    out = []
    tables = {}
    for cls in fx["classes"]:
        mu = tuple(cls["mu"])
        table = string_table(spec, mu, fx["level"], -depth)
        tables[cls["name"]] = table
        base_labels = [[int(x) for x in w.labels] for w in table.base.weights]
        ok = base_labels == cls["base"]
        sigma = [list(r) for r in table.coefficients]
        ok = ok and sigma == cls["sigma"]
        cid = classifier_for(spec).id_of(mu)
        folded, _ = build_folded_fans(spec, enumerate_class_weights(spec, fx["level"])[cid], depth)
        eta = [[folded[j].eta_row(s) for s in range(len(table.base))] for j in range(len(table.base))]
        ok = ok and eta == cls["eta"]
        out.append(
            CheckResult(
                f"level {fx['level']} class {cls['name']}: strings and shift lists",
                ok,
                "" if ok else "divergence from fixture",
            )
        )
    pairs = [
        (c["name"], c["coincides_with"]) for c in fx["classes"] if c.get("coincides_with")
    ]
    for name, other in pairs:
        ok = tables[name].coefficients == tables[other].coefficients
        out.append(
            CheckResult(
                f"level {fx['level']}: class {name} tables coincide rowwise with class {other}",
                ok,
            )
        )
    return out


def check_level4(fx) -> list[CheckResult]:
    spec = load_algebra(fx["algebra"])
    depth = fx["depth"]
    level = fx["level"]
    out = []
    cid = classifier_for(spec).id_of(tuple(fx["base"][0]))
    base = enumerate_class_weights(spec, level)[cid]
    ok = [[int(x) for x in w.labels] for w in base.weights] == fx["base"]
    out.append(CheckResult(f"level {level} class I: base weights and order", ok))
    folded, _ = build_folded_fans(spec, base, depth)
    p = len(base)
    eta = [[folded[j].eta_row(s) for s in range(p)] for j in range(p)]
    ok = eta == fx["eta"]
    annotated_rows = {tuple(a["row"]) for a in fx["eta_annotations"]}
    out.append(
        CheckResult(
            f"level {level} class I: shift lists match fixture "
            f"({len(annotated_rows)} printed row(s) adjudicated)",
            ok,
        )
    )
    fan = build_fan(spec, depth)
    tables = {}
    for module in fx["modules"]:
        mu = tuple(module["mu"])
        table = string_table(spec, mu, level, -depth)
        tables[mu] = table
        sigma = [list(r) for r in table.coefficients]
        ok = sigma == module["sigma"]
        detail = ""
        if ok and module["annotations"]:
            oracle = RacahOracle(spec, spec.weight(mu, level, 0), fan)
            for ann in module["annotations"]:
                s = ann["string"]
                grades = [ann["grade"]] if "grade" in ann else range(depth + 1)
                for d in grades:
                    want = oracle.multiplicity(table.base.weights[s].shift_grade(-d))
                    if want != sigma[s][d]:
                        ok = False
                        detail = f"oracle disagrees at string {s} grade {d}"
        out.append(
            CheckResult(
                f"level {level} mu={list(mu)}: strings match fixture "
                f"({len(module['annotations'])} annotation(s) oracle-checked)",
                ok,
                detail,
            )
        )
    for module in fx["modules"]:
        if not module.get("swap_of"):
            continue
        mu = tuple(module["mu"])
        src = tuple(module["swap_of"])
        perm = module["swap_perm"]
        ok = all(
            tables[mu].coefficients[i] == tables[src].coefficients[perm[i]]
            for i in range(p)
        )
        out.append(
            CheckResult(
                f"level {level}: mu={list(mu)} table is mu={list(src)} with strings swapped",
                ok,
            )
        )
    distinct = len({r for t in tables.values() for r in t.coefficients})
    ok = distinct == fx["distinct_strings"]
    out.append(
        CheckResult(
            f"level {level} class I: distinct string functions",
            ok,
            f"{distinct} distinct",
        )
    )
    return out


def _fixture_modules(fixtures):
    """(spec, mu labels, level, depth) for every module any fixture mentions."""
    modules = []
    for fx in fixtures:
        spec = load_algebra(fx["algebra"])
        if fx["kind"] == "level1":
            for base in enumerate_class_weights(spec, 1).values():
                labels = tuple(int(x) for x in base.weights[0].labels)
                modules.append((spec, labels, 1, fx["depth"]))
        elif fx["kind"] == "level2":
            for cls in fx["classes"]:
                modules.append((spec, tuple(cls["mu"]), fx["level"], fx["depth"]))
        elif fx["kind"] == "level4":
            for module in fx["modules"]:
                modules.append((spec, tuple(module["mu"]), fx["level"], fx["depth"]))
    return modules


def check_oracle_equivalence(fixtures) -> list[CheckResult]:
    """Folded path vs unfolded recursion on every in-window dominant weight."""
    out = []
    for spec, mu, level, depth in _fixture_modules(fixtures):
        fan = build_fan(spec, depth)
        table = string_table(spec, mu, level, -depth)
        oracle = RacahOracle(spec, spec.weight(mu, level, 0), fan)
        bad = None
        for s, xi in enumerate(table.base.weights):
            for d in range(depth + 1):
                want = oracle.multiplicity(xi.shift_grade(-d))
                got = table.coefficients[s][d]
                if want != got:
                    bad = f"string {s} grade {-d}: folded {got} unfolded {want}"
                    break
            if bad:
                break
        out.append(
            CheckResult(
                f"two-path identity mu={list(mu)} level {level} to depth {depth}",
                bad is None,
                bad or "",
            )
        )
    return out


def check_structure(fixtures) -> list[CheckResult]:
    """Shift-grade independence, Weyl invariance, unimodular grade-0 block."""
    rng = random.Random(_RNG_SEED)
    out = []
    lemma_ok = True
    lemma_detail = ""
    det_ok = True
    head_ok = True
    seen_classes = set()
    for spec, mu, level, depth in _fixture_modules(fixtures):
        cid = classifier_for(spec).id_of(mu)
        key = (id(spec), level, cid)
        table = string_table(spec, mu, level, -depth)
        if key not in seen_classes:
            seen_classes.add(key)
            base = enumerate_class_weights(spec, level)[cid]
            folded, fan = build_folded_fans(spec, base, depth)
            for j in range(len(base)):
                for gamma in fan:
                    if not lemma1_check(spec, base, j, gamma, (0, -5)):
                        lemma_ok = False
                        lemma_detail = f"level {level} base {j} shift {gamma}"
            system = assemble_system(base, folded, table.mu_index, -depth)
            if abs(grade_zero_determinant(system)) != 1:
                det_ok = False
        head_ok = head_ok and table.coefficients[table.mu_index][0] == 1
        bad = None
        for _ in range(_ORBIT_SAMPLES):
            s = rng.randrange(len(table.base))
            d = rng.randrange(depth + 1)
            lam = table.base.weights[s].shift_grade(-d)
            word = [rng.randrange(spec.rank + 1) for _ in range(rng.randrange(1, 9))]
            image = apply_word(spec, word, lam)
            if weight_multiplicity(spec, table, image) != table.coefficients[s][d]:
                bad = f"word {word} on string {s} grade {-d}"
                break
        out.append(
            CheckResult(
                f"Weyl invariance of multiplicities mu={list(mu)} level {level} "
                f"({_ORBIT_SAMPLES} samples)",
                bad is None,
                bad or "",
            )
        )
    out.insert(
        0,
        CheckResult(
            "grade independence of folded shifts (probes 0 and -5), all fixtures",
            lemma_ok,
            lemma_detail,
        ),
    )
    out.insert(1, CheckResult("grade-0 block determinant is +-1, all fixtures", det_ok))
    out.insert(2, CheckResult("highest weight multiplicity is 1, all fixture modules", head_ok))
    return out


def check_counting() -> list[CheckResult]:
    spec = load_algebra("A2")
    out = []
    for level, total, per_class in [(1, 3, 1), (2, 6, 2), (4, 15, 5)]:
        classes = enumerate_class_weights(spec, level)
        sizes = [len(b) for b in classes.values()]
        ok = sum(sizes) == total and len(sizes) == 3 and all(s == per_class for s in sizes)
        out.append(
            CheckResult(
                f"counting: level {level} has {total} dominant weights in 3 classes of {per_class}",
                ok,
                f"sizes {sizes}",
            )
        )
    return out
