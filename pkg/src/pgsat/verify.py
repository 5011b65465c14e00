"""Checks of computed results against the bundled expected tables."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .covercode import covering_radius, from_set, is_locally_optimal
from .enumeration import ClassRecord, enumerate_classes, summarize
from .geometry import PointSet, is_cap, spans_space
from .projgroup import ProjMap, apply_map, canonical_form, stabilizer_order
from .saturation import SetType, is_minimal_one_saturating, is_one_saturating, type_for


@lru_cache(maxsize=1)
def load_expected() -> dict:
    text = resources.files("pgsat").joinpath("data/expected_tables.json").read_text()
    return json.loads(text)


def group_order(name: str) -> int:
    return load_expected()["group_orders"][name]


@dataclass
class Check:
    label: str
    expected: dict
    actual: dict
    points: tuple[int, ...] | None = None

    @property
    def deltas(self) -> list[tuple[str, object, object]]:
        return [(k, v, self.actual.get(k)) for k, v in self.expected.items() if self.actual.get(k) != v]

    @property
    def passed(self) -> bool:
        return not self.deltas

    def to_json(self) -> dict:
        out = {"label": self.label, "passed": self.passed, "expected": self.expected, "actual": self.actual}
        if self.points is not None:
            out["set"] = list(self.points)
        if self.deltas:
            out["deltas"] = [{"field": f, "expected": e, "actual": a} for f, e, a in self.deltas]
        return out


@dataclass
class VerificationReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"title": self.title, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}

    def to_text(self) -> str:
        lines = [self.title]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.label}")
            for f, e, a in c.deltas:
                lines.append(f"         {f}: expected {e!r}, got {a!r}")
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def set_properties(s: PointSet) -> dict:
    """Everything the point-list tables assert about one set, computed afresh."""
    saturating = is_one_saturating(s)
    minimal = saturating and is_minimal_one_saturating(s)
    code = from_set(s) if len(s) else None
    return {
        "saturating": saturating,
        "minimal": minimal,
        "type": type_for(s.v, is_cap(s)).value if minimal else None,
        "stab_order": stabilizer_order(s) if spans_space(s) else None,
        "code_radius": covering_radius(code) if code else None,
        "locally_optimal": is_locally_optimal(code) if code else None,
    }


def _invariant_under_maps(s: PointSet, rng: random.Random, count: int) -> bool:
    props = set_properties(s)
    canon = canonical_form(s)
    for _ in range(count):
        img = apply_map(ProjMap.random(s.v, rng), s)
        if canonical_form(img) != canon or set_properties(img) != props:
            return False
    return True


def verify_point_lists(rows: list[dict], *, seed: int | None = None, random_maps: int = 0) -> VerificationReport:
    report = VerificationReport("point-list tables")
    rng = random.Random(seed)
    for row in rows:
        s = PointSet.from_points(row["v"], row["points"])
        expected = {
            "saturating": True,
            "minimal": True,
            "type": row["type"],
            "stab_order": group_order(row["group"]),
            "code_radius": 2,
            "locally_optimal": True,
        }
        actual = set_properties(s)
        if random_maps:
            expected["invariant_under_random_maps"] = True
            actual["invariant_under_random_maps"] = _invariant_under_maps(s, rng, random_maps)
        label = f"PG({row['v']},2) k={len(row['points'])} {row['type']} {row['group']}"
        report.checks.append(Check(label, expected, actual, tuple(row["points"])))
    return report


def verify_tables(*, seed: int | None = None, random_maps: int = 0) -> VerificationReport:
    return verify_point_lists(load_expected()["point_lists"], seed=seed, random_maps=random_maps)


def construction_labels(v: int) -> dict[tuple[int, ...], str]:
    """Canonical form of each tabulated set mapped to its construction label."""
    out = {}
    for row in load_expected()["point_lists"]:
        if row["v"] == v and row["construction"]:
            canon = canonical_form(PointSet.from_points(v, row["points"])).points
            out[canon] = row["construction"]
    return out


def attach_labels(records: list[ClassRecord]) -> list[ClassRecord]:
    if not records:
        return records
    labels = construction_labels(records[0].v)
    return [
        ClassRecord(r.v, r.k, r.type, r.representative, r.stab_order, labels.get(r.representative))
        for r in records
    ]


def verify_summary(
    v: int,
    k_max: int | None = None,
    records: list[ClassRecord] | None = None,
    **enumerate_kw,
) -> VerificationReport:
    """Compare counts, stabilizer ranges and extremal sizes with the summary table."""
    data = load_expected()
    coverage = data["summary_coverage"][str(v)]
    if k_max is None:
        k_max = coverage if records is None else max(r.k for r in records)
    if records is None:
        records = enumerate_classes(v, k_max, **enumerate_kw)
    summary = summarize(records, k_max)
    report = VerificationReport(f"summary for PG({v},2), k <= {k_max}")
    limit = min(k_max, coverage)

    expected_rows = {(r["k"], r["type"]): r for r in data["summary"] if r["v"] == v and r["k"] <= limit}
    actual_rows = {(k, t.value): (n, lo, hi) for k, t, n, lo, hi in summary.rows() if k <= limit}
    for key in sorted(set(expected_rows) | set(actual_rows)):
        exp = expected_rows.get(key)
        act = actual_rows.get(key)
        expected = {"n": exp["n"] if exp else 0}
        actual = {"n": act[0] if act else 0}
        if exp and exp["stab_min"] is not None:
            expected.update(stab_min=exp["stab_min"], stab_max=exp["stab_max"])
            actual.update(stab_min=act[1] if act else None, stab_max=act[2] if act else None)
        report.checks.append(Check(f"k={key[0]} {key[1]}", expected, actual))

    ext = data["extremal"][str(v)]
    expected, actual = {}, {}
    if ext["ell"] is not None and ext["ell"] <= k_max:
        expected["ell"], actual["ell"] = ext["ell"], summary.ell
    if ext["t2"] is not None:
        if ext["t2"] <= k_max:
            expected["t2"], actual["t2"] = ext["t2"], summary.t2
        else:
            # The smallest complete cap lies beyond the run; none may appear in it.
            expected["caps_found"], actual["caps_found"] = 0, sum(1 for r in records if r.type.is_cap)
    if summary.complete:
        for name in ("m", "m_second", "m_third"):
            if ext[name] is not None:
                expected[name], actual[name] = ext[name], getattr(summary, name)
    if expected:
        report.checks.append(Check("extremal sizes", expected, actual))
    return report


__all__ = [
    "Check",
    "SetType",
    "VerificationReport",
    "attach_labels",
    "construction_labels",
    "group_order",
    "load_expected",
    "set_properties",
    "verify_point_lists",
    "verify_summary",
    "verify_tables",
]
