"""Isomorph-free enumeration of minimal 1-saturating sets in PG(v,2).

The search grows point sets one point at a time.  Only non-saturating sets
are extended; a child that becomes saturating is a leaf and is recorded when
minimal.  Isomorph rejection is canonical augmentation: a child X = P + {x}
is kept only when x lies in the automorphism orbit of the designated point of
X, namely the member with the largest point invariant, ties broken by the
largest label in the canonical image.  Siblings are deduplicated by canonical
image, so each equivalence class is produced exactly once without any global
table.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .geometry import (
    PointSet,
    check_dimension,
    full_mask,
    is_cap_points,
    num_points,
)
from .projgroup import (
    _orbit_closure,
    canonical_form,
    canonical_search,
    point_invariants,
    stabilizer_order,
)
from .saturation import TYPE_ORDER, SetType, covered_mask, minimal_saturates, type_for

log = logging.getLogger(__name__)

DEFAULT_SPLIT_DEPTH = 4


class EnumerationError(RuntimeError):
    pass


class EnumerationIncomplete(EnumerationError):
    """Raised when the time budget runs out; carries what was found so far."""

    def __init__(self, records, checkpoint):
        self.records = records
        self.checkpoint = checkpoint
        where = f"; resume from {checkpoint}" if checkpoint else ""
        super().__init__(f"time limit reached after {len(records)} classes{where}")


@dataclass(frozen=True)
class ClassRecord:
    v: int
    k: int
    type: SetType
    representative: tuple[int, ...]
    stab_order: int
    construction_label: str | None = None

    @property
    def sort_key(self):
        return (self.k, TYPE_ORDER[self.type], self.representative)

    def as_set(self) -> PointSet:
        return PointSet.from_points(self.v, self.representative)

    def to_json(self) -> dict:
        out = {
            "v": self.v,
            "k": self.k,
            "type": self.type.value,
            "representative": list(self.representative),
            "stab_order": self.stab_order,
        }
        if self.construction_label:
            out["construction_label"] = self.construction_label
        return out

    @classmethod
    def from_json(cls, d: dict) -> "ClassRecord":
        return cls(
            v=d["v"],
            k=d["k"],
            type=SetType(d["type"]),
            representative=tuple(d["representative"]),
            stab_order=d["stab_order"],
            construction_label=d.get("construction_label"),
        )


def make_record(s: PointSet, construction_label: str | None = None) -> ClassRecord:
    canon = canonical_form(s)
    pts = list(canon.points)
    return ClassRecord(
        v=s.v,
        k=len(pts),
        type=type_for(s.v, is_cap_points(pts)),
        representative=tuple(pts),
        stab_order=stabilizer_order(s),
        construction_label=construction_label,
    )


# ---------------------------------------------------------------------------
# Search tree


def _extra_points_needed(uncovered: int, k: int) -> int:
    # The i-th added point covers at most itself plus one point per pair.
    t, reach = 0, 0
    while reach < uncovered:
        reach += 1 + k + t
        t += 1
    return t


class _Deadline:
    def __init__(self, seconds: float | None):
        self.at = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.at is not None and time.monotonic() > self.at:
            raise TimeoutError


def _children(v: int, points: list[int], cover: int, k_max: int):
    """Accepted children of a non-saturating node.

    Yields ``(points, cover, image, saturating)`` with ``points`` sorted.
    """
    full = full_mask(v)
    n = num_points(v)
    members = set(points)
    size = len(points) + 1
    seen_images = set()
    for x in range(1, n + 1):
        if x in members:
            continue
        child_cover = cover | (1 << x)
        for s in points:
            child_cover |= 1 << (x ^ s)
        saturating = child_cover == full
        child = sorted(points + [x])
        if saturating:
            if not _minimal_given_parent(child, x, full):
                continue
        else:
            if size >= k_max:
                continue
            missing = (full & ~child_cover).bit_count()
            if size + _extra_points_needed(missing, size) > k_max:
                continue
        inv = point_invariants(child, v)
        top = max(inv.values())
        if inv[x] != top:
            continue
        search = canonical_search(child)
        labels = search.labels
        designated = max((p for p in child if inv[p] == top), key=labels.__getitem__)
        if x != designated and x not in _orbit_closure([designated], search.generators):
            continue
        image = search.image
        if image in seen_images:
            continue
        seen_images.add(image)
        yield child, child_cover, image, saturating


def _minimal_given_parent(child: list[int], x: int, full: int) -> bool:
    # The parent (child minus x) is non-saturating by construction.
    for i, s in enumerate(child):
        if s == x:
            continue
        if covered_mask(child[:i] + child[i + 1:]) == full:
            return False
    return True


def _leaf_record(v: int, image: tuple[int, ...]) -> ClassRecord:
    rep = PointSet.from_points(v, image)
    return ClassRecord(
        v=v,
        k=len(image),
        type=type_for(v, is_cap_points(list(image))),
        representative=image,
        stab_order=stabilizer_order(rep),
    )


def _subtree(v: int, root: tuple[int, ...], k_max: int, deadline: _Deadline) -> list[ClassRecord]:
    """All classes whose canonical generation path passes through ``root``."""
    out = []
    stack = [(list(root), covered_mask(list(root)))]
    while stack:
        deadline.check()
        points, cover = stack.pop()
        for child, child_cover, image, saturating in _children(v, points, cover, k_max):
            if saturating:
                out.append(_leaf_record(v, image))
            else:
                stack.append((child, child_cover))
    return out


def _frontier(v: int, k_max: int, depth: int):
    """Accepted nodes at ``depth`` plus the leaves met above it."""
    level = [([], 0)]
    leaves = []
    for _ in range(depth):
        nxt = []
        for points, cover in level:
            for child, child_cover, image, saturating in _children(v, points, cover, k_max):
                if saturating:
                    leaves.append(_leaf_record(v, image))
                else:
                    nxt.append((child, child_cover))
        level = nxt
    return [tuple(p) for p, _ in level], leaves


def _run_subtree(args):
    v, root, k_max = args
    return root, _subtree(v, root, k_max, _Deadline(None))


# ---------------------------------------------------------------------------
# Checkpoints: a text file holding the frontier, plus a JSON-lines log of
# finished subtrees next to it.


def _done_path(checkpoint: Path) -> Path:
    return checkpoint.with_name(checkpoint.name + ".done.jsonl")


def write_checkpoint(path: Path, v: int, k_max: int, roots, shallow: list[ClassRecord]) -> None:
    lines = [f"v={v}", f"# kmax={k_max}"]
    lines.extend(" ".join(map(str, r)) for r in roots)
    path.write_text("\n".join(lines) + "\n")
    with _done_path(path).open("w") as fh:
        fh.write(json.dumps({"root": None, "records": [r.to_json() for r in shallow]}) + "\n")


def read_checkpoint(path: Path):
    v = k_max = None
    roots = []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if line.startswith("v="):
            v = int(line[2:])
        elif line.startswith("# kmax="):
            k_max = int(line[len("# kmax="):])
        elif line and not line.startswith("#"):
            roots.append(tuple(int(t) for t in line.split()))
    if v is None or k_max is None:
        raise EnumerationError(f"{path} is not a checkpoint file")
    done = {}
    records = []
    done_file = _done_path(path)
    if done_file.exists():
        for raw in done_file.read_text().splitlines():
            if not raw.strip():
                continue
            entry = json.loads(raw)
            root = None if entry["root"] is None else tuple(entry["root"])
            done[root] = True
            records.extend(ClassRecord.from_json(r) for r in entry["records"])
    return v, k_max, roots, done, records


def _log_done(path: Path | None, root, records) -> None:
    if path is None:
        return
    with _done_path(path).open("a") as fh:
        fh.write(json.dumps({"root": list(root), "records": [r.to_json() for r in records]}) + "\n")


def enumerate_classes(
    v: int,
    k_max: int | None = None,
    *,
    threads: int = 1,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
    checkpoint: str | os.PathLike | None = None,
    resume: str | os.PathLike | None = None,
    time_limit: float | None = None,
) -> list[ClassRecord]:
    """One record per projective class of minimal 1-saturating k-sets, k <= k_max."""
    if resume is not None:
        ckpt = Path(resume)
        v, k_max, roots, done, records = read_checkpoint(ckpt)
        if None not in done:
            raise EnumerationError(f"{ckpt} has no record of its shallow levels")
    else:
        check_dimension(v)
        ceiling = 1 << v
        if k_max is None:
            k_max = ceiling
        elif k_max > ceiling:
            warnings.warn(f"no minimal 1-saturating set in PG({v},2) exceeds {ceiling} points")
            k_max = ceiling
        roots, records = _frontier(v, k_max, split_depth)
        done = {}
        ckpt = Path(checkpoint) if checkpoint is not None else None
        if ckpt is not None:
            write_checkpoint(ckpt, v, k_max, roots, records)
    pending = [r for r in roots if r not in done]
    log.info("PG(%d,2), k<=%d: %d subtrees pending", v, k_max, len(pending))
    deadline = _Deadline(time_limit)
    try:
        if threads > 1 and time_limit is None:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for root, found in pool.map(_run_subtree, [(v, r, k_max) for r in pending]):
                    records.extend(found)
                    _log_done(ckpt, root, found)
        else:
            for root in pending:
                found = _subtree(v, root, k_max, deadline)
                records.extend(found)
                _log_done(ckpt, root, found)
    except TimeoutError:
        raise EnumerationIncomplete(sorted(records, key=lambda r: r.sort_key), ckpt) from None
    records.sort(key=lambda r: r.sort_key)
    return records


def brute_force_classes(v: int) -> list[ClassRecord]:
    """Filter every subset of PG(v,2) and bucket minimal ones by canonical form."""
    check_dimension(v)
    if v > 3:
        raise EnumerationError("brute force over all subsets is limited to v <= 3")
    n = num_points(v)
    full = full_mask(v)
    buckets: dict[tuple, PointSet] = {}
    for mask in range(1, 1 << n):
        pts = [i + 1 for i in range(n) if mask >> i & 1]
        if covered_mask(pts) != full or not minimal_saturates(pts, v):
            continue
        s = PointSet.from_points(v, pts)
        key = canonical_form(s).points
        buckets.setdefault(key, s)
    records = [make_record(s) for s in buckets.values()]
    records.sort(key=lambda r: r.sort_key)
    return records


def labeled_minimal_count(v: int, k: int) -> int:
    """Number of labeled minimal 1-saturating k-sets, by direct filtering."""
    n = num_points(v)
    full = full_mask(v)
    return sum(
        1
        for pts in itertools.combinations(range(1, n + 1), k)
        if covered_mask(list(pts)) == full and minimal_saturates(list(pts), v)
    )


# ---------------------------------------------------------------------------
# Summaries


@dataclass
class ClassificationSummary:
    v: int
    k_max: int
    counts: dict[tuple[int, SetType], int] = field(default_factory=dict)
    stab_orders: dict[tuple[int, SetType], list[int]] = field(default_factory=dict)
    ell: int | None = None
    m: int | None = None
    m_second: int | None = None
    m_third: int | None = None
    t2: int | None = None

    @property
    def complete(self) -> bool:
        """True when the run covered every size up to 2^v, so m, m', m'' are meaningful."""
        return self.k_max >= 1 << self.v

    def rows(self):
        """Table rows ``(k, type, n, min_stab, max_stab)`` in report order."""
        for key in sorted(self.counts, key=lambda kt: (kt[0], TYPE_ORDER[kt[1]])):
            orders = self.stab_orders[key]
            yield key[0], key[1], self.counts[key], orders[0], orders[-1]

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "k_max": self.k_max,
            "rows": [
                {"k": k, "type": t.value, "n": n, "stab_min": lo, "stab_max": hi,
                 "stab_orders": self.stab_orders[(k, t)]}
                for k, t, n, lo, hi in self.rows()
            ],
            "extremal": {"t2": self.t2, "ell": self.ell, "m": self.m,
                         "m_second": self.m_second, "m_third": self.m_third},
        }


def summarize(records: list[ClassRecord], k_max: int | None = None) -> ClassificationSummary:
    if not records:
        raise EnumerationError("nothing to summarize")
    v = records[0].v
    if any(r.v != v for r in records):
        raise EnumerationError("records from different dimensions")
    summary = ClassificationSummary(v=v, k_max=(1 << v) if k_max is None else k_max)
    for r in records:
        key = (r.k, r.type)
        summary.counts[key] = summary.counts.get(key, 0) + 1
        summary.stab_orders.setdefault(key, []).append(r.stab_order)
    for orders in summary.stab_orders.values():
        orders.sort()
    sizes = sorted({r.k for r in records}, reverse=True)
    # With fewer than three distinct sizes the lower ranks collapse onto the smallest.
    summary.m = sizes[0]
    summary.m_second = sizes[min(1, len(sizes) - 1)]
    summary.m_third = sizes[min(2, len(sizes) - 1)]
    summary.ell = sizes[-1]
    caps = [r.k for r in records if r.type.is_cap]
    summary.t2 = min(caps) if caps else None
    return summary


def format_table(summary: ClassificationSummary) -> str:
    """Text table laid out like the classification summary table."""
    lines = [f"{'v':>2} {'k':>3} {'Type':>4} {'n':>4}  Stab. group"]
    for k, t, n, lo, hi in summary.rows():
        stab = str(lo) if lo == hi else f"{lo}...{hi}"
        lines.append(f"{summary.v:>2} {k:>3} {t.value:>4} {n:>4}  {stab}")
    return "\n".join(lines)


def records_to_json(records: list[ClassRecord]) -> str:
    return json.dumps([r.to_json() for r in records], indent=1)


def records_from_json(text: str) -> list[ClassRecord]:
    return [ClassRecord.from_json(d) for d in json.loads(text)]


__all__ = [
    "ClassRecord",
    "ClassificationSummary",
    "EnumerationError",
    "EnumerationIncomplete",
    "brute_force_classes",
    "enumerate_classes",
    "format_table",
    "labeled_minimal_count",
    "make_record",
    "read_checkpoint",
    "records_from_json",
    "records_to_json",
    "summarize",
    "write_checkpoint",
]
