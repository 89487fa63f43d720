"""Persistence: universes, families, and campaign reports.

Universes are line-delimited JSON (one header line, then one matching per
line); families and nested reports are single JSON documents; flat report
rows are CSV.  All output is deterministic for a given input: keys are
sorted and no wall-clock data is written unless explicitly requested.
"""

from __future__ import annotations

import csv
import json

from .matchings import DEFAULT_UNIVERSE_CAP, Family, Universe, enumerate_union_universe


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def save_universe(universe: Universe, path: str):
    with open(path, "w") as fh:
        header = {
            "kind": "universe",
            "parts": list(universe.parts),
            "sizes": list(universe.sizes),
            "count": len(universe),
        }
        fh.write(_dump(header) + "\n")
        for m in universe.items:
            fh.write(_dump([list(e) for e in m]) + "\n")


def load_universe(path: str, cap: int = DEFAULT_UNIVERSE_CAP) -> Universe:
    """Load and re-validate a universe file against a fresh enumeration."""
    with open(path) as fh:
        header = json.loads(fh.readline())
        if header.get("kind") != "universe":
            raise ValueError(f"{path} is not a universe file")
        universe = enumerate_union_universe(header["parts"], header["sizes"], cap)
        if len(universe) != header["count"]:
            raise ValueError(
                f"universe header count {header['count']} does not match "
                f"enumerated count {len(universe)}"
            )
        i = -1
        for i, line in enumerate(fh):
            m = tuple(tuple(x) for x in json.loads(line))
            if universe.items[i] != m:
                raise ValueError(f"{path}: item {i} is {m}, expected {universe.items[i]}")
        if i + 1 != header["count"]:
            raise ValueError(f"{path}: expected {header['count']} items, found {i + 1}")
    return universe


def save_family(fam: Family, path: str, form: str = "indices"):
    if form not in ("indices", "matchings"):
        raise ValueError(f"unknown family form {form!r}")
    doc = {
        "kind": "family",
        "universe": {"parts": list(fam.universe.parts), "sizes": list(fam.universe.sizes)},
        "form": form,
        "annotations": list(fam.annotations),
    }
    if form == "indices":
        doc["indices"] = fam.indices()
    else:
        doc["matchings"] = [[list(e) for e in m] for m in fam.members()]
    with open(path, "w") as fh:
        fh.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")


def load_family(path: str, cap: int = DEFAULT_UNIVERSE_CAP) -> Family:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("kind") != "family":
        raise ValueError(f"{path} is not a family file")
    universe = enumerate_union_universe(doc["universe"]["parts"], doc["universe"]["sizes"], cap)
    annotations = tuple(doc.get("annotations", ()))
    if doc["form"] == "indices":
        return Family.from_indices(universe, doc["indices"], annotations)
    ms = [tuple(tuple(x) for x in m) for m in doc["matchings"]]
    return Family.from_matchings(universe, ms, annotations)


REPORT_COLUMNS = [
    "campaign",
    "case",
    "parts",
    "sizes",
    "predicate",
    "expect",
    "universe_size",
    "formula",
    "max_size",
    "status",
    "maxima_count",
    "maxima_kinds",
    "outcome",
    "detail",
]


def write_report_csv(rows, path: str, include_timings: bool = False):
    columns = REPORT_COLUMNS + (["elapsed_s"] if include_timings else [])
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            flat = dict(row)
            for key in ("parts", "sizes"):
                if isinstance(flat.get(key), (list, tuple)):
                    flat[key] = ",".join(str(x) for x in flat[key])
            if isinstance(flat.get("maxima_kinds"), dict):
                flat["maxima_kinds"] = ";".join(
                    f"{k}={v}" for k, v in sorted(flat["maxima_kinds"].items())
                )
            writer.writerow(flat)


def write_report_json(doc, path: str):
    with open(path, "w") as fh:
        fh.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
