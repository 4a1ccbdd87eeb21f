"""JSON and markdown renderings of a verification run.

Both renderings are pure functions of the result list and the run settings,
so two runs with the same catalog and seed produce identical bytes.  Timings
are left out unless asked for.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from pathlib import Path

from .verify import STATUSES, CheckResult

FORMAT = "filiform-report"
VERSION = 1


def catalog_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def summary(results: list) -> dict:
    counts = Counter(r.status for r in results)
    return {s: counts.get(s, 0) for s in STATUSES}


def to_json(results: list, *, catalog_sha256: str, seed: int, samples: int, timing: bool = False) -> str:
    doc = {
        "format": FORMAT,
        "version": VERSION,
        "catalog_sha256": catalog_sha256,
        "seed": seed,
        "samples": samples,
        "summary": summary(results),
        "results": [r.to_dict(timing) for r in results],
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _cell(s: str) -> str:
    return s.replace("|", "\\|").replace("\n", " ")


def to_markdown(results: list, *, catalog_sha256: str, seed: int, samples: int, timing: bool = False) -> str:
    lines = ["# Verification report", "",
             f"Catalog sha256 `{catalog_sha256[:16]}`, seed {seed}, {samples} sample(s) per sampled check.", "",
             "| status | count |", "|---|---|"]
    lines += [f"| {s} | {n} |" for s, n in summary(results).items()]
    lines += ["", "## Results", ""]
    head = "| case | algebra | check | status | note |"
    rule = "|---|---|---|---|---|"
    if timing:
        head, rule = head + " ms |", rule + "---|"
    lines += [head, rule]
    for r in results:
        row = f"| {r.case_id} | {_cell(r.algebra)} | {r.check_kind} | {r.status} | {_cell(r.note)} |"
        if timing:
            row += f" {r.elapsed * 1000:.0f} |"
        lines.append(row)
    findings = [r for r in results if r.status in ("FINDING", "FAIL")]
    lines += ["", "## Findings", ""]
    if not findings:
        lines.append("None.")
    for r in findings:
        lines += [f"### {r.status}: {r.case_id} / {r.algebra} / {r.check_kind}", ""]
        if r.note:
            lines += [r.note, ""]
        lines.append("```")
        for idx, expr in r.residuals:
            label = ",".join(str(i) for i in idx) if isinstance(idx, tuple) else str(idx)
            lines.append(f"({label}): {expr}")
        lines += ["```", ""]
    return "\n".join(lines).rstrip("\n") + "\n"


def render(results: list, fmt: str, **kw) -> str:
    if fmt == "json":
        return to_json(results, **kw)
    if fmt in ("md", "markdown"):
        return to_markdown(results, **kw)
    raise ValueError(f"unknown report format {fmt!r}")


def from_json(text: str) -> list:
    doc = json.loads(text)
    out = []
    for d in doc["results"]:
        res = [(tuple(x["indices"]) if isinstance(x["indices"], list) else x["indices"], x["expr"])
               for x in d["residuals"]]
        out.append(CheckResult(d["case_id"], d["check_kind"], d["status"], d["algebra"], res, d.get("note", "")))
    return out
