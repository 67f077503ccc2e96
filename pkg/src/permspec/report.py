"""Machine-readable test reports.

A report is a single JSON object with a schema tag.  Serialisation is
canonical (sorted keys, fixed separators, trailing newline, no
timestamps) so identical results produce byte-identical files, and float
fields round-trip exactly through repr.
"""

from __future__ import annotations

import json

from .permutation import TestResult

REPORT_SCHEMA = "permspec-test-report/1"

_FIELDS = (
    "observed_msi",
    "peak_frequency",
    "p_value",
    "wilson_low",
    "wilson_high",
    "exceedances",
    "permutations",
    "master_seed",
    "n",
    "confidence",
)


def render_report(result: TestResult) -> str:
    payload = {
        "schema": REPORT_SCHEMA,
        "observed_msi": result.observed_msi,
        "peak_frequency": result.peak_frequency,
        "p_value": result.p_value,
        "wilson_low": result.wilson_low,
        "wilson_high": result.wilson_high,
        "exceedances": result.exceedances,
        "permutations": result.n_permutations,
        "master_seed": result.master_seed,
        "n": result.n,
        "confidence": result.confidence,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_report(result: TestResult, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(render_report(result))


def parse_report(text: str) -> TestResult:
    payload = json.loads(text)
    if payload.get("schema") != REPORT_SCHEMA:
        raise ValueError(
            f"unsupported report schema {payload.get('schema')!r}, expected {REPORT_SCHEMA!r}"
        )
    for name in _FIELDS:
        if name not in payload:
            raise ValueError(f"report is missing field {name!r}")
    return TestResult(
        observed_msi=payload["observed_msi"],
        peak_frequency=payload["peak_frequency"],
        p_value=payload["p_value"],
        wilson_low=payload["wilson_low"],
        wilson_high=payload["wilson_high"],
        exceedances=payload["exceedances"],
        n_permutations=payload["permutations"],
        master_seed=payload["master_seed"],
        n=payload["n"],
        confidence=payload["confidence"],
    )


def read_report(path) -> TestResult:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_report(handle.read())
