"""JSON reading and writing for instances and schedules.

An instance document has three members: "machines", "jobs" (each with
"processing" and optional "release"/"due"), and "lags" (each with "job",
"from", "to", "min" and an optional "max", where null or absence means the
lag has no upper bound). Unknown members are rejected at every level. A
schedule document is {"starts": [[...]]}. Serialization is canonical, so
identical values produce byte-identical documents.
"""

from __future__ import annotations

import json

from .model import (
    UNBOUNDED,
    Instance,
    InvalidInstanceError,
    Schedule,
    SchedulingError,
    TimeLag,
    validate_instance,
)


class FormatError(SchedulingError):
    """The document is malformed JSON or violates the schema."""


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _object(value, allowed: set[str], where: str) -> dict:
    if not isinstance(value, dict):
        raise FormatError(f"{where}: expected an object")
    for key in value:
        if key not in allowed:
            raise FormatError(f"{where}: unknown member {key!r}")
    return value


def _int(value, where: str) -> int:
    # bool is a subclass of int; true/false are not integers here
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise FormatError(f"{where}: expected a list")
    return value


def _column(values: list, name: str) -> list | None:
    """All-or-none per-job field: None when absent everywhere."""
    present = [v is not None for v in values]
    if not any(present):
        return None
    if not all(present):
        i = present.index(False)
        raise FormatError(f"jobs[{i}].{name}: set for some jobs but not all")
    return values


def parse_instance(text: str) -> Instance:
    """Parse an instance document and return a validated Instance.

    Structural problems (wrong types, unknown or missing members) raise
    FormatError naming the offending field; a well-formed document that
    describes an invalid instance raises InvalidInstanceError with the
    full defect list.
    """
    doc = _object(_load(text), {"machines", "jobs", "lags"}, "document")
    for key in ("machines", "jobs"):
        if key not in doc:
            raise FormatError(f"document: {key!r} is required")
    m = _int(doc["machines"], "machines")

    p, release, due = [], [], []
    for i, job in enumerate(_list(doc["jobs"], "jobs")):
        where = f"jobs[{i}]"
        _object(job, {"processing", "release", "due"}, where)
        if "processing" not in job:
            raise FormatError(f"{where}: 'processing' is required")
        row = _list(job["processing"], f"{where}.processing")
        p.append([_int(x, f"{where}.processing[{k}]") for k, x in enumerate(row)])
        release.append(_int(job["release"], f"{where}.release") if "release" in job else None)
        due.append(_int(job["due"], f"{where}.due") if "due" in job else None)

    lags = []
    for k, lag in enumerate(_list(doc.get("lags", []), "lags")):
        where = f"lags[{k}]"
        _object(lag, {"job", "from", "to", "min", "max"}, where)
        for key in ("job", "from", "to", "min"):
            if key not in lag:
                raise FormatError(f"{where}: {key!r} is required")
        max_lag = lag.get("max")
        lags.append(
            TimeLag(
                job=_int(lag["job"], f"{where}.job"),
                from_op=_int(lag["from"], f"{where}.from"),
                to_op=_int(lag["to"], f"{where}.to"),
                min_lag=_int(lag["min"], f"{where}.min"),
                max_lag=UNBOUNDED if max_lag is None else _int(max_lag, f"{where}.max"),
            )
        )

    inst = Instance(
        p=p,
        lags=tuple(lags),
        release=_column(release, "release"),
        due=_column(due, "due"),
        n=len(p),
        m=m,
    )
    defects = validate_instance(inst)
    if defects:
        raise InvalidInstanceError(defects)
    return inst


def serialize_instance(inst: Instance) -> str:
    """Render an Instance as a canonical instance document (two-space indent,
    trailing newline, "max": null for unbounded lags)."""
    jobs = []
    for i in range(inst.n):
        job: dict = {"processing": [int(x) for x in inst.p[i]]}
        if inst.release is not None:
            job["release"] = int(inst.release[i])
        if inst.due is not None:
            job["due"] = int(inst.due[i])
        jobs.append(job)
    lags = [
        {
            "job": lag.job,
            "from": lag.from_op,
            "to": lag.to_op,
            "min": lag.min_lag,
            "max": None if lag.max_lag is UNBOUNDED else lag.max_lag,
        }
        for lag in inst.lags
    ]
    doc = {"machines": inst.m, "jobs": jobs, "lags": lags}
    return json.dumps(doc, indent=2) + "\n"


def parse_schedule(text: str, inst: Instance) -> Schedule:
    """Parse {"starts": [[...]]} with the instance's n x m shape."""
    doc = _object(_load(text), {"starts"}, "document")
    if "starts" not in doc:
        raise FormatError("document: 'starts' is required")
    rows = _list(doc["starts"], "starts")
    if len(rows) != inst.n:
        raise FormatError(f"starts: expected {inst.n} rows, got {len(rows)}")
    start = []
    for i, row in enumerate(rows):
        row = _list(row, f"starts[{i}]")
        if len(row) != inst.m:
            raise FormatError(f"starts[{i}]: expected {inst.m} entries, got {len(row)}")
        start.append([_int(x, f"starts[{i}][{k}]") for k, x in enumerate(row)])
    return Schedule(start)


def serialize_schedule(sched: Schedule) -> str:
    """Render a Schedule as a canonical schedule document."""
    doc = {"starts": [[int(x) for x in row] for row in sched.start]}
    return json.dumps(doc, indent=2) + "\n"
