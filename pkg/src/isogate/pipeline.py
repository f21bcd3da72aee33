"""Configuration ingestion, check orchestration, and report emission.

A run loads an optional JSON configuration (externally supplied group
generators, modular-polynomial file paths, prime caps), executes every
registry row matching an id-prefix filter, and serializes the outcome.
Rows are isolated pure computations over the immutable configuration, so
a bounded worker pool may execute them concurrently; the report orders
results by id regardless of execution order, excludes wall times from
the JSON form, and sorts all keys, which makes consecutive runs over the
same configuration byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .checks import compare_payload, plain, registry
from .gl2 import GroupSizeLimitError, InvalidGeneratorError, group_from_json
from .modpoly import load_modpoly

STATUSES = ("Pass", "Fail", "Indeterminate", "Literature")

# the group names the registry knows how to consume, with the modulus
# each consumer requires; a configured group under one of these names
# with a different modulus is a load error, not a runtime surprise
REQUIRED_GROUP_MODULI = {
    "mod5_split_index2": 5,
    "mod5_octahedral": 5,
    "mod13_octahedral": 13,
    "mod27_exceptional": 27,
}

_CONFIG_SECTIONS = ("groups", "modular_polynomials", "prime_caps")


class ConfigError(ValueError):
    """A rejected configuration document; the message starts with the
    path into the document where the problem sits."""


class Config:
    """A validated, immutable-by-convention run configuration.

    `groups` maps names to realized matrix groups.  Modular-polynomial
    tables load lazily by level and are cached.  `digest` is the sha256
    of the source document bytes, so reports pin the exact configuration
    they ran under.
    """

    __slots__ = ("groups", "prime_caps", "digest", "_modpoly_paths",
                 "_modpoly_cache")

    def __init__(self, groups=None, modpoly_paths=None, prime_caps=None,
                 digest=None):
        self.groups = dict(groups or {})
        self.prime_caps = dict(prime_caps or {})
        self._modpoly_paths = dict(modpoly_paths or {})
        self._modpoly_cache = {}
        if digest is None:
            digest = hashlib.sha256(b"{}").hexdigest()
        self.digest = digest

    @classmethod
    def empty(cls):
        """The configuration of a run without any external data."""
        return cls()

    @property
    def modular_polynomial_levels(self):
        return sorted(self._modpoly_paths)

    def has_modular_polynomial(self, level):
        return level in self._modpoly_paths

    def modular_polynomial(self, level):
        if level not in self._modpoly_cache:
            path = self._modpoly_paths[level]
            self._modpoly_cache[level] = load_modpoly(path, level)
        return self._modpoly_cache[level]

    def __repr__(self):
        return ("Config(groups=%s, modular_polynomials=%s)"
                % (sorted(self.groups), self.modular_polynomial_levels))


def load_config(path):
    """Read and validate a JSON configuration document.

    Fields: "groups" (name -> {"modulus": m, "generators": [...]}),
    "modular_polynomials" (level -> file path, relative paths resolved
    against the document's directory), "prime_caps" (name -> positive
    int).  All fields are optional; rows whose resources are absent are
    reported Indeterminate by the runner.  Any malformed entry raises
    ConfigError naming the path into the document.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ConfigError("%s: cannot read configuration: %s"
                          % (path, exc)) from None
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as exc:
        raise ConfigError("%s: not valid JSON: %s" % (path, exc)) from None
    if not isinstance(doc, dict):
        raise ConfigError("%s: the top level must be a JSON object" % path)
    unknown = sorted(set(doc) - set(_CONFIG_SECTIONS))
    if unknown:
        raise ConfigError("%s: unknown section(s) %s; expected only %s"
                          % (path, ", ".join(unknown),
                             ", ".join(_CONFIG_SECTIONS)))

    groups = {}
    raw_groups = doc.get("groups", {})
    if not isinstance(raw_groups, dict):
        raise ConfigError("groups: expected an object of named groups")
    for name in sorted(raw_groups):
        spec = raw_groups[name]
        where = "groups.%s" % name
        if not isinstance(spec, dict):
            raise ConfigError("%s: expected an object with modulus and "
                              "generators" % where)
        try:
            group = group_from_json(spec)
        except (InvalidGeneratorError, GroupSizeLimitError) as exc:
            raise ConfigError("%s.generators: %s" % (where, exc)) from None
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError("%s: malformed group description: %s"
                              % (where, exc)) from None
        required = REQUIRED_GROUP_MODULI.get(name)
        if required is not None and group.modulus != required:
            raise ConfigError(
                "%s.modulus: checks consuming this name need modulus %d, "
                "got %d" % (where, required, group.modulus))
        groups[name] = group

    modpoly_paths = {}
    raw_tables = doc.get("modular_polynomials", {})
    if not isinstance(raw_tables, dict):
        raise ConfigError("modular_polynomials: expected an object keyed "
                          "by level")
    for key in sorted(raw_tables):
        where = "modular_polynomials.%s" % key
        try:
            level = int(key)
        except (TypeError, ValueError):
            raise ConfigError("%s: level keys must be integers"
                              % where) from None
        if level < 2:
            raise ConfigError("%s: level must be at least 2" % where)
        rel = raw_tables[key]
        if not isinstance(rel, str):
            raise ConfigError("%s: expected a file path string" % where)
        file_path = Path(rel)
        if not file_path.is_absolute():
            file_path = path.parent / file_path
        if not file_path.is_file():
            raise ConfigError("%s: no such file: %s" % (where, file_path))
        modpoly_paths[level] = file_path

    prime_caps = {}
    raw_caps = doc.get("prime_caps", {})
    if not isinstance(raw_caps, dict):
        raise ConfigError("prime_caps: expected an object of named caps")
    for key in sorted(raw_caps):
        value = raw_caps[key]
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ConfigError("prime_caps.%s: expected a positive integer"
                              % key)
        prime_caps[key] = value

    return Config(groups, modpoly_paths, prime_caps,
                  hashlib.sha256(raw).hexdigest())


class CheckResult:
    """One executed registry row.

    Fail results always carry a diff of expectation against computed;
    Literature results always carry their citation.  Wall time is kept
    for the human-readable table but excluded from the JSON form and
    from equality, so reports stay deterministic.
    """

    __slots__ = ("id", "kind", "status", "payload", "diff", "citation",
                 "reason", "wall_time")

    def __init__(self, id, kind, status, payload=None, diff=None,
                 citation=None, reason=None, wall_time=None):
        if status not in STATUSES:
            raise ValueError("unknown status %r" % (status,))
        if status == "Fail" and not diff:
            raise ValueError("a Fail result must carry a diff")
        if status == "Literature" and not citation:
            raise ValueError("a Literature result must carry a citation")
        self.id = id
        self.kind = kind
        self.status = status
        self.payload = payload if payload is not None else {}
        self.diff = diff
        self.citation = citation
        self.reason = reason
        self.wall_time = wall_time

    def to_json_obj(self):
        return {"id": self.id, "kind": self.kind, "status": self.status,
                "payload": self.payload, "diff": self.diff,
                "citation": self.citation, "reason": self.reason}

    def __eq__(self, other):
        if not isinstance(other, CheckResult):
            return NotImplemented
        return self.to_json_obj() == other.to_json_obj()

    def __repr__(self):
        return "CheckResult(%s: %s)" % (self.id, self.status)


class RunReport:
    """All results of one run, ordered by id, with summary counts."""

    __slots__ = ("version", "config_digest", "results", "summary")

    def __init__(self, version, config_digest, results):
        self.version = version
        self.config_digest = config_digest
        self.results = sorted(results, key=lambda r: r.id)
        counts = {status: 0 for status in STATUSES}
        for result in self.results:
            counts[result.status] += 1
        self.summary = {"total": len(self.results),
                        "pass": counts["Pass"],
                        "fail": counts["Fail"],
                        "indeterminate": counts["Indeterminate"],
                        "literature": counts["Literature"]}

    @property
    def failed(self):
        """Whether any row failed (Indeterminate does not count)."""
        return self.summary["fail"] > 0

    def to_json_obj(self):
        return {"version": self.version,
                "config_digest": self.config_digest,
                "summary": self.summary,
                "results": [r.to_json_obj() for r in self.results]}

    def __eq__(self, other):
        if not isinstance(other, RunReport):
            return NotImplemented
        return self.to_json_obj() == other.to_json_obj()

    def __repr__(self):
        return "RunReport(%s)" % (self.summary,)


def _missing_requirements(case, config):
    missing = []
    for kind, name in case.requires:
        if kind == "group":
            if name not in config.groups:
                missing.append("configuration supplies no group %r" % name)
        elif kind == "modpoly":
            if not config.has_modular_polynomial(name):
                missing.append("configuration supplies no modular-"
                               "polynomial file for level %s" % name)
        else:
            missing.append("unknown requirement kind %r" % kind)
    return missing


def _execute(case, config):
    start = time.perf_counter()
    if case.kind == "literature":
        return CheckResult(case.id, case.kind, "Literature",
                           payload={"claim": case.inputs.get("claim", "")},
                           citation=case.citation,
                           wall_time=time.perf_counter() - start)
    missing = _missing_requirements(case, config)
    if missing:
        return CheckResult(case.id, case.kind, "Indeterminate",
                           reason="; ".join(missing),
                           wall_time=time.perf_counter() - start)
    try:
        payload = case.run(case, config)
    except Exception as exc:  # contract: a crashing check fails the row,
        # never the run
        return CheckResult(
            case.id, case.kind, "Fail",
            diff={"execution": {"expected": plain(case.expectation),
                                "computed": "raised %s: %s"
                                            % (type(exc).__name__, exc)}},
            reason="execution raised %s" % type(exc).__name__,
            wall_time=time.perf_counter() - start)
    diff = compare_payload(case.expectation, payload)
    return CheckResult(case.id, case.kind,
                       "Pass" if not diff else "Fail",
                       payload=plain(payload), diff=diff or None,
                       wall_time=time.perf_counter() - start)


def run_checks(config=None, filter=None, workers=None):
    """Execute every registry row whose id starts with the filter.

    `workers` bounds the thread pool; 1 forces serial execution.  The
    report is identical either way: results are merged and ordered by
    id, and every executor is a pure computation over the configuration.
    """
    if config is None:
        config = Config.empty()
    cases = [case for case in registry()
             if filter is None or case.id.startswith(filter)]
    if workers is None:
        workers = 4
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if workers == 1 or len(cases) < 2:
        results = [_execute(case, config) for case in cases]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _execute(c, config), cases))
    return RunReport(__version__, config.digest, results)


def _text_note(result):
    if result.status == "Fail":
        if result.diff:
            return "diff: " + ", ".join(sorted(result.diff))
        return result.reason or ""
    if result.status == "Indeterminate":
        return result.reason or ""
    if result.status == "Literature":
        return result.citation or ""
    return ""


def emit_report(report, format="json"):
    """Serialize a report: stable-schema JSON or a human-readable table.

    The JSON form is deterministic: keys sorted, results ordered by id,
    wall times excluded.  The text form includes per-row wall times and
    is meant for eyes, not for diffing.
    """
    if format == "json":
        return json.dumps(report.to_json_obj(), indent=2,
                          sort_keys=True) + "\n"
    if format != "text":
        raise ValueError("unknown report format %r" % (format,))
    rows = [("id", "status", "time", "note")]
    for result in report.results:
        wall = ("%.2fs" % result.wall_time
                if result.wall_time is not None else "-")
        rows.append((result.id, result.status, wall, _text_note(result)))
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join([row[0].ljust(widths[0]),
                                row[1].ljust(widths[1]),
                                row[2].rjust(widths[2]),
                                row[3]]).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths) + "  " + "-" * 4)
    summary = report.summary
    lines.append("")
    lines.append("total %d: %d pass, %d fail, %d indeterminate, "
                 "%d literature" % (summary["total"], summary["pass"],
                                    summary["fail"],
                                    summary["indeterminate"],
                                    summary["literature"]))
    lines.append("version %s, config %s" % (report.version,
                                            report.config_digest))
    return "\n".join(lines) + "\n"


def report_from_json(text):
    """Rebuild a RunReport from its JSON serialization (round trip)."""
    obj = json.loads(text)
    results = [CheckResult(entry["id"], entry["kind"], entry["status"],
                           payload=entry.get("payload"),
                           diff=entry.get("diff"),
                           citation=entry.get("citation"),
                           reason=entry.get("reason"))
               for entry in obj["results"]]
    report = RunReport(obj["version"], obj["config_digest"], results)
    if report.summary != obj.get("summary", report.summary):
        raise ValueError("summary does not match the serialized results")
    return report
