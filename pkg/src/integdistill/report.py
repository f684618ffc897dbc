"""Pipeline orchestration, text rendering in the tool's report formats, JSON export."""
from __future__ import annotations

import contextlib
import glob
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .coupling import (
    ClassMetrics, CouplingMethod, UsageStats, class_metrics, find_coupling_constructors,
    find_coupling_methods, usage_stats,
)
from .instrument import DEFAULT_TEMPLATE, InstrumentationResult, InstrumentError, ProbeTemplate, instrument, strip
from .invocations import InvocationPoint, InvocationSummary, find_invocation_points, summarize
from .lexer import LexError
from .parser import ParseError, parse
from .pathgen import DefUseEdge, TestPath, generate
from .semantic import DEFAULT_BUILTIN_CLASSES, ProgramModel, SemanticError, build_model

log = logging.getLogger(__name__)

REPORTS = ("paths", "defuse", "invocations", "metrics")

# phase keys in pipeline order; the last six mirror the tool's performance table
PHASES = (
    "parse",
    "model",
    "finding_coupling_methods",
    "coupling_analytics",
    "test_case_generation",
    "invocation_analysis",
    "invocation_analysis_per_class",
    "code_instrumentation",
)

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_IO, EXIT_CONFIG = 0, 1, 2, 3, 4


class ConfigError(Exception):
    pass


@dataclass
class AnalysisReport:
    model: ProgramModel
    coupling_methods: list[CouplingMethod]
    coupling_constructors: list[CouplingMethod]
    paths: list[TestPath]
    defuse_edges: list[DefUseEdge]
    invocation_points: list[InvocationPoint]
    invocation_summary: InvocationSummary
    class_metrics: list[ClassMetrics]
    usage: UsageStats
    phase_timings: dict[str, float] = field(default_factory=dict)
    total_ms: float = 0.0
    instrumented: dict[str, InstrumentationResult] = field(default_factory=dict)


@dataclass
class RunConfig:
    inputs: list[str]
    reports: tuple[str, ...] = REPORTS
    instrumentation: str = "off"  # off | add | strip
    out_dir: Optional[str] = None
    json_path: Optional[str] = None
    in_place: bool = False
    builtin_classes: tuple[str, ...] = DEFAULT_BUILTIN_CLASSES
    template: ProbeTemplate = DEFAULT_TEMPLATE

    def validate(self) -> None:
        if not self.inputs:
            raise ConfigError("no input files given")
        unknown = set(self.reports) - set(REPORTS)
        if unknown:
            raise ConfigError(f"unknown report(s): {', '.join(sorted(unknown))}")
        if self.instrumentation not in ("off", "add", "strip"):
            raise ConfigError(f"bad instrumentation mode {self.instrumentation!r}")


# -- config file ------------------------------------------------------------

def load_config_file(path: str, config: RunConfig) -> RunConfig:
    """Apply ``key = value`` lines from *path* to *config*.

    Keys: ``builtin_classes`` (comma list, added to the defaults),
    ``probe_before`` and ``probe_after`` (repeat for several lines; any
    occurrence replaces the default template side).
    """
    builtins = list(config.builtin_classes)
    before: list[str] = []
    after: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{n}: expected key=value")
            key, value = key.strip(), value.strip()
            if key == "builtin_classes":
                builtins += [v.strip() for v in value.split(",") if v.strip() and v.strip() not in builtins]
            elif key == "probe_before":
                before.append(value)
            elif key == "probe_after":
                after.append(value)
            else:
                raise ConfigError(f"{path}:{n}: unknown key {key!r}")
    config.builtin_classes = tuple(builtins)
    if before or after:
        try:
            config.template = ProbeTemplate(
                tuple(before) or config.template.before, tuple(after) or config.template.after
            )
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    return config


def expand_inputs(inputs: list[str]) -> list[str]:
    """Files, directories (searched for ``*.moo``) and glob patterns, deduplicated."""
    files: list[str] = []
    for item in inputs:
        if os.path.isdir(item):
            found = sorted(
                str(p) for p in Path(item).rglob("*.moo")
                if not p.name.endswith((".instrumented.moo", ".stripped.moo"))
            )
        elif any(ch in item for ch in "*?["):
            found = sorted(glob.glob(item, recursive=True))
        else:
            found = [item]
        files += [f for f in found if f not in files]
    return files


# -- pipeline ---------------------------------------------------------------

class _Clock:
    def __init__(self):
        self.timings: dict[str, float] = {}

    @contextlib.contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + (time.perf_counter() - t0) * 1000.0


def analyze(
    sources: dict[str, str],
    builtin_classes=DEFAULT_BUILTIN_CLASSES,
    template: Optional[ProbeTemplate] = None,
) -> AnalysisReport:
    """Run every analysis phase over *sources* (path -> text), in order.

    Instrumentation only runs when a *template* is given.  Raises the
    first LexError, ParseError, SemanticError or InstrumentError met.
    """
    t_start = time.perf_counter()
    clock = _Clock()
    with clock.phase("parse"):
        trees = [parse(text, path) for path, text in sources.items()]
    with clock.phase("model"):
        model = build_model(trees, sources, builtin_classes)
    with clock.phase("finding_coupling_methods"):
        couplings = find_coupling_methods(model)
        ctor_couplings = find_coupling_constructors(model)
    with clock.phase("coupling_analytics"):
        metrics = [class_metrics(model, c) for c in model.ordered()]
        usage = usage_stats(model)
    with clock.phase("test_case_generation"):
        _, edges, paths = generate(model, couplings, ctor_couplings)
    with clock.phase("invocation_analysis"):
        points = find_invocation_points(model)
    with clock.phase("invocation_analysis_per_class"):
        summary = summarize(points, model)
    instrumented: dict[str, InstrumentationResult] = {}
    with clock.phase("code_instrumentation"):
        if template is not None:
            for path, text in sources.items():
                file_points = [p for p in points if model.classes[p.enclosing_class].source_path == path]
                instrumented[path] = instrument(text, file_points, template, path)
    report = AnalysisReport(
        model, couplings, ctor_couplings, paths, edges, points, summary, metrics, usage,
        instrumented=instrumented,
    )
    report.phase_timings = {k: clock.timings.get(k, 0.0) for k in PHASES}
    report.total_ms = (time.perf_counter() - t_start) * 1000.0
    return report


def render_text(report: AnalysisReport, reports=REPORTS) -> str:
    sections = []
    if "paths" in reports:
        sections.append(render_paths_text(report.paths))
    if "defuse" in reports:
        sections.append(render_defuse_log(report.defuse_edges))
    if "invocations" in reports:
        sections.append(render_invocations(report.invocation_points, report.invocation_summary))
    if "metrics" in reports:
        sections.append(render_metrics(report.class_metrics, report.usage))
    return "\n".join(s for s in sections if s)


def _read(path: str) -> str:
    with open(path, encoding="utf-8", newline="") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _sibling(path: str, suffix: str, out_dir: Optional[str]) -> str:
    p = Path(path)
    name = p.name[: -len(".moo")] if p.name.endswith(".moo") else p.name
    return str(Path(out_dir or p.parent) / f"{name}{suffix}")


def run(config: RunConfig, stdout=None, stderr=None) -> tuple[Optional[AnalysisReport], int]:
    """Execute the configured pipeline, write its outputs, return (report, exit code)."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def fail(code: int, message: str):
        print(f"integdistill: error: {message}", file=stderr)
        return None, code

    try:
        config.validate()
        files = expand_inputs(config.inputs)
        if not files:
            raise ConfigError("no .moo input files found in " + ", ".join(config.inputs))
    except ConfigError as exc:
        return fail(EXIT_CONFIG, str(exc))

    try:
        sources = {f: _read(f) for f in files}
        if config.out_dir:
            os.makedirs(config.out_dir, exist_ok=True)
        if config.instrumentation == "strip":
            for f, text in sources.items():
                sources[f] = strip(text)
                _write(f if config.in_place else _sibling(f, ".stripped.moo", config.out_dir), sources[f])
    except (OSError, UnicodeDecodeError) as exc:
        return fail(EXIT_IO, str(exc))

    try:
        template = config.template if config.instrumentation == "add" else None
        report = analyze(sources, config.builtin_classes, template)
    except (LexError, ParseError) as exc:
        return fail(EXIT_PARSE, str(exc))
    except SemanticError as exc:
        return fail(EXIT_SEMANTIC, str(exc))
    except InstrumentError as exc:
        return fail(EXIT_CONFIG, str(exc))
    log.debug("phase timings (ms): %s", report.phase_timings)

    try:
        for f, result in report.instrumented.items():
            _write(f if config.in_place else _sibling(f, ".instrumented.moo", config.out_dir), result.text)
        text = render_text(report, config.reports)
        if config.out_dir:
            _write(os.path.join(config.out_dir, "report.txt"), text)
        else:
            stdout.write(text)
        if config.json_path:
            _write(config.json_path, export_json(report))
    except OSError as exc:
        return fail(EXIT_IO, str(exc))
    return report, EXIT_OK


# -- text renderers ---------------------------------------------------------

def _lines(lines: list[str]) -> str:
    return "".join(line + "\n" for line in lines)


def render_paths_text(paths: list[TestPath]) -> str:
    lines = []
    for p in paths:
        if p.kind != "method":
            continue
        flag = " (self-coupling)" if _self_coupled(p) else ""
        lines.append(f"Test Path Number: {p.id} ----- Path Length:{p.length}{flag}")
        lines += [f"\t{m.owner}:{m.signature}" for m in p.nodes]
    ctor_paths = [p for p in paths if p.kind == "constructor"]
    if ctor_paths:
        lines.append("************* Constructors **********")
        for p in ctor_paths:
            lines.append(f"Test Path Number: {p.id}")
            lines += [f"\t{m.owner}: {m.signature}" for m in p.nodes]
    return _lines(lines)


def _self_coupled(path: TestPath) -> bool:
    root = path.nodes[0]
    return any(p.type_name == root.owner for p in root.params)


def render_defuse_log(edges: list[DefUseEdge]) -> str:
    return _lines([
        f"From {e.from_method.name} due to used variable:{e.field.name} --> "
        f"{e.to_method.name} which defines this variable."
        for e in edges
    ])


_IND = "       "


def render_invocations(points: list[InvocationPoint], summary: InvocationSummary) -> str:
    lines = ["---- Invocations---"]
    for p in points:
        target = f"Invocation Class:{p.target_class}"
        if not p.user_defined:
            target += "      Not a user-defined class!"
        lines += [
            f"{_IND}*Invocation Point Detected at Line:{p.line}*",
            f"{_IND}{p.text}",
            f"{_IND}{target}",
            f"{_IND}Current Class:{p.enclosing_class} - In method:{p.enclosing_method}",
            f"{_IND}Class object instance on which invocation detected:{p.receiver}",
            "",
        ]
    lines.append("---- End of Invocation analysis----")
    for cls in summary.classes:
        lines.append(
            f"Number of invocation points in class {cls.class_name}: {cls.total.total}"
            f" -- out of which {cls.total.user_defined} are User-Defined"
        )
        for name, _, c in cls.methods:
            lines.append(
                f"  Number of invocation points in method {name} is {c.total};"
                f" out of which {c.user_defined} are User-Defined"
            )
        for _, sig, c in cls.constructors:
            lines.append(
                f"  Number of invocation points in constructor {sig} is {c.total};"
                f" out of which {c.user_defined} are User-Defined"
            )
    return _lines(lines)


def render_metrics(metrics: list[ClassMetrics], usage: UsageStats) -> str:
    lines = []
    for m in metrics:
        n = m.class_name
        lines += [
            "-----",
            f"Class {n}",
            f"  Number of methods in Class {n}: {m.method_count}",
            f"  Number of constructors in Class {n}: {m.constructor_count}",
            f"  Maximum number of parameters among methods of class {n}: {m.max_params_over_methods}",
            f"  Coupling Degree of Class {n}: {m.coupling_degree}",
            f"  Bases of class {n}: {', '.join(m.base_names)}".rstrip(),
            f"  Number of base types of class {n}: {m.base_count}",
        ]
    lines.append("-----")
    top = usage.most_used
    lines.append(f"Most used class: {top if top is not None else '(none)'}")
    if top is not None:
        lines += [
            f"  {usage.times_as_method_parameter[top]} times as method parameter",
            f"  {usage.times_as_variable_type[top]} times as variable type inside methods",
        ]
    return _lines(lines)


def render_timings(report: AnalysisReport) -> str:
    lines = ["---- Phase timings (ms) ----"]
    lines += [f"  {k}: {v:.4f}" for k, v in report.phase_timings.items()]
    lines.append(f"  total: {report.total_ms:.4f}")
    return _lines(lines)


# -- JSON -------------------------------------------------------------------

def report_dict(report: AnalysisReport, include_timings: bool = True) -> dict:
    model = report.model
    doc = {
        "paths": [
            {
                "id": p.id,
                "kind": p.kind,
                "class": p.nodes[0].owner,
                "nodes": list(p.signatures),
                "length": p.length,
                "self_coupling": p.kind == "method" and _self_coupled(p),
            }
            for p in report.paths
        ],
        "defuse_edges": [
            {
                "class": e.from_method.owner,
                "from": e.from_method.name,
                "from_signature": e.from_method.signature,
                "field": e.field.name,
                "to": e.to_method.name,
                "to_signature": e.to_method.signature,
            }
            for e in report.defuse_edges
        ],
        "invocations": {
            "points": [
                {
                    "file": model.classes[p.enclosing_class].source_path,
                    "line": p.line,
                    "text": p.text,
                    "target_class": p.target_class,
                    "user_defined": p.user_defined,
                    "enclosing_class": p.enclosing_class,
                    "enclosing_method": p.enclosing_method,
                    "receiver": p.receiver,
                }
                for p in report.invocation_points
            ],
            "summary": [
                {
                    "class": c.class_name,
                    "total": c.total.total,
                    "user_defined": c.total.user_defined,
                    "methods": [
                        {"name": n, "signature": s, "total": k.total, "user_defined": k.user_defined}
                        for n, s, k in c.methods
                    ],
                    "constructors": [
                        {"name": n, "signature": s, "total": k.total, "user_defined": k.user_defined}
                        for n, s, k in c.constructors
                    ],
                }
                for c in report.invocation_summary.classes
            ],
        },
        "metrics": [
            {
                "class": m.class_name,
                "method_count": m.method_count,
                "constructor_count": m.constructor_count,
                "max_params": m.max_params_over_methods,
                "coupling_degree": m.coupling_degree,
                "bases": list(m.base_names),
                "base_count": m.base_count,
            }
            for m in report.class_metrics
        ],
        "usage": {
            "most_used": report.usage.most_used,
            "classes": [
                {
                    "class": name,
                    "as_method_parameter": report.usage.times_as_method_parameter[name],
                    "as_variable_type": report.usage.times_as_variable_type[name],
                }
                for name in model.declaration_order
            ],
        },
    }
    if include_timings:
        doc["timings"] = {**{k: round(v, 6) for k, v in report.phase_timings.items()},
                          "total": round(report.total_ms, 6)}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def export_json(report: AnalysisReport, include_timings: bool = True) -> str:
    return dumps(report_dict(report, include_timings))
