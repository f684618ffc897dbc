"""Timing probes around invocation points, and their removal.

Probes are whole lines ending in ``// @idprobe``.  When the wrapped statement
shares its line with other code, the line is split and the split point is
marked with ``// @idprobe-join`` so :func:`strip` can rejoin it byte for byte.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .invocations import InvocationPoint
from .parser import ParseError, parse

MARKER = "// @idprobe"
JOIN_MARKER = "// @idprobe-join"

_PROBE_LINE = re.compile(r"^[^\n]*" + re.escape(MARKER) + r"[ \t]*(?:\r?\n|\Z)", re.M)
_JOIN = re.compile(" " + re.escape(JOIN_MARKER) + r"\r?\n")
_PLACEHOLDERS = re.compile(r"\{(id|line)\}")


class InstrumentError(Exception):
    pass


@dataclass(frozen=True)
class ProbeTemplate:
    before: tuple[str, ...]
    after: tuple[str, ...]

    def __post_init__(self):
        for line in self.before + self.after:
            if "\n" in line or "\r" in line:
                raise ValueError(f"probe template lines must be single lines: {line!r}")
            if MARKER in line:
                raise ValueError("probe template lines must not contain the probe marker")

    @staticmethod
    def _fill(line: str, probe_id: int, source_line: int) -> str:
        values = {"id": str(probe_id), "line": str(source_line)}
        return _PLACEHOLDERS.sub(lambda m: values[m.group(1)], line)

    def render_before(self, probe_id: int, source_line: int) -> list[str]:
        return [self._fill(t, probe_id, source_line) for t in self.before]

    def render_after(self, probe_id: int, source_line: int) -> list[str]:
        return [self._fill(t, probe_id, source_line) for t in self.after]


DEFAULT_TEMPLATE = ProbeTemplate(
    before=("int probeStart{id} = Clock.now();",),
    after=(
        "int probeElapsed{id} = Clock.now() - probeStart{id};",
        'Console.WriteLine("Line {0} took {1}", {line}, probeElapsed{id});',
    ),
)


@dataclass(frozen=True)
class Probe:
    id: int
    line: int
    text: str


@dataclass
class InstrumentationResult:
    text: str
    probes: list[Probe] = field(default_factory=list)


def _newline_of(source: str) -> str:
    return "\r\n" if "\r\n" in source else "\n"


def _line_bounds(source: str, pos: int) -> tuple[int, int]:
    start = source.rfind("\n", 0, pos) + 1
    end = source.find("\n", pos)
    return start, len(source) if end < 0 else end


def _indent_at(source: str, pos: int) -> str:
    start, end = _line_bounds(source, pos)
    line = source[start:end]
    return line[: len(line) - len(line.lstrip(" \t"))]


def _check_point(source: str, point: InvocationPoint) -> None:
    span = point.raw.span
    written = " ".join(source[span.start:span.end].split())
    if written != " ".join(point.text.split()):
        raise InstrumentError(
            f"invocation at line {point.line} ({point.text!r}) not found in source; "
            "was the source changed after analysis?"
        )


def instrument(
    source: str,
    points: Iterable[InvocationPoint],
    template: ProbeTemplate = DEFAULT_TEMPLATE,
    path: str = "<string>",
) -> InstrumentationResult:
    """Wrap the statement holding each point with before/after probe lines.

    Probe ids count from 1 in source order within each class, so ids are
    unique inside every method body.
    """
    points = sorted(points, key=lambda p: (p.raw.span.start, p.raw.span.end))
    if not points:
        return InstrumentationResult(source, [])
    for p in points:
        _check_point(source, p)

    nl = _newline_of(source)
    counters: dict[str, int] = {}
    probes = []
    for p in points:
        counters[p.enclosing_class] = counters.get(p.enclosing_class, 0) + 1
        probes.append(Probe(counters[p.enclosing_class], p.line, p.text))

    # group probes by the statement they wrap, keeping id order
    groups: dict[tuple[int, int], list[Probe]] = {}
    for point, probe in zip(points, probes):
        span = point.raw.stmt_span
        groups.setdefault((span.start, span.end), []).append(probe)

    # (position, order key, text); afters sort before befores at one position
    inserts: list[tuple[int, tuple, str]] = []
    for (start, end), group in groups.items():
        indent = _indent_at(source, start)

        def lines(rendered: Sequence[str]) -> str:
            return "".join(f"{indent}{text} {MARKER}{nl}" for text in rendered)

        before = lines([t for pr in group for t in template.render_before(pr.id, pr.line)])
        after = lines([t for pr in reversed(group) for t in template.render_after(pr.id, pr.line)])

        line_start, _ = _line_bounds(source, start)
        if source[line_start:start].strip(" \t") == "":
            inserts.append((line_start, (1, start), before))
        else:
            inserts.append((start, (1, start), f" {JOIN_MARKER}{nl}{before}"))

        _, line_end = _line_bounds(source, end)
        rest = source[end:line_end].rstrip("\r").strip(" \t")
        if rest == "" or rest.startswith("//"):
            if line_end == len(source):
                raise InstrumentError(f"statement at offset {end} ends the file without a newline")
            inserts.append((line_end + 1, (0, -start), after))
        else:
            inserts.append((end, (0, -start), f" {JOIN_MARKER}{nl}{after}"))

    inserts.sort(key=lambda item: (item[0], item[1]))
    out, cursor = [], 0
    for pos, _, text in inserts:
        out.append(source[cursor:pos])
        out.append(text)
        cursor = pos
    out.append(source[cursor:])
    text = "".join(out)

    try:
        parse(text, path)
    except ParseError as exc:
        raise InstrumentError(f"instrumented output does not parse: {exc}") from exc
    return InstrumentationResult(text, probes)


def strip(source: str) -> str:
    """Remove every probe line and undo every line split made by :func:`instrument`."""
    return _JOIN.sub("", _PROBE_LINE.sub("", source))
