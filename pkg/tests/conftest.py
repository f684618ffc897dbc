from __future__ import annotations

import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from integdistill import analyze, demo_source  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
ELISION = re.compile(r"^\s*(\.\.\.|\.)\s*$")


def normalize(text: str) -> list[str]:
    """Lines with runs of spaces/tabs collapsed and trailing whitespace dropped."""
    return [re.sub(r"[ \t]+", " ", line).rstrip() for line in text.splitlines()]


def golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


def fragments(text: str, gaps_after: tuple[int, ...] = ()) -> list[list[str]]:
    """Split golden text into runs of lines separated by elision lines.

    *gaps_after* lists 1-based line numbers after which the golden text omits
    content without marking it.
    """
    out: list[list[str]] = [[]]
    for n, line in enumerate(normalize(text), start=1):
        if ELISION.match(line):
            if out[-1]:
                out.append([])
            continue
        out[-1].append(line)
        if n in gaps_after:
            out.append([])
    return [f for f in out if f]


def contains_in_order(output: str, frags: list[list[str]]) -> tuple[bool, str]:
    """True when every fragment occurs as a contiguous run, in order."""
    lines = normalize(output)
    pos = 0
    for frag in frags:
        for i in range(pos, len(lines) - len(frag) + 1):
            if lines[i:i + len(frag)] == frag:
                pos = i + len(frag)
                break
        else:
            return False, "missing fragment:\n" + "\n".join(frag)
    return True, ""


@pytest.fixture(scope="session")
def demo() -> str:
    return demo_source()


@pytest.fixture(scope="session")
def demo_report(demo):
    return analyze({"demo.moo": demo})


# -- acceptance bookkeeping -------------------------------------------------

_CRITERIA: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion a test belongs to")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "_criterion", None)
    if marker is not None:
        n, title = marker
        _CRITERIA.setdefault(n, (title, []))[1].append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep._criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, results = _CRITERIA[n]
        verdict = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  {title} ({sum(results)}/{len(results)} checks)")
