"""Coupling-based integration analysis for a small C#-like language (MiniOO).

Typical use::

    from integdistill import analyze, demo_source
    report = analyze({"demo.moo": demo_source()})
    print(render_paths_text(report.paths))
"""
from importlib import resources

from .coupling import class_metrics, find_coupling_constructors, find_coupling_methods, usage_stats
from .instrument import DEFAULT_TEMPLATE, ProbeTemplate, instrument, strip
from .invocations import find_invocation_points, summarize
from .lexer import LexError, tokenize
from .parser import ParseError, emit, parse
from .pathgen import build_tree, definers_of, enumerate_paths, execution_order, generate
from .report import (
    AnalysisReport, RunConfig, analyze, export_json, render_defuse_log, render_invocations,
    render_metrics, render_paths_text, render_text, run,
)
from .semantic import SemanticError, build_model, extract_def_use, extract_invocations, is_user_defined

__version__ = "0.1.0"


def demo_source() -> str:
    """The three-class demonstration program shipped with the package."""
    return resources.files(__package__).joinpath("data/demo.moo").read_text(encoding="utf-8")
