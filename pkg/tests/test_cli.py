import json

import pytest

from integdistill.cli import main
from integdistill.instrument import MARKER


@pytest.fixture
def demo_file(tmp_path, demo):
    path = tmp_path / "demo.moo"
    path.write_text(demo, encoding="utf-8")
    return path


def test_default_prints_all_reports(demo_file, capsys):
    assert main([str(demo_file)]) == 0
    out = capsys.readouterr().out
    for marker in ("Test Path Number: 9", "From CM1 due to used variable:var4", "---- Invocations---", "Most used class: A"):
        assert marker in out


def test_selected_reports(demo_file, capsys):
    assert main([str(demo_file), "--defuse"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("From CM7") and "Invocations" not in out


def test_out_dir_and_json(demo_file, tmp_path):
    out = tmp_path / "out"
    assert main([str(demo_file), "--out", str(out), "--json", str(out / "r.json")]) == 0
    assert (out / "report.txt").read_text().startswith("Test Path Number: 1")
    assert json.loads((out / "r.json").read_text())["usage"]["most_used"] == "A"


def test_instrument_then_strip(demo_file, demo, tmp_path):
    assert main([str(demo_file), "--instrument", "--paths"]) == 0
    inst = tmp_path / "demo.instrumented.moo"
    assert MARKER in inst.read_text()
    assert demo_file.read_text() == demo  # original untouched

    assert main([str(inst), "--strip", "--paths"]) == 0
    assert (tmp_path / "demo.instrumented.stripped.moo").read_text() == demo


def test_instrument_in_place(demo_file, demo):
    assert main([str(demo_file), "--instrument", "--in-place", "--metrics"]) == 0
    assert MARKER in demo_file.read_text()
    assert main([str(demo_file), "--strip", "--in-place", "--metrics"]) == 0
    assert demo_file.read_text() == demo


def test_directory_input_skips_generated_files(tmp_path, demo, capsys):
    (tmp_path / "a.moo").write_text(demo)
    (tmp_path / "a.instrumented.moo").write_text("class Junk {")
    assert main([str(tmp_path), "--metrics"]) == 0


def test_builtin_classes_from_config(tmp_path, capsys):
    src = tmp_path / "k.moo"
    src.write_text("class K { void M() { Math.Abs(1); } }\n")
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# extra platform classes\nbuiltin_classes = Math\n")
    assert main([str(src), "--invocations", "--config", str(cfg)]) == 0
    assert "Invocation Class:Math      Not a user-defined class!" in capsys.readouterr().out


def test_probe_template_from_config(demo_file, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("probe_before = int t{id} = Clock.now();\nprobe_after = Console.WriteLine({line}, t{id});\n")
    assert main([str(demo_file), "--instrument", "--config", str(cfg), "--paths"]) == 0
    text = (tmp_path / "demo.instrumented.moo").read_text()
    assert f"int t3 = Clock.now(); {MARKER}" in text and f"Console.WriteLine(58, t3); {MARKER}" in text


@pytest.mark.parametrize("content, code, where", [
    ("class A { int x }", 1, "bad.moo:1:17:"),
    ('class A {\n void M() { x = "open; } }', 1, "bad.moo:2:17:"),
    ("class A { }\nclass A { }", 2, "bad.moo:2:"),
])
def test_error_exit_codes(tmp_path, content, code, where, capsys):
    src = tmp_path / "bad.moo"
    src.write_text(content)
    assert main([str(src)]) == code
    err = capsys.readouterr().err
    assert err.startswith("integdistill: error: ") and where in err


def test_missing_file_is_io_error(tmp_path, capsys):
    assert main([str(tmp_path / "nope.moo")]) == 3


@pytest.mark.parametrize("argv", [
    [],
    ["--paths"],
    ["--bogus-flag", "x.moo"],
    ["x.moo", "--instrument", "--strip"],
])
def test_usage_errors_are_config_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # raised by argparse itself
        code = exc.code
    assert code == 4


def test_directory_without_sources(tmp_path, capsys):
    assert main([str(tmp_path)]) == 4
    assert "no .moo input files" in capsys.readouterr().err


def test_bad_config(tmp_path, demo_file, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("colour = blue\n")
    assert main([str(demo_file), "--config", str(cfg)]) == 4
    cfg.write_text(f"probe_before = x; {MARKER}\n")
    assert main([str(demo_file), "--config", str(cfg)]) == 4


def test_probe_that_breaks_syntax(tmp_path, demo_file, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("probe_before = int = ;\n")
    assert main([str(demo_file), "--instrument", "--config", str(cfg)]) == 4
    assert "does not parse" in capsys.readouterr().err
