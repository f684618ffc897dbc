import pytest
from hypothesis import HealthCheck, given, settings

from integdistill.parser import ParseError, emit, parse
from integdistill.syntax import Assign, Call, If, IncDec, LocalDecl, Member, Name, This, While, walk_stmts
from programs import programs


def method(src, name):
    tree = parse(src)
    for cls in tree.classes:
        for m in cls.methods + cls.constructors:
            if m.name == name:
                return m
    raise KeyError(name)


def test_class_structure(demo):
    tree = parse(demo)
    assert [c.name for c in tree.classes] == ["A", "B", "C"]
    b = tree.classes[1]
    assert b.base_names == ("A",)
    assert [m.name for m in b.methods] == ["Add", "BM1", "BM2"]
    assert [len(c.params) for c in b.constructors] == [0, 1]
    assert b.methods[2].signature == "BM2(int test,A a, int x1, int x2, int x3)"
    c = tree.classes[2]
    assert [d.name for fd in c.field_decls for d in fd.declarators] == ["var1", "var2", "var3", "var4", "var5"]


def test_statement_forms():
    src = """class K {
    int f;
    void M(K k) {
        int a = 1, b;
        this.f += a;
        f++;
        --a;
        if (a < 2) f = 3; else { k.M(this); }
        while (f) { a = a - 1; }
        return;
    }
}"""
    body = method(src, "M").body.stmts
    assert isinstance(body[0], LocalDecl) and [d.name for d in body[0].declarators] == ["a", "b"]
    assert isinstance(body[1], Assign) and body[1].op == "+=" and isinstance(body[1].target, Member)
    assert isinstance(body[1].target.target, This)
    assert isinstance(body[2], IncDec) and not body[2].prefix and isinstance(body[2].target, Name)
    assert isinstance(body[3], IncDec) and body[3].prefix
    assert isinstance(body[4], If) and body[4].orelse is not None
    assert isinstance(body[5], While)


def test_call_text_and_lines():
    src = "class K {\n void M() {\n  x.Go(1,\n     2);\n }\n}\n"
    call = method(src, "M").body.stmts[0].expr
    assert isinstance(call, Call)
    assert (call.text, call.line, call.name) == ("x.Go(1, 2)", 3, "Go")


def test_spans_point_at_first_token(demo):
    tree = parse(demo)
    for cls in tree.classes:
        for m in cls.methods + cls.constructors:
            for stmt in walk_stmts(m.body):
                first_line = demo.count("\n", 0, stmt.span.start) + 1
                assert first_line == stmt.span.start_line
                assert demo[stmt.span.start:stmt.span.end].strip() == demo[stmt.span.start:stmt.span.end]


@pytest.mark.parametrize("src, message, line", [
    ("class A { int x }", "expected ';'", 1),
    ("class A {\n void M() { 3 = x; }\n}", "invalid assignment target", 2),
    ("class A {\n void M( { }\n}", "expected", 2),
    ("class A {", "expected '}', found end of file", 1),
    ("clas A { }", "expected 'class'", 1),
])
def test_parse_errors(src, message, line):
    with pytest.raises(ParseError) as info:
        parse(src, "bad.moo")
    assert message in str(info.value)
    assert info.value.line == line
    assert str(info.value).startswith("bad.moo:")


def test_empty_program():
    tree = parse("  // nothing here\n")
    assert tree.classes == () or tree.classes == []
    assert emit(tree) == "  // nothing here\n"


@settings(max_examples=150, deadline=None, suppress_health_check=list(HealthCheck))
@given(programs())
def test_roundtrip_random(src):
    assert emit(parse(src)) == src
