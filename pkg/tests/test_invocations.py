from integdistill import build_model, find_invocation_points, parse, summarize


def analyze_points(src):
    m = build_model([parse(src)], {"<string>": src})
    return m, find_invocation_points(m)


def test_demo_points(demo):
    _, points = analyze_points(demo)
    assert [(p.line, p.enclosing_class, p.enclosing_method, p.target_class, p.user_defined) for p in points] == [
        (11, "B", "Add", "Console", False),
        (16, "B", "BM1", "Console", False),
        (39, "C", "CM2", "Console", False),
        (48, "C", "CM4", "Console", False),
        (58, "C", "CM6", "B", True),
        (59, "C", "CM6", "B", True),
    ]


def test_same_class_calls_are_not_points(demo):
    _, points = analyze_points(demo)
    # this.CM5() on line 60 and c3.CM4() on line 62 stay inside class C
    assert not {60, 62} & {p.line for p in points}


def test_summary_counts_zero_rows_and_constructors():
    src = """class Q { void Go() { } }
class K {
    K(Q q) { q.Go(); Console.WriteLine(); }
    void A() { }
    void B(Q q) { q.Go(); q.Go(); }
}"""
    m, points = analyze_points(src)
    s = summarize(points, m)
    k = s.for_class("K")
    assert (k.total.total, k.total.user_defined) == (4, 3)
    assert [(n, c.total, c.user_defined) for n, _, c in k.methods] == [("A", 0, 0), ("B", 2, 2)]
    assert [(sig, c.total, c.user_defined) for _, sig, c in k.constructors] == [("K(Q q)", 2, 1)]
    assert s.for_class("Q").total.total == 0


def test_unresolved_receiver_is_reported_as_platform():
    m, points = analyze_points("class K { void M() { gadget.Spin(); } }")
    (p,) = points
    assert (p.target_class, p.user_defined, p.receiver) == ("gadget", False, "gadget")


def test_nested_calls_each_count():
    m, points = analyze_points("class Q { int V() { return 1; } }\nclass K { void M(Q q) { Console.WriteLine(q.V()); } }")
    assert [(p.text, p.target_class) for p in points] == [
        ("Console.WriteLine(q.V())", "Console"), ("q.V()", "Q"),
    ]
