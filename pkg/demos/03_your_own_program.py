"""Analyse a small inventory program written inline.

It shows a self-coupled method, an inherited field, a cycle in the def-use
graph and an unresolved receiver, and prints the JSON export.
"""
from integdistill import analyze, execution_order
from integdistill.report import export_json, render_paths_text

SOURCE = """\
class Item
{
    int qty;
}

class Stock : Item
{
    int reserved, limit;
    Stock() { limit = 10; }
    void Reserve(int n) { reserved = reserved + n; qty = qty - n; }
    void Refill() { qty = limit - reserved; }
    void Merge(Stock other, Item extra)
    {
        int total = qty + reserved;
        other.Refill();
        logger.Info(total);
    }
}
"""

report = analyze({"inventory.moo": SOURCE})
print(render_paths_text(report.paths))

for path in report.paths:
    print(f"path {path.id}: " + " ".join(str(s) for s in execution_order(path, report.model)))
print()

# logger has no declared type, so it is reported as a platform class
print(export_json(report, include_timings=False))
